use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{CalculusError, Mood, Statement};

/// Which end term is the subject of a conclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// subject `a`, object `c`
    AC,
    /// subject `c`, object `a`
    CA,
}

/// The nine answers of the multiple-choice task: eight relations between the
/// end terms plus "Nothing follows".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConclusionLabel {
    Aac,
    Aca,
    Iac,
    Ica,
    Eac,
    Eca,
    Oac,
    Oca,
    Nvc,
}

use ConclusionLabel::*;

impl ConclusionLabel {
    /// Canonical order; also the order used when a set of labels is rendered.
    pub const ALL: [ConclusionLabel; 9] = [Aac, Aca, Iac, Ica, Eac, Eca, Oac, Oca, Nvc];
    pub const TERM_RELATING: [ConclusionLabel; 8] = [Aac, Aca, Iac, Ica, Eac, Eca, Oac, Oca];

    pub fn of(mood: Mood, direction: Direction) -> ConclusionLabel {
        match (mood, direction) {
            (Mood::A, Direction::AC) => Aac,
            (Mood::A, Direction::CA) => Aca,
            (Mood::I, Direction::AC) => Iac,
            (Mood::I, Direction::CA) => Ica,
            (Mood::E, Direction::AC) => Eac,
            (Mood::E, Direction::CA) => Eca,
            (Mood::O, Direction::AC) => Oac,
            (Mood::O, Direction::CA) => Oca,
        }
    }

    /// Both term orders of a mood.
    pub fn both_orders(mood: Mood) -> [ConclusionLabel; 2] {
        [Self::of(mood, Direction::AC), Self::of(mood, Direction::CA)]
    }

    pub fn mood(self) -> Option<Mood> {
        match self {
            Aac | Aca => Some(Mood::A),
            Iac | Ica => Some(Mood::I),
            Eac | Eca => Some(Mood::E),
            Oac | Oca => Some(Mood::O),
            Nvc => None,
        }
    }

    pub fn direction(self) -> Option<Direction> {
        match self {
            Aac | Iac | Eac | Oac => Some(Direction::AC),
            Aca | Ica | Eca | Oca => Some(Direction::CA),
            Nvc => None,
        }
    }

    pub fn is_nvc(self) -> bool {
        self == Nvc
    }

    pub fn code(self) -> &'static str {
        match self {
            Aac => "Aac",
            Aca => "Aca",
            Iac => "Iac",
            Ica => "Ica",
            Eac => "Eac",
            Eca => "Eca",
            Oac => "Oac",
            Oca => "Oca",
            Nvc => "NVC",
        }
    }

    /// Same mood, terms swapped.
    pub fn swapped(self) -> ConclusionLabel {
        match (self.mood(), self.direction()) {
            (Some(m), Some(Direction::AC)) => Self::of(m, Direction::CA),
            (Some(m), Some(Direction::CA)) => Self::of(m, Direction::AC),
            _ => Nvc,
        }
    }

    /// The logically equivalent converse, which exists only for I and E.
    pub fn symmetric_converse(self) -> Option<ConclusionLabel> {
        match self.mood() {
            Some(m) if m.is_symmetric() => Some(self.swapped()),
            _ => None,
        }
    }

    /// Contradictory answer patterns: A against O and E against I with the
    /// same term order, and "Nothing follows" against any other label.
    pub fn contradicts(self, other: ConclusionLabel) -> bool {
        if self == other {
            return false;
        }
        if self.is_nvc() || other.is_nvc() {
            return true;
        }
        if self.direction() != other.direction() {
            return false;
        }
        matches!(
            (self.mood(), other.mood()),
            (Some(Mood::A), Some(Mood::O))
                | (Some(Mood::O), Some(Mood::A))
                | (Some(Mood::E), Some(Mood::I))
                | (Some(Mood::I), Some(Mood::E))
        )
    }

    /// The conclusion statement over concrete end terms; `None` for NVC.
    pub fn statement<T: Clone>(self, a: &T, c: &T) -> Option<Statement<T>> {
        let mood = self.mood()?;
        let (subject, object) = match self.direction()? {
            Direction::AC => (a.clone(), c.clone()),
            Direction::CA => (c.clone(), a.clone()),
        };
        Some(Statement {
            mood,
            subject,
            object,
        })
    }
}

impl fmt::Display for ConclusionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for ConclusionLabel {
    type Err = CalculusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("nvc") {
            return Ok(Nvc);
        }
        ConclusionLabel::TERM_RELATING
            .into_iter()
            .find(|l| l.code() == t)
            .ok_or_else(|| CalculusError::InvalidLabel(s.to_string()))
    }
}

impl Serialize for ConclusionLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.code())
    }
}

impl<'de> Deserialize<'de> for ConclusionLabel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A set of conclusion labels stored as a bitset. Iteration follows the
/// canonical label order.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct LabelSet(u16);

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet(0);

    pub fn new() -> Self {
        Self::EMPTY
    }

    pub fn only(label: ConclusionLabel) -> Self {
        let mut s = Self::EMPTY;
        s.insert(label);
        s
    }

    pub fn insert(&mut self, label: ConclusionLabel) -> bool {
        let had = self.contains(label);
        self.0 |= 1 << label as u16;
        !had
    }

    pub fn remove(&mut self, label: ConclusionLabel) {
        self.0 &= !(1 << label as u16);
    }

    pub fn contains(self, label: ConclusionLabel) -> bool {
        self.0 & (1 << label as u16) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersection(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 & other.0)
    }

    pub fn union(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: LabelSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = ConclusionLabel> {
        ConclusionLabel::ALL
            .into_iter()
            .filter(move |l| self.contains(*l))
    }

    pub fn to_vec(self) -> Vec<ConclusionLabel> {
        self.iter().collect()
    }
}

impl FromIterator<ConclusionLabel> for LabelSet {
    fn from_iter<I: IntoIterator<Item = ConclusionLabel>>(iter: I) -> Self {
        let mut s = LabelSet::EMPTY;
        for l in iter {
            s.insert(l);
        }
        s
    }
}

impl<'a> FromIterator<&'a ConclusionLabel> for LabelSet {
    fn from_iter<I: IntoIterator<Item = &'a ConclusionLabel>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let codes: Vec<&str> = self.iter().map(|l| l.code()).collect();
        f.write_str(&codes.join(", "))
    }
}

impl FromStr for LabelSet {
    type Err = CalculusError;

    /// Parses a comma-separated list such as `Aac, Iac`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse::<ConclusionLabel>)
            .collect()
    }
}

impl Serialize for LabelSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for LabelSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let labels = Vec::<ConclusionLabel>::deserialize(deserializer)?;
        Ok(labels.into_iter().collect())
    }
}
