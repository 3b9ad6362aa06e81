use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{CalculusError, Mood, Statement};

/// Position of a term within a syllogism: the end terms `a` and `c` and the
/// middle term `b` shared by both premises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    A,
    B,
    C,
}

impl Role {
    pub fn letter(self) -> char {
        match self {
            Role::A => 'a',
            Role::B => 'b',
            Role::C => 'c',
        }
    }
}

/// Arrangement of terms across the two premises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Figure {
    One,
    Two,
    Three,
    Four,
}

impl Figure {
    pub const ALL: [Figure; 4] = [Figure::One, Figure::Two, Figure::Three, Figure::Four];

    pub fn index(self) -> u8 {
        match self {
            Figure::One => 1,
            Figure::Two => 2,
            Figure::Three => 3,
            Figure::Four => 4,
        }
    }

    pub fn from_index(index: u8) -> Option<Figure> {
        match index {
            1 => Some(Figure::One),
            2 => Some(Figure::Two),
            3 => Some(Figure::Three),
            4 => Some(Figure::Four),
            _ => None,
        }
    }

    /// (subject, object) roles of the first and second premise.
    pub fn term_order(self) -> [(Role, Role); 2] {
        use Role::*;
        match self {
            Figure::One => [(A, B), (B, C)],
            Figure::Two => [(B, A), (C, B)],
            Figure::Three => [(A, B), (C, B)],
            Figure::Four => [(B, A), (B, C)],
        }
    }
}

/// A premise-pair form such as `AE2`: the moods of both premises plus the
/// figure. The derived ordering is the lexicographic order of the code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Schema {
    pub mood1: Mood,
    pub mood2: Mood,
    pub figure: Figure,
}

impl Schema {
    pub const COUNT: usize = 64;

    pub fn new(mood1: Mood, mood2: Mood, figure: Figure) -> Self {
        Schema {
            mood1,
            mood2,
            figure,
        }
    }

    /// All 64 schemas, `AA1` through `OO4`.
    pub fn all() -> Vec<Schema> {
        let mut out = Vec::with_capacity(Self::COUNT);
        for mood1 in Mood::ALL {
            for mood2 in Mood::ALL {
                for figure in Figure::ALL {
                    out.push(Schema::new(mood1, mood2, figure));
                }
            }
        }
        out
    }

    /// Position of this schema in [`Schema::all`].
    pub fn index(self) -> usize {
        (self.mood1 as usize) * 16 + (self.mood2 as usize) * 4 + (self.figure.index() as usize - 1)
    }

    pub fn code(self) -> String {
        format!(
            "{}{}{}",
            self.mood1.letter(),
            self.mood2.letter(),
            self.figure.index()
        )
    }

    pub fn moods(self) -> [Mood; 2] {
        [self.mood1, self.mood2]
    }

    pub fn has_a_premise(self) -> bool {
        self.mood1 == Mood::A || self.mood2 == Mood::A
    }

    /// Premise pattern in the compact notation `Aab, Abc`.
    pub fn premise_pattern(self) -> String {
        let [(s1, o1), (s2, o2)] = self.figure.term_order();
        format!(
            "{}{}{}, {}{}{}",
            self.mood1.letter(),
            s1.letter(),
            o1.letter(),
            self.mood2.letter(),
            s2.letter(),
            o2.letter()
        )
    }

    /// The two premises over role variables.
    pub fn role_premises(self) -> [Statement<Role>; 2] {
        let [(s1, o1), (s2, o2)] = self.figure.term_order();
        [
            Statement {
                mood: self.mood1,
                subject: s1,
                object: o1,
            },
            Statement {
                mood: self.mood2,
                subject: s2,
                object: o2,
            },
        ]
    }

    /// Instantiates the premises with concrete terms for `a`, `b` and `c`.
    pub fn premises_of<T: Clone + PartialEq>(
        self,
        terms: &[T; 3],
    ) -> Result<[Statement<T>; 2], CalculusError> {
        if terms[0] == terms[1] || terms[0] == terms[2] || terms[1] == terms[2] {
            return Err(CalculusError::DuplicateTerms);
        }
        let pick = |r: Role| match r {
            Role::A => terms[0].clone(),
            Role::B => terms[1].clone(),
            Role::C => terms[2].clone(),
        };
        let [p1, p2] = self.role_premises();
        Ok([
            Statement {
                mood: p1.mood,
                subject: pick(p1.subject),
                object: pick(p1.object),
            },
            Statement {
                mood: p2.mood,
                subject: pick(p2.subject),
                object: pick(p2.object),
            },
        ])
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

impl FromStr for Schema {
    type Err = CalculusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CalculusError::InvalidSchemaCode(s.to_string());
        let chars: Vec<char> = s.trim().chars().collect();
        if chars.len() != 3 {
            return Err(bad());
        }
        let mood1 = Mood::from_letter(chars[0]).ok_or_else(bad)?;
        let mood2 = Mood::from_letter(chars[1]).ok_or_else(bad)?;
        let figure = chars[2]
            .to_digit(10)
            .and_then(|d| Figure::from_index(d as u8))
            .ok_or_else(bad)?;
        Ok(Schema::new(mood1, mood2, figure))
    }
}

impl Serialize for Schema {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.code())
    }
}

impl<'de> Deserialize<'de> for Schema {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
