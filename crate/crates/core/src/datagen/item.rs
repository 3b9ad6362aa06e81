use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::rng::substream;
use crate::calculus::{ConclusionLabel, LabelSet, Schema, NOTHING_FOLLOWS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    Believable,
    Unbelievable,
    Pseudo,
}

/// The named dataset families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DatasetKind {
    Believable,
    Unbelievable,
    Pseudo,
    Dev,
    Chain2,
    Chain3,
    Chain4,
}

impl DatasetKind {
    pub const ALL: [DatasetKind; 7] = [
        DatasetKind::Believable,
        DatasetKind::Unbelievable,
        DatasetKind::Pseudo,
        DatasetKind::Dev,
        DatasetKind::Chain2,
        DatasetKind::Chain3,
        DatasetKind::Chain4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DatasetKind::Believable => "believable",
            DatasetKind::Unbelievable => "unbelievable",
            DatasetKind::Pseudo => "pseudo",
            DatasetKind::Dev => "dev",
            DatasetKind::Chain2 => "chain2",
            DatasetKind::Chain3 => "chain3",
            DatasetKind::Chain4 => "chain4",
        }
    }

    /// Short prefix of item ids.
    pub fn id_prefix(self) -> &'static str {
        match self {
            DatasetKind::Believable => "bel",
            DatasetKind::Unbelievable => "unb",
            DatasetKind::Pseudo => "pse",
            DatasetKind::Dev => "dev",
            DatasetKind::Chain2 => "ch2",
            DatasetKind::Chain3 => "ch3",
            DatasetKind::Chain4 => "ch4",
        }
    }

    pub fn condition(self) -> Condition {
        match self {
            DatasetKind::Believable => Condition::Believable,
            DatasetKind::Unbelievable => Condition::Unbelievable,
            _ => Condition::Pseudo,
        }
    }

    pub fn n_premises(self) -> usize {
        match self {
            DatasetKind::Chain3 => 3,
            DatasetKind::Chain4 => 4,
            _ => 2,
        }
    }
}

impl fmt::Display for DatasetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DatasetKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DatasetKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown dataset {s:?}"))
    }
}

/// One multiple-choice syllogism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetItem {
    pub id: String,
    pub schema: Schema,
    pub n_premises: usize,
    pub condition: Condition,
    /// `a`, `b`, `c`, then any auxiliary chain terms.
    pub terms: Vec<String>,
    pub premises: Vec<String>,
    pub options: Vec<String>,
    /// Valid conclusions; empty for schemas where nothing follows.
    pub gold: LabelSet,
    pub seed: u64,
    /// For chain items, the premise the chain stands in for.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replaced_premise: Option<String>,
}

impl DatasetItem {
    pub fn a(&self) -> &str {
        &self.terms[0]
    }

    pub fn c(&self) -> &str {
        &self.terms[2]
    }

    /// Every label with the option text it is presented as, in canonical order.
    pub fn labelled_options(&self) -> Vec<(ConclusionLabel, String)> {
        ConclusionLabel::ALL
            .into_iter()
            .map(|l| (l, option_text(l, self.a(), self.c())))
            .collect()
    }
}

/// A label rendered as an option: a sentence with a final period.
pub fn option_text(label: ConclusionLabel, a: &str, c: &str) -> String {
    match label.statement(&a, &c) {
        Some(stmt) => format!("{stmt}."),
        None => format!("{NOTHING_FOLLOWS}."),
    }
}

/// All nine options in an order fixed by the dataset seed and item id.
pub fn build_options(a: &str, c: &str, seed: u64, item_id: &str) -> Vec<String> {
    let mut options: Vec<String> = ConclusionLabel::ALL
        .into_iter()
        .map(|l| option_text(l, a, c))
        .collect();
    options.shuffle(&mut substream(seed, &format!("options/{item_id}")));
    options
}

/// Joins conclusions the way demonstrations answer: in canonical order, with
/// " or " between them, later ones starting lower-case, ending in a period.
pub fn render_answer(labels: &[ConclusionLabel], a: &str, c: &str) -> String {
    let mut parts = Vec::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        let text = match l.statement(&a, &c) {
            Some(stmt) => stmt.to_string(),
            None => NOTHING_FOLLOWS.to_string(),
        };
        parts.push(if i == 0 { text } else { lower_first(&text) });
    }
    format!("{}.", parts.join(" or "))
}

/// The answer a demonstration shows: the gold conclusions, or "Nothing follows.".
pub fn gold_answer(item: &DatasetItem) -> String {
    let labels = if item.gold.is_empty() {
        vec![ConclusionLabel::Nvc]
    } else {
        item.gold.to_vec()
    };
    render_answer(&labels, item.a(), item.c())
}

fn lower_first(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(first) => first.to_lowercase().chain(chars).collect(),
        None => String::new(),
    }
}
