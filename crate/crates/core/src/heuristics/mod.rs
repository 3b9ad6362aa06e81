//! Heuristic theories of syllogistic reasoning as conclusion predictors.
//!
//! Atmosphere and Matching are computed from rules over the premise moods.
//! Illicit Conversion and the probability heuristics model are looked up in
//! an embedded prediction table, which also carries the published Atmosphere
//! and Matching columns as regression fixtures.

mod coverage;
mod table;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::calculus::{ConclusionLabel, LabelSet, Mood, Schema, Sign, SignPair};

pub use coverage::{coverage_stats, overlap, Bucket, CoverageStats, HeuristicOverlap};
pub use table::{published_prediction, PredictionRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeuristicTheory {
    Atmosphere,
    Matching,
    Conversion,
    Phm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredictionMode {
    RuleDerived,
    TableDriven,
}

impl HeuristicTheory {
    pub const ALL: [HeuristicTheory; 4] = [
        HeuristicTheory::Atmosphere,
        HeuristicTheory::Matching,
        HeuristicTheory::Conversion,
        HeuristicTheory::Phm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HeuristicTheory::Atmosphere => "atmosphere",
            HeuristicTheory::Matching => "matching",
            HeuristicTheory::Conversion => "conversion",
            HeuristicTheory::Phm => "phm",
        }
    }

    pub fn mode(self) -> PredictionMode {
        match self {
            HeuristicTheory::Atmosphere | HeuristicTheory::Matching => PredictionMode::RuleDerived,
            HeuristicTheory::Conversion | HeuristicTheory::Phm => PredictionMode::TableDriven,
        }
    }

    pub fn predict(self, schema: Schema) -> LabelSet {
        match self {
            HeuristicTheory::Atmosphere => atmosphere_predict(schema),
            HeuristicTheory::Matching => matching_predict(schema),
            HeuristicTheory::Conversion => conversion_predict(schema),
            HeuristicTheory::Phm => phm_predict(schema),
        }
    }
}

impl fmt::Display for HeuristicTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HeuristicTheory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        HeuristicTheory::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown heuristic theory {s:?}"))
    }
}

/// Feature-wise combination: equal signs are kept, differing signs give minus.
pub fn combine_signs(x: SignPair, y: SignPair) -> SignPair {
    let merge = |p: Sign, q: Sign| if p == q { p } else { Sign::Minus };
    SignPair {
        quantity: merge(x.quantity, y.quantity),
        polarity: merge(x.polarity, y.polarity),
    }
}

/// Both term orders of the mood whose signs combine those of the premises.
pub fn atmosphere_predict(schema: Schema) -> LabelSet {
    let mood = Mood::from_signs(combine_signs(schema.mood1.signs(), schema.mood2.signs()));
    ConclusionLabel::both_orders(mood).into_iter().collect()
}

/// E is most conservative, I and O tie, A is least.
fn conservativeness(mood: Mood) -> u8 {
    match mood {
        Mood::E => 2,
        Mood::I | Mood::O => 1,
        Mood::A => 0,
    }
}

/// Conclusions in the mood of the more conservative premise. Because I and O
/// are equally conservative, a particular winner predicts both of them.
pub fn matching_predict(schema: Schema) -> LabelSet {
    let winner = schema
        .moods()
        .into_iter()
        .max_by_key(|m| conservativeness(*m))
        .expect("two premises");
    let moods: &[Mood] = match winner {
        Mood::I | Mood::O => &[Mood::I, Mood::O],
        Mood::A => &[Mood::A],
        Mood::E => &[Mood::E],
    };
    moods
        .iter()
        .flat_map(|m| ConclusionLabel::both_orders(*m))
        .collect()
}

pub fn conversion_predict(schema: Schema) -> LabelSet {
    published_prediction(schema).conversion
}

pub fn phm_predict(schema: Schema) -> LabelSet {
    published_prediction(schema).phm
}
