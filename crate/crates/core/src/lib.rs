//! Syllogistic reasoning: the calculus of categorical syllogisms, heuristic
//! theories of human reasoning, dataset generation and evaluation metrics.

pub mod calculus;
pub mod datagen;
pub mod eval;
pub mod heuristics;
pub mod jsonl;
pub mod scalar;

pub use calculus::{ConclusionLabel, LabelSet, Mood, Schema};
pub use datagen::{DatasetItem, DatasetKind};
pub use heuristics::HeuristicTheory;
pub use scalar::Scalar;

pub type Report = eval::EvaluationReport<f64>;
pub type ExactReport = eval::EvaluationReport<num_rational::Rational64>;
pub type Coverage = heuristics::CoverageStats<f64>;
pub type ExactCoverage = heuristics::CoverageStats<num_rational::Rational64>;
