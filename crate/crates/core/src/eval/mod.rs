//! Answer parsing, metrics, statistics and reports.

mod human;
mod metrics;
mod parse;
mod report;
mod stats;

pub use human::{HumanBaseline, AGGREGATE_INVALID, AGGREGATE_VALID};
pub use metrics::{
    accuracy, answers_by_id, completeness, consistency, content_direction, content_effect,
    contradiction, incomplete_on, is_correct, is_top1_correct, per_schema_accuracy,
    relative_difference, schema_correlation, top1_accuracy, Accuracy, Answers, Completeness,
    Consistency, ContentDirection, ContentEffect, Contradiction, SIGNIFICANCE_LEVEL,
};
pub use parse::{parse_answer, ModelAnswer};
pub use report::{
    accuracy_table_csv, completeness_table_csv, consistency_table_csv, coverage_table_csv,
    evaluate, gold_table_csv, per_schema_csv, top1_table_csv, Correlation, EvaluationReport,
    RunData,
};
pub use stats::{average_ranks, chi2_sf_1dof, chi2_yates, spearman, ChiSquare};

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("need at least 3 paired values, got {0}")]
    InsufficientData(usize),
    #[error("vectors differ in length: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("correlation undefined for a constant vector")]
    ConstantInput,
    #[error("input contains NaN")]
    NotANumber,
    #[error("item {0} uses pseudo-words; believability does not apply")]
    NotApplicable(String),
    #[error("taxonomy: {0}")]
    Taxonomy(String),
    #[error("human baseline: {0}")]
    Baseline(String),
}
