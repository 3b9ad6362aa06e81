//! Moods, figures, schemas, conclusion labels and the model-theoretic
//! semantics used to decide which conclusions follow.

mod chain;
mod label;
mod mood;
mod schema;
pub mod semantics;
mod statement;
mod validity;

pub use chain::{expand_chain, ChainExpansion, PremiseSlot};
pub use label::{ConclusionLabel, Direction, LabelSet};
pub use mood::{Mood, Sign, SignPair};
pub use schema::{Figure, Role, Schema};
pub use semantics::{entails, eval_statement, find_countermodel, Extension, Interpretation};
pub use statement::{parse_statement, ParseError, Sentence, Statement, NOTHING_FOLLOWS};
pub use validity::{
    effective_gold, gold_conclusions, is_valid, Oracle, ValidityTable, GOLD_CONCLUSION_COUNT,
    INVALID_SCHEMA_COUNT, VALID_SCHEMA_COUNT,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CalculusError {
    #[error("terms must be pairwise distinct")]
    DuplicateTerms,
    #[error("invalid schema code {0:?}")]
    InvalidSchemaCode(String),
    #[error("invalid conclusion label {0:?}")]
    InvalidLabel(String),
    #[error("unknown term {0}")]
    UnknownTerm(String),
    #[error("universe size {0} out of range")]
    InvalidUniverse(u8),
    #[error("denotation of {0} must be a non-empty subset of the universe")]
    InvalidDenotation(String),
    #[error("schema {0} has no A premise to expand")]
    NotChainEligible(String),
    #[error("chain length {0} not in 1..=3")]
    InvalidChainLength(usize),
    #[error("chain needs {needed} auxiliary terms")]
    InsufficientAuxTerms { needed: usize },
}
