//! Dataset construction: taxonomy-grounded believable and unbelievable
//! syllogisms, pseudo-word sets, premise chains, option lists and prompts.

mod instantiate;
mod item;
mod lexicon;
mod prompt;
mod rng;
mod taxonomy;

pub use instantiate::{
    believable_set, build_chain_sets, default_splits, dev_set, generate, instantiate,
    instantiate_believable, instantiate_pseudo, instantiate_unbelievable,
    most_unbelievable_assignments, pseudo_set, satisfying_assignments, unbelievable_set, ChainSets,
    WordSource, ITEMS_PER_SCHEMA,
};
pub use item::{
    build_options, gold_answer, option_text, render_answer, Condition, DatasetItem, DatasetKind,
};
pub use lexicon::{
    gen_pseudo_lexicon, gen_pseudo_lexicon_excluding, lexicon_capacity, lexicon_splits,
    LexiconSplits, PseudoLexicon, DEV_LEXICON_SIZE, TEST_LEXICON_SIZE, TRAIN_LEXICON_SIZE,
};
pub use prompt::{
    build_prompt, demonstration, demonstrations_for, format_syllogism, sft_sequence, Prompt,
    PromptSpec, Setting, COT_TRIGGER, FINAL_ANSWER_TRIGGER, ICL_K, ICL_TRIGGER, INSTRUCTION,
};
pub use rng::substream;
pub use taxonomy::{truth_in_taxonomy, Taxonomy};

use crate::calculus::CalculusError;

#[derive(Debug, thiserror::Error)]
pub enum DatagenError {
    #[error("requested {requested} words, only {available} available")]
    Capacity { requested: usize, available: usize },
    #[error("{0}")]
    InvalidRequest(String),
    #[error("taxonomy: {0}")]
    Taxonomy(String),
    #[error("term {0:?} is not in the taxonomy")]
    UnknownTerm(String),
    #[error("no term assignment satisfies the constraints for {0}")]
    Infeasible(String),
    #[error("{0} has no valid conclusion to make unbelievable")]
    NoValidConclusion(String),
    #[error("demonstration pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
}
