use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use serde::{Deserialize, Serialize};

use super::item::{gold_answer, DatasetItem};
use super::rng::substream;
use super::DatagenError;
use crate::calculus::Schema;

pub const INSTRUCTION: &str = include_str!("../../resources/prompts/instruction.txt");
pub const CONTEXT_HEADER: &str = include_str!("../../resources/prompts/context_header.txt");
pub const TEST_HEADER: &str = include_str!("../../resources/prompts/test_header.txt");
pub const COT_TRIGGER: &str = include_str!("../../resources/prompts/cot_trigger.txt");
pub const FINAL_ANSWER_TRIGGER: &str =
    include_str!("../../resources/prompts/final_answer_trigger.txt");
pub const ICL_TRIGGER: &str = include_str!("../../resources/prompts/icl_trigger.txt");
const SYLLOGISM_TEMPLATE: &str = include_str!("../../resources/prompts/syllogism.txt");

/// Number of demonstrations in the in-context settings.
pub const ICL_K: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Setting {
    #[serde(rename = "zs-cot")]
    ZsCot,
    #[serde(rename = "icl-in")]
    IclIn,
    #[serde(rename = "icl-out")]
    IclOut,
    #[serde(rename = "sft", alias = "direct")]
    Sft,
}

impl Setting {
    pub const ALL: [Setting; 4] = [
        Setting::ZsCot,
        Setting::IclIn,
        Setting::IclOut,
        Setting::Sft,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Setting::ZsCot => "zs-cot",
            Setting::IclIn => "icl-in",
            Setting::IclOut => "icl-out",
            Setting::Sft => "sft",
        }
    }
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Setting {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        // "direct" is the fine-tuned setting: no instruction, no trigger.
        if s == "direct" {
            return Ok(Setting::Sft);
        }
        Setting::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown setting {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptSpec {
    pub setting: Setting,
    pub k: usize,
    pub instruction: String,
    /// Introduces the demonstrations.
    pub elicitation: String,
    pub cot_trigger: String,
    pub answer_trigger: String,
}

impl PromptSpec {
    pub fn new(setting: Setting) -> Self {
        let (k, answer_trigger) = match setting {
            Setting::ZsCot => (0, FINAL_ANSWER_TRIGGER),
            Setting::IclIn | Setting::IclOut => (ICL_K, ICL_TRIGGER),
            Setting::Sft => (0, ""),
        };
        PromptSpec {
            setting,
            k,
            instruction: INSTRUCTION.to_string(),
            elicitation: CONTEXT_HEADER.to_string(),
            cot_trigger: COT_TRIGGER.to_string(),
            answer_trigger: answer_trigger.to_string(),
        }
    }
}

/// What gets sent to a model for one item.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Prompt {
    Single {
        text: String,
    },
    /// Zero-shot chain of thought: the model first reasons after `stage1`,
    /// then answers after its own reasoning and `answer_trigger`.
    TwoStage {
        stage1: String,
        answer_trigger: String,
    },
}

impl Prompt {
    pub fn first(&self) -> &str {
        match self {
            Prompt::Single { text } => text,
            Prompt::TwoStage { stage1, .. } => stage1,
        }
    }

    /// The second-stage text given the reasoning the model produced.
    pub fn stage2(&self, reasoning: &str) -> Option<String> {
        match self {
            Prompt::Single { .. } => None,
            Prompt::TwoStage {
                stage1,
                answer_trigger,
            } => Some(format!("{stage1} {}\n\n{answer_trigger}", reasoning.trim())),
        }
    }
}

/// The premises and shuffled options of an item, ending in "Answer:".
pub fn format_syllogism(item: &DatasetItem) -> String {
    let premises: Vec<String> = item
        .premises
        .iter()
        .enumerate()
        .map(|(i, p)| format!("Premise {}: {p}", i + 1))
        .collect();
    SYLLOGISM_TEMPLATE
        .replace("{premises}", &premises.join("\n"))
        .replace("{options}", &item.options.join("\n"))
}

/// A solved example: the syllogism followed by its gold answer.
pub fn demonstration(item: &DatasetItem) -> String {
    format!("{} {}", format_syllogism(item), gold_answer(item))
}

/// A fine-tuning sequence: premises, shuffled options and the correct answer.
pub fn sft_sequence(item: &DatasetItem) -> String {
    demonstration(item)
}

fn select_demonstrations<'a>(
    item: &DatasetItem,
    spec: &PromptSpec,
    pool: &'a [DatasetItem],
    seed: u64,
) -> Result<Vec<&'a DatasetItem>, DatagenError> {
    let mut rng = substream(seed, &format!("icl/{}/{}", spec.setting, item.id));
    match spec.setting {
        Setting::IclIn => {
            let same: Vec<&DatasetItem> = pool
                .iter()
                .filter(|p| p.schema == item.schema && p.id != item.id)
                .collect();
            if same.len() < spec.k {
                return Err(DatagenError::Pool(format!(
                    "{} examples of {} in the pool, {} needed",
                    same.len(),
                    item.schema,
                    spec.k
                )));
            }
            Ok(same.choose_multiple(&mut rng, spec.k).copied().collect())
        }
        Setting::IclOut => {
            let mut by_schema: BTreeMap<Schema, Vec<&DatasetItem>> = BTreeMap::new();
            for p in pool.iter().filter(|p| p.schema != item.schema) {
                by_schema.entry(p.schema).or_default().push(p);
            }
            if by_schema.len() < spec.k {
                return Err(DatagenError::Pool(format!(
                    "{} schemas other than {} in the pool, {} needed",
                    by_schema.len(),
                    item.schema,
                    spec.k
                )));
            }
            let schemas: Vec<Schema> = by_schema.keys().copied().collect();
            let chosen: Vec<Schema> = schemas.choose_multiple(&mut rng, spec.k).copied().collect();
            Ok(chosen
                .into_iter()
                .map(|s| *by_schema[&s].choose(&mut rng).expect("non-empty group"))
                .collect())
        }
        Setting::ZsCot | Setting::Sft => Ok(Vec::new()),
    }
}

/// The prompt for `item` under `spec`. In-context settings draw their
/// demonstrations from `pool`, reproducibly for a given seed and item id.
pub fn build_prompt(
    item: &DatasetItem,
    spec: &PromptSpec,
    pool: &[DatasetItem],
    seed: u64,
) -> Result<Prompt, DatagenError> {
    let test = format_syllogism(item);
    Ok(match spec.setting {
        Setting::ZsCot => Prompt::TwoStage {
            stage1: format!("{}\n\n{test} {}", spec.instruction, spec.cot_trigger),
            answer_trigger: spec.answer_trigger.clone(),
        },
        Setting::IclIn | Setting::IclOut => {
            let demos = select_demonstrations(item, spec, pool, seed)?;
            let mut blocks = vec![spec.instruction.clone(), spec.elicitation.clone()];
            blocks.extend(demos.into_iter().map(demonstration));
            blocks.push(TEST_HEADER.to_string());
            blocks.push(format!("{test} {}", spec.answer_trigger));
            Prompt::Single {
                text: blocks.join("\n\n"),
            }
        }
        Setting::Sft => Prompt::Single { text: test },
    })
}

/// The demonstrations `build_prompt` would pick, for inspection and tests.
pub fn demonstrations_for<'a>(
    item: &DatasetItem,
    spec: &PromptSpec,
    pool: &'a [DatasetItem],
    seed: u64,
) -> Result<Vec<&'a DatasetItem>, DatagenError> {
    select_demonstrations(item, spec, pool, seed)
}
