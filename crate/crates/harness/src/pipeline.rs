use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use syllogistic::calculus::{Oracle, Schema, ValidityTable};
use syllogistic::datagen::Taxonomy;
use syllogistic::datagen::{
    build_prompt, generate, DatasetItem, DatasetKind, Prompt, PromptSpec, Setting,
};
use syllogistic::eval::{
    accuracy_table_csv, answers_by_id, completeness_table_csv, consistency_table_csv,
    coverage_table_csv, evaluate, gold_table_csv, per_schema_csv, top1_table_csv, HumanBaseline,
    RunData,
};
use syllogistic::heuristics::{published_prediction, PredictionMode};
use syllogistic::{HeuristicTheory, LabelSet, Report};

use crate::runner::{parse_records, PredictionRecord};
use crate::HarnessError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptRecord {
    pub item_id: String,
    pub prompt: Prompt,
}

/// Demonstrations for the in-context settings when no pool is given: the
/// pseudo-word training set for the same seed.
pub fn default_pool(seed: u64) -> Result<Vec<DatasetItem>, HarnessError> {
    Ok(generate(DatasetKind::Pseudo, seed)?)
}

pub fn build_prompts(
    items: &[DatasetItem],
    setting: Setting,
    pool: &[DatasetItem],
    seed: u64,
) -> Result<Vec<Prompt>, HarnessError> {
    let spec = PromptSpec::new(setting);
    items
        .iter()
        .map(|item| Ok(build_prompt(item, &spec, pool, seed)?))
        .collect()
}

/// Schemas where the stored table and a freshly derived one disagree, one
/// line each; empty when they match.
pub fn oracle_check(max_universe: u8) -> Vec<String> {
    let derived = Oracle::new(max_universe).derive_table();
    ValidityTable::stored()
        .diff(&derived)
        .into_iter()
        .map(|(s, stored, found)| {
            format!("{s}: stored {} derived {}", labels(stored), labels(found))
        })
        .collect()
}

fn labels(set: LabelSet) -> String {
    if set.is_empty() {
        return "NVC".to_string();
    }
    set.iter().map(|l| l.code()).collect::<Vec<_>>().join(" ")
}

/// Predictions of one or all theories. Rule-derived theories also show the
/// published row when it differs from the rule.
pub fn heuristic_predictions_csv(
    theory: Option<HeuristicTheory>,
    schema: Option<Schema>,
) -> String {
    let theories: Vec<HeuristicTheory> = theory
        .map(|t| vec![t])
        .unwrap_or_else(|| HeuristicTheory::ALL.to_vec());
    let mut out = String::from("schema,theory,prediction,published\n");
    for s in Schema::all()
        .into_iter()
        .filter(|s| schema.is_none_or(|x| x == *s))
    {
        let row = published_prediction(s);
        for &t in &theories {
            let predicted = t.predict(s);
            let published = match t {
                HeuristicTheory::Atmosphere => row.atmosphere,
                HeuristicTheory::Matching => row.matching,
                HeuristicTheory::Conversion => row.conversion,
                HeuristicTheory::Phm => row.phm,
            };
            let shown = if t.mode() == PredictionMode::RuleDerived && published != predicted {
                labels(published)
            } else {
                String::new()
            };
            let _ = writeln!(out, "{s},{t},{},{shown}", labels(predicted));
        }
    }
    out
}

/// Scores a run, optionally paired with a run on the unbelievable set.
pub fn evaluate_run(
    name: &str,
    items: &[DatasetItem],
    records: &[PredictionRecord],
    unbelievable: Option<(&[DatasetItem], &[PredictionRecord])>,
) -> Report {
    let answers = answers_by_id(&parse_records(items, records));
    let unb =
        unbelievable.map(|(items, records)| (items, answers_by_id(&parse_records(items, records))));
    let human = HumanBaseline::builtin();
    let tax = Taxonomy::builtin();
    evaluate(
        name,
        RunData {
            items,
            answers: &answers,
        },
        unb.as_ref()
            .map(|(items, answers)| RunData { items, answers }),
        &human,
        &tax,
    )
}

pub fn report_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    Accuracy,
    Top1,
    Consistency,
    Completeness,
    PerSchema,
    Gold,
    Coverage,
}

impl FromStr for Table {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "accuracy" => Table::Accuracy,
            "top1" => Table::Top1,
            "consistency" => Table::Consistency,
            "completeness" => Table::Completeness,
            "per-schema" => Table::PerSchema,
            "gold" => Table::Gold,
            "coverage" => Table::Coverage,
            _ => return Err(format!("unknown table {s:?}")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
}

impl FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "markdown" | "md" => Ok(TableFormat::Markdown),
            _ => Err(format!("unknown format {s:?}")),
        }
    }
}

pub fn render_table(
    table: Table,
    reports: &[Report],
    format: TableFormat,
) -> Result<String, HarnessError> {
    let csv = match table {
        Table::Accuracy => accuracy_table_csv(reports),
        Table::Top1 => top1_table_csv(reports),
        Table::Consistency => consistency_table_csv(reports),
        Table::Completeness => completeness_table_csv(reports),
        Table::PerSchema => match reports {
            [r] => per_schema_csv(r, &HumanBaseline::builtin()),
            _ => {
                return Err(HarnessError::Invalid(
                    "the per-schema table takes exactly one report".into(),
                ))
            }
        },
        Table::Gold => gold_table_csv(&HumanBaseline::builtin()),
        Table::Coverage => coverage_table_csv(),
    };
    Ok(match format {
        TableFormat::Csv => csv,
        TableFormat::Markdown => csv_to_markdown(&csv),
    })
}

fn csv_to_markdown(csv_text: &str) -> String {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(csv_text.as_bytes());
    let rows: Vec<Vec<String>> = reader
        .records()
        .map(|r| {
            r.expect("tables are well formed")
                .iter()
                .map(|c| c.replace('|', "\\|"))
                .collect()
        })
        .collect();
    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        let _ = writeln!(out, "| {} |", row.join(" | "));
        if i == 0 {
            let _ = writeln!(out, "|{}", "---|".repeat(row.len()));
        }
    }
    out
}
