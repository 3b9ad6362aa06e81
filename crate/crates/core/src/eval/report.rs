use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::human::HumanBaseline;
use super::metrics::{
    accuracy, completeness, consistency, content_direction, content_effect, per_schema_accuracy,
    schema_correlation, top1_accuracy, Accuracy, Answers, Completeness, Consistency,
    ContentDirection, ContentEffect,
};
use crate::calculus::{gold_conclusions, is_valid, Schema};
use crate::datagen::{Condition, DatasetItem, Taxonomy};
use crate::heuristics::{
    coverage_stats, overlap, CoverageStats, HeuristicOverlap, HeuristicTheory,
};
use crate::scalar::{round2, to_f64, Scalar};

/// One run's items with the labels parsed from the model's answers.
#[derive(Clone, Copy)]
pub struct RunData<'a> {
    pub items: &'a [DatasetItem],
    pub answers: &'a Answers,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Correlation {
    pub spearman_rho: f64,
    pub n_schemas: usize,
}

/// Every metric for one run, optionally paired with a run on the
/// unbelievable set for the content-effect analysis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport<T> {
    pub name: String,
    pub n_items: usize,
    pub accuracy: Accuracy<T>,
    pub top1: Accuracy<T>,
    pub consistency: Consistency<T>,
    pub completeness: Completeness<T>,
    pub per_schema: BTreeMap<Schema, T>,
    pub correlation: Option<Correlation>,
    pub heuristic_overlap: BTreeMap<HeuristicTheory, HeuristicOverlap<T>>,
    pub unbelievable_accuracy: Option<Accuracy<T>>,
    pub unbelievable_top1: Option<Accuracy<T>>,
    pub content_effect: Option<ContentEffect>,
    pub content_direction: Option<ContentDirection<T>>,
}

pub fn evaluate<T: Scalar>(
    name: &str,
    run: RunData<'_>,
    unbelievable: Option<RunData<'_>>,
    human: &HumanBaseline,
    tax: &Taxonomy,
) -> EvaluationReport<T> {
    let per_schema = per_schema_accuracy(run.items, run.answers);
    let real_terms = |items: &[DatasetItem]| {
        !items.is_empty() && items.iter().all(|i| i.condition != Condition::Pseudo)
    };
    let believable = !run.items.is_empty()
        && run
            .items
            .iter()
            .all(|i| i.condition == Condition::Believable);
    let correlation = believable
        .then(|| schema_correlation(human, &per_schema).ok())
        .flatten()
        .map(|rho| Correlation {
            spearman_rho: rho,
            n_schemas: per_schema.keys().filter(|s| is_valid(**s)).count(),
        });
    let heuristic_overlap = HeuristicTheory::ALL
        .into_iter()
        .map(|t| {
            let pairs = run.items.iter().filter_map(|i| {
                run.answers
                    .get(&i.id)
                    .map(|p| (i.schema, p.iter().copied().collect()))
            });
            (t, overlap(t, pairs))
        })
        .collect();

    let mut direction_items: Vec<DatasetItem> = run.items.to_vec();
    let mut direction_answers = run.answers.clone();
    if let Some(u) = unbelievable {
        direction_items.extend(u.items.iter().cloned());
        direction_answers.extend(u.answers.iter().map(|(k, v)| (k.clone(), v.clone())));
    }
    let content_direction = real_terms(&direction_items)
        .then(|| content_direction(&direction_items, &direction_answers, tax).ok())
        .flatten();

    EvaluationReport {
        name: name.to_string(),
        n_items: run.items.len(),
        accuracy: accuracy(run.items, run.answers),
        top1: top1_accuracy(run.items, run.answers),
        consistency: consistency(run.items, run.answers),
        completeness: completeness(run.items, run.answers),
        per_schema,
        correlation,
        heuristic_overlap,
        unbelievable_accuracy: unbelievable.map(|u| accuracy(u.items, u.answers)),
        unbelievable_top1: unbelievable.map(|u| top1_accuracy(u.items, u.answers)),
        content_effect: unbelievable
            .map(|u| content_effect((run.items, run.answers), (u.items, u.answers))),
        content_direction,
    }
}

fn cell<T: Scalar>(x: Option<T>) -> String {
    x.map(|v| format!("{:.2}", round2(to_f64(v))))
        .unwrap_or_default()
}

fn float_cell(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.2}")).unwrap_or_default()
}

fn write_csv(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8")
}

/// Accuracy on the believable set with the content effect against the
/// unbelievable set and the correlation with humans.
pub fn accuracy_table_csv<T: Scalar>(reports: &[EvaluationReport<T>]) -> String {
    let rows = reports
        .iter()
        .map(|r| {
            let ce = r.content_effect.as_ref();
            vec![
                r.name.clone(),
                cell(r.accuracy.overall),
                cell(r.accuracy.valid),
                cell(r.accuracy.invalid),
                cell(r.unbelievable_accuracy.as_ref().and_then(|u| u.valid)),
                float_cell(ce.and_then(|c| c.difference_pct)),
                ce.and_then(|c| c.chi_square)
                    .map(|c| format!("{:.4}", c.statistic))
                    .unwrap_or_default(),
                ce.and_then(|c| c.chi_square)
                    .map(|c| format!("{:.4}", c.p_value))
                    .unwrap_or_default(),
                r.correlation
                    .as_ref()
                    .map(|c| format!("{:.2}", c.spearman_rho))
                    .unwrap_or_default(),
            ]
        })
        .collect();
    write_csv(
        &[
            "model",
            "acc",
            "valid",
            "invalid",
            "unbelievable_valid",
            "content_effect_pct",
            "chi_square",
            "p_value",
            "spearman_rho",
        ],
        rows,
    )
}

pub fn top1_table_csv<T: Scalar>(reports: &[EvaluationReport<T>]) -> String {
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.name.clone(),
                cell(r.top1.overall),
                cell(r.top1.valid),
                cell(r.top1.invalid),
                cell(r.unbelievable_top1.as_ref().and_then(|u| u.valid)),
            ]
        })
        .collect();
    write_csv(
        &["model", "acc", "valid", "invalid", "unbelievable_valid"],
        rows,
    )
}

/// Consistency and the share of conclusions the Atmosphere theory predicts.
pub fn consistency_table_csv<T: Scalar>(reports: &[EvaluationReport<T>]) -> String {
    let rows = reports
        .iter()
        .map(|r| {
            let at = r.heuristic_overlap.get(&HeuristicTheory::Atmosphere);
            vec![
                r.name.clone(),
                cell(r.consistency.pct_contradictory),
                cell(r.consistency.pct_nvc_plus),
                cell(at.and_then(|o| o.predicted_correct_valid_pct)),
                cell(at.and_then(|o| o.predicted_mistakes_valid_pct)),
                cell(at.and_then(|o| o.predicted_mistakes_invalid_pct)),
            ]
        })
        .collect();
    write_csv(
        &[
            "model",
            "pct_contradictory",
            "pct_nvc_plus",
            "at_correct_valid",
            "at_mistakes_valid",
            "at_mistakes_invalid",
        ],
        rows,
    )
}

pub fn completeness_table_csv<T: Scalar>(reports: &[EvaluationReport<T>]) -> String {
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.name.clone(),
                cell(r.completeness.pct_incomplete),
                cell(r.completeness.pct_incomplete_i),
                cell(r.completeness.pct_incomplete_e),
            ]
        })
        .collect();
    write_csv(
        &[
            "model",
            "pct_incomplete",
            "pct_incomplete_i",
            "pct_incomplete_e",
        ],
        rows,
    )
}

pub fn per_schema_csv<T: Scalar>(report: &EvaluationReport<T>, human: &HumanBaseline) -> String {
    let rows = report
        .per_schema
        .iter()
        .map(|(s, v)| {
            vec![
                s.code(),
                is_valid(*s).to_string(),
                cell(Some(*v)),
                format!("{:.0}", human.get(*s)),
            ]
        })
        .collect();
    write_csv(
        &["schema", "valid", "model_accuracy", "human_accuracy"],
        rows,
    )
}

/// All 64 schemas with their valid conclusions and human accuracy.
pub fn gold_table_csv(human: &HumanBaseline) -> String {
    let rows = Schema::all()
        .into_iter()
        .map(|s| {
            let gold = gold_conclusions(s);
            let conclusions = if gold.is_empty() {
                "NVC".to_string()
            } else {
                gold.to_vec()
                    .iter()
                    .map(|l| l.code())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            vec![
                s.code(),
                s.premise_pattern(),
                conclusions,
                format!("{:.0}", human.get(s)),
            ]
        })
        .collect();
    write_csv(
        &["schema", "premises", "conclusions", "human_accuracy"],
        rows,
    )
}

/// Ground-truth coverage of each heuristic theory.
pub fn coverage_table_csv() -> String {
    let rows = HeuristicTheory::ALL
        .into_iter()
        .map(|t| {
            let c: CoverageStats<f64> = coverage_stats(t);
            vec![
                t.name().to_string(),
                c.valid_hits.to_string(),
                cell(Some(c.valid_pct)),
                c.invalid_hits.to_string(),
                cell(Some(c.invalid_pct)),
            ]
        })
        .collect();
    write_csv(
        &[
            "theory",
            "valid_hits",
            "valid_pct",
            "invalid_hits",
            "invalid_pct",
        ],
        rows,
    )
}
