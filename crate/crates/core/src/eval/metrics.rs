use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::human::HumanBaseline;
use super::parse::ModelAnswer;
use super::stats::{chi2_yates, spearman, ChiSquare};
use super::EvalError;
use crate::calculus::{effective_gold, is_valid, ConclusionLabel, LabelSet, Mood, Schema};
use crate::datagen::{Condition, DatasetItem, Taxonomy};
use crate::scalar::{percentage, to_f64, Scalar};

/// Parsed labels keyed by item id.
pub type Answers = BTreeMap<String, Vec<ConclusionLabel>>;

pub fn answers_by_id(answers: &[ModelAnswer]) -> Answers {
    answers
        .iter()
        .map(|a| (a.item_id.clone(), a.parsed.clone()))
        .collect()
}

/// An answer is right when it names at least one correct conclusion, or
/// "Nothing follows" where nothing does.
pub fn is_correct(schema: Schema, parsed: &[ConclusionLabel]) -> bool {
    let gold = effective_gold(schema);
    parsed.iter().any(|l| gold.contains(*l))
}

/// Only the first label counts.
pub fn is_top1_correct(schema: Schema, parsed: &[ConclusionLabel]) -> bool {
    parsed
        .first()
        .is_some_and(|l| effective_gold(schema).contains(*l))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Accuracy<T> {
    pub overall: Option<T>,
    pub valid: Option<T>,
    pub invalid: Option<T>,
    pub n_valid: u64,
    pub n_invalid: u64,
    pub correct_valid: u64,
    pub correct_invalid: u64,
    /// Items with no answer at all; they count as wrong.
    pub missing: Vec<String>,
}

fn score<T: Scalar>(
    items: &[DatasetItem],
    answers: &Answers,
    rule: fn(Schema, &[ConclusionLabel]) -> bool,
) -> Accuracy<T> {
    let (mut n_valid, mut n_invalid, mut correct_valid, mut correct_invalid) = (0, 0, 0, 0);
    let mut missing = Vec::new();
    for item in items {
        let parsed = match answers.get(&item.id) {
            Some(p) => p.as_slice(),
            None => {
                missing.push(item.id.clone());
                &[]
            }
        };
        let ok = u64::from(rule(item.schema, parsed));
        if is_valid(item.schema) {
            n_valid += 1;
            correct_valid += ok;
        } else {
            n_invalid += 1;
            correct_invalid += ok;
        }
    }
    Accuracy {
        overall: percentage(correct_valid + correct_invalid, n_valid + n_invalid),
        valid: percentage(correct_valid, n_valid),
        invalid: percentage(correct_invalid, n_invalid),
        n_valid,
        n_invalid,
        correct_valid,
        correct_invalid,
        missing,
    }
}

pub fn accuracy<T: Scalar>(items: &[DatasetItem], answers: &Answers) -> Accuracy<T> {
    score(items, answers, is_correct)
}

pub fn top1_accuracy<T: Scalar>(items: &[DatasetItem], answers: &Answers) -> Accuracy<T> {
    score(items, answers, is_top1_correct)
}

/// Mean correctness per schema, in percent.
pub fn per_schema_accuracy<T: Scalar>(
    items: &[DatasetItem],
    answers: &Answers,
) -> BTreeMap<Schema, T> {
    let mut tally: BTreeMap<Schema, (u64, u64)> = BTreeMap::new();
    for item in items {
        let parsed = answers.get(&item.id).map(Vec::as_slice).unwrap_or(&[]);
        let t = tally.entry(item.schema).or_default();
        t.0 += u64::from(is_correct(item.schema, parsed));
        t.1 += 1;
    }
    tally
        .into_iter()
        .map(|(s, (c, n))| (s, percentage(c, n).expect("n > 0")))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contradiction {
    /// A universal affirmative with its particular negation.
    AO,
    /// A universal negative with its particular affirmation.
    EI,
    /// "Nothing follows" alongside a conclusion.
    NvcPlus,
}

/// The first contradictory pair found in an answer, if any.
pub fn contradiction(parsed: &[ConclusionLabel]) -> Option<Contradiction> {
    for (i, x) in parsed.iter().enumerate() {
        for y in &parsed[i + 1..] {
            if x.contradicts(*y) {
                return Some(if x.is_nvc() || y.is_nvc() {
                    Contradiction::NvcPlus
                } else if matches!(x.mood(), Some(Mood::A | Mood::O)) {
                    Contradiction::AO
                } else {
                    Contradiction::EI
                });
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Consistency<T> {
    pub answered: u64,
    pub contradictory: u64,
    pub nvc_plus: u64,
    /// Answers holding any contradictory pair (AO, EI or NVC+).
    pub pct_contradictory: Option<T>,
    /// Answers holding "Nothing follows" together with another label.
    pub pct_nvc_plus: Option<T>,
}

pub fn consistency<T: Scalar>(items: &[DatasetItem], answers: &Answers) -> Consistency<T> {
    let (mut answered, mut contradictory, mut nvc_plus) = (0, 0, 0);
    for parsed in items.iter().filter_map(|i| answers.get(&i.id)) {
        answered += 1;
        contradictory += u64::from(contradiction(parsed).is_some());
        let has_nvc = parsed.contains(&ConclusionLabel::Nvc);
        nvc_plus += u64::from(has_nvc && parsed.len() > 1);
    }
    Consistency {
        answered,
        contradictory,
        nvc_plus,
        pct_contradictory: percentage(contradictory, answered),
        pct_nvc_plus: percentage(nvc_plus, answered),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Completeness<T> {
    pub scored: u64,
    pub incomplete: u64,
    pub scored_i: u64,
    pub incomplete_i: u64,
    pub scored_e: u64,
    pub incomplete_e: u64,
    pub pct_incomplete: Option<T>,
    pub pct_incomplete_i: Option<T>,
    pub pct_incomplete_e: Option<T>,
}

/// For one answer and one symmetric mood: `None` when the answer has no
/// label of that mood whose converse is also correct, otherwise whether one
/// of those converses is missing.
pub fn incomplete_on(mood: Mood, gold: LabelSet, parsed: &[ConclusionLabel]) -> Option<bool> {
    let mut scored = false;
    let mut incomplete = false;
    for l in parsed.iter().filter(|l| l.mood() == Some(mood)) {
        let converse = l.swapped();
        if gold.contains(converse) {
            scored = true;
            incomplete |= !parsed.contains(&converse);
        }
    }
    scored.then_some(incomplete)
}

pub fn completeness<T: Scalar>(items: &[DatasetItem], answers: &Answers) -> Completeness<T> {
    let mut c = Completeness {
        scored: 0,
        incomplete: 0,
        scored_i: 0,
        incomplete_i: 0,
        scored_e: 0,
        incomplete_e: 0,
        pct_incomplete: None,
        pct_incomplete_i: None,
        pct_incomplete_e: None,
    };
    for item in items {
        let Some(parsed) = answers.get(&item.id) else {
            continue;
        };
        let i = incomplete_on(Mood::I, item.gold, parsed);
        let e = incomplete_on(Mood::E, item.gold, parsed);
        if let Some(inc) = i {
            c.scored_i += 1;
            c.incomplete_i += u64::from(inc);
        }
        if let Some(inc) = e {
            c.scored_e += 1;
            c.incomplete_e += u64::from(inc);
        }
        if i.is_some() || e.is_some() {
            c.scored += 1;
            c.incomplete += u64::from(i == Some(true) || e == Some(true));
        }
    }
    c.pct_incomplete = percentage(c.incomplete, c.scored);
    c.pct_incomplete_i = percentage(c.incomplete_i, c.scored_i);
    c.pct_incomplete_e = percentage(c.incomplete_e, c.scored_e);
    c
}

/// `100 * (unbelievable - believable) / believable`, undefined at zero.
pub fn relative_difference(believable: f64, unbelievable: f64) -> Option<f64> {
    (believable != 0.0).then(|| 100.0 * (unbelievable - believable) / believable)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContentEffect {
    pub acc_believable: Option<f64>,
    pub acc_unbelievable: Option<f64>,
    pub difference_pct: Option<f64>,
    /// Rows believable / unbelievable, columns correct / incorrect.
    pub table: [[u64; 2]; 2],
    pub chi_square: Option<ChiSquare>,
    pub significant: bool,
}

pub const SIGNIFICANCE_LEVEL: f64 = 0.05;

/// Compares accuracy on the valid schemas of a believable and an
/// unbelievable run.
pub fn content_effect(
    believable: (&[DatasetItem], &Answers),
    unbelievable: (&[DatasetItem], &Answers),
) -> ContentEffect {
    let row = |(items, answers): (&[DatasetItem], &Answers)| {
        let valid: Vec<DatasetItem> = items
            .iter()
            .filter(|i| is_valid(i.schema))
            .cloned()
            .collect();
        let acc: Accuracy<f64> = accuracy(&valid, answers);
        [acc.correct_valid, acc.n_valid - acc.correct_valid]
    };
    let table = [row(believable), row(unbelievable)];
    let pct = |r: [u64; 2]| percentage::<f64>(r[0], r[0] + r[1]);
    let (acc_believable, acc_unbelievable) = (pct(table[0]), pct(table[1]));
    let difference_pct = match (acc_believable, acc_unbelievable) {
        (Some(b), Some(u)) => relative_difference(b, u),
        _ => None,
    };
    let chi_square = chi2_yates(table);
    ContentEffect {
        acc_believable,
        acc_unbelievable,
        difference_pct,
        table,
        chi_square,
        significant: chi_square.is_some_and(|c| c.p_value < SIGNIFICANCE_LEVEL),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContentDirection<T> {
    /// Answers to unbelievable-gold items that contain a believable conclusion.
    pub b_given_u: Option<T>,
    /// Answers to believable-gold items that contain an unbelievable conclusion.
    pub u_given_b: Option<T>,
    pub n_unbelievable: u64,
    pub n_believable: u64,
}

/// Judges every generated conclusion against the taxonomy. Items must carry
/// real terms; only items with correct conclusions take part.
pub fn content_direction<T: Scalar>(
    items: &[DatasetItem],
    answers: &Answers,
    tax: &Taxonomy,
) -> Result<ContentDirection<T>, EvalError> {
    let (mut n_u, mut b_u, mut n_b, mut u_b) = (0u64, 0u64, 0u64, 0u64);
    for item in items {
        if item.condition == Condition::Pseudo {
            return Err(EvalError::NotApplicable(item.id.clone()));
        }
        if item.gold.is_empty() {
            continue;
        }
        let Some(parsed) = answers.get(&item.id) else {
            continue;
        };
        let mut truths = Vec::new();
        for l in parsed {
            if let Some(stmt) = l.statement(&item.a(), &item.c()) {
                truths.push(
                    tax.truth(&stmt)
                        .map_err(|e| EvalError::Taxonomy(e.to_string()))?,
                );
            }
        }
        match item.condition {
            Condition::Unbelievable => {
                n_u += 1;
                b_u += u64::from(truths.iter().any(|t| *t));
            }
            _ => {
                n_b += 1;
                u_b += u64::from(truths.iter().any(|t| !*t));
            }
        }
    }
    Ok(ContentDirection {
        b_given_u: percentage(b_u, n_u),
        u_given_b: percentage(u_b, n_b),
        n_unbelievable: n_u,
        n_believable: n_b,
    })
}

/// Rank correlation between human and model accuracy over the valid schemas
/// the model was tested on.
pub fn schema_correlation<T: Scalar>(
    human: &HumanBaseline,
    model: &BTreeMap<Schema, T>,
) -> Result<f64, EvalError> {
    let (h, m): (Vec<f64>, Vec<f64>) = model
        .iter()
        .filter(|(s, _)| is_valid(**s))
        .map(|(s, v)| (human.get(*s), to_f64(*v)))
        .unzip();
    spearman(&h, &m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::{believable_set, unbelievable_set};
    use num_rational::Rational64;
    use ConclusionLabel::*;

    fn gold_answers(items: &[DatasetItem]) -> Answers {
        items
            .iter()
            .map(|i| (i.id.clone(), effective_gold(i.schema).to_vec()))
            .collect()
    }

    #[test]
    fn top1_is_order_sensitive() {
        let aa1: Schema = "AA1".parse().unwrap();
        assert!(is_correct(aa1, &[Aca, Aac]));
        assert!(!is_top1_correct(aa1, &[Aca, Aac]));
        let oa3: Schema = "OA3".parse().unwrap();
        assert!(is_top1_correct(oa3, &[Oac]));
    }

    #[test]
    fn contradiction_kinds() {
        assert_eq!(contradiction(&[Aac, Oac]), Some(Contradiction::AO));
        assert_eq!(contradiction(&[Nvc, Ica]), Some(Contradiction::NvcPlus));
        assert_eq!(contradiction(&[Eca, Ica]), Some(Contradiction::EI));
        assert_eq!(contradiction(&[Iac, Ica]), None);
        assert_eq!(contradiction(&[Aac, Oca]), None);
    }

    #[test]
    fn completeness_rules() {
        let ae1: Schema = "AE1".parse().unwrap();
        let gold = crate::calculus::gold_conclusions(ae1);
        assert_eq!(incomplete_on(Mood::E, gold, &[Eac, Eca]), Some(false));
        assert_eq!(incomplete_on(Mood::E, gold, &[Eac]), Some(true));
        assert_eq!(incomplete_on(Mood::I, gold, &[Oac]), None);
        let aa1 = crate::calculus::gold_conclusions("AA1".parse().unwrap());
        assert_eq!(incomplete_on(Mood::I, aa1, &[Iac]), Some(true));
    }

    #[test]
    fn gold_answers_score_perfectly() {
        let items = believable_set(&Taxonomy::builtin(), 1).unwrap();
        let answers = gold_answers(&items);
        let acc: Accuracy<Rational64> = accuracy(&items, &answers);
        assert_eq!(acc.overall, Some(Rational64::from_integer(100)));
        let cons: Consistency<f64> = consistency(&items, &answers);
        assert_eq!(cons.pct_contradictory, Some(0.0));
        let comp: Completeness<f64> = completeness(&items, &answers);
        assert_eq!(comp.incomplete, 0);
        assert!(per_schema_accuracy::<f64>(&items, &answers)
            .values()
            .all(|v| *v == 100.0));
    }

    #[test]
    fn missing_and_empty_answers_are_wrong() {
        let items = believable_set(&Taxonomy::builtin(), 1).unwrap();
        let acc: Accuracy<f64> = accuracy(&items, &Answers::new());
        assert_eq!(acc.overall, Some(0.0));
        assert_eq!(acc.missing.len(), 640);
        let empty: Answers = items.iter().map(|i| (i.id.clone(), Vec::new())).collect();
        assert_eq!(accuracy::<f64>(&items, &empty).overall, Some(0.0));
        assert!(accuracy::<f64>(&items, &empty).missing.is_empty());
    }

    #[test]
    fn relative_difference_examples() {
        assert!((relative_difference(22.59, 19.63).unwrap() + 13.10).abs() < 0.01);
        assert!((relative_difference(31.11, 33.33).unwrap() - 7.14).abs() < 0.01);
        assert_eq!(relative_difference(0.0, 10.0), None);
    }

    #[test]
    fn direction_with_gold_answers() {
        let tax = Taxonomy::builtin();
        let unb = unbelievable_set(&tax, 1).unwrap();
        let d: ContentDirection<f64> = content_direction(&unb, &gold_answers(&unb), &tax).unwrap();
        // Only the four-conclusion schemas keep a true conclusion in their gold.
        let with_true_gold = unb
            .iter()
            .filter(|i| {
                i.gold
                    .iter()
                    .filter_map(|l| l.statement(&i.a(), &i.c()))
                    .any(|g| tax.truth(&g).unwrap())
            })
            .count();
        assert_eq!(with_true_gold, 40);
        assert_eq!(d.b_given_u, crate::scalar::percentage(40, 270));
        assert_eq!(d.n_unbelievable, 270);
        let bel = believable_set(&tax, 1).unwrap();
        let d: ContentDirection<f64> = content_direction(&bel, &gold_answers(&bel), &tax).unwrap();
        assert_eq!(d.u_given_b, Some(0.0));
    }

    #[test]
    fn direction_rejects_pseudo_items() {
        let lex = crate::datagen::gen_pseudo_lexicon(300, 1).unwrap();
        let items = crate::datagen::dev_set(&lex, 1).unwrap();
        assert!(matches!(
            content_direction::<f64>(&items, &Answers::new(), &Taxonomy::builtin()),
            Err(EvalError::NotApplicable(_))
        ));
    }
}
