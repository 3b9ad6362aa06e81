use serde::{Deserialize, Serialize};

use super::HeuristicTheory;
use crate::calculus::{gold_conclusions, is_valid, ConclusionLabel, LabelSet, Schema};
use crate::calculus::{GOLD_CONCLUSION_COUNT, INVALID_SCHEMA_COUNT};
use crate::scalar::{percentage, Scalar};

/// Share of the ground truth a theory predicts. Valid coverage counts
/// conclusions, so a schema with two gold conclusions contributes two.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverageStats<T> {
    pub valid_hits: u64,
    pub invalid_hits: u64,
    pub valid_pct: T,
    pub invalid_pct: T,
}

pub fn coverage_stats<T: Scalar>(theory: HeuristicTheory) -> CoverageStats<T> {
    let mut valid_hits = 0u64;
    let mut invalid_hits = 0u64;
    for schema in Schema::all() {
        let predicted = theory.predict(schema);
        if is_valid(schema) {
            valid_hits += gold_conclusions(schema).intersection(predicted).len() as u64;
        } else if predicted.contains(ConclusionLabel::Nvc) {
            invalid_hits += 1;
        }
    }
    CoverageStats {
        valid_hits,
        invalid_hits,
        valid_pct: percentage(valid_hits, GOLD_CONCLUSION_COUNT as u64).expect("non-zero"),
        invalid_pct: percentage(invalid_hits, INVALID_SCHEMA_COUNT as u64).expect("non-zero"),
    }
}

/// How much of a reasoner's output a theory accounts for. Each generated
/// term-relating conclusion falls into one bucket; a percentage is `None`
/// when its bucket is empty.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeuristicOverlap<T> {
    pub correct_valid: Bucket,
    pub mistakes_valid: Bucket,
    pub mistakes_invalid: Bucket,
    pub predicted_correct_valid_pct: Option<T>,
    pub predicted_mistakes_valid_pct: Option<T>,
    pub predicted_mistakes_invalid_pct: Option<T>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bucket {
    pub total: u64,
    pub predicted: u64,
}

impl Bucket {
    fn add(&mut self, predicted: bool) {
        self.total += 1;
        self.predicted += u64::from(predicted);
    }

    fn pct<T: Scalar>(self) -> Option<T> {
        percentage(self.predicted, self.total)
    }
}

/// `answers` pairs each item's schema with its parsed conclusions.
pub fn overlap<T: Scalar>(
    theory: HeuristicTheory,
    answers: impl IntoIterator<Item = (Schema, LabelSet)>,
) -> HeuristicOverlap<T> {
    let mut correct_valid = Bucket::default();
    let mut mistakes_valid = Bucket::default();
    let mut mistakes_invalid = Bucket::default();
    for (schema, answer) in answers {
        let predicted = theory.predict(schema);
        let gold = gold_conclusions(schema);
        let valid = is_valid(schema);
        for label in answer.iter().filter(|l| !l.is_nvc()) {
            let hit = predicted.contains(label);
            match (valid, gold.contains(label)) {
                (true, true) => correct_valid.add(hit),
                (true, false) => mistakes_valid.add(hit),
                (false, _) => mistakes_invalid.add(hit),
            }
        }
    }
    HeuristicOverlap {
        correct_valid,
        mistakes_valid,
        mistakes_invalid,
        predicted_correct_valid_pct: correct_valid.pct(),
        predicted_mistakes_valid_pct: mistakes_valid.pct(),
        predicted_mistakes_invalid_pct: mistakes_invalid.pct(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn coverage_counts() {
        let hits = |t| {
            let c: CoverageStats<f64> = coverage_stats(t);
            (c.valid_hits, c.invalid_hits)
        };
        assert_eq!(hits(HeuristicTheory::Atmosphere), (30, 0));
        assert_eq!(hits(HeuristicTheory::Matching), (22, 0));
        assert_eq!(hits(HeuristicTheory::Conversion), (16, 32));
    }

    #[test]
    fn exact_atmosphere_coverage() {
        let c: CoverageStats<Rational64> = coverage_stats(HeuristicTheory::Atmosphere);
        assert_eq!(c.valid_pct, Rational64::new(125, 2));
        assert_eq!(c.invalid_pct, Rational64::new(0, 1));
    }

    #[test]
    fn self_overlap_is_total() {
        let answers: Vec<_> = Schema::all()
            .into_iter()
            .map(|s| (s, HeuristicTheory::Atmosphere.predict(s)))
            .collect();
        let o: HeuristicOverlap<f64> = overlap(HeuristicTheory::Atmosphere, answers);
        assert_eq!(o.predicted_correct_valid_pct, Some(100.0));
        assert_eq!(o.predicted_mistakes_valid_pct, Some(100.0));
        assert_eq!(o.predicted_mistakes_invalid_pct, Some(100.0));
    }

    #[test]
    fn gold_answers_overlap_equals_coverage() {
        let answers: Vec<_> = Schema::all()
            .into_iter()
            .map(|s| (s, gold_conclusions(s)))
            .collect();
        let o: HeuristicOverlap<Rational64> = overlap(HeuristicTheory::Atmosphere, answers);
        assert_eq!(o.predicted_correct_valid_pct, Some(Rational64::new(125, 2)));
        assert_eq!(o.correct_valid.total, 48);
        assert_eq!(o.predicted_mistakes_valid_pct, None);
        assert_eq!(o.predicted_mistakes_invalid_pct, None);
    }

    #[test]
    fn empty_answers_give_absent_fractions() {
        let answers = Schema::all().into_iter().map(|s| (s, LabelSet::EMPTY));
        let o: HeuristicOverlap<f64> = overlap(HeuristicTheory::Matching, answers);
        assert_eq!(o.predicted_correct_valid_pct, None);
        assert_eq!(o.predicted_mistakes_valid_pct, None);
        assert_eq!(o.predicted_mistakes_invalid_pct, None);
    }
}
