use std::collections::BTreeMap;

use super::EvalError;
use crate::calculus::{is_valid, Schema};

const BUILTIN: &str = include_str!("../../data/human_baseline.csv");

pub const AGGREGATE_VALID: f64 = 44.63;
pub const AGGREGATE_INVALID: f64 = 40.97;

/// Per-schema accuracy of human reasoners, in percent.
#[derive(Clone, Debug, PartialEq)]
pub struct HumanBaseline {
    pub per_schema: BTreeMap<Schema, f64>,
}

impl HumanBaseline {
    pub fn builtin() -> Self {
        Self::from_csv(BUILTIN).expect("built-in human baseline is well formed")
    }

    /// Reads `schema,human_accuracy` rows after a header line.
    pub fn from_csv(text: &str) -> Result<Self, EvalError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut per_schema = BTreeMap::new();
        for (i, row) in reader.records().enumerate() {
            let line = i + 2;
            let row = row.map_err(|e| EvalError::Baseline(format!("line {line}: {e}")))?;
            let bad = |what: &str| EvalError::Baseline(format!("line {line}: {what}"));
            let schema: Schema = row
                .get(0)
                .ok_or_else(|| bad("missing schema"))?
                .parse()
                .map_err(|_| bad("bad schema"))?;
            let acc: f64 = row
                .get(1)
                .ok_or_else(|| bad("missing accuracy"))?
                .parse()
                .map_err(|_| bad("bad accuracy"))?;
            if !(0.0..=100.0).contains(&acc) {
                return Err(bad("accuracy outside [0, 100]"));
            }
            if per_schema.insert(schema, acc).is_some() {
                return Err(bad("duplicate schema"));
            }
        }
        if per_schema.len() != Schema::COUNT {
            return Err(EvalError::Baseline(format!(
                "{} schemas, expected 64",
                per_schema.len()
            )));
        }
        Ok(HumanBaseline { per_schema })
    }

    pub fn get(&self, schema: Schema) -> f64 {
        self.per_schema[&schema]
    }

    fn mean_where(&self, valid: bool) -> f64 {
        let xs: Vec<f64> = self
            .per_schema
            .iter()
            .filter(|(s, _)| is_valid(**s) == valid)
            .map(|(_, v)| *v)
            .collect();
        xs.iter().sum::<f64>() / xs.len() as f64
    }

    /// Mean of the per-schema values over the valid schemas.
    pub fn mean_valid(&self) -> f64 {
        self.mean_where(true)
    }

    /// Mean of the per-schema values over the schemas where nothing follows.
    pub fn mean_invalid(&self) -> f64 {
        self.mean_where(false)
    }

    /// Published aggregate accuracy on valid syllogisms.
    pub fn aggregate_valid(&self) -> f64 {
        AGGREGATE_VALID
    }

    /// Published aggregate accuracy on invalid syllogisms. The per-schema
    /// table averages to 41.05 here; the published figure is kept as is.
    pub fn aggregate_invalid(&self) -> f64 {
        AGGREGATE_INVALID
    }
}
