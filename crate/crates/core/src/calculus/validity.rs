//! The table of valid conclusions and the countermodel oracle that re-derives
//! it. The stored table is what the rest of the crate consults; the oracle
//! exists so the table can be checked.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::semantics::find_countermodel;
use super::{ConclusionLabel, Interpretation, LabelSet, Role, Schema};

/// Schemas with at least one valid conclusion, and those conclusions.
/// Every schema not listed here has no valid conclusion.
const VALID_SCHEMAS: [(&str, &str); 27] = [
    ("AA1", "Aac, Iac, Ica"),
    ("AA2", "Aca, Iac, Ica"),
    ("AA4", "Iac, Ica"),
    ("AI2", "Iac, Ica"),
    ("AI4", "Iac, Ica"),
    ("AE1", "Eac, Eca, Oac, Oca"),
    ("AE2", "Oac"),
    ("AE3", "Eac, Eca, Oac, Oca"),
    ("AE4", "Oac"),
    ("AO3", "Oca"),
    ("AO4", "Oac"),
    ("IA1", "Iac, Ica"),
    ("IA4", "Iac, Ica"),
    ("IE1", "Oac"),
    ("IE2", "Oac"),
    ("IE3", "Oac"),
    ("IE4", "Oac"),
    ("EA1", "Oca"),
    ("EA2", "Eac, Eca, Oac, Oca"),
    ("EA3", "Eac, Eca, Oac, Oca"),
    ("EA4", "Oca"),
    ("EI1", "Oca"),
    ("EI2", "Oca"),
    ("EI3", "Oca"),
    ("EI4", "Oca"),
    ("OA3", "Oac"),
    ("OA4", "Oca"),
];

pub const VALID_SCHEMA_COUNT: usize = 27;
pub const INVALID_SCHEMA_COUNT: usize = 37;
pub const GOLD_CONCLUSION_COUNT: usize = 48;

fn stored() -> &'static [LabelSet; Schema::COUNT] {
    static TABLE: OnceLock<[LabelSet; Schema::COUNT]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [LabelSet::EMPTY; Schema::COUNT];
        for (code, labels) in VALID_SCHEMAS {
            let schema: Schema = code.parse().expect("valid schema code in table");
            table[schema.index()] = labels.parse().expect("valid labels in table");
        }
        table
    })
}

/// Valid term-relating conclusions of a schema. The empty set means the only
/// correct answer is "Nothing follows".
pub fn gold_conclusions(schema: Schema) -> LabelSet {
    stored()[schema.index()]
}

/// Gold conclusions, with `{NVC}` standing in for the empty set.
pub fn effective_gold(schema: Schema) -> LabelSet {
    let gold = gold_conclusions(schema);
    if gold.is_empty() {
        LabelSet::only(ConclusionLabel::Nvc)
    } else {
        gold
    }
}

pub fn is_valid(schema: Schema) -> bool {
    !gold_conclusions(schema).is_empty()
}

/// Map from schema to its set of valid conclusions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityTable {
    entries: BTreeMap<Schema, LabelSet>,
}

impl ValidityTable {
    pub fn stored() -> Self {
        ValidityTable {
            entries: Schema::all()
                .into_iter()
                .map(|s| (s, gold_conclusions(s)))
                .collect(),
        }
    }

    pub fn get(&self, schema: Schema) -> LabelSet {
        self.entries.get(&schema).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Schema, LabelSet)> + '_ {
        self.entries.iter().map(|(s, l)| (*s, *l))
    }

    pub fn valid_count(&self) -> usize {
        self.entries.values().filter(|l| !l.is_empty()).count()
    }

    pub fn conclusion_count(&self) -> usize {
        self.entries.values().map(|l| l.len()).sum()
    }

    /// Rows on which two tables disagree: (schema, ours, theirs).
    pub fn diff(&self, other: &ValidityTable) -> Vec<(Schema, LabelSet, LabelSet)> {
        Schema::all()
            .into_iter()
            .filter_map(|s| {
                let (x, y) = (self.get(s), other.get(s));
                (x != y).then_some((s, x, y))
            })
            .collect()
    }
}

/// Brute-force validity check by exhaustive countermodel search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub max_universe: u8,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { max_universe: 4 }
    }
}

impl Oracle {
    pub fn new(max_universe: u8) -> Self {
        Oracle { max_universe }
    }

    /// A model of the premises in which the conclusion is false, if any.
    /// `None` for NVC, which is not a statement.
    pub fn countermodel(
        &self,
        schema: Schema,
        label: ConclusionLabel,
    ) -> Option<Interpretation<Role>> {
        let conclusion = label.statement(&Role::A, &Role::C)?;
        find_countermodel(&schema.role_premises(), &conclusion, self.max_universe)
    }

    /// True iff no interpretation within the universe bound satisfies both
    /// premises and falsifies the conclusion. NVC is never "valid" here.
    pub fn is_valid(&self, schema: Schema, label: ConclusionLabel) -> bool {
        match label.statement(&Role::A, &Role::C) {
            Some(conclusion) => {
                find_countermodel(&schema.role_premises(), &conclusion, self.max_universe).is_none()
            }
            None => false,
        }
    }

    pub fn valid_conclusions(&self, schema: Schema) -> LabelSet {
        ConclusionLabel::TERM_RELATING
            .into_iter()
            .filter(|l| self.is_valid(schema, *l))
            .collect()
    }

    pub fn derive_table(&self) -> ValidityTable {
        ValidityTable {
            entries: Schema::all()
                .into_iter()
                .map(|s| (s, self.valid_conclusions(s)))
                .collect(),
        }
    }
}
