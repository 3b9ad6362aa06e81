use std::collections::BTreeSet;

use rand::seq::{IndexedRandom, SliceRandom};

use super::item::{build_options, Condition, DatasetItem, DatasetKind};
use super::lexicon::{lexicon_splits, LexiconSplits, PseudoLexicon};
use super::rng::substream;
use super::taxonomy::Taxonomy;
use super::DatagenError;
use crate::calculus::{
    expand_chain, gold_conclusions, is_valid, ConclusionLabel, Schema, Statement,
};

/// Instances per schema in every dataset family except the dev set.
pub const ITEMS_PER_SCHEMA: usize = 10;

fn item_id(kind: DatasetKind, schema: Schema, k: usize) -> String {
    format!("{}-{}-{:02}", kind.id_prefix(), schema.code(), k)
}

fn render_premises<T: std::fmt::Display>(premises: &[Statement<T>]) -> Vec<String> {
    premises.iter().map(|p| format!("{p}.")).collect()
}

/// Assembles an item from a term assignment and its premises.
fn assemble(
    kind: DatasetKind,
    schema: Schema,
    k: usize,
    terms: Vec<String>,
    premises: Vec<String>,
    seed: u64,
) -> DatasetItem {
    let id = item_id(kind, schema, k);
    let options = build_options(&terms[0], &terms[2], seed, &id);
    DatasetItem {
        n_premises: premises.len(),
        id,
        schema,
        condition: kind.condition(),
        terms,
        premises,
        options,
        gold: gold_conclusions(schema),
        seed,
        replaced_premise: None,
    }
}

/// A two-premise item over the given `a`, `b`, `c`.
pub fn instantiate(
    kind: DatasetKind,
    schema: Schema,
    k: usize,
    terms: [String; 3],
    seed: u64,
) -> Result<DatasetItem, DatagenError> {
    let premises = render_premises(&schema.premises_of(&terms)?);
    Ok(assemble(kind, schema, k, terms.to_vec(), premises, seed))
}

fn gold_statements(schema: Schema, a: &str, c: &str) -> Vec<Statement<String>> {
    gold_conclusions(schema)
        .iter()
        .filter_map(|l: ConclusionLabel| l.statement(&a.to_string(), &c.to_string()))
        .collect()
}

/// Ordered triples of distinct taxonomy terms acceptable for `condition`:
/// believable ones make the premises and every gold conclusion true,
/// unbelievable ones make every gold conclusion false.
pub fn satisfying_assignments(
    schema: Schema,
    tax: &Taxonomy,
    condition: Condition,
) -> Result<Vec<[String; 3]>, DatagenError> {
    if condition == Condition::Unbelievable && !is_valid(schema) {
        return Err(DatagenError::NoValidConclusion(schema.code()));
    }
    if condition == Condition::Pseudo {
        return Err(DatagenError::InvalidRequest(
            "pseudo items are not drawn from the taxonomy".into(),
        ));
    }
    let terms = tax.terms();
    let mut out = Vec::new();
    for a in terms {
        for b in terms {
            for c in terms {
                if a == b || b == c || a == c {
                    continue;
                }
                let triple = [a.clone(), b.clone(), c.clone()];
                let gold = gold_statements(schema, a, c);
                let ok = match condition {
                    Condition::Believable => {
                        let premises = schema.premises_of(&triple)?;
                        all_hold(tax, &premises, true)? && all_hold(tax, &gold, true)?
                    }
                    Condition::Unbelievable => all_hold(tax, &gold, false)?,
                    Condition::Pseudo => unreachable!(),
                };
                if ok {
                    out.push(triple);
                }
            }
        }
    }
    Ok(out)
}

/// Assignments falsifying as many correct conclusions as any assignment can.
/// A schema concluding `Eac`, `Eca`, `Oac` and `Oca` cannot have all four
/// false unless `a` and `c` name the same class, so for those schemas this
/// settles for three.
pub fn most_unbelievable_assignments(
    schema: Schema,
    tax: &Taxonomy,
) -> Result<Vec<[String; 3]>, DatagenError> {
    if !is_valid(schema) {
        return Err(DatagenError::NoValidConclusion(schema.code()));
    }
    let terms = tax.terms();
    let mut best = 0;
    let mut out = Vec::new();
    for a in terms {
        for b in terms {
            for c in terms {
                if a == b || b == c || a == c {
                    continue;
                }
                let mut falsified = 0;
                for g in gold_statements(schema, a, c) {
                    falsified += usize::from(!tax.truth(&g)?);
                }
                if falsified > best {
                    best = falsified;
                    out.clear();
                }
                if falsified == best && best > 0 {
                    out.push([a.clone(), b.clone(), c.clone()]);
                }
            }
        }
    }
    Ok(out)
}

fn all_hold(
    tax: &Taxonomy,
    stmts: &[Statement<String>],
    expected: bool,
) -> Result<bool, DatagenError> {
    for s in stmts {
        if tax.truth(s)? != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Draws `n` distinct satisfying assignments at random. When fewer exist,
/// assignments are reused across items.
fn pick_assignments(
    schema: Schema,
    tax: &Taxonomy,
    condition: Condition,
    n: usize,
    seed: u64,
) -> Result<Vec<[String; 3]>, DatagenError> {
    let mut candidates = satisfying_assignments(schema, tax, condition)?;
    if candidates.is_empty() && condition == Condition::Unbelievable {
        log::warn!("{schema}: no assignment falsifies every correct conclusion, keeping the most unbelievable ones");
        candidates = most_unbelievable_assignments(schema, tax)?;
    }
    if candidates.is_empty() {
        return Err(DatagenError::Infeasible(schema.code()));
    }
    let mut rng = substream(seed, &format!("assign/{condition:?}/{}", schema.code()));
    let mut picked: Vec<[String; 3]> = candidates.choose_multiple(&mut rng, n).cloned().collect();
    if picked.len() < n {
        log::warn!(
            "{schema}: only {} {condition:?} assignments, reusing them for {n} items",
            candidates.len()
        );
        let base = picked.clone();
        picked.extend(base.into_iter().cycle().take(n - candidates.len()));
    }
    Ok(picked)
}

pub fn instantiate_believable(
    schema: Schema,
    tax: &Taxonomy,
    n: usize,
    seed: u64,
) -> Result<Vec<DatasetItem>, DatagenError> {
    pick_assignments(schema, tax, Condition::Believable, n, seed)?
        .into_iter()
        .enumerate()
        .map(|(k, t)| instantiate(DatasetKind::Believable, schema, k, t, seed))
        .collect()
}

pub fn instantiate_unbelievable(
    schema: Schema,
    tax: &Taxonomy,
    n: usize,
    seed: u64,
) -> Result<Vec<DatasetItem>, DatagenError> {
    pick_assignments(schema, tax, Condition::Unbelievable, n, seed)?
        .into_iter()
        .enumerate()
        .map(|(k, t)| instantiate(DatasetKind::Unbelievable, schema, k, t, seed))
        .collect()
}

/// All 64 schemas, ten instances each.
pub fn believable_set(tax: &Taxonomy, seed: u64) -> Result<Vec<DatasetItem>, DatagenError> {
    let mut items = Vec::new();
    for schema in Schema::all() {
        items.extend(instantiate_believable(schema, tax, ITEMS_PER_SCHEMA, seed)?);
    }
    Ok(items)
}

/// The 27 valid schemas, ten instances each.
pub fn unbelievable_set(tax: &Taxonomy, seed: u64) -> Result<Vec<DatasetItem>, DatagenError> {
    let mut items = Vec::new();
    for schema in Schema::all().into_iter().filter(|s| is_valid(*s)) {
        items.extend(instantiate_unbelievable(
            schema,
            tax,
            ITEMS_PER_SCHEMA,
            seed,
        )?);
    }
    Ok(items)
}

/// Hands out lexicon words without repetition, in a seeded order.
pub struct WordSource {
    words: Vec<String>,
    next: usize,
}

impl WordSource {
    pub fn new(lexicon: &PseudoLexicon, seed: u64, purpose: &str) -> Self {
        let mut words = lexicon.words.clone();
        words.shuffle(&mut substream(seed, &format!("words/{purpose}")));
        WordSource { words, next: 0 }
    }

    pub fn take<const N: usize>(&mut self) -> Result<[String; N], DatagenError> {
        if self.next + N > self.words.len() {
            return Err(DatagenError::Capacity {
                requested: self.next + N,
                available: self.words.len(),
            });
        }
        let out: [String; N] = std::array::from_fn(|i| self.words[self.next + i].clone());
        self.next += N;
        Ok(out)
    }

    pub fn remaining(&self) -> usize {
        self.words.len() - self.next
    }
}

/// A two-premise item over fresh pseudo-words.
pub fn instantiate_pseudo(
    kind: DatasetKind,
    schema: Schema,
    k: usize,
    words: &mut WordSource,
    seed: u64,
) -> Result<DatasetItem, DatagenError> {
    instantiate(kind, schema, k, words.take::<3>()?, seed)
}

/// `per_schema` pseudo-word items for each of the 64 schemas.
pub fn pseudo_set(
    lexicon: &PseudoLexicon,
    per_schema: usize,
    seed: u64,
) -> Result<Vec<DatasetItem>, DatagenError> {
    let mut words = WordSource::new(lexicon, seed, "pseudo");
    let mut items = Vec::new();
    for schema in Schema::all() {
        for k in 0..per_schema {
            items.push(instantiate_pseudo(
                DatasetKind::Pseudo,
                schema,
                k,
                &mut words,
                seed,
            )?);
        }
    }
    Ok(items)
}

/// One pseudo-word item per schema, for model selection.
pub fn dev_set(lexicon: &PseudoLexicon, seed: u64) -> Result<Vec<DatasetItem>, DatagenError> {
    let mut words = WordSource::new(lexicon, seed, "dev");
    Schema::all()
        .into_iter()
        .map(|s| instantiate_pseudo(DatasetKind::Dev, s, 0, &mut words, seed))
        .collect()
}

/// The premise-length family: a two-premise control set and its three- and
/// four-premise expansions. The three sets share `a`, `b` and `c` item for
/// item, so they differ only in the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSets {
    pub two: Vec<DatasetItem>,
    pub three: Vec<DatasetItem>,
    pub four: Vec<DatasetItem>,
}

impl ChainSets {
    pub fn get(&self, n_premises: usize) -> Option<&[DatasetItem]> {
        match n_premises {
            2 => Some(&self.two),
            3 => Some(&self.three),
            4 => Some(&self.four),
            _ => None,
        }
    }
}

pub fn build_chain_sets(lexicon: &PseudoLexicon, seed: u64) -> Result<ChainSets, DatagenError> {
    let mut words = WordSource::new(lexicon, seed, "chains");
    let mut sets = ChainSets {
        two: Vec::new(),
        three: Vec::new(),
        four: Vec::new(),
    };
    for schema in Schema::all().into_iter().filter(|s| s.has_a_premise()) {
        for k in 0..ITEMS_PER_SCHEMA {
            let [a, b, c, x1, x2] = words.take::<5>()?;
            let base = [a, b, c];
            sets.two.push(instantiate(
                DatasetKind::Chain2,
                schema,
                k,
                base.clone(),
                seed,
            )?);
            for (n, kind, aux) in [
                (2, DatasetKind::Chain3, vec![x1.clone()]),
                (3, DatasetKind::Chain4, vec![x1.clone(), x2.clone()]),
            ] {
                let expansion = expand_chain(schema, &base, &aux, n)?;
                let mut terms = base.to_vec();
                terms.extend(aux);
                let mut item = assemble(
                    kind,
                    schema,
                    k,
                    terms,
                    render_premises(&expansion.premises),
                    seed,
                );
                item.replaced_premise = Some(format!("{}.", expansion.replaced));
                match kind {
                    DatasetKind::Chain3 => sets.three.push(item),
                    _ => sets.four.push(item),
                }
            }
        }
    }
    Ok(sets)
}

/// Builds one dataset family from a seed, using the built-in taxonomy and
/// lexicon splits derived from the same seed: pseudo items draw on the
/// training words, the dev set on the dev words, and chains on the test words.
pub fn generate(kind: DatasetKind, seed: u64) -> Result<Vec<DatasetItem>, DatagenError> {
    let tax = Taxonomy::builtin();
    match kind {
        DatasetKind::Believable => believable_set(&tax, seed),
        DatasetKind::Unbelievable => unbelievable_set(&tax, seed),
        _ => {
            let splits = default_splits(&tax, seed)?;
            match kind {
                DatasetKind::Pseudo => pseudo_set(&splits.train, ITEMS_PER_SCHEMA, seed),
                DatasetKind::Dev => dev_set(&splits.dev, seed),
                _ => {
                    let chains = build_chain_sets(&splits.test, seed)?;
                    Ok(match kind {
                        DatasetKind::Chain2 => chains.two,
                        DatasetKind::Chain3 => chains.three,
                        _ => chains.four,
                    })
                }
            }
        }
    }
}

/// Lexicon splits for a run seed, kept clear of the taxonomy's terms.
pub fn default_splits(tax: &Taxonomy, seed: u64) -> Result<LexiconSplits, DatagenError> {
    let reserved: BTreeSet<String> = tax.terms().iter().cloned().collect();
    lexicon_splits(seed, &reserved)
}
