use std::collections::BTreeMap;

use super::DatagenError;
use crate::calculus::{Mood, Statement};

const BUILTIN: &str = include_str!("../../resources/taxonomy.txt");

/// Real-world classes related by is-a edges. Every class is read as the set
/// of things below it plus things of its own kind not covered by a named
/// subclass, so subclasses are always proper and two classes overlap exactly
/// when one is below the other or they share a named subclass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Taxonomy {
    terms: Vec<String>,
    index: BTreeMap<String, usize>,
    edges: Vec<(usize, usize)>,
    /// Bit `j` of `below[i]` is set when term `j` is term `i` or a descendant.
    below: Vec<u64>,
}

impl Taxonomy {
    /// The built-in taxonomy of ten three-term chains.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("built-in taxonomy is well formed")
    }

    /// Parses `child -> parent` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, DatagenError> {
        let mut terms: Vec<String> = Vec::new();
        let mut index = BTreeMap::new();
        let mut edges = Vec::new();
        let mut intern = |t: &str, terms: &mut Vec<String>| -> usize {
            *index.entry(t.to_string()).or_insert_with(|| {
                terms.push(t.to_string());
                terms.len() - 1
            })
        };
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (child, parent) = line
                .split_once("->")
                .map(|(c, p)| (c.trim(), p.trim()))
                .filter(|(c, p)| !c.is_empty() && !p.is_empty() && c != p)
                .ok_or_else(|| {
                    DatagenError::Taxonomy(format!("line {}: expected `child -> parent`", n + 1))
                })?;
            let c = intern(child, &mut terms);
            let p = intern(parent, &mut terms);
            edges.push((c, p));
        }
        if terms.len() > 64 {
            return Err(DatagenError::Taxonomy(format!(
                "{} terms, at most 64 supported",
                terms.len()
            )));
        }
        let index: BTreeMap<String, usize> = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();

        let n = terms.len();
        let mut below: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        // Propagate descendants upwards until nothing changes; a cycle shows
        // up as a term that ends up below one of its own descendants.
        loop {
            let mut changed = false;
            for &(c, p) in &edges {
                let merged = below[p] | below[c];
                if merged != below[p] {
                    below[p] = merged;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for &(c, p) in &edges {
            if below[c] & (1 << p) != 0 {
                return Err(DatagenError::Taxonomy(format!(
                    "cycle through {} and {}",
                    terms[c], terms[p]
                )));
            }
        }
        Ok(Taxonomy {
            terms,
            index,
            edges,
            below,
        })
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn contains(&self, term: &str) -> bool {
        self.index.contains_key(term)
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(|&(c, p)| (self.terms[c].as_str(), self.terms[p].as_str()))
    }

    fn id(&self, term: &str) -> Result<usize, DatagenError> {
        self.index
            .get(term)
            .copied()
            .ok_or_else(|| DatagenError::UnknownTerm(term.to_string()))
    }

    /// True when `sub` is `sup` or one of its descendants.
    pub fn is_a(&self, sub: &str, sup: &str) -> Result<bool, DatagenError> {
        let (s, o) = (self.id(sub)?, self.id(sup)?);
        Ok(self.below[o] & (1 << s) != 0)
    }

    /// True when some class lies below both terms.
    pub fn overlaps(&self, x: &str, y: &str) -> Result<bool, DatagenError> {
        let (x, y) = (self.id(x)?, self.id(y)?);
        Ok(self.below[x] & self.below[y] != 0)
    }

    /// Truth of a statement about taxonomy classes.
    pub fn truth<T: AsRef<str>>(&self, stmt: &Statement<T>) -> Result<bool, DatagenError> {
        let (s, o) = (stmt.subject.as_ref(), stmt.object.as_ref());
        Ok(match stmt.mood {
            Mood::A => self.is_a(s, o)?,
            Mood::E => !self.overlaps(s, o)?,
            Mood::I => self.overlaps(s, o)?,
            Mood::O => !self.is_a(s, o)?,
        })
    }
}

/// Free-function form of [`Taxonomy::truth`].
pub fn truth_in_taxonomy<T: AsRef<str>>(
    stmt: &Statement<T>,
    tax: &Taxonomy,
) -> Result<bool, DatagenError> {
    tax.truth(stmt)
}
