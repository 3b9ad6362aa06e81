//! Set-theoretic semantics of the four moods and an exhaustive search for
//! countermodels over small finite universes.
//!
//! Every term denotes a non-empty subset of the universe (existential
//! import), so `All X are Y` entails `Some X are Y`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{CalculusError, Mood, Statement};

/// Largest universe an [`Extension`] bitmask can describe.
pub const MAX_UNIVERSE: u8 = 16;

/// A subset of the universe `{0, .., n-1}` as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Extension(pub u32);

impl Extension {
    pub fn from_elements(elements: &[u8]) -> Self {
        Extension(elements.iter().fold(0, |m, e| m | (1 << e)))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Extension) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Extension) -> bool {
        self.0 & other.0 != 0
    }
}

impl fmt::Debug for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elems: Vec<u32> = (0..32).filter(|i| self.0 & (1 << i) != 0).collect();
        f.debug_set().entries(elems).finish()
    }
}

/// Truth of a mood given the subject and object extensions.
pub fn holds(mood: Mood, subject: Extension, object: Extension) -> bool {
    match mood {
        Mood::A => subject.is_subset(object),
        Mood::E => !subject.intersects(object),
        Mood::I => subject.intersects(object),
        Mood::O => !subject.is_subset(object),
    }
}

/// An assignment of non-empty extensions to terms over a universe of
/// `universe_size` elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation<T: Ord> {
    universe_size: u8,
    denotations: BTreeMap<T, Extension>,
}

impl<T: Ord + Clone + fmt::Debug> Interpretation<T> {
    pub fn new(
        universe_size: u8,
        denotations: impl IntoIterator<Item = (T, Extension)>,
    ) -> Result<Self, CalculusError> {
        if universe_size == 0 || universe_size > MAX_UNIVERSE {
            return Err(CalculusError::InvalidUniverse(universe_size));
        }
        let full = (1u32 << universe_size) - 1;
        let denotations: BTreeMap<T, Extension> = denotations.into_iter().collect();
        for (term, ext) in &denotations {
            if ext.is_empty() || ext.0 & !full != 0 {
                return Err(CalculusError::InvalidDenotation(format!("{term:?}")));
            }
        }
        Ok(Interpretation {
            universe_size,
            denotations,
        })
    }

    pub fn universe_size(&self) -> u8 {
        self.universe_size
    }

    pub fn denotation(&self, term: &T) -> Option<Extension> {
        self.denotations.get(term).copied()
    }

    /// Evaluates a statement whose terms must all be interpreted.
    pub fn eval(&self, stmt: &Statement<T>) -> Result<bool, CalculusError> {
        let den = |t: &T| {
            self.denotation(t)
                .ok_or_else(|| CalculusError::UnknownTerm(format!("{t:?}")))
        };
        Ok(holds(stmt.mood, den(&stmt.subject)?, den(&stmt.object)?))
    }
}

/// Free-function form of [`Interpretation::eval`].
pub fn eval_statement<T: Ord + Clone + fmt::Debug>(
    stmt: &Statement<T>,
    interp: &Interpretation<T>,
) -> Result<bool, CalculusError> {
    interp.eval(stmt)
}

/// Searches universes of size `1..=max_universe` for an interpretation making
/// every premise true and the conclusion false. Terms are assigned one at a
/// time; a statement is checked as soon as both of its terms are assigned,
/// which prunes most of the `(2^n - 1)^k` assignments.
pub fn find_countermodel<T: Ord + Clone + fmt::Debug>(
    premises: &[Statement<T>],
    conclusion: &Statement<T>,
    max_universe: u8,
) -> Option<Interpretation<T>> {
    let terms: Vec<T> = premises
        .iter()
        .chain(std::iter::once(conclusion))
        .flat_map(|s| [s.subject.clone(), s.object.clone()])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index = |t: &T| terms.binary_search(t).expect("term collected above");

    // checks[k] holds the statements whose later term has index k, each with
    // the truth value it must take.
    let mut checks: Vec<Vec<(Mood, usize, usize, bool)>> = vec![Vec::new(); terms.len()];
    for (stmt, required) in premises
        .iter()
        .map(|p| (p, true))
        .chain(std::iter::once((conclusion, false)))
    {
        let (s, o) = (index(&stmt.subject), index(&stmt.object));
        checks[s.max(o)].push((stmt.mood, s, o, required));
    }

    let mut assignment = vec![Extension(0); terms.len()];
    for n in 1..=max_universe.min(MAX_UNIVERSE) {
        if search(0, (1u32 << n) - 1, &checks, &mut assignment) {
            let interp =
                Interpretation::new(n, terms.iter().cloned().zip(assignment.iter().copied()));
            return Some(interp.expect("search assigns non-empty subsets"));
        }
    }
    None
}

fn search(
    depth: usize,
    full: u32,
    checks: &[Vec<(Mood, usize, usize, bool)>],
    assignment: &mut [Extension],
) -> bool {
    if depth == assignment.len() {
        return true;
    }
    for mask in 1..=full {
        assignment[depth] = Extension(mask);
        let consistent = checks[depth]
            .iter()
            .all(|&(mood, s, o, required)| holds(mood, assignment[s], assignment[o]) == required);
        if consistent && search(depth + 1, full, checks, assignment) {
            return true;
        }
    }
    false
}

/// True when no countermodel exists within the universe bound.
pub fn entails<T: Ord + Clone + fmt::Debug>(
    premises: &[Statement<T>],
    conclusion: &Statement<T>,
    max_universe: u8,
) -> bool {
    find_countermodel(premises, conclusion, max_universe).is_none()
}
