use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::rng::substream;
use super::DatagenError;

const ONSETS: [&str; 24] = [
    "b", "bl", "br", "ch", "d", "dr", "f", "fl", "g", "gl", "gr", "k", "kr", "l", "m", "n", "p",
    "pl", "r", "s", "sk", "sn", "t", "tr",
];
const NUCLEI: [&str; 10] = ["a", "e", "i", "o", "u", "ai", "ea", "ie", "ou", "ui"];
const CODAS: [&str; 6] = ["", "", "", "n", "s", "ck"];

/// Unique pronounceable nonsense words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoLexicon {
    pub seed: u64,
    pub words: Vec<String>,
}

impl PseudoLexicon {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.iter().any(|w| w == word)
    }
}

/// Upper bound on the number of distinct words the generator can produce.
/// Distinct syllable sequences can spell the same string, so the true number
/// is lower; generation fails cleanly if it runs dry before this bound.
pub fn lexicon_capacity() -> u128 {
    let per_syllable = (ONSETS.len() * NUCLEI.len()) as u128;
    let distinct_codas = 4u128;
    // Only the final syllable takes a coda.
    per_syllable * per_syllable * distinct_codas + per_syllable.pow(3) * distinct_codas
}

fn word<R: Rng>(rng: &mut R) -> String {
    let syllables = rng.random_range(2..=3);
    let mut w = String::new();
    for _ in 0..syllables {
        w.push_str(ONSETS.choose(rng).expect("non-empty"));
        w.push_str(NUCLEI.choose(rng).expect("non-empty"));
    }
    w.push_str(CODAS.choose(rng).expect("non-empty"));
    w
}

pub fn gen_pseudo_lexicon(n: usize, seed: u64) -> Result<PseudoLexicon, DatagenError> {
    gen_pseudo_lexicon_excluding(n, seed, &BTreeSet::new())
}

/// Like [`gen_pseudo_lexicon`], never producing a word in `exclude`.
pub fn gen_pseudo_lexicon_excluding(
    n: usize,
    seed: u64,
    exclude: &BTreeSet<String>,
) -> Result<PseudoLexicon, DatagenError> {
    if n == 0 {
        return Err(DatagenError::InvalidRequest(
            "a lexicon needs at least one word".into(),
        ));
    }
    let capacity = lexicon_capacity().saturating_sub(exclude.len() as u128);
    if n as u128 > capacity / 2 {
        return Err(DatagenError::Capacity {
            requested: n,
            available: (capacity / 2) as usize,
        });
    }
    let mut rng = substream(seed, "lexicon");
    let mut seen = BTreeSet::new();
    let mut words = Vec::with_capacity(n);
    let max_attempts = n.saturating_mul(1000);
    let mut attempts = 0;
    while words.len() < n {
        attempts += 1;
        if attempts > max_attempts {
            return Err(DatagenError::Capacity {
                requested: n,
                available: words.len(),
            });
        }
        let w = word(&mut rng);
        if exclude.contains(&w) || !seen.insert(w.clone()) {
            continue;
        }
        words.push(w);
    }
    Ok(PseudoLexicon { seed, words })
}

/// Pairwise disjoint lexicons for training, development and test items.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexiconSplits {
    pub train: PseudoLexicon,
    pub dev: PseudoLexicon,
    pub test: PseudoLexicon,
}

pub const TRAIN_LEXICON_SIZE: usize = 4000;
pub const DEV_LEXICON_SIZE: usize = 1000;
pub const TEST_LEXICON_SIZE: usize = 2000;

/// Builds the three splits from one seed. Words in `reserved` (real terms,
/// for instance) never appear in any split.
pub fn lexicon_splits(
    seed: u64,
    reserved: &BTreeSet<String>,
) -> Result<LexiconSplits, DatagenError> {
    let mut exclude = reserved.clone();
    let train = gen_pseudo_lexicon_excluding(TRAIN_LEXICON_SIZE, seed, &exclude)?;
    exclude.extend(train.words.iter().cloned());
    let dev = gen_pseudo_lexicon_excluding(DEV_LEXICON_SIZE, seed.wrapping_add(1), &exclude)?;
    exclude.extend(dev.words.iter().cloned());
    let test = gen_pseudo_lexicon_excluding(TEST_LEXICON_SIZE, seed.wrapping_add(2), &exclude)?;
    Ok(LexiconSplits { train, dev, test })
}
