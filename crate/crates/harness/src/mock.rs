use std::fmt;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use syllogistic::calculus::ConclusionLabel;
use syllogistic::datagen::{gold_answer, render_answer, substream, DatasetItem};
use syllogistic::HeuristicTheory;

/// A stand-in for the model under evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MockReasoner {
    /// Answers with every valid conclusion, or "Nothing follows".
    Gold,
    Heuristic(HeuristicTheory),
    Constant(ConclusionLabel),
    /// One label per item, drawn from a per-item substream of the seed.
    Random(u64),
}

impl MockReasoner {
    /// The answer text, rendered the way demonstrations render answers.
    pub fn answer(&self, item: &DatasetItem) -> String {
        let (a, c) = (item.a(), item.c());
        match *self {
            MockReasoner::Gold => gold_answer(item),
            MockReasoner::Heuristic(theory) => {
                let mut labels = theory.predict(item.schema).to_vec();
                if labels.is_empty() {
                    labels.push(ConclusionLabel::Nvc);
                }
                render_answer(&labels, a, c)
            }
            MockReasoner::Constant(label) => render_answer(&[label], a, c),
            MockReasoner::Random(seed) => {
                let mut rng = substream(seed, &format!("mock-random/{}", item.id));
                let label = *ConclusionLabel::ALL.choose(&mut rng).expect("nine labels");
                render_answer(&[label], a, c)
            }
        }
    }
}

impl fmt::Display for MockReasoner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MockReasoner::Gold => f.write_str("gold"),
            MockReasoner::Heuristic(t) => write!(f, "{t}"),
            MockReasoner::Constant(l) => write!(f, "constant:{}", l.code()),
            MockReasoner::Random(s) => write!(f, "random:{s}"),
        }
    }
}

impl FromStr for MockReasoner {
    type Err = String;

    /// `gold`, a theory name, `constant:LABEL` or `random:SEED`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "gold" {
            return Ok(MockReasoner::Gold);
        }
        if let Some(label) = s.strip_prefix("constant:") {
            return ConclusionLabel::ALL
                .into_iter()
                .find(|l| l.code().eq_ignore_ascii_case(label))
                .map(MockReasoner::Constant)
                .ok_or_else(|| format!("unknown label {label:?}"));
        }
        if let Some(seed) = s.strip_prefix("random:") {
            return seed
                .parse()
                .map(MockReasoner::Random)
                .map_err(|_| format!("bad seed {seed:?}"));
        }
        s.parse::<HeuristicTheory>()
            .map(MockReasoner::Heuristic)
            .map_err(|_| format!("unknown mock {s:?}; expected gold, atmosphere, matching, conversion, phm, constant:LABEL or random:SEED"))
    }
}
