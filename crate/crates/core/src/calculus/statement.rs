use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CalculusError, Mood};

/// The option string for "no valid conclusion".
pub const NOTHING_FOLLOWS: &str = "Nothing follows";

/// A quantified statement `Quantifier subject are object`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Statement<T = String> {
    pub mood: Mood,
    pub subject: T,
    pub object: T,
}

impl<T: PartialEq> Statement<T> {
    pub fn new(mood: Mood, subject: T, object: T) -> Result<Self, CalculusError> {
        if subject == object {
            return Err(CalculusError::DuplicateTerms);
        }
        Ok(Statement {
            mood,
            subject,
            object,
        })
    }
}

impl<T> Statement<T> {
    pub fn map<U>(self, mut f: impl FnMut(T) -> U) -> Statement<U> {
        Statement {
            mood: self.mood,
            subject: f(self.subject),
            object: f(self.object),
        }
    }
}

impl<T: fmt::Display> Statement<T> {
    /// `All X are Y`, `No X are Y`, `Some X are Y` or `Some X are not Y`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl<T: fmt::Display> fmt::Display for Statement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (s, o) = (&self.subject, &self.object);
        match self.mood {
            Mood::A => write!(f, "All {s} are {o}"),
            Mood::E => write!(f, "No {s} are {o}"),
            Mood::I => write!(f, "Some {s} are {o}"),
            Mood::O => write!(f, "Some {s} are not {o}"),
        }
    }
}

/// A parsed option: either a statement or the "Nothing follows" sentinel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sentence {
    Claim(Statement<String>),
    NothingFollows,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unsupported quantifier in {0:?}")]
    UnsupportedQuantifier(String),
    #[error("malformed statement {0:?}")]
    Malformed(String),
    #[error("unknown term {0:?}")]
    UnknownTerm(String),
    #[error("statement relates a term to itself: {0:?}")]
    SameTerm(String),
}

/// Parses one statement against a known vocabulary. Quantifiers and terms are
/// matched case-insensitively; terminal punctuation is ignored. Terms may
/// contain spaces. Returned terms use the vocabulary's spelling.
pub fn parse_statement<S: AsRef<str>>(
    text: &str,
    vocabulary: &[S],
) -> Result<Sentence, ParseError> {
    let trimmed = text
        .trim()
        .trim_end_matches(['.', '!', '?', ';', ','])
        .trim();
    let lower = trimmed.to_lowercase();
    if lower == NOTHING_FOLLOWS.to_lowercase() {
        return Ok(Sentence::NothingFollows);
    }

    let (quantifier_mood, rest) = if let Some(r) = lower.strip_prefix("all ") {
        (Mood::A, r)
    } else if let Some(r) = lower.strip_prefix("no ") {
        (Mood::E, r)
    } else if let Some(r) = lower.strip_prefix("some ") {
        (Mood::I, r)
    } else {
        return Err(ParseError::UnsupportedQuantifier(text.to_string()));
    };

    let lookup = |candidate: &str| {
        vocabulary
            .iter()
            .map(AsRef::as_ref)
            .find(|t| t.to_lowercase() == candidate)
            .map(str::to_string)
    };

    // Longest vocabulary term followed by " are " is the subject.
    let mut subject: Option<(String, &str)> = None;
    for term in vocabulary.iter().map(AsRef::as_ref) {
        let t = term.to_lowercase();
        if let Some(after) = rest
            .strip_prefix(t.as_str())
            .and_then(|r| r.strip_prefix(" are "))
        {
            if subject
                .as_ref()
                .is_none_or(|(best, _)| best.len() < term.len())
            {
                subject = Some((term.to_string(), after));
            }
        }
    }
    let (subject, remainder) = match subject {
        Some(found) => found,
        None => {
            return Err(match rest.split_once(" are ") {
                Some((s, _)) => ParseError::UnknownTerm(s.to_string()),
                None => ParseError::Malformed(text.to_string()),
            })
        }
    };

    let (mood, object) = match quantifier_mood {
        Mood::I => match remainder.strip_prefix("not ").and_then(lookup) {
            Some(obj) => (Mood::O, obj),
            None => (
                Mood::I,
                lookup(remainder).ok_or_else(|| unknown(remainder))?,
            ),
        },
        m => (m, lookup(remainder).ok_or_else(|| unknown(remainder))?),
    };
    if subject == object {
        return Err(ParseError::SameTerm(text.to_string()));
    }
    Ok(Sentence::Claim(Statement {
        mood,
        subject,
        object,
    }))
}

fn unknown(term: &str) -> ParseError {
    ParseError::UnknownTerm(term.to_string())
}
