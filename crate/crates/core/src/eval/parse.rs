use serde::{Deserialize, Serialize};

use crate::calculus::ConclusionLabel;
use crate::datagen::DatasetItem;

/// A model's raw output for one item together with the labels read from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelAnswer {
    pub item_id: String,
    pub raw_text: String,
    pub parsed: Vec<ConclusionLabel>,
}

impl ModelAnswer {
    pub fn new(item: &DatasetItem, raw_text: impl Into<String>) -> Self {
        let raw_text = raw_text.into();
        let parsed = parse_answer(&raw_text, item);
        ModelAnswer {
            item_id: item.id.clone(),
            raw_text,
            parsed,
        }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '\'' || c == '-'
}

/// Offset of the first whole-phrase occurrence of `needle` in `haystack`.
fn first_phrase(haystack: &str, needle: &str) -> Option<usize> {
    haystack.match_indices(needle).map(|(i, _)| i).find(|&i| {
        let before = haystack[..i].chars().next_back();
        let after = haystack[i + needle.len()..].chars().next();
        !before.is_some_and(is_word_char) && !after.is_some_and(is_word_char)
    })
}

/// Reads the options an answer mentions, in order of first mention. Matching
/// ignores case and the options' final periods, so "or"-joined lists and
/// running prose both parse. Text that names no option gives an empty list.
pub fn parse_answer(raw: &str, item: &DatasetItem) -> Vec<ConclusionLabel> {
    let text = raw.to_lowercase();
    let mut found: Vec<(usize, usize, ConclusionLabel)> = Vec::new();
    for (label, option) in item.labelled_options() {
        let phrase = option.trim_end_matches('.').to_lowercase();
        if let Some(pos) = first_phrase(&text, &phrase) {
            found.push((pos, phrase.len(), label));
        }
    }
    // Earliest first; at equal starts the longer phrase wins the tie.
    found.sort_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
    found.into_iter().map(|(_, _, l)| l).collect()
}
