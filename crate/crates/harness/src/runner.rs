use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use syllogistic::datagen::{DatasetItem, Prompt};
use syllogistic::eval::ModelAnswer;

use crate::client::{ChatTransport, ModelClient};
use crate::mock::MockReasoner;

/// The raw output for one item, as persisted before any parsing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub item_id: String,
    pub raw_text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reasoning: Option<String>,
    /// Set when the item could not be answered; it then scores as missing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn sorted(mut records: Vec<PredictionRecord>) -> Vec<PredictionRecord> {
    records.sort_by(|x, y| x.item_id.cmp(&y.item_id));
    records
}

pub fn predict_mock(items: &[DatasetItem], mock: MockReasoner) -> Vec<PredictionRecord> {
    sorted(
        items
            .iter()
            .map(|item| PredictionRecord {
                item_id: item.id.clone(),
                raw_text: mock.answer(item),
                reasoning: None,
                error: None,
            })
            .collect(),
    )
}

/// Sends every prompt through `client` with at most `concurrency` requests
/// in flight. A failed item becomes an error record and the run goes on.
pub fn predict_with_model<T: ChatTransport>(
    items: &[DatasetItem],
    prompts: &[Prompt],
    client: &ModelClient<T>,
    concurrency: usize,
) -> Vec<PredictionRecord> {
    assert_eq!(items.len(), prompts.len(), "one prompt per item");
    let next = AtomicUsize::new(0);
    let out = Mutex::new(Vec::with_capacity(items.len()));
    std::thread::scope(|scope| {
        for _ in 0..concurrency.clamp(1, items.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = items.get(i) else { break };
                let record = match client.complete(&prompts[i], item.n_premises) {
                    Ok(c) => PredictionRecord {
                        item_id: item.id.clone(),
                        raw_text: c.answer,
                        reasoning: c.reasoning,
                        error: None,
                    },
                    Err(e) => {
                        log::warn!("{}: {e}", item.id);
                        PredictionRecord {
                            item_id: item.id.clone(),
                            raw_text: String::new(),
                            reasoning: None,
                            error: Some(e.to_string()),
                        }
                    }
                };
                out.lock()
                    .expect("no worker panics while holding the lock")
                    .push(record);
            });
        }
    });
    sorted(out.into_inner().expect("workers finished"))
}

/// Parses the successful records against their items. Records for unknown
/// items and failed records are left out, so those items score as missing.
pub fn parse_records(items: &[DatasetItem], records: &[PredictionRecord]) -> Vec<ModelAnswer> {
    let by_id: std::collections::HashMap<&str, &DatasetItem> =
        items.iter().map(|i| (i.id.as_str(), i)).collect();
    records
        .iter()
        .filter(|r| r.error.is_none())
        .filter_map(|r| match by_id.get(r.item_id.as_str()) {
            Some(item) => Some(ModelAnswer::new(item, r.raw_text.clone())),
            None => {
                log::warn!("prediction for unknown item {}", r.item_id);
                None
            }
        })
        .collect()
}
