//! Command-line pipeline around the `syllogistic` crate: dataset files,
//! prompts, mock reasoners, an optional chat-completions client, evaluation
//! and report tables.

pub mod client;
pub mod config;
pub mod mock;
pub mod pipeline;
pub mod runner;

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use syllogistic::jsonl::{read_jsonl, write_jsonl, JsonlError};

pub use client::{ChatTransport, Completion, HttpChat, ModelClient, TransportError};
pub use config::{Decoding, Endpoint, RetryPolicy, RunConfig};
pub use mock::MockReasoner;
pub use runner::{parse_records, predict_mock, predict_with_model, PredictionRecord};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("{}: {}", .0.display(), .1)]
    Io(PathBuf, std::io::Error),
    #[error("{}: {}", .0.display(), .1)]
    Jsonl(PathBuf, JsonlError),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Datagen(#[from] syllogistic::datagen::DatagenError),
    #[error("model client: {0}")]
    Client(String),
    #[error("{0}")]
    Invalid(String),
}

pub fn read_records<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, HarnessError> {
    let file = File::open(path).map_err(|e| HarnessError::Io(path.to_path_buf(), e))?;
    read_jsonl(BufReader::new(file)).map_err(|e| HarnessError::Jsonl(path.to_path_buf(), e))
}

/// Writes JSONL to `path`, or to stdout without one.
pub fn write_records<T: Serialize>(path: Option<&Path>, records: &[T]) -> Result<(), HarnessError> {
    let shown = path
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("<stdout>"));
    let result = match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| HarnessError::Io(p.to_path_buf(), e))?;
            let mut w = BufWriter::new(file);
            write_jsonl(&mut w, records).and_then(|_| w.flush().map_err(JsonlError::Io))
        }
        None => write_jsonl(std::io::stdout().lock(), records),
    };
    result.map_err(|e| HarnessError::Jsonl(shown, e))
}

/// Writes text to `path`, or to stdout without one.
pub fn write_text(path: Option<&Path>, text: &str) -> Result<(), HarnessError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| HarnessError::Io(p.to_path_buf(), e)),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| HarnessError::Io(PathBuf::from("<stdout>"), e)),
    }
}
