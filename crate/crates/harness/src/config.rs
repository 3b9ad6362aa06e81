use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use syllogistic::datagen::Setting;

use crate::HarnessError;

/// Answer tokens after the final-answer or ICL trigger.
pub const DEFAULT_ANSWER_TOKENS: u32 = 20;
/// Reasoning tokens for base models on two-premise items.
pub const DEFAULT_COT_TOKENS: u32 = 50;
/// Reasoning tokens for instruction-tuned models and premise chains.
pub const LONG_COT_TOKENS: u32 = 70;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Decoding {
    pub greedy: bool,
    pub max_answer_tokens: u32,
    /// Left unset to pick 50 or 70 from the model and dataset.
    pub max_cot_tokens: Option<u32>,
    pub instruction_tuned: bool,
}

impl Default for Decoding {
    fn default() -> Self {
        Decoding {
            greedy: true,
            max_answer_tokens: DEFAULT_ANSWER_TOKENS,
            max_cot_tokens: None,
            instruction_tuned: false,
        }
    }
}

impl Decoding {
    pub fn cot_tokens(&self, n_premises: usize) -> u32 {
        self.max_cot_tokens
            .unwrap_or(if self.instruction_tuned || n_premises > 2 {
                LONG_COT_TOKENS
            } else {
                DEFAULT_COT_TOKENS
            })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RetryPolicy {
    /// Attempts per request, the first one included.
    pub max_attempts: u32,
    pub initial_backoff_ms: u64,
    pub max_backoff_ms: u64,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        RetryPolicy {
            max_attempts: 4,
            initial_backoff_ms: 500,
            max_backoff_ms: 8000,
        }
    }
}

impl RetryPolicy {
    /// Wait before retry number `retry` (1-based), doubling each time.
    pub fn backoff(&self, retry: u32) -> Duration {
        let factor = 1u64 << retry.saturating_sub(1).min(20);
        Duration::from_millis(
            self.initial_backoff_ms
                .saturating_mul(factor)
                .min(self.max_backoff_ms),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Endpoint {
    /// Base URL of a chat-completions API, e.g. `http://localhost:8000/v1`.
    pub url: String,
    pub model: String,
    /// Name of the environment variable holding the API key.
    pub api_key_env: String,
    pub timeout_secs: u64,
}

impl Default for Endpoint {
    fn default() -> Self {
        Endpoint {
            url: "http://localhost:8000/v1".to_string(),
            model: String::new(),
            api_key_env: "LLM_API_KEY".to_string(),
            timeout_secs: 60,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub dataset: PathBuf,
    /// Demonstration pool for the in-context settings.
    pub pool: Option<PathBuf>,
    pub setting: Setting,
    pub endpoint: Endpoint,
    pub decoding: Decoding,
    pub concurrency: usize,
    pub retry: RetryPolicy,
    pub output: PathBuf,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dataset: PathBuf::from("dataset.jsonl"),
            pool: None,
            setting: Setting::ZsCot,
            endpoint: Endpoint::default(),
            decoding: Decoding::default(),
            concurrency: 4,
            retry: RetryPolicy::default(),
            output: PathBuf::from("predictions.jsonl"),
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        let cfg: RunConfig =
            toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| HarnessError::Io(path.to_path_buf(), e))?;
        Self::from_toml(&text)
    }

    fn check(&self) -> Result<(), HarnessError> {
        if self.concurrency == 0 {
            return Err(HarnessError::Config(
                "concurrency must be at least 1".into(),
            ));
        }
        if self.retry.max_attempts == 0 {
            return Err(HarnessError::Config(
                "retry.max_attempts must be at least 1".into(),
            ));
        }
        Ok(())
    }
}
