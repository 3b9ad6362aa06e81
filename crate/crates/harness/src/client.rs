use std::time::Duration;

use serde::{Deserialize, Serialize};
use syllogistic::datagen::Prompt;

use crate::config::{Decoding, Endpoint, RetryPolicy};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransportError {
    /// Timeouts, refused connections, 429 and 5xx.
    #[error("{0}")]
    Retryable(String),
    #[error("{0}")]
    Fatal(String),
}

/// One user-turn completion.
pub trait ChatTransport: Send + Sync {
    fn chat(&self, prompt: &str, max_tokens: u32) -> Result<String, TransportError>;
}

#[derive(Serialize)]
struct ChatRequest<'a> {
    model: &'a str,
    messages: [Message<'a>; 1],
    max_tokens: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    temperature: Option<f64>,
}

#[derive(Serialize)]
struct Message<'a> {
    role: &'a str,
    content: &'a str,
}

#[derive(Deserialize)]
struct ChatResponse {
    choices: Vec<Choice>,
}

#[derive(Deserialize)]
struct Choice {
    message: ResponseMessage,
}

#[derive(Deserialize)]
struct ResponseMessage {
    #[serde(default)]
    content: Option<String>,
}

/// A chat-completions endpoint over HTTP.
pub struct HttpChat {
    client: reqwest::blocking::Client,
    url: String,
    model: String,
    api_key: Option<String>,
    greedy: bool,
}

impl HttpChat {
    /// Reads the API key from the endpoint's environment variable. A missing
    /// key is allowed for local servers; requests then go unauthenticated.
    pub fn new(endpoint: &Endpoint, greedy: bool) -> Result<Self, TransportError> {
        let api_key = std::env::var(&endpoint.api_key_env)
            .ok()
            .filter(|k| !k.is_empty());
        if api_key.is_none() {
            log::warn!(
                "{} is not set; sending requests without credentials",
                endpoint.api_key_env
            );
        }
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(endpoint.timeout_secs))
            .build()
            .map_err(|e| TransportError::Fatal(e.to_string()))?;
        Ok(HttpChat {
            client,
            url: format!("{}/chat/completions", endpoint.url.trim_end_matches('/')),
            model: endpoint.model.clone(),
            api_key,
            greedy,
        })
    }
}

impl ChatTransport for HttpChat {
    fn chat(&self, prompt: &str, max_tokens: u32) -> Result<String, TransportError> {
        let body = ChatRequest {
            model: &self.model,
            messages: [Message {
                role: "user",
                content: prompt,
            }],
            max_tokens,
            temperature: self.greedy.then_some(0.0),
        };
        let mut req = self.client.post(&self.url).json(&body);
        if let Some(key) = &self.api_key {
            req = req.bearer_auth(key);
        }
        let resp = req
            .send()
            .map_err(|e| TransportError::Retryable(e.to_string()))?;
        let status = resp.status();
        if status.as_u16() == 429 || status.is_server_error() {
            return Err(TransportError::Retryable(format!("HTTP {status}")));
        }
        if !status.is_success() {
            let text = resp.text().unwrap_or_default();
            return Err(TransportError::Fatal(format!(
                "HTTP {status}: {}",
                text.chars().take(200).collect::<String>()
            )));
        }
        let parsed: ChatResponse = resp
            .json()
            .map_err(|e| TransportError::Fatal(format!("bad response body: {e}")))?;
        parsed
            .choices
            .into_iter()
            .next()
            .map(|c| c.message.content.unwrap_or_default())
            .ok_or_else(|| TransportError::Fatal("response has no choices".into()))
    }
}

/// What a model produced for one item.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    /// First-stage output of a two-stage prompt.
    pub reasoning: Option<String>,
    pub answer: String,
    pub requests: u32,
}

pub struct ModelClient<T> {
    transport: T,
    decoding: Decoding,
    retry: RetryPolicy,
}

impl<T: ChatTransport> ModelClient<T> {
    pub fn new(transport: T, decoding: Decoding, retry: RetryPolicy) -> Self {
        ModelClient {
            transport,
            decoding,
            retry,
        }
    }

    fn request(
        &self,
        prompt: &str,
        max_tokens: u32,
        requests: &mut u32,
    ) -> Result<String, TransportError> {
        let mut attempt = 1;
        loop {
            *requests += 1;
            match self.transport.chat(prompt, max_tokens) {
                Err(TransportError::Retryable(msg)) if attempt < self.retry.max_attempts => {
                    let wait = self.retry.backoff(attempt);
                    log::debug!("attempt {attempt} failed ({msg}); retrying in {wait:?}");
                    std::thread::sleep(wait);
                    attempt += 1;
                }
                Err(TransportError::Retryable(msg)) => {
                    return Err(TransportError::Retryable(format!(
                        "{msg} (after {attempt} attempts)"
                    )))
                }
                other => return other,
            }
        }
    }

    /// Runs a prompt to its final answer. Two-stage prompts first collect the
    /// reasoning under the chain-of-thought budget, then ask for the answer.
    /// Texts are returned as received.
    pub fn complete(
        &self,
        prompt: &Prompt,
        n_premises: usize,
    ) -> Result<Completion, TransportError> {
        let mut requests = 0;
        match prompt {
            Prompt::Single { text } => {
                let answer = self.request(text, self.decoding.max_answer_tokens, &mut requests)?;
                Ok(Completion {
                    reasoning: None,
                    answer,
                    requests,
                })
            }
            Prompt::TwoStage { stage1, .. } => {
                let reasoning =
                    self.request(stage1, self.decoding.cot_tokens(n_premises), &mut requests)?;
                let second = prompt.stage2(&reasoning).expect("two-stage prompt");
                let answer =
                    self.request(&second, self.decoding.max_answer_tokens, &mut requests)?;
                Ok(Completion {
                    reasoning: Some(reasoning),
                    answer,
                    requests,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Mutex;

    /// Fails the first `failures` calls, then echoes the budget.
    struct Flaky {
        failures: Mutex<u32>,
        fatal: bool,
        seen: Mutex<Vec<(String, u32)>>,
    }

    impl Flaky {
        fn new(failures: u32, fatal: bool) -> Self {
            Flaky {
                failures: Mutex::new(failures),
                fatal,
                seen: Mutex::new(Vec::new()),
            }
        }
    }

    impl ChatTransport for Flaky {
        fn chat(&self, prompt: &str, max_tokens: u32) -> Result<String, TransportError> {
            self.seen
                .lock()
                .unwrap()
                .push((prompt.to_string(), max_tokens));
            let mut left = self.failures.lock().unwrap();
            if *left > 0 {
                *left -= 1;
                return Err(if self.fatal {
                    TransportError::Fatal("no".into())
                } else {
                    TransportError::Retryable("busy".into())
                });
            }
            Ok(format!("tokens={max_tokens}"))
        }
    }

    fn fast_retry(max_attempts: u32) -> RetryPolicy {
        RetryPolicy {
            max_attempts,
            initial_backoff_ms: 1,
            max_backoff_ms: 2,
        }
    }

    #[test]
    fn two_stage_makes_two_requests_with_their_budgets() {
        let client = ModelClient::new(Flaky::new(0, false), Decoding::default(), fast_retry(1));
        let prompt = Prompt::TwoStage {
            stage1: "P Let's think.".into(),
            answer_trigger: "So:".into(),
        };
        let c = client.complete(&prompt, 2).unwrap();
        assert_eq!(c.requests, 2);
        assert_eq!(c.reasoning.as_deref(), Some("tokens=50"));
        assert_eq!(c.answer, "tokens=20");
        let seen = client.transport.seen.lock().unwrap();
        assert_eq!(seen[1].0, "P Let's think. tokens=50\n\nSo:");
    }

    #[test]
    fn single_prompt_makes_one_request() {
        let client = ModelClient::new(Flaky::new(0, false), Decoding::default(), fast_retry(1));
        let c = client
            .complete(&Prompt::Single { text: "x".into() }, 2)
            .unwrap();
        assert_eq!((c.requests, c.reasoning), (1, None));
    }

    #[test]
    fn retries_transient_failures() {
        let client = ModelClient::new(Flaky::new(2, false), Decoding::default(), fast_retry(3));
        let c = client
            .complete(&Prompt::Single { text: "x".into() }, 2)
            .unwrap();
        assert_eq!(c.requests, 3);
        let client = ModelClient::new(Flaky::new(3, false), Decoding::default(), fast_retry(3));
        assert!(matches!(
            client.complete(&Prompt::Single { text: "x".into() }, 2),
            Err(TransportError::Retryable(_))
        ));
    }

    #[test]
    fn fatal_errors_are_not_retried() {
        let client = ModelClient::new(Flaky::new(1, true), Decoding::default(), fast_retry(5));
        assert!(matches!(
            client.complete(&Prompt::Single { text: "x".into() }, 2),
            Err(TransportError::Fatal(_))
        ));
        assert_eq!(client.transport.seen.lock().unwrap().len(), 1);
    }
}
