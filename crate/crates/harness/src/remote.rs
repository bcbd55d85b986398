use std::fs::OpenOptions;
use std::io::Write as _;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use reqwest::blocking::Client;
use reqwest::StatusCode;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use textpuzzle_core::prompting::PromptBundle;
use textpuzzle_core::PuzzleInstance;
use thiserror::Error;

use crate::player::{Player, PlayerError};

pub const DEFAULT_API_KEY_ENV: &str = "TEXTPUZZLE_API_KEY";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RemoteError {
    #[error("authentication rejected (HTTP {0})")]
    Auth(u16),
    #[error("rate limited (HTTP 429)")]
    RateLimited,
    #[error("request timed out")]
    Timeout,
    #[error("transport failure: {0}")]
    Transport(String),
    #[error("server error (HTTP {0})")]
    Server(u16),
    #[error("request rejected (HTTP {status}): {body}")]
    Rejected { status: u16, body: String },
    #[error("malformed response: {0}")]
    Malformed(String),
    #[error("gave up after {attempts} attempts: {last}")]
    Exhausted { attempts: u32, last: Box<RemoteError> },
}

impl RemoteError {
    pub fn is_retryable(&self) -> bool {
        matches!(
            self,
            RemoteError::RateLimited | RemoteError::Timeout | RemoteError::Transport(_) | RemoteError::Server(_)
        )
    }
}

#[derive(Debug, Clone)]
pub struct RemoteConfig {
    /// Base URL; `/chat/completions` is appended.
    pub base_url: String,
    pub model: String,
    pub api_key_env: String,
    pub max_attempts: u32,
    /// First retry delay; doubles on each further retry.
    pub backoff: Duration,
    pub timeout: Duration,
    /// Minimum spacing between requests across every clone of the player.
    pub min_interval: Duration,
    pub max_tokens: Option<u32>,
    /// Transcript entries are appended here as JSON lines when set.
    pub transcript_path: Option<PathBuf>,
}

impl RemoteConfig {
    pub fn new(base_url: impl Into<String>, model: impl Into<String>) -> Self {
        RemoteConfig {
            base_url: base_url.into(),
            model: model.into(),
            api_key_env: DEFAULT_API_KEY_ENV.into(),
            max_attempts: 3,
            backoff: Duration::from_secs(1),
            timeout: Duration::from_secs(120),
            min_interval: Duration::ZERO,
            max_tokens: None,
            transcript_path: None,
        }
    }
}

/// One HTTP attempt.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub timestamp: String,
    pub instance_id: String,
    /// 1-based attempt within this call; values above 1 are retries.
    pub attempt: u32,
    pub request: Value,
    pub status: Option<u16>,
    pub response: Option<String>,
    pub error: Option<String>,
    pub elapsed_s: f64,
}

#[derive(Debug)]
struct RateLimiter {
    interval: Duration,
    next: Mutex<Option<Instant>>,
}

impl RateLimiter {
    fn acquire(&self) {
        if self.interval.is_zero() {
            return;
        }
        let wait = {
            let mut next = self.next.lock().expect("rate limiter poisoned");
            let now = Instant::now();
            let slot = next.map_or(now, |n| n.max(now));
            *next = Some(slot + self.interval);
            slot - now
        };
        if !wait.is_zero() {
            thread::sleep(wait);
        }
    }
}

/// Chat-completion client with greedy decoding, bounded retries, and a
/// shared request transcript. Clones share the limiter and transcript.
#[derive(Debug, Clone)]
pub struct RemoteModelPlayer {
    config: RemoteConfig,
    client: Client,
    api_key: Option<String>,
    limiter: Arc<RateLimiter>,
    transcript: Arc<Mutex<Vec<TranscriptEntry>>>,
}

impl RemoteModelPlayer {
    pub fn new(config: RemoteConfig) -> Result<Self, RemoteError> {
        let client = Client::builder()
            .timeout(config.timeout)
            .build()
            .map_err(|e| RemoteError::Transport(e.to_string()))?;
        let api_key = std::env::var(&config.api_key_env).ok().filter(|k| !k.is_empty());
        Ok(RemoteModelPlayer {
            limiter: Arc::new(RateLimiter {
                interval: config.min_interval,
                next: Mutex::new(None),
            }),
            config,
            client,
            api_key,
            transcript: Arc::new(Mutex::new(Vec::new())),
        })
    }

    pub fn config(&self) -> &RemoteConfig {
        &self.config
    }

    pub fn transcript(&self) -> Vec<TranscriptEntry> {
        self.transcript.lock().expect("transcript poisoned").clone()
    }

    /// Request body: every message in order, with deterministic sampling.
    pub fn request_body(&self, bundle: &PromptBundle) -> Value {
        let mut messages = Vec::new();
        if let Some(system) = &bundle.system {
            messages.push(json!({"role": "system", "content": system}));
        }
        for m in &bundle.messages {
            messages.push(json!({"role": m.role, "content": m.content}));
        }
        let mut body = json!({
            "model": self.config.model,
            "messages": messages,
            "temperature": 0,
            "top_p": 1,
            "n": 1,
            "stream": false,
        });
        if let Some(max) = self.config.max_tokens {
            body["max_tokens"] = json!(max);
        }
        body
    }

    fn endpoint(&self) -> String {
        format!("{}/chat/completions", self.config.base_url.trim_end_matches('/'))
    }

    fn record(&self, entry: TranscriptEntry) {
        if let Some(path) = &self.config.transcript_path {
            if let Ok(mut f) = OpenOptions::new().create(true).append(true).open(path) {
                let _ = writeln!(f, "{}", serde_json::to_string(&entry).expect("entry serializes"));
            }
        }
        self.transcript.lock().expect("transcript poisoned").push(entry);
    }

    fn attempt(&self, body: &Value) -> (Option<u16>, Option<String>, Result<String, RemoteError>, Option<Duration>) {
        let mut req = self.client.post(self.endpoint()).json(body);
        if let Some(key) = &self.api_key {
            req = req.bearer_auth(key);
        }
        let resp = match req.send() {
            Ok(r) => r,
            Err(e) if e.is_timeout() => return (None, None, Err(RemoteError::Timeout), None),
            Err(e) => return (None, None, Err(RemoteError::Transport(e.to_string())), None),
        };
        let status = resp.status();
        let retry_after = resp
            .headers()
            .get(reqwest::header::RETRY_AFTER)
            .and_then(|v| v.to_str().ok())
            .and_then(|v| v.trim().parse::<u64>().ok())
            .map(|s| Duration::from_secs(s.min(60)));
        let text = match resp.text() {
            Ok(t) => t,
            Err(e) if e.is_timeout() => return (Some(status.as_u16()), None, Err(RemoteError::Timeout), None),
            Err(e) => {
                return (
                    Some(status.as_u16()),
                    None,
                    Err(RemoteError::Transport(e.to_string())),
                    None,
                )
            }
        };
        let code = status.as_u16();
        let outcome = match status {
            s if s.is_success() => parse_completion(&text),
            StatusCode::TOO_MANY_REQUESTS => Err(RemoteError::RateLimited),
            StatusCode::UNAUTHORIZED | StatusCode::FORBIDDEN => Err(RemoteError::Auth(code)),
            s if s.is_server_error() => Err(RemoteError::Server(code)),
            _ => Err(RemoteError::Rejected {
                status: code,
                body: text.chars().take(500).collect(),
            }),
        };
        (Some(code), Some(text), outcome, retry_after)
    }

    /// Sends the bundle, retrying transient failures with exponential backoff.
    pub fn complete(&self, instance_id: &str, bundle: &PromptBundle) -> Result<String, RemoteError> {
        let body = self.request_body(bundle);
        let attempts = self.config.max_attempts.max(1);
        let mut last = RemoteError::Transport("no attempt made".into());
        for attempt in 1..=attempts {
            self.limiter.acquire();
            let started = Instant::now();
            let (status, response, outcome, retry_after) = self.attempt(&body);
            self.record(TranscriptEntry {
                timestamp: chrono::Utc::now().to_rfc3339(),
                instance_id: instance_id.to_string(),
                attempt,
                request: body.clone(),
                status,
                response,
                error: outcome.as_ref().err().map(ToString::to_string),
                elapsed_s: started.elapsed().as_secs_f64(),
            });
            match outcome {
                Ok(text) => return Ok(text),
                Err(e) if e.is_retryable() && attempt < attempts => {
                    let backoff = self.config.backoff * 2u32.pow(attempt - 1);
                    thread::sleep(retry_after.map_or(backoff, |r| r.max(backoff)));
                    last = e;
                }
                Err(e) if e.is_retryable() => last = e,
                Err(e) => return Err(e),
            }
        }
        Err(RemoteError::Exhausted {
            attempts,
            last: Box::new(last),
        })
    }
}

/// Assistant text of the first choice of an OpenAI-style completion body.
pub fn parse_completion(body: &str) -> Result<String, RemoteError> {
    let v: Value = serde_json::from_str(body).map_err(|e| RemoteError::Malformed(e.to_string()))?;
    v.pointer("/choices/0/message/content")
        .and_then(Value::as_str)
        .map(str::to_string)
        .ok_or_else(|| RemoteError::Malformed("missing choices[0].message.content".into()))
}

impl Player for RemoteModelPlayer {
    fn name(&self) -> String {
        format!("remote({})", self.config.model)
    }

    fn respond(&self, instance: &PuzzleInstance, bundle: &PromptBundle) -> Result<String, PlayerError> {
        Ok(self.complete(&instance.id, bundle)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn completion_parsing() {
        let ok = r#"{"choices":[{"message":{"role":"assistant","content":"hoodie"}}]}"#;
        assert_eq!(parse_completion(ok).unwrap(), "hoodie");
        assert!(matches!(parse_completion("{}"), Err(RemoteError::Malformed(_))));
        assert!(matches!(parse_completion("not json"), Err(RemoteError::Malformed(_))));
    }

    #[test]
    fn retryable_classes() {
        assert!(RemoteError::RateLimited.is_retryable());
        assert!(RemoteError::Server(503).is_retryable());
        assert!(!RemoteError::Auth(401).is_retryable());
        assert!(!RemoteError::Malformed(String::new()).is_retryable());
    }

    #[test]
    fn limiter_spaces_requests() {
        let l = RateLimiter {
            interval: Duration::from_millis(30),
            next: Mutex::new(None),
        };
        let t = Instant::now();
        for _ in 0..3 {
            l.acquire();
        }
        assert!(t.elapsed() >= Duration::from_millis(60));
    }
}
