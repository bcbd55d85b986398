//! Session events and the state derived from replaying them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use textpuzzle_core::PuzzleInstance;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum Event {
    Created {
        at: f64,
        session_id: String,
        puzzles: Vec<PuzzleInstance>,
    },
    Viewed {
        at: f64,
        index: usize,
    },
    Submitted {
        at: f64,
        index: usize,
        answer: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        idempotency_key: Option<String>,
        solved: bool,
        feedback: Vec<String>,
    },
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PuzzleProgress {
    pub attempts: u32,
    pub first_view: Option<f64>,
    pub solved_at: Option<f64>,
    pub solved_on: Option<u32>,
}

impl PuzzleProgress {
    /// Seconds from first view to the solving submission, or to `now` while
    /// still open.
    pub fn elapsed(&self, now: f64) -> f64 {
        match (self.first_view, self.solved_at) {
            (Some(v), Some(s)) => (s - v).max(0.0),
            (Some(v), None) => (now - v).max(0.0),
            _ => 0.0,
        }
    }
}

/// Stored result of a keyed submission, replayed on retries.
#[derive(Debug, Clone, PartialEq)]
pub struct KeyedSubmission {
    pub index: usize,
    pub answer: String,
    pub solved: bool,
    pub feedback: Vec<String>,
    pub attempts: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionState {
    pub id: String,
    pub created_at: f64,
    pub puzzles: Vec<PuzzleInstance>,
    pub current: usize,
    pub progress: Vec<PuzzleProgress>,
    pub keys: HashMap<String, KeyedSubmission>,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ReplayError {
    #[error("log does not start with a created event")]
    MissingCreate,
    #[error("duplicate created event")]
    DuplicateCreate,
    #[error("event refers to puzzle {0} out of range")]
    BadIndex(usize),
}

impl SessionState {
    pub fn is_complete(&self) -> bool {
        self.current >= self.puzzles.len()
    }

    pub fn replay(events: &[Event]) -> Result<SessionState, ReplayError> {
        let mut iter = events.iter();
        let Some(Event::Created { at, session_id, puzzles }) = iter.next() else {
            return Err(ReplayError::MissingCreate);
        };
        let mut state = SessionState {
            id: session_id.clone(),
            created_at: *at,
            progress: vec![PuzzleProgress::default(); puzzles.len()],
            puzzles: puzzles.clone(),
            current: 0,
            keys: HashMap::new(),
        };
        for e in iter {
            state.apply(e)?;
        }
        Ok(state)
    }

    pub fn apply(&mut self, event: &Event) -> Result<(), ReplayError> {
        match event {
            Event::Created { .. } => return Err(ReplayError::DuplicateCreate),
            Event::Viewed { at, index } => {
                let p = self.progress.get_mut(*index).ok_or(ReplayError::BadIndex(*index))?;
                p.first_view.get_or_insert(*at);
            }
            Event::Submitted {
                at,
                index,
                answer,
                idempotency_key,
                solved,
                feedback,
            } => {
                let p = self.progress.get_mut(*index).ok_or(ReplayError::BadIndex(*index))?;
                p.first_view.get_or_insert(*at);
                p.attempts += 1;
                if *solved && p.solved_at.is_none() {
                    p.solved_at = Some(*at);
                    p.solved_on = Some(p.attempts);
                    if self.current == *index {
                        self.current += 1;
                    }
                }
                if let Some(k) = idempotency_key {
                    self.keys.insert(
                        k.clone(),
                        KeyedSubmission {
                            index: *index,
                            answer: answer.clone(),
                            solved: *solved,
                            feedback: feedback.clone(),
                            attempts: p.attempts,
                        },
                    );
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use textpuzzle_core::generators::generate;
    use textpuzzle_core::{Difficulty, GameKind};

    fn created() -> Event {
        Event::Created {
            at: 100.0,
            session_id: "s".into(),
            puzzles: vec![
                generate(GameKind::Islands, Difficulty::Easy, 1).unwrap(),
                generate(GameKind::Islands, Difficulty::Easy, 2).unwrap(),
            ],
        }
    }

    fn submit(at: f64, index: usize, solved: bool) -> Event {
        Event::Submitted {
            at,
            index,
            answer: "x".into(),
            idempotency_key: None,
            solved,
            feedback: vec![],
        }
    }

    #[test]
    fn replay_derives_attempts_and_timing() {
        let events = vec![
            created(),
            Event::Viewed { at: 101.0, index: 0 },
            Event::Viewed { at: 150.0, index: 0 },
            submit(105.0, 0, false),
            submit(113.0, 0, true),
        ];
        let s = SessionState::replay(&events).unwrap();
        assert_eq!(s.current, 1);
        assert_eq!(s.progress[0].attempts, 2);
        assert_eq!(s.progress[0].solved_on, Some(2));
        assert_eq!(s.progress[0].elapsed(999.0), 12.0);
        assert_eq!(s.progress[1].elapsed(999.0), 0.0);
    }

    #[test]
    fn replay_rejects_malformed_logs() {
        assert_eq!(SessionState::replay(&[]), Err(ReplayError::MissingCreate));
        assert_eq!(
            SessionState::replay(&[created(), created()]),
            Err(ReplayError::DuplicateCreate)
        );
        assert_eq!(
            SessionState::replay(&[created(), Event::Viewed { at: 1.0, index: 5 }]),
            Err(ReplayError::BadIndex(5))
        );
    }

    #[test]
    fn events_round_trip_as_json() {
        let e = submit(1.5, 0, true);
        let line = serde_json::to_string(&e).unwrap();
        assert!(line.contains("\"event\":\"submitted\""));
        assert_eq!(serde_json::from_str::<Event>(&line).unwrap(), e);
    }
}
