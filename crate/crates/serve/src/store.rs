//! Session storage. Each session owns an append-only JSONL event log; state
//! is always the replay of that log. Mutations on one session are serialized
//! by its mutex, and stats take a snapshot that excludes in-flight writes.
//! Lock order is snapshot, then session.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use textpuzzle_core::generators::generate;
use textpuzzle_core::graders::grade;
use textpuzzle_core::{Difficulty, GameKind, PuzzleInstance};

use crate::clock::Clock;
use crate::session::{Event, ReplayError, SessionState};
use crate::stats::StatsTable;

pub const MIN_PUZZLES: usize = 2;
pub const MAX_PUZZLES: usize = 3;

#[derive(Debug, Clone)]
pub enum PuzzleSource {
    /// Fresh instances from the generators.
    Generate,
    /// Instances drawn from a fixed suite.
    Suite(Vec<PuzzleInstance>),
}

#[derive(Debug, Clone, Default)]
pub struct CreateRequest {
    pub game: Option<GameKind>,
    pub difficulty: Option<Difficulty>,
    pub seed: Option<u64>,
    pub count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubmitOutcome {
    pub index: usize,
    pub solved: bool,
    pub feedback: Vec<String>,
    pub attempts: u32,
    pub advance: bool,
    pub complete: bool,
    /// Time to solve, set on the solving submission.
    pub elapsed_s: Option<f64>,
    /// True when an earlier submission with the same idempotency key was returned.
    pub replayed: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("unknown session {0}")]
    UnknownSession(String),
    #[error("session is complete")]
    SessionComplete,
    #[error("puzzle {index} is already solved")]
    PuzzleSolved { index: usize },
    #[error("puzzle {index} is not current (current is {current})")]
    PuzzleNotCurrent { index: usize, current: usize },
    #[error("idempotency key was already used with a different answer")]
    IdempotencyConflict,
    #[error("puzzle count must be between {MIN_PUZZLES} and {MAX_PUZZLES}, got {0}")]
    InvalidCount(usize),
    #[error("suite has {available} matching puzzles, need {wanted}")]
    NotEnoughPuzzles { available: usize, wanted: usize },
    #[error("generation failed: {0}")]
    Generate(String),
    #[error("storage: {0}")]
    Io(#[from] io::Error),
    #[error("corrupt log {path}: {reason}")]
    Corrupt { path: PathBuf, reason: String },
}

struct Session {
    state: SessionState,
    log: Option<File>,
}

impl Session {
    fn record(&mut self, event: Event) -> Result<(), StoreError> {
        if let Some(f) = &mut self.log {
            let mut line = serde_json::to_string(&event).expect("event serializes");
            line.push('\n');
            f.write_all(line.as_bytes())?;
            f.flush()?;
        }
        self.state
            .apply(&event)
            .map_err(|e: ReplayError| StoreError::Corrupt { path: PathBuf::new(), reason: e.to_string() })
    }
}

pub struct Store {
    clock: Arc<dyn Clock>,
    source: PuzzleSource,
    log_dir: Option<PathBuf>,
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    snapshot: RwLock<()>,
}

impl Store {
    /// A store without persistence.
    pub fn in_memory(source: PuzzleSource, clock: Arc<dyn Clock>) -> Store {
        Store {
            clock,
            source,
            log_dir: None,
            sessions: RwLock::new(HashMap::new()),
            snapshot: RwLock::new(()),
        }
    }

    /// Opens (or creates) a log directory and replays every session in it.
    pub fn open(dir: &Path, source: PuzzleSource, clock: Arc<dyn Clock>) -> Result<Store, StoreError> {
        fs::create_dir_all(dir)?;
        let mut sessions = HashMap::new();
        for entry in fs::read_dir(dir)? {
            let path = entry?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("jsonl") {
                continue;
            }
            let corrupt = |reason: String| StoreError::Corrupt { path: path.clone(), reason };
            let text = fs::read_to_string(&path)?;
            let events: Vec<Event> = text
                .lines()
                .filter(|l| !l.trim().is_empty())
                .map(serde_json::from_str)
                .collect::<Result<_, _>>()
                .map_err(|e| corrupt(e.to_string()))?;
            let state = SessionState::replay(&events).map_err(|e| corrupt(e.to_string()))?;
            let log = OpenOptions::new().append(true).open(&path)?;
            sessions.insert(state.id.clone(), Arc::new(Mutex::new(Session { state, log: Some(log) })));
        }
        Ok(Store {
            clock,
            source,
            log_dir: Some(dir.to_path_buf()),
            sessions: RwLock::new(sessions),
            snapshot: RwLock::new(()),
        })
    }

    pub fn len(&self) -> usize {
        self.sessions.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn pick(&self, req: &CreateRequest) -> Result<Vec<PuzzleInstance>, StoreError> {
        let seed = req.seed.unwrap_or_else(rand::random);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let count = match req.count {
            Some(n) if !(MIN_PUZZLES..=MAX_PUZZLES).contains(&n) => return Err(StoreError::InvalidCount(n)),
            Some(n) => n,
            None => rng.random_range(MIN_PUZZLES..=MAX_PUZZLES),
        };
        match &self.source {
            PuzzleSource::Generate => {
                let mut out: Vec<PuzzleInstance> = Vec::with_capacity(count);
                while out.len() < count {
                    let game = req.game.unwrap_or_else(|| *GameKind::ALL.choose(&mut rng).unwrap());
                    let difficulty = req.difficulty.unwrap_or_else(|| *Difficulty::ALL.choose(&mut rng).unwrap());
                    let inst = generate(game, difficulty, rng.random()).map_err(|e| StoreError::Generate(e.to_string()))?;
                    if out.iter().all(|o| o.id != inst.id) {
                        out.push(inst);
                    }
                }
                Ok(out)
            }
            PuzzleSource::Suite(suite) => {
                let mut matching: Vec<&PuzzleInstance> = suite
                    .iter()
                    .filter(|i| req.game.is_none_or(|g| i.game == g))
                    .filter(|i| req.difficulty.is_none_or(|d| i.difficulty == d))
                    .collect();
                let count = if req.count.is_none() { count.min(matching.len().max(MIN_PUZZLES)) } else { count };
                if matching.len() < count {
                    return Err(StoreError::NotEnoughPuzzles { available: matching.len(), wanted: count });
                }
                matching.shuffle(&mut rng);
                Ok(matching.into_iter().take(count).cloned().collect())
            }
        }
    }

    /// Creates a session and records the first puzzle as viewed, since its
    /// prompt is part of the response.
    pub fn create(&self, req: &CreateRequest) -> Result<SessionState, StoreError> {
        let puzzles = self.pick(req)?;
        let id = uuid::Uuid::new_v4().simple().to_string();
        let now = self.clock.now();
        let created = Event::Created { at: now, session_id: id.clone(), puzzles };
        let log = match &self.log_dir {
            Some(dir) => Some(OpenOptions::new().create_new(true).append(true).open(dir.join(format!("{id}.jsonl")))?),
            None => None,
        };
        let state = SessionState::replay(std::slice::from_ref(&created)).expect("fresh session replays");
        let mut session = Session { state, log };
        if let Some(f) = &mut session.log {
            writeln!(f, "{}", serde_json::to_string(&created).expect("event serializes"))?;
        }
        session.record(Event::Viewed { at: now, index: 0 })?;
        let snapshot = session.state.clone();
        let _guard = self.snapshot.read().unwrap();
        self.sessions.write().unwrap().insert(id, Arc::new(Mutex::new(session)));
        Ok(snapshot)
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, StoreError> {
        self.sessions
            .read()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| StoreError::UnknownSession(id.to_string()))
    }

    pub fn session(&self, id: &str) -> Result<SessionState, StoreError> {
        Ok(self.get(id)?.lock().unwrap().state.clone())
    }

    /// Current state after marking the current puzzle viewed.
    pub fn view(&self, id: &str) -> Result<SessionState, StoreError> {
        let _guard = self.snapshot.read().unwrap();
        let handle = self.get(id)?;
        let mut s = handle.lock().unwrap();
        if !s.state.is_complete() && s.state.progress[s.state.current].first_view.is_none() {
            let index = s.state.current;
            s.record(Event::Viewed { at: self.clock.now(), index })?;
        }
        Ok(s.state.clone())
    }

    pub fn now(&self) -> f64 {
        self.clock.now()
    }

    /// Grades `answer` against the current puzzle. `index`, when given, must
    /// name the current puzzle. A repeated `key` returns the first outcome
    /// without counting another attempt.
    pub fn submit(
        &self,
        id: &str,
        answer: &str,
        index: Option<usize>,
        key: Option<&str>,
    ) -> Result<SubmitOutcome, StoreError> {
        let _guard = self.snapshot.read().unwrap();
        let handle = self.get(id)?;
        let mut s = handle.lock().unwrap();
        if let Some(prior) = key.and_then(|k| s.state.keys.get(k)) {
            if prior.answer != answer || index.is_some_and(|i| i != prior.index) {
                return Err(StoreError::IdempotencyConflict);
            }
            let p = &s.state.progress[prior.index];
            return Ok(SubmitOutcome {
                index: prior.index,
                solved: prior.solved,
                feedback: prior.feedback.clone(),
                attempts: prior.attempts,
                advance: prior.solved,
                complete: prior.solved && prior.index + 1 == s.state.puzzles.len(),
                elapsed_s: prior.solved.then(|| p.elapsed(0.0)),
                replayed: true,
            });
        }
        if s.state.is_complete() {
            return Err(StoreError::SessionComplete);
        }
        let current = s.state.current;
        match index {
            Some(i) if i < current => return Err(StoreError::PuzzleSolved { index: i }),
            Some(i) if i > current => return Err(StoreError::PuzzleNotCurrent { index: i, current }),
            _ => {}
        }
        let verdict = grade(&s.state.puzzles[current], answer);
        s.record(Event::Submitted {
            at: self.clock.now(),
            index: current,
            answer: answer.to_string(),
            idempotency_key: key.map(str::to_string),
            solved: verdict.solved,
            feedback: verdict.feedback.clone(),
        })?;
        let p = &s.state.progress[current];
        Ok(SubmitOutcome {
            index: current,
            solved: verdict.solved,
            feedback: verdict.feedback,
            attempts: p.attempts,
            advance: verdict.solved,
            complete: s.state.is_complete(),
            elapsed_s: verdict.solved.then(|| p.elapsed(0.0)),
            replayed: false,
        })
    }

    /// Stats over every session, from a consistent snapshot.
    pub fn global_stats(&self) -> StatsTable {
        let _guard = self.snapshot.write().unwrap();
        let handles: Vec<Arc<Mutex<Session>>> = self.sessions.read().unwrap().values().cloned().collect();
        let states: Vec<SessionState> = handles.iter().map(|h| h.lock().unwrap().state.clone()).collect();
        StatsTable::from_sessions(&states)
    }

    pub fn session_stats(&self, id: &str) -> Result<StatsTable, StoreError> {
        let state = self.session(id)?;
        Ok(StatsTable::from_sessions([&state]))
    }
}
