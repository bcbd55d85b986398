//! Human-play metrics per game and difficulty: first-turn solve rate (%),
//! average attempts and average time to solve (s).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use textpuzzle_core::{Difficulty, GameKind};

use crate::session::SessionState;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsRow {
    pub game: GameKind,
    pub difficulty: Difficulty,
    /// Puzzles with at least one submission.
    pub attempted: usize,
    pub solved: usize,
    pub first_turn_rate: f64,
    /// Over solved puzzles; `None` until something is solved.
    pub avg_attempts: Option<f64>,
    pub avg_time_s: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StatsTable {
    pub rows: Vec<StatsRow>,
}

#[derive(Default)]
struct Acc {
    attempted: usize,
    first: usize,
    solved: usize,
    attempts: u64,
    time: f64,
}

impl StatsTable {
    pub fn from_sessions<'a>(sessions: impl IntoIterator<Item = &'a SessionState>) -> StatsTable {
        let mut cells: BTreeMap<(GameKind, Difficulty), Acc> = BTreeMap::new();
        for s in sessions {
            for (inst, p) in s.puzzles.iter().zip(&s.progress) {
                if p.attempts == 0 {
                    continue;
                }
                let acc = cells.entry((inst.game, inst.difficulty)).or_default();
                acc.attempted += 1;
                if let Some(k) = p.solved_on {
                    acc.solved += 1;
                    acc.first += (k == 1) as usize;
                    acc.attempts += k as u64;
                    acc.time += p.elapsed(0.0);
                }
            }
        }
        let rows = cells
            .into_iter()
            .map(|((game, difficulty), a)| {
                let mean = |x: f64| (a.solved > 0).then(|| x / a.solved as f64);
                StatsRow {
                    game,
                    difficulty,
                    attempted: a.attempted,
                    solved: a.solved,
                    first_turn_rate: 100.0 * a.first as f64 / a.attempted as f64,
                    avg_attempts: mean(a.attempts as f64),
                    avg_time_s: mean(a.time),
                }
            })
            .collect();
        StatsTable { rows }
    }

    pub fn row(&self, game: GameKind, difficulty: Difficulty) -> Option<&StatsRow> {
        self.rows.iter().find(|r| r.game == game && r.difficulty == difficulty)
    }
}
