use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use textpuzzle_core::{Category, Difficulty, EpisodeRecord, GameKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRates {
    pub game: GameKind,
    pub difficulty: Difficulty,
    pub episodes: usize,
    /// Episodes aborted by a player error; they stay in the denominator.
    pub errors: usize,
    /// `rates[k]` is the share solved within the first `k + 1` turns.
    pub rates: Vec<f64>,
}

/// Cumulative solve rate per (game, difficulty, turn), sorted by game then difficulty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsTable {
    pub max_turns: usize,
    pub cells: Vec<CellRates>,
}

impl MetricsTable {
    pub fn from_episodes(episodes: &[EpisodeRecord], max_turns: usize) -> Self {
        let mut groups: BTreeMap<(GameKind, Difficulty), Vec<&EpisodeRecord>> = BTreeMap::new();
        for e in episodes {
            groups.entry((e.game, e.difficulty)).or_default().push(e);
        }
        let cells = groups
            .into_iter()
            .map(|((game, difficulty), eps)| {
                let n = eps.len();
                let rates = (1..=max_turns)
                    .map(|k| eps.iter().filter(|e| e.solved_by(k)).count() as f64 / n as f64)
                    .collect();
                CellRates {
                    game,
                    difficulty,
                    episodes: n,
                    errors: eps.iter().filter(|e| e.error.is_some()).count(),
                    rates,
                }
            })
            .collect();
        MetricsTable { max_turns, cells }
    }

    pub fn cell(&self, game: GameKind, difficulty: Difficulty) -> Option<&CellRates> {
        self.cells
            .iter()
            .find(|c| c.game == game && c.difficulty == difficulty)
    }

    /// 1-based turn.
    pub fn rate(&self, game: GameKind, difficulty: Difficulty, turn: usize) -> Option<f64> {
        self.cell(game, difficulty)?.rates.get(turn.checked_sub(1)?).copied()
    }

    /// Unweighted mean over the category's games present at this difficulty.
    pub fn category_average(&self, category: Category, difficulty: Difficulty) -> Option<Vec<f64>> {
        let members: Vec<&CellRates> = self
            .cells
            .iter()
            .filter(|c| c.game.category() == category && c.difficulty == difficulty)
            .collect();
        if members.is_empty() {
            return None;
        }
        Some(
            (0..self.max_turns)
                .map(|k| members.iter().map(|c| c.rates[k]).sum::<f64>() / members.len() as f64)
                .collect(),
        )
    }

    pub fn is_monotone(&self) -> bool {
        self.cells
            .iter()
            .all(|c| c.rates.windows(2).all(|w| w[1] >= w[0]))
    }
}
