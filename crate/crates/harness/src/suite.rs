use std::collections::HashMap;
use std::time::Duration;

use rayon::prelude::*;
use textpuzzle_core::prompting::ShotExample;
use textpuzzle_core::solvers::solve;
use textpuzzle_core::{Difficulty, EpisodeRecord, GameKind, PuzzleInstance};
use thiserror::Error;

use crate::episode::{run_episode, EpisodeError, DEFAULT_MAX_TURNS};
use crate::metrics::MetricsTable;
use crate::player::Player;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shot {
    Zero,
    One,
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub shot: Shot,
    pub max_turns: usize,
    pub parallelism: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            shot: Shot::Zero,
            max_turns: DEFAULT_MAX_TURNS,
            parallelism: 4,
        }
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("the suite has no instances")]
    Empty,
    #[error("no one-shot example for {0}/{1}")]
    MissingExample(GameKind, Difficulty),
    #[error("could not solve the one-shot example {0}: {1}")]
    ExampleUnsolved(String, String),
    #[error("parallelism must be at least 1")]
    NoWorkers,
    #[error(transparent)]
    Episode(#[from] EpisodeError),
    #[error("thread pool: {0}")]
    Pool(String),
}

/// One solved training example per (game, difficulty).
#[derive(Debug, Clone, Default)]
pub struct ShotBank {
    examples: HashMap<(GameKind, Difficulty), ShotExample>,
}

impl ShotBank {
    /// Takes the first train instance of each cell and solves it.
    pub fn from_train(train: &[PuzzleInstance], budget: Duration) -> Result<Self, SuiteError> {
        let mut bank = ShotBank::default();
        for inst in train {
            let key = (inst.game, inst.difficulty);
            if bank.examples.contains_key(&key) {
                continue;
            }
            let answer = solve(inst, budget)
                .map_err(|e| SuiteError::ExampleUnsolved(inst.id.clone(), e.to_string()))?
                .answer;
            bank.examples.insert(
                key,
                ShotExample {
                    instance: inst.clone(),
                    answer,
                },
            );
        }
        Ok(bank)
    }

    pub fn get(&self, game: GameKind, difficulty: Difficulty) -> Option<&ShotExample> {
        self.examples.get(&(game, difficulty))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub metrics: MetricsTable,
    /// In suite order.
    pub episodes: Vec<EpisodeRecord>,
}

/// Runs every instance as an independent episode on up to `parallelism`
/// workers. `on_episode` sees each record as soon as it finishes.
pub fn run_suite(
    player: &dyn Player,
    instances: &[PuzzleInstance],
    bank: &ShotBank,
    config: &SuiteConfig,
    on_episode: &(dyn Fn(&EpisodeRecord) + Sync),
) -> Result<SuiteResult, SuiteError> {
    if instances.is_empty() {
        return Err(SuiteError::Empty);
    }
    if config.parallelism == 0 {
        return Err(SuiteError::NoWorkers);
    }
    let examples: Vec<Option<&ShotExample>> = instances
        .iter()
        .map(|inst| match config.shot {
            Shot::Zero => Ok(None),
            Shot::One => bank
                .get(inst.game, inst.difficulty)
                .map(Some)
                .ok_or(SuiteError::MissingExample(inst.game, inst.difficulty)),
        })
        .collect::<Result<_, _>>()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| SuiteError::Pool(e.to_string()))?;
    let episodes: Vec<EpisodeRecord> = pool.install(|| {
        instances
            .par_iter()
            .zip(examples.par_iter())
            .map(|(inst, ex)| {
                let record = run_episode(player, inst, *ex, config.max_turns)?;
                on_episode(&record);
                Ok(record)
            })
            .collect::<Result<_, EpisodeError>>()
    })?;
    Ok(SuiteResult {
        metrics: MetricsTable::from_episodes(&episodes, config.max_turns),
        episodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::player::OraclePlayer;
    use textpuzzle_core::generators::generate;

    #[test]
    fn empty_suite_rejected() {
        let err = run_suite(&OraclePlayer::default(), &[], &ShotBank::default(), &SuiteConfig::default(), &|_| {});
        assert!(matches!(err, Err(SuiteError::Empty)));
    }

    #[test]
    fn one_shot_needs_examples() {
        let inst = generate(GameKind::AnagramScribble, Difficulty::Easy, 0).unwrap();
        let config = SuiteConfig {
            shot: Shot::One,
            ..SuiteConfig::default()
        };
        let err = run_suite(&OraclePlayer::default(), std::slice::from_ref(&inst), &ShotBank::default(), &config, &|_| {});
        assert!(matches!(err, Err(SuiteError::MissingExample(..))));
        let bank = ShotBank::from_train(&[generate(GameKind::AnagramScribble, Difficulty::Easy, 9).unwrap()], Duration::from_secs(5)).unwrap();
        let ok = run_suite(&OraclePlayer::default(), &[inst], &bank, &config, &|_| {}).unwrap();
        assert_eq!(ok.metrics.cells[0].rates, vec![1.0; 3]);
    }
}
