//! Seeded construction of puzzle instances inside the difficulty envelope,
//! certified by the reference solvers, and dataset emission.

mod anagram;
mod bracket;
mod crossword;
mod dataset;
mod envelope;
mod islands;
mod ordering;
mod password;
mod sudoku;
mod string_search;

use std::time::Duration;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graders::grade_constraints;
use crate::lexicon::Resources;
use crate::model::{instance_id, ConstraintSet, Difficulty, GameKind, PuzzleInstance};
use crate::prompting::render_constraints;
use crate::solvers::{count_constraint_solutions, solve_constraints};

pub use crossword::plant_square;
pub use dataset::{
    derive_seed, generate_cell, generate_dataset, generate_game, Cell, CellSummary, DatasetConfig, DatasetSummary,
    Split,
};
pub use envelope::{envelope, DifficultyEnvelope, ORDERING_POINTS};

pub(crate) type Rng = ChaCha8Rng;

/// Rejection attempts per instance before giving up.
pub const MAX_ATTEMPTS: u64 = 1000;
/// Solver budget used to certify each generated instance.
pub const CERTIFY_BUDGET: Duration = Duration::from_secs(10);

#[derive(Debug, Error)]
pub enum GenerateError {
    #[error("no valid {game}/{difficulty} instance after {attempts} attempts (seed {seed})")]
    Exhausted {
        game: GameKind,
        difficulty: Difficulty,
        seed: u64,
        attempts: u64,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// splitmix64 finalizer; the building block of every seed derivation here.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn attempt_rng(game: GameKind, difficulty: Difficulty, seed: u64, attempt: u64) -> Rng {
    let tag = (game as u64) << 8 | difficulty as u64;
    Rng::seed_from_u64(mix64(mix64(seed ^ mix64(tag)) ^ attempt))
}

fn build(game: GameKind, difficulty: Difficulty, rng: &mut Rng, res: &Resources) -> Option<ConstraintSet> {
    match game {
        GameKind::AnagramScribble => anagram::build(difficulty, rng, res),
        GameKind::PasswordGame => password::build(difficulty, rng, res),
        GameKind::BracketGame => bracket::build(difficulty, rng, res),
        GameKind::StringSearch => string_search::build(difficulty, rng, res),
        GameKind::CrosswordArranger => crossword::build(difficulty, rng, res),
        GameKind::TextSudoku => sudoku::build(difficulty, rng),
        GameKind::Islands => islands::build(difficulty, rng),
        GameKind::OrderingText => ordering::build(difficulty, rng, res),
    }
}

/// Envelope, solvability, non-trivial empty answer, and String Search Hard uniqueness.
fn certified(game: GameKind, difficulty: Difficulty, c: &ConstraintSet) -> bool {
    if envelope(game, difficulty).check(c).is_err() {
        return false;
    }
    if grade_constraints(c, "").solved {
        return false;
    }
    let Ok(result) = solve_constraints(c, CERTIFY_BUDGET) else {
        return false;
    };
    if !grade_constraints(c, &result.answer).solved {
        return false;
    }
    if game == GameKind::StringSearch && difficulty == Difficulty::Hard {
        return count_constraint_solutions(c, 2, CERTIFY_BUDGET) == Ok(1);
    }
    true
}

/// Deterministic in `(game, difficulty, seed)`.
pub fn generate(game: GameKind, difficulty: Difficulty, seed: u64) -> Result<PuzzleInstance, GenerateError> {
    let res = Resources::get();
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = attempt_rng(game, difficulty, seed, attempt);
        let Some(constraints) = build(game, difficulty, &mut rng, res) else {
            continue;
        };
        if certified(game, difficulty, &constraints) {
            return Ok(PuzzleInstance {
                id: instance_id(game, difficulty, seed),
                game,
                difficulty,
                seed,
                prompt: render_constraints(&constraints),
                constraints,
            });
        }
    }
    Err(GenerateError::Exhausted {
        game,
        difficulty,
        seed,
        attempts: MAX_ATTEMPTS,
    })
}
