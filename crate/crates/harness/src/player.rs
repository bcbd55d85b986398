use std::time::Duration;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use textpuzzle_core::prompting::{PromptBundle, Role};
use textpuzzle_core::solvers::{solve, DEFAULT_BUDGET};
use textpuzzle_core::{grade, PuzzleInstance};
use thiserror::Error;

use crate::remote::RemoteError;

#[derive(Debug, Error)]
pub enum PlayerError {
    #[error(transparent)]
    Remote(#[from] RemoteError),
    #[error("solver failed on {instance}: {reason}")]
    Solver { instance: String, reason: String },
}

impl PlayerError {
    pub fn is_retryable(&self) -> bool {
        match self {
            PlayerError::Remote(e) => e.is_retryable(),
            PlayerError::Solver { .. } => false,
        }
    }
}

/// Anything that can answer a prompt bundle. The instance is passed
/// alongside for scripted players; remote players only read the bundle.
pub trait Player: Send + Sync {
    fn name(&self) -> String;
    fn respond(&self, instance: &PuzzleInstance, bundle: &PromptBundle) -> Result<String, PlayerError>;
}

/// 1-based turn a bundle asks for.
pub fn turn_of(bundle: &PromptBundle) -> usize {
    bundle.messages.iter().filter(|m| m.role == Role::Assistant).count() + 1
}

fn id_hash(id: &str) -> u64 {
    let d = Sha256::digest(id.as_bytes());
    u64::from_be_bytes(d[..8].try_into().expect("8 bytes"))
}

fn oracle_answer(instance: &PuzzleInstance, budget: Duration) -> Result<String, PlayerError> {
    solve(instance, budget)
        .map(|r| r.answer)
        .map_err(|e| PlayerError::Solver {
            instance: instance.id.clone(),
            reason: e.to_string(),
        })
}

/// Answers every turn with the reference solver's answer.
#[derive(Debug, Clone)]
pub struct OraclePlayer {
    pub budget: Duration,
}

impl Default for OraclePlayer {
    fn default() -> Self {
        OraclePlayer {
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Player for OraclePlayer {
    fn name(&self) -> String {
        "oracle".into()
    }

    fn respond(&self, instance: &PuzzleInstance, _bundle: &PromptBundle) -> Result<String, PlayerError> {
        oracle_answer(instance, self.budget)
    }
}

/// Gives a wrong first answer on a deterministic share of instances and the
/// oracle answer once it has seen feedback.
#[derive(Debug, Clone)]
pub struct FlawedPlayer {
    pub budget: Duration,
    /// Share of instances whose first answer is corrupted, in `[0, 1]`.
    pub flaw_rate: f64,
}

impl Default for FlawedPlayer {
    fn default() -> Self {
        FlawedPlayer {
            budget: DEFAULT_BUDGET,
            flaw_rate: 1.0,
        }
    }
}

impl FlawedPlayer {
    pub fn with_rate(flaw_rate: f64) -> Self {
        FlawedPlayer {
            flaw_rate,
            ..FlawedPlayer::default()
        }
    }

    /// Whether the first answer for this instance is corrupted.
    pub fn is_flawed(&self, instance: &PuzzleInstance) -> bool {
        (id_hash(&instance.id) as f64 / u64::MAX as f64) < self.flaw_rate
    }
}

/// A variant of `answer` the grader rejects; the empty string is the fallback.
pub fn corrupt(instance: &PuzzleInstance, answer: &str) -> String {
    let mut candidates = Vec::new();
    let mut chars: Vec<char> = answer.chars().collect();
    if let Some(pos) = chars.iter().rposition(|c| !c.is_whitespace()) {
        let c = chars[pos];
        chars[pos] = if c == '#' { '.' } else { '#' };
        candidates.push(chars.iter().collect::<String>());
    }
    candidates.push(format!("{answer}{}", answer.chars().next().unwrap_or('x')));
    candidates
        .into_iter()
        .find(|c| !grade(instance, c).solved)
        .unwrap_or_default()
}

impl Player for FlawedPlayer {
    fn name(&self) -> String {
        format!("flawed({})", self.flaw_rate)
    }

    fn respond(&self, instance: &PuzzleInstance, bundle: &PromptBundle) -> Result<String, PlayerError> {
        let answer = oracle_answer(instance, self.budget)?;
        if turn_of(bundle) == 1 && self.is_flawed(instance) {
            Ok(corrupt(instance, &answer))
        } else {
            Ok(answer)
        }
    }
}

/// Deterministic noise: short strings of letters, digits and punctuation.
#[derive(Debug, Clone, Default)]
pub struct RandomPlayer {
    pub seed: u64,
}

impl Player for RandomPlayer {
    fn name(&self) -> String {
        format!("random({})", self.seed)
    }

    fn respond(&self, instance: &PuzzleInstance, bundle: &PromptBundle) -> Result<String, PlayerError> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ id_hash(&instance.id) ^ turn_of(bundle) as u64);
        const ALPHABET: &[u8] = b"abcdefghijklmnopqrstuvwxyz0123456789#.-_ ";
        let len = rng.random_range(1..=24);
        Ok((0..len)
            .map(|_| ALPHABET[rng.random_range(0..ALPHABET.len())] as char)
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use textpuzzle_core::generators::generate;
    use textpuzzle_core::prompting::build_bundle;
    use textpuzzle_core::{Difficulty, GameKind};

    #[test]
    fn corrupted_answers_are_rejected() {
        for g in GameKind::ALL {
            for d in Difficulty::ALL {
                let inst = generate(g, d, 11).unwrap();
                let ans = OraclePlayer::default().respond(&inst, &PromptBundle::default()).unwrap();
                assert!(grade(&inst, &ans).solved);
                assert!(!grade(&inst, &corrupt(&inst, &ans)).solved, "{g} {d}");
            }
        }
    }

    #[test]
    fn random_player_is_deterministic() {
        let inst = generate(GameKind::TextSudoku, Difficulty::Easy, 0).unwrap();
        let bundle = build_bundle(&inst, None, &[]).unwrap();
        let p = RandomPlayer { seed: 4 };
        assert_eq!(p.respond(&inst, &bundle).unwrap(), p.respond(&inst, &bundle).unwrap());
    }

    #[test]
    fn flaw_rate_extremes() {
        let inst = generate(GameKind::Islands, Difficulty::Easy, 0).unwrap();
        assert!(FlawedPlayer::with_rate(1.0).is_flawed(&inst));
        assert!(!FlawedPlayer::with_rate(0.0).is_flawed(&inst));
    }
}
