use std::time::Instant;

use textpuzzle_core::prompting::{build_bundle, Interaction, PromptError, ShotExample};
use textpuzzle_core::{grade, EpisodeRecord, PuzzleInstance, TurnRecord};
use thiserror::Error;

use crate::player::Player;

pub const DEFAULT_MAX_TURNS: usize = 3;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EpisodeError {
    #[error("max_turns must be at least 1")]
    NoTurns,
    #[error(transparent)]
    Prompt(#[from] PromptError),
}

/// Prompt, respond, grade; stop on the first solved verdict or after
/// `max_turns`. Feedback from each failed turn is appended to the next prompt.
/// A player error ends the episode with `error` set.
pub fn run_episode(
    player: &dyn Player,
    instance: &PuzzleInstance,
    example: Option<&ShotExample>,
    max_turns: usize,
) -> Result<EpisodeRecord, EpisodeError> {
    if max_turns == 0 {
        return Err(EpisodeError::NoTurns);
    }
    let mut record = EpisodeRecord {
        instance_id: instance.id.clone(),
        game: instance.game,
        difficulty: instance.difficulty,
        turns: Vec::new(),
        solved_at: None,
        error: None,
    };
    let mut interactions: Vec<Interaction> = Vec::new();
    for turn in 1..=max_turns {
        let bundle = build_bundle(instance, example, &interactions)?;
        let started = Instant::now();
        let response = match player.respond(instance, &bundle) {
            Ok(r) => r,
            Err(e) => {
                record.error = Some(e.to_string());
                break;
            }
        };
        let latency_s = started.elapsed().as_secs_f64();
        let verdict = grade(instance, &response);
        let solved = verdict.solved;
        interactions.push(Interaction {
            response: response.clone(),
            feedback: verdict.feedback.clone(),
        });
        record.turns.push(TurnRecord {
            response,
            verdict,
            latency_s,
        });
        if solved {
            record.solved_at = Some(turn);
            break;
        }
    }
    Ok(record)
}
