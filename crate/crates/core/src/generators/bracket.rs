use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng as _;

use super::{envelope, DifficultyEnvelope, Rng};
use crate::lexicon::Resources;
use crate::model::{BracketConstraints, BracketKind, ConstraintSet, Difficulty, GameKind, Placement};

pub(super) fn build(d: Difficulty, rng: &mut Rng, res: &Resources) -> Option<ConstraintSet> {
    let DifficultyEnvelope::Bracket { words, depth, .. } = envelope(GameKind::BracketGame, d) else {
        unreachable!()
    };
    let mut picked: Vec<String> = Vec::with_capacity(words);
    while picked.len() < words {
        let len = rng.random_range(3..=8);
        let w = res.lexicon.words_of_length(len).choose(rng)?;
        if picked.iter().any(|p| p.contains(w.as_str()) || w.contains(p.as_str())) {
            continue;
        }
        picked.push(w.clone());
    }
    let base_text: String = picked.concat();
    let mut placements: Vec<Placement> = picked
        .into_iter()
        .map(|word| Placement {
            word,
            bracket: *BracketKind::ALL.choose(rng).expect("four kinds"),
        })
        .collect();
    placements.shuffle(rng);
    Some(ConstraintSet::Bracket(BracketConstraints {
        base_text,
        placements,
        depth,
    }))
}
