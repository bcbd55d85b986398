use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng as _;

use super::{envelope, DifficultyEnvelope, Rng};
use crate::lexicon::Resources;
use crate::model::{AnagramConstraints, ConstraintSet, Difficulty, GameKind};

/// Plants a dictionary word, then pads its letters with distractors.
pub(super) fn build(d: Difficulty, rng: &mut Rng, res: &Resources) -> Option<ConstraintSet> {
    let DifficultyEnvelope::Anagram {
        word_len,
        max_chars,
        repeatable,
    } = envelope(GameKind::AnagramScribble, d)
    else {
        unreachable!()
    };
    let n = rng.random_range(word_len);
    let word = res.lexicon.words_of_length(n).choose(rng)?;
    let mut chars: Vec<char> = word.chars().collect();
    if repeatable {
        chars.sort();
        chars.dedup();
    }
    if chars.len() > max_chars {
        return None;
    }
    let room = max_chars - chars.len();
    let extra = rng.random_range(0..=room.min(3));
    let mut spare: Vec<char> = ('a'..='z').filter(|c| !chars.contains(c)).collect();
    spare.shuffle(rng);
    chars.extend(spare.into_iter().take(extra));
    chars.shuffle(rng);
    Some(ConstraintSet::Anagram(AnagramConstraints {
        n,
        chars,
        repeatable,
    }))
}
