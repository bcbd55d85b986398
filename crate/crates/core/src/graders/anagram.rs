use crate::lexicon::Resources;
use crate::model::{AnagramConstraints, Verdict};

pub const WRONG_LENGTH: &str = "Your answer must be exactly {n} characters long";
pub const FOREIGN_CHARS: &str = "Your answer must only contain the characters provided";
pub const REPEATED_CHARS: &str = "Your answer must not contain repeated characters";
pub const NOT_A_WORD: &str = "Your answer is not a valid English word";

/// Case-insensitive check of length, character pool, and dictionary membership.
pub fn check_anagram(c: &AnagramConstraints, answer: &str) -> Verdict {
    if answer == "None" {
        return Verdict::from_feedback(vec![NOT_A_WORD.to_string()]);
    }
    let word = answer.to_lowercase();
    let letters: Vec<char> = word.chars().collect();
    let pool: Vec<char> = c.chars.iter().map(|ch| ch.to_ascii_lowercase()).collect();
    let mut feedback = Vec::new();

    if letters.len() != c.n {
        feedback.push(WRONG_LENGTH.replace("{n}", &c.n.to_string()));
    }
    if letters.iter().any(|ch| !pool.contains(ch)) {
        feedback.push(FOREIGN_CHARS.to_string());
    } else if !c.repeatable && !fits_multiset(&letters, &pool) {
        feedback.push(REPEATED_CHARS.to_string());
    }
    if !Resources::get().lexicon.is_word(&word) {
        feedback.push(NOT_A_WORD.to_string());
    }
    Verdict::from_feedback(feedback)
}

fn fits_multiset(letters: &[char], pool: &[char]) -> bool {
    let mut left = pool.to_vec();
    letters.iter().all(|ch| match left.iter().position(|p| p == ch) {
        Some(i) => {
            left.swap_remove(i);
            true
        }
        None => false,
    })
}
