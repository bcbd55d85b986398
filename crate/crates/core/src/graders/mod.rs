//! Answer verification. Every checker returns a [`Verdict`] whose feedback
//! lines are instantiations of the templates listed in [`templates`].

mod anagram;
mod bracket;
mod crossword;
mod islands;
mod ordering;
mod password;
mod string_search;
mod sudoku;
pub mod templates;

pub use anagram::check_anagram;
pub use bracket::{bracket_depth, check_bracket};
pub use crossword::check_crossword;
pub use islands::{check_islands, label_islands, IslandStats};
pub use ordering::{check_ordering, expected_order};
pub use password::{check_password, digit_runs, rule_holds};
pub use string_search::{check_string_search, complex_rule_holds};
pub use sudoku::check_sudoku;
pub use templates::{templates, FeedbackTemplate};

use crate::model::{ConstraintSet, PuzzleInstance, Verdict};

/// Grades free text against an instance. Never fails; malformed answers just
/// produce unsolved verdicts.
pub fn grade(instance: &PuzzleInstance, answer: &str) -> Verdict {
    grade_constraints(&instance.constraints, answer)
}

pub fn grade_constraints(constraints: &ConstraintSet, answer: &str) -> Verdict {
    let answer = normalize_answer(answer);
    match constraints {
        ConstraintSet::Anagram(c) => check_anagram(c, &answer),
        ConstraintSet::Password(c) => check_password(c, &answer),
        ConstraintSet::Bracket(c) => check_bracket(c, &answer),
        ConstraintSet::StringSearch(c) => check_string_search(c, &answer),
        ConstraintSet::Crossword(c) => check_crossword(c, &answer),
        ConstraintSet::Sudoku(c) => check_sudoku(c, &answer),
        ConstraintSet::Islands(c) => check_islands(c, &answer),
        ConstraintSet::Ordering(c) => check_ordering(c, &answer),
    }
}

/// Unifies line endings, trims outer whitespace, and strips one surrounding
/// code fence (with an optional language tag).
pub fn normalize_answer(raw: &str) -> String {
    let text = raw.replace("\r\n", "\n").replace('\r', "\n");
    strip_fence(text.trim()).trim().to_string()
}

fn strip_fence(s: &str) -> &str {
    if s.len() < 6 || !s.starts_with("```") || !s.ends_with("```") {
        return s;
    }
    let inner = &s[3..s.len() - 3];
    match inner.find('\n') {
        Some(i) if inner[..i].chars().all(|c| c.is_ascii_alphanumeric()) => &inner[i + 1..],
        _ => inner,
    }
}

/// Non-blank lines with surrounding whitespace removed; grid and list answers
/// are read this way.
pub(crate) fn answer_lines(answer: &str) -> Vec<&str> {
    answer
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect()
}

/// English ordinal: 1st, 2nd, 3rd, 4th, 11th, 21st, ...
pub fn ordinal(k: usize) -> String {
    let suffix = match (k % 10, k % 100) {
        (_, 11..=13) => "th",
        (1, _) => "st",
        (2, _) => "nd",
        (3, _) => "rd",
        _ => "th",
    };
    format!("{k}{suffix}")
}
