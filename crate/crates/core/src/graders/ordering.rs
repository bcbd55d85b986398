use super::{answer_lines, ordinal};
use crate::model::{OrderingConstraints, Verdict};

/// Words by total score, highest first; ties in ascending lexicographic order.
pub fn expected_order(c: &OrderingConstraints) -> Vec<String> {
    let mut scored: Vec<(i64, &String)> = c.words.iter().map(|w| (c.score(w), w)).collect();
    scored.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1)));
    scored.into_iter().map(|(_, w)| w.clone()).collect()
}

pub fn check_ordering(c: &OrderingConstraints, answer: &str) -> Verdict {
    let expected = expected_order(c);
    let lines = answer_lines(answer);
    if lines.len() < expected.len() {
        return Verdict::from_feedback(vec![format!(
            "Your answer is too short. There should be {} items.",
            expected.len()
        )]);
    }
    let mismatch = lines
        .iter()
        .enumerate()
        .find(|(i, line)| expected.get(*i).is_none_or(|w| w != *line));
    match mismatch {
        Some((i, line)) => Verdict::from_feedback(vec![format!(
            "{line} is not supposed to be the {} word in the order.",
            ordinal(i + 1)
        )]),
        None => Verdict::solved(),
    }
}
