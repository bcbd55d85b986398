use super::answer_lines;
use crate::model::{CrosswordConstraints, Verdict};

fn size_mismatch(n: usize, got: usize) -> Verdict {
    Verdict::from_feedback(vec![format!(
        "Mismatch answer length found!! Expected size of {n}, got {got}."
    )])
}

/// Rows then columns must each consume a distinct word from the list.
pub fn check_crossword(c: &CrosswordConstraints, answer: &str) -> Verdict {
    let lines = answer_lines(answer);
    if lines.len() != c.n {
        return size_mismatch(c.n, lines.len());
    }
    let grid: Vec<Vec<char>> = lines.iter().map(|l| l.chars().collect()).collect();
    if let Some(row) = grid.iter().find(|r| r.len() != c.n) {
        return size_mismatch(c.n, row.len());
    }

    let mut remaining: Vec<String> = c.words.iter().map(|w| w.to_lowercase()).collect();
    let mut take = |word: &str| match remaining.iter().position(|w| w == word) {
        Some(i) => {
            remaining.swap_remove(i);
            true
        }
        None => false,
    };
    let mut feedback = Vec::new();
    for row in &grid {
        let word: String = row.iter().collect::<String>().to_lowercase();
        if !take(&word) {
            feedback.push(format!(
                "Mismatch answer word found!! Horizontal word {word} is not in the word set."
            ));
        }
    }
    for col in 0..c.n {
        let word: String = grid.iter().map(|r| r[col]).collect::<String>().to_lowercase();
        if !take(&word) {
            feedback.push(format!(
                "Mismatch answer word found!! Vertical word {word} is not in the word set."
            ));
        }
    }
    Verdict::from_feedback(feedback)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn app() -> CrosswordConstraints {
        CrosswordConstraints {
            n: 3,
            words: ["app", "all", "and", "lee", "let", "pat", "pee", "pet"]
                .map(String::from)
                .to_vec(),
        }
    }

    #[test]
    fn golden_grid() {
        assert!(check_crossword(&app(), "app\nlee\nlet").solved);
    }

    #[test]
    fn wrong_shape() {
        let v = check_crossword(&app(), "app\nlee");
        assert_eq!(v.feedback, vec!["Mismatch answer length found!! Expected size of 3, got 2."]);
        let v = check_crossword(&app(), "app\nle\nlet");
        assert_eq!(v.feedback, vec!["Mismatch answer length found!! Expected size of 3, got 2."]);
    }

    #[test]
    fn reused_word() {
        let v = check_crossword(&app(), "app\nlee\nlee");
        assert_eq!(
            v.feedback,
            vec![
                "Mismatch answer word found!! Horizontal word lee is not in the word set.",
                "Mismatch answer word found!! Vertical word pee is not in the word set.",
            ]
        );
    }
}
