use crate::model::{BracketConstraints, BracketKind, Verdict};

pub const UNBALANCED: &str = "There is a closing bracket without an open bracket";

#[derive(Debug, Clone, Copy)]
struct Pair {
    kind: BracketKind,
    open: usize,
    close: usize,
}

/// Matches brackets across all four kinds; `None` unless the sequence is well formed.
fn pair_brackets(chars: &[char]) -> Option<(Vec<Pair>, usize)> {
    let mut stack: Vec<(BracketKind, usize)> = Vec::new();
    let mut pairs = Vec::new();
    let mut depth = 0;
    for (i, &c) in chars.iter().enumerate() {
        if let Some(kind) = BracketKind::from_open(c) {
            stack.push((kind, i));
            depth = depth.max(stack.len());
        } else if let Some(kind) = BracketKind::from_close(c) {
            let (open_kind, open) = stack.pop()?;
            if open_kind != kind {
                return None;
            }
            pairs.push(Pair {
                kind,
                open,
                close: i,
            });
        }
    }
    stack.is_empty().then_some((pairs, depth))
}

/// Maximum nesting depth of a well-formed bracket string.
pub fn bracket_depth(s: &str) -> Option<usize> {
    let chars: Vec<char> = s.chars().collect();
    pair_brackets(&chars).map(|(_, d)| d)
}

fn occurrences(hay: &[char], word: &[char]) -> Vec<usize> {
    if word.is_empty() || word.len() > hay.len() {
        return Vec::new();
    }
    (0..=hay.len() - word.len())
        .filter(|&i| hay[i..i + word.len()] == *word)
        .collect()
}

pub fn check_bracket(c: &BracketConstraints, answer: &str) -> Verdict {
    let chars: Vec<char> = answer.chars().collect();
    let mut feedback = Vec::new();

    let stripped: String = chars.iter().filter(|&&ch| !BracketKind::is_bracket(ch)).collect();
    if stripped != c.base_text {
        feedback.push(format!(
            "You are not allowed to change the character sequence of base text {}",
            c.base_text
        ));
    }

    let Some((pairs, depth)) = pair_brackets(&chars) else {
        feedback.push(UNBALANCED.to_string());
        return Verdict::from_feedback(feedback);
    };
    if depth != c.depth {
        feedback.push(format!(
            "The depth of the bracket is {depth}. The expected depth is {}",
            c.depth
        ));
    }

    for p in &c.placements {
        let word: Vec<char> = p.word.chars().collect();
        let starts = occurrences(&chars, &word);
        if starts.is_empty() {
            feedback.push(format!("The text '{}' is not found in your answer.", p.word));
            continue;
        }
        let enclosed = starts.iter().any(|&s| {
            let e = s + word.len();
            pairs
                .iter()
                .any(|pair| pair.kind == p.bracket && pair.open < s && e <= pair.close)
        });
        if !enclosed {
            feedback.push(format!(
                "The text '{}' is not inside any {} bracket {} {}",
                p.word,
                p.bracket.name(),
                p.bracket.open(),
                p.bracket.close()
            ));
        }
    }
    Verdict::from_feedback(feedback)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Placement;

    fn fabulous(depth: usize) -> BracketConstraints {
        let place = |w: &str, b| Placement {
            word: w.into(),
            bracket: b,
        };
        BracketConstraints {
            base_text: "fabuloustextgames".into(),
            placements: vec![
                place("games", BracketKind::Round),
                place("text", BracketKind::Angle),
                place("fabulous", BracketKind::Block),
            ],
            depth,
        }
    }

    #[test]
    fn golden_answer() {
        assert!(check_bracket(&fabulous(2), "{[fabulous]<text>(games)}").solved);
    }

    #[test]
    fn changed_base_text() {
        let v = check_bracket(&fabulous(2), "{[fabulos]<text>(games)}");
        assert_eq!(
            v.feedback[0],
            "You are not allowed to change the character sequence of base text fabuloustextgames"
        );
        assert!(v
            .feedback
            .contains(&"The text 'fabulous' is not found in your answer.".to_string()));
    }

    #[test]
    fn depth_mismatch() {
        let v = check_bracket(&fabulous(3), "{[fabulous]<text>(games)}");
        assert_eq!(v.feedback, vec!["The depth of the bracket is 2. The expected depth is 3"]);
    }

    #[test]
    fn unbalanced_and_misplaced() {
        let v = check_bracket(&fabulous(2), "[fabulous]]<text>(games)");
        assert_eq!(v.feedback, vec![UNBALANCED]);
        let v = check_bracket(&fabulous(2), "{[fabulous]<text>[games]}");
        assert_eq!(v.feedback, vec!["The text 'games' is not inside any round bracket ( )"]);
        assert_eq!(bracket_depth("(]"), None);
        assert_eq!(bracket_depth("(("), None);
        assert_eq!(bracket_depth("a(b[c]{d})"), Some(2));
    }

    #[test]
    fn outer_pair_of_the_right_kind_counts() {
        let c = BracketConstraints {
            base_text: "ab".into(),
            placements: vec![Placement {
                word: "a".into(),
                bracket: BracketKind::Round,
            }],
            depth: 2,
        };
        assert!(check_bracket(&c, "([a]b)").solved);
    }
}
