use super::SolveError;
use crate::model::{BracketConstraints, BracketKind};

/// Splits `text` into the given words, each used once, in some order.
pub fn segment_words(text: &str, words: &[&str]) -> Option<Vec<usize>> {
    fn go(rest: &str, words: &[&str], used: &mut Vec<bool>, order: &mut Vec<usize>) -> bool {
        if rest.is_empty() {
            return used.iter().all(|&u| u);
        }
        for (i, w) in words.iter().enumerate() {
            if !used[i] && !w.is_empty() && rest.starts_with(w) {
                used[i] = true;
                order.push(i);
                if go(&rest[w.len()..], words, used, order) {
                    return true;
                }
                order.pop();
                used[i] = false;
            }
        }
        false
    }
    let mut used = vec![false; words.len()];
    let mut order = Vec::new();
    go(text, words, &mut used, &mut order).then_some(order)
}

/// Wraps every placement word in its own bracket, then nests the whole text
/// in enough outer brackets to reach the required depth.
pub(super) fn solve(c: &BracketConstraints) -> Result<String, SolveError> {
    if c.depth == 0 {
        return if c.placements.is_empty() {
            Ok(c.base_text.clone())
        } else {
            Err(SolveError::ProvenUnsolvable)
        };
    }
    let words: Vec<&str> = c.placements.iter().map(|p| p.word.as_str()).collect();
    let order = segment_words(&c.base_text, &words).ok_or_else(|| {
        SolveError::NoConstruction("base text is not a concatenation of the placement words".into())
    })?;
    let mut inner = String::new();
    for i in order {
        let kind = c.placements[i].bracket;
        inner.push(kind.open());
        inner.push_str(&c.placements[i].word);
        inner.push(kind.close());
    }
    let outer = c.depth - 1;
    let shell = BracketKind::Curly;
    let mut out = String::new();
    out.extend(std::iter::repeat_n(shell.open(), outer));
    out.push_str(&inner);
    out.extend(std::iter::repeat_n(shell.close(), outer));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graders::check_bracket;
    use crate::model::Placement;

    #[test]
    fn segmentation() {
        assert_eq!(
            segment_words("fabuloustextgames", &["games", "text", "fabulous"]),
            Some(vec![2, 1, 0])
        );
        assert_eq!(segment_words("abc", &["ab", "bc"]), None);
    }

    #[test]
    fn reaches_depth() {
        for depth in 1..=4 {
            let c = BracketConstraints {
                base_text: "fabuloustextgames".into(),
                placements: vec![
                    Placement {
                        word: "games".into(),
                        bracket: BracketKind::Round,
                    },
                    Placement {
                        word: "text".into(),
                        bracket: BracketKind::Angle,
                    },
                    Placement {
                        word: "fabulous".into(),
                        bracket: BracketKind::Block,
                    },
                ],
                depth,
            };
            let answer = solve(&c).unwrap();
            assert!(check_bracket(&c, &answer).solved, "{answer}");
        }
    }
}
