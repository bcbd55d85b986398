use std::ops::RangeInclusive;

use crate::model::{ConstraintSet, Difficulty, GameKind, SUDOKU_BLANK};

/// Parameter bounds of one (game, difficulty) cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DifficultyEnvelope {
    Anagram {
        word_len: RangeInclusive<usize>,
        max_chars: usize,
        repeatable: bool,
    },
    Password {
        rules: usize,
    },
    Bracket {
        rules: usize,
        words: usize,
        depth: usize,
    },
    StringSearch {
        max_text_len: usize,
        max_constraints: usize,
        complex_allowed: bool,
        unique: bool,
    },
    Crossword {
        board: usize,
        words: usize,
        noise_words: usize,
    },
    Sudoku {
        box_size: usize,
        blanks: usize,
    },
    Islands {
        islands: RangeInclusive<usize>,
        trees_allowed: bool,
        tree_islands_rule: bool,
    },
    Ordering {
        rules: RangeInclusive<usize>,
        words: RangeInclusive<usize>,
        word_len: RangeInclusive<usize>,
    },
}

pub const ORDERING_POINTS: RangeInclusive<i32> = -100..=100;

pub fn envelope(game: GameKind, difficulty: Difficulty) -> DifficultyEnvelope {
    use Difficulty::*;
    use DifficultyEnvelope as E;
    let pick = |e: usize, m: usize, h: usize| match difficulty {
        Easy => e,
        Medium => m,
        Hard => h,
    };
    match game {
        GameKind::AnagramScribble => E::Anagram {
            word_len: match difficulty {
                Easy => 3..=5,
                Medium => 6..=7,
                Hard => 8..=10,
            },
            max_chars: 10,
            repeatable: difficulty != Hard,
        },
        GameKind::PasswordGame => E::Password {
            rules: pick(2, 4, 6),
        },
        GameKind::BracketGame => E::Bracket {
            rules: pick(3, 5, 5),
            words: pick(3, 5, 5),
            depth: pick(2, 2, 3),
        },
        GameKind::StringSearch => E::StringSearch {
            max_text_len: pick(10, 20, 40),
            max_constraints: pick(2, 3, 5),
            complex_allowed: difficulty == Hard,
            unique: difficulty == Hard,
        },
        GameKind::CrosswordArranger => E::Crossword {
            board: pick(3, 4, 5),
            words: pick(8, 16, 20),
            noise_words: pick(2, 8, 10),
        },
        GameKind::TextSudoku => E::Sudoku {
            box_size: pick(2, 2, 3),
            blanks: pick(4, 8, 32),
        },
        GameKind::Islands => E::Islands {
            islands: match difficulty {
                Easy => 1..=1,
                Medium => 1..=3,
                Hard => 3..=6,
            },
            trees_allowed: difficulty != Easy,
            tree_islands_rule: difficulty == Hard,
        },
        GameKind::OrderingText => E::Ordering {
            rules: match difficulty {
                Easy => 2..=2,
                Medium => 2..=4,
                Hard => 4..=8,
            },
            words: match difficulty {
                Easy => 3..=3,
                Medium => 4..=6,
                Hard => 6..=10,
            },
            word_len: match difficulty {
                Easy | Medium => 3..=8,
                Hard => 3..=15,
            },
        },
    }
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

impl DifficultyEnvelope {
    /// Checks a payload against the bounds. Uniqueness of String Search Hard is
    /// a solver property and is checked separately.
    pub fn check(&self, c: &ConstraintSet) -> Result<(), String> {
        match (self, c) {
            (
                DifficultyEnvelope::Anagram {
                    word_len,
                    max_chars,
                    repeatable,
                },
                ConstraintSet::Anagram(a),
            ) => {
                ensure(word_len.contains(&a.n), || format!("word length {}", a.n))?;
                ensure(a.chars.len() <= *max_chars, || format!("{} chars", a.chars.len()))?;
                ensure(a.repeatable == *repeatable, || "repeatability".into())?;
                ensure(a.chars.iter().all(|c| c.is_ascii_lowercase()), || "non-lowercase char".into())
            }
            (DifficultyEnvelope::Password { rules }, ConstraintSet::Password(p)) => {
                ensure(p.rules.len() == *rules, || format!("{} rules", p.rules.len()))?;
                let mut kinds: Vec<&str> = p
                    .rules
                    .iter()
                    .filter(|r| !r.is_repeatable())
                    .map(|r| r.kind_name())
                    .collect();
                let n = kinds.len();
                kinds.sort();
                kinds.dedup();
                ensure(kinds.len() == n, || "repeated counting rule".into())
            }
            (DifficultyEnvelope::Bracket { rules, words, depth }, ConstraintSet::Bracket(b)) => {
                ensure(b.placements.len() == *rules, || format!("{} rules", b.placements.len()))?;
                ensure(b.placements.len() == *words, || format!("{} words", b.placements.len()))?;
                ensure(b.depth == *depth, || format!("depth {}", b.depth))
            }
            (
                DifficultyEnvelope::StringSearch {
                    max_text_len,
                    max_constraints,
                    complex_allowed,
                    ..
                },
                ConstraintSet::StringSearch(s),
            ) => {
                ensure(s.haystack.chars().count() <= *max_text_len, || "text too long".into())?;
                ensure(s.constraint_count() <= *max_constraints, || {
                    format!("{} constraints", s.constraint_count())
                })?;
                ensure(*complex_allowed || s.complex.is_empty(), || "complex rules".into())?;
                let mut groups: Vec<_> = s.complex.iter().filter_map(|r| r.kind.group()).collect();
                let n = groups.len();
                groups.sort_by_key(|g| *g as u8);
                groups.dedup();
                ensure(groups.len() == n, || "two rules from one exclusive group".into())
            }
            (
                DifficultyEnvelope::Crossword {
                    board,
                    words,
                    noise_words: _,
                },
                ConstraintSet::Crossword(x),
            ) => {
                ensure(x.n == *board, || format!("board {}", x.n))?;
                ensure(x.words.len() == *words, || format!("{} words", x.words.len()))?;
                ensure(x.words.iter().all(|w| w.chars().count() == x.n), || "word length".into())
            }
            (DifficultyEnvelope::Sudoku { box_size, blanks }, ConstraintSet::Sudoku(s)) => {
                let side = box_size * box_size;
                ensure(s.box_size == *box_size, || format!("box {}", s.box_size))?;
                ensure(s.alphabet.len() == side, || "alphabet size".into())?;
                ensure(s.grid.side() == side && s.grid.rows().iter().all(|r| r.len() == side), || {
                    "grid shape".into()
                })?;
                ensure(s.grid.blanks() == *blanks, || format!("{} blanks", s.grid.blanks()))?;
                ensure(
                    s.grid
                        .rows()
                        .iter()
                        .flatten()
                        .all(|c| *c == SUDOKU_BLANK || s.alphabet.contains(c)),
                    || "symbol outside alphabet".into(),
                )
            }
            (
                DifficultyEnvelope::Islands {
                    islands,
                    trees_allowed,
                    tree_islands_rule,
                },
                ConstraintSet::Islands(i),
            ) => {
                ensure(islands.contains(&i.islands), || format!("{} islands", i.islands))?;
                ensure(*trees_allowed || i.trees_total == 0, || "trees on easy".into())?;
                ensure(i.tree_islands.is_some() == *tree_islands_rule, || "tree island rule".into())?;
                ensure(i.size_min >= 1 && i.size_min <= i.size_max, || "size range".into())
            }
            (
                DifficultyEnvelope::Ordering {
                    rules,
                    words,
                    word_len,
                },
                ConstraintSet::Ordering(o),
            ) => {
                ensure(rules.contains(&o.rules.len()), || format!("{} rules", o.rules.len()))?;
                ensure(words.contains(&o.words.len()), || format!("{} words", o.words.len()))?;
                ensure(o.words.iter().all(|w| word_len.contains(&w.chars().count())), || {
                    "word length".into()
                })?;
                ensure(o.rules.iter().all(|r| ORDERING_POINTS.contains(&r.points)), || {
                    "points out of range".into()
                })
            }
            _ => Err(format!("payload {} does not match envelope", c.game())),
        }
    }
}
