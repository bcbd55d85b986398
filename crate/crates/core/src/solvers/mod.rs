//! Reference solvers and bounded solution counters.

mod bracket;
mod crossword;
mod islands;
mod password;
mod sudoku;

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graders::{check_string_search, expected_order};
use crate::lexicon::Resources;
use crate::model::{ConstraintSet, GameKind, PuzzleInstance, StringSearchConstraints};

pub use bracket::segment_words;
pub use islands::{pack_islands, packing_fits};
pub use sudoku::{solve_grid, SudokuSolution};

pub const DEFAULT_BUDGET: Duration = Duration::from_secs(10);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    /// Formatted exactly as the grader expects.
    pub answer: String,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("instance has no solution")]
    ProvenUnsolvable,
    #[error("constructive solver could not build an answer: {0}")]
    NoConstruction(String),
    #[error("solution counting is not supported for {0}")]
    UnsupportedGame(GameKind),
}

/// Node counter with a wall-clock deadline, checked every few hundred nodes.
pub struct Search {
    start: Instant,
    deadline: Instant,
    pub nodes: u64,
}

impl Search {
    pub fn new(budget: Duration) -> Self {
        let start = Instant::now();
        Search {
            start,
            deadline: start + budget,
            nodes: 0,
        }
    }

    pub fn tick(&mut self) -> Result<(), SolveError> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(256) && Instant::now() >= self.deadline {
            return Err(SolveError::BudgetExhausted { nodes: self.nodes });
        }
        Ok(())
    }

    fn finish(self, answer: String) -> SolveResult {
        SolveResult {
            answer,
            nodes_explored: self.nodes,
            elapsed: self.start.elapsed(),
        }
    }
}

pub fn solve(instance: &PuzzleInstance, budget: Duration) -> Result<SolveResult, SolveError> {
    solve_constraints(&instance.constraints, budget)
}

pub fn solve_constraints(c: &ConstraintSet, budget: Duration) -> Result<SolveResult, SolveError> {
    let mut search = Search::new(budget);
    let answer = match c {
        ConstraintSet::Anagram(a) => {
            let lex = &Resources::get().lexicon;
            let words = lex.words_matching(a.n, &a.chars, a.repeatable);
            search.nodes += lex.words_of_length(a.n).len() as u64;
            words
                .first()
                .map(|w| w.to_string())
                .ok_or(SolveError::ProvenUnsolvable)?
        }
        ConstraintSet::Password(p) => password::solve(p, &mut search)?,
        ConstraintSet::Bracket(b) => bracket::solve(b)?,
        ConstraintSet::StringSearch(s) => string_solutions(s, 1, &mut search)?
            .into_iter()
            .next()
            .ok_or(SolveError::ProvenUnsolvable)?,
        ConstraintSet::Crossword(x) => crossword::solutions(x, 1, &mut search)?
            .into_iter()
            .next()
            .ok_or(SolveError::ProvenUnsolvable)?,
        ConstraintSet::Sudoku(s) => match sudoku::solve_grid(s, 1, &mut search)? {
            SudokuSolution { first: Some(grid), .. } => grid,
            _ => return Err(SolveError::ProvenUnsolvable),
        },
        ConstraintSet::Islands(i) => islands::solve(i)?,
        ConstraintSet::Ordering(o) => {
            search.nodes += o.words.len() as u64;
            expected_order(o).join("\n")
        }
    };
    Ok(search.finish(answer))
}

/// Exact number of accepted answers when below `limit`, else `limit`.
pub fn count_solutions(
    instance: &PuzzleInstance,
    limit: usize,
    budget: Duration,
) -> Result<usize, SolveError> {
    count_constraint_solutions(&instance.constraints, limit, budget)
}

pub fn count_constraint_solutions(
    c: &ConstraintSet,
    limit: usize,
    budget: Duration,
) -> Result<usize, SolveError> {
    let limit = limit.max(1);
    let mut search = Search::new(budget);
    let n = match c {
        ConstraintSet::Anagram(a) => Resources::get()
            .lexicon
            .words_matching(a.n, &a.chars, a.repeatable)
            .len(),
        ConstraintSet::StringSearch(s) => string_solutions(s, limit, &mut search)?.len(),
        ConstraintSet::Crossword(x) => crossword::solutions(x, limit, &mut search)?.len(),
        ConstraintSet::Sudoku(s) => sudoku::solve_grid(s, limit, &mut search)?.count,
        other => return Err(SolveError::UnsupportedGame(other.game())),
    };
    Ok(n.min(limit))
}

/// Distinct accepted substrings in order of first occurrence.
fn string_solutions(
    c: &StringSearchConstraints,
    limit: usize,
    search: &mut Search,
) -> Result<Vec<String>, SolveError> {
    let chars: Vec<char> = c.haystack.chars().collect();
    let mut found: Vec<String> = Vec::new();
    if c.length == 0 || c.length > chars.len() {
        return Ok(found);
    }
    for window in chars.windows(c.length) {
        search.tick()?;
        let candidate: String = window.iter().collect();
        if !found.contains(&candidate) && check_string_search(c, &candidate).solved {
            found.push(candidate);
            if found.len() >= limit {
                break;
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graders::grade_constraints;
    use crate::model::*;

    fn solves(c: ConstraintSet) -> String {
        let r = solve_constraints(&c, DEFAULT_BUDGET).unwrap();
        assert!(grade_constraints(&c, &r.answer).solved, "{}", r.answer);
        r.answer
    }

    #[test]
    fn anagram() {
        let c = ConstraintSet::Anagram(AnagramConstraints {
            n: 6,
            chars: "elodphi".chars().collect(),
            repeatable: true,
        });
        solves(c);
        let q = ConstraintSet::Anagram(AnagramConstraints {
            n: 3,
            chars: vec!['q'],
            repeatable: true,
        });
        assert_eq!(solve_constraints(&q, DEFAULT_BUDGET), Err(SolveError::ProvenUnsolvable));
    }

    #[test]
    fn string_search_counts() {
        let c = ConstraintSet::StringSearch(StringSearchConstraints {
            haystack: "hengooserabbitant".into(),
            length: 3,
            must_contain: vec!['g'],
            must_exclude: vec!['i', 'a'],
            complex: vec![],
        });
        solves(c.clone());
        assert_eq!(count_constraint_solutions(&c, 100, DEFAULT_BUDGET).unwrap(), 3);
        assert_eq!(count_constraint_solutions(&c, 2, DEFAULT_BUDGET).unwrap(), 2);
    }

    #[test]
    fn ordering_golden() {
        let c = ConstraintSet::Ordering(OrderingConstraints {
            rules: vec![
                ScoringRule {
                    condition: OrderingCondition::Contains { s: "g".into() },
                    points: 1,
                    style: RuleStyle::AddIf,
                },
                ScoringRule {
                    condition: OrderingCondition::LengthLess { n: 5 },
                    points: 10,
                    style: RuleStyle::Gets,
                },
            ],
            words: ["hen", "goose", "rabbit", "ant"].map(String::from).to_vec(),
        });
        assert_eq!(solves(c), "ant\nhen\ngoose\nrabbit");
    }

    #[test]
    fn unsupported_count() {
        let c = ConstraintSet::Islands(IslandsConstraints {
            n: 4,
            islands: 1,
            size_min: 1,
            size_max: 2,
            tree_islands: None,
            trees_total: 0,
        });
        assert_eq!(
            count_constraint_solutions(&c, 2, DEFAULT_BUDGET),
            Err(SolveError::UnsupportedGame(GameKind::Islands))
        );
    }
}
