use std::collections::HashSet;

use super::{Search, SolveError};
use crate::graders::check_crossword;
use crate::model::CrosswordConstraints;

/// Row-by-row fill; after each row every column prefix must still begin
/// some listed word.
pub(super) fn solutions(
    c: &CrosswordConstraints,
    limit: usize,
    search: &mut Search,
) -> Result<Vec<String>, SolveError> {
    let n = c.n;
    let mut words: Vec<Vec<char>> = c
        .words
        .iter()
        .map(|w| w.to_lowercase().chars().collect::<Vec<char>>())
        .filter(|w| w.len() == n)
        .collect();
    words.sort();
    words.dedup();
    let prefixes: HashSet<Vec<char>> = words
        .iter()
        .flat_map(|w| (1..=n).map(move |k| w[..k].to_vec()))
        .collect();

    let mut found = Vec::new();
    let mut rows: Vec<usize> = Vec::with_capacity(n);
    fill(c, &words, &prefixes, &mut rows, limit, &mut found, search)?;
    Ok(found)
}

fn fill(
    c: &CrosswordConstraints,
    words: &[Vec<char>],
    prefixes: &HashSet<Vec<char>>,
    rows: &mut Vec<usize>,
    limit: usize,
    found: &mut Vec<String>,
    search: &mut Search,
) -> Result<(), SolveError> {
    let n = c.n;
    if rows.len() == n {
        let grid = rows
            .iter()
            .map(|&i| words[i].iter().collect::<String>())
            .collect::<Vec<_>>()
            .join("\n");
        if check_crossword(c, &grid).solved {
            found.push(grid);
        }
        return Ok(());
    }
    for i in 0..words.len() {
        if rows.contains(&i) {
            continue;
        }
        search.tick()?;
        let depth = rows.len() + 1;
        let ok = (0..n).all(|col| {
            let prefix: Vec<char> = rows
                .iter()
                .chain(std::iter::once(&i))
                .map(|&r| words[r][col])
                .collect();
            debug_assert_eq!(prefix.len(), depth);
            prefixes.contains(&prefix)
        });
        if ok {
            rows.push(i);
            fill(c, words, prefixes, rows, limit, found, search)?;
            rows.pop();
            if found.len() >= limit {
                return Ok(());
            }
        }
    }
    Ok(())
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
    fn finds_golden_grid() {
        let mut s = Search::new(super::super::DEFAULT_BUDGET);
        let sols = solutions(&app(), 10, &mut s).unwrap();
        assert!(sols.contains(&"app\nlee\nlet".to_string()));
        assert!(sols.iter().all(|g| check_crossword(&app(), g).solved));
    }
}
