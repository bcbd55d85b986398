use rand::seq::SliceRandom;
use rand::Rng as _;

use super::{envelope, DifficultyEnvelope, Rng};
use crate::model::{ConstraintSet, Difficulty, GameKind, SudokuConstraints, SymbolGrid, SUDOKU_BLANK};

/// Random complete grid by backtracking with shuffled candidates.
fn full_grid(b: usize, rng: &mut Rng) -> Vec<Vec<usize>> {
    fn fill(grid: &mut Vec<Vec<usize>>, idx: usize, b: usize, rng: &mut Rng) -> bool {
        let side = b * b;
        if idx == side * side {
            return true;
        }
        let (r, c) = (idx / side, idx % side);
        let mut values: Vec<usize> = (0..side).collect();
        values.shuffle(rng);
        for v in values {
            let clash = (0..side).any(|k| grid[r][k] == v || grid[k][c] == v)
                || (0..b).any(|i| (0..b).any(|j| grid[r / b * b + i][c / b * b + j] == v));
            if !clash {
                grid[r][c] = v;
                if fill(grid, idx + 1, b, rng) {
                    return true;
                }
                grid[r][c] = usize::MAX;
            }
        }
        false
    }
    let side = b * b;
    let mut grid = vec![vec![usize::MAX; side]; side];
    assert!(fill(&mut grid, 0, b, rng), "an empty board always has a completion");
    grid
}

/// Masks a random complete grid, so a solution always exists.
pub(super) fn build(d: Difficulty, rng: &mut Rng) -> Option<ConstraintSet> {
    let DifficultyEnvelope::Sudoku { box_size, blanks } = envelope(GameKind::TextSudoku, d) else {
        unreachable!()
    };
    let side = box_size * box_size;
    let alphabet: Vec<char> = if rng.random_bool(0.5) {
        ('1'..).take(side).collect()
    } else {
        ('A'..).take(side).collect()
    };
    let full = full_grid(box_size, rng);
    let mut rows: Vec<Vec<char>> = full
        .iter()
        .map(|r| r.iter().map(|&v| alphabet[v]).collect())
        .collect();
    let mut cells: Vec<usize> = (0..side * side).collect();
    cells.shuffle(rng);
    for &idx in &cells[..blanks] {
        rows[idx / side][idx % side] = SUDOKU_BLANK;
    }
    Some(ConstraintSet::Sudoku(SudokuConstraints {
        box_size,
        alphabet,
        grid: SymbolGrid::new(rows),
    }))
}
