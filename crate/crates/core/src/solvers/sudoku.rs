use super::{Search, SolveError};
use crate::model::{SudokuConstraints, SUDOKU_BLANK};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SudokuSolution {
    /// Solutions found, capped at the requested limit.
    pub count: usize,
    /// First solution as newline-separated rows.
    pub first: Option<String>,
}

/// Backtracking with bitmask candidates, always branching on the cell with
/// the fewest candidates.
pub fn solve_grid(
    c: &SudokuConstraints,
    limit: usize,
    search: &mut Search,
) -> Result<SudokuSolution, SolveError> {
    let side = c.side();
    let b = c.box_size;
    let mut out = SudokuSolution {
        count: 0,
        first: None,
    };
    let rows = c.grid.rows();
    if rows.len() != side || rows.iter().any(|r| r.len() != side) || c.alphabet.len() != side {
        return Ok(out);
    }
    let mut cells = vec![usize::MAX; side * side];
    let mut row_used = vec![0u32; side];
    let mut col_used = vec![0u32; side];
    let mut box_used = vec![0u32; side];
    let box_of = |r: usize, col: usize| r / b * b + col / b;
    for r in 0..side {
        for col in 0..side {
            let v = rows[r][col];
            if v == SUDOKU_BLANK {
                continue;
            }
            let Some(k) = c.alphabet.iter().position(|&a| a == v) else {
                return Ok(out);
            };
            let bit = 1 << k;
            if (row_used[r] | col_used[col] | box_used[box_of(r, col)]) & bit != 0 {
                return Ok(out);
            }
            cells[r * side + col] = k;
            row_used[r] |= bit;
            col_used[col] |= bit;
            box_used[box_of(r, col)] |= bit;
        }
    }

    let full = (1u32 << side) - 1;
    let mut state = State {
        side,
        cells,
        row_used,
        col_used,
        box_used,
        full,
        b,
    };
    state.descend(c, limit, search, &mut out)?;
    Ok(out)
}

struct State {
    side: usize,
    b: usize,
    cells: Vec<usize>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    box_used: Vec<u32>,
    full: u32,
}

impl State {
    fn candidates(&self, r: usize, col: usize) -> u32 {
        let bx = r / self.b * self.b + col / self.b;
        self.full & !(self.row_used[r] | self.col_used[col] | self.box_used[bx])
    }

    fn descend(
        &mut self,
        c: &SudokuConstraints,
        limit: usize,
        search: &mut Search,
        out: &mut SudokuSolution,
    ) -> Result<(), SolveError> {
        search.tick()?;
        let mut best: Option<(usize, u32)> = None;
        for idx in 0..self.cells.len() {
            if self.cells[idx] != usize::MAX {
                continue;
            }
            let cand = self.candidates(idx / self.side, idx % self.side);
            if best.is_none_or(|(_, m)| cand.count_ones() < m.count_ones()) {
                best = Some((idx, cand));
                if cand.count_ones() <= 1 {
                    break;
                }
            }
        }
        let Some((idx, mut cand)) = best else {
            out.count += 1;
            if out.first.is_none() {
                out.first = Some(self.render(c));
            }
            return Ok(());
        };
        let (r, col) = (idx / self.side, idx % self.side);
        let bx = r / self.b * self.b + col / self.b;
        while cand != 0 {
            let k = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let bit = 1 << k;
            self.cells[idx] = k;
            self.row_used[r] |= bit;
            self.col_used[col] |= bit;
            self.box_used[bx] |= bit;
            self.descend(c, limit, search, out)?;
            self.cells[idx] = usize::MAX;
            self.row_used[r] &= !bit;
            self.col_used[col] &= !bit;
            self.box_used[bx] &= !bit;
            if out.count >= limit {
                break;
            }
        }
        Ok(())
    }

    fn render(&self, c: &SudokuConstraints) -> String {
        self.cells
            .chunks(self.side)
            .map(|row| row.iter().map(|&k| c.alphabet[k]).collect::<String>())
            .collect::<Vec<_>>()
            .join("\n")
    }
}
