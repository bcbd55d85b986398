use super::answer_lines;
use crate::model::{SudokuConstraints, Verdict, SUDOKU_BLANK};

pub const UNFILLED: &str = "There are unfilled cells";
pub const UNRECOGNIZED: &str = "There are unrecognized characters, or possibly unfilled cells.";
pub const REPLACED: &str = "One or more characters are replaced";

pub fn check_sudoku(c: &SudokuConstraints, answer: &str) -> Verdict {
    let side = c.side();
    let grid: Vec<Vec<char>> = answer_lines(answer)
        .iter()
        .map(|l| l.chars().collect())
        .collect();
    if grid.len() != side || grid.iter().any(|r| r.len() != side) {
        return Verdict::from_feedback(vec![format!(
            "Your answer is wrong in shape, it should be {side}x{side} sudoku."
        )]);
    }

    let cells = || grid.iter().flatten().copied();
    let mut feedback = Vec::new();
    if cells().any(|v| v == SUDOKU_BLANK) {
        feedback.push(UNFILLED.to_string());
    }
    if cells().any(|v| v != SUDOKU_BLANK && !c.alphabet.contains(&v)) {
        feedback.push(UNRECOGNIZED.to_string());
    }
    if !feedback.is_empty() {
        return Verdict::from_feedback(feedback);
    }

    let given = c.grid.rows();
    let replaced = (0..side).any(|r| {
        (0..side).any(|col| given[r][col] != SUDOKU_BLANK && given[r][col] != grid[r][col])
    });
    if replaced {
        feedback.push(REPLACED.to_string());
    }

    let b = c.box_size;
    let mut units: Vec<(&str, Vec<char>)> = Vec::new();
    for r in 0..side {
        units.push(("row", grid[r].clone()));
    }
    for col in 0..side {
        units.push(("column", (0..side).map(|r| grid[r][col]).collect()));
    }
    for k in 0..side {
        let (br, bc) = (k / b * b, k % b * b);
        let cells = (0..b).flat_map(|i| (0..b).map(move |j| (br + i, bc + j)));
        units.push(("box", cells.map(|(r, col)| grid[r][col]).collect()));
    }
    let mut index = [0usize; 3];
    for (name, values) in &units {
        let slot = match *name {
            "row" => 0,
            "column" => 1,
            _ => 2,
        };
        index[slot] += 1;
        let mut seen = Vec::new();
        let mut reported = Vec::new();
        for &v in values {
            if seen.contains(&v) && !reported.contains(&v) {
                feedback.push(format!("Duplicate value '{v}' in {name} {}.", index[slot]));
                reported.push(v);
            }
            seen.push(v);
        }
    }
    Verdict::from_feedback(feedback)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SymbolGrid;

    fn table_puzzle() -> SudokuConstraints {
        SudokuConstraints {
            box_size: 2,
            alphabet: vec!['A', 'B', 'C', 'D'],
            grid: SymbolGrid::parse_rows("A_CD/CD_B/_AD_/DCBA"),
        }
    }

    #[test]
    fn golden_grid() {
        assert!(check_sudoku(&table_puzzle(), "ABCD\nCDAB\nBADC\nDCBA").solved);
    }

    #[test]
    fn replaced_given() {
        let v = check_sudoku(&table_puzzle(), "BBCD\nCDAB\nBADC\nDCBA");
        assert_eq!(v.feedback[0], REPLACED);
    }

    #[test]
    fn duplicate_in_row() {
        let v = check_sudoku(&table_puzzle(), "ABCD\nCDAB\nBADC\nDCBB");
        assert!(!v.solved);
        assert!(v.feedback.contains(&"Duplicate value 'B' in row 4.".to_string()));
        assert!(v.feedback.contains(&REPLACED.to_string()));
    }

    #[test]
    fn shape_and_charset() {
        let v = check_sudoku(&table_puzzle(), "ABCD\nCDAB");
        assert_eq!(v.feedback, vec!["Your answer is wrong in shape, it should be 4x4 sudoku."]);
        let v = check_sudoku(&table_puzzle(), "A_CD\nCDAB\nBADC\nDCBA");
        assert_eq!(v.feedback, vec![UNFILLED]);
        let v = check_sudoku(&table_puzzle(), "AXCD\nCDAB\nBADC\nDCBA");
        assert_eq!(v.feedback, vec![UNRECOGNIZED]);
    }
}
