use super::answer_lines;
use crate::model::{IslandsConstraints, Verdict, LAND, TREE, WATER};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IslandStats {
    pub size: usize,
    pub trees: usize,
}

/// 4-connected components over land and tree tiles, in row-major discovery order.
pub fn label_islands(grid: &[Vec<char>]) -> Vec<IslandStats> {
    let is_land = |c: char| c == LAND || c == TREE;
    let rows = grid.len();
    let mut seen: Vec<Vec<bool>> = grid.iter().map(|r| vec![false; r.len()]).collect();
    let mut out = Vec::new();
    for r in 0..rows {
        for c in 0..grid[r].len() {
            if seen[r][c] || !is_land(grid[r][c]) {
                continue;
            }
            seen[r][c] = true;
            let mut stack = vec![(r, c)];
            let mut stats = IslandStats { size: 0, trees: 0 };
            while let Some((y, x)) = stack.pop() {
                stats.size += 1;
                stats.trees += usize::from(grid[y][x] == TREE);
                let mut visit = |ny: usize, nx: usize| {
                    if ny < rows && nx < grid[ny].len() && !seen[ny][nx] && is_land(grid[ny][nx]) {
                        seen[ny][nx] = true;
                        stack.push((ny, nx));
                    }
                };
                if y > 0 {
                    visit(y - 1, x);
                }
                if x > 0 {
                    visit(y, x - 1);
                }
                visit(y + 1, x);
                visit(y, x + 1);
            }
            out.push(stats);
        }
    }
    out
}

pub fn check_islands(c: &IslandsConstraints, answer: &str) -> Verdict {
    let grid: Vec<Vec<char>> = answer_lines(answer)
        .iter()
        .map(|l| l.chars().collect())
        .collect();
    let n = c.n;
    if grid.len() != n || grid.iter().any(|r| r.len() != n) {
        let cols = grid.iter().map(Vec::len).find(|&l| l != n).unwrap_or(n);
        let cols = if grid.is_empty() { 0 } else { cols };
        return Verdict::from_feedback(vec![format!(
            "2D grid is not {n} x {n}. ({} x {cols})",
            grid.len()
        )]);
    }
    if let Some(bad) = grid
        .iter()
        .flatten()
        .find(|&&ch| ch != WATER && ch != LAND && ch != TREE)
    {
        return Verdict::from_feedback(vec![format!("2D contains invalid character ({bad})")]);
    }

    let islands = label_islands(&grid);
    let mut feedback = Vec::new();
    if islands.len() != c.islands {
        feedback.push(format!(
            "There must be exactly {} islands, but you provided {} islands",
            c.islands,
            islands.len()
        ));
    }
    if islands
        .iter()
        .any(|i| i.size < c.size_min || i.size > c.size_max)
    {
        feedback.push(format!(
            "The size of each island must be from {} to {} tiles",
            c.size_min, c.size_max
        ));
    }
    if let Some(l) = c.tree_islands {
        if islands.iter().filter(|i| i.trees > 0).count() != l {
            feedback.push(format!(
                "There must be exactly {l} islands that have coconut trees on them"
            ));
        }
    }
    let trees: usize = islands.iter().map(|i| i.trees).sum();
    if trees != c.trees_total {
        feedback.push(format!(
            "There must be exactly {} total coconut trees.",
            c.trees_total
        ));
    }
    Verdict::from_feedback(feedback)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE_GRID: &str = ".##...\n#o#...\n.o#.##\n....##\n#o#..#\n#o##..";

    fn table_puzzle() -> IslandsConstraints {
        IslandsConstraints {
            n: 6,
            islands: 3,
            size_min: 5,
            size_max: 10,
            tree_islands: Some(2),
            trees_total: 4,
        }
    }

    #[test]
    fn golden_grid() {
        assert!(check_islands(&table_puzzle(), TABLE_GRID).solved);
        let grid: Vec<Vec<char>> = TABLE_GRID.lines().map(|l| l.chars().collect()).collect();
        let sizes: Vec<usize> = label_islands(&grid).iter().map(|i| i.size).collect();
        assert_eq!(sizes, vec![7, 5, 7]);
    }

    #[test]
    fn all_water() {
        let water = ["......"; 6].join("\n");
        let v = check_islands(&table_puzzle(), &water);
        assert_eq!(
            v.feedback,
            vec![
                "There must be exactly 3 islands, but you provided 0 islands",
                "There must be exactly 2 islands that have coconut trees on them",
                "There must be exactly 4 total coconut trees.",
            ]
        );
    }

    #[test]
    fn invalid_char_and_shape() {
        let bad = TABLE_GRID.replacen('.', "x", 1);
        assert_eq!(
            check_islands(&table_puzzle(), &bad).feedback,
            vec!["2D contains invalid character (x)"]
        );
        assert_eq!(
            check_islands(&table_puzzle(), "...\n...").feedback,
            vec!["2D grid is not 6 x 6. (2 x 3)"]
        );
    }
}
