use super::SolveError;
use crate::graders::check_islands;
use crate::model::{IslandsConstraints, LAND, TREE, WATER};

/// Whether `k` islands of exactly `s` tiles fit the strip packing on an `n x n` board.
pub fn packing_fits(n: usize, k: usize, s: usize) -> bool {
    if n == 0 || s == 0 {
        return k == 0;
    }
    if s <= n {
        let rows = n.div_ceil(2);
        let per_row = (n + 1) / (s + 1);
        rows * per_row >= k
    } else {
        let h = s.div_ceil(n);
        k == 0 || k * (h + 1) - 1 <= n
    }
}

/// Islands of `s` tiles each: horizontal runs on alternate rows when they fit
/// in a row, otherwise full-width bands separated by water rows. Island `i`
/// carries `trees[i]` trees (missing entries mean none).
pub fn pack_islands(n: usize, k: usize, s: usize, trees: &[usize]) -> Option<Vec<Vec<char>>> {
    if !packing_fits(n, k, s) || trees.iter().any(|&t| t > s) || trees.len() > k {
        return None;
    }
    let mut grid = vec![vec![WATER; n]; n];
    let mut tiles: Vec<Vec<(usize, usize)>> = Vec::with_capacity(k);
    if s <= n {
        let per_row = (n + 1) / (s + 1);
        for i in 0..k {
            let row = (i / per_row) * 2;
            let start = (i % per_row) * (s + 1);
            tiles.push((start..start + s).map(|col| (row, col)).collect());
        }
    } else {
        let h = s.div_ceil(n);
        for i in 0..k {
            let top = i * (h + 1);
            tiles.push((0..s).map(|j| (top + j / n, j % n)).collect());
        }
    }
    for (i, island) in tiles.iter().enumerate() {
        let t = trees.get(i).copied().unwrap_or(0);
        for (j, &(r, col)) in island.iter().enumerate() {
            grid[r][col] = if j < t { TREE } else { LAND };
        }
    }
    Some(grid)
}

/// Trees per island: `islands_with_trees` islands share `total` trees as evenly as possible.
fn spread(total: usize, islands_with_trees: usize) -> Vec<usize> {
    (0..islands_with_trees)
        .map(|i| total / islands_with_trees + usize::from(i < total % islands_with_trees))
        .collect()
}

pub(super) fn solve(c: &IslandsConstraints) -> Result<String, SolveError> {
    let s = c.size_min.max(1);
    if s > c.size_max {
        return Err(SolveError::ProvenUnsolvable);
    }
    let tree_islands = match c.tree_islands {
        Some(l) => l,
        None if c.trees_total == 0 => 0,
        None => c.trees_total.div_ceil(s).max(1),
    };
    let trees_ok = if tree_islands == 0 {
        c.trees_total == 0
    } else {
        tree_islands <= c.islands && tree_islands <= c.trees_total && c.trees_total <= tree_islands * s
    };
    if !trees_ok {
        return Err(SolveError::NoConstruction("tree counts do not fit the islands".into()));
    }
    let trees = if tree_islands == 0 {
        Vec::new()
    } else {
        spread(c.trees_total, tree_islands)
    };
    let grid = pack_islands(c.n, c.islands, s, &trees)
        .ok_or_else(|| SolveError::NoConstruction("islands do not fit the board".into()))?;
    let answer = grid
        .iter()
        .map(|r| r.iter().collect::<String>())
        .collect::<Vec<_>>()
        .join("\n");
    if check_islands(c, &answer).solved {
        Ok(answer)
    } else {
        Err(SolveError::NoConstruction("packed grid was rejected".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packer_covers_every_fitting_case() {
        for n in 1..=10 {
            for s in 1..=n * n {
                for k in 1..=8 {
                    if !packing_fits(n, k, s) {
                        continue;
                    }
                    for l in 0..=k.min(3) {
                        let total = if l == 0 { 0 } else { l + (s - 1) * l / 2 };
                        let c = IslandsConstraints {
                            n,
                            islands: k,
                            size_min: s,
                            size_max: s,
                            tree_islands: Some(l),
                            trees_total: total,
                        };
                        let answer = solve(&c).unwrap_or_else(|e| panic!("{c:?}: {e}"));
                        assert!(check_islands(&c, &answer).solved);
                    }
                }
            }
        }
    }

    #[test]
    fn table_constraints() {
        let c = IslandsConstraints {
            n: 6,
            islands: 3,
            size_min: 5,
            size_max: 10,
            tree_islands: Some(2),
            trees_total: 4,
        };
        assert!(check_islands(&c, &solve(&c).unwrap()).solved);
    }
}
