use rand::Rng as _;

use super::{envelope, DifficultyEnvelope, Rng};
use crate::model::{ConstraintSet, Difficulty, GameKind, IslandsConstraints};
use crate::solvers::packing_fits;

/// Samples only from parameter combinations the strip packer can realise.
pub(super) fn build(d: Difficulty, rng: &mut Rng) -> Option<ConstraintSet> {
    let DifficultyEnvelope::Islands {
        islands,
        trees_allowed,
        tree_islands_rule,
    } = envelope(GameKind::Islands, d)
    else {
        unreachable!()
    };
    let n = match d {
        Difficulty::Easy => rng.random_range(4..=8),
        Difficulty::Medium => rng.random_range(5..=7),
        Difficulty::Hard => rng.random_range(6..=8),
    };
    let k = rng.random_range(islands);
    let sizes: Vec<usize> = (1..=n * n).filter(|&s| packing_fits(n, k, s)).collect();
    if sizes.is_empty() {
        return None;
    }
    let size_min = sizes[rng.random_range(0..sizes.len())];
    let size_max = rng.random_range(size_min..=(size_min + 2 * n).min(n * n));

    let (tree_islands, trees_total) = if !trees_allowed {
        (None, 0)
    } else if tree_islands_rule {
        let l = rng.random_range(1..=k);
        (Some(l), rng.random_range(l..=l * size_min.min(3)))
    } else {
        (None, rng.random_range(0..=(k * size_min).min(3)))
    };
    Some(ConstraintSet::Islands(IslandsConstraints {
        n,
        islands: k,
        size_min,
        size_max,
        tree_islands,
        trees_total,
    }))
}
