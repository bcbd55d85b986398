use rand::seq::{IndexedRandom, SliceRandom};

use super::{envelope, DifficultyEnvelope, Rng};
use crate::lexicon::Resources;
use crate::model::{ConstraintSet, CrosswordConstraints, Difficulty, GameKind};

const NODE_BUDGET: u64 = 100_000;

struct Trie {
    next: Vec<[u32; 26]>,
}

impl Trie {
    fn new(words: &[String]) -> Self {
        let mut t = Trie { next: vec![[0; 26]] };
        for w in words {
            if !w.bytes().all(|b| b.is_ascii_lowercase()) {
                continue;
            }
            let mut node = 0usize;
            for b in w.bytes() {
                let k = (b - b'a') as usize;
                if t.next[node][k] == 0 {
                    t.next.push([0; 26]);
                    t.next[node][k] = (t.next.len() - 1) as u32;
                }
                node = t.next[node][k] as usize;
            }
        }
        t
    }

    fn child(&self, node: usize, k: usize) -> Option<usize> {
        match self.next[node][k] {
            0 => None,
            c => Some(c as usize),
        }
    }
}

struct Fill<'a> {
    n: usize,
    trie: &'a Trie,
    grid: Vec<Vec<u8>>,
    /// Trie node after the filled prefix of each row and each column.
    row_nodes: Vec<usize>,
    col_nodes: Vec<usize>,
    row_len: Vec<usize>,
    col_len: Vec<usize>,
    nodes: u64,
}

impl Fill<'_> {
    fn candidates(&self, r: usize, c: usize) -> Vec<(usize, usize, usize)> {
        (0..26)
            .filter_map(|k| {
                let rn = self.trie.child(self.row_nodes[r], k)?;
                let cn = self.trie.child(self.col_nodes[c], k)?;
                Some((k, rn, cn))
            })
            .collect()
    }

    fn all_distinct(&self) -> bool {
        let n = self.n;
        let mut all: Vec<Vec<u8>> = self.grid.clone();
        all.extend((0..n).map(|j| (0..n).map(|i| self.grid[i][j]).collect()));
        all.sort();
        all.dedup();
        all.len() == 2 * n
    }

    /// Fills the frontier cell with the fewest letter options first.
    fn go(&mut self, filled: usize, rng: &mut Rng) -> Option<bool> {
        let n = self.n;
        if filled == n * n {
            return Some(self.all_distinct());
        }
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            return None;
        }
        let mut best: Option<(usize, usize, Vec<(usize, usize, usize)>)> = None;
        for r in 0..n {
            let c = self.row_len[r];
            if c == n || self.col_len[c] != r {
                continue;
            }
            let cands = self.candidates(r, c);
            if best.as_ref().is_none_or(|b| cands.len() < b.2.len()) {
                best = Some((r, c, cands));
            }
        }
        let (r, c, mut cands) = best?;
        cands.shuffle(rng);
        let saved = (self.row_nodes[r], self.col_nodes[c]);
        for (k, rn, cn) in cands {
            self.grid[r][c] = k as u8;
            self.row_nodes[r] = rn;
            self.col_nodes[c] = cn;
            self.row_len[r] += 1;
            self.col_len[c] += 1;
            let done = self.go(filled + 1, rng);
            self.row_len[r] -= 1;
            self.col_len[c] -= 1;
            if done? {
                return Some(true);
            }
        }
        (self.row_nodes[r], self.col_nodes[c]) = saved;
        Some(false)
    }
}

/// A random `n x n` grid whose rows and columns are 2n distinct words, or
/// `None` if the node budget runs out first.
pub fn plant_square(n: usize, words: &[String], rng: &mut Rng) -> Option<Vec<String>> {
    let pool: Vec<String> = words.iter().filter(|w| w.len() == n).cloned().collect();
    let trie = Trie::new(&pool);
    let mut fill = Fill {
        n,
        trie: &trie,
        grid: vec![vec![0; n]; n],
        row_nodes: vec![0; n],
        col_nodes: vec![0; n],
        row_len: vec![0; n],
        col_len: vec![0; n],
        nodes: 0,
    };
    if !fill.go(0, rng)? {
        return None;
    }
    Some(
        fill.grid
            .iter()
            .map(|row| row.iter().map(|&b| (b'a' + b) as char).collect())
            .collect(),
    )
}

pub(super) fn build(d: Difficulty, rng: &mut Rng, res: &Resources) -> Option<ConstraintSet> {
    let DifficultyEnvelope::Crossword {
        board,
        words,
        noise_words,
    } = envelope(GameKind::CrosswordArranger, d)
    else {
        unreachable!()
    };
    let pool = res.lexicon.words_of_length(board);
    let rows = plant_square(board, pool, rng)?;
    let mut list: Vec<String> = rows.clone();
    list.extend((0..board).map(|j| rows.iter().map(|r| r.as_bytes()[j] as char).collect::<String>()));
    if list.len() + noise_words != words {
        return None;
    }
    let mut tries = 0;
    while list.len() < words {
        tries += 1;
        if tries > 10_000 {
            return None;
        }
        let w = pool.choose(rng)?;
        if !list.contains(w) {
            list.push(w.clone());
        }
    }
    list.shuffle(rng);
    Some(ConstraintSet::Crossword(CrosswordConstraints { n: board, words: list }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn planted_squares_read_as_distinct_words() {
        let lex = &Resources::get().lexicon;
        for n in 3..=5 {
            let mut rng = Rng::seed_from_u64(n as u64);
            let rows = (0..20)
                .find_map(|_| plant_square(n, lex.words_of_length(n), &mut rng))
                .expect("some attempt succeeds");
            let mut all = rows.clone();
            all.extend((0..n).map(|j| rows.iter().map(|r| r.as_bytes()[j] as char).collect()));
            assert!(all.iter().all(|w| lex.is_word(w)));
            let mut dedup = all.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), 2 * n, "{all:?}");
        }
    }
}
