use std::collections::HashSet;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{generate, mix64, GenerateError};
use crate::model::{serialize_instance, Difficulty, GameKind, PuzzleInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Split {
    Train,
    Test,
}

impl Split {
    pub fn slug(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Test => "test",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetConfig {
    pub master_seed: u64,
    pub per_cell_test: usize,
    pub per_cell_train: usize,
    pub games: Vec<GameKind>,
    pub difficulties: Vec<Difficulty>,
}

impl Default for DatasetConfig {
    fn default() -> Self {
        DatasetConfig {
            master_seed: 0,
            per_cell_test: 1000,
            per_cell_train: 100,
            games: GameKind::ALL.to_vec(),
            difficulties: Difficulty::ALL.to_vec(),
        }
    }
}

/// Seed of the `index`-th candidate in a cell and split.
pub fn derive_seed(master: u64, game: GameKind, difficulty: Difficulty, split: Split, index: u64) -> u64 {
    let cell = (game as u64) << 16 | (difficulty as u64) << 8 | split as u64;
    mix64(mix64(mix64(master) ^ cell) ^ index)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSummary {
    pub game: GameKind,
    pub difficulty: Difficulty,
    pub test: usize,
    pub train: usize,
    /// Requested instances that could not be produced without duplicates.
    pub shortfall: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub cells: Vec<CellSummary>,
}

impl DatasetSummary {
    pub fn total(&self) -> usize {
        self.cells.iter().map(|c| c.test + c.train).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub test: Vec<PuzzleInstance>,
    pub train: Vec<PuzzleInstance>,
}

fn fill(
    config: &DatasetConfig,
    game: GameKind,
    difficulty: Difficulty,
    split: Split,
    want: usize,
    seen: &mut HashSet<String>,
) -> Result<Vec<PuzzleInstance>, GenerateError> {
    let mut out = Vec::with_capacity(want);
    let cap = (want as u64) * 20 + 100;
    let mut index = 0;
    while out.len() < want && index < cap {
        let batch = ((want - out.len()) as u64).max(16).min(cap - index);
        let made: Vec<Result<PuzzleInstance, GenerateError>> = (index..index + batch)
            .into_par_iter()
            .map(|i| generate(game, difficulty, derive_seed(config.master_seed, game, difficulty, split, i)))
            .collect();
        index += batch;
        for inst in made {
            let inst = inst?;
            if out.len() < want && seen.insert(inst.constraints.canonical()) {
                out.push(inst);
            }
        }
    }
    Ok(out)
}

/// Test instances first, then train instances that share no payload with them.
pub fn generate_cell(
    config: &DatasetConfig,
    game: GameKind,
    difficulty: Difficulty,
) -> Result<Cell, GenerateError> {
    let mut seen = HashSet::new();
    let test = fill(config, game, difficulty, Split::Test, config.per_cell_test, &mut seen)?;
    let train = fill(config, game, difficulty, Split::Train, config.per_cell_train, &mut seen)?;
    Ok(Cell { test, train })
}

/// All configured difficulties of one game. Payloads are unique across the
/// whole game, so no two cells (or splits) share an instance.
pub fn generate_game(config: &DatasetConfig, game: GameKind) -> Result<Vec<Cell>, GenerateError> {
    let mut seen = HashSet::new();
    let mut tests = Vec::new();
    for &d in &config.difficulties {
        tests.push(fill(config, game, d, Split::Test, config.per_cell_test, &mut seen)?);
    }
    let mut cells = Vec::new();
    for (&d, test) in config.difficulties.iter().zip(tests) {
        let train = fill(config, game, d, Split::Train, config.per_cell_train, &mut seen)?;
        cells.push(Cell { test, train });
    }
    Ok(cells)
}

/// Writes `test.jsonl`, `train.jsonl` and `summary.json` under `dir`. Games
/// are generated in parallel and written in game/difficulty order.
pub fn generate_dataset(config: &DatasetConfig, dir: &Path) -> Result<DatasetSummary, GenerateError> {
    let per_game: Vec<Result<Vec<Cell>, GenerateError>> =
        config.games.par_iter().map(|&g| generate_game(config, g)).collect();
    let mut cells = Vec::new();
    let mut results = Vec::new();
    for (&g, game_cells) in config.games.iter().zip(per_game) {
        for (&d, cell) in config.difficulties.iter().zip(game_cells?) {
            cells.push((g, d));
            results.push(cell);
        }
    }

    fs::create_dir_all(dir)?;
    let mut test_file = fs::File::create(dir.join("test.jsonl"))?;
    let mut train_file = fs::File::create(dir.join("train.jsonl"))?;
    let mut summary = DatasetSummary::default();
    for (&(game, difficulty), cell) in cells.iter().zip(results) {
        for inst in &cell.test {
            writeln!(test_file, "{}", serialize_instance(inst))?;
        }
        for inst in &cell.train {
            writeln!(train_file, "{}", serialize_instance(inst))?;
        }
        summary.cells.push(CellSummary {
            game,
            difficulty,
            test: cell.test.len(),
            train: cell.train.len(),
            shortfall: (config.per_cell_test + config.per_cell_train) - cell.test.len() - cell.train.len(),
        });
    }
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    fs::write(dir.join("summary.json"), json)?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_differ_across_splits_and_cells() {
        let a = derive_seed(0, GameKind::Islands, Difficulty::Easy, Split::Test, 0);
        let b = derive_seed(0, GameKind::Islands, Difficulty::Easy, Split::Train, 0);
        let c = derive_seed(0, GameKind::Islands, Difficulty::Medium, Split::Test, 0);
        let d = derive_seed(1, GameKind::Islands, Difficulty::Easy, Split::Test, 0);
        let all = [a, b, c, d];
        for i in 0..4 {
            for j in i + 1..4 {
                assert_ne!(all[i], all[j]);
            }
        }
    }

    #[test]
    fn cell_has_no_duplicates_and_disjoint_splits() {
        let config = DatasetConfig {
            per_cell_test: 20,
            per_cell_train: 10,
            ..DatasetConfig::default()
        };
        let cell = generate_cell(&config, GameKind::AnagramScribble, Difficulty::Easy).unwrap();
        assert_eq!(cell.test.len(), 20);
        assert_eq!(cell.train.len(), 10);
        let keys: HashSet<String> = cell
            .test
            .iter()
            .chain(&cell.train)
            .map(|i| i.constraints.canonical())
            .collect();
        assert_eq!(keys.len(), 30);
    }

    #[test]
    fn game_cells_share_no_payloads() {
        let config = DatasetConfig {
            per_cell_test: 30,
            per_cell_train: 10,
            ..DatasetConfig::default()
        };
        let cells = generate_game(&config, GameKind::StringSearch).unwrap();
        let keys: HashSet<String> = cells
            .iter()
            .flat_map(|c| c.test.iter().chain(&c.train))
            .map(|i| i.constraints.canonical())
            .collect();
        assert_eq!(keys.len(), 3 * 40);
    }
}
