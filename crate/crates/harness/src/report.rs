use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use textpuzzle_core::{Category, Difficulty, EpisodeRecord, GameKind};
use thiserror::Error;

use crate::metrics::{CellRates, MetricsTable};

pub const METRICS_FILE: &str = "metrics.tsv";
pub const EPISODES_FILE: &str = "episodes.log";
pub const REPORT_FILE: &str = "report.txt";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

fn turn_headers(n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("#{k}")).collect()
}

/// Tab-separated rows `game difficulty episodes errors #1..#N`, then one
/// `1D`/`2D` average row per difficulty with `-` counts. Rates are written
/// losslessly so the file reads back to an equal table.
pub fn to_tsv(m: &MetricsTable) -> String {
    let mut out = format!("game\tdifficulty\tepisodes\terrors\t{}\n", turn_headers(m.max_turns).join("\t"));
    let rates = |r: &[f64]| r.iter().map(f64::to_string).collect::<Vec<_>>().join("\t");
    for c in &m.cells {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            c.game.slug(),
            c.difficulty.slug(),
            c.episodes,
            c.errors,
            rates(&c.rates)
        );
    }
    for cat in [Category::OneD, Category::TwoD] {
        for d in Difficulty::ALL {
            if let Some(avg) = m.category_average(cat, d) {
                let _ = writeln!(out, "{cat}\t{}\t-\t-\t{}", d.slug(), rates(&avg));
            }
        }
    }
    out
}

/// Reads [`to_tsv`] output. Average rows are derived data and skipped.
pub fn from_tsv(text: &str) -> Result<MetricsTable, ReportError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(ReportError::Parse {
        line: 1,
        reason: "empty file".into(),
    })?;
    let max_turns = header.split('\t').filter(|h| h.starts_with('#')).count();
    let mut cells = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let err = |reason: String| ReportError::Parse { line: i + 1, reason };
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 4 + max_turns {
            return Err(err(format!("expected {} fields, found {}", 4 + max_turns, f.len())));
        }
        if f[0] == "1D" || f[0] == "2D" {
            continue;
        }
        let game: GameKind = f[0].parse().map_err(|_| err(format!("unknown game {}", f[0])))?;
        let difficulty: Difficulty = f[1].parse().map_err(|_| err(format!("unknown difficulty {}", f[1])))?;
        let num = |s: &str| s.parse::<usize>().map_err(|e| err(e.to_string()));
        let rates = f[4..]
            .iter()
            .map(|s| s.parse::<f64>().map_err(|e| err(e.to_string())))
            .collect::<Result<_, _>>()?;
        cells.push(CellRates {
            game,
            difficulty,
            episodes: num(f[2])?,
            errors: num(f[3])?,
            rates,
        });
    }
    Ok(MetricsTable { max_turns, cells })
}

/// Percent table, one row per game and a column group per difficulty with
/// the turn columns in order.
pub fn render_table(m: &MetricsTable) -> String {
    let turns = turn_headers(m.max_turns);
    let name_w = GameKind::ALL
        .iter()
        .map(|g| g.display_name().len())
        .max()
        .unwrap_or(10)
        .max("2D Average".len());
    let mut out = format!("{:name_w$}", "Game");
    for d in Difficulty::ALL {
        let _ = write!(out, " | {:^w$}", d.to_string(), w = turns.len() * 7 - 1);
    }
    out.push('\n');
    let _ = write!(out, "{:name_w$}", "");
    for _ in Difficulty::ALL {
        out.push_str(" |");
        for t in &turns {
            let _ = write!(out, " {t:>6}");
        }
    }
    out.push('\n');
    let row = |out: &mut String, name: &str, get: &dyn Fn(Difficulty) -> Option<Vec<f64>>| {
        let _ = write!(out, "{name:name_w$}");
        for d in Difficulty::ALL {
            out.push_str(" |");
            match get(d) {
                Some(r) => r.iter().for_each(|v| {
                    let _ = write!(out, " {:>6.1}", v * 100.0);
                }),
                None => (0..turns.len()).for_each(|_| out.push_str("      -")),
            }
        }
        out.push('\n');
    };
    for cat in [Category::OneD, Category::TwoD] {
        for g in GameKind::ALL.iter().filter(|g| g.category() == cat) {
            if m.cells.iter().any(|c| c.game == *g) {
                row(&mut out, g.display_name(), &|d| m.cell(*g, d).map(|c| c.rates.clone()));
            }
        }
        if m.cells.iter().any(|c| c.game.category() == cat) {
            row(&mut out, &format!("{cat} Average"), &|d| m.category_average(cat, d));
        }
    }
    out
}

pub fn episodes_to_jsonl(episodes: &[EpisodeRecord]) -> String {
    episodes
        .iter()
        .map(|e| serde_json::to_string(e).expect("episodes serialize") + "\n")
        .collect()
}

pub fn episodes_from_jsonl(text: &str) -> Result<Vec<EpisodeRecord>, ReportError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| ReportError::Parse {
                line: i + 1,
                reason: e.to_string(),
            })
        })
        .collect()
}

/// Writes `metrics.tsv`, `episodes.log` and `report.txt` into `dir`.
pub fn write_report(dir: &Path, metrics: &MetricsTable, episodes: &[EpisodeRecord]) -> Result<(), ReportError> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(METRICS_FILE), to_tsv(metrics))?;
    fs::write(dir.join(EPISODES_FILE), episodes_to_jsonl(episodes))?;
    fs::write(dir.join(REPORT_FILE), render_table(metrics))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_cell() -> MetricsTable {
        MetricsTable {
            max_turns: 3,
            cells: vec![CellRates {
                game: GameKind::TextSudoku,
                difficulty: Difficulty::Easy,
                episodes: 10,
                errors: 0,
                rates: vec![0.5, 0.6, 0.7],
            }],
        }
    }

    #[test]
    fn turn_columns_in_order() {
        let tsv = to_tsv(&one_cell());
        let mut lines = tsv.lines();
        assert_eq!(lines.next().unwrap(), "game\tdifficulty\tepisodes\terrors\t#1\t#2\t#3");
        assert_eq!(lines.next().unwrap(), "text_sudoku\teasy\t10\t0\t0.5\t0.6\t0.7");
        let table = render_table(&one_cell());
        let sudoku = table.lines().find(|l| l.starts_with("Text Sudoku")).unwrap();
        let a = sudoku.find("50.0").unwrap();
        assert!(a < sudoku.find("60.0").unwrap() && sudoku.find("60.0").unwrap() < sudoku.find("70.0").unwrap());
    }

    #[test]
    fn tsv_round_trip() {
        let mut m = one_cell();
        m.cells[0].rates = vec![1.0 / 3.0, 0.1 + 0.2, 1.0];
        assert_eq!(from_tsv(&to_tsv(&m)).unwrap(), m);
    }

    #[test]
    fn bad_rows_are_reported() {
        let err = from_tsv("game\tdifficulty\tepisodes\terrors\t#1\nfoo\teasy\t1\t0\t1\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }
}
