//! Word list, country facts, and arithmetic expressions shared by the
//! generators and graders.
//!
//! Both data files are embedded in the binary. A process can swap in its own
//! files once at startup with [`Resources::install`]; afterwards every
//! generator and grader reads the installed copy.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

const BUNDLED_WORDS: &str = include_str!("../data/words.txt");
const BUNDLED_COUNTRIES: &str = include_str!("../data/countries.tsv");

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("unknown country `{0}`")]
    UnknownCountry(String),
    #[error("invalid word `{word}` on line {line}: words must be lowercase a-z")]
    InvalidWord { line: usize, word: String },
    #[error("malformed knowledge row {line}: expected country, capital, continent")]
    MalformedRow { line: usize },
    #[error("cannot parse expression `{0}`")]
    Expression(String),
    #[error("resources were already initialized")]
    AlreadyInstalled,
    #[error("i/o error reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone)]
pub struct Lexicon {
    words: HashSet<String>,
    by_length: BTreeMap<usize, Vec<String>>,
}

impl Lexicon {
    /// Parses one word per line. Blank lines and `#` comments are skipped.
    pub fn from_text(text: &str) -> Result<Self, LexiconError> {
        let mut words = HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let w = raw.trim();
            if w.is_empty() || w.starts_with('#') {
                continue;
            }
            if !w.bytes().all(|b| b.is_ascii_lowercase()) {
                return Err(LexiconError::InvalidWord {
                    line: i + 1,
                    word: w.to_string(),
                });
            }
            words.insert(w.to_string());
        }
        let mut by_length: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for w in &words {
            by_length.entry(w.len()).or_default().push(w.clone());
        }
        // Sorted buckets keep seeded sampling independent of hash order.
        for bucket in by_length.values_mut() {
            bucket.sort();
        }
        Ok(Lexicon { words, by_length })
    }

    pub fn load(path: &Path) -> Result<Self, LexiconError> {
        Self::from_text(&read(path)?)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Case-insensitive membership.
    pub fn is_word(&self, s: &str) -> bool {
        !s.is_empty() && self.words.contains(&s.to_lowercase())
    }

    pub fn words_of_length(&self, n: usize) -> &[String] {
        self.by_length.get(&n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_length.keys().copied()
    }

    /// Words of exactly `length` letters buildable from `allowed`. With
    /// `repeatable` any letter of `allowed` may be reused; without it the
    /// word's letter multiset must fit inside the multiset of `allowed`.
    pub fn words_matching(&self, length: usize, allowed: &[char], repeatable: bool) -> Vec<&str> {
        let mut budget = [0usize; 26];
        for c in allowed {
            if c.is_ascii_lowercase() {
                budget[(*c as u8 - b'a') as usize] += 1;
            }
        }
        self.words_of_length(length)
            .iter()
            .filter(|w| fits(w, &budget, repeatable))
            .map(String::as_str)
            .collect()
    }
}

fn fits(word: &str, budget: &[usize; 26], repeatable: bool) -> bool {
    let mut used = [0usize; 26];
    for b in word.bytes() {
        let i = (b - b'a') as usize;
        used[i] += 1;
        if budget[i] == 0 || (!repeatable && used[i] > budget[i]) {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KnowledgeKind {
    Capital,
    Continent,
}

#[derive(Debug, Clone)]
pub struct KnowledgeBase {
    capitals: HashMap<String, String>,
    continents: HashMap<String, String>,
    countries: Vec<String>,
}

impl KnowledgeBase {
    /// Tab-separated `country, capital, continent`; a header row starting with
    /// `country` is skipped.
    pub fn from_tsv(text: &str) -> Result<Self, LexiconError> {
        let mut kb = KnowledgeBase {
            capitals: HashMap::new(),
            continents: HashMap::new(),
            countries: Vec::new(),
        };
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() || (i == 0 && line.starts_with("country")) {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            if cols.len() != 3 || cols.iter().any(|c| c.is_empty()) {
                return Err(LexiconError::MalformedRow { line: i + 1 });
            }
            if kb.capitals.insert(cols[0].to_string(), cols[1].to_string()).is_none() {
                kb.countries.push(cols[0].to_string());
            }
            kb.continents.insert(cols[0].to_string(), cols[2].to_string());
        }
        kb.countries.sort();
        Ok(kb)
    }

    pub fn load(path: &Path) -> Result<Self, LexiconError> {
        Self::from_tsv(&read(path)?)
    }

    pub fn countries(&self) -> &[String] {
        &self.countries
    }

    pub fn lookup(&self, kind: KnowledgeKind, country: &str) -> Result<&str, LexiconError> {
        let table = match kind {
            KnowledgeKind::Capital => &self.capitals,
            KnowledgeKind::Continent => &self.continents,
        };
        table
            .get(country)
            .map(String::as_str)
            .ok_or_else(|| LexiconError::UnknownCountry(country.to_string()))
    }
}

/// Lowercase letters of a place name with spaces and punctuation dropped, the
/// form a space-free password must contain.
pub fn letters_only(s: &str) -> String {
    s.chars()
        .filter(char::is_ascii_alphabetic)
        .map(|c| c.to_ascii_lowercase())
        .collect()
}

fn read(path: &Path) -> Result<String, LexiconError> {
    std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// The loaded word list and knowledge tables.
#[derive(Debug, Clone)]
pub struct Resources {
    pub lexicon: Lexicon,
    pub knowledge: KnowledgeBase,
}

static RESOURCES: OnceLock<Resources> = OnceLock::new();

impl Resources {
    pub fn bundled() -> Resources {
        Resources {
            lexicon: Lexicon::from_text(BUNDLED_WORDS).expect("bundled word list is valid"),
            knowledge: KnowledgeBase::from_tsv(BUNDLED_COUNTRIES)
                .expect("bundled knowledge table is valid"),
        }
    }

    /// Replaces the bundled data for this process. Must run before any
    /// generator or grader touches [`Resources::get`].
    pub fn install(resources: Resources) -> Result<(), LexiconError> {
        RESOURCES
            .set(resources)
            .map_err(|_| LexiconError::AlreadyInstalled)
    }

    pub fn get() -> &'static Resources {
        RESOURCES.get_or_init(Resources::bundled)
    }
}

// ---------------------------------------------------------------------------
// Arithmetic expressions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Operator {
    Plus,
    Minus,
    Times,
}

impl Operator {
    pub const ALL: [Operator; 3] = [Operator::Plus, Operator::Minus, Operator::Times];

    fn symbol(self) -> &'static str {
        match self {
            Operator::Plus => "+",
            Operator::Minus => "-",
            Operator::Times => "*",
        }
    }

    fn word(self) -> &'static str {
        match self {
            Operator::Plus => "plus",
            Operator::Minus => "minus",
            Operator::Times => "times",
        }
    }

    fn apply(self, a: i64, b: i64) -> i64 {
        match self {
            Operator::Plus => a + b,
            Operator::Minus => a - b,
            Operator::Times => a * b,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExprForm {
    Digits,
    Words,
}

/// Largest operand the expression grammar produces.
pub const MAX_OPERAND: u32 = 20;

const NUMBER_WORDS: [&str; 21] = [
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
    "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen",
    "nineteen", "twenty",
];

/// A binary expression `lhs op rhs` with operands in `0..=20`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expression {
    pub lhs: u32,
    pub op: Operator,
    pub rhs: u32,
}

impl Expression {
    pub fn value(&self) -> i64 {
        self.op.apply(i64::from(self.lhs), i64::from(self.rhs))
    }

    pub fn render(&self, form: ExprForm) -> String {
        match form {
            ExprForm::Digits => format!("{} {} {}", self.lhs, self.op.symbol(), self.rhs),
            ExprForm::Words => format!(
                "{} {} {}",
                NUMBER_WORDS[self.lhs as usize],
                self.op.word(),
                NUMBER_WORDS[self.rhs as usize]
            ),
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(ExprForm::Digits))
    }
}

/// Evaluates `lhs op rhs` written in digit form (`4 + 2`) or word form
/// (`seven times six`).
pub fn eval_expression(expr: &str, form: ExprForm) -> Result<i64, LexiconError> {
    parse_expression(expr, form).map(|e| e.value())
}

pub fn parse_expression(expr: &str, form: ExprForm) -> Result<Expression, LexiconError> {
    let bad = || LexiconError::Expression(expr.to_string());
    let tokens: Vec<&str> = expr.split_whitespace().collect();
    let [lhs, op, rhs] = tokens.as_slice() else {
        return Err(bad());
    };
    let operand = |t: &str| -> Option<u32> {
        let v = match form {
            ExprForm::Digits => t.parse::<u32>().ok()?,
            ExprForm::Words => {
                let t = t.to_ascii_lowercase();
                NUMBER_WORDS.iter().position(|w| *w == t)? as u32
            }
        };
        (v <= MAX_OPERAND).then_some(v)
    };
    let op = Operator::ALL
        .into_iter()
        .find(|o| match form {
            ExprForm::Digits => o.symbol() == *op,
            ExprForm::Words => o.word().eq_ignore_ascii_case(op),
        })
        .ok_or_else(bad)?;
    Ok(Expression {
        lhs: operand(lhs).ok_or_else(bad)?,
        op,
        rhs: operand(rhs).ok_or_else(bad)?,
    })
}
