//! Shared data model: games, difficulty levels, per-game constraint payloads,
//! verdicts, episode records, and the one-line instance record format.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("unknown game `{0}`")]
    UnknownGame(String),
    #[error("unknown difficulty `{0}`")]
    UnknownDifficulty(String),
    #[error("malformed instance record: {0}")]
    Record(#[from] serde_json::Error),
}

/// The eight puzzle games. The first four produce single-line answers (1D),
/// the last four produce grids or lists (2D).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameKind {
    AnagramScribble,
    PasswordGame,
    BracketGame,
    StringSearch,
    CrosswordArranger,
    TextSudoku,
    Islands,
    OrderingText,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Category {
    #[serde(rename = "1D")]
    OneD,
    #[serde(rename = "2D")]
    TwoD,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::OneD => "1D",
            Category::TwoD => "2D",
        })
    }
}

impl GameKind {
    pub const ALL: [GameKind; 8] = [
        GameKind::AnagramScribble,
        GameKind::PasswordGame,
        GameKind::BracketGame,
        GameKind::StringSearch,
        GameKind::CrosswordArranger,
        GameKind::TextSudoku,
        GameKind::Islands,
        GameKind::OrderingText,
    ];

    pub fn slug(self) -> &'static str {
        match self {
            GameKind::AnagramScribble => "anagram_scribble",
            GameKind::PasswordGame => "password_game",
            GameKind::BracketGame => "bracket_game",
            GameKind::StringSearch => "string_search",
            GameKind::CrosswordArranger => "crossword_arranger",
            GameKind::TextSudoku => "text_sudoku",
            GameKind::Islands => "islands",
            GameKind::OrderingText => "ordering_text",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            GameKind::AnagramScribble => "Anagram Scribble",
            GameKind::PasswordGame => "Password Game",
            GameKind::BracketGame => "Bracket Game",
            GameKind::StringSearch => "String Search",
            GameKind::CrosswordArranger => "Crossword Arranger",
            GameKind::TextSudoku => "Text Sudoku",
            GameKind::Islands => "Islands",
            GameKind::OrderingText => "Ordering Text",
        }
    }

    pub fn category(self) -> Category {
        match self {
            GameKind::AnagramScribble
            | GameKind::PasswordGame
            | GameKind::BracketGame
            | GameKind::StringSearch => Category::OneD,
            _ => Category::TwoD,
        }
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for GameKind {
    type Err = ModelError;

    /// Accepts the slug (`text_sudoku`) or the short name (`sudoku`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        let game = match key.as_str() {
            "anagram_scribble" | "anagram" => GameKind::AnagramScribble,
            "password_game" | "password" => GameKind::PasswordGame,
            "bracket_game" | "bracket" => GameKind::BracketGame,
            "string_search" | "string" => GameKind::StringSearch,
            "crossword_arranger" | "crossword" => GameKind::CrosswordArranger,
            "text_sudoku" | "sudoku" => GameKind::TextSudoku,
            "islands" => GameKind::Islands,
            "ordering_text" | "ordering" => GameKind::OrderingText,
            _ => return Err(ModelError::UnknownGame(s.to_string())),
        };
        Ok(game)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Difficulty {
    Easy,
    Medium,
    Hard,
}

impl Difficulty {
    pub const ALL: [Difficulty; 3] = [Difficulty::Easy, Difficulty::Medium, Difficulty::Hard];

    pub fn slug(self) -> &'static str {
        match self {
            Difficulty::Easy => "easy",
            Difficulty::Medium => "medium",
            Difficulty::Hard => "hard",
        }
    }
}

impl fmt::Display for Difficulty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for Difficulty {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "easy" => Ok(Difficulty::Easy),
            "medium" | "med" => Ok(Difficulty::Medium),
            "hard" => Ok(Difficulty::Hard),
            _ => Err(ModelError::UnknownDifficulty(s.to_string())),
        }
    }
}

// ---------------------------------------------------------------------------
// Constraint payloads
// ---------------------------------------------------------------------------

/// Every rule parameter of one puzzle, tagged by game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstraintSet {
    Anagram(AnagramConstraints),
    Password(PasswordConstraints),
    Bracket(BracketConstraints),
    StringSearch(StringSearchConstraints),
    Crossword(CrosswordConstraints),
    Sudoku(SudokuConstraints),
    Islands(IslandsConstraints),
    Ordering(OrderingConstraints),
}

impl ConstraintSet {
    pub fn game(&self) -> GameKind {
        match self {
            ConstraintSet::Anagram(_) => GameKind::AnagramScribble,
            ConstraintSet::Password(_) => GameKind::PasswordGame,
            ConstraintSet::Bracket(_) => GameKind::BracketGame,
            ConstraintSet::StringSearch(_) => GameKind::StringSearch,
            ConstraintSet::Crossword(_) => GameKind::CrosswordArranger,
            ConstraintSet::Sudoku(_) => GameKind::TextSudoku,
            ConstraintSet::Islands(_) => GameKind::Islands,
            ConstraintSet::Ordering(_) => GameKind::OrderingText,
        }
    }

    /// Canonical single-line JSON of the payload, used to detect duplicate puzzles.
    pub fn canonical(&self) -> String {
        serde_json::to_string(self).expect("constraint payloads always serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnagramConstraints {
    pub n: usize,
    pub chars: Vec<char>,
    pub repeatable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PasswordConstraints {
    pub rules: Vec<PasswordRule>,
}

/// Characters counted by [`PasswordRule::SpecialCount`].
pub const SPECIAL_CHARS: [char; 8] = ['!', '@', '#', '$', '%', '^', '&', '*'];
/// Characters counted by [`PasswordRule::RomanDigitCount`]. Uppercase only.
pub const ROMAN_DIGITS: [char; 7] = ['I', 'V', 'X', 'L', 'C', 'D', 'M'];

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PasswordRule {
    TotalChars { n: usize },
    UppercaseCount { n: usize },
    LowercaseCount { n: usize },
    LatinCount { n: usize },
    DigitCount { n: usize },
    RomanDigitCount { n: usize },
    SpecialCount { n: usize },
    CharCount { n: usize, ch: char },
    ContainsString { s: String },
    CapitalOf { country: String },
    ContinentOf { country: String },
    /// Expression in digit form, e.g. `4 + 2`.
    MathDigits { expr: String },
    /// Expression in word form, e.g. `seven times six`.
    MathWords { expr: String },
}

impl PasswordRule {
    /// Counting kinds may appear at most once in a rule list.
    pub fn is_repeatable(&self) -> bool {
        matches!(
            self,
            PasswordRule::CharCount { .. }
                | PasswordRule::ContainsString { .. }
                | PasswordRule::CapitalOf { .. }
                | PasswordRule::ContinentOf { .. }
                | PasswordRule::MathDigits { .. }
                | PasswordRule::MathWords { .. }
        )
    }

    /// Discriminant name, handy for uniqueness checks.
    pub fn kind_name(&self) -> &'static str {
        match self {
            PasswordRule::TotalChars { .. } => "total_chars",
            PasswordRule::UppercaseCount { .. } => "uppercase_count",
            PasswordRule::LowercaseCount { .. } => "lowercase_count",
            PasswordRule::LatinCount { .. } => "latin_count",
            PasswordRule::DigitCount { .. } => "digit_count",
            PasswordRule::RomanDigitCount { .. } => "roman_digit_count",
            PasswordRule::SpecialCount { .. } => "special_count",
            PasswordRule::CharCount { .. } => "char_count",
            PasswordRule::ContainsString { .. } => "contains_string",
            PasswordRule::CapitalOf { .. } => "capital_of",
            PasswordRule::ContinentOf { .. } => "continent_of",
            PasswordRule::MathDigits { .. } => "math_digits",
            PasswordRule::MathWords { .. } => "math_words",
        }
    }

    /// The rule as it appears after "the text has".
    pub fn clause(&self) -> String {
        match self {
            PasswordRule::TotalChars { n } => format!("only {n} characters"),
            PasswordRule::UppercaseCount { n } => format!("{n} uppercase characters"),
            PasswordRule::LowercaseCount { n } => format!("{n} lowercase characters"),
            PasswordRule::LatinCount { n } => format!("{n} latin character"),
            PasswordRule::DigitCount { n } => format!("{n} number digits"),
            PasswordRule::RomanDigitCount { n } => format!("{n} number of roman digits"),
            PasswordRule::SpecialCount { n } => format!(
                "{n} special characters, including '!', '@', '#', '$', '%', '^', '&', '*'"
            ),
            PasswordRule::CharCount { n, ch } => format!("{n} '{ch}' character"),
            PasswordRule::ContainsString { s } => format!("\"{s}\" string"),
            PasswordRule::CapitalOf { country } => format!("the capital city of {country}"),
            PasswordRule::ContinentOf { country } => format!("the continent of {country}"),
            PasswordRule::MathDigits { expr } | PasswordRule::MathWords { expr } => {
                format!("a number that equals to {expr}")
            }
        }
    }

    /// Full rule text as listed in the prompt and quoted in feedback.
    pub fn text(&self) -> String {
        format!("the text has {}", self.clause())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BracketKind {
    Block,
    Curly,
    Round,
    Angle,
}

impl BracketKind {
    pub const ALL: [BracketKind; 4] = [
        BracketKind::Block,
        BracketKind::Curly,
        BracketKind::Round,
        BracketKind::Angle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BracketKind::Block => "block",
            BracketKind::Curly => "curly",
            BracketKind::Round => "round",
            BracketKind::Angle => "angle",
        }
    }

    pub fn open(self) -> char {
        match self {
            BracketKind::Block => '[',
            BracketKind::Curly => '{',
            BracketKind::Round => '(',
            BracketKind::Angle => '<',
        }
    }

    pub fn close(self) -> char {
        match self {
            BracketKind::Block => ']',
            BracketKind::Curly => '}',
            BracketKind::Round => ')',
            BracketKind::Angle => '>',
        }
    }

    pub fn from_open(c: char) -> Option<Self> {
        BracketKind::ALL.into_iter().find(|k| k.open() == c)
    }

    pub fn from_close(c: char) -> Option<Self> {
        BracketKind::ALL.into_iter().find(|k| k.close() == c)
    }

    pub fn is_bracket(c: char) -> bool {
        Self::from_open(c).is_some() || Self::from_close(c).is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub word: String,
    pub bracket: BracketKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketConstraints {
    pub base_text: String,
    pub placements: Vec<Placement>,
    pub depth: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexRuleKind {
    Palindrome,
    HasConsecutiveConsonants,
    NoConsecutiveConsonants,
    HasConsecutiveVowels,
    NoConsecutiveVowels,
    MoreVowels,
    FewerVowels,
    EqualVowels,
}

/// Mutually exclusive groups of complex string rules; at most one member per group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExclusionGroup {
    Consonants,
    Vowels,
    Balance,
}

impl ComplexRuleKind {
    pub const ALL: [ComplexRuleKind; 8] = [
        ComplexRuleKind::Palindrome,
        ComplexRuleKind::HasConsecutiveConsonants,
        ComplexRuleKind::NoConsecutiveConsonants,
        ComplexRuleKind::HasConsecutiveVowels,
        ComplexRuleKind::NoConsecutiveVowels,
        ComplexRuleKind::MoreVowels,
        ComplexRuleKind::FewerVowels,
        ComplexRuleKind::EqualVowels,
    ];

    pub fn group(self) -> Option<ExclusionGroup> {
        use ComplexRuleKind::*;
        match self {
            Palindrome => None,
            HasConsecutiveConsonants | NoConsecutiveConsonants => Some(ExclusionGroup::Consonants),
            HasConsecutiveVowels | NoConsecutiveVowels => Some(ExclusionGroup::Vowels),
            MoreVowels | FewerVowels | EqualVowels => Some(ExclusionGroup::Balance),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexRule {
    pub kind: ComplexRuleKind,
    /// Run length for the "N consecutive" forms; 2 when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub run_length: Option<usize>,
}

impl ComplexRule {
    pub fn new(kind: ComplexRuleKind) -> Self {
        ComplexRule {
            kind,
            run_length: None,
        }
    }

    pub fn run(&self) -> usize {
        self.run_length.unwrap_or(2)
    }

    pub fn text(&self) -> String {
        let run = self.run();
        match self.kind {
            ComplexRuleKind::Palindrome => "forms a palindrome".to_string(),
            ComplexRuleKind::HasConsecutiveConsonants => format!("has {run} consecutive consonants"),
            ComplexRuleKind::NoConsecutiveConsonants => {
                format!("does not have {run} consecutive consonants")
            }
            ComplexRuleKind::HasConsecutiveVowels => format!("has {run} consecutive vowels"),
            ComplexRuleKind::NoConsecutiveVowels => format!("does not have {run} consecutive vowels"),
            ComplexRuleKind::MoreVowels => "has more vowels than consonants".to_string(),
            ComplexRuleKind::FewerVowels => "has less vowels than consonants".to_string(),
            ComplexRuleKind::EqualVowels => "has the same amount of vowels and consonants".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringSearchConstraints {
    pub haystack: String,
    pub length: usize,
    pub must_contain: Vec<char>,
    pub must_exclude: Vec<char>,
    pub complex: Vec<ComplexRule>,
}

impl StringSearchConstraints {
    pub fn constraint_count(&self) -> usize {
        self.must_contain.len() + self.must_exclude.len() + self.complex.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosswordConstraints {
    pub n: usize,
    pub words: Vec<String>,
}

/// Blank cell marker in sudoku grids.
pub const SUDOKU_BLANK: char = '_';

/// A square grid of single-character cells. Serializes as one string with
/// rows joined by `/` so records stay on one line.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolGrid {
    rows: Vec<Vec<char>>,
}

/// Row separator token used when a grid is written as a single string.
pub const ROW_SEPARATOR: char = '/';

impl SymbolGrid {
    pub fn new(rows: Vec<Vec<char>>) -> Self {
        SymbolGrid { rows }
    }

    pub fn parse_rows(s: &str) -> Self {
        let rows = if s.is_empty() {
            Vec::new()
        } else {
            s.split(ROW_SEPARATOR).map(|r| r.chars().collect()).collect()
        };
        SymbolGrid { rows }
    }

    pub fn rows(&self) -> &[Vec<char>] {
        &self.rows
    }

    pub fn side(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, r: usize, c: usize) -> char {
        self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: char) {
        self.rows[r][c] = v;
    }

    pub fn blanks(&self) -> usize {
        self.rows
            .iter()
            .flatten()
            .filter(|&&c| c == SUDOKU_BLANK)
            .count()
    }

    /// Rows joined by newlines, the shape graders expect as an answer.
    pub fn to_lines(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().collect::<String>())
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_token_string(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().collect::<String>())
            .collect::<Vec<_>>()
            .join(&ROW_SEPARATOR.to_string())
    }
}

impl Serialize for SymbolGrid {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_token_string())
    }
}

impl<'de> Deserialize<'de> for SymbolGrid {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Ok(SymbolGrid::parse_rows(&s))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SudokuConstraints {
    /// Sub-grid side: 2 for 4x4 boards, 3 for 9x9.
    #[serde(rename = "box")]
    pub box_size: usize,
    pub alphabet: Vec<char>,
    pub grid: SymbolGrid,
}

impl SudokuConstraints {
    pub fn side(&self) -> usize {
        self.box_size * self.box_size
    }
}

pub const WATER: char = '.';
pub const LAND: char = '#';
pub const TREE: char = 'o';

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IslandsConstraints {
    pub n: usize,
    pub islands: usize,
    pub size_min: usize,
    pub size_max: usize,
    /// Number of islands carrying at least one tree; unconstrained when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree_islands: Option<usize>,
    pub trees_total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrderingCondition {
    EveryVowel,
    EveryConsonant,
    VowelAfterConsonant,
    ConsonantAfterVowel,
    ConsecutiveVowels { n: usize },
    ConsecutiveConsonants { n: usize },
    LengthExactly { n: usize },
    LengthNot { n: usize },
    LengthMore { n: usize },
    LengthLess { n: usize },
    LengthBetween { more: usize, less: usize },
    LengthMoreNot { more: usize, not: usize },
    LengthLessNot { less: usize, not: usize },
    StartsWith { s: String },
    EndsWith { s: String },
    StartsEnds { prefix: String, suffix: String },
    Contains { s: String },
    ContainsExactly { n: usize, s: String },
}

pub fn is_vowel(c: char) -> bool {
    matches!(c.to_ascii_lowercase(), 'a' | 'e' | 'i' | 'o' | 'u')
}

pub fn is_consonant(c: char) -> bool {
    c.is_ascii_alphabetic() && !is_vowel(c)
}

/// Non-overlapping occurrences, scanning left to right.
pub fn count_occurrences(haystack: &str, needle: &str) -> usize {
    if needle.is_empty() {
        return 0;
    }
    haystack.matches(needle).count()
}

impl OrderingCondition {
    /// Per-occurrence conditions ("every ...") score once per match.
    pub fn is_per_occurrence(&self) -> bool {
        use OrderingCondition::*;
        matches!(
            self,
            EveryVowel
                | EveryConsonant
                | VowelAfterConsonant
                | ConsonantAfterVowel
                | ConsecutiveVowels { .. }
                | ConsecutiveConsonants { .. }
        )
    }

    /// How many times the condition fires for `word` (0 or 1 for boolean conditions).
    pub fn multiplicity(&self, word: &str) -> i64 {
        use OrderingCondition::*;
        let chars: Vec<char> = word.chars().collect();
        let len = chars.len();
        let windows = |n: usize, pred: fn(char) -> bool| -> i64 {
            if n == 0 || n > len {
                return 0;
            }
            chars.windows(n).filter(|w| w.iter().all(|&c| pred(c))).count() as i64
        };
        let flag = |b: bool| i64::from(b);
        match self {
            EveryVowel => chars.iter().filter(|&&c| is_vowel(c)).count() as i64,
            EveryConsonant => chars.iter().filter(|&&c| is_consonant(c)).count() as i64,
            VowelAfterConsonant => chars
                .windows(2)
                .filter(|w| is_consonant(w[0]) && is_vowel(w[1]))
                .count() as i64,
            ConsonantAfterVowel => chars
                .windows(2)
                .filter(|w| is_vowel(w[0]) && is_consonant(w[1]))
                .count() as i64,
            ConsecutiveVowels { n } => windows(*n, is_vowel),
            ConsecutiveConsonants { n } => windows(*n, is_consonant),
            LengthExactly { n } => flag(len == *n),
            LengthNot { n } => flag(len != *n),
            LengthMore { n } => flag(len > *n),
            LengthLess { n } => flag(len < *n),
            LengthBetween { more, less } => flag(len > *more && len < *less),
            LengthMoreNot { more, not } => flag(len > *more && len != *not),
            LengthLessNot { less, not } => flag(len < *less && len != *not),
            StartsWith { s } => flag(word.starts_with(s.as_str())),
            EndsWith { s } => flag(word.ends_with(s.as_str())),
            StartsEnds { prefix, suffix } => {
                flag(word.starts_with(prefix.as_str()) && word.ends_with(suffix.as_str()))
            }
            Contains { s } => flag(word.contains(s.as_str())),
            ContainsExactly { n, s } => flag(count_occurrences(word, s) == *n),
        }
    }

    pub fn text(&self) -> String {
        use OrderingCondition::*;
        match self {
            EveryVowel => "every vowel".to_string(),
            EveryConsonant => "every consonant".to_string(),
            VowelAfterConsonant => "every vowel right after a consonant".to_string(),
            ConsonantAfterVowel => "every consonant right after a vowel".to_string(),
            ConsecutiveVowels { n: 2 } => "every pair of consecutive vowels".to_string(),
            ConsecutiveVowels { n } => format!("every {n} consecutive vowels"),
            ConsecutiveConsonants { n: 2 } => "every pair of consecutive consonants".to_string(),
            ConsecutiveConsonants { n } => format!("every {n} consecutive consonants"),
            LengthExactly { n } => format!("word that has exactly {n} characters"),
            LengthNot { n } => format!("word not equal to {n} characters"),
            LengthMore { n } => format!("word more than {n} characters"),
            LengthLess { n } => format!("word less than {n} characters"),
            LengthBetween { more, less } => {
                format!("word more than {more} characters and less than {less} characters")
            }
            LengthMoreNot { more, not } => {
                format!("word more than {more} characters but not equal to {not} characters")
            }
            LengthLessNot { less, not } => {
                format!("word less than {less} characters but not equal to {not} characters")
            }
            StartsWith { s } => format!("word starts with '{s}'"),
            EndsWith { s } => format!("word ends with '{s}'"),
            StartsEnds { prefix, suffix } => {
                format!("word starts with '{prefix}' and ends with '{suffix}'")
            }
            Contains { s } => format!("there exists '{s}' in the word"),
            ContainsExactly { n, s } => format!("there exists exactly {n} '{s}' in the word"),
        }
    }
}

/// Two prompt phrasings for a scoring rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleStyle {
    /// `<condition> gets <p> points`
    Gets,
    /// `add <p> points if <condition>`
    AddIf,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScoringRule {
    pub condition: OrderingCondition,
    pub points: i32,
    pub style: RuleStyle,
}

impl ScoringRule {
    pub fn score(&self, word: &str) -> i64 {
        i64::from(self.points) * self.condition.multiplicity(word)
    }

    pub fn text(&self) -> String {
        let unit = if self.points.abs() == 1 { "point" } else { "points" };
        match self.style {
            RuleStyle::Gets => format!("{} gets {} {unit}", self.condition.text(), self.points),
            RuleStyle::AddIf => format!("add {} {unit} if {}", self.points, self.condition.text()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingConstraints {
    pub rules: Vec<ScoringRule>,
    pub words: Vec<String>,
}

impl OrderingConstraints {
    pub fn score(&self, word: &str) -> i64 {
        self.rules.iter().map(|r| r.score(word)).sum()
    }
}

// ---------------------------------------------------------------------------
// Instances, verdicts, episodes
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuzzleInstance {
    pub id: String,
    pub game: GameKind,
    pub difficulty: Difficulty,
    pub seed: u64,
    pub constraints: ConstraintSet,
    pub prompt: String,
}

/// Stable identifier derived from `(game, difficulty, seed)`.
pub fn instance_id(game: GameKind, difficulty: Difficulty, seed: u64) -> String {
    let digest = Sha256::digest(format!("{}:{}:{seed}", game.slug(), difficulty.slug()).as_bytes());
    format!(
        "{}-{}-{}",
        game.slug(),
        difficulty.slug(),
        &hex::encode(digest)[..16]
    )
}

/// One-line JSON record; newlines inside text fields are escaped.
pub fn serialize_instance(instance: &PuzzleInstance) -> String {
    serde_json::to_string(instance).expect("instances always serialize")
}

pub fn deserialize_instance(line: &str) -> Result<PuzzleInstance, ModelError> {
    Ok(serde_json::from_str(line.trim_end_matches(['\r', '\n']))?)
}

/// Reads every non-blank line of a dataset file.
pub fn read_instances(text: &str) -> Result<Vec<PuzzleInstance>, ModelError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(deserialize_instance)
        .collect()
}

/// Grading outcome. `solved` holds exactly when `feedback` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub solved: bool,
    pub feedback: Vec<String>,
}

impl Verdict {
    pub fn solved() -> Self {
        Verdict {
            solved: true,
            feedback: Vec::new(),
        }
    }

    pub fn from_feedback(feedback: Vec<String>) -> Self {
        Verdict {
            solved: feedback.is_empty(),
            feedback,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TurnRecord {
    /// Raw player text before grader normalization.
    pub response: String,
    pub verdict: Verdict,
    pub latency_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeRecord {
    pub instance_id: String,
    pub game: GameKind,
    pub difficulty: Difficulty,
    pub turns: Vec<TurnRecord>,
    /// 1-based turn of the first solved verdict.
    pub solved_at: Option<usize>,
    /// Set when the player failed with a transport error and the episode was aborted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl EpisodeRecord {
    pub fn solved_by(&self, turn: usize) -> bool {
        self.solved_at.is_some_and(|t| t <= turn)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn categories_split_four_and_four() {
        let one_d = GameKind::ALL
            .iter()
            .filter(|g| g.category() == Category::OneD)
            .count();
        assert_eq!(one_d, 4);
        assert!(GameKind::ALL[..4].iter().all(|g| g.category() == Category::OneD));
        assert!(GameKind::ALL[4..].iter().all(|g| g.category() == Category::TwoD));
    }

    #[test]
    fn difficulty_is_ordered() {
        assert!(Difficulty::Easy < Difficulty::Medium && Difficulty::Medium < Difficulty::Hard);
    }

    #[test]
    fn game_names_parse() {
        for g in GameKind::ALL {
            assert_eq!(g.slug().parse::<GameKind>().unwrap(), g);
        }
        assert_eq!("sudoku".parse::<GameKind>().unwrap(), GameKind::TextSudoku);
        assert!("chess".parse::<GameKind>().is_err());
    }

    #[test]
    fn ids_are_deterministic_and_seed_sensitive() {
        let a = instance_id(GameKind::TextSudoku, Difficulty::Hard, 1);
        assert_eq!(a, instance_id(GameKind::TextSudoku, Difficulty::Hard, 1));
        assert_ne!(a, instance_id(GameKind::TextSudoku, Difficulty::Hard, 2));
        assert_ne!(a, instance_id(GameKind::TextSudoku, Difficulty::Medium, 1));
    }

    #[test]
    fn grid_token_string_is_newline_free() {
        let g = SymbolGrid::parse_rows("A_CD/CD_B/_AD_/DCBA");
        assert_eq!(g.side(), 4);
        assert_eq!(g.blanks(), 4);
        assert_eq!(g.to_token_string(), "A_CD/CD_B/_AD_/DCBA");
        assert_eq!(g.to_lines(), "A_CD\nCD_B\n_AD_\nDCBA");
    }

    #[test]
    fn verdict_invariant() {
        assert!(Verdict::from_feedback(vec![]).solved);
        assert!(!Verdict::from_feedback(vec!["x".into()]).solved);
    }

    #[test]
    fn scoring_rule_texts() {
        let r = ScoringRule {
            condition: OrderingCondition::Contains { s: "g".into() },
            points: 1,
            style: RuleStyle::AddIf,
        };
        assert_eq!(r.text(), "add 1 point if there exists 'g' in the word");
        let r = ScoringRule {
            condition: OrderingCondition::LengthLess { n: 5 },
            points: 10,
            style: RuleStyle::Gets,
        };
        assert_eq!(r.text(), "word less than 5 characters gets 10 points");
    }

    #[test]
    fn occurrence_counting_is_non_overlapping() {
        assert_eq!(count_occurrences("aaa", "aa"), 1);
        assert_eq!(count_occurrences("banana", "an"), 2);
        assert_eq!(count_occurrences("abc", ""), 0);
    }
}
