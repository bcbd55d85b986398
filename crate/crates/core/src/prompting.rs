//! Prompt templates per game, and assembly of zero-shot, one-shot and
//! multi-turn message lists.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    AnagramConstraints, BracketConstraints, ConstraintSet, CrosswordConstraints,
    IslandsConstraints, OrderingConstraints, PasswordConstraints, PuzzleInstance,
    StringSearchConstraints, SudokuConstraints,
};

pub const RETRY_HEADER: &str = "Your previous answer is incorrect.";
pub const RETRY_FOOTER: &str = "Please answer again. Print only the answer.";

pub fn render_prompt(instance: &PuzzleInstance) -> String {
    render_constraints(&instance.constraints)
}

pub fn render_constraints(c: &ConstraintSet) -> String {
    match c {
        ConstraintSet::Anagram(a) => anagram(a),
        ConstraintSet::Password(p) => password(p),
        ConstraintSet::Bracket(b) => bracket(b),
        ConstraintSet::StringSearch(s) => string_search(s),
        ConstraintSet::Crossword(x) => crossword(x),
        ConstraintSet::Sudoku(s) => sudoku(s),
        ConstraintSet::Islands(i) => islands(i),
        ConstraintSet::Ordering(o) => ordering(o),
    }
}

fn quoted(chars: &[char]) -> String {
    chars
        .iter()
        .map(|c| format!("'{c}'"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn anagram(c: &AnagramConstraints) -> String {
    let usage = if c.repeatable {
        "Each character can be used multiple times."
    } else {
        "Each character can only be used once."
    };
    format!(
        "Construct a valid {}-character English word from the following letters:\n{}.\n{usage} Please write None if there is no valid combination. Print only the answer.",
        c.n,
        quoted(&c.chars)
    )
}

fn password(c: &PasswordConstraints) -> String {
    let mut out = String::from(
        "Please write a text string without any space by following a set of given rules. Please write only the answer and follow the following criteria:",
    );
    for rule in &c.rules {
        out.push_str("\n - ");
        out.push_str(&rule.text());
    }
    out
}

fn bracket(c: &BracketConstraints) -> String {
    let mut out = format!(
        "You are given a text {} Your job is to put some valid parenthesis brackets in the text such that:",
        c.base_text
    );
    for p in &c.placements {
        out.push_str(&format!("\n - {} is inside a {} bracket", p.word, p.bracket.name()));
    }
    out.push_str(
        "\n\nThe open and close parenthesis for block is [ ], curly is { }, round is ( ), and angle is < >.",
    );
    out.push_str(&format!(
        "\nThe bracket depth must be {} and print only the answer",
        c.depth
    ));
    out
}

fn string_search(c: &StringSearchConstraints) -> String {
    let mut out = format!(
        "You are given the following string:\n{}\n\nFind a substring of exactly {} characters long that:",
        c.haystack, c.length
    );
    if !c.must_contain.is_empty() {
        out.push_str(&format!("\n - Contains {}", quoted(&c.must_contain)));
    }
    if !c.must_exclude.is_empty() {
        out.push_str(&format!("\n - Does not contain {}", quoted(&c.must_exclude)));
    }
    for rule in &c.complex {
        out.push_str("\n - ");
        out.push_str(&rule.text());
    }
    out.push_str("\n\nPrint only the answer.");
    out
}

fn crossword(c: &CrosswordConstraints) -> String {
    let mut out = format!(
        "Given a board size of {n}x{n}, arrange a possible crossword puzzle answer from a list of words. Item in the list can only be used once.\n\nList of words:",
        n = c.n
    );
    for w in &c.words {
        out.push_str("\n - ");
        out.push_str(w);
    }
    out.push_str("\n\nPrint only the answer.");
    out
}

fn sudoku(c: &SudokuConstraints) -> String {
    let side = c.side();
    let values = c
        .alphabet
        .iter()
        .map(char::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let rows = c
        .grid
        .rows()
        .iter()
        .map(|r| r.iter().collect::<String>())
        .collect::<Vec<_>>()
        .join(" ");
    format!(
        "Please solve the {side}x{side} sudoku with {values} as the values and fill _ with the possible value and only print the answer. Follow the sudoku rule.\n{rows}"
    )
}

fn islands(c: &IslandsConstraints) -> String {
    let mut out = format!(
        "You are asked to construct a 2D {n} x {n} grid, consisting of water tiles (denoted by '.'), land tiles (denoted by '#'), and coconut tree tiles (denoted by 'o'). Coconut tree tiles are also considered as land tiles.\n\nA group of connected land tiles in 4 cardinal directions forms an island.\n\nYour 2D grid must follow the following rules:",
        n = c.n
    );
    out.push_str(&format!("\n - There must be exactly {} islands.", c.islands));
    out.push_str(&format!(
        "\n - The size of each island must be from {} to {} tiles each.",
        c.size_min, c.size_max
    ));
    if let Some(l) = c.tree_islands {
        out.push_str(&format!(
            "\n - There must be exactly {l} islands that have coconut trees on them."
        ));
    }
    out.push_str(&format!(
        "\n - There must be exactly {} total coconut trees.",
        c.trees_total
    ));
    out.push_str("\n\nPrint only the answer.");
    out
}

fn ordering(c: &OrderingConstraints) -> String {
    let mut out = String::from(
        "Given a set of rules to calculate point, sort the set of words in decreasing order.\nWhen there 2 or more words with same point, sort lexicographically.\nRules:",
    );
    for r in &c.rules {
        out.push_str("\n - ");
        out.push_str(&r.text());
    }
    out.push_str("\nWords:");
    for w in &c.words {
        out.push_str("\n - ");
        out.push_str(w);
    }
    out.push_str("\nPrint only the answer.");
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    User,
    Assistant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Message {
    pub role: Role,
    pub content: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PromptBundle {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<String>,
    pub messages: Vec<Message>,
}

/// A solved training instance shown before the test prompt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotExample {
    pub instance: PuzzleInstance,
    pub answer: String,
}

/// One earlier attempt: the raw response and the feedback it received.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interaction {
    pub response: String,
    pub feedback: Vec<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PromptError {
    #[error("example is {example} but the test instance is {test}")]
    MismatchedExample { example: String, test: String },
}

pub fn one_shot_text(example: &ShotExample, prompt: &str) -> String {
    format!(
        "Example:\n{}\nAnswer:\n{}\n\nNow solve this:\n{prompt}",
        example.instance.prompt, example.answer
    )
}

pub fn retry_text(feedback: &[String]) -> String {
    let mut out = String::from(RETRY_HEADER);
    for line in feedback {
        out.push('\n');
        out.push_str(line);
    }
    out.push('\n');
    out.push_str(RETRY_FOOTER);
    out
}

pub fn build_bundle(
    instance: &PuzzleInstance,
    example: Option<&ShotExample>,
    interactions: &[Interaction],
) -> Result<PromptBundle, PromptError> {
    let first = match example {
        Some(ex) => {
            let e = &ex.instance;
            if e.game != instance.game || e.difficulty != instance.difficulty {
                return Err(PromptError::MismatchedExample {
                    example: format!("{}/{}", e.game, e.difficulty),
                    test: format!("{}/{}", instance.game, instance.difficulty),
                });
            }
            one_shot_text(ex, &instance.prompt)
        }
        None => instance.prompt.clone(),
    };
    let mut messages = vec![Message {
        role: Role::User,
        content: first,
    }];
    for it in interactions {
        messages.push(Message {
            role: Role::Assistant,
            content: it.response.clone(),
        });
        messages.push(Message {
            role: Role::User,
            content: retry_text(&it.feedback),
        });
    }
    Ok(PromptBundle {
        system: None,
        messages,
    })
}
