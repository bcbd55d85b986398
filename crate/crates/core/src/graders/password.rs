use crate::lexicon::{eval_expression, letters_only, ExprForm, KnowledgeKind, Resources};
use crate::model::{PasswordConstraints, PasswordRule, Verdict, ROMAN_DIGITS, SPECIAL_CHARS};

/// Rule text used when the answer contains whitespace.
pub const NO_SPACE_RULE: &str = "the text has no space";

pub fn check_password(c: &PasswordConstraints, answer: &str) -> Verdict {
    let mut feedback = Vec::new();
    if answer.chars().any(char::is_whitespace) {
        feedback.push(format!("{answer} is not satisfying this rule: {NO_SPACE_RULE}."));
    }
    for rule in &c.rules {
        if !rule_holds(rule, answer) {
            feedback.push(format!("{answer} is not satisfying this rule: {}.", rule.text()));
        }
    }
    Verdict::from_feedback(feedback)
}

fn count(answer: &str, pred: impl Fn(char) -> bool) -> usize {
    answer.chars().filter(|&c| pred(c)).count()
}

/// Maximal runs of ASCII digits, left to right.
pub fn digit_runs(answer: &str) -> Vec<&str> {
    answer
        .split(|c: char| !c.is_ascii_digit())
        .filter(|s| !s.is_empty())
        .collect()
}

fn contains_letters_of(answer: &str, value: &str) -> bool {
    let needle = letters_only(value);
    !needle.is_empty() && answer.to_lowercase().contains(&needle)
}

/// Evaluates one rule on the whole answer, independently of the others.
pub fn rule_holds(rule: &PasswordRule, answer: &str) -> bool {
    let kb = &Resources::get().knowledge;
    match rule {
        PasswordRule::TotalChars { n } => answer.chars().count() == *n,
        PasswordRule::UppercaseCount { n } => count(answer, |c| c.is_ascii_uppercase()) == *n,
        PasswordRule::LowercaseCount { n } => count(answer, |c| c.is_ascii_lowercase()) == *n,
        PasswordRule::LatinCount { n } => count(answer, |c| c.is_ascii_alphabetic()) == *n,
        PasswordRule::DigitCount { n } => count(answer, |c| c.is_ascii_digit()) == *n,
        PasswordRule::RomanDigitCount { n } => count(answer, |c| ROMAN_DIGITS.contains(&c)) == *n,
        PasswordRule::SpecialCount { n } => count(answer, |c| SPECIAL_CHARS.contains(&c)) == *n,
        PasswordRule::CharCount { n, ch } => count(answer, |c| c == *ch) == *n,
        PasswordRule::ContainsString { s } => answer.to_lowercase().contains(&s.to_lowercase()),
        PasswordRule::CapitalOf { country } => kb
            .lookup(KnowledgeKind::Capital, country)
            .is_ok_and(|v| contains_letters_of(answer, v)),
        PasswordRule::ContinentOf { country } => kb
            .lookup(KnowledgeKind::Continent, country)
            .is_ok_and(|v| contains_letters_of(answer, v)),
        PasswordRule::MathDigits { expr } => math_holds(answer, expr, ExprForm::Digits),
        PasswordRule::MathWords { expr } => math_holds(answer, expr, ExprForm::Words),
    }
}

fn math_holds(answer: &str, expr: &str, form: ExprForm) -> bool {
    match eval_expression(expr, form) {
        Ok(v) if v >= 0 => {
            let target = v.to_string();
            digit_runs(answer).iter().any(|run| *run == target)
        }
        _ => false,
    }
}
