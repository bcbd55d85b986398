use crate::model::{
    is_consonant, is_vowel, ComplexRule, ComplexRuleKind, StringSearchConstraints, Verdict,
};

fn longest_run(chars: &[char], pred: fn(char) -> bool) -> usize {
    let (mut best, mut cur) = (0, 0);
    for &c in chars {
        cur = if pred(c) { cur + 1 } else { 0 };
        best = best.max(cur);
    }
    best
}

pub fn complex_rule_holds(rule: &ComplexRule, candidate: &str) -> bool {
    let chars: Vec<char> = candidate.chars().collect();
    let vowels = chars.iter().filter(|&&c| is_vowel(c)).count();
    let consonants = chars.iter().filter(|&&c| is_consonant(c)).count();
    match rule.kind {
        ComplexRuleKind::Palindrome => chars.iter().eq(chars.iter().rev()),
        ComplexRuleKind::HasConsecutiveConsonants => longest_run(&chars, is_consonant) >= rule.run(),
        ComplexRuleKind::NoConsecutiveConsonants => longest_run(&chars, is_consonant) < rule.run(),
        ComplexRuleKind::HasConsecutiveVowels => longest_run(&chars, is_vowel) >= rule.run(),
        ComplexRuleKind::NoConsecutiveVowels => longest_run(&chars, is_vowel) < rule.run(),
        ComplexRuleKind::MoreVowels => vowels > consonants,
        ComplexRuleKind::FewerVowels => vowels < consonants,
        ComplexRuleKind::EqualVowels => vowels == consonants,
    }
}

fn complex_feedback(rule: &ComplexRule, ans: &str) -> String {
    let run = rule.run();
    match rule.kind {
        ComplexRuleKind::Palindrome => format!("{ans} is not a palindrome."),
        ComplexRuleKind::HasConsecutiveConsonants => {
            format!("{ans} does not have {run} consecutive consonants")
        }
        ComplexRuleKind::NoConsecutiveConsonants => format!("{ans} has {run} consecutive consonants"),
        ComplexRuleKind::HasConsecutiveVowels => format!("{ans} does not have {run} consecutive vowels"),
        ComplexRuleKind::NoConsecutiveVowels => format!("{ans} has {run} consecutive vowels"),
        ComplexRuleKind::MoreVowels => format!("{ans} has less or equal vowels than consonants"),
        ComplexRuleKind::FewerVowels => format!("{ans} has more or equal vowels than consonants"),
        ComplexRuleKind::EqualVowels => {
            format!("{ans} does not have the same amount of vowels and consonants")
        }
    }
}

pub fn check_string_search(c: &StringSearchConstraints, answer: &str) -> Verdict {
    let mut feedback = Vec::new();
    if answer.chars().count() != c.length {
        feedback.push(format!("{answer} is not {} characters long.", c.length));
    }
    if answer.is_empty() || !c.haystack.contains(answer) {
        feedback.push(format!("{answer} does not exist in {}.", c.haystack));
    }
    for ch in &c.must_contain {
        if !answer.contains(*ch) {
            feedback.push(format!("{ch} does not appear in {answer}."));
        }
    }
    for ch in &c.must_exclude {
        if answer.contains(*ch) {
            feedback.push(format!("{ch} exists in {answer}."));
        }
    }
    for rule in &c.complex {
        if !complex_rule_holds(rule, answer) {
            feedback.push(complex_feedback(rule, answer));
        }
    }
    Verdict::from_feedback(feedback)
}
