use std::collections::BTreeMap;

use super::{Search, SolveError};
use crate::graders::check_password;
use crate::lexicon::{eval_expression, letters_only, ExprForm, KnowledgeKind, Resources};
use crate::model::{PasswordConstraints, PasswordRule, ROMAN_DIGITS, SPECIAL_CHARS};

const FILLER: char = '-';
const MAX_CASE_COMBOS: usize = 512;
const MAX_ROMAN_EXTRA: usize = 12;

#[derive(Default)]
struct Targets {
    total: Option<usize>,
    upper: Option<usize>,
    lower: Option<usize>,
    latin: Option<usize>,
    digits: Option<usize>,
    roman: Option<usize>,
    special: Option<usize>,
    /// Exact counts for individual characters.
    chars: BTreeMap<char, usize>,
}

fn set(slot: &mut Option<usize>, n: usize) -> bool {
    match slot {
        Some(prev) => *prev == n,
        None => {
            *slot = Some(n);
            true
        }
    }
}

fn is_roman_letter(lower: char) -> bool {
    ROMAN_DIGITS.contains(&lower.to_ascii_uppercase())
}

/// Knowledge and substring rules first (fixed text), then the counting rules
/// are met by padding with characters of the right classes.
pub(super) fn solve(c: &PasswordConstraints, search: &mut Search) -> Result<String, SolveError> {
    let kb = &Resources::get().knowledge;
    let mut t = Targets::default();
    let mut letter_segments: Vec<String> = Vec::new();
    let mut digit_segments: Vec<String> = Vec::new();
    let conflict = || SolveError::NoConstruction("contradictory counting rules".into());

    for rule in &c.rules {
        let ok = match rule {
            PasswordRule::TotalChars { n } => set(&mut t.total, *n),
            PasswordRule::UppercaseCount { n } => set(&mut t.upper, *n),
            PasswordRule::LowercaseCount { n } => set(&mut t.lower, *n),
            PasswordRule::LatinCount { n } => set(&mut t.latin, *n),
            PasswordRule::DigitCount { n } => set(&mut t.digits, *n),
            PasswordRule::RomanDigitCount { n } => set(&mut t.roman, *n),
            PasswordRule::SpecialCount { n } => set(&mut t.special, *n),
            PasswordRule::CharCount { n, ch } => match t.chars.insert(*ch, *n) {
                Some(prev) => prev == *n,
                None => true,
            },
            PasswordRule::ContainsString { s } => {
                letter_segments.push(s.to_lowercase());
                true
            }
            PasswordRule::CapitalOf { country } | PasswordRule::ContinentOf { country } => {
                let kind = if matches!(rule, PasswordRule::CapitalOf { .. }) {
                    KnowledgeKind::Capital
                } else {
                    KnowledgeKind::Continent
                };
                let value = kb
                    .lookup(kind, country)
                    .map_err(|e| SolveError::NoConstruction(e.to_string()))?;
                letter_segments.push(letters_only(value));
                true
            }
            PasswordRule::MathDigits { expr } | PasswordRule::MathWords { expr } => {
                let form = if matches!(rule, PasswordRule::MathDigits { .. }) {
                    ExprForm::Digits
                } else {
                    ExprForm::Words
                };
                match eval_expression(expr, form) {
                    Ok(v) if v >= 0 => {
                        digit_segments.push(v.to_string());
                        true
                    }
                    _ => false,
                }
            }
        };
        if !ok {
            return Err(conflict());
        }
    }

    if letter_segments
        .iter()
        .chain(&digit_segments)
        .any(|s| s.chars().any(|ch| !ch.is_ascii_alphanumeric()))
    {
        return Err(SolveError::NoConstruction("segment with unsupported characters".into()));
    }
    dedupe_substrings(&mut letter_segments);
    digit_segments.sort();
    digit_segments.dedup();

    let plan = Plan::new(&t, &letter_segments, &digit_segments);
    for uppers in plan.case_choices() {
        search.tick()?;
        for candidate in plan.candidates(&t, &uppers) {
            if check_password(c, &candidate).solved {
                return Ok(candidate);
            }
        }
    }
    Err(conflict())
}

fn dedupe_substrings(segments: &mut Vec<String>) {
    segments.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    segments.dedup();
    let mut kept: Vec<String> = Vec::new();
    for s in segments.drain(..) {
        if !kept.iter().any(|k| k.contains(&s)) {
            kept.push(s);
        }
    }
    *segments = kept;
}

/// Letters of the fixed segments grouped by how their case affects the counts.
struct Plan<'a> {
    letter_segments: &'a [String],
    digit_segments: &'a [String],
    /// Letters with their own exact-count rule, with multiplicity in the segments.
    tracked: Vec<(char, usize)>,
    plain_roman: usize,
    plain_other: usize,
}

/// Uppercase copies per group: `tracked[i]`, then roman, then the rest.
struct Uppers {
    tracked: Vec<usize>,
    roman: usize,
    other: usize,
}

impl<'a> Plan<'a> {
    fn new(t: &Targets, letter_segments: &'a [String], digit_segments: &'a [String]) -> Self {
        let mut counts: BTreeMap<char, usize> = BTreeMap::new();
        for ch in letter_segments.iter().flat_map(|s| s.chars()) {
            *counts.entry(ch).or_default() += 1;
        }
        let is_tracked = |ch: char| {
            t.chars.contains_key(&ch) || t.chars.contains_key(&ch.to_ascii_uppercase())
        };
        let mut tracked = Vec::new();
        let (mut plain_roman, mut plain_other) = (0, 0);
        for (&ch, &m) in &counts {
            if is_tracked(ch) {
                tracked.push((ch, m));
            } else if is_roman_letter(ch) {
                plain_roman += m;
            } else {
                plain_other += m;
            }
        }
        Plan {
            letter_segments,
            digit_segments,
            tracked,
            plain_roman,
            plain_other,
        }
    }

    fn case_choices(&self) -> Vec<Uppers> {
        let mut dims: Vec<usize> = self.tracked.iter().map(|&(_, m)| m + 1).collect();
        dims.push(self.plain_roman + 1);
        dims.push(self.plain_other + 1);
        let mut out = Vec::new();
        let mut idx = vec![0usize; dims.len()];
        loop {
            let k = self.tracked.len();
            out.push(Uppers {
                tracked: idx[..k].to_vec(),
                roman: idx[k],
                other: idx[k + 1],
            });
            if out.len() >= MAX_CASE_COMBOS {
                break;
            }
            let mut pos = 0;
            while pos < dims.len() {
                idx[pos] += 1;
                if idx[pos] < dims[pos] {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == dims.len() {
                break;
            }
        }
        out
    }

    /// Segment text with the chosen letters uppercased.
    fn cased_segments(&self, u: &Uppers) -> Vec<String> {
        let mut left_tracked: BTreeMap<char, usize> = self
            .tracked
            .iter()
            .zip(&u.tracked)
            .map(|(&(ch, _), &n)| (ch, n))
            .collect();
        let (mut left_roman, mut left_other) = (u.roman, u.other);
        self.letter_segments
            .iter()
            .map(|s| {
                s.chars()
                    .map(|ch| {
                        let budget = if let Some(n) = left_tracked.get_mut(&ch) {
                            n
                        } else if is_roman_letter(ch) {
                            &mut left_roman
                        } else {
                            &mut left_other
                        };
                        if *budget > 0 {
                            *budget -= 1;
                            ch.to_ascii_uppercase()
                        } else {
                            ch
                        }
                    })
                    .collect()
            })
            .collect()
    }

    fn candidates(&self, t: &Targets, u: &Uppers) -> Vec<String> {
        let segments = self.cased_segments(u);
        let seg_chars = || segments.iter().chain(self.digit_segments).flat_map(|s| s.chars());

        // Extra copies demanded by exact-count rules.
        let mut forced: Vec<char> = Vec::new();
        for (&ch, &n) in &t.chars {
            let have = seg_chars().filter(|&x| x == ch).count();
            if have > n {
                return Vec::new();
            }
            forced.extend(std::iter::repeat_n(ch, n - have));
        }
        if forced.iter().any(|ch| ch.is_whitespace()) {
            return Vec::new();
        }

        let base: Vec<char> = seg_chars().chain(forced.iter().copied()).collect();
        let count = |pred: &dyn Fn(char) -> bool| base.iter().filter(|&&ch| pred(ch)).count();
        let upper0 = count(&|ch| ch.is_ascii_uppercase());
        let lower0 = count(&|ch| ch.is_ascii_lowercase());
        let latin0 = count(&|ch| ch.is_ascii_alphabetic());
        let roman0 = count(&|ch| ROMAN_DIGITS.contains(&ch));
        let digit0 = count(&|ch| ch.is_ascii_digit());
        let special0 = count(&|ch| SPECIAL_CHARS.contains(&ch));

        let sub = |target: Option<usize>, have: usize| -> Option<Option<usize>> {
            match target {
                Some(n) if n < have => None,
                Some(n) => Some(Some(n - have)),
                None => Some(None),
            }
        };
        let (Some(roman_need), Some(upper_need), Some(lower_need), Some(latin_need)) = (
            sub(t.roman, roman0),
            sub(t.upper, upper0),
            sub(t.lower, lower0),
            sub(t.latin, latin0),
        ) else {
            return Vec::new();
        };
        let (Some(digit_need), Some(special_need)) = (sub(t.digits, digit0), sub(t.special, special0))
        else {
            return Vec::new();
        };

        let c_options: Vec<usize> = match roman_need {
            Some(c) => vec![c],
            None => (0..=MAX_ROMAN_EXTRA).collect(),
        };
        let mut out = Vec::new();
        for c in c_options {
            // b: uppercase non-roman, a: lowercase.
            let b = match upper_need {
                Some(u) if u < c => continue,
                Some(u) => Some(u - c),
                None => None,
            };
            let (a, b) = match (lower_need, b, latin_need) {
                (Some(a), Some(b), Some(l)) if a + b + c != l => continue,
                (Some(a), Some(b), _) => (a, b),
                (Some(a), None, Some(l)) if l >= a + c => (a, l - a - c),
                (Some(_), None, Some(_)) => continue,
                (Some(a), None, None) => (a, 0),
                (None, Some(b), Some(l)) if l >= b + c => (l - b - c, b),
                (None, Some(_), Some(_)) => continue,
                (None, Some(b), None) => (0, b),
                (None, None, Some(l)) if l >= c => (l - c, 0),
                (None, None, Some(_)) => continue,
                (None, None, None) => (0, 0),
            };
            let d = digit_need.unwrap_or(0);
            let e = special_need.unwrap_or(0);
            if let Some(s) = self.assemble(t, &segments, &forced, [a, b, c, d, e]) {
                out.push(s);
            }
        }
        out
    }

    /// Lays digit runs between non-digit units so every run stays maximal.
    fn assemble(
        &self,
        t: &Targets,
        segments: &[String],
        forced: &[char],
        [a, b, c, d, e]: [usize; 5],
    ) -> Option<String> {
        let banned = |ch: char| {
            t.chars.contains_key(&ch)
                || (ch.is_ascii_alphabetic()
                    && (t.chars.contains_key(&ch.to_ascii_lowercase())
                        || t.chars.contains_key(&ch.to_ascii_uppercase())))
        };
        let pick = |pool: Vec<char>| pool.into_iter().find(|&ch| !banned(ch));
        let lower = pick(('a'..='z').filter(|ch| !is_roman_letter(*ch)).collect());
        let upper = pick(('A'..='Z').filter(|ch| !ROMAN_DIGITS.contains(ch)).collect());
        let roman = pick(ROMAN_DIGITS.to_vec());
        let digit = pick(('0'..='9').collect());
        let special = pick(SPECIAL_CHARS.to_vec());
        let need = |n: usize, ch: Option<char>| if n == 0 { Some(' ') } else { ch };
        need(a, lower)?;
        need(b, upper)?;
        need(c, roman)?;
        need(d, digit)?;
        need(e, special)?;

        let filler = match lower {
            Some(ch) if t.lower.is_none() && t.latin.is_none() => ch,
            _ => FILLER,
        };
        let mut units: Vec<String> = segments.to_vec();
        let mut extra_digits = String::new();
        for &ch in forced {
            if ch.is_ascii_digit() {
                extra_digits.push(ch);
            } else {
                units.push(ch.to_string());
            }
        }
        let mut push_n = |n: usize, ch: Option<char>| {
            for _ in 0..n {
                units.push(ch.expect("checked above").to_string());
            }
        };
        push_n(a, lower);
        push_n(b, upper);
        push_n(c, roman);
        push_n(e, special);
        extra_digits.extend(std::iter::repeat_n(digit.unwrap_or('0'), d));

        let mut runs: Vec<String> = self.digit_segments.to_vec();
        if !extra_digits.is_empty() {
            runs.push(extra_digits);
        }
        let used: usize = units.iter().chain(&runs).map(|s| s.chars().count()).sum();
        let mut fill = match t.total {
            Some(total) if total < used => return None,
            Some(total) => total - used,
            None => 0,
        };
        let separators = runs.len().saturating_sub(1);
        if units.len() < separators {
            let missing = separators - units.len();
            if t.total.is_some() && fill < missing {
                return None;
            }
            fill = fill.saturating_sub(missing);
            units.extend(std::iter::repeat_n(filler.to_string(), missing));
        }
        if used + fill == 0 && t.total.is_none() {
            fill = 1;
        }
        units.extend(std::iter::repeat_n(filler.to_string(), fill));

        let mut out = String::new();
        let mut units = units.into_iter();
        for run in runs {
            out.push_str(&run);
            if let Some(u) = units.next() {
                out.push_str(&u);
            }
        }
        units.for_each(|u| out.push_str(&u));
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::DEFAULT_BUDGET;

    fn solved(rules: Vec<PasswordRule>) -> String {
        let c = PasswordConstraints { rules };
        let mut s = Search::new(DEFAULT_BUDGET);
        let answer = solve(&c, &mut s).unwrap();
        assert!(check_password(&c, &answer).solved, "{answer}");
        answer
    }

    #[test]
    fn counting_rules() {
        solved(vec![PasswordRule::TotalChars { n: 6 }, PasswordRule::UppercaseCount { n: 0 }]);
        solved(vec![
            PasswordRule::TotalChars { n: 9 },
            PasswordRule::UppercaseCount { n: 2 },
            PasswordRule::RomanDigitCount { n: 1 },
            PasswordRule::DigitCount { n: 3 },
            PasswordRule::SpecialCount { n: 1 },
            PasswordRule::LatinCount { n: 4 },
        ]);
    }

    #[test]
    fn fixed_segments_and_math() {
        solved(vec![
            PasswordRule::CapitalOf {
                country: "Japan".into(),
            },
            PasswordRule::ContinentOf {
                country: "Japan".into(),
            },
            PasswordRule::MathWords {
                expr: "seven times six".into(),
            },
            PasswordRule::MathDigits { expr: "4 + 2".into() },
            PasswordRule::DigitCount { n: 3 },
            PasswordRule::UppercaseCount { n: 3 },
        ]);
    }

    #[test]
    fn char_counts_interact_with_segments() {
        solved(vec![
            PasswordRule::ContainsString { s: "goose".into() },
            PasswordRule::CharCount { n: 1, ch: 'o' },
            PasswordRule::CharCount { n: 2, ch: 'O' },
            PasswordRule::LowercaseCount { n: 4 },
        ]);
        solved(vec![
            PasswordRule::CharCount { n: 2, ch: '7' },
            PasswordRule::MathDigits { expr: "7 * 11".into() },
            PasswordRule::TotalChars { n: 4 },
        ]);
    }

    #[test]
    fn contradiction_is_reported() {
        let c = PasswordConstraints {
            rules: vec![PasswordRule::TotalChars { n: 2 }, PasswordRule::LatinCount { n: 3 }],
        };
        let mut s = Search::new(DEFAULT_BUDGET);
        assert!(solve(&c, &mut s).is_err());
    }
}
