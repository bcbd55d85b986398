use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng as _;

use super::{envelope, DifficultyEnvelope, Rng};
use crate::lexicon::{letters_only, ExprForm, Expression, KnowledgeKind, Operator, Resources, MAX_OPERAND};
use crate::model::{
    ConstraintSet, Difficulty, GameKind, PasswordConstraints, PasswordRule, ROMAN_DIGITS,
    SPECIAL_CHARS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Total,
    Upper,
    Lower,
    Latin,
    Digit,
    Roman,
    Special,
    Char,
    Contains,
    Capital,
    Continent,
    MathDigits,
    MathWords,
}

const COUNTING: [Kind; 7] = [
    Kind::Total,
    Kind::Upper,
    Kind::Lower,
    Kind::Latin,
    Kind::Digit,
    Kind::Roman,
    Kind::Special,
];
const REPEATABLE: [Kind; 6] = [
    Kind::Char,
    Kind::Contains,
    Kind::Capital,
    Kind::Continent,
    Kind::MathDigits,
    Kind::MathWords,
];

fn sample_kinds(k: usize, rng: &mut Rng) -> Vec<Kind> {
    let mut counting = COUNTING.to_vec();
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let pick = rng.random_range(0..counting.len() + REPEATABLE.len());
        if pick < counting.len() {
            out.push(counting.remove(pick));
        } else {
            out.push(REPEATABLE[pick - counting.len()]);
        }
    }
    out
}

fn expression(rng: &mut Rng) -> Expression {
    loop {
        let e = Expression {
            lhs: rng.random_range(0..=MAX_OPERAND),
            op: *Operator::ALL.choose(rng).expect("non-empty"),
            rhs: rng.random_range(0..=MAX_OPERAND),
        };
        if e.value() >= 0 {
            return e;
        }
    }
}

fn random_case(s: &str, rng: &mut Rng) -> String {
    s.chars()
        .map(|c| if rng.random_bool(0.3) { c.to_ascii_uppercase() } else { c })
        .collect()
}

fn extra_char(rng: &mut Rng) -> char {
    match rng.random_range(0..5) {
        0 => rng.random_range(b'A'..=b'Z') as char,
        1 => *ROMAN_DIGITS.choose(rng).expect("non-empty"),
        2 => rng.random_range(b'0'..=b'9') as char,
        3 => *SPECIAL_CHARS.choose(rng).expect("non-empty"),
        _ => rng.random_range(b'a'..=b'z') as char,
    }
}

pub(super) fn build(d: Difficulty, rng: &mut Rng, res: &Resources) -> Option<ConstraintSet> {
    build_witnessed(d, rng, res).map(|(c, _)| ConstraintSet::Password(c))
}

/// Builds a witness from the content rules, then reads every count off it.
fn build_witnessed(
    d: Difficulty,
    rng: &mut Rng,
    res: &Resources,
) -> Option<(PasswordConstraints, String)> {
    let DifficultyEnvelope::Password { rules: k } = envelope(GameKind::PasswordGame, d) else {
        unreachable!()
    };
    let kinds = sample_kinds(k, rng);
    let mut rules: Vec<Option<PasswordRule>> = vec![None; kinds.len()];
    let mut pieces: Vec<String> = Vec::new();
    for (slot, kind) in kinds.iter().enumerate() {
        let rule = match kind {
            Kind::Contains => {
                let s = res.lexicon.words_of_length(rng.random_range(3..=6)).choose(rng)?.clone();
                pieces.push(random_case(&s, rng));
                PasswordRule::ContainsString { s }
            }
            Kind::Capital | Kind::Continent => {
                let country = res.knowledge.countries().choose(rng)?.clone();
                let lookup = if *kind == Kind::Capital {
                    KnowledgeKind::Capital
                } else {
                    KnowledgeKind::Continent
                };
                let value = letters_only(res.knowledge.lookup(lookup, &country).ok()?);
                if value.is_empty() {
                    return None;
                }
                pieces.push(random_case(&value, rng));
                if *kind == Kind::Capital {
                    PasswordRule::CapitalOf { country }
                } else {
                    PasswordRule::ContinentOf { country }
                }
            }
            Kind::MathDigits | Kind::MathWords => {
                let e = expression(rng);
                pieces.push(e.value().to_string());
                if *kind == Kind::MathDigits {
                    PasswordRule::MathDigits {
                        expr: e.render(ExprForm::Digits),
                    }
                } else {
                    PasswordRule::MathWords {
                        expr: e.render(ExprForm::Words),
                    }
                }
            }
            _ => continue,
        };
        rules[slot] = Some(rule);
    }
    for _ in 0..rng.random_range(1..=4) {
        pieces.push(extra_char(rng).to_string());
    }
    pieces.shuffle(rng);

    let mut witness = String::new();
    for p in &pieces {
        let joins_digits = witness.ends_with(|c: char| c.is_ascii_digit())
            && p.starts_with(|c: char| c.is_ascii_digit());
        if joins_digits {
            witness.push(rng.random_range(b'a'..=b'z') as char);
        }
        witness.push_str(p);
    }

    let count = |pred: &dyn Fn(char) -> bool| witness.chars().filter(|&c| pred(c)).count();
    let letters: Vec<char> = witness.chars().filter(char::is_ascii_alphabetic).collect();
    for (slot, kind) in kinds.iter().enumerate() {
        if rules[slot].is_some() {
            continue;
        }
        rules[slot] = Some(match kind {
            Kind::Total => PasswordRule::TotalChars {
                n: witness.chars().count(),
            },
            Kind::Upper => PasswordRule::UppercaseCount {
                n: count(&|c| c.is_ascii_uppercase()),
            },
            Kind::Lower => PasswordRule::LowercaseCount {
                n: count(&|c| c.is_ascii_lowercase()),
            },
            Kind::Latin => PasswordRule::LatinCount {
                n: count(&|c| c.is_ascii_alphabetic()),
            },
            Kind::Digit => PasswordRule::DigitCount {
                n: count(&|c| c.is_ascii_digit()),
            },
            Kind::Roman => PasswordRule::RomanDigitCount {
                n: count(&|c| ROMAN_DIGITS.contains(&c)),
            },
            Kind::Special => PasswordRule::SpecialCount {
                n: count(&|c| SPECIAL_CHARS.contains(&c)),
            },
            Kind::Char => {
                let ch = match letters.choose(rng) {
                    Some(&c) if rng.random_bool(0.8) => c,
                    _ => rng.random_range(b'a'..=b'z') as char,
                };
                PasswordRule::CharCount {
                    n: count(&|c| c == ch),
                    ch,
                }
            }
            _ => unreachable!(),
        });
    }
    let mut rules: Vec<PasswordRule> = rules.into_iter().collect::<Option<_>>()?;
    let before = rules.len();
    let mut seen = Vec::new();
    rules.retain(|r| {
        let fresh = !seen.contains(r);
        seen.push(r.clone());
        fresh
    });
    if rules.len() != before {
        return None;
    }
    Some((PasswordConstraints { rules }, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graders::check_password;
    use rand::SeedableRng;

    #[test]
    fn counting_kinds_never_repeat() {
        let mut rng = Rng::seed_from_u64(9);
        for _ in 0..200 {
            let kinds = sample_kinds(6, &mut rng);
            for k in COUNTING {
                assert!(kinds.iter().filter(|&&x| x == k).count() <= 1);
            }
        }
    }

    #[test]
    fn built_rule_sets_are_satisfiable_by_construction() {
        let res = Resources::get();
        let mut rng = Rng::seed_from_u64(3);
        let mut built = 0;
        for _ in 0..100 {
            if let Some((p, witness)) = build_witnessed(Difficulty::Hard, &mut rng, res) {
                assert_eq!(p.rules.len(), 6);
                assert!(check_password(&p, &witness).solved, "{witness} {p:?}");
                built += 1;
            }
        }
        assert!(built > 50);
    }
}
