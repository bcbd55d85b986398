use std::collections::BTreeSet;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng as _;

use super::{envelope, DifficultyEnvelope, Rng};
use crate::graders::{check_string_search, complex_rule_holds};
use crate::lexicon::Resources;
use crate::model::{
    ComplexRule, ComplexRuleKind, ConstraintSet, Difficulty, GameKind, StringSearchConstraints,
};

#[derive(Debug, Clone)]
enum Extra {
    Contain(char),
    Exclude(char),
    Complex(ComplexRule),
}

fn apply(c: &mut StringSearchConstraints, e: &Extra) {
    match e {
        Extra::Contain(ch) => c.must_contain.push(*ch),
        Extra::Exclude(ch) => c.must_exclude.push(*ch),
        Extra::Complex(r) => c.complex.push(r.clone()),
    }
}

fn compatible(c: &StringSearchConstraints, e: &Extra) -> bool {
    match e {
        Extra::Contain(ch) => !c.must_contain.contains(ch),
        Extra::Exclude(ch) => !c.must_exclude.contains(ch),
        Extra::Complex(r) => !c.complex.iter().any(|x| {
            x.kind == r.kind || (x.kind.group().is_some() && x.kind.group() == r.kind.group())
        }),
    }
}

fn distinct_solutions(c: &StringSearchConstraints) -> usize {
    let chars: Vec<char> = c.haystack.chars().collect();
    let found: BTreeSet<String> = chars
        .windows(c.length)
        .map(|w| w.iter().collect::<String>())
        .filter(|s| check_string_search(c, s).solved)
        .collect();
    found.len()
}

/// Words and letter noise, cut to length.
fn haystack(len: usize, rng: &mut Rng, res: &Resources) -> Option<String> {
    let mut out = String::new();
    while out.len() < len {
        if rng.random_bool(0.6) {
            let wl = rng.random_range(3..=7);
            out.push_str(res.lexicon.words_of_length(wl).choose(rng)?);
        } else {
            for _ in 0..rng.random_range(1..=3) {
                out.push(rng.random_range(b'a'..=b'z') as char);
            }
        }
    }
    out.truncate(len);
    Some(out)
}

/// Plants an answer window, then derives rules it satisfies. For the unique
/// level, rules are added greedily until no other window passes.
pub(super) fn build(d: Difficulty, rng: &mut Rng, res: &Resources) -> Option<ConstraintSet> {
    let DifficultyEnvelope::StringSearch {
        max_text_len,
        max_constraints,
        complex_allowed,
        unique,
    } = envelope(GameKind::StringSearch, d)
    else {
        unreachable!()
    };
    let text_len = rng.random_range(match d {
        Difficulty::Easy => 6..=max_text_len,
        Difficulty::Medium => 11..=max_text_len,
        Difficulty::Hard => 21..=max_text_len,
    });
    let length = rng.random_range(match d {
        Difficulty::Easy => 3..=4,
        Difficulty::Medium => 3..=5,
        Difficulty::Hard => 4..=6,
    });
    let hay = haystack(text_len, rng, res)?;
    let start = rng.random_range(0..=text_len - length);
    let answer = &hay[start..start + length];

    let inside: BTreeSet<char> = answer.chars().collect();
    let outside: BTreeSet<char> = hay.chars().filter(|c| !inside.contains(c)).collect();
    let mut pool: Vec<Extra> = inside.iter().map(|&c| Extra::Contain(c)).collect();
    pool.extend(outside.iter().map(|&c| Extra::Exclude(c)));
    if complex_allowed {
        pool.extend(
            ComplexRuleKind::ALL
                .into_iter()
                .map(ComplexRule::new)
                .filter(|r| complex_rule_holds(r, answer))
                .map(Extra::Complex),
        );
    }
    pool.shuffle(rng);

    let mut c = StringSearchConstraints {
        haystack: hay.clone(),
        length,
        must_contain: Vec::new(),
        must_exclude: Vec::new(),
        complex: Vec::new(),
    };
    let initial = rng.random_range(1..=if unique { 2 } else { max_constraints });
    for e in &pool {
        if c.constraint_count() >= initial {
            break;
        }
        if compatible(&c, e) {
            apply(&mut c, e);
        }
    }
    if unique {
        let mut count = distinct_solutions(&c);
        while count > 1 && c.constraint_count() < max_constraints {
            let best = pool
                .iter()
                .filter(|e| compatible(&c, e))
                .map(|e| {
                    let mut next = c.clone();
                    apply(&mut next, e);
                    (distinct_solutions(&next), next)
                })
                .min_by_key(|(n, _)| *n)?;
            if best.0 >= count {
                return None;
            }
            count = best.0;
            c = best.1;
        }
        if count != 1 {
            return None;
        }
    }
    c.must_contain.sort();
    c.must_exclude.sort();
    Some(ConstraintSet::StringSearch(c))
}
