use rand::seq::IndexedRandom;
use rand::Rng as _;

use super::{envelope, DifficultyEnvelope, Rng};
use crate::lexicon::Resources;
use crate::model::{
    ConstraintSet, Difficulty, GameKind, OrderingCondition, OrderingConstraints, RuleStyle,
    ScoringRule,
};

fn piece(word: &str, max: usize, rng: &mut Rng) -> (String, String, String) {
    let chars: Vec<char> = word.chars().collect();
    let len = rng.random_range(1..=max.min(chars.len()));
    let start = rng.random_range(0..=chars.len() - len);
    (
        chars[..len].iter().collect(),
        chars[chars.len() - len..].iter().collect(),
        chars[start..start + len].iter().collect(),
    )
}

fn condition(words: &[String], rng: &mut Rng) -> Option<OrderingCondition> {
    use OrderingCondition::*;
    let word = words.choose(rng)?;
    let n = word.chars().count();
    let lens: Vec<usize> = words.iter().map(|w| w.chars().count()).collect();
    let other = *lens.choose(rng)?;
    let (prefix, suffix, middle) = piece(word, 3, rng);
    Some(match rng.random_range(0..18) {
        0 => EveryVowel,
        1 => EveryConsonant,
        2 => VowelAfterConsonant,
        3 => ConsonantAfterVowel,
        4 => ConsecutiveVowels { n: 2 },
        5 => ConsecutiveConsonants {
            n: rng.random_range(2..=3),
        },
        6 => LengthExactly { n },
        7 => LengthNot { n },
        8 => LengthMore { n: n.saturating_sub(1) },
        9 => LengthLess { n: n + 1 },
        10 => LengthBetween {
            more: n.min(other).saturating_sub(1),
            less: n.max(other) + 1,
        },
        11 if other > n => LengthMoreNot {
            more: n.saturating_sub(1),
            not: other,
        },
        12 if other < n => LengthLessNot { less: n + 1, not: other },
        13 => StartsWith { s: prefix },
        14 => EndsWith { s: suffix },
        15 => StartsEnds {
            prefix: prefix.chars().take(1).collect(),
            suffix: suffix.chars().rev().take(1).collect(),
        },
        16 => Contains { s: middle },
        17 => {
            let s: String = middle.chars().take(rng.random_range(1..=2)).collect();
            ContainsExactly {
                n: crate::model::count_occurrences(word, &s),
                s,
            }
        }
        _ => return None,
    })
}

fn points(rng: &mut Rng) -> i32 {
    let p = if rng.random_bool(0.9) {
        rng.random_range(1..=10)
    } else {
        rng.random_range(11..=100)
    };
    if rng.random_bool(0.3) {
        -p
    } else {
        p
    }
}

pub(super) fn build(d: Difficulty, rng: &mut Rng, res: &Resources) -> Option<ConstraintSet> {
    let DifficultyEnvelope::Ordering {
        rules,
        words,
        word_len,
    } = envelope(GameKind::OrderingText, d)
    else {
        unreachable!()
    };
    let word_count = rng.random_range(words);
    let mut list: Vec<String> = Vec::with_capacity(word_count);
    let mut tries = 0;
    while list.len() < word_count {
        tries += 1;
        if tries > 1000 {
            return None;
        }
        let len = rng.random_range(word_len.clone());
        let w = res.lexicon.words_of_length(len).choose(rng)?;
        if !list.contains(w) {
            list.push(w.clone());
        }
    }

    let rule_count = rng.random_range(rules);
    let mut out: Vec<ScoringRule> = Vec::with_capacity(rule_count);
    tries = 0;
    while out.len() < rule_count {
        tries += 1;
        if tries > 1000 {
            return None;
        }
        let Some(cond) = condition(&list, rng) else {
            continue;
        };
        if out.iter().any(|r| r.condition == cond) || list.iter().all(|w| cond.multiplicity(w) == 0) {
            continue;
        }
        let style = if cond.is_per_occurrence() || rng.random_bool(0.5) {
            RuleStyle::Gets
        } else {
            RuleStyle::AddIf
        };
        out.push(ScoringRule {
            condition: cond,
            points: points(rng),
            style,
        });
    }
    Some(ConstraintSet::Ordering(OrderingConstraints { rules: out, words: list }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn every_rule_fires_on_some_word() {
        let res = Resources::get();
        let mut rng = Rng::seed_from_u64(5);
        for d in Difficulty::ALL {
            for _ in 0..50 {
                let Some(ConstraintSet::Ordering(o)) = build(d, &mut rng, res) else {
                    continue;
                };
                for r in &o.rules {
                    assert_ne!(r.points, 0);
                    assert!(o.words.iter().any(|w| r.condition.multiplicity(w) > 0), "{r:?}");
                }
            }
        }
    }
}
