//! Property tests: set canonicalization, extensional equality and the
//! printed form of answers.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use setkanren::frontend::{run_source, RunOptions};
use setkanren::oracle::Value;
use setkanren::term::canonical;
use setkanren::unify::unify;
use setkanren::{State, Term};

fn value() -> impl Strategy<Value = Value> {
    let leaf = prop_oneof![
        (-3i64..4).prop_map(Value::Num),
        prop::sample::select(vec!["a", "b", "lambda"]).prop_map(Value::sym),
        Just(Value::Nil),
    ];
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..4).prop_map(Value::set),
            prop::collection::vec(inner.clone(), 0..4).prop_map(Value::list),
            (inner.clone(), inner).prop_map(|(a, d)| Value::pair(a, d)),
        ]
    })
}

/// One of the many terms denoting `v`: set elements shuffled, some
/// repeated, and split over nested cells.
fn spell(v: &Value, rng: &mut ChaCha8Rng) -> Term {
    match v {
        Value::Pair(a, d) => Term::cons(spell(a, rng), spell(d, rng)),
        Value::Set(xs) => {
            let mut elems: Vec<Term> = xs.iter().map(|x| spell(x, rng)).collect();
            for x in xs {
                if rng.gen_bool(0.3) {
                    elems.push(spell(x, rng));
                }
            }
            elems.shuffle(rng);
            let mut rest = Term::EmptySet;
            while !elems.is_empty() {
                let k = rng.gen_range(1..=elems.len());
                let chunk = elems.split_off(elems.len() - k);
                rest = Term::set_cell(chunk, rest);
            }
            rest
        }
        other => other.to_term(),
    }
}

fn spelled(v: &Value, seed: u64) -> Term {
    spell(v, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Two values, equal about half the time.
fn value_pair() -> impl Strategy<Value = (Value, Value)> {
    prop_oneof![value().prop_map(|v| (v.clone(), v)), (value(), value()),]
}

fn eval(src: &str) -> String {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_source(src, &RunOptions::default(), &mut out, &mut err);
    assert_eq!(code, 0, "{src}: {}", String::from_utf8_lossy(&err));
    String::from_utf8(out).unwrap().trim_end().to_string()
}

proptest! {
    #[test]
    fn canonicalization_is_idempotent(v in value(), seed in any::<u64>()) {
        let once = canonical(&spelled(&v, seed));
        prop_assert_eq!(canonical(&once), once);
    }

    #[test]
    fn every_spelling_denotes_the_value(v in value(), seed in any::<u64>()) {
        prop_assert_eq!(Value::from_term(&spelled(&v, seed)), Some(v));
    }

    #[test]
    fn equal_denotation_iff_equal_canonical_forms(
        (a, b) in value_pair(),
        s in any::<u64>(),
        t in any::<u64>(),
    ) {
        let (x, y) = (spelled(&a, s), spelled(&b, t));
        prop_assert_eq!(a == b, canonical(&x) == canonical(&y));
        prop_assert_eq!(a == b, !unify(&x, &y, State::new()).is_empty());
    }

    #[test]
    fn printed_answers_read_back_as_the_same_value(v in value(), seed in any::<u64>()) {
        let shown = canonical(&spelled(&v, seed)).to_string();
        prop_assert_eq!(eval(&format!("(run* (q) (== q '{shown}))")), format!("({shown})"));
    }
}
