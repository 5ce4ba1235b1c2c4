#![allow(dead_code)]

use proptest::prelude::*;
use subreg::subregular::SltRep;
use subreg::{Alphabet, Dfa, Word};

pub fn alphabet(s: &str) -> Alphabet {
    Alphabet::from_chars(s).unwrap()
}

/// Arbitrary complete DFA (not minimized) with up to `max_states` states.
pub fn dfa(symbols: &'static str, max_states: usize) -> impl Strategy<Value = Dfa> {
    let m = symbols.chars().count();
    (1..=max_states).prop_flat_map(move |n| {
        (prop::collection::vec(prop::collection::vec(0..n, m), n), prop::collection::vec(any::<bool>(), n)).prop_map(
            move |(rows, acc)| {
                let acc: Vec<usize> = (0..acc.len()).filter(|&q| acc[q]).collect();
                Dfa::new(alphabet(symbols), rows, 0, acc).unwrap()
            },
        )
    })
}

pub fn word(symbols: &'static str, max_len: usize) -> impl Strategy<Value = Word> {
    let cs: Vec<char> = symbols.chars().collect();
    prop::collection::vec(prop::sample::select(cs), 0..=max_len).prop_map(Word::from_chars)
}

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn subset(all: &[Word], mask: &[bool]) -> Vec<Word> {
    all.iter().zip(mask).filter(|(_, &m)| m).map(|(w, _)| w.clone()).collect()
}

/// SLT representation with k ≤ 3 and random window sets.
pub fn slt_rep(v: &'static str) -> impl Strategy<Value = SltRep> {
    (1usize..=3).prop_flat_map(move |k| {
        let a = alphabet(v);
        let full = a.words_of_length(k);
        let short: Vec<Word> = a.words_up_to(k - 1);
        let m = full.len();
        (
            prop::collection::vec(any::<bool>(), m),
            prop::collection::vec(prop::bool::weighted(0.7), m),
            prop::collection::vec(any::<bool>(), m),
            prop::collection::vec(any::<bool>(), short.len()),
        )
            .prop_map(move |(b, i, e, f)| {
                SltRep::new(a.clone(), k, subset(&full, &b), subset(&full, &i), subset(&full, &e), subset(&short, &f))
                    .unwrap()
            })
    })
}
