mod common;

use std::collections::BTreeSet;

use common::{alphabet, dfa, word};
use proptest::prelude::*;
use subreg::automata::{are_equivalent, bool_op, factor_sets, BoolOp};
use subreg::{Dfa, RegexAst, Word};

fn compile(src: &str, v: &str) -> Dfa {
    RegexAst::parse(src).unwrap().compile(&alphabet(v)).unwrap()
}

fn brute(d: &Dfa, n: usize) -> Vec<Word> {
    d.alphabet().words_up_to(n).into_iter().filter(|w| d.accepts(w)).collect()
}

/// Number of Myhill–Nerode classes, found by brute force: an n-state
/// machine reaches every class by a word shorter than n, and two classes
/// differ on some word of length at most n.
fn nerode_classes(d: &Dfa) -> usize {
    let v = d.alphabet();
    let n = d.state_count();
    let tails = v.words_up_to(n);
    let sigs: BTreeSet<Vec<bool>> = v
        .words_up_to(n - 1)
        .iter()
        .map(|u| tails.iter().map(|t| d.accepts(&Word::concat(&[u, t]))).collect())
        .collect();
    sigs.len()
}

#[test]
fn abna_minimal_size_matches_nerode_count() {
    let d = compile("a|ab*a", "ab");
    assert_eq!(d.state_count(), nerode_classes(&d));
    assert_eq!(d.state_count(), 5);
    assert_eq!(d.trim_state_count(), 4);
}

#[test]
fn documented_examples() {
    let abna = compile("a|ab*a", "ab");
    assert_eq!(abna.enumerate_upto(3), vec![Word::from("a"), Word::from("aa"), Word::from("aba")]);
    assert!(abna.accepts(&Word::from("abba")) && !abna.accepts(&Word::from("ba")));
    let cd = compile("(cd)*", "cd");
    assert_eq!(cd.enumerate_upto(4), vec![Word::empty(), Word::from("cd"), Word::from("cdcd")]);
    let (eq, w) = are_equivalent(&compile("a*b", "ab"), &compile("(a|b)*b", "ab")).unwrap();
    assert!(!eq);
    assert_eq!(w, Some(Word::from("bb")));
    let meet = compile("a*", "ab").intersect(&compile("b*", "ab")).unwrap();
    assert_eq!(meet.enumerate_upto(5), vec![Word::empty()]);
    let rest = bool_op(BoolOp::Difference, &Dfa::universal(alphabet("ab")), Some(&abna)).unwrap();
    assert!(rest.pump().is_some());
    assert!(compile("∅", "ab").enumerate_upto(5).is_empty());
}

#[test]
fn foreign_symbols_are_rejected() {
    assert!(RegexAst::parse("x").unwrap().compile(&alphabet("ab")).is_err());
    assert!(!compile("a*", "ab").accepts(&Word::from("ax")));
}

#[test]
fn abna_factor_sets() {
    let f = factor_sets(&compile("a|ab*a", "ab"), 1).unwrap();
    let set = |ws: &[&str]| ws.iter().map(|w| Word::from(*w)).collect::<BTreeSet<_>>();
    assert_eq!((f.prefixes, f.interior, f.suffixes), (set(&["a"]), set(&["b"]), set(&["a"])));
    for k in 1..=4 {
        let f = factor_sets(&compile(&"a".repeat(k + 1), "a"), k).unwrap();
        let ak = set(&[&"a".repeat(k)]);
        assert_eq!((f.prefixes, f.interior, f.suffixes), (ak.clone(), BTreeSet::new(), ak));
    }
    let f = factor_sets(&compile("∅", "ab"), 2).unwrap();
    assert!(f.prefixes.is_empty() && f.interior.is_empty() && f.suffixes.is_empty());
}

proptest! {
    #![proptest_config(common::config(200))]

    #[test]
    fn enumerate_matches_brute_force(d in dfa("ab", 5), n in 0usize..=8) {
        prop_assert_eq!(d.enumerate_upto(n), brute(&d, n));
    }

    #[test]
    fn enumerate_three_letters(d in dfa("abc", 4), n in 0usize..=5) {
        prop_assert_eq!(d.enumerate_upto(n), brute(&d, n));
    }

    #[test]
    fn equivalence_agrees_with_bounded_enumeration(d1 in dfa("ab", 4), d2 in dfa("ab", 4)) {
        let bound = d1.state_count() * d2.state_count();
        let (eq, w) = are_equivalent(&d1, &d2).unwrap();
        prop_assert_eq!(eq, d1.enumerate_upto(bound) == d2.enumerate_upto(bound));
        if let Some(w) = w {
            prop_assert!(d1.accepts(&w) != d2.accepts(&w));
            // no shorter or shortlex-earlier distinguishing word
            for u in d1.alphabet().words_up_to(w.len()) {
                if u == w {
                    break;
                }
                prop_assert_eq!(d1.accepts(&u), d2.accepts(&u));
            }
        }
    }

    #[test]
    fn complement_and_de_morgan(d1 in dfa("ab", 4), d2 in dfa("ab", 4)) {
        prop_assert!(d1.complement().complement().equivalent(&d1).unwrap());
        let lhs = d1.union(&d2).unwrap().complement();
        let rhs = d1.complement().intersect(&d2.complement()).unwrap();
        prop_assert!(lhs.equivalent(&rhs).unwrap());
        let lhs = d1.intersect(&d2).unwrap().complement();
        let rhs = d1.complement().union(&d2.complement()).unwrap();
        prop_assert!(lhs.equivalent(&rhs).unwrap());
        let diff = d1.difference(&d2).unwrap();
        for w in d1.alphabet().words_up_to(6) {
            prop_assert_eq!(diff.accepts(&w), d1.accepts(&w) && !d2.accepts(&w));
        }
    }

    #[test]
    fn minimize_is_sound_and_idempotent(d in dfa("ab", 6)) {
        let m = d.minimize();
        prop_assert!(m.is_minimal());
        prop_assert!(m.state_count() <= d.state_count());
        prop_assert!(m.equivalent(&d).unwrap());
        let mm = m.minimize();
        prop_assert_eq!(mm.state_count(), m.state_count());
        prop_assert_eq!(m.state_count(), nerode_classes(&m));
    }

    #[test]
    fn factor_sets_cover_every_short_word(d in dfa("ab", 5), k in 1usize..=3) {
        let f = factor_sets(&d, k).unwrap();
        for w in d.enumerate_upto(8).into_iter().filter(|w| w.len() >= k) {
            let n = w.len();
            prop_assert!(f.prefixes.contains(&w.prefix(k)));
            prop_assert!(f.suffixes.contains(&w.suffix(k)));
            for j in 1..n.saturating_sub(k) {
                prop_assert!(f.interior.contains(&w.slice(j, j + k)), "{} window {}", w, j);
            }
        }
    }

    #[test]
    fn accepts_follows_the_run(d in dfa("ab", 5), w in word("ab", 8)) {
        let mut q = d.start();
        for &c in w.iter() {
            q = d.next(q, d.alphabet().index_of(c).unwrap());
        }
        prop_assert_eq!(d.accepts(&w), d.is_accepting(q));
    }
}
