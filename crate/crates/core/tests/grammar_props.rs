mod common;

use std::collections::BTreeSet;

use common::{alphabet, dfa, word};
use proptest::prelude::*;
use subreg::grammar::{
    derivation_trace, generate_bounded, generate_bounded_observed, successors, Context, ContextualGrammar,
    GenerateOptions, InvariantMonitor, LanguageHandle, Mode, SelectionPair,
};
use subreg::{Dfa, Word};

fn context() -> impl Strategy<Value = Context> {
    (word("ab", 2), word("ab", 2))
        .prop_filter("λ context", |(u, v)| !u.is_empty() || !v.is_empty())
        .prop_map(|(u, v)| Context::new(u, v))
}

fn pair() -> impl Strategy<Value = SelectionPair> {
    (dfa("ab", 3), prop::collection::vec(context(), 1..=2))
        .prop_map(|(d, cs)| SelectionPair::new(LanguageHandle::from_dfa(d), cs))
}

fn grammar() -> impl Strategy<Value = ContextualGrammar> {
    (prop::collection::vec(pair(), 1..=2), prop::collection::vec(word("ab", 3), 1..=2))
        .prop_map(|(pairs, axioms)| ContextualGrammar::new(alphabet("ab"), pairs, axioms))
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::External), Just(Mode::Internal)]
}

fn gen(g: &ContextualGrammar, mode: Mode, n: usize) -> Vec<Word> {
    generate_bounded(g, mode, &GenerateOptions::new(n)).unwrap()
}

fn superset(big: &[Word], small: &[Word]) -> bool {
    let big: BTreeSet<&Word> = big.iter().collect();
    small.iter().all(|w| big.contains(w))
}

proptest! {
    #![proptest_config(common::config(120))]

    #[test]
    fn single_pair_external_closed_form(c in context(), w in word("ab", 3), n in 0usize..=10) {
        let sel = LanguageHandle::from_dfa(Dfa::universal(alphabet("ab")));
        let g = ContextualGrammar::new(alphabet("ab"), vec![SelectionPair::new(sel, vec![c.clone()])], vec![w.clone()]);
        let mut want: Vec<Word> = (0..)
            .map(|i| {
                let us: Vec<char> = c.u.iter().copied().cycle().take(i * c.u.len()).collect();
                let vs: Vec<char> = c.v.iter().copied().cycle().take(i * c.v.len()).collect();
                Word::concat(&[&us, &w, &vs])
            })
            .take_while(|x| x.len() <= n)
            .collect();
        alphabet("ab").sort_words(&mut want);
        prop_assert_eq!(gen(&g, Mode::External, n), want);
    }

    #[test]
    fn axioms_are_generated(g in grammar(), m in mode(), n in 0usize..=7) {
        let out = gen(&g, m, n);
        let short: Vec<Word> = g.axioms.iter().filter(|w| w.len() <= n).cloned().collect();
        prop_assert!(superset(&out, &short));
    }

    #[test]
    fn output_is_the_bounded_closure(g in grammar(), m in mode()) {
        let n = 7;
        let out = gen(&g, m, n);
        let set: BTreeSet<&Word> = out.iter().collect();
        let mut sorted = out.clone();
        alphabet("ab").sort_words(&mut sorted);
        sorted.dedup();
        prop_assert_eq!(&sorted, &out);
        for w in &out {
            for y in successors(&g, m, w) {
                prop_assert!(y.len() > w.len());
                if y.len() <= n {
                    prop_assert!(set.contains(&y), "{} -> {} missing", w, y);
                }
            }
        }
        // every non-axiom has a generated predecessor
        for w in out.iter().filter(|w| !g.axioms.contains(w)) {
            prop_assert!(out.iter().any(|x| successors(&g, m, x).contains(w)), "{} has no source", w);
        }
    }

    #[test]
    fn enlarging_a_grammar_only_adds_words(
        g in grammar(),
        m in mode(),
        extra in dfa("ab", 3),
        more_ctx in context(),
        more_axiom in word("ab", 3),
        which in 0usize..2,
    ) {
        let n = 7;
        let base = gen(&g, m, n);
        let p = which % g.pairs.len();

        let mut bigger = g.clone();
        let sel = g.pairs[p].selector.dfa().union(&extra).unwrap();
        prop_assert!(g.pairs[p].selector.dfa().difference(&sel).unwrap().is_empty_language());
        bigger.pairs[p].selector = LanguageHandle::from_dfa(sel);
        prop_assert!(superset(&gen(&bigger, m, n), &base));

        let mut bigger = g.clone();
        bigger.pairs[p].contexts.push(more_ctx);
        prop_assert!(superset(&gen(&bigger, m, n), &base));

        let mut axioms = g.axioms.clone();
        axioms.push(more_axiom);
        let bigger = ContextualGrammar::new(g.alphabet.clone(), g.pairs.clone(), axioms);
        prop_assert!(superset(&gen(&bigger, m, n), &base));
    }

    #[test]
    fn parallel_and_sequential_agree(g in grammar(), m in mode()) {
        let seq = gen(&g, m, 8);
        let par = generate_bounded(&g, m, &GenerateOptions { max_len: 8, step_cap: None, parallel: true }).unwrap();
        prop_assert_eq!(&seq, &par);
        prop_assert_eq!(&seq, &gen(&g, m, 8));
    }

    #[test]
    fn monitored_invariants_hold(g in grammar(), m in mode()) {
        let mon = InvariantMonitor::new(&g, m);
        let opts = GenerateOptions { max_len: 8, step_cap: None, parallel: true };
        generate_bounded_observed(&g, m, &opts, &mon).unwrap();
        prop_assert!(mon.violations().is_empty(), "{:?}", mon.violations());
    }

    #[test]
    fn traces_replay(g in grammar(), m in mode(), pick in any::<prop::sample::Index>()) {
        let out = gen(&g, m, 7);
        let target = pick.get(&out);
        let t = derivation_trace(&g, m, target, 7).unwrap();
        prop_assert_eq!(t.target(), target);
        prop_assert_eq!(&t.replay(&g).unwrap(), target);
        // a shortest derivation never has more steps than the length gained
        prop_assert!(t.steps.len() <= target.len() - t.axiom.len());
    }
}
