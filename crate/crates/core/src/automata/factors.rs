//! Canonical length-k window sets of a regular language.

use std::collections::BTreeSet;

use crate::alphabet::Word;
use crate::automata::dfa::{Dfa, StateId};
use crate::error::{Error, Result};

/// The forced window sets of a language L for window length k:
///
/// * `prefixes`: B* = { p ∈ V^k : pV* ∩ L ≠ ∅ }
/// * `interior`: I* = { w ∈ V^k : V⁺wV⁺ ∩ L ≠ ∅ }
/// * `suffixes`: E* = { s ∈ V^k : V*s ∩ L ≠ ∅ }
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSets {
    pub k: usize,
    pub prefixes: BTreeSet<Word>,
    pub interior: BTreeSet<Word>,
    pub suffixes: BTreeSet<Word>,
}

/// Reachability facts about a DFA shared by the window computations.
pub(crate) struct WindowContext {
    pub live: Vec<bool>,
    /// δ(z0, V*)
    pub reach0: Vec<StateId>,
    /// δ(z0, V⁺)
    pub reach1: Vec<StateId>,
    /// states with a nonempty continuation into F
    pub live1: Vec<bool>,
}

impl WindowContext {
    pub fn new(dfa: &Dfa) -> Self {
        let n = dfa.state_count();
        let k = dfa.alphabet().len();
        let live = dfa.live();
        let reach = dfa.reachable();
        let reach0: Vec<StateId> = (0..n).filter(|&q| reach[q]).collect();
        let mut r1 = vec![false; n];
        for &q in &reach0 {
            for a in 0..k {
                r1[dfa.next(q, a)] = true;
            }
        }
        let reach1 = (0..n).filter(|&q| r1[q]).collect();
        let live1 = (0..n).map(|q| (0..k).any(|a| live[dfa.next(q, a)])).collect();
        Self { live, reach0, reach1, live1 }
    }

    /// Image of a state set under symbol `a`, with dead states dropped.
    pub fn image(&self, dfa: &Dfa, set: &[StateId], a: usize) -> Vec<StateId> {
        let mut out: Vec<StateId> = set.iter().map(|&q| dfa.next(q, a)).filter(|&t| self.live[t]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn prune(&self, set: &[StateId]) -> Vec<StateId> {
        set.iter().copied().filter(|&q| self.live[q]).collect()
    }
}

fn windows(
    dfa: &Dfa,
    ctx: &WindowContext,
    k: usize,
    start: Vec<StateId>,
    keep: impl Fn(&[StateId]) -> bool,
) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<(Vec<char>, Vec<StateId>)> = vec![(Vec::new(), ctx.prune(&start))];
    while let Some((w, set)) = stack.pop() {
        if set.is_empty() {
            continue;
        }
        if w.len() == k {
            if keep(&set) {
                out.insert(Word::from_chars(w));
            }
            continue;
        }
        for a in 0..dfa.alphabet().len() {
            let next = ctx.image(dfa, &set, a);
            if !next.is_empty() {
                let mut w2 = w.clone();
                w2.push(dfa.alphabet().symbol(a));
                stack.push((w2, next));
            }
        }
    }
    out
}

/// Computes the canonical window sets (B*, I*, E*) of `l` for length `k`.
///
/// Each set is obtained from state-set images under candidate windows, with
/// branches cut as soon as no live state remains, so infinite languages are
/// handled exactly.
pub fn factor_sets(l: &Dfa, k: usize) -> Result<FactorSets> {
    if k == 0 {
        return Err(Error::ZeroWindow);
    }
    let ctx = WindowContext::new(l);
    let prefixes = windows(l, &ctx, k, vec![l.start()], |_| true);
    let interior = windows(l, &ctx, k, ctx.reach1.clone(), |s| s.iter().any(|&q| ctx.live1[q]));
    let suffixes = windows(l, &ctx, k, ctx.reach0.clone(), |s| s.iter().any(|&q| l.is_accepting(q)));
    Ok(FactorSets { k, prefixes, interior, suffixes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::automata::regex::RegexAst;

    fn set(ws: &[&str]) -> BTreeSet<Word> {
        ws.iter().map(|w| Word::from(*w)).collect()
    }

    #[test]
    fn abna_windows_of_length_one() {
        let v = Alphabet::from_chars("ab").unwrap();
        let l = RegexAst::parse("a|ab*a").unwrap().compile(&v).unwrap();
        let f = factor_sets(&l, 1).unwrap();
        assert_eq!(f.prefixes, set(&["a"]));
        assert_eq!(f.interior, set(&["b"]));
        assert_eq!(f.suffixes, set(&["a"]));
    }

    #[test]
    fn single_power_of_a() {
        let v = Alphabet::from_chars("a").unwrap();
        for k in 1..=4 {
            let l = Dfa::from_words(v.clone(), &[Word::repeat('a', k + 1)]).unwrap();
            let f = factor_sets(&l, k).unwrap();
            assert_eq!(f.prefixes, [Word::repeat('a', k)].into());
            assert!(f.interior.is_empty());
            assert_eq!(f.suffixes, [Word::repeat('a', k)].into());
        }
    }

    #[test]
    fn empty_language_has_no_windows() {
        let v = Alphabet::from_chars("ab").unwrap();
        let f = factor_sets(&Dfa::empty(v), 2).unwrap();
        assert!(f.prefixes.is_empty() && f.interior.is_empty() && f.suffixes.is_empty());
        assert_eq!(factor_sets(&Dfa::universal(Alphabet::from_chars("a").unwrap()), 0), Err(Error::ZeroWindow));
    }
}
