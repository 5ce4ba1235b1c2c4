//! Transition monoid of an automaton and the aperiodicity-style tests built
//! on it.

use std::collections::HashMap;

use crate::alphabet::Word;
use crate::automata::dfa::{Dfa, StateId};
use crate::subregular::evidence::{Decision, Evidence};

/// Distinct state transformations induced by words, each with its
/// shortlex-least representative word. Element 0 is the identity (λ).
#[derive(Debug, Clone)]
pub struct TransitionMonoid {
    elements: Vec<Vec<StateId>>,
    words: Vec<Word>,
    index: HashMap<Vec<StateId>, usize>,
}

/// Eventual behaviour of the powers t, t², t³, … of one element:
/// t^(index+period) = t^index with both minimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerCycle {
    pub index: usize,
    pub period: usize,
}

impl TransitionMonoid {
    /// Builds the monoid of `d`; gives up with `None` once more than `cap`
    /// elements have been found.
    pub fn build_capped(d: &Dfa, cap: usize) -> Option<Self> {
        let n = d.state_count();
        let k = d.alphabet().len();
        let identity: Vec<StateId> = (0..n).collect();
        let mut m = Self {
            elements: vec![identity.clone()],
            words: vec![Word::empty()],
            index: HashMap::from([(identity, 0)]),
        };
        let mut i = 0;
        while i < m.elements.len() {
            for a in 0..k {
                let t: Vec<StateId> = m.elements[i].iter().map(|&q| d.next(q, a)).collect();
                if !m.index.contains_key(&t) {
                    if m.elements.len() >= cap {
                        return None;
                    }
                    m.index.insert(t.clone(), m.elements.len());
                    m.elements.push(t);
                    m.words.push(m.words[i].pushed(d.alphabet().symbol(a)));
                }
            }
            i += 1;
        }
        Some(m)
    }

    pub fn build(d: &Dfa) -> Self {
        Self::build_capped(d, usize::MAX).expect("uncapped")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &[StateId] {
        &self.elements[i]
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn index_of(&self, t: &[StateId]) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Transformation of `x` followed by `y`.
    pub fn compose(&self, x: usize, y: usize) -> usize {
        let (tx, ty) = (&self.elements[x], &self.elements[y]);
        let t: Vec<StateId> = tx.iter().map(|&q| ty[q]).collect();
        self.index[&t]
    }

    /// Index and period of the powers of element `i` (powers start at t¹).
    pub fn power_cycle(&self, i: usize) -> PowerCycle {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut cur = i;
        let mut exp = 1;
        loop {
            if let Some(&first) = seen.get(&cur) {
                return PowerCycle { index: first, period: exp - first };
            }
            seen.insert(cur, exp);
            cur = self.compose(cur, i);
            exp += 1;
        }
    }

    /// Element index of t^e for e ≥ 1.
    pub fn power(&self, i: usize, e: usize) -> usize {
        let mut cur = i;
        for _ in 1..e {
            cur = self.compose(cur, i);
        }
        cur
    }
}

/// NC: every element of the transition monoid of the minimal automaton is
/// eventually idempotent-stable (period 1).
pub fn is_noncounting(l: &Dfa) -> Decision {
    noncounting_in(&TransitionMonoid::build(&l.minimize()))
}

pub(crate) fn noncounting_in(m: &TransitionMonoid) -> Decision {
    for i in 0..m.len() {
        let c = m.power_cycle(i);
        if c.period > 1 {
            return Decision::no(Evidence::Power { word: m.word(i).clone(), index: c.index, period: c.period });
        }
    }
    Decision::yes(Evidence::None)
}

/// PS: for every word x, membership of xⁿ is eventually constant.
pub fn is_power_separating(l: &Dfa) -> Decision {
    let d = l.minimize();
    power_separating_in(&d, &TransitionMonoid::build(&d))
}

pub(crate) fn power_separating_in(d: &Dfa, m: &TransitionMonoid) -> Decision {
    for i in 0..m.len() {
        let c = m.power_cycle(i);
        let mut accepted = (c.index..c.index + c.period).map(|e| d.is_accepting(m.element(m.power(i, e))[d.start()]));
        let first = accepted.next().expect("period ≥ 1");
        if accepted.any(|x| x != first) {
            return Decision::no(Evidence::Power { word: m.word(i).clone(), index: c.index, period: c.period });
        }
    }
    Decision::yes(Evidence::None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::automata::regex::RegexAst;

    fn re(src: &str, v: &str) -> Dfa {
        RegexAst::parse(src).unwrap().compile(&Alphabet::from_chars(v).unwrap()).unwrap()
    }

    #[test]
    fn monoid_of_even_a() {
        let m = TransitionMonoid::build(&re("(aa)*", "a"));
        assert_eq!(m.len(), 2);
        assert_eq!(m.power_cycle(1), PowerCycle { index: 1, period: 2 });
    }

    #[test]
    fn noncounting_examples() {
        assert!(is_noncounting(&re("(a|b)*", "ab")).holds);
        assert_eq!(
            is_noncounting(&re("(aa)*", "a")).evidence,
            Evidence::Power { word: Word::from("a"), index: 1, period: 2 }
        );
        assert!(is_noncounting(&re("a|ab*a", "ab")).holds);
    }

    #[test]
    fn power_separating_examples() {
        assert!(is_power_separating(&re("(a|b)*", "ab")).holds);
        assert!(!is_power_separating(&re("(aa)*", "a")).holds);
        assert!(is_power_separating(&re("a|ab*a", "ab")).holds);
        // counting, yet every power xⁿ with n ≥ 2 is rejected
        let l = re("(aa)*b", "ab");
        assert!(!is_noncounting(&l).holds);
        assert!(is_power_separating(&l).holds);
    }
}
