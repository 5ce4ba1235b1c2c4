//! Ordered automata: a total order on states that every letter preserves.

use std::fmt;

use crate::automata::dfa::{Dfa, StateId};
use crate::error::{Error, Result};
use crate::subregular::evidence::{Decision, Evidence};

/// Total order on the states of an automaton, listed from least to greatest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateOrder {
    states: Vec<StateId>,
}

impl StateOrder {
    /// `states` lists every state exactly once, least first.
    pub fn new(states: Vec<StateId>) -> Result<Self> {
        let n = states.len();
        let mut seen = vec![false; n];
        for &q in &states {
            if q >= n || seen[q] {
                return Err(Error::InvalidOrder(n));
            }
            seen[q] = true;
        }
        Ok(Self { states })
    }

    pub fn identity(n: usize) -> Self {
        Self { states: (0..n).collect() }
    }

    pub fn states(&self) -> &[StateId] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Position of each state in the order.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.states.len()];
        for (i, &q) in self.states.iter().enumerate() {
            rank[q] = i;
        }
        rank
    }

    pub fn reversed(&self) -> Self {
        Self { states: self.states.iter().rev().copied().collect() }
    }
}

impl fmt::Display for StateOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.states.iter().map(|q| format!("z{q}")).collect();
        f.write_str(&parts.join("<"))
    }
}

/// True iff every letter maps the order monotonically.
pub fn verify_order(d: &Dfa, ord: &StateOrder) -> Result<bool> {
    if ord.len() != d.state_count() {
        return Err(Error::InvalidOrder(d.state_count()));
    }
    let rank = ord.ranks();
    let states = ord.states();
    for a in 0..d.alphabet().len() {
        for pair in states.windows(2) {
            // checking neighbours suffices for a total order
            if rank[d.next(pair[0], a)] > rank[d.next(pair[1], a)] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rel {
    Unknown,
    Less,
    Greater,
}

#[derive(Clone)]
struct Search<'a> {
    d: &'a Dfa,
    n: usize,
    rel: Vec<Rel>,
}

impl<'a> Search<'a> {
    fn get(&self, p: StateId, q: StateId) -> Rel {
        self.rel[p * self.n + q]
    }

    /// Records p < q and everything it forces; false on contradiction.
    fn assert_less(&mut self, p: StateId, q: StateId) -> bool {
        let mut pending = vec![(p, q)];
        while let Some((p, q)) = pending.pop() {
            match self.get(p, q) {
                Rel::Less => continue,
                Rel::Greater => return false,
                Rel::Unknown => {}
            }
            if p == q {
                return false;
            }
            self.rel[p * self.n + q] = Rel::Less;
            self.rel[q * self.n + p] = Rel::Greater;
            for a in 0..self.d.alphabet().len() {
                let (p2, q2) = (self.d.next(p, a), self.d.next(q, a));
                if p2 != q2 {
                    pending.push((p2, q2));
                }
            }
            for r in 0..self.n {
                if self.get(r, p) == Rel::Less {
                    pending.push((r, q));
                }
                if self.get(q, r) == Rel::Less {
                    pending.push((p, r));
                }
            }
        }
        true
    }

    fn first_open(&self) -> Option<(StateId, StateId)> {
        (0..self.n).flat_map(|p| (p + 1..self.n).map(move |q| (p, q))).find(|&(p, q)| self.get(p, q) == Rel::Unknown)
    }

    fn solve(self) -> Option<Self> {
        let Some((p, q)) = self.first_open() else {
            return Some(self);
        };
        for (x, y) in [(p, q), (q, p)] {
            let mut branch = self.clone();
            if branch.assert_less(x, y) {
                if let Some(done) = branch.solve() {
                    return Some(done);
                }
            }
        }
        None
    }

    fn into_order(self) -> StateOrder {
        let mut states: Vec<StateId> = (0..self.n).collect();
        states.sort_by_key(|&q| (0..self.n).filter(|&r| self.get(r, q) == Rel::Less).count());
        StateOrder { states }
    }
}

/// Monotone total order on the states of `d` itself, if one exists.
pub fn find_order(d: &Dfa) -> Option<StateOrder> {
    let n = d.state_count();
    let search = Search { d, n, rel: vec![Rel::Unknown; n * n] };
    search.solve().map(Search::into_order)
}

/// ORD, decided on the minimal automaton: yes carries a verified order
/// of the minimal automaton's states.
pub fn is_orderable(l: &Dfa) -> Decision {
    let d = l.minimize();
    match find_order(&d) {
        Some(order) => {
            debug_assert!(verify_order(&d, &order).unwrap());
            Decision::yes(Evidence::Order(order))
        }
        None => Decision::no(Evidence::Note(format!(
            "no monotone order on the {} states of the minimal automaton",
            d.state_count()
        ))),
    }
}

/// An ordered automaton for the same language as a minimal automaton `d`,
/// described by the labels of its states from least to greatest: state i
/// behaves like state `labels[i]` of `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedCover {
    pub labels: Vec<StateId>,
}

impl OrderedCover {
    /// The cover as an automaton whose state order is 0 < 1 < … .
    pub fn to_dfa(&self, d: &Dfa) -> Dfa {
        let maps: Vec<Vec<usize>> =
            (0..d.alphabet().len()).map(|a| monotone_image(d, &self.labels, a).expect("valid cover")).collect();
        let start = self.labels.iter().position(|&q| q == d.start()).expect("start is covered");
        let labels = self.labels.clone();
        Dfa::from_fn(d.alphabet().clone(), labels.len(), start, |i| d.is_accepting(labels[i]), |i, a| maps[a][i])
    }
}

impl fmt::Display for OrderedCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // state i of the cover is a copy of minimal state labels[i]
        let parts: Vec<String> = self.labels.iter().enumerate().map(|(i, q)| format!("c{i}:z{q}")).collect();
        f.write_str(&parts.join("<"))
    }
}

/// Least monotone map i ↦ j on positions with labels[j] = δ(labels[i], a).
fn monotone_image(d: &Dfa, labels: &[StateId], a: usize) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(labels.len());
    let mut j = 0;
    for &p in labels {
        let want = d.next(p, a);
        while j < labels.len() && labels[j] != want {
            j += 1;
        }
        if j == labels.len() {
            return None;
        }
        out.push(j);
    }
    Some(out)
}

/// Outcome of [`find_ordered_cover`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverSearch {
    Found(OrderedCover),
    /// No cover with at most `max_copies` copies of each state exists.
    NoneUpTo {
        max_copies: usize,
    },
    /// The candidate budget ran out before the search finished.
    BudgetExhausted,
}

/// Searches for an ordered automaton that maps onto the minimal automaton
/// `d` state by state, using at most `max_copies` copies of each state and
/// examining at most `budget` candidate orders. Shorter covers come first.
///
/// Any ordered automaton for the language restricts to its reachable part,
/// which maps onto the minimal automaton, so covers are the only candidates.
pub fn find_ordered_cover(d: &Dfa, max_copies: usize, budget: usize) -> CoverSearch {
    let d = d.minimize();
    let n = d.state_count();
    let mut budget = budget;
    for m in n..=n * max_copies {
        let mut counts = vec![0usize; n];
        let mut labels = Vec::with_capacity(m);
        match cover_dfs(&d, m, max_copies, &mut counts, &mut labels, &mut budget) {
            Some(true) => return CoverSearch::Found(OrderedCover { labels }),
            Some(false) => {}
            None => return CoverSearch::BudgetExhausted,
        }
    }
    CoverSearch::NoneUpTo { max_copies }
}

// Some(true): found (left in `labels`); Some(false): exhausted; None: out of budget
fn cover_dfs(
    d: &Dfa,
    m: usize,
    max_copies: usize,
    counts: &mut [usize],
    labels: &mut Vec<StateId>,
    budget: &mut usize,
) -> Option<bool> {
    let n = counts.len();
    let missing = counts.iter().filter(|&&c| c == 0).count();
    if m - labels.len() < missing {
        return Some(false);
    }
    if labels.len() == m {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let ok = (0..d.alphabet().len()).all(|a| monotone_image(d, labels, a).is_some());
        return Some(ok);
    }
    for q in 0..n {
        // adjacent copies of one state can always be merged
        if counts[q] == max_copies || labels.last() == Some(&q) {
            continue;
        }
        counts[q] += 1;
        labels.push(q);
        match cover_dfs(d, m, max_copies, counts, labels, budget) {
            Some(true) => return Some(true),
            Some(false) => {}
            None => return None,
        }
        labels.pop();
        counts[q] -= 1;
    }
    Some(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::automata::regex::RegexAst;

    fn table_l_ic_35() -> Dfa {
        let v = Alphabet::from_chars("ab").unwrap();
        Dfa::new(v, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 3]], 0, [2]).unwrap()
    }

    #[test]
    fn verify_examples() {
        let d = table_l_ic_35();
        assert!(verify_order(&d, &StateOrder::identity(4)).unwrap());
        let bad = StateOrder::new(vec![1, 0, 2, 3]).unwrap();
        assert!(!verify_order(&d, &bad).unwrap());
        let single = Dfa::universal(Alphabet::from_chars("ab").unwrap());
        assert!(verify_order(&single, &StateOrder::identity(1)).unwrap());
        assert!(verify_order(&d, &StateOrder::identity(3)).is_err());
        assert!(StateOrder::new(vec![0, 0]).is_err());
    }

    #[test]
    fn orderable_examples() {
        let v = Alphabet::from_chars("ab").unwrap();
        let sel = RegexAst::parse("a*b(a|b)*").unwrap().compile(&v).unwrap();
        let d = is_orderable(&sel);
        assert!(d.holds);
        assert!(is_orderable(&table_l_ic_35()).holds);
        let even = RegexAst::parse("(aa)*").unwrap().compile(&Alphabet::from_chars("a").unwrap()).unwrap();
        assert!(!is_orderable(&even).holds);
    }

    #[test]
    fn cover_for_abna() {
        let v = Alphabet::from_chars("ab").unwrap();
        let l = RegexAst::parse("a|ab*a").unwrap().compile(&v).unwrap();
        assert!(!is_orderable(&l).holds);
        let CoverSearch::Found(cover) = find_ordered_cover(&l, 2, 1_000_000) else {
            panic!("expected a cover");
        };
        assert_eq!(cover.labels.len(), 6);
        let c = cover.to_dfa(&l);
        assert!(verify_order(&c, &StateOrder::identity(6)).unwrap());
        assert!(c.equivalent(&l).unwrap());
    }
}
