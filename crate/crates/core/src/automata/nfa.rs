//! Nondeterministic automata with ε-moves, used as an intermediate for
//! regex compilation and for the closure constructions (suffixes,
//! rotations, transpositions). Always determinized before use.

use std::collections::{BTreeSet, HashMap};

use crate::alphabet::Alphabet;
use crate::automata::dfa::Dfa;

#[derive(Debug, Clone)]
pub struct Nfa {
    alphabet: Alphabet,
    // per state: per symbol index: targets
    moves: Vec<Vec<Vec<usize>>>,
    eps: Vec<Vec<usize>>,
    starts: Vec<usize>,
    accepting: Vec<bool>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet) -> Self {
        Self { alphabet, moves: Vec::new(), eps: Vec::new(), starts: Vec::new(), accepting: Vec::new() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.moves.push(vec![Vec::new(); self.alphabet.len()]);
        self.eps.push(Vec::new());
        self.accepting.push(accepting);
        self.moves.len() - 1
    }

    pub fn state_count(&self) -> usize {
        self.moves.len()
    }

    pub fn set_accepting(&mut self, q: usize, acc: bool) {
        self.accepting[q] = acc;
    }

    pub fn add_start(&mut self, q: usize) {
        self.starts.push(q);
    }

    pub fn add_move(&mut self, from: usize, symbol: usize, to: usize) {
        debug_assert!(to < self.state_count());
        self.moves[from][symbol].push(to);
    }

    pub fn add_eps(&mut self, from: usize, to: usize) {
        debug_assert!(to < self.state_count());
        self.eps[from].push(to);
    }

    /// Copies the transition structure of `dfa` into this automaton, returning
    /// the offset of its state 0. No start or accepting marks are copied.
    pub fn embed(&mut self, dfa: &Dfa) -> usize {
        let base = self.state_count();
        for _ in 0..dfa.state_count() {
            self.add_state(false);
        }
        for q in 0..dfa.state_count() {
            for a in 0..self.alphabet.len() {
                self.add_move(base + q, a, base + dfa.next(q, a));
            }
        }
        base
    }

    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &t in &self.eps[q] {
                if set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }

    /// Subset construction followed by minimization.
    pub fn determinize(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut start: BTreeSet<usize> = self.starts.iter().copied().collect();
        self.closure(&mut start);
        let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut subsets = vec![start.clone()];
        ids.insert(start, 0);
        let mut rows: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let mut t: BTreeSet<usize> =
                    subsets[i].iter().flat_map(|&q| self.moves[q][a].iter().copied()).collect();
                self.closure(&mut t);
                let fresh = subsets.len();
                let id = *ids.entry(t.clone()).or_insert_with(|| {
                    subsets.push(t);
                    fresh
                });
                row.push(id);
            }
            rows.push(row);
            i += 1;
        }
        let acc: Vec<usize> =
            subsets.iter().enumerate().filter(|(_, s)| s.iter().any(|&q| self.accepting[q])).map(|(i, _)| i).collect();
        Dfa::new(self.alphabet.clone(), rows, 0, acc).expect("subset construction is total").minimize()
    }
}
