//! Complete deterministic finite automata.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};

pub type StateId = usize;

/// A complete DFA. Every `(state, symbol)` pair has exactly one successor.
///
/// Automata produced by [`Dfa::minimize`] are canonical: states are numbered
/// in breadth-first order from the start state, following the alphabet order.
/// Two minimal automata over the same alphabet are therefore structurally
/// equal iff they accept the same language.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    // row-major: table[state * |V| + symbol]
    table: Vec<StateId>,
    start: StateId,
    accepting: Vec<bool>,
    minimal: bool,
}

/// Boolean combination used by [`Dfa::product`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    Complement,
    Intersect,
    Union,
    Difference,
}

impl Dfa {
    /// Builds a DFA from a transition table with one row per state and one
    /// column per alphabet symbol.
    pub fn new(
        alphabet: Alphabet,
        transitions: Vec<Vec<StateId>>,
        start: StateId,
        accepting: impl IntoIterator<Item = StateId>,
    ) -> Result<Self> {
        let n = transitions.len();
        if n == 0 {
            return Err(Error::NoStates);
        }
        if start >= n {
            return Err(Error::InvalidState { state: start, count: n });
        }
        let mut table = Vec::with_capacity(n * alphabet.len());
        for (q, row) in transitions.iter().enumerate() {
            if row.len() < alphabet.len() {
                return Err(Error::MissingTransition { state: q, symbol: alphabet.symbol(row.len()) });
            }
            for &t in row.iter().take(alphabet.len()) {
                if t >= n {
                    return Err(Error::InvalidState { state: t, count: n });
                }
                table.push(t);
            }
        }
        let mut acc = vec![false; n];
        for q in accepting {
            if q >= n {
                return Err(Error::InvalidState { state: q, count: n });
            }
            acc[q] = true;
        }
        Ok(Self { alphabet, table, start, accepting: acc, minimal: false })
    }

    /// Builds a DFA from a successor function; `delta(q, i)` receives the
    /// symbol index `i`.
    pub fn from_fn(
        alphabet: Alphabet,
        states: usize,
        start: StateId,
        accepting: impl Fn(StateId) -> bool,
        delta: impl Fn(StateId, usize) -> StateId,
    ) -> Self {
        let k = alphabet.len();
        let mut table = Vec::with_capacity(states * k);
        for q in 0..states {
            for a in 0..k {
                let t = delta(q, a);
                assert!(t < states, "successor {t} out of range");
                table.push(t);
            }
        }
        Self { alphabet, table, start, accepting: (0..states).map(accepting).collect(), minimal: false }
    }

    /// The language V*.
    pub fn universal(alphabet: Alphabet) -> Self {
        Self::from_fn(alphabet, 1, 0, |_| true, |_, _| 0).minimize()
    }

    /// The empty language.
    pub fn empty(alphabet: Alphabet) -> Self {
        Self::from_fn(alphabet, 1, 0, |_| false, |_, _| 0).minimize()
    }

    /// The language {λ}.
    pub fn epsilon(alphabet: Alphabet) -> Self {
        Self::from_fn(alphabet, 2, 0, |q| q == 0, |_, _| 1).minimize()
    }

    /// Finite language given by its words (all must be over `alphabet`).
    pub fn from_words<'a, I: IntoIterator<Item = &'a Word>>(alphabet: Alphabet, words: I) -> Result<Self> {
        // trie with a trailing sink
        let mut trie: Vec<HashMap<usize, usize>> = vec![HashMap::new()];
        let mut acc = vec![false];
        for w in words {
            alphabet.check_word(w)?;
            let mut q = 0;
            for &c in w.iter() {
                let a = alphabet.index_of(c).expect("checked");
                q = match trie[q].get(&a) {
                    Some(&t) => t,
                    None => {
                        trie.push(HashMap::new());
                        acc.push(false);
                        let t = trie.len() - 1;
                        trie[q].insert(a, t);
                        t
                    }
                };
            }
            acc[q] = true;
        }
        let sink = trie.len();
        let dfa = Self::from_fn(
            alphabet,
            sink + 1,
            0,
            |q| q < sink && acc[q],
            |q, a| if q == sink { sink } else { trie[q].get(&a).copied().unwrap_or(sink) },
        );
        Ok(dfa.minimize())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.state_count()).filter(|&q| self.accepting[q])
    }

    /// True once the automaton has been produced by [`Dfa::minimize`].
    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// Successor on the symbol with index `a`.
    #[inline]
    pub fn next(&self, q: StateId, a: usize) -> StateId {
        self.table[q * self.alphabet.len() + a]
    }

    /// Successor on symbol `c`, or `None` if `c` is not in the alphabet.
    pub fn step(&self, q: StateId, c: char) -> Option<StateId> {
        self.alphabet.index_of(c).map(|a| self.next(q, a))
    }

    /// Runs `w` from state `q`; `None` if `w` contains a foreign symbol.
    pub fn run_from(&self, q: StateId, w: &[char]) -> Option<StateId> {
        w.iter().try_fold(q, |q, &c| self.step(q, c))
    }

    pub fn run(&self, w: &[char]) -> Option<StateId> {
        self.run_from(self.start, w)
    }

    /// Membership test. Words with symbols outside the alphabet are rejected.
    pub fn accepts(&self, w: &[char]) -> bool {
        self.run(w).is_some_and(|q| self.accepting[q])
    }

    /// Same automaton with a different start state.
    pub fn with_start(&self, start: StateId) -> Self {
        Self { start, minimal: false, ..self.clone() }
    }

    /// States reachable from the start state.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut stack = vec![self.start];
        seen[self.start] = true;
        while let Some(q) = stack.pop() {
            for a in 0..self.alphabet.len() {
                let t = self.next(q, a);
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// States from which some accepting state is reachable (co-reachable).
    pub fn live(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for q in 0..n {
            for a in 0..self.alphabet.len() {
                preds[self.next(q, a)].push(q);
            }
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<StateId> = self.accepting_states().collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    /// Shortlex-minimal access word for every reachable state.
    pub fn access_words(&self) -> Vec<Option<Word>> {
        let mut words: Vec<Option<Word>> = vec![None; self.state_count()];
        words[self.start] = Some(Word::empty());
        let mut queue = VecDeque::from([self.start]);
        while let Some(q) = queue.pop_front() {
            for a in 0..self.alphabet.len() {
                let t = self.next(q, a);
                if words[t].is_none() {
                    words[t] = Some(words[q].as_ref().unwrap().pushed(self.alphabet.symbol(a)));
                    queue.push_back(t);
                }
            }
        }
        words
    }

    /// Shortlex-minimal word leading from `from` into a state satisfying `goal`.
    pub fn shortest_word_to(&self, from: StateId, goal: impl Fn(StateId) -> bool) -> Option<Word> {
        let n = self.state_count();
        let mut parent: Vec<Option<(StateId, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(q) = queue.pop_front() {
            if goal(q) {
                let mut chars = Vec::new();
                let mut cur = q;
                while let Some((p, a)) = parent[cur] {
                    chars.push(self.alphabet.symbol(a));
                    cur = p;
                }
                chars.reverse();
                return Some(Word::from_chars(chars));
            }
            for a in 0..self.alphabet.len() {
                let t = self.next(q, a);
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((q, a));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Shortlex-minimal accepted word.
    pub fn shortest_accepted(&self) -> Option<Word> {
        self.shortest_word_to(self.start, |q| self.accepting[q])
    }

    pub fn is_empty_language(&self) -> bool {
        self.shortest_accepted().is_none()
    }

    /// Minimization: unreachable states are dropped, then Moore partition
    /// refinement merges indistinguishable states, and the result is
    /// renumbered canonically.
    pub fn minimize(&self) -> Dfa {
        if self.minimal {
            return self.clone();
        }
        let k = self.alphabet.len();
        let reach = self.reachable();
        let states: Vec<StateId> = (0..self.state_count()).filter(|&q| reach[q]).collect();

        let mut class: Vec<usize> = vec![usize::MAX; self.state_count()];
        for &q in &states {
            class[q] = usize::from(self.accepting[q]);
        }
        let mut count = {
            let mut c: Vec<usize> = states.iter().map(|&q| class[q]).collect();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        loop {
            let mut sig_ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next_class = class.clone();
            for &q in &states {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                for a in 0..k {
                    sig.push(class[self.next(q, a)]);
                }
                let fresh = sig_ids.len();
                next_class[q] = *sig_ids.entry(sig).or_insert(fresh);
            }
            let new_count = sig_ids.len();
            class = next_class;
            if new_count == count {
                break;
            }
            count = new_count;
        }

        // canonical BFS renumbering
        let mut new_id: Vec<Option<usize>> = vec![None; count];
        let mut rep: Vec<StateId> = Vec::with_capacity(count);
        new_id[class[self.start]] = Some(0);
        rep.push(self.start);
        let mut i = 0;
        while i < rep.len() {
            let q = rep[i];
            for a in 0..k {
                let c = class[self.next(q, a)];
                if new_id[c].is_none() {
                    new_id[c] = Some(rep.len());
                    rep.push(self.next(q, a));
                }
            }
            i += 1;
        }
        let mut out = Dfa::from_fn(
            self.alphabet.clone(),
            rep.len(),
            0,
            |q| self.accepting[rep[q]],
            |q, a| new_id[class[self.next(rep[q], a)]].unwrap(),
        );
        out.minimal = true;
        out
    }

    /// Complement relative to V* over this automaton's alphabet.
    pub fn complement(&self) -> Dfa {
        let mut out = self.clone();
        for acc in &mut out.accepting {
            *acc = !*acc;
        }
        out
    }

    fn ensure_same_alphabet(&self, other: &Dfa) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch { left: self.alphabet.to_string(), right: other.alphabet.to_string() });
        }
        Ok(())
    }

    /// Product automaton with the given acceptance combinator, minimized.
    pub fn product(&self, other: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        self.ensure_same_alphabet(other)?;
        let k = self.alphabet.len();
        let mut ids: HashMap<(StateId, StateId), usize> = HashMap::new();
        let mut pairs = vec![(self.start, other.start)];
        ids.insert(pairs[0], 0);
        let mut rows: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let t = (self.next(p, a), other.next(q, a));
                let fresh = pairs.len();
                let id = *ids.entry(t).or_insert_with(|| {
                    pairs.push(t);
                    fresh
                });
                row.push(id);
            }
            rows.push(row);
            i += 1;
        }
        let acc: Vec<usize> = pairs
            .iter()
            .enumerate()
            .filter(|(_, &(p, q))| accept(self.accepting[p], other.accepting[q]))
            .map(|(i, _)| i)
            .collect();
        Ok(Dfa::new(self.alphabet.clone(), rows, 0, acc)?.minimize())
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a || b)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && !b)
    }

    /// Shortlex-minimal word on which the two automata disagree, or `None`
    /// if they accept the same language.
    pub fn distinguishing_word(&self, other: &Dfa) -> Result<Option<Word>> {
        self.ensure_same_alphabet(other)?;
        let k = self.alphabet.len();
        type Back = Option<((StateId, StateId), usize)>;
        let mut parent: HashMap<(StateId, StateId), Back> = HashMap::new();
        let start = (self.start, other.start);
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some(pq @ (p, q)) = queue.pop_front() {
            if self.accepting[p] != other.accepting[q] {
                let mut chars = Vec::new();
                let mut cur = pq;
                while let Some(Some((prev, a))) = parent.get(&cur) {
                    chars.push(self.alphabet.symbol(*a));
                    cur = *prev;
                }
                chars.reverse();
                return Ok(Some(Word::from_chars(chars)));
            }
            for a in 0..k {
                let t = (self.next(p, a), other.next(q, a));
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(t) {
                    e.insert(Some((pq, a)));
                    queue.push_back(t);
                }
            }
        }
        Ok(None)
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.distinguishing_word(other)?.is_none())
    }

    /// Language inclusion L(self) ⊆ L(other), with a shortlex-minimal
    /// counterexample when it fails.
    pub fn inclusion_counterexample(&self, other: &Dfa) -> Result<Option<Word>> {
        Ok(self.difference(other)?.shortest_accepted())
    }

    /// All accepted words of length ≤ `n`, sorted by length then alphabet order.
    pub fn enumerate_upto(&self, n: usize) -> Vec<Word> {
        let live = self.live();
        let mut out = Vec::new();
        let mut layer: Vec<(Word, StateId)> = Vec::new();
        if live[self.start] {
            layer.push((Word::empty(), self.start));
        }
        for len in 0..=n {
            for (w, q) in &layer {
                if self.accepting[*q] {
                    out.push(w.clone());
                }
            }
            if len == n {
                break;
            }
            let mut next = Vec::new();
            for (w, q) in &layer {
                for a in 0..self.alphabet.len() {
                    let t = self.next(*q, a);
                    if live[t] {
                        next.push((w.pushed(self.alphabet.symbol(a)), t));
                    }
                }
            }
            layer = next;
        }
        out
    }

    /// Reachable states lying on a cycle of the trim automaton, with a pump
    /// decomposition `prefix · cycle · suffix` witnessing an infinite language.
    pub fn pump(&self) -> Option<(Word, Word, Word)> {
        let reach = self.reachable();
        let live = self.live();
        let useful: Vec<bool> = (0..self.state_count()).map(|q| reach[q] && live[q]).collect();
        let access = self.access_words();
        // try states in access order so the evidence is small and deterministic
        let mut order: Vec<StateId> = (0..self.state_count()).filter(|&q| useful[q]).collect();
        order.sort_by(|&p, &q| self.alphabet.cmp_words(access[p].as_ref().unwrap(), access[q].as_ref().unwrap()));
        for q in order {
            // shortest nonempty cycle through q within useful states
            let k = self.alphabet.len();
            let mut parent: Vec<Option<(StateId, usize)>> = vec![None; self.state_count()];
            let mut seen = vec![false; self.state_count()];
            let mut queue = VecDeque::new();
            let mut found: Option<(StateId, usize)> = None;
            'outer: for a in 0..k {
                let t = self.next(q, a);
                if t == q {
                    found = Some((q, a));
                    break 'outer;
                }
                if useful[t] && !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((q, a));
                    queue.push_back(t);
                }
            }
            while found.is_none() {
                let Some(p) = queue.pop_front() else { break };
                for a in 0..k {
                    let t = self.next(p, a);
                    if t == q {
                        found = Some((p, a));
                        break;
                    }
                    if useful[t] && !seen[t] {
                        seen[t] = true;
                        parent[t] = Some((p, a));
                        queue.push_back(t);
                    }
                }
            }
            if let Some((last, a)) = found {
                let mut chars = vec![self.alphabet.symbol(a)];
                let mut cur = last;
                while cur != q {
                    let (p, b) = parent[cur].unwrap();
                    chars.push(self.alphabet.symbol(b));
                    cur = p;
                }
                chars.reverse();
                let suffix = self.shortest_word_to(q, |s| self.accepting[s]).expect("useful state is live");
                return Some((access[q].clone().unwrap(), Word::from_chars(chars), suffix));
            }
        }
        None
    }

    /// Number of reachable and co-reachable states.
    pub fn trim_state_count(&self) -> usize {
        let reach = self.reachable();
        let live = self.live();
        (0..self.state_count()).filter(|&q| reach[q] && live[q]).count()
    }
}

impl fmt::Debug for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Dfa over {{{}}} start={} minimal={}", self.alphabet, self.start, self.minimal)?;
        for q in 0..self.state_count() {
            write!(f, "  {q}{}:", if self.accepting[q] { "*" } else { "" })?;
            for a in 0..self.alphabet.len() {
                write!(f, " {}->{}", self.alphabet.symbol(a), self.next(q, a))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Applies a boolean operation. `Complement` ignores `rhs`; the others
/// require it and require equal alphabets.
pub fn bool_op(op: BoolOp, lhs: &Dfa, rhs: Option<&Dfa>) -> Result<Dfa> {
    let need = || rhs.ok_or_else(|| Error::Construction(format!("{op:?} needs two operands")));
    match op {
        BoolOp::Complement => Ok(lhs.complement().minimize()),
        BoolOp::Intersect => lhs.intersect(need()?),
        BoolOp::Union => lhs.union(need()?),
        BoolOp::Difference => lhs.difference(need()?),
    }
}
