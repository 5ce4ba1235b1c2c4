//! Exact decision procedures for the structural families. Every procedure
//! works relative to the automaton's own alphabet.

use std::collections::VecDeque;

use crate::alphabet::Word;
use crate::automata::dfa::{Dfa, StateId};
use crate::automata::nfa::Nfa;
use crate::automata::regex::RegexAst;
use crate::subregular::evidence::{Decision, Evidence};

/// FIN: the trim automaton has no cycle.
pub fn is_finite(l: &Dfa) -> Decision {
    match l.pump() {
        None => Decision::yes(Evidence::None),
        Some((prefix, cycle, suffix)) => Decision::no(Evidence::Pump { prefix, cycle, suffix }),
    }
}

/// MON: L = V*.
pub fn is_monoidal(l: &Dfa) -> Decision {
    let all = Dfa::universal(l.alphabet().clone());
    match l.distinguishing_word(&all).expect("same alphabet") {
        None => Decision::yes(Evidence::None),
        Some(w) => Decision::no(Evidence::Word(w)),
    }
}

/// NIL: L or V* \ L is finite.
pub fn is_nilpotent(l: &Dfa) -> Decision {
    let inside = is_finite(l);
    if inside.holds {
        return Decision::yes(Evidence::Note("finite".into()));
    }
    let outside = is_finite(&l.complement());
    if outside.holds {
        return Decision::yes(Evidence::Note("cofinite".into()));
    }
    match (inside.evidence, outside.evidence) {
        (
            Evidence::Pump { prefix: p1, cycle: c1, suffix: s1 },
            Evidence::Pump { prefix: p2, cycle: c2, suffix: s2 },
        ) => Decision::no(Evidence::Note(format!("pump={p1}({c1})*{s1};complement-pump={p2}({c2})*{s2}"))),
        _ => unreachable!("infinite languages always pump"),
    }
}

/// COMB: L = V*X for some X ⊆ V. X is necessarily L ∩ V.
pub fn is_combinational(l: &Dfa) -> Decision {
    let v = l.alphabet();
    let x: Vec<char> = v.symbols().iter().copied().filter(|&c| l.accepts(&[c])).collect();
    let candidate = RegexAst::concat(
        RegexAst::star(RegexAst::any_of(v.symbols().iter().map(|&c| RegexAst::Symbol(c)))),
        RegexAst::any_of(x.iter().map(|&c| RegexAst::Symbol(c))),
    )
    .compile(v)
    .expect("symbols come from the alphabet");
    match l.distinguishing_word(&candidate).expect("same alphabet") {
        None => Decision::yes(Evidence::Letters(x)),
        Some(w) => Decision::no(Evidence::Word(w)),
    }
}

/// DEF: membership depends only on a bounded suffix. On the minimal
/// automaton this holds iff the graph of distinct state pairs under common
/// letters is acyclic.
pub fn is_definite(l: &Dfa) -> Decision {
    let d = l.minimize();
    let n = d.state_count();
    let k = d.alphabet().len();
    let idx = |p: StateId, q: StateId| p * n + q;
    // ordered pairs p != q; an edge leaves the graph when the images merge
    let mut indeg = vec![0usize; n * n];
    for p in 0..n {
        for q in 0..n {
            if p == q {
                continue;
            }
            for a in 0..k {
                let (p2, q2) = (d.next(p, a), d.next(q, a));
                if p2 != q2 {
                    indeg[idx(p2, q2)] += 1;
                }
            }
        }
    }
    let mut removed = vec![false; n * n];
    let mut queue: VecDeque<(StateId, StateId)> = VecDeque::new();
    for p in 0..n {
        for q in 0..n {
            if p != q && indeg[idx(p, q)] == 0 {
                queue.push_back((p, q));
            }
        }
    }
    while let Some((p, q)) = queue.pop_front() {
        removed[idx(p, q)] = true;
        for a in 0..k {
            let (p2, q2) = (d.next(p, a), d.next(q, a));
            if p2 != q2 {
                indeg[idx(p2, q2)] -= 1;
                if indeg[idx(p2, q2)] == 0 {
                    queue.push_back((p2, q2));
                }
            }
        }
    }
    let cyclic: Vec<(StateId, StateId)> =
        (0..n).flat_map(|p| (0..n).map(move |q| (p, q))).filter(|&(p, q)| p != q && !removed[idx(p, q)]).collect();
    if cyclic.is_empty() {
        return Decision::yes(Evidence::None);
    }
    for &(p, q) in &cyclic {
        if let Some(y) = pair_cycle(&d, p, q) {
            return Decision::no(suffix_evidence(&d, p, q, &y));
        }
    }
    unreachable!("a cyclic pair graph has a pair lying on a cycle")
}

/// Shortest nonempty word mapping the pair (p, q) back onto itself while
/// never merging it.
fn pair_cycle(d: &Dfa, p: StateId, q: StateId) -> Option<Word> {
    let n = d.state_count();
    let k = d.alphabet().len();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n * n];
    let mut seen = vec![false; n * n];
    let mut queue = VecDeque::new();
    let origin = p * n + q;
    let mut expand = |from: usize, queue: &mut VecDeque<usize>, parent: &mut Vec<Option<(usize, usize)>>| {
        let (fp, fq) = (from / n, from % n);
        for a in 0..k {
            let (p2, q2) = (d.next(fp, a), d.next(fq, a));
            if p2 == q2 {
                continue;
            }
            let t = p2 * n + q2;
            if t == origin {
                return Some((from, a));
            }
            if !seen[t] {
                seen[t] = true;
                parent[t] = Some((from, a));
                queue.push_back(t);
            }
        }
        None
    };
    let mut hit = expand(origin, &mut queue, &mut parent);
    while hit.is_none() {
        let from = queue.pop_front()?;
        hit = expand(from, &mut queue, &mut parent);
    }
    let (mut cur, a) = hit.unwrap();
    let mut chars = vec![d.alphabet().symbol(a)];
    while cur != origin {
        let (prev, b) = parent[cur].unwrap();
        chars.push(d.alphabet().symbol(b));
        cur = prev;
    }
    chars.reverse();
    Some(Word::from_chars(chars))
}

/// Two words sharing the suffix y^n·z whose memberships differ.
fn suffix_evidence(d: &Dfa, p: StateId, q: StateId, y: &Word) -> Evidence {
    let access = d.access_words();
    let n = d.state_count();
    let pumped: Vec<char> = y.iter().copied().cycle().take(y.len() * n).collect();
    let (p2, q2) = (d.run_from(p, &pumped).unwrap(), d.run_from(q, &pumped).unwrap());
    let z = distinguishing_suffix(d, p2, q2);
    let wp = Word::concat(&[access[p].as_ref().unwrap(), &pumped, &z]);
    let wq = Word::concat(&[access[q].as_ref().unwrap(), &pumped, &z]);
    if d.accepts(&wp) {
        Evidence::Pair { inside: wp, outside: wq }
    } else {
        Evidence::Pair { inside: wq, outside: wp }
    }
}

/// Shortlex-minimal word separating two states of a minimal automaton.
pub(crate) fn distinguishing_suffix(d: &Dfa, p: StateId, q: StateId) -> Word {
    let n = d.state_count();
    let k = d.alphabet().len();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n * n];
    let mut seen = vec![false; n * n];
    let start = p * n + q;
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        let (a_state, b_state) = (cur / n, cur % n);
        if d.is_accepting(a_state) != d.is_accepting(b_state) {
            let mut chars = Vec::new();
            let mut c = cur;
            while let Some((prev, a)) = parent[c] {
                chars.push(d.alphabet().symbol(a));
                c = prev;
            }
            chars.reverse();
            return Word::from_chars(chars);
        }
        for a in 0..k {
            let t = d.next(a_state, a) * n + d.next(b_state, a);
            if !seen[t] {
                seen[t] = true;
                parent[t] = Some((cur, a));
                queue.push_back(t);
            }
        }
    }
    panic!("states {p} and {q} of a minimal automaton are distinguishable")
}

/// Some accepted word of the form `x · w` for a given `w`, if one exists.
fn accepted_with_suffix(l: &Dfa, w: &[char]) -> Option<Word> {
    let access = l.access_words();
    let mut candidates: Vec<Word> = (0..l.state_count())
        .filter_map(|q| {
            let x = access[q].as_ref()?;
            let t = l.run_from(q, w)?;
            l.is_accepting(t).then(|| Word::concat(&[x, w]))
        })
        .collect();
    l.alphabet().sort_words(&mut candidates);
    candidates.into_iter().next()
}

/// SUF: xy ∈ L implies y ∈ L.
pub fn is_suffix_closed(l: &Dfa) -> Decision {
    let reach = l.reachable();
    let mut nfa = Nfa::new(l.alphabet().clone());
    let base = nfa.embed(l);
    for (q, &reachable) in reach.iter().enumerate() {
        nfa.set_accepting(base + q, l.is_accepting(q));
        if reachable {
            nfa.add_start(base + q);
        }
    }
    let suffixes = nfa.determinize();
    match suffixes.inclusion_counterexample(l).expect("same alphabet") {
        None => Decision::yes(Evidence::None),
        Some(w) => {
            let inside = accepted_with_suffix(l, &w).expect("w is a suffix of an accepted word");
            Decision::no(Evidence::Pair { inside, outside: w })
        }
    }
}

/// COMM: closed under permutations, checked via adjacent transpositions.
pub fn is_commutative(l: &Dfa) -> Decision {
    let v = l.alphabet();
    let n = l.state_count();
    for a in 0..v.len() {
        for b in 0..v.len() {
            if a == b {
                continue;
            }
            // phase 0: reading u; mid: read b in place of ab; phase 1: reading v
            let mut nfa = Nfa::new(v.clone());
            let p0 = nfa.embed(l);
            let p1 = nfa.embed(l);
            let mid: Vec<usize> = (0..n).map(|_| nfa.add_state(false)).collect();
            nfa.add_start(p0 + l.start());
            for (q, &m) in mid.iter().enumerate() {
                nfa.set_accepting(p1 + q, l.is_accepting(q));
                nfa.add_move(p0 + q, b, m);
                nfa.add_move(m, a, p1 + l.next(l.next(q, a), b));
            }
            let swapped = nfa.determinize();
            if let Some(w) = swapped.inclusion_counterexample(l).expect("same alphabet") {
                let (ca, cb) = (v.symbol(a), v.symbol(b));
                let inside = (0..w.len().saturating_sub(1))
                    .filter(|&i| w[i] == cb && w[i + 1] == ca)
                    .map(|i| {
                        let mut s = w.clone().into_chars();
                        s.swap(i, i + 1);
                        Word::from_chars(s)
                    })
                    .find(|s| l.accepts(s))
                    .expect("witness comes from a transposed member");
                return Decision::no(Evidence::Pair { inside, outside: w });
            }
        }
    }
    Decision::yes(Evidence::None)
}

/// CIRC: closed under circular shifts, checked via single rotations av → va.
pub fn is_circular(l: &Dfa) -> Decision {
    let v = l.alphabet();
    let n = l.state_count();
    let mut nfa = Nfa::new(v.clone());
    let done = nfa.add_state(true);
    for a in 0..v.len() {
        // copy of l that remembers the guessed first letter a
        let base = nfa.embed(l);
        nfa.add_start(base + l.next(l.start(), a));
        for q in 0..n {
            if l.is_accepting(q) {
                nfa.add_move(base + q, a, done);
            }
        }
    }
    let rotated = nfa.determinize();
    match rotated.inclusion_counterexample(l).expect("same alphabet") {
        None => Decision::yes(Evidence::None),
        Some(w) => {
            let last = *w.last().expect("rotations are nonempty");
            let inside = Word::concat(&[&[last], &w[..w.len() - 1]]);
            Decision::no(Evidence::Pair { inside, outside: w })
        }
    }
}
