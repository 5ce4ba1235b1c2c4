//! Strictly locally k-testable languages.
//!
//! A word `a1…an` with `n ≥ k` is accepted by ⟨B,I,E,F⟩ iff its length-k
//! prefix is in B, its length-k suffix is in E, and every window
//! `a(j+1)…a(j+k)` with `1 ≤ j ≤ n−k−1` is in I. Interior windows are exactly
//! the windows with at least one symbol on each side, so for `n ∈ {k, k+1}`
//! no interior condition applies. Words shorter than k are accepted iff
//! they are in F.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::alphabet::{format_word_set, Alphabet, Word};
use crate::automata::dfa::{Dfa, StateId};
use crate::automata::factors::{factor_sets, WindowContext};
use crate::automata::regex::RegexAst;
use crate::error::{Error, Result};
use crate::subregular::evidence::Evidence;
use crate::subregular::families::distinguishing_suffix;
use crate::subregular::monoid::{noncounting_in, TransitionMonoid};

/// ⟨B, I, E, F⟩ with window length `k` over `alphabet`.
#[derive(Clone, PartialEq, Eq)]
pub struct SltRep {
    k: usize,
    alphabet: Alphabet,
    begin: BTreeSet<Word>,
    inner: BTreeSet<Word>,
    end: BTreeSet<Word>,
    short: BTreeSet<Word>,
}

impl SltRep {
    pub fn new(
        alphabet: Alphabet,
        k: usize,
        begin: impl IntoIterator<Item = Word>,
        inner: impl IntoIterator<Item = Word>,
        end: impl IntoIterator<Item = Word>,
        short: impl IntoIterator<Item = Word>,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroWindow);
        }
        let rep = Self {
            k,
            alphabet,
            begin: begin.into_iter().collect(),
            inner: inner.into_iter().collect(),
            end: end.into_iter().collect(),
            short: short.into_iter().collect(),
        };
        for (name, set) in [("B", &rep.begin), ("I", &rep.inner), ("E", &rep.end)] {
            for w in set {
                if w.len() != k {
                    return Err(Error::SltInvariant(format!("{name} word '{w}' has length {} but k = {k}", w.len())));
                }
                rep.alphabet.check_word(w)?;
            }
        }
        for w in &rep.short {
            if w.len() >= k {
                return Err(Error::SltInvariant(format!(
                    "F word '{w}' has length {} but must be shorter than k = {k}",
                    w.len()
                )));
            }
            rep.alphabet.check_word(w)?;
        }
        Ok(rep)
    }

    /// Convenience constructor from string tokens (`_` for λ).
    pub fn parse_sets(
        alphabet: &str,
        k: usize,
        begin: &[&str],
        inner: &[&str],
        end: &[&str],
        short: &[&str],
    ) -> Result<Self> {
        let words = |ws: &[&str]| ws.iter().map(|w| Word::parse(w)).collect::<Result<Vec<_>>>();
        Self::new(Alphabet::from_chars(alphabet)?, k, words(begin)?, words(inner)?, words(end)?, words(short)?)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn begin(&self) -> &BTreeSet<Word> {
        &self.begin
    }

    pub fn inner(&self) -> &BTreeSet<Word> {
        &self.inner
    }

    pub fn end(&self) -> &BTreeSet<Word> {
        &self.end
    }

    pub fn short(&self) -> &BTreeSet<Word> {
        &self.short
    }

    fn sorted(&self, set: &BTreeSet<Word>) -> Vec<Word> {
        let mut v: Vec<Word> = set.iter().cloned().collect();
        self.alphabet.sort_words(&mut v);
        v
    }

    pub fn begin_sorted(&self) -> Vec<Word> {
        self.sorted(&self.begin)
    }

    pub fn inner_sorted(&self) -> Vec<Word> {
        self.sorted(&self.inner)
    }

    pub fn end_sorted(&self) -> Vec<Word> {
        self.sorted(&self.end)
    }

    pub fn short_sorted(&self) -> Vec<Word> {
        self.sorted(&self.short)
    }

    /// Single-token rendering used in reports, e.g. `k=1;B={a};I={b};E={a};F={}`.
    pub fn compact(&self) -> String {
        format!(
            "k={};B={};I={};E={};F={}",
            self.k,
            format_word_set(&self.begin_sorted()),
            format_word_set(&self.inner_sorted()),
            format_word_set(&self.end_sorted()),
            format_word_set(&self.short_sorted()),
        )
    }

    pub fn contains(&self, w: &[char]) -> bool {
        slt_membership(self, w)
    }

    pub fn to_dfa(&self) -> Dfa {
        slt_to_dfa(self)
    }
}

impl fmt::Debug for SltRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SltRep({} over {{{}}})", self.compact(), self.alphabet)
    }
}

impl fmt::Display for SltRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |ws: Vec<Word>| {
            if ws.is_empty() {
                "∅".to_string()
            } else {
                format_word_set(&ws)
            }
        };
        write!(
            f,
            "⟨{},{},{},{}⟩",
            show(self.begin_sorted()),
            show(self.inner_sorted()),
            show(self.end_sorted()),
            show(self.short_sorted())
        )
    }
}

/// Direct membership test against ⟨B,I,E,F⟩.
pub fn slt_membership(rep: &SltRep, w: &[char]) -> bool {
    if !rep.alphabet.contains_word(w) {
        return false;
    }
    let k = rep.k;
    let n = w.len();
    if n < k {
        return rep.short.contains(&Word::from(w));
    }
    if !rep.begin.contains(&Word::from(&w[..k])) || !rep.end.contains(&Word::from(&w[n - k..])) {
        return false;
    }
    // windows starting at 1-based positions 2..=n-k
    (1..n.saturating_sub(k)).all(|start| rep.inner.contains(&Word::from(&w[start..start + k])))
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum SltState {
    /// fewer than k symbols read
    Short(Word),
    /// exactly k symbols read; the prefix window
    Prefix(Word),
    /// more than k symbols read; last k symbols
    Window(Word),
    Dead,
}

/// Builds a minimal DFA for the language of `rep`.
pub fn slt_to_dfa(rep: &SltRep) -> Dfa {
    let k = rep.k;
    let v = &rep.alphabet;
    let mut live_short: BTreeSet<Word> = BTreeSet::new();
    for w in rep.short.iter().chain(rep.begin.iter()) {
        for i in 0..w.len().min(k - 1) + 1 {
            live_short.insert(w.prefix(i));
        }
    }
    let step = |s: &SltState, c: char| -> SltState {
        match s {
            SltState::Dead => SltState::Dead,
            SltState::Short(w) => {
                let w2 = w.pushed(c);
                if w2.len() < k {
                    if live_short.contains(&w2) {
                        SltState::Short(w2)
                    } else {
                        SltState::Dead
                    }
                } else if rep.begin.contains(&w2) {
                    SltState::Prefix(w2)
                } else {
                    SltState::Dead
                }
            }
            SltState::Prefix(p) => SltState::Window(p.slice(1, k).pushed(c)),
            SltState::Window(w) => {
                if rep.inner.contains(w) {
                    SltState::Window(w.slice(1, k).pushed(c))
                } else {
                    SltState::Dead
                }
            }
        }
    };
    let accepting = |s: &SltState| match s {
        SltState::Dead => false,
        SltState::Short(w) => rep.short.contains(w),
        SltState::Prefix(w) | SltState::Window(w) => rep.end.contains(w),
    };
    let start = if k == 0 { unreachable!("k ≥ 1 by construction") } else { SltState::Short(Word::empty()) };
    let mut ids: HashMap<SltState, usize> = HashMap::new();
    let mut states = vec![start.clone()];
    ids.insert(start, 0);
    let mut rows = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let mut row = Vec::with_capacity(v.len());
        for &c in v.symbols() {
            let t = step(&states[i], c);
            let fresh = states.len();
            let id = *ids.entry(t.clone()).or_insert_with(|| {
                states.push(t);
                fresh
            });
            row.push(id);
        }
        rows.push(row);
        i += 1;
    }
    let acc: Vec<usize> = (0..states.len()).filter(|&i| accepting(&states[i])).collect();
    Dfa::new(v.clone(), rows, 0, acc).expect("total by construction").minimize()
}

/// Outcome of the SLT_k test for one k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SltCheck {
    /// The language equals the returned exact representation.
    Yes(SltRep),
    /// `witness` has length ≥ k and passes the canonical window test but is
    /// not in the language.
    No { witness: Word },
}

impl SltCheck {
    pub fn holds(&self) -> bool {
        matches!(self, SltCheck::Yes(_))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Probe {
    // symbols read, capped at k + 1
    len: usize,
    state: StateId,
    // images of (reach0, reach1) under the suffixes of length 1..=min(len, k)
    chain: Vec<(Vec<StateId>, Vec<StateId>)>,
}

/// Shortest word of length ≥ k that satisfies the canonical window
/// conditions of `l` but is not in `l`, if any.
///
/// Searches the automaton whose states pair the DFA state with the images of
/// δ(z0,V*) and δ(z0,V⁺) under the last i symbols, i ≤ k. Window membership
/// in the canonical sets only depends on those images, so the search space
/// stays far below |V|^k.
fn canonical_counterexample(l: &Dfa, k: usize) -> Option<Word> {
    let ctx = WindowContext::new(l);
    let v = l.alphabet();
    let reach0 = ctx.prune(&ctx.reach0);
    let reach1 = ctx.prune(&ctx.reach1);
    let start = Probe { len: 0, state: l.start(), chain: Vec::new() };

    let mut nodes: Vec<(Probe, Option<(usize, usize)>)> = vec![(start.clone(), None)];
    let mut seen: HashMap<Probe, usize> = HashMap::from([(start, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        let probe = nodes[idx].0.clone();
        if probe.len >= k {
            let (u_k, _) = &probe.chain[k - 1];
            let in_e = u_k.iter().any(|&q| l.is_accepting(q));
            if in_e && !l.is_accepting(probe.state) {
                let mut chars = Vec::new();
                let mut cur = idx;
                while let Some((p, a)) = nodes[cur].1 {
                    chars.push(v.symbol(a));
                    cur = p;
                }
                chars.reverse();
                return Some(Word::from_chars(chars));
            }
        }
        if probe.len == k + 1 {
            // the last window gets a right neighbour and becomes interior
            let (_, s_k) = &probe.chain[k - 1];
            if !s_k.iter().any(|&q| ctx.live1[q]) {
                continue;
            }
        }
        for a in 0..v.len() {
            let state = l.next(probe.state, a);
            let len = (probe.len + 1).min(k + 1);
            if probe.len + 1 == k && !ctx.live[state] {
                continue;
            }
            let mut chain = Vec::with_capacity(k);
            chain.push((ctx.image(l, &reach0, a), ctx.image(l, &reach1, a)));
            for (u, s) in probe.chain.iter().take(k - 1) {
                chain.push((ctx.image(l, u, a), ctx.image(l, s, a)));
            }
            let next = Probe { len, state, chain };
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), nodes.len());
                nodes.push((next, Some((idx, a))));
                queue.push_back(nodes.len() - 1);
            }
        }
    }
    None
}

/// True iff `w` (|w| ≥ k) has its prefix, interior windows and suffix in the
/// canonical window sets of `l`.
pub(crate) fn passes_canonical_test(l: &Dfa, ctx: &WindowContext, w: &[char], k: usize) -> bool {
    let v = l.alphabet();
    let idx: Option<Vec<usize>> = w.iter().map(|&c| v.index_of(c)).collect();
    let Some(idx) = idx else { return false };
    let n = idx.len();
    if n < k {
        return false;
    }
    let image = |start: &[StateId], s: &[usize]| {
        let mut set = start.to_vec();
        for &a in s {
            set = ctx.image(l, &set, a);
        }
        set
    };
    let prefix_ok = !image(&[l.start()], &idx[..k]).is_empty();
    let suffix_ok = image(&ctx.reach0, &idx[n - k..]).iter().any(|&q| l.is_accepting(q));
    prefix_ok
        && suffix_ok
        && (1..n.saturating_sub(k)).all(|s| image(&ctx.reach1, &idx[s..s + k]).iter().any(|&q| ctx.live1[q]))
}

/// For a counting language: a word outside `l` that passes the canonical
/// test for k. Built from a monoid element x with period > 1: for large A,
/// u·x^A·v and u·x^(A+1)·v have the same windows in the same roles, and a
/// suitable context makes exactly one of them a member.
fn counting_counterexample(l: &Dfa, k: usize) -> Option<Word> {
    let m = TransitionMonoid::build_capped(l, COUNTING_MONOID_CAP)?;
    let Evidence::Power { word: x, index, .. } = noncounting_in(&m).evidence else {
        return None;
    };
    let reps = index.max(k / x.len() + 2);
    let xa: Vec<char> = x.iter().copied().cycle().take(x.len() * reps).collect();
    let xb: Vec<char> = x.iter().copied().cycle().take(x.len() * (reps + 1)).collect();
    let access = l.access_words();
    let q = (0..l.state_count()).find(|&q| l.run_from(q, &xa) != l.run_from(q, &xb))?;
    let (pa, pb) = (l.run_from(q, &xa)?, l.run_from(q, &xb)?);
    let v = distinguishing_suffix(l, pa, pb);
    let u = access[q].as_ref()?;
    let wa = Word::concat(&[u, &xa, &v]);
    let wb = Word::concat(&[u, &xb, &v]);
    let rejected = if l.accepts(&wa) { wb } else { wa };
    debug_assert!(passes_canonical_test(l, &WindowContext::new(l), &rejected, k));
    Some(rejected)
}

const COUNTING_MONOID_CAP: usize = 200_000;

/// Decides whether `l` is strictly locally k-testable.
///
/// Any valid ⟨B,I,E⟩ contains the canonical window sets, so the canonical
/// candidate works iff some candidate does. On success the returned
/// representation is exact, with F = L ∩ V^{≤k−1}. For counting languages
/// (never SLT) the counterexample is built directly and need not be the
/// shortest one.
pub fn is_slt_k(l: &Dfa, k: usize) -> Result<SltCheck> {
    if k == 0 {
        return Err(Error::ZeroWindow);
    }
    let l = l.minimize();
    if let Some(witness) = counting_counterexample(&l, k) {
        return Ok(SltCheck::No { witness });
    }
    if let Some(witness) = canonical_counterexample(&l, k) {
        return Ok(SltCheck::No { witness });
    }
    let f = factor_sets(&l, k)?;
    let short = l.enumerate_upto(k - 1);
    let rep = SltRep::new(l.alphabet().clone(), k, f.prefixes, f.interior, f.suffixes, short)?;
    Ok(SltCheck::Yes(rep))
}

/// Result of searching for the smallest k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SltInference {
    Slt {
        k: usize,
        rep: SltRep,
    },
    /// No k ≤ the bound works; this is a bounded statement only.
    NotSltUpTo(usize),
}

/// Default search bound: (number of minimal-DFA states)² + 1.
pub fn default_k_max(l: &Dfa) -> usize {
    let n = l.minimize().state_count();
    n * n + 1
}

/// Smallest k ≤ `k_max` for which `l` is SLT_k.
pub fn infer_slt(l: &Dfa, k_max: usize) -> Result<SltInference> {
    if k_max == 0 {
        return Err(Error::ZeroWindow);
    }
    let l = l.minimize();
    for k in 1..=k_max {
        if let SltCheck::Yes(rep) = is_slt_k(&l, k)? {
            return Ok(SltInference::Slt { k, rep });
        }
    }
    Ok(SltInference::NotSltUpTo(k_max))
}

/// Automaton for D_s ∪ V*D_e.
pub fn definite_language(ds: &[Word], de: &[Word], v: &Alphabet) -> Result<Dfa> {
    let sigma_star = RegexAst::star(RegexAst::any_of(v.symbols().iter().map(|&c| RegexAst::Symbol(c))));
    let finite = RegexAst::any_of(ds.iter().map(|w| RegexAst::word(w)));
    let tails = RegexAst::any_of(de.iter().map(|w| RegexAst::word(w)));
    RegexAst::union(finite, RegexAst::concat(sigma_star, tails)).compile(v)
}

/// Converts a definite language D_s ∪ V*D_e into an SLT representation with
/// k = max{|w| : w ∈ D_s ∪ D_e} + 1, B = I = V^k, E = V*D_e ∩ V^k and
/// F = L ∩ V^{≤k−1}. The result is checked for language equality before it
/// is returned.
pub fn definite_to_slt(ds: &[Word], de: &[Word], v: &Alphabet) -> Result<SltRep> {
    for w in ds.iter().chain(de) {
        v.check_word(w)?;
    }
    let k = ds.iter().chain(de).map(|w| w.len()).max().unwrap_or(0) + 1;
    let l = definite_language(ds, de, v)?;
    let all = v.words_of_length(k);
    let end: Vec<Word> = all.iter().filter(|w| de.iter().any(|d| w.ends_with(d))).cloned().collect();
    let short = l.enumerate_upto(k - 1);
    let rep = SltRep::new(v.clone(), k, all.clone(), all, end, short)?;
    if let Some(w) = slt_to_dfa(&rep).distinguishing_word(&l)? {
        return Err(Error::Construction(format!("SLT representation disagrees with D_s ∪ V*D_e on '{w}'")));
    }
    Ok(rep)
}
