//! External and internal derivation, bounded closure, traces and bounded
//! comparison.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use crate::alphabet::{Alphabet, Word};
use crate::automata::dfa::Dfa;
use crate::error::{Error, Result};
use crate::grammar::model::ContextualGrammar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    External,
    Internal,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ex" | "external" => Ok(Mode::External),
            "in" | "internal" => Ok(Mode::Internal),
            other => Err(Error::Parse { line: 0, message: format!("unknown mode '{other}' (use ex or in)") }),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::External => "ex",
            Mode::Internal => "in",
        })
    }
}

/// Where the context went.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Placement {
    /// Around the whole word.
    External,
    /// Around the selected subword `x[start..end]`.
    Internal { start: usize, end: usize },
}

/// One derivation step `source ⟹ result`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    pub pair: usize,
    pub context: usize,
    pub placement: Placement,
    pub result: Word,
}

fn apply(g: &ContextualGrammar, x: &[char], pair: usize, context: usize, placement: Placement) -> Word {
    let c = &g.pairs[pair].contexts[context];
    match placement {
        Placement::External => Word::concat(&[&c.u, x, &c.v]),
        Placement::Internal { start, end } => Word::concat(&[&x[..start], &c.u, &x[start..end], &c.v, &x[end..]]),
    }
}

/// All derivation steps from `x`, in canonical order: pair, then split
/// (start, end), then context. Empty contexts are skipped because they
/// only reproduce `x`.
pub fn derivations(g: &ContextualGrammar, mode: Mode, x: &[char]) -> Vec<Derivation> {
    let mut out = Vec::new();
    for (p, pair) in g.pairs.iter().enumerate() {
        let live: Vec<usize> = (0..pair.contexts.len()).filter(|&c| !pair.contexts[c].is_empty()).collect();
        if live.is_empty() {
            continue;
        }
        let sel = pair.selector.dfa();
        let push = |placement: Placement, out: &mut Vec<Derivation>| {
            for &c in &live {
                out.push(Derivation { pair: p, context: c, placement, result: apply(g, x, p, c, placement) });
            }
        };
        match mode {
            Mode::External => {
                if sel.accepts(x) {
                    push(Placement::External, &mut out);
                }
            }
            Mode::Internal => {
                for start in 0..=x.len() {
                    let mut q = sel.start();
                    if sel.is_accepting(q) {
                        push(Placement::Internal { start, end: start }, &mut out);
                    }
                    for end in start + 1..=x.len() {
                        match sel.step(q, x[end - 1]) {
                            Some(t) => q = t,
                            None => break,
                        }
                        if sel.is_accepting(q) {
                            push(Placement::Internal { start, end }, &mut out);
                        }
                    }
                }
            }
        }
    }
    out
}

/// One-step successors in the given mode, sorted and deduplicated.
pub fn successors(g: &ContextualGrammar, mode: Mode, x: &[char]) -> Vec<Word> {
    let mut out: Vec<Word> = derivations(g, mode, x).into_iter().map(|d| d.result).collect();
    g.alphabet.sort_words(&mut out);
    out.dedup();
    out
}

/// { u·w·v : w ∈ S, (u,v) ∈ C } over all pairs, sorted.
pub fn external_successors(g: &ContextualGrammar, w: &[char]) -> Vec<Word> {
    successors(g, Mode::External, w)
}

/// { x₁·u·x₂·v·x₃ : w = x₁x₂x₃, x₂ ∈ S, (u,v) ∈ C } over all pairs, sorted.
pub fn internal_successors(g: &ContextualGrammar, w: &[char]) -> Vec<Word> {
    successors(g, Mode::Internal, w)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GenerateOptions {
    pub max_len: usize,
    /// Maximum number of words expanded before giving up.
    pub step_cap: Option<usize>,
    /// Expand each length layer in parallel.
    pub parallel: bool,
}

impl GenerateOptions {
    pub fn new(max_len: usize) -> Self {
        Self { max_len, step_cap: None, parallel: false }
    }
}

/// Called once per expanded word with all of its derivation steps
/// (including ones whose result exceeds the length bound).
pub trait ExpansionObserver: Sync {
    fn on_expand(&self, source: &Word, steps: &[Derivation]);
}

struct NoObserver;

impl ExpansionObserver for NoObserver {
    fn on_expand(&self, _: &Word, _: &[Derivation]) {}
}

/// Every word of L_mode(G) of length at most `max_len`, in shortlex order.
pub fn generate_bounded(g: &ContextualGrammar, mode: Mode, opts: &GenerateOptions) -> Result<Vec<Word>> {
    generate_bounded_observed(g, mode, opts, &NoObserver)
}

/// As [`generate_bounded`], reporting each expansion to `observer`.
///
/// Non-empty contexts make every step strictly lengthening, so the closure
/// is computed one length layer at a time: when layer n is expanded, every
/// word of length n has already been produced by a shorter word.
pub fn generate_bounded_observed(
    g: &ContextualGrammar,
    mode: Mode,
    opts: &GenerateOptions,
    observer: &dyn ExpansionObserver,
) -> Result<Vec<Word>> {
    let max_len = opts.max_len;
    let mut layers: Vec<Vec<Word>> = vec![Vec::new(); max_len + 1];
    let mut seen: HashSet<Word> = HashSet::new();
    for w in &g.axioms {
        if w.len() <= max_len && seen.insert(w.clone()) {
            layers[w.len()].push(w.clone());
        }
    }
    let mut expanded = 0usize;
    for n in 0..=max_len {
        let mut layer = std::mem::take(&mut layers[n]);
        g.alphabet.sort_words(&mut layer);
        if let Some(cap) = opts.step_cap {
            if expanded + layer.len() > cap {
                let mut partial: Vec<Word> = seen.into_iter().collect();
                g.alphabet.sort_words(&mut partial);
                return Err(Error::StepCapExhausted { cap, collected: partial.len(), partial });
            }
        }
        expanded += layer.len();
        let expand = |x: &Word| {
            let steps = derivations(g, mode, x);
            observer.on_expand(x, &steps);
            steps.into_iter().map(|d| d.result).filter(|y| y.len() <= max_len).collect::<Vec<Word>>()
        };
        let produced: Vec<Vec<Word>> =
            if opts.parallel { layer.par_iter().map(expand).collect() } else { layer.iter().map(expand).collect() };
        for y in produced.into_iter().flatten() {
            debug_assert!(y.len() > n);
            if !seen.contains(&y) {
                seen.insert(y.clone());
                layers[y.len()].push(y);
            }
        }
        layers[n] = layer;
    }
    let mut out: Vec<Word> = layers.into_iter().flatten().collect();
    g.alphabet.sort_words(&mut out);
    Ok(out)
}

/// Watches every expansion for the two structural properties of derivation
/// steps: each step strictly lengthens the word (contexts are non-empty),
/// and in internal mode the pair just used still applies to the result.
pub struct InvariantMonitor<'g> {
    grammar: &'g ContextualGrammar,
    mode: Mode,
    expansions: AtomicUsize,
    steps: AtomicUsize,
    violations: Mutex<Vec<String>>,
}

impl<'g> InvariantMonitor<'g> {
    pub fn new(grammar: &'g ContextualGrammar, mode: Mode) -> Self {
        Self {
            grammar,
            mode,
            expansions: AtomicUsize::new(0),
            steps: AtomicUsize::new(0),
            violations: Mutex::new(Vec::new()),
        }
    }

    pub fn expansions(&self) -> usize {
        self.expansions.load(Ordering::Relaxed)
    }

    pub fn steps(&self) -> usize {
        self.steps.load(Ordering::Relaxed)
    }

    /// Sorted, so the list does not depend on scheduling.
    pub fn violations(&self) -> Vec<String> {
        let mut v = self.violations.lock().expect("monitor lock").clone();
        v.sort();
        v
    }
}

fn pair_applies(g: &ContextualGrammar, pair: usize, y: &[char]) -> bool {
    let sel = g.pairs[pair].selector.dfa();
    (0..=y.len()).any(|i| {
        let mut q = sel.start();
        if sel.is_accepting(q) {
            return true;
        }
        for &c in &y[i..] {
            match sel.step(q, c) {
                Some(t) => q = t,
                None => return false,
            }
            if sel.is_accepting(q) {
                return true;
            }
        }
        false
    })
}

impl ExpansionObserver for InvariantMonitor<'_> {
    fn on_expand(&self, source: &Word, steps: &[Derivation]) {
        self.expansions.fetch_add(1, Ordering::Relaxed);
        self.steps.fetch_add(steps.len(), Ordering::Relaxed);
        let mut found = Vec::new();
        for d in steps {
            if d.result.len() <= source.len() {
                found.push(format!("step {source} ⟹ {} does not lengthen the word", d.result));
            }
            if self.mode == Mode::Internal && !pair_applies(self.grammar, d.pair, &d.result) {
                found.push(format!("pair {} no longer applies after {source} ⟹ {}", d.pair + 1, d.result));
            }
        }
        if !found.is_empty() {
            self.violations.lock().expect("monitor lock").extend(found);
        }
    }
}

/// A derivation from an axiom, step by step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace {
    pub mode: Mode,
    pub axiom: Word,
    pub steps: Vec<Derivation>,
}

impl DerivationTrace {
    pub fn target(&self) -> &Word {
        self.steps.last().map_or(&self.axiom, |d| &d.result)
    }

    /// Re-applies every step and checks that it is licensed by `g`.
    pub fn replay(&self, g: &ContextualGrammar) -> Result<Word> {
        if !g.axioms.contains(&self.axiom) {
            return Err(Error::Construction(format!("'{}' is not an axiom", self.axiom)));
        }
        let mut cur = self.axiom.clone();
        for (i, step) in self.steps.iter().enumerate() {
            let bad = |why: &str| Error::Construction(format!("step {}: {why}", i + 1));
            let pair = g.pairs.get(step.pair).ok_or_else(|| bad("no such pair"))?;
            if step.context >= pair.contexts.len() {
                return Err(bad("no such context"));
            }
            let selected: &[char] = match (self.mode, step.placement) {
                (Mode::External, Placement::External) => &cur,
                (Mode::Internal, Placement::Internal { start, end }) if start <= end && end <= cur.len() => {
                    &cur[start..end]
                }
                _ => return Err(bad("placement does not fit the mode or the word")),
            };
            if !pair.selector.contains(selected) {
                return Err(bad("selected word is not in the selection language"));
            }
            let next = apply(g, &cur, step.pair, step.context, step.placement);
            if next != step.result {
                return Err(bad("recorded result differs from the replayed one"));
            }
            cur = next;
        }
        Ok(cur)
    }
}

impl fmt::Display for DerivationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.axiom)?;
        for s in &self.steps {
            write!(f, " ⟹ {}", s.result)?;
        }
        Ok(())
    }
}

/// A derivation of `target` with the fewest steps, found breadth-first
/// from the axioms in shortlex order; ties are broken by the canonical
/// order of derivation steps.
pub fn derivation_trace(g: &ContextualGrammar, mode: Mode, target: &Word, max_len: usize) -> Result<DerivationTrace> {
    let not_found = || Error::NotDerivable { target: target.clone(), max_len };
    if target.len() > max_len {
        return Err(not_found());
    }
    let mut parent: HashMap<Word, Option<(Word, Derivation)>> = HashMap::new();
    let mut queue = VecDeque::new();
    for a in &g.axioms {
        if a.len() <= target.len() && !parent.contains_key(a) {
            parent.insert(a.clone(), None);
            queue.push_back(a.clone());
        }
    }
    while let Some(x) = queue.pop_front() {
        if &x == target {
            let mut steps = Vec::new();
            let mut cur = x;
            while let Some(Some((prev, d))) = parent.get(&cur) {
                steps.push(d.clone());
                cur = prev.clone();
            }
            steps.reverse();
            return Ok(DerivationTrace { mode, axiom: cur, steps });
        }
        for d in derivations(g, mode, &x) {
            // steps never shorten words, so longer words cannot lead to the target
            if d.result.len() <= target.len() && !parent.contains_key(&d.result) {
                parent.insert(d.result.clone(), Some((x.clone(), d.clone())));
                queue.push_back(d.result);
            }
        }
    }
    Err(not_found())
}

/// Something that yields a finite sample of a language.
#[derive(Debug, Clone)]
pub enum SampleSource {
    Dfa(Dfa),
    Grammar(ContextualGrammar, Mode),
    Words { alphabet: Option<Alphabet>, words: Vec<Word> },
}

impl SampleSource {
    pub fn alphabet(&self) -> Option<&Alphabet> {
        match self {
            SampleSource::Dfa(d) => Some(d.alphabet()),
            SampleSource::Grammar(g, _) => Some(&g.alphabet),
            SampleSource::Words { alphabet, .. } => alphabet.as_ref(),
        }
    }

    /// Members of length ≤ `max_len`, deduplicated.
    pub fn sample(&self, max_len: usize) -> Result<Vec<Word>> {
        Ok(match self {
            SampleSource::Dfa(d) => d.enumerate_upto(max_len),
            SampleSource::Grammar(g, mode) => generate_bounded(g, *mode, &GenerateOptions::new(max_len))?,
            SampleSource::Words { words, .. } => {
                let mut ws: Vec<Word> = words.iter().filter(|w| w.len() <= max_len).cloned().collect();
                ws.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
                ws.dedup();
                ws
            }
        })
    }
}

/// Symmetric difference of two bounded samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub max_len: usize,
    pub left_count: usize,
    pub right_count: usize,
    pub only_left: Vec<Word>,
    pub only_right: Vec<Word>,
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        self.only_left.is_empty() && self.only_right.is_empty()
    }

    pub fn of(left: &[Word], right: &[Word], max_len: usize, order: Option<&Alphabet>) -> Self {
        let l: HashSet<&Word> = left.iter().filter(|w| w.len() <= max_len).collect();
        let r: HashSet<&Word> = right.iter().filter(|w| w.len() <= max_len).collect();
        let mut only_left: Vec<Word> = l.difference(&r).map(|w| (*w).clone()).collect();
        let mut only_right: Vec<Word> = r.difference(&l).map(|w| (*w).clone()).collect();
        for v in [&mut only_left, &mut only_right] {
            match order {
                Some(a) => a.sort_words(v),
                None => v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b))),
            }
        }
        Self { max_len, left_count: l.len(), right_count: r.len(), only_left, only_right }
    }
}

/// Compares two sources on all words of length ≤ `max_len`.
pub fn compare_bounded(left: &SampleSource, right: &SampleSource, max_len: usize) -> Result<Comparison> {
    let (l, r) = (left.sample(max_len)?, right.sample(max_len)?);
    let order = left.alphabet().or(right.alphabet());
    Ok(Comparison::of(&l, &r, max_len, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::language::LanguageHandle;
    use crate::grammar::model::{Context, SelectionPair};

    fn words(ws: &[&str]) -> Vec<Word> {
        ws.iter().map(|w| Word::parse(w).unwrap()).collect()
    }

    fn l_ec_35() -> ContextualGrammar {
        let v = Alphabet::from_chars("abc").unwrap();
        ContextualGrammar::new(
            v,
            vec![
                SelectionPair::new(
                    LanguageHandle::regex("(a|b)*", Some("ab")).unwrap(),
                    vec![Context::parse("_", "a").unwrap(), Context::parse("a", "_").unwrap()],
                ),
                SelectionPair::new(
                    LanguageHandle::regex("a*b(a|b)*", Some("ab")).unwrap(),
                    vec![Context::parse("c", "c").unwrap()],
                ),
            ],
            words(&["_", "b"]),
        )
    }

    fn l_ic_32() -> ContextualGrammar {
        ContextualGrammar::new(
            Alphabet::from_chars("abcd").unwrap(),
            vec![SelectionPair::new(
                LanguageHandle::regex("bb*", None).unwrap(),
                vec![Context::parse("c", "d").unwrap()],
            )],
            words(&["ab"]),
        )
    }

    fn dyck() -> ContextualGrammar {
        ContextualGrammar::new(
            Alphabet::from_chars("cd").unwrap(),
            vec![SelectionPair::new(
                LanguageHandle::regex("(c|d)*", Some("cd")).unwrap(),
                vec![Context::parse("c", "d").unwrap()],
            )],
            words(&["_"]),
        )
    }

    #[test]
    fn external_examples() {
        let g = l_ec_35();
        assert_eq!(external_successors(&g, &Word::from("b")), words(&["ab", "ba", "cbc"]));
        assert_eq!(external_successors(&g, &Word::empty()), words(&["a"]));
        assert!(external_successors(&g, &Word::from("cbc")).is_empty());
    }

    #[test]
    fn internal_examples() {
        assert_eq!(internal_successors(&l_ic_32(), &Word::from("ab")), words(&["acbd"]));
        assert_eq!(internal_successors(&dyck(), &Word::empty()), words(&["cd"]));
        assert!(internal_successors(&l_ic_32(), &Word::from("a")).is_empty());
    }

    #[test]
    fn bounded_generation_examples() {
        let opts = |n| GenerateOptions::new(n);
        assert_eq!(generate_bounded(&dyck(), Mode::Internal, &opts(4)).unwrap(), words(&["_", "cd", "ccdd", "cdcd"]));
        assert_eq!(generate_bounded(&l_ic_32(), Mode::Internal, &opts(6)).unwrap(), words(&["ab", "acbd", "accbdd"]));
        assert_eq!(
            generate_bounded(&l_ec_35(), Mode::External, &opts(3)).unwrap(),
            words(&["_", "a", "b", "aa", "ab", "ba", "aaa", "aab", "aba", "baa", "cbc"])
        );
    }

    #[test]
    fn traces() {
        let t = derivation_trace(&l_ic_32(), Mode::Internal, &Word::from("acbd"), 8).unwrap();
        assert_eq!(t.to_string(), "ab ⟹ acbd");
        assert_eq!(t.replay(&l_ic_32()).unwrap(), Word::from("acbd"));
        let t = derivation_trace(&dyck(), Mode::Internal, &Word::from("ccdd"), 8).unwrap();
        assert_eq!(t.to_string(), "_ ⟹ cd ⟹ ccdd");
        assert!(matches!(
            derivation_trace(&l_ic_32(), Mode::Internal, &Word::from("abc"), 8),
            Err(Error::NotDerivable { .. })
        ));
    }

    #[test]
    fn step_cap_is_reported() {
        let opts = GenerateOptions { max_len: 10, step_cap: Some(3), parallel: false };
        match generate_bounded(&dyck(), Mode::Internal, &opts) {
            Err(Error::StepCapExhausted { cap: 3, partial, .. }) => assert!(partial.contains(&Word::empty())),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let seq = generate_bounded(&dyck(), Mode::Internal, &GenerateOptions::new(10)).unwrap();
        let par =
            generate_bounded(&dyck(), Mode::Internal, &GenerateOptions { max_len: 10, step_cap: None, parallel: true })
                .unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn comparison_of_star_and_plus() {
        let v = Alphabet::from_chars("a").unwrap();
        let star = SampleSource::Dfa(LanguageHandle::regex("a*", None).unwrap().dfa().clone());
        let plus = SampleSource::Dfa(crate::automata::regex::RegexAst::parse("aa*").unwrap().compile(&v).unwrap());
        let c = compare_bounded(&star, &plus, 5).unwrap();
        assert_eq!(c.only_left, words(&["_"]));
        assert!(c.only_right.is_empty());
    }
}
