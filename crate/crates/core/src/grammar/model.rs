use std::fmt;

use crate::alphabet::{Alphabet, Word};
use crate::grammar::language::{LanguageHandle, LanguageSource};
use crate::subregular::classify::{Family, DEFAULT_COVER_BUDGET, DEFAULT_COVER_COPIES};
use crate::subregular::order::{find_ordered_cover, is_orderable, CoverSearch};
use crate::subregular::slt::{default_k_max, infer_slt, SltInference};

/// A context (u, v) adjoined around the selected word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context {
    pub u: Word,
    pub v: Word,
}

impl Context {
    pub fn new(u: impl Into<Word>, v: impl Into<Word>) -> Self {
        Self { u: u.into(), v: v.into() }
    }

    /// Parses `u` and `v` tokens, `_` standing for λ.
    pub fn parse(u: &str, v: &str) -> crate::error::Result<Self> {
        Ok(Self { u: Word::parse(u)?, v: Word::parse(v)? })
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty() && self.v.is_empty()
    }

    pub fn len(&self) -> usize {
        self.u.len() + self.v.len()
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

/// A selection language together with the contexts it licenses.
#[derive(Debug, Clone)]
pub struct SelectionPair {
    pub selector: LanguageHandle,
    pub contexts: Vec<Context>,
    /// Family the selector is claimed to belong to (checked by validation).
    pub family: Option<Family>,
}

impl SelectionPair {
    pub fn new(selector: LanguageHandle, contexts: Vec<Context>) -> Self {
        Self { selector, contexts, family: None }
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = Some(family);
        self
    }
}

/// (V, pairs, axioms).
#[derive(Debug, Clone)]
pub struct ContextualGrammar {
    pub alphabet: Alphabet,
    pub pairs: Vec<SelectionPair>,
    pub axioms: Vec<Word>,
}

impl ContextualGrammar {
    /// Axioms are deduplicated and kept in shortlex order.
    pub fn new(alphabet: Alphabet, pairs: Vec<SelectionPair>, axioms: Vec<Word>) -> Self {
        let mut axioms = axioms;
        alphabet.sort_words(&mut axioms);
        axioms.dedup();
        Self { alphabet, pairs, axioms }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    fn error(message: impl Into<String>) -> Self {
        Self { severity: Severity::Error, message: message.into() }
    }

    fn warning(message: impl Into<String>) -> Self {
        Self { severity: Severity::Warning, message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{tag}: {}", self.message)
    }
}

/// Checks alphabets, contexts, axioms and declared selector families.
/// An empty list means the grammar is valid.
pub fn validate_grammar(g: &ContextualGrammar) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let v = &g.alphabet;
    if v.is_empty() {
        out.push(Diagnostic::error("grammar alphabet is empty"));
    }
    if g.axioms.is_empty() {
        out.push(Diagnostic::warning("grammar has no axioms"));
    }
    for w in &g.axioms {
        if let Some(c) = w.iter().find(|c| !v.contains(**c)) {
            out.push(Diagnostic::error(format!("axiom '{w}' uses symbol '{c}' outside the alphabet")));
        }
    }
    for (i, pair) in g.pairs.iter().enumerate() {
        let n = i + 1;
        let u = pair.selector.alphabet();
        if !u.is_subset_of(v) {
            out.push(Diagnostic::error(format!("pair {n}: selection alphabet {{{u}}} is not contained in {{{v}}}")));
        }
        if pair.contexts.is_empty() {
            out.push(Diagnostic::error(format!("pair {n}: no contexts")));
        }
        for c in &pair.contexts {
            if let Some(s) = c.u.iter().chain(c.v.iter()).find(|s| !v.contains(**s)) {
                out.push(Diagnostic::error(format!("pair {n}: context {c} uses symbol '{s}' outside the alphabet")));
            }
            if c.is_empty() {
                out.push(Diagnostic::warning(format!(
                    "pair {n}: empty context (_,_) only reproduces the selected word and is ignored"
                )));
            }
        }
        if let Some(family) = pair.family {
            if let Some(d) = family_mismatch(&pair.selector, family) {
                out.push(Diagnostic { severity: d.0, message: format!("pair {n}: {}", d.1) });
            }
        }
    }
    out
}

fn family_mismatch(sel: &LanguageHandle, family: Family) -> Option<(Severity, String)> {
    match family {
        Family::Uf => match sel.source() {
            LanguageSource::Regex(ast) if ast.is_union_free() => None,
            LanguageSource::Regex(_) => {
                Some((Severity::Error, "selector is declared UF but its expression uses union".into()))
            }
            _ => Some((Severity::Warning, "UF can only be confirmed for a union-free expression".into())),
        },
        Family::Ord => {
            if is_orderable(sel.dfa()).holds {
                return None;
            }
            match find_ordered_cover(sel.dfa(), DEFAULT_COVER_COPIES, DEFAULT_COVER_BUDGET) {
                CoverSearch::Found(_) => None,
                _ => Some((Severity::Error, "selector is declared ORD but no ordered automaton was found".into())),
            }
        }
        Family::Slt => {
            let k_max = default_k_max(sel.dfa());
            match infer_slt(sel.dfa(), k_max).expect("k_max ≥ 1") {
                SltInference::Slt { .. } => None,
                SltInference::NotSltUpTo(k) => {
                    Some((Severity::Error, format!("selector is declared SLT but is not SLT_k for any k ≤ {k}")))
                }
            }
        }
        other => {
            let d = other.decide(sel.dfa()).expect("decidable family");
            if d.holds {
                None
            } else {
                let evidence = d.evidence.to_string();
                let suffix = if evidence.is_empty() { String::new() } else { format!(" ({evidence})") };
                Some((Severity::Error, format!("selector is declared {other} but is not in {other}{suffix}")))
            }
        }
    }
}
