//! Regular-language substrate: automata, boolean operations, equivalence,
//! bounded enumeration and window extraction.

pub mod dfa;
pub mod factors;
pub mod nfa;
pub mod regex;

pub use dfa::{bool_op, BoolOp, Dfa, StateId};
pub use factors::{factor_sets, FactorSets};
pub use nfa::Nfa;
pub use regex::{compile_regex, RegexAst};

use crate::alphabet::Word;
use crate::error::Result;

/// Minimal, canonically numbered automaton for the same language.
pub fn minimize(d: &Dfa) -> Dfa {
    d.minimize()
}

/// Language equality; on `false` the second component is the shortlex-minimal
/// distinguishing word.
pub fn are_equivalent(l1: &Dfa, l2: &Dfa) -> Result<(bool, Option<Word>)> {
    let w = l1.distinguishing_word(l2)?;
    Ok((w.is_none(), w))
}

pub fn accepts(l: &Dfa, w: &[char]) -> bool {
    l.accepts(w)
}

pub fn enumerate_upto(l: &Dfa, n: usize) -> Vec<Word> {
    l.enumerate_upto(n)
}
