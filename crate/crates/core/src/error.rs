use thiserror::Error;

use crate::alphabet::Word;

/// Errors raised by the toolkit.
///
/// Decision procedures never fail on well-formed input; errors describe bad
/// input (unknown symbols, malformed files) or bounded computations that ran
/// out of budget.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet contains duplicate symbol '{0}'")]
    DuplicateSymbol(char),

    #[error("symbol '{0}' is reserved and cannot be used in an alphabet")]
    ReservedSymbol(char),

    #[error("symbol '{symbol}' is not part of the alphabet {{{alphabet}}}")]
    UnknownSymbol { symbol: char, alphabet: String },

    #[error("alphabets differ: {{{left}}} vs {{{right}}}")]
    AlphabetMismatch { left: String, right: String },

    #[error("state {state} is outside 0..{count}")]
    InvalidState { state: usize, count: usize },

    #[error("missing transition from state {state} on symbol '{symbol}'")]
    MissingTransition { state: usize, symbol: char },

    #[error("duplicate transition from state {state} on symbol '{symbol}'")]
    DuplicateTransition { state: usize, symbol: char },

    #[error("automaton has no states")]
    NoStates,

    #[error("state order is not a permutation of the {0} states")]
    InvalidOrder(usize),

    #[error("invalid SLT representation: {0}")]
    SltInvariant(String),

    #[error("regex syntax error at offset {offset}: {message}")]
    Regex { offset: usize, message: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Io(String),

    #[error("unsupported witness parameter: {0}")]
    UnsupportedParameter(String),

    #[error("window length k must be at least 1")]
    ZeroWindow,

    #[error("'{target}' is not derivable within length {max_len}")]
    NotDerivable { target: Word, max_len: usize },

    #[error("step cap of {cap} expansions exhausted after collecting {collected} words")]
    StepCapExhausted { cap: usize, collected: usize, partial: Vec<Word> },

    #[error("construction check failed: {0}")]
    Construction(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
