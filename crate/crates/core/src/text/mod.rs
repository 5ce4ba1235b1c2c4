//! Line-oriented text formats for automata, SLT representations and
//! grammars. `#` starts a comment and `_` is the empty word everywhere.
//! Each `render_*` output parses back to an equal object.

mod dfa;
mod grammar;
mod slt;

pub use dfa::{parse_dfa, render_dfa};
pub use grammar::{parse_grammar, render_grammar};
pub use slt::{parse_slt, render_slt};

use std::path::Path;

use crate::alphabet::{Alphabet, Word};
use crate::automata::dfa::Dfa;
use crate::error::{Error, Result};
use crate::grammar::ContextualGrammar;
use crate::subregular::SltRep;

pub(crate) struct Line<'a> {
    pub number: usize,
    pub keyword: &'a str,
    /// Everything after the keyword, trimmed.
    pub rest: &'a str,
}

impl<'a> Line<'a> {
    pub fn tokens(&self) -> impl Iterator<Item = &'a str> {
        self.rest.split_whitespace()
    }

    pub fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: self.number, message: message.into() })
    }

    pub fn words(&self) -> Result<Vec<Word>> {
        self.tokens().map(|t| Word::parse(t).or_else(|e| self.err(format!("bad word '{t}': {e}")))).collect()
    }

    pub fn number_arg(&self) -> Result<usize> {
        let toks: Vec<&str> = self.tokens().collect();
        match toks.as_slice() {
            [n] => n.parse().or_else(|_| self.err(format!("expected a number, found '{n}'"))),
            _ => self.err(format!("'{}' takes exactly one number", self.keyword)),
        }
    }

    pub fn alphabet(&self) -> Result<Alphabet> {
        let mut syms = Vec::new();
        for t in self.tokens() {
            let mut cs = t.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => syms.push(c),
                _ => return self.err(format!("alphabet symbols are single characters, found '{t}'")),
            }
        }
        Alphabet::new(syms).or_else(|e| self.err(e.to_string()))
    }
}

/// Non-blank lines with comments removed. Line numbers start at 1 and are
/// offset by `first`.
pub(crate) fn lines(text: &str, first: usize) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                return None;
            }
            let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
            Some(Line { number: first + i + 1, keyword, rest: rest.trim() })
        })
        .collect()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_dfa_file(path: &Path) -> Result<Dfa> {
    parse_dfa(&read(path)?)
}

pub fn read_slt_file(path: &Path) -> Result<SltRep> {
    parse_slt(&read(path)?)
}

/// Paths inside the grammar are resolved against the file's directory.
pub fn read_grammar_file(path: &Path) -> Result<ContextualGrammar> {
    parse_grammar(&read(path)?, path.parent())
}

/// One word per line in the given order, `_` for λ.
pub fn render_words(words: &[Word]) -> String {
    words.iter().map(|w| format!("{w}\n")).collect()
}
