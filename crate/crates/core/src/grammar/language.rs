use std::fmt;

use crate::alphabet::{Alphabet, Word};
use crate::automata::dfa::Dfa;
use crate::automata::regex::RegexAst;
use crate::error::Result;
use crate::subregular::slt::{slt_to_dfa, SltRep};

/// How a selection language was given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LanguageSource {
    Dfa,
    Regex(RegexAst),
    Slt(SltRep),
}

/// A regular language over its own alphabet U, queried by membership.
/// Words containing symbols outside U are never members.
#[derive(Clone, PartialEq, Eq)]
pub struct LanguageHandle {
    source: LanguageSource,
    dfa: Dfa,
}

impl LanguageHandle {
    pub fn from_dfa(dfa: Dfa) -> Self {
        Self { source: LanguageSource::Dfa, dfa: dfa.minimize() }
    }

    /// Compiles `ast` over `alphabet`, or over the symbols it mentions when
    /// no alphabet is given.
    pub fn from_regex(ast: RegexAst, alphabet: Option<Alphabet>) -> Result<Self> {
        let alphabet = match alphabet {
            Some(a) => a,
            None => ast.spanning_alphabet()?,
        };
        let dfa = ast.compile(&alphabet)?;
        Ok(Self { source: LanguageSource::Regex(ast), dfa })
    }

    /// Parses and compiles an expression.
    pub fn regex(src: &str, alphabet: Option<&str>) -> Result<Self> {
        let ast = RegexAst::parse(src)?;
        let alphabet = alphabet.map(Alphabet::from_chars).transpose()?;
        Self::from_regex(ast, alphabet)
    }

    pub fn from_slt(rep: SltRep) -> Self {
        let dfa = slt_to_dfa(&rep);
        Self { source: LanguageSource::Slt(rep), dfa }
    }

    pub fn source(&self) -> &LanguageSource {
        &self.source
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.dfa.alphabet()
    }

    /// Minimal automaton over U.
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn contains(&self, w: &[char]) -> bool {
        self.dfa.accepts(w)
    }

    /// Same language, re-expressed as an automaton (drops the source form).
    pub fn with_dfa(dfa: Dfa) -> Self {
        Self::from_dfa(dfa)
    }

    pub fn enumerate_upto(&self, n: usize) -> Vec<Word> {
        self.dfa.enumerate_upto(n)
    }
}

impl fmt::Debug for LanguageHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.source {
            LanguageSource::Dfa => write!(f, "dfa({} states) over {{{}}}", self.dfa.state_count(), self.alphabet()),
            LanguageSource::Regex(ast) => write!(f, "regex({ast}) over {{{}}}", self.alphabet()),
            LanguageSource::Slt(rep) => write!(f, "slt({}) over {{{}}}", rep.compact(), self.alphabet()),
        }
    }
}
