//! Subregular language families and contextual grammars.
//!
//! The crate is organised bottom-up: [`automata`] provides complete DFAs and
//! the usual constructions, [`subregular`] decides family membership on top
//! of them, [`grammar`] runs contextual grammars with bounded generation,
//! and [`witness`] packages the standard separating languages and grammars
//! with independent oracles. [`text`] holds the line-oriented file formats.

pub mod alphabet;
pub mod automata;
pub mod error;
pub mod grammar;
pub mod subregular;
pub mod text;
pub mod witness;

pub use alphabet::{Alphabet, Word};
pub use automata::{Dfa, Nfa, RegexAst};
pub use error::{Error, Result};
pub use grammar::LanguageSource;
