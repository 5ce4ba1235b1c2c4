//! Contextual grammars with selection: external and internal derivation,
//! bounded-length generation, derivation traces and bounded comparison.

pub mod derive;
pub mod language;
pub mod model;

pub use derive::{
    compare_bounded, derivation_trace, derivations, external_successors, generate_bounded, generate_bounded_observed,
    internal_successors, successors, Comparison, Derivation, DerivationTrace, ExpansionObserver, GenerateOptions,
    InvariantMonitor, Mode, Placement, SampleSource,
};
pub use language::{LanguageHandle, LanguageSource};
pub use model::{validate_grammar, Context, ContextualGrammar, Diagnostic, SelectionPair, Severity};
