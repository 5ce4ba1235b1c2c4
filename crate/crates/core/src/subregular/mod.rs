//! Decision procedures for subregular families, the ⟨B,I,E,F⟩
//! representation and the constructive conversions between families.

pub mod classify;
pub mod evidence;
pub mod families;
pub mod monoid;
pub mod order;
pub mod slt;

pub use classify::{classify, ClassificationReport, ClassifyOptions, Family, ReportLine, Verdict};
pub use evidence::{Decision, Evidence};
pub use families::{
    is_circular, is_combinational, is_commutative, is_definite, is_finite, is_monoidal, is_nilpotent, is_suffix_closed,
};
pub use monoid::{is_noncounting, is_power_separating, PowerCycle, TransitionMonoid};
pub use order::{find_order, find_ordered_cover, is_orderable, verify_order, CoverSearch, OrderedCover, StateOrder};
pub use slt::{
    default_k_max, definite_language, definite_to_slt, infer_slt, is_slt_k, slt_membership, slt_to_dfa, SltCheck,
    SltInference, SltRep,
};

use crate::automata::regex::RegexAst;

/// True iff the expression itself contains no union. This is a property of
/// the expression, not a decision for the language it denotes.
pub fn is_union_free_syntactic(ast: &RegexAst) -> bool {
    ast.is_union_free()
}
