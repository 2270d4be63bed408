//! Exact contact surgery calculus.
//!
//! Rational contact surgeries along Legendrian knots are expanded into
//! contact (±1)-surgeries, the rational Thurston-Bennequin invariant and
//! rotation number of surgery-dual knots are computed from linking
//! matrices, and tight / overtwisted verdicts are derived with exact
//! arithmetic. Nothing in the crate uses floating point.

pub mod bundled;
pub mod classify;
pub mod cli;
pub mod diagram;
pub mod dual;
mod error;
pub mod exact;
pub mod expansion;
pub mod selftest;
pub mod sweep;

pub use classify::{
    bennequin_chain, bennequin_check, classify_diagram, classify_lemma_tight, classify_thm1,
    classify_thm2, Assumptions, BennequinReport, ComponentFacts, Conclusion, Rule, Verdict,
};
pub use diagram::{
    build_extended_matrix, build_general_matrices, build_linking_matrix, topological_coefficient,
    AmbientStatus, LegendrianKnotData, PlusOneChainSpec, SurgeryComponent, SurgeryDiagram,
};
pub use dual::{
    dual_invariants_closed_form, dual_invariants_matrix, homological_order, DualKnotInvariants,
};
pub use error::{Error, EXIT_FAILURE, EXIT_INPUT, EXIT_OK, EXIT_UNDEFINED};
pub use exact::{det, inner_product, solve, Rational, SquareMatrix};
pub use expansion::{
    expand_diagram, expand_negative_rational, expand_positive_rational,
    expand_positive_unit_fraction, ExpandedPresentation, ExpansionStep, ZigzagPolicy,
};
