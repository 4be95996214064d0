//! Conditional information inequalities: `constraints = 0 ⇒ target ≥ 0`.
//!
//! Holds the registry of known entries, a checker that decides the
//! constraints on a distribution, and the refutation engine showing that no
//! bounded choice of multipliers makes an entry unconditional.

mod check;
mod refute;
mod registry;

pub use check::{check, CheckMethod, CheckReport, ConstraintStatus, NUMERIC_ZERO_TOL};
pub use refute::{
    curve_to_tsv, evaluate as evaluate_margin, pairings, refutation_curve, refutation_curve_with, refute, refute_with,
    MarginEvaluation, Pairing, Parameter, Precision, PrecisionMode, RefutationWitness, RefuteOptions, DOUBLE_FLOOR_LOG2,
    EXTENDED_FLOOR_LOG2, MAX_PRIME,
};
pub use registry::{
    lookup, parse_registry, parse_registry_line, recognize_basic, registry, registry_to_text, AepStatus, BasicForm,
    ConditionalInequality,
};
