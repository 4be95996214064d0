//! Linear and conditional information inequalities over discrete random
//! variables.
//!
//! - [`distribution`], [`entropy`]: exact rational joint distributions and
//!   their entropy profiles (double with compensated sums, or fixed point).
//! - [`expr`]: the `H(..)`, `I(..;..|..)` expression language.
//! - [`cone`]: exact simplex over the Shannon cone, with certificates and
//!   separating points; known non-Shannon inequalities.
//! - [`families`]: parametric counterexample distributions.
//! - [`conditional`]: the registry of conditional inequalities, checks and
//!   refutation witnesses.
//! - [`constructions`]: the double Markov common-information variable and
//!   limit-point certificates.
//! - [`cli`]: the `infoineq` command line.
//!
//! Runnable walkthroughs live in `examples/`, e.g.
//! `cargo run --example refute`.

pub mod cli;
pub mod conditional;
pub mod cone;
pub mod constructions;
pub mod distribution;
pub mod entropy;
pub mod error;
pub mod expr;
pub mod families;
pub mod format;
pub mod hp;
pub mod subset;

pub use distribution::JointDistribution;
pub use entropy::{entropy_profile, EntropyVector};
pub use error::{Error, Result};
pub use expr::InfoExpression;
pub use subset::SubsetMask;
