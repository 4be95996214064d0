use std::fmt;

use crate::distribution::JointDistribution;
use crate::entropy::entropy_profile;
use crate::error::{Error, Result};
use crate::format::real;

use super::registry::{BasicForm, ConditionalInequality};

/// Numeric threshold for constraints that have no structural form.
pub const NUMERIC_ZERO_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMethod {
    Structural,
    Numeric,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintStatus {
    pub text: String,
    pub method: CheckMethod,
    pub holds: bool,
    /// Value of the constraint on the entropy profile.
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub inequality: String,
    pub constraints: Vec<ConstraintStatus>,
    pub constraints_exact: bool,
    pub target_value: f64,
}

impl CheckReport {
    /// The conditional inequality is violated: constraints hold, target < 0.
    pub fn violated(&self, tol: f64) -> bool {
        self.constraints_exact && self.target_value < -tol
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "inequality: {}", self.inequality)?;
        for c in &self.constraints {
            let how = match c.method {
                CheckMethod::Structural => "structural",
                CheckMethod::Numeric => "numeric",
            };
            writeln!(
                f,
                "constraint {} = 0: {} ({how}, value {})",
                c.text,
                if c.holds { "yes" } else { "no" },
                real(c.value)
            )?;
        }
        writeln!(f, "constraints_exact: {}", self.constraints_exact)?;
        write!(f, "target_value: {}", real(self.target_value))
    }
}

/// Checks the constraints of `ci` on `d` and evaluates the target.
pub fn check(ci: &ConditionalInequality, d: &JointDistribution) -> Result<CheckReport> {
    if d.arity() != ci.arity {
        return Err(Error::ArityMismatch {
            expected: ci.arity,
            found: d.arity(),
        });
    }
    let profile = entropy_profile(d);
    let mut constraints = Vec::with_capacity(ci.constraints.len());
    for (i, expr) in ci.constraints.iter().enumerate() {
        let value = expr.evaluate(&profile)?;
        let (method, holds) = match ci.basic_form(i) {
            Some(BasicForm::CondIndependence(a, b, c)) => (CheckMethod::Structural, d.is_cond_independent(a, b, c)?),
            Some(BasicForm::Functional(t, g)) => (CheckMethod::Structural, d.is_functional(t, g)?),
            None => (CheckMethod::Numeric, value.abs() <= NUMERIC_ZERO_TOL),
        };
        constraints.push(ConstraintStatus {
            text: ci.constraint_text[i].clone(),
            method,
            holds,
            value,
        });
    }
    Ok(CheckReport {
        inequality: ci.name.clone(),
        constraints_exact: constraints.iter().all(|c| c.holds),
        constraints,
        target_value: ci.target.evaluate(&profile)?,
    })
}
