//! Scaling tables for expressions evaluated along a family as ε → 0.

use num_rational::BigRational;

use crate::entropy::entropy_profile;
use crate::error::{Error, Result};
use crate::expr::{rational_to_f64, InfoExpression};

use super::Family;

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticRow {
    pub eps: BigRational,
    pub value: f64,
    pub over_eps: f64,
    pub over_eps2: f64,
    /// value / (ε log2(1/ε))
    pub over_eps_log: f64,
}

/// Evaluates `expr` on the family at each ε and reports the usual scalings.
pub fn asymptotic_report(family: Family, expr: &InfoExpression, eps_list: &[BigRational]) -> Result<Vec<AsymptoticRow>> {
    if family == Family::Geometric {
        return Err(Error::UnknownFamily("geometric has no ε parameter".into()));
    }
    if expr.arity() != 4 {
        return Err(Error::ArityMismatch {
            expected: 4,
            found: expr.arity(),
        });
    }
    eps_list
        .iter()
        .map(|eps| {
            let d = family.generate(eps)?;
            let value = expr.evaluate(&entropy_profile(&d))?;
            let e = rational_to_f64(eps);
            Ok(AsymptoticRow {
                eps: eps.clone(),
                value,
                over_eps: value / e,
                over_eps2: value / (e * e),
                over_eps_log: value / (e * (1.0 / e).log2()),
            })
        })
        .collect()
}

/// `ε = 2^-k` for `k` in the given range.
pub fn dyadic_eps(ks: std::ops::RangeInclusive<u32>) -> Vec<BigRational> {
    ks.map(|k| BigRational::new(1.into(), num_bigint::BigInt::from(1) << k)).collect()
}

/// Largest relative deviation from the mean among the given values.
pub fn relative_spread(values: &[f64]) -> f64 {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    values
        .iter()
        .map(|v| ((v - mean) / mean).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim1_scalings() {
        let eps = dyadic_eps(4..=10);
        let cd = InfoExpression::parse_default("I(C;D)", 4).unwrap();
        let rows = asymptotic_report(Family::Claim(1), &cd, &eps).unwrap();
        let tail: Vec<f64> = rows[rows.len() - 3..].iter().map(|r| r.over_eps).collect();
        assert!(relative_spread(&tail) < 0.05, "{tail:?}");
    }

    #[test]
    fn rejects_geometric_and_bad_eps() {
        let cd = InfoExpression::parse_default("I(C;D)", 4).unwrap();
        assert!(asymptotic_report(Family::Geometric, &cd, &dyadic_eps(1..=2)).is_err());
        let big = [BigRational::from_integer(2.into())];
        assert!(asymptotic_report(Family::Claim(1), &cd, &big).is_err());
    }
}
