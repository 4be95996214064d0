//! Lines and parabolas over a prime field.
//!
//! A random non-vertical line `C: y = c0 + c1 x`, two independent uniform
//! points `A`, `B` on it, and a uniform parabola `D: y = d0 + d1 x + d2 x²`
//! (`d2 ≠ 0`) meeting `C` exactly at `A` and `B` (tangent when `A = B`).
//! Given the line and the two abscissas `a`, `b`, such parabolas are
//! `d(x) = c(x) + d2 (x - a)(x - b)`, one for each nonzero `d2`.

use crate::distribution::JointDistribution;
use crate::entropy::EntropyVector;
use crate::error::{Error, Result};
use crate::expr::{rational_to_f64, InfoExpression};
use crate::subset::{default_names, SubsetMask};
use num_rational::BigRational;
use num_traits::Zero;

use super::field::is_prime;

/// Largest field size accepted for explicit enumeration.
pub const MAX_ENUM_Q: u64 = 31;

/// Encodes a point `(x, y)` as `x q + y`.
pub fn encode_point(x: u64, y: u64, q: u64) -> u32 {
    (x * q + y) as u32
}

/// Encodes a line `(c0, c1)` as `c0 q + c1`.
pub fn encode_line(c0: u64, c1: u64, q: u64) -> u32 {
    (c0 * q + c1) as u32
}

/// Encodes a parabola `(d0, d1, d2)` as `d0 q² + d1 q + d2`.
pub fn encode_parabola(d0: u64, d1: u64, d2: u64, q: u64) -> u32 {
    (d0 * q * q + d1 * q + d2) as u32
}

/// Decodes a parabola code into `(d0, d1, d2)`.
pub fn decode_parabola(code: u32, q: u64) -> (u64, u64, u64) {
    let c = code as u64;
    (c / (q * q), (c / q) % q, c % q)
}

/// Decodes a line code into `(c0, c1)`.
pub fn decode_line(code: u32, q: u64) -> (u64, u64) {
    let c = code as u64;
    (c / q, c % q)
}

fn check_q(q: u64) -> Result<()> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    Ok(())
}

/// Enumerates the family for a prime `3 ≤ q ≤ 31`: a uniform distribution
/// over `q⁴(q-1)` atoms on `A, B, C, D`.
pub fn geometric(q: u64) -> Result<JointDistribution> {
    check_q(q)?;
    if !(3..=MAX_ENUM_Q).contains(&q) {
        return Err(Error::OutOfDomain {
            family: "geometric".into(),
            param: q.to_string(),
        });
    }
    let total = (q * q * q * q * (q - 1)) as usize;
    let mut values = Vec::with_capacity(total * 4);
    for c0 in 0..q {
        for c1 in 0..q {
            for a in 0..q {
                let ya = (c0 + c1 * a) % q;
                for b in 0..q {
                    let yb = (c0 + c1 * b) % q;
                    let sum = (a + b) % q;
                    let prod = (a * b) % q;
                    for d2 in 1..q {
                        let d1 = (c1 + q * q - (d2 * sum) % q) % q;
                        let d0 = (c0 + d2 * prod) % q;
                        values.extend_from_slice(&[
                            encode_point(a, ya, q),
                            encode_point(b, yb, q),
                            encode_line(c0, c1, q),
                            encode_parabola(d0, d1, d2, q),
                        ]);
                    }
                }
            }
        }
    }
    let point = (q * q) as u32;
    JointDistribution::uniform_flat(default_names(4), vec![point, point, point, (q * q * q) as u32], values)
}

/// Closed-form joint entropies of the family in bits, for any prime `q`.
///
/// With `L = log2 q` and `M = log2(q-1)`:
///
/// | subset | entropy |
/// |---|---|
/// | A, B, C | 2L |
/// | D | 2L + M |
/// | AB | 4L - L/q |
/// | AC, BC | 3L |
/// | AD, BD | 3L + M |
/// | CD | 4L + M - (q-1)/q |
/// | ABC | 4L |
/// | ABD, ACD, BCD, ABCD | 4L + M |
pub fn geometric_closed_entropy(q: u64, s: SubsetMask) -> Result<f64> {
    check_q(q)?;
    s.check(4)?;
    let qf = q as f64;
    let l = qf.log2();
    let m = (qf - 1.0).log2();
    let v = match s.bits() {
        0b0001 | 0b0010 | 0b0100 => 2.0 * l,
        0b1000 => 2.0 * l + m,
        0b0011 => 4.0 * l - l / qf,
        0b0101 | 0b0110 => 3.0 * l,
        0b1001 | 0b1010 => 3.0 * l + m,
        0b1100 => 4.0 * l + m - (qf - 1.0) / qf,
        0b0111 => 4.0 * l,
        _ => 4.0 * l + m,
    };
    Ok(v)
}

/// Coefficients of `(L, M, L/q, (q-1)/q)` in the closed form of `H(S)`.
fn closed_basis(s: SubsetMask) -> [i64; 4] {
    match s.bits() {
        0b0001 | 0b0010 | 0b0100 => [2, 0, 0, 0],
        0b1000 => [2, 1, 0, 0],
        0b0011 => [4, 0, -1, 0],
        0b0101 | 0b0110 => [3, 0, 0, 0],
        0b1001 | 0b1010 => [3, 1, 0, 0],
        0b1100 => [4, 1, 0, -1],
        0b0111 => [4, 0, 0, 0],
        _ => [4, 1, 0, 0],
    }
}

/// Evaluates `expr` on the closed form, combining coefficients of `L`, `M`,
/// `L/q` and `(q-1)/q` exactly first so that identities come out as exact
/// zeros.
pub fn geometric_closed_value(q: u64, expr: &InfoExpression) -> Result<f64> {
    check_q(q)?;
    if q < 3 {
        return Err(Error::OutOfDomain {
            family: "geometric".into(),
            param: q.to_string(),
        });
    }
    if expr.arity() != 4 {
        return Err(Error::ArityMismatch {
            expected: 4,
            found: expr.arity(),
        });
    }
    let mut acc = [BigRational::zero(), BigRational::zero(), BigRational::zero(), BigRational::zero()];
    for (s, c) in expr.terms() {
        for (a, k) in acc.iter_mut().zip(closed_basis(s)) {
            *a += c * BigRational::from_integer(k.into());
        }
    }
    let qf = q as f64;
    let l = qf.log2();
    let basis = [l, (qf - 1.0).log2(), l / qf, (qf - 1.0) / qf];
    Ok(acc
        .iter()
        .zip(basis)
        .filter(|(a, _)| !a.is_zero())
        .map(|(a, b)| rational_to_f64(a) * b)
        .sum())
}

/// Closed-form entropy profile of the family for any prime `q ≥ 3`.
pub fn geometric_closed_profile(q: u64) -> Result<EntropyVector> {
    check_q(q)?;
    if q < 3 {
        return Err(Error::OutOfDomain {
            family: "geometric".into(),
            param: q.to_string(),
        });
    }
    EntropyVector::from_fn(4, |s| geometric_closed_entropy(q, s).expect("checked"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::entropy_profile;
    use crate::expr::InfoExpression;

    fn m(bits: u32) -> SubsetMask {
        SubsetMask::new(bits)
    }

    #[test]
    fn q3_has_162_atoms_with_tangent_rule() {
        let q = 3;
        let d = geometric(q).unwrap();
        assert_eq!(d.num_atoms(), 162);
        assert!(d.is_uniform());
        for i in 0..d.num_atoms() {
            let t = d.atom(i);
            if t[0] != t[1] {
                continue;
            }
            let (c0, c1) = decode_line(t[2], q);
            let (d0, d1, d2) = decode_parabola(t[3], q);
            let meets = (0..q)
                .filter(|&x| (d0 + d1 * x + d2 * x * x) % q == (c0 + c1 * x) % q)
                .count();
            assert_eq!(meets, 1, "atom {t:?}");
        }
    }

    #[test]
    fn q5_structural_zeros() {
        let d = geometric(5).unwrap();
        let (a, b, c, dd) = (m(1), m(2), m(4), m(8));
        assert!(d.is_cond_independent(a, b, c).unwrap());
        assert!(d.is_cond_independent(a, b, dd).unwrap());
        assert!(d.is_cond_independent(c, dd, a).unwrap());
        assert!(d.is_cond_independent(c, dd, b).unwrap());
        assert!(!d.is_functional(c, a | b).unwrap());
    }

    #[test]
    fn q3_marginal_of_a_is_uniform_on_points() {
        let d = geometric(3).unwrap();
        let a = d.marginal(m(1)).unwrap();
        assert_eq!(a.num_atoms(), 9);
        assert!(a.is_uniform());
    }

    #[test]
    fn closed_form_matches_enumeration_q7() {
        let enumerated = entropy_profile(&geometric(7).unwrap());
        let closed = geometric_closed_profile(7).unwrap();
        for (x, y) in enumerated.coords().iter().zip(closed.coords()) {
            assert!((x - y).abs() < 1e-9, "{x} vs {y}");
        }
    }

    #[test]
    fn closed_form_quantities_q5() {
        let v = geometric_closed_profile(5).unwrap();
        let e = |s: &str| InfoExpression::parse_default(s, 4).unwrap().evaluate(&v).unwrap();
        assert!((e("I(C;D)") - 0.8).abs() < 1e-12);
        assert!((e("H(C|A,B)") - 5f64.log2() / 5.0).abs() < 1e-12);
        assert!((e("H(C)") - 2.0 * 5f64.log2()).abs() < 1e-12);
        assert!(geometric_closed_profile(4).is_err());
        assert!(geometric(37).is_err());
    }

    #[test]
    fn symbolic_closed_values_are_exact() {
        let e = |t: &str| InfoExpression::parse_default(t, 4).unwrap();
        for q in [3u64, 5, 101] {
            for t in ["I(A;B|C)", "I(A;B|D)", "I(C;D|A)", "I(C;D|B)"] {
                assert_eq!(geometric_closed_value(q, &e(t)).unwrap(), 0.0, "{t} q={q}");
            }
            let qf = q as f64;
            assert!((geometric_closed_value(q, &e("I(C;D)")).unwrap() - (qf - 1.0) / qf).abs() < 1e-15);
            let profile = geometric_closed_profile(q).unwrap();
            let direct = e("H(C|A,B)").evaluate(&profile).unwrap();
            assert!((geometric_closed_value(q, &e("H(C|A,B)")).unwrap() - direct).abs() < 1e-12);
        }
    }
}
