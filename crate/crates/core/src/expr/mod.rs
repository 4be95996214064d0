//! Linear information expressions over joint-entropy coordinates.

mod parser;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::entropy::{CompensatedSum, EntropyVector, FixedEntropyVector};
use crate::error::{Error, Result};
use crate::hp::Fixed;
use crate::subset::{default_names, require_disjoint, SubsetMask, MAX_ARITY};

pub use parser::{parse_expression, Atom, InfoTermAst, Term};

/// A rational linear functional `Σ c_S · H(S)` over nonempty subsets `S`.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of functionals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InfoExpression {
    n: usize,
    coeffs: BTreeMap<SubsetMask, BigRational>,
}

impl InfoExpression {
    pub fn zero(n: usize) -> Self {
        InfoExpression {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds from `(mask, coefficient)` pairs, combining repeats.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SubsetMask, BigRational)>,
    {
        let mut e = InfoExpression::zero(n);
        for (m, c) in terms {
            m.check(n)?;
            e.add_term(m, &c);
        }
        Ok(e)
    }

    /// `H(s | given)`.
    pub fn entropy(n: usize, s: SubsetMask, given: SubsetMask) -> Result<Self> {
        s.check(n)?;
        given.check_within(n)?;
        let mut e = InfoExpression::zero(n);
        e.add_term(s | given, &BigRational::one());
        e.add_term(given, &-BigRational::one());
        Ok(e)
    }

    /// `I(a; b | c)`.
    pub fn mutual(n: usize, a: SubsetMask, b: SubsetMask, c: SubsetMask) -> Result<Self> {
        a.check(n)?;
        b.check(n)?;
        c.check_within(n)?;
        let one = BigRational::one();
        let mut e = InfoExpression::zero(n);
        e.add_term(a | c, &one);
        e.add_term(b | c, &one);
        e.add_term(a | b | c, &-one.clone());
        e.add_term(c, &-one);
        Ok(e)
    }

    /// Parses and canonicalizes DSL text.
    pub fn parse(text: &str, var_names: &[String]) -> Result<Self> {
        Ok(canonicalize(&parse_expression(text, var_names)?))
    }

    /// Parses with the default names `A, B, C, ...`.
    pub fn parse_default(text: &str, n: usize) -> Result<Self> {
        Self::parse(text, &default_names(n))
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, s: SubsetMask) -> BigRational {
        self.coeffs.get(&s).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero terms in increasing mask order.
    pub fn terms(&self) -> impl Iterator<Item = (SubsetMask, &BigRational)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// Union of all variables with a nonzero coefficient.
    pub fn support(&self) -> SubsetMask {
        self.coeffs.keys().fold(SubsetMask::EMPTY, |a, &m| a | m)
    }

    /// Adds `c · H(s)`; the empty set contributes nothing.
    fn add_term(&mut self, s: SubsetMask, c: &BigRational) {
        if s.is_empty() || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(s).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&s);
        }
    }

    fn same_arity(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return InfoExpression::zero(self.n);
        }
        InfoExpression {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    /// Rewrites into arity `n`, replacing variable `i` by the subset
    /// `images[i]`. Used to instantiate a pattern on other variables, e.g.
    /// lifting a 4-variable form into 5 variables or identifying two
    /// variables.
    pub fn substitute(&self, n: usize, images: &[SubsetMask]) -> Result<Self> {
        if images.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: images.len(),
            });
        }
        for m in images {
            m.check(n)?;
        }
        let mut out = InfoExpression::zero(n);
        for (m, c) in &self.coeffs {
            let image = m.indices().fold(SubsetMask::EMPTY, |a, i| a | images[i]);
            out.add_term(image, c);
        }
        Ok(out)
    }

    /// Dot product with a double-precision profile.
    pub fn evaluate(&self, v: &EntropyVector) -> Result<f64> {
        if v.arity() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: v.arity(),
            });
        }
        let sum: CompensatedSum = self
            .coeffs
            .iter()
            .map(|(m, c)| rational_to_f64(c) * v.get(*m))
            .collect();
        Ok(sum.value())
    }

    /// Exact dot product with rational coordinates indexed by `mask - 1`.
    pub fn evaluate_exact(&self, coords: &[BigRational]) -> Result<BigRational> {
        let expected = (1usize << self.n) - 1;
        if coords.len() != expected {
            return Err(Error::ArityMismatch {
                expected,
                found: coords.len(),
            });
        }
        Ok(self
            .coeffs
            .iter()
            .fold(BigRational::zero(), |acc, (m, c)| acc + c * &coords[m.coord_index()]))
    }

    /// Dot product with a fixed-point profile.
    pub fn evaluate_fixed(&self, v: &FixedEntropyVector) -> Result<Fixed> {
        if v.arity() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: v.arity(),
            });
        }
        let mut acc = Fixed::zero(v.frac_bits());
        for (m, c) in &self.coeffs {
            acc = &acc + &v.get(*m).mul_rational(c);
        }
        Ok(acc)
    }

    /// Prints in joint-entropy coordinates with the given names.
    pub fn format_with(&self, names: &[String]) -> String {
        let mut out = String::new();
        let order = SubsetMask::lexicographic(self.n);
        for m in order {
            let Some(c) = self.coeffs.get(&m) else { continue };
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&crate::distribution::format_rational(&mag));
                out.push(' ');
            }
            out.push_str("H(");
            out.push_str(&m.display_with(names));
            out.push(')');
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for InfoExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_names(self.n)))
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let neg = r.is_negative();
        let v = crate::hp::ratio_f64(r.numer().magnitude(), r.denom().magnitude());
        if neg {
            -v
        } else {
            v
        }
    })
}

/// Expands every atom into joint-entropy coordinates and combines like terms.
pub fn canonicalize(ast: &InfoTermAst) -> InfoExpression {
    let n = ast.arity;
    let mut e = InfoExpression::zero(n);
    let one = BigRational::one();
    for t in &ast.terms {
        match t.atom {
            Atom::Entropy { of, given } => {
                e.add_term(of | given, &t.coeff);
                e.add_term(given, &-t.coeff.clone());
            }
            Atom::Mutual { left, right, given } => {
                e.add_term(left | given, &t.coeff);
                e.add_term(right | given, &t.coeff);
                e.add_term(left | right | given, &(-&one * &t.coeff));
                e.add_term(given, &(-&one * &t.coeff));
            }
        }
    }
    e
}

/// Dot product of an expression with a profile.
pub fn evaluate(e: &InfoExpression, v: &EntropyVector) -> Result<f64> {
    e.evaluate(v)
}

/// Deterministic printing with default names.
pub fn format_expression(e: &InfoExpression) -> String {
    e.to_string()
}

/// The box functional `I(c;d|a) + I(c;d|b) + I(a;b) - I(c;d)` for four
/// disjoint nonempty variable groups.
pub fn box_expr(n: usize, a: SubsetMask, b: SubsetMask, c: SubsetMask, d: SubsetMask) -> Result<InfoExpression> {
    if n == 0 || n > MAX_ARITY {
        return Err(Error::ArityOutOfRange(n));
    }
    for m in [a, b, c, d] {
        m.check(n)?;
    }
    require_disjoint(&[a, b, c, d])?;
    let e = InfoExpression::mutual(n, c, d, a)?
        .checked_add(&InfoExpression::mutual(n, c, d, b)?)?
        .checked_add(&InfoExpression::mutual(n, a, b, SubsetMask::EMPTY)?)?
        .checked_sub(&InfoExpression::mutual(n, c, d, SubsetMask::EMPTY)?)?;
    Ok(e)
}

/// `□_{AB,CD}` on the first four variables.
pub fn standard_box(n: usize) -> Result<InfoExpression> {
    let v = SubsetMask::singleton;
    box_expr(n, v(0), v(1), v(2), v(3))
}

/// Smallest arity whose default names `A, B, ...` cover every letter used
/// inside parentheses.
pub fn inferred_arity(texts: &[&str]) -> usize {
    let mut max = 0;
    for t in texts {
        let mut inside = 0i32;
        for c in t.chars() {
            match c {
                '(' => inside += 1,
                ')' => inside -= 1,
                'A'..='Z' if inside > 0 => max = max.max((c as u8 - b'A') as usize + 1),
                _ => {}
            }
        }
    }
    max.max(1)
}

/// Shorthand constructor used in tests and registries.
pub(crate) fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(bits: u32) -> SubsetMask {
        SubsetMask::new(bits)
    }

    #[test]
    fn conditional_mutual_information_expansion() {
        let e = InfoExpression::parse_default("I(A;B|C)", 3).unwrap();
        let expected = InfoExpression::from_terms(
            3,
            [(m(0b101), rat(1, 1)), (m(0b110), rat(1, 1)), (m(0b111), rat(-1, 1)), (m(0b100), rat(-1, 1))],
        )
        .unwrap();
        assert_eq!(e, expected);
    }

    #[test]
    fn conditional_entropy_expansion() {
        let e = InfoExpression::parse_default("H(A|B)", 2).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.coeff(m(0b11)), rat(1, 1));
        assert_eq!(e.coeff(m(0b10)), rat(-1, 1));
    }

    #[test]
    fn cancellation_gives_empty_expression() {
        let e = InfoExpression::parse_default("I(A;B) + I(A;B|C) - I(A;B) - I(A;B|C)", 3).unwrap();
        assert!(e.is_zero());
        assert_eq!(e.to_string(), "0");
    }

    #[test]
    fn format_roundtrip_on_examples() {
        for (text, n) in [("I(A;B|C)", 3), ("H(A|B)", 2), ("2 H(C|A,B) - 1/3 I(A;B|C)", 3)] {
            let e = InfoExpression::parse_default(text, n).unwrap();
            let back = InfoExpression::parse_default(&e.to_string(), n).unwrap();
            assert_eq!(back, e, "{text} -> {e}");
        }
        let e = InfoExpression::parse_default("-1/2 H(A,B) + H(B)", 2).unwrap();
        assert_eq!(e.to_string(), "-1/2 H(A,B) + H(B)");
    }

    #[test]
    fn box_symmetry_and_nesting() {
        let v = SubsetMask::singleton;
        let b1 = box_expr(4, v(0), v(1), v(2), v(3)).unwrap();
        let b2 = box_expr(4, v(1), v(0), v(2), v(3)).unwrap();
        assert_eq!(b1, b2);
        let parsed = InfoExpression::parse_default("I(C;D|A) + I(C;D|B) + I(A;B) - I(C;D)", 4).unwrap();
        assert_eq!(b1, parsed);
        let nested = box_expr(5, v(0) | v(4), v(1), v(2), v(3)).unwrap();
        let text = InfoExpression::parse_default("I(C;D|A,E) + I(C;D|B) + I(A,E;B) - I(C;D)", 5).unwrap();
        assert_eq!(nested, text);
        assert_eq!(box_expr(4, v(0), v(0), v(2), v(3)), Err(Error::OverlappingMasks));
    }

    #[test]
    fn evaluate_on_zero_vector() {
        let e = standard_box(4).unwrap();
        assert_eq!(e.evaluate(&EntropyVector::zeros(4)).unwrap(), 0.0);
        assert!(e.evaluate(&EntropyVector::zeros(3)).is_err());
    }

    #[test]
    fn substitution_identifies_variables() {
        // I(A;B) with B := A becomes H(A).
        let e = InfoExpression::parse_default("I(A;B)", 2).unwrap();
        let s = e.substitute(1, &[m(1), m(1)]).unwrap();
        assert_eq!(s, InfoExpression::parse_default("H(A)", 1).unwrap());
    }
}
