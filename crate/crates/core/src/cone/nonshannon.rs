//! Known unconditional non-Shannon inequalities: the five-variable
//! generalization of Zhang-Yeung and a three-branch series indexed by an
//! integer `k ≥ 1`.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::expr::{box_expr, InfoExpression};
use crate::subset::SubsetMask;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Series {
    I,
    II,
    III,
}

impl Series {
    pub const ALL: [Series; 3] = [Series::I, Series::II, Series::III];

    pub fn name(self) -> &'static str {
        match self {
            Series::I => "i",
            Series::II => "ii",
            Series::III => "iii",
        }
    }
}

fn mi(a: usize, b: usize, c: &[usize]) -> InfoExpression {
    InfoExpression::mutual(
        5,
        SubsetMask::singleton(a),
        SubsetMask::singleton(b),
        SubsetMask::from_indices(c.iter().copied()),
    )
    .expect("valid masks")
}

fn box5() -> InfoExpression {
    let v = SubsetMask::singleton;
    box_expr(5, v(0), v(1), v(2), v(3)).expect("valid masks")
}

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;
const E: usize = 4;

/// `□_{AB,CD} + I(E;C|D) + I(E;D|C) + I(C;D|E) ≥ 0` on five variables.
pub fn example3() -> InfoExpression {
    [mi(E, C, &[D]), mi(E, D, &[C]), mi(C, D, &[E])]
        .iter()
        .fold(box5(), |acc, t| acc.checked_add(t).unwrap())
}

/// Member `k` of a series, on five variables `A..E`.
pub fn series(which: Series, k: u32) -> Result<InfoExpression> {
    if k < 1 {
        return Err(Error::InvalidSeriesIndex(k));
    }
    let inv_k = BigRational::new(1.into(), k.into());
    let half = BigRational::new((k - 1).into(), 2.into());
    let (t1, t2, t3, pair) = match which {
        Series::I => (mi(A, C, &[E]), mi(A, E, &[C]), mi(C, E, &[A]), mi(A, D, &[C]).checked_add(&mi(A, C, &[D]))?),
        Series::II => (mi(B, C, &[E]), mi(C, E, &[B]), mi(B, E, &[C]), mi(B, C, &[D]).checked_add(&mi(C, D, &[B]))?),
        Series::III => (mi(C, D, &[E]), mi(C, E, &[D]), mi(D, E, &[C]), mi(B, C, &[D]).checked_add(&mi(C, D, &[B]))?),
    };
    box5()
        .checked_add(&t1)?
        .checked_add(&t2)?
        .checked_add(&t3.scale(&inv_k))?
        .checked_add(&pair.scale(&half))
}

/// Known non-Shannon inequalities on `n ∈ {4, 5}` variables, each with a
/// name. Four-variable forms identify `E` with another variable, chosen so
/// that the result is still not Shannon-type: `E := A` for the Zhang-Yeung
/// form and series (iii), `E := D` for series (i) and (ii).
pub fn known_nonshannon_registry(n: usize, k: u32) -> Result<Vec<(String, InfoExpression)>> {
    let v = SubsetMask::singleton;
    let e_is_a = [v(A), v(B), v(C), v(D), v(A)];
    let e_is_d = [v(A), v(B), v(C), v(D), v(D)];
    let mut out = vec![(
        if n == 4 { "zhang-yeung" } else { "example3" }.to_string(),
        example3(),
        &e_is_a,
    )];
    for s in Series::ALL {
        let images = if s == Series::III { &e_is_a } else { &e_is_d };
        out.push((format!("series-{}(k={k})", s.name()), series(s, k)?, images));
    }
    match n {
        5 => Ok(out.into_iter().map(|(name, e, _)| (name, e)).collect()),
        4 => out
            .into_iter()
            .map(|(name, e, images)| Ok((name, e.substitute(4, images)?)))
            .collect(),
        _ => Err(Error::ArityOutOfRange(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::is_shannon_type;
    use crate::expr::rat;

    #[test]
    fn k_one_drops_the_pair_terms() {
        let e = series(Series::I, 1).unwrap();
        let expected = InfoExpression::parse_default(
            "I(C;D|A) + I(C;D|B) + I(A;B) - I(C;D) + I(A;C|E) + I(A;E|C) + I(C;E|A)",
            5,
        )
        .unwrap();
        assert_eq!(e, expected);
    }

    #[test]
    fn k_three_has_unit_pair_coefficient() {
        let e = series(Series::I, 3).unwrap();
        let expected = InfoExpression::parse_default(
            "I(C;D|A) + I(C;D|B) + I(A;B) - I(C;D) + I(A;C|E) + I(A;E|C) + 1/3 I(C;E|A) + I(A;D|C) + I(A;C|D)",
            5,
        )
        .unwrap();
        assert_eq!(e, expected);
        assert!(series(Series::II, 0).is_err());
    }

    #[test]
    fn zhang_yeung_standard_form() {
        let reg = known_nonshannon_registry(4, 1).unwrap();
        let zy = &reg[0].1;
        let expected = InfoExpression::parse_default(
            "2 I(C;D|A) + I(C;D|B) + I(A;B) + I(A;C|D) + I(A;D|C) - I(C;D)",
            4,
        )
        .unwrap();
        assert_eq!(zy, &expected);
        assert_eq!(zy.coeff(SubsetMask::new(0b1100)), rat(3, 1));
    }

    #[test]
    fn registry_members_are_not_shannon_type() {
        for n in [4, 5] {
            for k in 1..=3 {
                for (name, e) in known_nonshannon_registry(n, k).unwrap() {
                    assert!(is_shannon_type(&e).unwrap().separating_point().is_some(), "{name} n={n}");
                }
            }
        }
        assert!(known_nonshannon_registry(3, 1).is_err());
    }
}
