//! Entropy profiles: the vector of joint entropies (in bits) of every
//! nonempty subset of variables.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::distribution::{JointDistribution, WeightVec};
use crate::error::{Error, Result};
use crate::hp::{div_round, ratio_f64, Fixed, Log2Context};
use crate::subset::{SubsetMask, MAX_ARITY};

/// Neumaier compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// A point of R^(2^n - 1) indexed by nonempty subsets.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyVector {
    n: usize,
    coords: Vec<f64>,
}

impl EntropyVector {
    /// Coordinates are indexed by `mask - 1`. Values must be finite and
    /// nonnegative.
    pub fn new(n: usize, coords: Vec<f64>) -> Result<Self> {
        if n == 0 || n > MAX_ARITY.min(20) {
            return Err(Error::ArityOutOfRange(n));
        }
        let expected = (1usize << n) - 1;
        if coords.len() != expected {
            return Err(Error::ArityMismatch {
                expected,
                found: coords.len(),
            });
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite() || **c < 0.0) {
            return Err(Error::Precondition(format!(
                "entropy coordinates must be finite and nonnegative, got {bad}"
            )));
        }
        Ok(EntropyVector { n, coords })
    }

    pub fn from_fn(n: usize, f: impl Fn(SubsetMask) -> f64) -> Result<Self> {
        EntropyVector::new(n, SubsetMask::all_nonempty(n).map(f).collect())
    }

    pub fn zeros(n: usize) -> Self {
        EntropyVector {
            n,
            coords: vec![0.0; (1 << n) - 1],
        }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    /// Coordinate of a nonempty mask; the empty set has entropy 0.
    pub fn get(&self, s: SubsetMask) -> f64 {
        if s.is_empty() {
            0.0
        } else {
            self.coords[s.coord_index()]
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// `(mask, value)` pairs in lexicographic subset order.
    pub fn lexicographic(&self) -> Vec<(SubsetMask, f64)> {
        SubsetMask::lexicographic(self.n)
            .into_iter()
            .map(|m| (m, self.get(m)))
            .collect()
    }
}

/// Entropy profile of a fixed-point evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedEntropyVector {
    n: usize,
    coords: Vec<Fixed>,
}

impl FixedEntropyVector {
    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn frac_bits(&self) -> u32 {
        self.coords[0].frac_bits()
    }

    pub fn get(&self, s: SubsetMask) -> Fixed {
        if s.is_empty() {
            Fixed::zero(self.frac_bits())
        } else {
            self.coords[s.coord_index()].clone()
        }
    }

    pub fn to_f64(&self) -> EntropyVector {
        EntropyVector {
            n: self.n,
            coords: self.coords.iter().map(|c| c.to_f64().max(0.0)).collect(),
        }
    }
}

/// Entropy profile in double precision with compensated summation.
pub fn entropy_profile(d: &JointDistribution) -> EntropyVector {
    let n = d.arity();
    let coords = SubsetMask::all_nonempty(n)
        .map(|s| weights_entropy(&d.marginal_weights(s), d.denominator()))
        .collect();
    EntropyVector { n, coords }
}

/// Entropy of a single subset.
pub fn subset_entropy(d: &JointDistribution, s: SubsetMask) -> Result<f64> {
    s.check(d.arity())?;
    Ok(weights_entropy(&d.marginal_weights(s), d.denominator()))
}

fn weights_entropy(w: &WeightVec, denom: &BigUint) -> f64 {
    let mut acc = CompensatedSum::new();
    match w {
        WeightVec::Small(v) => {
            let dn = denom.to_u64().expect("small weights imply a small denominator");
            let df = dn as f64;
            for &x in v {
                acc.add(plogp(x as f64 / df, || (dn - x) as f64 / df));
            }
        }
        WeightVec::Big(v) => {
            for x in v {
                acc.add(plogp(ratio_f64(x, denom), || ratio_f64(&(denom - x), denom)));
            }
        }
    }
    acc.value().max(0.0)
}

/// p·log2(1/p), using the complement 1 - p when p is close to one.
fn plogp(p: f64, complement: impl Fn() -> f64) -> f64 {
    if p <= 0.0 {
        return 0.0;
    }
    let minus_log2 = if p > 0.5 {
        -(-complement()).ln_1p() / std::f64::consts::LN_2
    } else {
        -p.log2()
    };
    p * minus_log2
}

/// Default working precision for a distribution: enough to resolve the
/// smallest atom plus a wide margin.
pub fn default_frac_bits(d: &JointDistribution) -> u32 {
    d.denominator().bits() as u32 + 128
}

/// Entropy profile in binary fixed point with `frac_bits` fractional bits.
pub fn entropy_profile_fixed(d: &JointDistribution, frac_bits: u32) -> FixedEntropyVector {
    let mut ctx = Log2Context::new(frac_bits);
    entropy_profile_with(d, &mut ctx)
}

/// Like [`entropy_profile_fixed`] but reusing a logarithm cache.
pub fn entropy_profile_with(d: &JointDistribution, ctx: &mut Log2Context) -> FixedEntropyVector {
    let n = d.arity();
    let denom = d.denominator();
    let log_d = ctx.log2(denom);
    let denom_i = BigInt::from(denom.clone());
    let coords = SubsetMask::all_nonempty(n)
        .map(|s| {
            let weights = d.marginal_weights(s).to_big();
            // H = log2 D - (1/D) Σ w log2 w
            let mut acc = BigInt::zero();
            for w in &weights {
                let l = ctx.log2(w);
                acc += l.raw() * BigInt::from(w.clone());
            }
            let mean = Fixed::from_raw(div_round(&acc, &denom_i), ctx.frac_bits());
            &log_d - &mean
        })
        .collect();
    FixedEntropyVector { n, coords }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn names(n: usize) -> Vec<String> {
        crate::subset::default_names(n)
    }

    #[test]
    fn fair_bit_is_one() {
        let d = JointDistribution::uniform(names(1), None, vec![vec![0], vec![1]]).unwrap();
        assert_eq!(entropy_profile(&d).coords(), &[1.0]);
    }

    #[test]
    fn biased_pair_matches_direct_formula() {
        let r = |p, q| BigRational::new(BigInt::from(p), BigInt::from(q));
        let d = JointDistribution::new(
            names(2),
            None,
            vec![(vec![0, 0], r(1, 8)), (vec![0, 1], r(3, 8)), (vec![1, 1], r(1, 2))],
        )
        .unwrap();
        let h = entropy_profile(&d);
        let hb = |p: f64| -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
        assert!((h.get(SubsetMask::new(1)) - 1.0).abs() < 1e-15);
        assert!((h.get(SubsetMask::new(2)) - hb(1.0 / 8.0)).abs() < 1e-15);
        let joint = 1.0 / 8.0 * 3.0 + 3.0 / 8.0 * (8.0f64 / 3.0).log2() + 0.5;
        assert!((h.get(SubsetMask::new(3)) - joint).abs() < 1e-15);
    }

    #[test]
    fn fixed_profile_agrees_with_double() {
        let r = |p, q| BigRational::new(BigInt::from(p), BigInt::from(q));
        let d = JointDistribution::new(
            names(3),
            None,
            vec![
                (vec![0, 0, 0], r(1, 7)),
                (vec![0, 1, 1], r(2, 7)),
                (vec![1, 0, 1], r(3, 14)),
                (vec![1, 1, 0], r(5, 14)),
            ],
        )
        .unwrap();
        let a = entropy_profile(&d);
        let b = entropy_profile_fixed(&d, 200).to_f64();
        for (x, y) in a.coords().iter().zip(b.coords()) {
            assert!((x - y).abs() < 1e-14, "{x} vs {y}");
        }
    }

    #[test]
    fn tiny_mass_resolved_in_fixed_point() {
        // Two atoms with masses 2^-300 and 1 - 2^-300.
        let eps = BigRational::new(BigInt::from(1), BigInt::from(1) << 300u32);
        let one = BigRational::from_integer(1.into());
        let d = JointDistribution::new(
            names(1),
            None,
            vec![(vec![0], eps.clone()), (vec![1], one - eps)],
        )
        .unwrap();
        let h = entropy_profile_fixed(&d, default_frac_bits(&d)).get(SubsetMask::new(1));
        // h ≈ 2^-300 (300 + 1/ln 2)
        let expected = 300.0 + 1.0 / std::f64::consts::LN_2;
        let scaled = h.mul_rational(&BigRational::from_integer(BigInt::from(1) << 300u32));
        assert!((scaled.to_f64() - expected).abs() < 1e-9, "{}", scaled.to_f64());
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let s: CompensatedSum = [1.0, 1e-16, -1.0, 1e-16].into_iter().collect();
        assert!((s.value() - 2e-16).abs() < 1e-30);
    }
}
