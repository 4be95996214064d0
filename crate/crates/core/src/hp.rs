//! Binary fixed-point reals for evaluations that underflow double precision.
//!
//! A [`Fixed`] is `raw / 2^frac_bits`. Only the handful of operations needed
//! for entropy sums are provided: addition, rational scaling and `log2` of
//! big integers.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixed {
    raw: BigInt,
    frac_bits: u32,
}

impl Fixed {
    pub fn zero(frac_bits: u32) -> Self {
        Fixed {
            raw: BigInt::zero(),
            frac_bits,
        }
    }

    pub fn from_raw(raw: BigInt, frac_bits: u32) -> Self {
        Fixed { raw, frac_bits }
    }

    pub fn from_int(v: i64, frac_bits: u32) -> Self {
        Fixed {
            raw: BigInt::from(v) << frac_bits,
            frac_bits,
        }
    }

    /// Nearest fixed-point value to a rational (ties away from zero).
    pub fn from_rational(r: &BigRational, frac_bits: u32) -> Self {
        Fixed {
            raw: div_round(&(r.numer() << frac_bits), r.denom()),
            frac_bits,
        }
    }

    pub fn raw(&self) -> &BigInt {
        &self.raw
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    pub fn is_negative(&self) -> bool {
        self.raw.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.raw.is_zero()
    }

    pub fn abs(&self) -> Fixed {
        Fixed {
            raw: self.raw.abs(),
            frac_bits: self.frac_bits,
        }
    }

    /// Multiplies by an exact rational, rounding to nearest.
    pub fn mul_rational(&self, r: &BigRational) -> Fixed {
        Fixed {
            raw: div_round(&(&self.raw * r.numer()), r.denom()),
            frac_bits: self.frac_bits,
        }
    }

    pub fn mul(&self, other: &Fixed) -> Fixed {
        assert_eq!(self.frac_bits, other.frac_bits);
        Fixed {
            raw: shr_round(&(&self.raw * &other.raw), self.frac_bits),
            frac_bits: self.frac_bits,
        }
    }

    pub fn to_f64(&self) -> f64 {
        bigint_ratio_f64(&self.raw, self.frac_bits)
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.raw.clone(), BigInt::one() << self.frac_bits)
    }

    /// Scientific notation with `digits` significant digits, e.g. `-1.25e-601`.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.raw.is_zero() {
            return "0".into();
        }
        let digits = digits.max(1);
        let neg = self.raw.is_negative();
        let mag = self.raw.magnitude();
        // Decimal exponent estimate from the binary one.
        let bin_exp = mag.bits() as i64 - 1 - self.frac_bits as i64;
        let mut e10 = (bin_exp as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let mut mant = scaled_decimal(mag, self.frac_bits, digits as i64 - 1 - e10);
        let limit = num_traits::pow(BigUint::from(10u32), digits);
        if mant >= limit {
            e10 += 1;
            mant = scaled_decimal(mag, self.frac_bits, digits as i64 - 1 - e10);
        } else if mant < &limit / 10u32 {
            e10 -= 1;
            mant = scaled_decimal(mag, self.frac_bits, digits as i64 - 1 - e10);
        }
        if mant >= limit {
            // Rounding carried into a new digit.
            mant /= 10u32;
            e10 += 1;
        }
        let s = mant.to_string();
        let (head, tail) = s.split_at(1);
        let tail = tail.trim_end_matches('0');
        let sign = if neg { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{e10}")
        } else {
            format!("{sign}{head}.{tail}e{e10}")
        }
    }
}

impl std::ops::Add for &Fixed {
    type Output = Fixed;
    fn add(self, rhs: &Fixed) -> Fixed {
        assert_eq!(self.frac_bits, rhs.frac_bits);
        Fixed {
            raw: &self.raw + &rhs.raw,
            frac_bits: self.frac_bits,
        }
    }
}

impl std::ops::Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, rhs: &Fixed) -> Fixed {
        assert_eq!(self.frac_bits, rhs.frac_bits);
        Fixed {
            raw: &self.raw - &rhs.raw,
            frac_bits: self.frac_bits,
        }
    }
}

impl std::ops::Neg for &Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed {
            raw: -&self.raw,
            frac_bits: self.frac_bits,
        }
    }
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.frac_bits == other.frac_bits).then(|| self.raw.cmp(&other.raw))
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci(12))
    }
}

/// round(|m| * 10^s / 2^frac_bits) for a decimal shift `s` of either sign.
fn scaled_decimal(m: &BigUint, frac_bits: u32, s: i64) -> BigUint {
    let (num, den) = if s >= 0 {
        (
            m * num_traits::pow(BigUint::from(10u32), s as usize),
            BigUint::one() << frac_bits,
        )
    } else {
        (
            m.clone(),
            num_traits::pow(BigUint::from(10u32), (-s) as usize) << frac_bits,
        )
    };
    (&num + (&den >> 1u32)) / den
}

pub(crate) fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    if (r.magnitude() << 1u32) >= *d.magnitude() {
        if (n.sign() == Sign::Minus) != (d.sign() == Sign::Minus) {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

fn shr_round(n: &BigInt, bits: u32) -> BigInt {
    if bits == 0 {
        return n.clone();
    }
    let half = BigInt::one() << (bits - 1);
    if n.is_negative() {
        -((-n + half) >> bits)
    } else {
        (n + half) >> bits
    }
}

/// `x / 2^shift` as an `f64` using the leading 64 bits of `x`.
pub(crate) fn bigint_ratio_f64(x: &BigInt, shift: u32) -> f64 {
    let mag = biguint_ratio_f64(x.magnitude(), shift);
    if x.is_negative() {
        -mag
    } else {
        mag
    }
}

pub(crate) fn biguint_ratio_f64(x: &BigUint, shift: u32) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return 0.0;
    }
    let drop = bits.saturating_sub(64);
    let top = (x >> drop).to_u64().unwrap() as f64;
    let e = drop as i64 - shift as i64;
    top * pow2(e)
}

/// `a / b` for big unsigned integers, accurate to double precision.
pub(crate) fn ratio_f64(a: &BigUint, b: &BigUint) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    let shift = (b.bits() as i64 - a.bits() as i64 + 64).max(0) as u32;
    let q = (a << shift) / b;
    biguint_ratio_f64(&q, shift)
}

fn pow2(e: i64) -> f64 {
    // Split to avoid overflow in intermediate powers.
    let mut v = 1.0f64;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

/// Cached base-2 logarithms of big integers at a fixed precision.
///
/// Internally works with a few guard bits beyond the requested precision.
pub struct Log2Context {
    frac_bits: u32,
    work_bits: u32,
    ln2: BigInt,
    cache: HashMap<BigUint, Fixed>,
}

const GUARD_BITS: u32 = 32;

impl Log2Context {
    pub fn new(frac_bits: u32) -> Self {
        let work_bits = frac_bits + GUARD_BITS;
        let ln2 = atanh_inv_int(3, work_bits) << 1u32;
        Log2Context {
            frac_bits,
            work_bits,
            ln2,
            cache: HashMap::new(),
        }
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    /// log2(x) for x ≥ 1.
    pub fn log2(&mut self, x: &BigUint) -> Fixed {
        assert!(!x.is_zero(), "log2 of zero");
        if let Some(v) = self.cache.get(x) {
            return v.clone();
        }
        let v = self.compute(x);
        self.cache.insert(x.clone(), v.clone());
        v
    }

    fn compute(&self, x: &BigUint) -> Fixed {
        let w = self.work_bits;
        // Choose e so that m = x / 2^e lies in [2^-1/2, 2^1/2).
        let mut e = x.bits() as i64 - 1;
        // x / 2^e in [1,2): move to the lower half if above sqrt 2.
        // Compare x^2 with 2^(2e+1).
        let sq = x * x;
        if sq.bits() as i64 - 1 >= 2 * e + 1 {
            e += 1;
        }
        // z = (x - 2^e) / (x + 2^e), exact rational.
        let x_i = BigInt::from(x.clone());
        let p = if e >= 0 {
            BigInt::one() << (e as u32)
        } else {
            unreachable!("x >= 1")
        };
        let num = &x_i - &p;
        let den = &x_i + &p;
        let ln_m = if num.is_zero() {
            BigInt::zero()
        } else {
            atanh_ratio(&num, &den, w) << 1u32
        };
        // log2 x = e + ln(m) / ln 2
        let frac = (ln_m << w) / &self.ln2;
        let raw = (BigInt::from(e) << w) + frac;
        Fixed {
            raw: shr_round(&raw, GUARD_BITS),
            frac_bits: self.frac_bits,
        }
    }
}

/// atanh(1/k) * 2^bits for a small integer k ≥ 2.
fn atanh_inv_int(k: u64, bits: u32) -> BigInt {
    let k2 = BigInt::from(k * k);
    let mut term = (BigInt::one() << bits) / BigInt::from(k);
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    while !term.is_zero() {
        sum += &term / BigInt::from(2 * j + 1);
        term /= &k2;
        j += 1;
    }
    sum
}

/// atanh(num/den) * 2^bits for |num/den| ≤ 0.18.
fn atanh_ratio(num: &BigInt, den: &BigInt, bits: u32) -> BigInt {
    let z = (num << bits) / den;
    let z2: BigInt = (&z * &z) >> bits;
    let mut term = z;
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    while !term.is_zero() {
        sum += &term / BigInt::from(2 * j + 1);
        // Truncate toward zero so negative terms also reach zero.
        let prod = &term * &z2;
        term = if prod.is_negative() { -((-prod) >> bits) } else { prod >> bits };
        j += 1;
    }
    sum
}

/// A real number carried either as a double or as a fixed-point value.
#[derive(Clone, Debug, PartialEq)]
pub enum Real {
    Double(f64),
    Fixed(Fixed),
}

impl Real {
    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Double(v) => *v,
            Real::Fixed(f) => f.to_f64(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Real::Double(v) => *v < 0.0,
            Real::Fixed(f) => f.is_negative(),
        }
    }

    /// |self - other| ≤ tol, comparing in the common representation.
    pub fn approx_eq(&self, other: &Real, tol: f64) -> bool {
        match (self, other) {
            (Real::Fixed(a), Real::Fixed(b)) if a.frac_bits() == b.frac_bits() => {
                (a - b).abs().to_f64() <= tol
            }
            _ => (self.to_f64() - other.to_f64()).abs() <= tol,
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Double(v) => f.write_str(&crate::format::real(*v)),
            Real::Fixed(x) => f.write_str(&x.to_sci(12)),
        }
    }
}
