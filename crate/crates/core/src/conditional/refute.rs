//! Sweeps a paired family until `target + Λ·Σ|constraint_i| < 0`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::distribution::{format_rational, JointDistribution};
use crate::entropy::{default_frac_bits, entropy_profile, entropy_profile_with, CompensatedSum, EntropyVector};
use crate::error::{Error, Result};
use crate::expr::rational_to_f64;
use crate::families::{claim, geometric_closed_profile, primes_between, Family};
use crate::hp::{Fixed, Log2Context, Real};

use super::registry::{lookup, ConditionalInequality};

/// Smallest ε (as `2^-k`) tried in double precision.
pub const DOUBLE_FLOOR_LOG2: u32 = 40;
/// Smallest ε tried by the fixed-point continuation.
pub const EXTENDED_FLOOR_LOG2: u32 = 4096;
/// Largest prime tried for the geometric family.
pub const MAX_PRIME: u64 = 1_000_000;

/// How margins are evaluated during a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrecisionMode {
    /// Double precision down to `2^-40`, then fixed point down to `2^-4096`.
    /// Margins too close to zero for a double are re-evaluated in fixed point.
    Auto,
    /// Double precision only, floor `2^-40`.
    Double,
    /// Fixed point with at least this many significant decimal digits.
    Digits(u32),
}

/// Precision actually used for one evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Double,
    /// Fractional bits.
    Fixed(u32),
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precision::Double => f.write_str("double"),
            Precision::Fixed(b) => write!(f, "fixed({b} bits)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parameter {
    Eps(BigRational),
    Prime(u64),
}

impl Parameter {
    /// ε or `q` as a double.
    pub fn as_f64(&self) -> f64 {
        match self {
            Parameter::Eps(e) => rational_to_f64(e),
            Parameter::Prime(q) => *q as f64,
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parameter::Eps(e) => {
                let n = e.numer();
                let d = e.denom();
                if n.is_one() && d.magnitude().count_ones() == 1 && d.bits() > 1 {
                    write!(f, "eps=2^-{}", d.bits() - 1)
                } else {
                    write!(f, "eps={}", format_rational(e))
                }
            }
            Parameter::Prime(q) => write!(f, "q={q}"),
        }
    }
}

/// A family usable against an inequality. `lift` appends a copy of the
/// given variable so a 4-variable family serves a 5-variable inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub family: Family,
    pub lift: Option<usize>,
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        if let Some(src) = self.lift {
            write!(f, " with E:={}", (b'A' + src as u8) as char)?;
        }
        Ok(())
    }
}

/// Families paired with an inequality; the first is the default.
pub fn pairings(inequality: &str) -> Vec<Pairing> {
    let plain = |family| Pairing { family, lift: None };
    let lifted = |k, src| Pairing {
        family: Family::Claim(k),
        lift: Some(src),
    };
    match inequality {
        "I1" => vec![plain(Family::Claim(1)), plain(Family::Geometric)],
        "I2" => vec![plain(Family::Claim(2))],
        "I3" => vec![plain(Family::Claim(3)), plain(Family::Geometric)],
        "I4" => vec![lifted(4, 3)],
        "I5" => vec![lifted(5, 3)],
        "I6" => vec![lifted(5, 1)],
        "I4p" => vec![plain(Family::Claim(4))],
        "I5p" => vec![plain(Family::Claim(5))],
        "weak" => vec![plain(Family::Geometric)],
        _ => Vec::new(),
    }
}

fn find_pairing(ci: &ConditionalInequality, family: Family) -> Result<Pairing> {
    pairings(&ci.name)
        .into_iter()
        .find(|p| p.family == family)
        .ok_or_else(|| Error::Unpaired {
            inequality: ci.name.clone(),
            family: family.to_string(),
        })
}

/// A parameter at which no multiplier vector with `Σ|λ_i| ≤ Λ` turns the
/// conditional inequality into a valid one.
#[derive(Clone, Debug, PartialEq)]
pub struct RefutationWitness {
    pub inequality: String,
    pub pairing: Pairing,
    pub parameter: Parameter,
    pub lambda_bound: BigRational,
    pub precision: Precision,
    pub target: Real,
    /// `(DSL text, value)` per constraint.
    pub constraints: Vec<(String, Real)>,
    pub margin: Real,
}

impl RefutationWitness {
    pub fn family(&self) -> String {
        self.pairing.to_string()
    }

    /// Recomputes the margin from the stored parameter; true when it is
    /// negative and agrees within `1e-12`.
    pub fn verify(&self) -> Result<bool> {
        let ci = lookup(&self.inequality)?;
        let again = evaluate(&ci, self.pairing, &self.parameter, &self.lambda_bound, self.precision)?;
        Ok(again.margin.is_negative() && again.margin.approx_eq(&self.margin, 1e-12))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("RefutationWitness\n");
        out += &format!("inequality: {}\n", self.inequality);
        out += &format!("family: {}\n", self.family());
        out += &format!("parameter: {}\n", self.parameter);
        out += &format!("lambda_bound: {}\n", format_rational(&self.lambda_bound));
        out += &format!("precision: {}\n", self.precision);
        out += &format!("target: {}\n", self.target);
        for (text, v) in &self.constraints {
            out += &format!("constraint {text}: {v}\n");
        }
        out += &format!("margin: {}\n", self.margin);
        out
    }
}

impl fmt::Display for RefutationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_text().trim_end())
    }
}

/// One evaluation of the margin.
#[derive(Clone, Debug, PartialEq)]
pub struct MarginEvaluation {
    pub target: Real,
    pub constraints: Vec<Real>,
    pub margin: Real,
}

fn family_distribution(pairing: Pairing, eps: &BigRational) -> Result<JointDistribution> {
    let Family::Claim(k) = pairing.family else {
        return Err(Error::Precondition("geometric family has no ε parameter".into()));
    };
    let d = claim(k, eps)?;
    match pairing.lift {
        Some(src) => d.with_duplicate(src, "E"),
        None => Ok(d),
    }
}

fn evaluate_double(ci: &ConditionalInequality, profile: &EntropyVector, lambda: &BigRational) -> Result<MarginEvaluation> {
    let target = ci.target.evaluate(profile)?;
    let constraints = ci
        .constraints
        .iter()
        .map(|c| c.evaluate(profile))
        .collect::<Result<Vec<f64>>>()?;
    let penalty: CompensatedSum = constraints.iter().map(|c| c.abs()).collect();
    let margin = target + rational_to_f64(lambda) * penalty.value();
    Ok(MarginEvaluation {
        target: Real::Double(target),
        constraints: constraints.into_iter().map(Real::Double).collect(),
        margin: Real::Double(margin),
    })
}

fn evaluate_fixed(ci: &ConditionalInequality, d: &JointDistribution, bits: u32, lambda: &BigRational) -> Result<MarginEvaluation> {
    let mut ctx = Log2Context::new(bits);
    let profile = entropy_profile_with(d, &mut ctx);
    let target = ci.target.evaluate_fixed(&profile)?;
    let constraints = ci
        .constraints
        .iter()
        .map(|c| c.evaluate_fixed(&profile))
        .collect::<Result<Vec<Fixed>>>()?;
    let mut penalty = Fixed::zero(bits);
    for c in &constraints {
        penalty = &penalty + &c.abs();
    }
    let margin = &target + &penalty.mul_rational(lambda);
    Ok(MarginEvaluation {
        target: Real::Fixed(target),
        constraints: constraints.into_iter().map(Real::Fixed).collect(),
        margin: Real::Fixed(margin),
    })
}

/// Evaluates `target + Λ·Σ|constraint_i|` at one parameter. The geometric
/// family always uses its closed-form profile in double precision.
pub fn evaluate(
    ci: &ConditionalInequality,
    pairing: Pairing,
    param: &Parameter,
    lambda: &BigRational,
    precision: Precision,
) -> Result<MarginEvaluation> {
    match param {
        Parameter::Prime(q) => {
            if pairing.family != Family::Geometric || ci.arity != 4 {
                return Err(Error::Precondition("prime parameter needs the geometric family".into()));
            }
            evaluate_double(ci, &geometric_closed_profile(*q)?, lambda)
        }
        Parameter::Eps(eps) => {
            let d = family_distribution(pairing, eps)?;
            if d.arity() != ci.arity {
                return Err(Error::ArityMismatch {
                    expected: ci.arity,
                    found: d.arity(),
                });
            }
            match precision {
                Precision::Double => evaluate_double(ci, &entropy_profile(&d), lambda),
                Precision::Fixed(bits) => evaluate_fixed(ci, &d, bits, lambda),
            }
        }
    }
}

/// Sweep configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RefuteOptions {
    pub precision: PrecisionMode,
    pub max_prime: u64,
}

impl Default for RefuteOptions {
    fn default() -> Self {
        RefuteOptions {
            precision: PrecisionMode::Auto,
            max_prime: MAX_PRIME,
        }
    }
}

/// A double margin this close to zero is not trusted.
fn double_guard(lambda: &BigRational) -> f64 {
    1e-12 * (1.0 + rational_to_f64(lambda))
}

/// A fixed-point margin must exceed this many ulps in magnitude.
fn fixed_accepts(margin: &Fixed) -> bool {
    let bits = margin.raw().magnitude().bits();
    margin.is_negative() && bits > 32
}

fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

/// Finds the first parameter in sweep order where the margin is negative.
pub fn refute(ci: &ConditionalInequality, family: Family, lambda: &BigRational) -> Result<RefutationWitness> {
    refute_with(ci, family, lambda, &RefuteOptions::default())
}

pub fn refute_with(
    ci: &ConditionalInequality,
    family: Family,
    lambda: &BigRational,
    opts: &RefuteOptions,
) -> Result<RefutationWitness> {
    if lambda.is_negative() {
        return Err(Error::Precondition("lambda bound must be nonnegative".into()));
    }
    let pairing = find_pairing(ci, family)?;
    let witness = |parameter: Parameter, precision: Precision, ev: MarginEvaluation| RefutationWitness {
        inequality: ci.name.clone(),
        pairing,
        parameter,
        lambda_bound: lambda.clone(),
        precision,
        target: ev.target,
        constraints: ci.constraint_text.iter().cloned().zip(ev.constraints).collect(),
        margin: ev.margin,
    };

    if family == Family::Geometric {
        let guard = double_guard(lambda);
        for q in primes_between(3, opts.max_prime) {
            let param = Parameter::Prime(q);
            let ev = evaluate(ci, pairing, &param, lambda, Precision::Double)?;
            if ev.margin.to_f64() < -guard {
                return Ok(witness(param, Precision::Double, ev));
            }
        }
        return Err(Error::SweepExhausted(format!(
            "{} / geometric: no prime q <= {} gives a negative margin at lambda {}",
            ci.name,
            opts.max_prime,
            format_rational(lambda)
        )));
    }

    let floor = match opts.precision {
        PrecisionMode::Double => DOUBLE_FLOOR_LOG2,
        _ => EXTENDED_FLOOR_LOG2,
    };
    for k in 3..=floor {
        let eps = BigRational::new(BigInt::one(), BigInt::one() << k);
        let param = Parameter::Eps(eps.clone());
        let fixed_try = |bits: u32| -> Result<Option<RefutationWitness>> {
            let ev = evaluate(ci, pairing, &param, lambda, Precision::Fixed(bits))?;
            match &ev.margin {
                Real::Fixed(m) if fixed_accepts(m) => Ok(Some(witness(param.clone(), Precision::Fixed(bits), ev))),
                _ => Ok(None),
            }
        };
        let auto_bits = || -> Result<u32> { Ok(default_frac_bits(&family_distribution(pairing, &eps)?)) };
        match opts.precision {
            PrecisionMode::Double | PrecisionMode::Auto if k <= DOUBLE_FLOOR_LOG2 => {
                let ev = evaluate(ci, pairing, &param, lambda, Precision::Double)?;
                let m = ev.margin.to_f64();
                let guard = double_guard(lambda);
                if m < -guard {
                    return Ok(witness(param, Precision::Double, ev));
                }
                if opts.precision == PrecisionMode::Auto && m.abs() <= guard {
                    if let Some(w) = fixed_try(auto_bits()?)? {
                        return Ok(w);
                    }
                }
            }
            PrecisionMode::Double => unreachable!("double sweep stops at its floor"),
            PrecisionMode::Auto => {
                if let Some(w) = fixed_try(auto_bits()?)? {
                    return Ok(w);
                }
            }
            PrecisionMode::Digits(digits) => {
                let bits = digits_to_bits(digits);
                if k + 64 > bits {
                    break;
                }
                if let Some(w) = fixed_try(bits)? {
                    return Ok(w);
                }
            }
        }
    }
    Err(Error::SweepExhausted(format!(
        "{} / {}: no eps in the sweep gives a negative margin at lambda {}",
        ci.name,
        pairing,
        format_rational(lambda)
    )))
}

/// Runs [`refute`] for each bound in `lambdas`.
pub fn refutation_curve(ci: &ConditionalInequality, family: Family, lambdas: &[BigRational]) -> Result<Vec<RefutationWitness>> {
    refutation_curve_with(ci, family, lambdas, &RefuteOptions::default())
}

pub fn refutation_curve_with(
    ci: &ConditionalInequality,
    family: Family,
    lambdas: &[BigRational],
    opts: &RefuteOptions,
) -> Result<Vec<RefutationWitness>> {
    lambdas.iter().map(|l| refute_with(ci, family, l, opts)).collect()
}

/// Tab-separated `lambda, parameter, precision, margin` rows.
pub fn curve_to_tsv(rows: &[RefutationWitness]) -> String {
    let mut out = String::from("lambda\tparameter\tprecision\tmargin\n");
    for w in rows {
        out += &format!(
            "{}\t{}\t{}\t{}\n",
            format_rational(&w.lambda_bound),
            w.parameter,
            w.precision,
            w.margin
        );
    }
    out
}
