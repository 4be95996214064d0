//! Counterexample families: five binary claims indexed by ε and the
//! line/parabola family over prime fields.

mod asymptotics;
mod claims;
mod field;
mod geometric;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::distribution::JointDistribution;
use crate::error::{Error, Result};

pub use asymptotics::{asymptotic_report, dyadic_eps, relative_spread, AsymptoticRow};
pub use claims::{claim, claim_domain_upper};
pub use field::{is_prime, primes_between, FieldElement};
pub use geometric::{
    decode_line, decode_parabola, encode_line, encode_parabola, encode_point, geometric, geometric_closed_entropy,
    geometric_closed_profile, geometric_closed_value, MAX_ENUM_Q,
};

/// A named parametric family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Claim `1..=5`, parameter ε.
    Claim(u8),
    /// Parameter: a prime `q`.
    Geometric,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Claim(1),
        Family::Claim(2),
        Family::Claim(3),
        Family::Claim(4),
        Family::Claim(5),
        Family::Geometric,
    ];

    /// Human-readable parameter domain.
    pub fn domain(self) -> String {
        match self {
            Family::Claim(k) => match claim_domain_upper(k) {
                Some(u) => format!("eps in [0, {}]", crate::distribution::format_rational(&u)),
                None => "invalid".into(),
            },
            Family::Geometric => format!("prime q, 3 <= q <= {MAX_ENUM_Q} for enumeration"),
        }
    }

    /// Generates the distribution at `param` (ε for claims, `q` for the
    /// geometric family).
    pub fn generate(self, param: &BigRational) -> Result<JointDistribution> {
        match self {
            Family::Claim(k) => claim(k, param),
            Family::Geometric => {
                let q = param
                    .is_integer()
                    .then(|| param.to_integer().to_u64())
                    .flatten()
                    .ok_or_else(|| Error::OutOfDomain {
                        family: "geometric".into(),
                        param: crate::distribution::format_rational(param),
                    })?;
                geometric(q)
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Claim(k) => write!(f, "claim{k}"),
            Family::Geometric => f.write_str("geometric"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        if lower == "geometric" {
            return Ok(Family::Geometric);
        }
        match lower.strip_prefix("claim").and_then(|k| k.parse::<u8>().ok()) {
            Some(k) if (1..=5).contains(&k) => Ok(Family::Claim(k)),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// Free-function form of [`Family::generate`].
pub fn generate(family: Family, param: &BigRational) -> Result<JointDistribution> {
    family.generate(param)
}
