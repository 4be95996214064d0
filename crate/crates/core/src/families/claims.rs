//! Binary four-variable families indexed by a rational ε.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::distribution::JointDistribution;
use crate::error::{Error, Result};
use crate::expr::rat;
use crate::subset::default_names;

type Atom = ([u32; 4], BigRational);

/// Upper end of the ε domain of claim `k` (the lower end is 0).
pub fn claim_domain_upper(k: u8) -> Option<BigRational> {
    match k {
        1 => Some(rat(1, 1)),
        2 => Some(rat(1, 3)),
        3 => Some(rat(1, 2)),
        4 => Some(rat(1, 4)),
        5 => Some(rat(1, 2)),
        _ => None,
    }
}

fn atoms(k: u8, e: &BigRational) -> Vec<Atom> {
    let one = BigRational::one();
    match k {
        1 => {
            let q = (&one - e) / BigRational::from_integer(4.into());
            vec![
                ([0, 0, 0, 1], q.clone()),
                ([0, 1, 0, 0], q.clone()),
                ([1, 0, 0, 1], q.clone()),
                ([1, 1, 0, 1], q),
                ([1, 0, 1, 1], e.clone()),
            ]
        }
        2 => {
            let t = rat(1, 3) - e;
            vec![
                ([0, 0, 0, 0], e * BigRational::from_integer(3.into())),
                ([1, 1, 0, 0], t.clone()),
                ([1, 0, 1, 0], t.clone()),
                ([0, 1, 0, 1], t),
            ]
        }
        3 => {
            let h = rat(1, 2) - e;
            vec![
                ([1, 1, 0, 0], h.clone()),
                ([0, 1, 1, 0], e.clone()),
                ([1, 0, 1, 0], e.clone()),
                ([0, 0, 1, 1], h),
            ]
        }
        4 => {
            let f = rat(1, 4);
            let g = rat(1, 4) - e;
            vec![
                ([0, 0, 0, 0], e.clone()),
                ([1, 1, 0, 0], e.clone()),
                ([0, 1, 1, 0], f.clone()),
                ([1, 1, 1, 0], g.clone()),
                ([0, 0, 0, 1], g),
                ([1, 0, 0, 1], f),
            ]
        }
        5 => {
            let h = rat(1, 2) - e;
            vec![
                ([0, 0, 0, 0], h.clone()),
                ([0, 1, 0, 1], h),
                ([1, 0, 1, 0], e.clone()),
                ([1, 1, 0, 0], e.clone()),
            ]
        }
        _ => unreachable!("claim index checked by caller"),
    }
}

/// Distribution of claim `k ∈ 1..=5` at parameter `eps` on variables
/// `A, B, C, D`. Zero-mass atoms are dropped.
pub fn claim(k: u8, eps: &BigRational) -> Result<JointDistribution> {
    let upper = claim_domain_upper(k).ok_or_else(|| Error::UnknownFamily(format!("claim{k}")))?;
    if eps < &BigRational::zero() || eps > &upper {
        return Err(Error::OutOfDomain {
            family: format!("claim{k}"),
            param: crate::distribution::format_rational(eps),
        });
    }
    let list = atoms(k, eps)
        .into_iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|(t, p)| (t.to_vec(), p))
        .collect();
    JointDistribution::new(default_names(4), Some(vec![2; 4]), list)
}
