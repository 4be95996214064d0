use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_bigint::BigInt;

use crate::distribution::JointDistribution;
use crate::entropy::entropy_profile;
use crate::error::{Error, Result};
use crate::expr::{box_expr, InfoExpression};
use crate::format::real;
use crate::subset::{require_disjoint, SubsetMask};

/// Tolerance for the numeric checks around the Ingleton consequence.
pub const INGLETON_TOL: f64 = 1e-9;

/// The input extended by the common-information variable `W`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleMarkovResult {
    pub extended: JointDistribution,
    /// Index of `W` in `extended` (always the last variable).
    pub w_index: usize,
    pub class_count: usize,
    pub w_function_of_x: bool,
    pub w_function_of_y: bool,
    pub z_markov_given_w: bool,
}

impl DoubleMarkovResult {
    pub fn w_mask(&self) -> SubsetMask {
        SubsetMask::singleton(self.w_index)
    }
}

impl fmt::Display for DoubleMarkovResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "W classes: {}", self.class_count)?;
        writeln!(f, "H(W|X) = 0: {}", self.w_function_of_x)?;
        writeln!(f, "H(W|Y) = 0: {}", self.w_function_of_y)?;
        write!(f, "I(Z;X,Y|W) = 0: {}", self.z_markov_given_w)
    }
}

fn values(atom: &[u32], s: SubsetMask) -> Vec<u32> {
    s.indices().map(|i| atom[i]).collect()
}

fn fresh_name(d: &JointDistribution, base: &str) -> String {
    let mut name = base.to_string();
    while d.var_names().iter().any(|n| *n == name) {
        name.push('\'');
    }
    name
}

/// Builds `W` for `I(X;Z|Y) = I(Y;Z|X) = 0`: two values of `(X,Y)` fall in
/// one class when the conditional laws of `Z` given them are equal.
pub fn double_markov_witness(
    d: &JointDistribution,
    x: SubsetMask,
    y: SubsetMask,
    z: SubsetMask,
) -> Result<DoubleMarkovResult> {
    let n = d.arity();
    for m in [x, y, z] {
        m.check(n)?;
    }
    require_disjoint(&[x, y, z])?;
    if !d.is_cond_independent(x, z, y)? {
        return Err(Error::Precondition("I(X;Z|Y) is not zero".into()));
    }
    if !d.is_cond_independent(y, z, x)? {
        return Err(Error::Precondition("I(Y;Z|X) is not zero".into()));
    }

    let xy = x | y;
    let mut cells: BTreeMap<Vec<u32>, BTreeMap<Vec<u32>, BigUint>> = BTreeMap::new();
    for i in 0..d.num_atoms() {
        let atom = d.atom(i);
        *cells
            .entry(values(atom, xy))
            .or_default()
            .entry(values(atom, z))
            .or_default() += d.weight(i);
    }
    let mut class_of_law: HashMap<Vec<(Vec<u32>, BigRational)>, u32> = HashMap::new();
    let mut class_of_xy: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
    for (key, laws) in &cells {
        let total: BigUint = laws.values().sum();
        let total = BigInt::from(total);
        let law: Vec<(Vec<u32>, BigRational)> = laws
            .iter()
            .map(|(zv, w)| (zv.clone(), BigRational::new(BigInt::from(w.clone()), total.clone())))
            .collect();
        let next = class_of_law.len() as u32;
        let class = *class_of_law.entry(law).or_insert(next);
        class_of_xy.insert(key.clone(), class);
    }
    let class_count = class_of_law.len();

    let mut names = d.var_names().to_vec();
    names.push(fresh_name(d, "W"));
    let mut sizes = d.alphabet_sizes().to_vec();
    sizes.push(class_count as u32);
    let atoms = (0..d.num_atoms())
        .map(|i| {
            let atom = d.atom(i);
            let mut v = atom.to_vec();
            v.push(class_of_xy[&values(atom, xy)]);
            (v, d.weight(i))
        })
        .collect();
    let extended = JointDistribution::from_weighted_atoms(names, Some(sizes), atoms)?;

    let w = SubsetMask::singleton(n);
    let result = DoubleMarkovResult {
        w_index: n,
        class_count,
        w_function_of_x: extended.is_functional(w, x)?,
        w_function_of_y: extended.is_functional(w, y)?,
        z_markov_given_w: extended.is_cond_independent(z, xy, w)?,
        extended,
    };
    if !(result.w_function_of_x && result.w_function_of_y && result.z_markov_given_w) {
        return Err(Error::Verification(format!("double Markov witness failed its own checks:\n{result}")));
    }
    Ok(result)
}

/// Outcome of [`verify_ingleton_via_w`].
#[derive(Clone, Debug, PartialEq)]
pub struct IngletonReport {
    pub class_count: usize,
    /// `I(X;Y|W) - I(X;Y|W,Z)`.
    pub markov_gap: f64,
    /// `H(W) - [H(W|V) + H(W|Z) + I(Z;V) - I(Z;V|W) - H(W|Z,V)]`.
    pub chain_residual: f64,
    /// `□_{VZ,XY}`.
    pub box_value: f64,
    pub holds: bool,
}

impl fmt::Display for IngletonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "W classes: {}", self.class_count)?;
        writeln!(f, "I(X;Y|W) - I(X;Y|W,Z) = {}", real(self.markov_gap))?;
        writeln!(f, "chain identity residual = {}", real(self.chain_residual))?;
        writeln!(f, "box(VZ,XY) = {}", real(self.box_value))?;
        write!(f, "ingleton holds: {}", self.holds)
    }
}

/// Builds `W` from `(X,Y,Z)` and checks that `□_{VZ,XY} ≥ 0` follows.
pub fn verify_ingleton_via_w(
    d: &JointDistribution,
    v: SubsetMask,
    z: SubsetMask,
    x: SubsetMask,
    y: SubsetMask,
) -> Result<IngletonReport> {
    v.check(d.arity())?;
    require_disjoint(&[v, z, x, y])?;
    let dm = double_markov_witness(d, x, y, z)?;
    let e = &dm.extended;
    let n = e.arity();
    let w = dm.w_mask();
    let none = SubsetMask::EMPTY;
    let profile = entropy_profile(e);
    let ev = |expr: Result<InfoExpression>| -> Result<f64> { expr?.evaluate(&profile) };

    let markov_gap = ev(InfoExpression::mutual(n, x, y, w))? - ev(InfoExpression::mutual(n, x, y, w | z))?;
    if markov_gap.abs() > INGLETON_TOL {
        return Err(Error::Verification(format!(
            "I(X;Y|W) differs from I(X;Y|W,Z) by {}",
            real(markov_gap)
        )));
    }
    let rhs = ev(InfoExpression::entropy(n, w, v))? + ev(InfoExpression::entropy(n, w, z))?
        + ev(InfoExpression::mutual(n, z, v, none))?
        - ev(InfoExpression::mutual(n, z, v, w))?
        - ev(InfoExpression::entropy(n, w, z | v))?;
    let chain_residual = ev(InfoExpression::entropy(n, w, none))? - rhs;
    let box_value = ev(box_expr(n, v, z, x, y))?;
    Ok(IngletonReport {
        class_count: dm.class_count,
        markov_gap,
        chain_residual,
        box_value,
        holds: box_value >= -INGLETON_TOL && chain_residual.abs() <= INGLETON_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::rat;
    use crate::families::claim;
    use crate::subset::default_names;

    fn m(i: usize) -> SubsetMask {
        SubsetMask::singleton(i)
    }

    fn bits(n: usize, f: impl Fn(u32) -> Vec<u32>) -> JointDistribution {
        let atoms = (0..1u32 << n).map(f).collect();
        JointDistribution::uniform(default_names(3), None, atoms).unwrap()
    }

    #[test]
    fn identical_bits_give_two_classes() {
        let d = bits(1, |b| vec![b, b, b]);
        let r = double_markov_witness(&d, m(0), m(1), m(2)).unwrap();
        assert_eq!(r.class_count, 2);
        assert!(r.extended.is_functional(m(0), r.w_mask()).unwrap());
    }

    #[test]
    fn shared_bit_pattern() {
        // X = (U,V1), Y = (U,V2), Z = U
        let d = bits(3, |s| {
            let (u, v1, v2) = (s & 1, (s >> 1) & 1, (s >> 2) & 1);
            vec![2 * u + v1, 2 * u + v2, u]
        });
        let r = double_markov_witness(&d, m(0), m(1), m(2)).unwrap();
        assert_eq!(r.class_count, 2);
        let u = r.extended.marginal(m(2) | r.w_mask()).unwrap();
        assert_eq!(u.num_atoms(), 2);
    }

    #[test]
    fn independent_bits_give_constant_w() {
        let d = bits(3, |s| vec![s & 1, (s >> 1) & 1, (s >> 2) & 1]);
        assert_eq!(double_markov_witness(&d, m(0), m(1), m(2)).unwrap().class_count, 1);
    }

    #[test]
    fn precondition_names_the_constraint() {
        let d = bits(2, |s| vec![s & 1, (s >> 1) & 1, (s & 1) ^ ((s >> 1) & 1)]);
        let err = double_markov_witness(&d, m(0), m(1), m(2)).unwrap_err();
        assert_eq!(err, Error::Precondition("I(X;Z|Y) is not zero".into()));
    }

    #[test]
    fn ingleton_on_independent_quadruple() {
        let atoms = (0..16u32).map(|s| (0..4).map(|i| (s >> i) & 1).collect()).collect();
        let d = JointDistribution::uniform(default_names(4), None, atoms).unwrap();
        let r = verify_ingleton_via_w(&d, m(0), m(1), m(2), m(3)).unwrap();
        assert!(r.holds);
        assert!(r.box_value.abs() < 1e-12);
    }

    #[test]
    fn claim4_fails_precondition() {
        let d = claim(4, &rat(1, 8)).unwrap();
        // V=B, Z=A, X=C, Y=D
        let r = verify_ingleton_via_w(&d, m(1), m(0), m(2), m(3));
        assert!(matches!(r, Err(Error::Precondition(_))));
    }
}
