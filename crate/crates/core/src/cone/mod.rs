//! The Shannon cone: elemental inequalities, exact membership with Farkas
//! certificates, and conditional implication under linear constraints.

mod certificate;
mod nonshannon;
pub mod simplex;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::entropy::EntropyVector;
use crate::error::{Error, Result};
use crate::expr::InfoExpression;
use crate::subset::{default_names, SubsetMask};

pub use certificate::parse_certificate;
pub use nonshannon::{example3, known_nonshannon_registry, series, Series};
use simplex::{solve_feasibility, Feasibility};

/// Largest arity for which the Shannon cone is generated by default.
pub const MAX_LP_ARITY: usize = 6;

/// A polyhedral cone described by functionals asserted nonnegative on it.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeDescription {
    n: usize,
    generators: Vec<InfoExpression>,
    labels: Vec<String>,
}

impl ConeDescription {
    /// Builds a cone from labelled generators. Duplicate functionals
    /// collapse to their first occurrence.
    pub fn new(n: usize, generators: Vec<(String, InfoExpression)>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Precondition("a cone needs at least one generator".into()));
        }
        let mut gens = Vec::new();
        let mut labels = Vec::new();
        for (label, g) in generators {
            if g.arity() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: g.arity(),
                });
            }
            if !gens.contains(&g) {
                gens.push(g);
                labels.push(label);
            }
        }
        Ok(ConeDescription {
            n,
            generators: gens,
            labels,
        })
    }

    /// The Shannon cone of `n` variables, `1 ≤ n ≤ MAX_LP_ARITY`.
    pub fn shannon(n: usize) -> Result<Self> {
        Self::shannon_with_limit(n, MAX_LP_ARITY)
    }

    /// The Shannon cone with a caller-chosen arity cap.
    pub fn shannon_with_limit(n: usize, limit: usize) -> Result<Self> {
        if n == 0 || n > limit {
            return Err(Error::ArityOutOfRange(n));
        }
        Ok(ConeDescription {
            n,
            labels: elemental_labels(n),
            generators: elemental_unchecked(n),
        })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[InfoExpression] {
        &self.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// Nonnegative combination of cone generators, plus free multipliers on
/// constraint forms, that reproduces a target exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub n: usize,
    /// `(label, generator, κ)` with `κ > 0`.
    pub kappa: Vec<(String, InfoExpression, BigRational)>,
    /// `(constraint, λ)` with `λ ≠ 0`.
    pub lambda: Vec<(InfoExpression, BigRational)>,
    pub target: InfoExpression,
}

impl Certificate {
    /// Σκ·h + Σλ·f.
    pub fn reconstruct(&self) -> InfoExpression {
        let mut acc = InfoExpression::zero(self.n);
        for (_, g, k) in &self.kappa {
            acc = acc.checked_add(&g.scale(k)).expect("shared arity");
        }
        for (f, l) in &self.lambda {
            acc = acc.checked_add(&f.scale(l)).expect("shared arity");
        }
        acc
    }

    /// Exact soundness: κ ≥ 0 and the reconstruction equals the target.
    pub fn verify(&self) -> bool {
        self.kappa.iter().all(|(_, _, k)| !k.is_negative()) && self.reconstruct() == self.target
    }

    pub fn to_text(&self) -> String {
        certificate::to_text(self, &default_names(self.n))
    }

    pub fn to_text_with(&self, names: &[String]) -> String {
        certificate::to_text(self, names)
    }
}

/// A point on which every generator is nonnegative, every constraint is
/// zero and the target is strictly negative.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparatingPoint {
    pub n: usize,
    /// Rational coordinates indexed by `mask - 1`.
    pub coords: Vec<BigRational>,
    pub note: String,
}

impl SeparatingPoint {
    pub fn get(&self, s: SubsetMask) -> &BigRational {
        &self.coords[s.coord_index()]
    }

    /// Exact check against a cone, constraints and target.
    pub fn verify(&self, cone: &ConeDescription, constraints: &[InfoExpression], target: &InfoExpression) -> bool {
        let eval = |e: &InfoExpression| e.evaluate_exact(&self.coords);
        cone.generators()
            .iter()
            .all(|g| eval(g).is_ok_and(|v| !v.is_negative()))
            && constraints.iter().all(|f| eval(f).is_ok_and(|v| v.is_zero()))
            && eval(target).is_ok_and(|v| v.is_negative())
    }

    /// Scales to the smallest integer multiple, which keeps the sign
    /// pattern and makes printing readable.
    fn normalized(mut self) -> Self {
        use num_integer::Integer;
        let mut lcm = num_bigint::BigInt::from(1);
        let mut gcd = num_bigint::BigInt::from(0);
        for c in &self.coords {
            lcm = lcm.lcm(c.denom());
        }
        for c in &self.coords {
            gcd = gcd.gcd(&(c.numer() * (&lcm / c.denom())));
        }
        if !gcd.is_zero() {
            let k = BigRational::new(lcm, gcd);
            for c in self.coords.iter_mut() {
                *c = &*c * &k;
            }
        }
        self
    }

    pub fn to_text_with(&self, names: &[String]) -> String {
        let mut out = format!("separating point ({})\n", self.note);
        for m in SubsetMask::lexicographic(self.n) {
            out.push_str(&format!(
                "H({}) = {}\n",
                m.display_with(names),
                crate::distribution::format_rational(self.get(m))
            ));
        }
        out
    }
}

/// Outcome of a Shannon-type decision.
#[derive(Clone, Debug, PartialEq)]
pub enum ShannonResult {
    Certificate(Certificate),
    SeparatingPoint(SeparatingPoint),
}

impl ShannonResult {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            ShannonResult::Certificate(c) => Some(c),
            ShannonResult::SeparatingPoint(_) => None,
        }
    }

    pub fn separating_point(&self) -> Option<&SeparatingPoint> {
        match self {
            ShannonResult::SeparatingPoint(p) => Some(p),
            ShannonResult::Certificate(_) => None,
        }
    }
}

fn elemental_labels(n: usize) -> Vec<String> {
    let names = default_names(n);
    let full = SubsetMask::full(n);
    let mut out: Vec<String> = (0..n)
        .map(|i| {
            let rest = full.minus(SubsetMask::singleton(i));
            if rest.is_empty() {
                format!("H({})", names[i])
            } else {
                format!("H({}|{})", names[i], rest.display_with(&names))
            }
        })
        .collect();
    for (i, j, k) in elemental_triples(n) {
        if k.is_empty() {
            out.push(format!("I({};{})", names[i], names[j]));
        } else {
            out.push(format!("I({};{}|{})", names[i], names[j], k.display_with(&names)));
        }
    }
    out
}

fn elemental_triples(n: usize) -> Vec<(usize, usize, SubsetMask)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let rest = SubsetMask::full(n).minus(SubsetMask::singleton(i) | SubsetMask::singleton(j));
            // All subsets of `rest`, empty first, in increasing mask order.
            let mut ks: Vec<SubsetMask> = (0..=rest.bits())
                .map(SubsetMask::new)
                .filter(|k| k.is_subset_of(rest))
                .collect();
            ks.sort();
            for k in ks {
                out.push((i, j, k));
            }
        }
    }
    out
}

fn elemental_unchecked(n: usize) -> Vec<InfoExpression> {
    let full = SubsetMask::full(n);
    let mut out: Vec<InfoExpression> = (0..n)
        .map(|i| {
            InfoExpression::entropy(n, SubsetMask::singleton(i), full.minus(SubsetMask::singleton(i)))
                .expect("valid masks")
        })
        .collect();
    for (i, j, k) in elemental_triples(n) {
        out.push(
            InfoExpression::mutual(n, SubsetMask::singleton(i), SubsetMask::singleton(j), k).expect("valid masks"),
        );
    }
    out
}

/// The `n + C(n,2)·2^(n-2)` elemental Shannon inequalities, `1 ≤ n ≤ 6`.
pub fn elemental_inequalities(n: usize) -> Result<Vec<InfoExpression>> {
    Ok(ConeDescription::shannon(n)?.generators)
}

/// Decides whether `target ≥ 0` is a Shannon-type inequality.
pub fn is_shannon_type(target: &InfoExpression) -> Result<ShannonResult> {
    let cone = ConeDescription::shannon(target.arity())?;
    Ok(match conditional_implied_by(&cone, &[], target)? {
        Implication::Implied(c) => ShannonResult::Certificate(c),
        Implication::NotImplied(p) => ShannonResult::SeparatingPoint(p),
    })
}

/// Outcome of a conditional implication query.
#[derive(Clone, Debug, PartialEq)]
pub enum Implication {
    Implied(Certificate),
    /// No multipliers exist; the point certifies it.
    NotImplied(SeparatingPoint),
}

impl Implication {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Implication::Implied(c) => Some(c),
            Implication::NotImplied(_) => None,
        }
    }
}

/// Decides whether `target = Σκ_j h_j + Σλ_i f_i` with `κ ≥ 0` and free `λ`.
pub fn conditional_implied_by(
    cone: &ConeDescription,
    constraints: &[InfoExpression],
    target: &InfoExpression,
) -> Result<Implication> {
    let n = cone.arity();
    for e in constraints.iter().chain(std::iter::once(target)) {
        if e.arity() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: e.arity(),
            });
        }
    }
    let gens = cone.generators();
    // Columns: generators, then each constraint twice with opposite signs.
    let mut columns: Vec<&InfoExpression> = gens.iter().collect();
    let negated: Vec<InfoExpression> = constraints
        .iter()
        .map(|f| f.scale(&-BigRational::from_integer(1.into())))
        .collect();
    for (f, g) in constraints.iter().zip(&negated) {
        columns.push(f);
        columns.push(g);
    }
    let coords: Vec<SubsetMask> = SubsetMask::all_nonempty(n).collect();
    let a: Vec<Vec<BigRational>> = coords
        .iter()
        .map(|&m| columns.iter().map(|c| c.coeff(m)).collect())
        .collect();
    let b: Vec<BigRational> = coords.iter().map(|&m| target.coeff(m)).collect();

    match solve_feasibility(&a, &b) {
        Feasibility::Feasible(x) => {
            let g = gens.len();
            let kappa = (0..g)
                .filter(|&j| !x[j].is_zero())
                .map(|j| (cone.labels()[j].clone(), gens[j].clone(), x[j].clone()))
                .collect();
            let lambda = constraints
                .iter()
                .enumerate()
                .filter_map(|(i, f)| {
                    let l = &x[g + 2 * i] - &x[g + 2 * i + 1];
                    (!l.is_zero()).then(|| (f.clone(), l))
                })
                .collect();
            let cert = Certificate {
                n,
                kappa,
                lambda,
                target: target.clone(),
            };
            if !cert.verify() {
                return Err(Error::Verification("certificate does not reconstruct the target".into()));
            }
            Ok(Implication::Implied(cert))
        }
        Feasibility::Infeasible(y) => {
            let point = SeparatingPoint {
                n,
                coords: y,
                note: "Farkas dual of the membership LP".into(),
            }
            .normalized();
            if !point.verify(cone, constraints, target) {
                return Err(Error::Verification("separating point fails exact checks".into()));
            }
            Ok(Implication::NotImplied(point))
        }
    }
}

/// Result of a polymatroid test.
#[derive(Clone, Debug, PartialEq)]
pub struct PolymatroidReport {
    pub holds: bool,
    pub worst_slack: f64,
    /// Label of the elemental inequality attaining the worst slack.
    pub worst: String,
}

/// Tolerance used by [`is_polymatroid`].
pub const POLYMATROID_TOL: f64 = 1e-9;

/// Checks every elemental inequality on `v` with tolerance 1e-9.
pub fn is_polymatroid(v: &EntropyVector) -> Result<PolymatroidReport> {
    let n = v.arity();
    if n == 0 || n > MAX_LP_ARITY {
        return Err(Error::ArityOutOfRange(n));
    }
    let labels = elemental_labels(n);
    let mut worst = (f64::INFINITY, String::new());
    for (g, label) in elemental_unchecked(n).iter().zip(labels) {
        let s = g.evaluate(v)?;
        if s < worst.0 {
            worst = (s, label);
        }
    }
    Ok(PolymatroidReport {
        holds: worst.0 >= -POLYMATROID_TOL,
        worst_slack: worst.0,
        worst: worst.1,
    })
}
