//! Limit points of the hashing constructions applied to the geometric
//! family, with worst-case accounting of the perturbed coordinates.

use std::fmt;
use std::str::FromStr;

use crate::cone::{elemental_inequalities, is_polymatroid, PolymatroidReport};
use crate::entropy::EntropyVector;
use crate::error::{Error, Result};
use crate::expr::{rational_to_f64, InfoExpression};
use crate::families::{geometric_closed_profile, is_prime};
use crate::format::real;
use crate::subset::SubsetMask;

/// Which conditional inequality the limit point is built against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AepTarget {
    /// `A` is replaced by a hash of `A^m` given `B^m`.
    I1,
    /// Everything is relativized to a hash of `C^m` given `(A^m, B^m)`.
    I3,
}

impl fmt::Display for AepTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AepTarget::I1 => "I1",
            AepTarget::I3 => "I3",
        })
    }
}

impl FromStr for AepTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I1" | "i1" => Ok(AepTarget::I1),
            "I3" | "i3" => Ok(AepTarget::I3),
            other => Err(Error::UnknownInequality(other.to_string())),
        }
    }
}

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;

fn has(s: SubsetMask, i: usize) -> bool {
    s.contains(i)
}

/// Coordinate bounds `[lower, upper]` of the normalized limit profile.
#[derive(Clone, Debug, PartialEq)]
pub struct AePoint {
    pub target: AepTarget,
    pub q: u64,
    pub base: EntropyVector,
    /// Largest downward move of any coordinate, in bits.
    pub delta: f64,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub midpoint: EntropyVector,
    pub polymatroid: PolymatroidReport,
}

impl AePoint {
    pub fn bounds(&self, s: SubsetMask) -> (f64, f64) {
        (self.lower[s.coord_index()], self.upper[s.coord_index()])
    }

    pub fn is_exact(&self, s: SubsetMask) -> bool {
        let (lo, hi) = self.bounds(s);
        lo == hi
    }

    /// Lower and upper bound of a linear expression over the box.
    pub fn expr_bounds(&self, e: &InfoExpression) -> (f64, f64) {
        let (mut lo, mut hi) = (0.0, 0.0);
        for (s, c) in e.terms() {
            let c = rational_to_f64(c);
            let (l, u) = self.bounds(s);
            if c >= 0.0 {
                lo += c * l;
                hi += c * u;
            } else {
                lo += c * u;
                hi += c * l;
            }
        }
        (lo, hi)
    }

    /// Lines `subset  lower  upper` in lexicographic subset order.
    pub fn to_text(&self) -> String {
        let names = self.names();
        let mut out = format!("limit point for {} at q={} (delta = {})\n", self.target, self.q, real(self.delta));
        for s in SubsetMask::lexicographic(4) {
            let (lo, hi) = self.bounds(s);
            let label = format!("H({})", s.display_with(&names));
            if lo == hi {
                out += &format!("{label} = {}\n", real(lo));
            } else {
                out += &format!("{label} in [{}, {}]\n", real(lo), real(hi));
            }
        }
        out += &format!(
            "midpoint polymatroid: {} (worst slack {})\n",
            self.polymatroid.holds,
            real(self.polymatroid.worst_slack)
        );
        out
    }

    fn names(&self) -> Vec<String> {
        let first = match self.target {
            AepTarget::I1 => "A'",
            AepTarget::I3 => "A",
        };
        [first, "B", "C", "D"].iter().map(|s| s.to_string()).collect()
    }
}

fn check_q(q: u64) -> Result<()> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if q < 3 {
        return Err(Error::OutOfDomain {
            family: "geometric".into(),
            param: q.to_string(),
        });
    }
    Ok(())
}

/// Bounds on the limit profile for `target` built from the geometric
/// family at `q`.
///
/// For I1 the coordinates without `A'` are unchanged, those containing both
/// `A'` and `B` are unchanged (A^m is recoverable from `A'` and `B^m`),
/// `H(A') = H(A|B)` and `H(A',C) = H(A,C)` (from `I(A';B|C) = 0`); the
/// rest lie in `[h - I(A;B), h]`. For I3 every coordinate drops by at most
/// `H(C|A,B)`: exactly that much when it contains `C`, and down to
/// `h(S ∪ C) - H(C|A,B)` when it contains both `A` and `B`.
///
/// The box is then narrowed by propagating bounds through the elemental
/// inequalities, which the limit point satisfies.
pub fn aep_point(target: AepTarget, q: u64) -> Result<AePoint> {
    check_q(q)?;
    let base = geometric_closed_profile(q)?;
    let mut table = [0.0f64; 15];
    table.copy_from_slice(base.coords());
    let h = move |s: SubsetMask| table[s.coord_index()];
    let ab = SubsetMask::from_indices([A, B]);
    let (delta, exact): (f64, Box<dyn Fn(SubsetMask) -> Option<f64>>) = match target {
        AepTarget::I1 => {
            let delta = h(SubsetMask::singleton(A)) + h(SubsetMask::singleton(B)) - h(ab);
            let ac = SubsetMask::from_indices([A, C]);
            (
                delta,
                Box::new(move |s: SubsetMask| {
                    if !has(s, A) || has(s, B) || s == ac {
                        Some(h(s))
                    } else if s == SubsetMask::singleton(A) {
                        Some(h(s) - delta)
                    } else {
                        None
                    }
                }),
            )
        }
        AepTarget::I3 => {
            let delta = h(ab | SubsetMask::singleton(C)) - h(ab);
            (
                delta,
                Box::new(move |s: SubsetMask| {
                    if has(s, C) {
                        Some(h(s) - delta)
                    } else if ab.is_subset_of(s) {
                        Some(h(s | SubsetMask::singleton(C)) - delta)
                    } else {
                        None
                    }
                }),
            )
        }
    };
    let size = 15;
    let mut lower = vec![0.0; size];
    let mut upper = vec![0.0; size];
    for s in SubsetMask::all_nonempty(4) {
        let i = s.coord_index();
        match exact(s) {
            Some(v) => {
                lower[i] = v;
                upper[i] = v;
            }
            None => {
                lower[i] = h(s) - delta;
                upper[i] = h(s);
            }
        }
    }
    tighten(&mut lower, &mut upper)?;
    let midpoint = EntropyVector::new(4, lower.iter().zip(&upper).map(|(l, u)| 0.5 * (l + u)).collect())?;
    let polymatroid = is_polymatroid(&midpoint)?;
    Ok(AePoint {
        target,
        q,
        base,
        delta,
        lower,
        upper,
        midpoint,
        polymatroid,
    })
}

/// Interval propagation through `Σ c_S h(S) ≥ 0` for every elemental form,
/// repeated until nothing moves.
fn tighten(lower: &mut [f64], upper: &mut [f64]) -> Result<()> {
    let forms: Vec<Vec<(usize, f64)>> = elemental_inequalities(4)?
        .iter()
        .map(|e| e.terms().map(|(s, c)| (s.coord_index(), rational_to_f64(c))).collect())
        .collect();
    for _ in 0..64 {
        let mut moved = false;
        for form in &forms {
            for (k, &(i, ci)) in form.iter().enumerate() {
                // Largest value of the other terms.
                let rest: f64 = form
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, &(t, ct))| if ct > 0.0 { ct * upper[t] } else { ct * lower[t] })
                    .sum();
                let bound = -rest / ci;
                if ci > 0.0 && bound > lower[i] + 1e-12 {
                    lower[i] = bound;
                    moved = true;
                } else if ci < 0.0 && bound < upper[i] - 1e-12 {
                    upper[i] = bound;
                    moved = true;
                }
            }
        }
        if !moved {
            break;
        }
    }
    for i in 0..lower.len() {
        if lower[i] > upper[i] + 1e-9 {
            return Err(Error::Verification(format!("empty interval for coordinate {i}")));
        }
        if lower[i] > upper[i] {
            upper[i] = lower[i];
        }
    }
    Ok(())
}

/// One term of the accounting.
#[derive(Clone, Debug, PartialEq)]
pub struct AccountedTerm {
    pub label: String,
    /// Value on the geometric profile.
    pub base: f64,
    pub lower: f64,
    pub upper: f64,
    /// Driven to zero in the limit by the construction.
    pub vanishing: bool,
}

/// Certificate that the limit point violates `target`.
#[derive(Clone, Debug, PartialEq)]
pub struct AePointCertificate {
    pub target: AepTarget,
    pub q: u64,
    pub point: AePoint,
    pub delta_label: String,
    /// `I(C;D)`.
    pub lhs: AccountedTerm,
    pub rhs: Vec<AccountedTerm>,
    pub lhs_lower: f64,
    pub rhs_upper: f64,
    /// Number of `Δ` units by which the bounds may move the inequality.
    pub c: u32,
    pub margin: f64,
}

impl AePointCertificate {
    pub fn violated(&self) -> bool {
        self.margin > 0.0
    }

    /// `lhs_lower / rhs_upper`.
    pub fn ratio(&self) -> f64 {
        self.lhs_lower / self.rhs_upper
    }

    pub fn verdict_line(&self) -> String {
        let tag = if self.violated() { "AEP-VIOLATION" } else { "AEP-INCONCLUSIVE" };
        format!("{tag} {} q={} margin={}", self.target, self.q, real(self.margin))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("AEPointCertificate\n");
        out += &format!("target: {}\n", self.target);
        out += &format!("q: {}\n", self.q);
        out += &format!("delta = {} = {}\n", self.delta_label, real(self.point.delta));
        let term = |t: &AccountedTerm| {
            format!(
                "{} = {} (limit in [{}, {}]{})\n",
                t.label,
                real(t.base),
                real(t.lower),
                real(t.upper),
                if t.vanishing { ", vanishes" } else { "" }
            )
        };
        out += "lhs:\n  ";
        out += &term(&self.lhs);
        out += "rhs:\n";
        for t in &self.rhs {
            out += "  ";
            out += &term(t);
        }
        let c_name = match self.target {
            AepTarget::I1 => "c1",
            AepTarget::I3 => "c2",
        };
        out += &format!("constant {c_name} = {} (delta units from interval accounting)\n", self.c);
        out += &format!("lhs lower bound: {}\n", real(self.lhs_lower));
        out += &format!("rhs upper bound: {}\n", real(self.rhs_upper));
        out += &format!("margin: {}\n", real(self.margin));
        out += &format!("verdict: {}\n", if self.violated() { "violated" } else { "inconclusive" });
        out += &self.verdict_line();
        out.push('\n');
        out
    }
}

impl fmt::Display for AePointCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_text().trim_end())
    }
}

/// Worst-case margin `I(C;D) - [I(C;D|A) + I(C;D|B) + I(A;B)]` over the
/// bounds of [`aep_point`]. Positive means the limit point violates the
/// inequality.
pub fn aep_margin(target: AepTarget, q: u64) -> Result<AePointCertificate> {
    let point = aep_point(target, q)?;
    let expr = |t: &str| InfoExpression::parse_default(t, 4);
    let account = |label: &str, vanishing: bool| -> Result<AccountedTerm> {
        let e = expr(label)?;
        let (lower, upper) = point.expr_bounds(&e);
        Ok(AccountedTerm {
            label: label.to_string(),
            base: e.evaluate(&point.base)?,
            lower,
            upper,
            vanishing,
        })
    };
    let lhs = account("I(C;D)", false)?;
    let rhs = vec![
        account("I(C;D|A)", false)?,
        account("I(C;D|B)", false)?,
        account("I(A;B)", target == AepTarget::I1)?,
    ];
    let lhs_lower = lhs.lower;
    let rhs_upper: f64 = rhs.iter().map(|t| t.upper).sum();
    let margin = lhs_lower - rhs_upper;
    // Δ units relative to the unperturbed terms that survive in the limit.
    let base_gap = lhs.base - rhs.iter().filter(|t| !t.vanishing).map(|t| t.base).sum::<f64>();
    let units = (base_gap - margin) / point.delta;
    let c = units.round();
    if (units - c).abs() > 1e-6 || c < 0.0 {
        return Err(Error::Verification(format!("accounting is not a whole number of deltas: {units}")));
    }
    let delta_label = match target {
        AepTarget::I1 => "I(A;B)",
        AepTarget::I3 => "H(C|A,B)",
    };
    Ok(AePointCertificate {
        target,
        q,
        point,
        delta_label: delta_label.into(),
        lhs,
        rhs,
        lhs_lower,
        rhs_upper,
        c: c as u32,
        margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::primes_between;

    #[test]
    fn constants_and_small_q() {
        let c1 = aep_margin(AepTarget::I1, 3).unwrap();
        assert_eq!(c1.c, 2);
        assert!(c1.margin < 0.0);
        assert!(!c1.violated());
        let c2 = aep_margin(AepTarget::I3, 3).unwrap();
        assert_eq!(c2.c, 3);
    }

    #[test]
    fn i1_margin_matches_closed_form() {
        for q in [7u64, 31, 101] {
            let cert = aep_margin(AepTarget::I1, q).unwrap();
            let (qf, l) = (q as f64, (q as f64).log2());
            let expected = (qf - 1.0) / qf - 2.0 * l / qf;
            assert!((cert.margin - expected).abs() < 1e-12, "q={q}");
        }
        let cert = aep_margin(AepTarget::I1, 31).unwrap();
        assert!(cert.violated());
        assert!(cert.to_text().ends_with(&format!("AEP-VIOLATION I1 q=31 margin={}\n", real(cert.margin))));
    }

    #[test]
    fn i3_margin_matches_closed_form() {
        for q in [5u64, 29, 101] {
            let cert = aep_margin(AepTarget::I3, q).unwrap();
            let (qf, l) = (q as f64, (q as f64).log2());
            let expected = (qf - 1.0) / qf - l / qf - 3.0 * l / qf;
            assert!((cert.margin - expected).abs() < 1e-12, "q={q}");
        }
    }

    #[test]
    fn ratio_increases() {
        for t in [AepTarget::I1, AepTarget::I3] {
            let r: Vec<f64> = [31u64, 101, 1009].iter().map(|&q| aep_margin(t, q).unwrap().ratio()).collect();
            assert!(r[0] < r[1] && r[1] < r[2], "{t}: {r:?}");
        }
    }

    #[test]
    fn margin_monotone_over_primes() {
        for t in [AepTarget::I1, AepTarget::I3] {
            let m: Vec<f64> = primes_between(7, 2000).map(|q| aep_margin(t, q).unwrap().margin).collect();
            assert!(m.windows(2).all(|w| w[1] > w[0]), "{t}");
        }
    }

    #[test]
    fn point_coordinates_and_midpoint() {
        let p = aep_point(AepTarget::I1, 5).unwrap();
        let h = |s: u32| p.base.get(SubsetMask::new(s));
        assert_eq!(p.bounds(SubsetMask::new(0b0001)).0, h(0b0011) - h(0b0010));
        assert!(p.is_exact(SubsetMask::new(0b0011)));
        assert_eq!(p.bounds(SubsetMask::new(0b0011)).0, h(0b0011));
        for s in SubsetMask::all_nonempty(4).filter(|s| !s.contains(0)) {
            assert_eq!(p.bounds(s), (h(s.bits()), h(s.bits())));
        }
        for q in [5u64, 7, 11, 13] {
            for t in [AepTarget::I1, AepTarget::I3] {
                let p = aep_point(t, q).unwrap();
                assert!(p.polymatroid.worst_slack >= -1e-9, "{t} q={q}");
            }
        }
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(aep_margin(AepTarget::I1, 9).unwrap_err(), Error::NotPrime(9));
    }
}
