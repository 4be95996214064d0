//! Finite joint distributions with exact rational probabilities.
//!
//! Probabilities are stored as integer weights over one common denominator,
//! so every structural test (independence, functional dependence) is an
//! integer identity.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::subset::{require_disjoint, SubsetMask, MAX_ARITY};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Weights {
    /// Every atom has weight 1; the denominator is the atom count.
    Uniform,
    Small(Vec<u64>),
    Big(Vec<BigUint>),
}

/// Per-group sums of atom weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum WeightVec {
    Small(Vec<u64>),
    Big(Vec<BigUint>),
}

impl WeightVec {
    pub(crate) fn to_big(&self) -> Vec<BigUint> {
        match self {
            WeightVec::Small(v) => v.iter().map(|&w| BigUint::from(w)).collect(),
            WeightVec::Big(v) => v.clone(),
        }
    }
}

/// Assignment of atoms to the distinct values of a projection.
pub(crate) struct Grouping {
    /// Group id of each atom.
    pub ids: Vec<u32>,
    pub count: usize,
}

/// A finite joint distribution over named discrete variables.
///
/// Atoms are kept sorted by value tuple; zero-probability atoms are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointDistribution {
    var_names: Vec<String>,
    alphabet_sizes: Vec<u32>,
    /// Row-major value tuples, `n` entries per atom.
    values: Vec<u32>,
    weights: Weights,
    denominator: BigUint,
}

impl JointDistribution {
    /// Builds a distribution from explicit atoms with rational probabilities.
    ///
    /// `alphabet_sizes` defaults to one more than the largest value seen.
    /// Duplicate tuples, nonpositive masses and totals other than one are
    /// rejected.
    pub fn new(
        var_names: Vec<String>,
        alphabet_sizes: Option<Vec<u32>>,
        atoms: Vec<(Vec<u32>, BigRational)>,
    ) -> Result<Self> {
        let n = var_names.len();
        check_names(&var_names)?;
        let mut total = BigRational::zero();
        let mut lcm = BigUint::one();
        for (tuple, p) in &atoms {
            if tuple.len() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: tuple.len(),
                });
            }
            if p <= &BigRational::zero() {
                return Err(Error::InvalidDistribution(format!(
                    "atom {tuple:?} has nonpositive probability {p}"
                )));
            }
            total += p;
            lcm = lcm.lcm(p.denom().magnitude());
        }
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        let weighted: Vec<(Vec<u32>, BigUint)> = atoms
            .into_iter()
            .map(|(t, p)| {
                let w = p.numer().magnitude() * (&lcm / p.denom().magnitude());
                (t, w)
            })
            .collect();
        let mut sorted = weighted;
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        if sorted.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidDistribution("duplicate atom".into()));
        }
        Self::assemble(var_names, alphabet_sizes, sorted)
    }

    /// Builds a distribution proportional to the given nonnegative integer
    /// weights. Repeated tuples are merged and zero weights dropped, which
    /// makes this the natural target for pushforwards.
    pub fn from_weighted_atoms(
        var_names: Vec<String>,
        alphabet_sizes: Option<Vec<u32>>,
        atoms: Vec<(Vec<u32>, BigUint)>,
    ) -> Result<Self> {
        let n = var_names.len();
        check_names(&var_names)?;
        let mut merged: Vec<(Vec<u32>, BigUint)> = Vec::with_capacity(atoms.len());
        let mut sorted = atoms;
        for (t, _) in &sorted {
            if t.len() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: t.len(),
                });
            }
        }
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        for (t, w) in sorted {
            if w.is_zero() {
                continue;
            }
            match merged.last_mut() {
                Some(last) if last.0 == t => last.1 += w,
                _ => merged.push((t, w)),
            }
        }
        if merged.is_empty() {
            return Err(Error::InvalidDistribution("no atom with positive weight".into()));
        }
        Self::assemble(var_names, alphabet_sizes, merged)
    }

    /// Uniform distribution over distinct value tuples.
    pub fn uniform(
        var_names: Vec<String>,
        alphabet_sizes: Option<Vec<u32>>,
        mut tuples: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let n = var_names.len();
        check_names(&var_names)?;
        if tuples.is_empty() {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        if let Some(t) = tuples.iter().find(|t| t.len() != n) {
            return Err(Error::ArityMismatch {
                expected: n,
                found: t.len(),
            });
        }
        tuples.sort_unstable();
        if tuples.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidDistribution("duplicate atom".into()));
        }
        let count = tuples.len();
        let mut values = Vec::with_capacity(count * n);
        for t in &tuples {
            values.extend_from_slice(t);
        }
        let sizes = resolve_sizes(n, alphabet_sizes, &values)?;
        Ok(JointDistribution {
            var_names,
            alphabet_sizes: sizes,
            values,
            weights: Weights::Uniform,
            denominator: BigUint::from(count),
        })
    }

    /// Uniform distribution over distinct tuples given row-major in `values`
    /// with explicit alphabet sizes. Avoids per-atom allocations, which
    /// matters for enumerations with millions of atoms.
    pub fn uniform_flat(var_names: Vec<String>, alphabet_sizes: Vec<u32>, values: Vec<u32>) -> Result<Self> {
        let n = var_names.len();
        check_names(&var_names)?;
        if values.is_empty() || values.len() % n != 0 {
            return Err(Error::InvalidDistribution("value array does not split into tuples".into()));
        }
        let sizes = resolve_sizes(n, Some(alphabet_sizes), &values)?;
        let radix = sizes.iter().try_fold(1u64, |acc, &s| acc.checked_mul(s as u64));
        let values = match radix {
            Some(_) => {
                // Mixed radix with the first variable most significant gives
                // lexicographic order on keys.
                let mut keys: Vec<u64> = values
                    .chunks(n)
                    .map(|t| t.iter().zip(&sizes).fold(0u64, |k, (&v, &s)| k * s as u64 + v as u64))
                    .collect();
                drop(values);
                keys.sort_unstable();
                if keys.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::InvalidDistribution("duplicate atom".into()));
                }
                let mut out = vec![0u32; keys.len() * n];
                for (chunk, mut k) in out.chunks_mut(n).zip(keys) {
                    for j in (0..n).rev() {
                        chunk[j] = (k % sizes[j] as u64) as u32;
                        k /= sizes[j] as u64;
                    }
                }
                out
            }
            None => {
                let tuples: Vec<Vec<u32>> = values.chunks(n).map(<[u32]>::to_vec).collect();
                return Self::uniform(var_names, Some(sizes), tuples);
            }
        };
        let count = values.len() / n;
        Ok(JointDistribution {
            var_names,
            alphabet_sizes: sizes,
            values,
            weights: Weights::Uniform,
            denominator: BigUint::from(count),
        })
    }

    /// Takes atoms already sorted, deduplicated and positive.
    fn assemble(
        var_names: Vec<String>,
        alphabet_sizes: Option<Vec<u32>>,
        atoms: Vec<(Vec<u32>, BigUint)>,
    ) -> Result<Self> {
        let n = var_names.len();
        // Reduce the weights by their gcd so the denominator is minimal.
        let g = atoms
            .iter()
            .fold(BigUint::zero(), |g, (_, w)| g.gcd(w));
        let mut values = Vec::with_capacity(atoms.len() * n);
        let mut ws = Vec::with_capacity(atoms.len());
        for (t, w) in atoms {
            values.extend_from_slice(&t);
            ws.push(w / &g);
        }
        let denominator: BigUint = ws.iter().sum();
        let sizes = resolve_sizes(n, alphabet_sizes, &values)?;
        let weights = if ws.iter().all(|w| w.is_one()) {
            Weights::Uniform
        } else if denominator.bits() <= 64 {
            Weights::Small(ws.iter().map(|w| w.to_u64().unwrap()).collect())
        } else {
            Weights::Big(ws)
        };
        Ok(JointDistribution {
            var_names,
            alphabet_sizes: sizes,
            values,
            weights,
            denominator,
        })
    }

    pub fn arity(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn alphabet_sizes(&self) -> &[u32] {
        &self.alphabet_sizes
    }

    pub fn num_atoms(&self) -> usize {
        if self.arity() == 0 {
            return 0;
        }
        self.values.len() / self.arity()
    }

    pub fn atom(&self, i: usize) -> &[u32] {
        let n = self.arity();
        &self.values[i * n..(i + 1) * n]
    }

    /// Common denominator of all probabilities.
    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    /// Integer weight of atom `i` over [`denominator`](Self::denominator).
    pub fn weight(&self, i: usize) -> BigUint {
        match &self.weights {
            Weights::Uniform => BigUint::one(),
            Weights::Small(v) => BigUint::from(v[i]),
            Weights::Big(v) => v[i].clone(),
        }
    }

    pub fn probability(&self, i: usize) -> BigRational {
        BigRational::new(self.weight(i).into(), self.denominator.clone().into())
    }

    /// Iterates over `(tuple, probability)` in sorted tuple order.
    pub fn atoms(&self) -> impl Iterator<Item = (&[u32], BigRational)> + '_ {
        (0..self.num_atoms()).map(move |i| (self.atom(i), self.probability(i)))
    }

    pub fn is_uniform(&self) -> bool {
        self.weights == Weights::Uniform
    }

    /// Index of a variable by name.
    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.var_names
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Mask of a list of variable names.
    pub fn mask_of(&self, names: &[&str]) -> Result<SubsetMask> {
        names.iter().try_fold(SubsetMask::EMPTY, |m, v| {
            Ok(m | SubsetMask::singleton(self.var_index(v)?))
        })
    }

    /// Exact marginal onto the variables of `s`, in index order.
    pub fn marginal(&self, s: SubsetMask) -> Result<JointDistribution> {
        s.check(self.arity())?;
        self.select(&s.indices().collect::<Vec<_>>(), None)
    }

    /// Distribution of the variables at `indices`, in that order. Indices may
    /// repeat, which duplicates a variable. Names default to the originals.
    pub fn select(&self, indices: &[usize], names: Option<Vec<String>>) -> Result<JointDistribution> {
        let n = self.arity();
        if indices.is_empty() {
            return Err(Error::EmptyMask);
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::MaskOutOfRange {
                mask: 1u32.checked_shl(bad as u32).unwrap_or(0),
                arity: n,
            });
        }
        let names = match names {
            Some(v) => {
                if v.len() != indices.len() {
                    return Err(Error::ArityMismatch {
                        expected: indices.len(),
                        found: v.len(),
                    });
                }
                v
            }
            None => {
                let mut v: Vec<String> = indices.iter().map(|&i| self.var_names[i].clone()).collect();
                dedupe_names(&mut v);
                v
            }
        };
        let sizes: Vec<u32> = indices.iter().map(|&i| self.alphabet_sizes[i]).collect();
        let atoms = (0..self.num_atoms())
            .map(|a| {
                let t = self.atom(a);
                (indices.iter().map(|&i| t[i]).collect(), self.weight(a))
            })
            .collect();
        JointDistribution::from_weighted_atoms(names, Some(sizes), atoms)
    }

    /// Appends a copy of variable `index` under `name`.
    pub fn with_duplicate(&self, index: usize, name: &str) -> Result<JointDistribution> {
        let mut idx: Vec<usize> = (0..self.arity()).collect();
        idx.push(index);
        let mut names = self.var_names.clone();
        names.push(name.to_string());
        self.select(&idx, Some(names))
    }

    /// Groups atoms by their projection onto `s`. The empty mask yields a
    /// single group.
    pub(crate) fn group(&self, s: SubsetMask) -> Grouping {
        let idx: Vec<usize> = s.indices().collect();
        let atoms = self.num_atoms();
        if idx.is_empty() {
            return Grouping {
                ids: vec![0; atoms],
                count: 1,
            };
        }
        let mut strides = Vec::with_capacity(idx.len());
        let mut radix: Option<u128> = Some(1);
        for &i in &idx {
            strides.push(radix.unwrap_or(0));
            radix = radix.and_then(|r| r.checked_mul(self.alphabet_sizes[i] as u128));
        }
        let mut ids = Vec::with_capacity(atoms);
        if radix.is_some() {
            let mut map: HashMap<u128, u32> = HashMap::with_capacity(atoms.min(1 << 20));
            for a in 0..atoms {
                let t = self.atom(a);
                let key: u128 = idx
                    .iter()
                    .zip(&strides)
                    .map(|(&i, &s)| t[i] as u128 * s)
                    .sum();
                let next = map.len() as u32;
                ids.push(*map.entry(key).or_insert(next));
            }
            let count = map.len();
            Grouping { ids, count }
        } else {
            let mut map: HashMap<Vec<u32>, u32> = HashMap::new();
            for a in 0..atoms {
                let t = self.atom(a);
                let key: Vec<u32> = idx.iter().map(|&i| t[i]).collect();
                let next = map.len() as u32;
                ids.push(*map.entry(key).or_insert(next));
            }
            let count = map.len();
            Grouping { ids, count }
        }
    }

    /// Sums atom weights per group.
    pub(crate) fn group_weights(&self, g: &Grouping) -> WeightVec {
        match &self.weights {
            Weights::Uniform => {
                let mut v = vec![0u64; g.count];
                for &id in &g.ids {
                    v[id as usize] += 1;
                }
                WeightVec::Small(v)
            }
            Weights::Small(w) => {
                let mut v = vec![0u64; g.count];
                for (&id, &x) in g.ids.iter().zip(w) {
                    v[id as usize] += x;
                }
                WeightVec::Small(v)
            }
            Weights::Big(w) => {
                let mut v = vec![BigUint::zero(); g.count];
                for (&id, x) in g.ids.iter().zip(w) {
                    v[id as usize] += x;
                }
                WeightVec::Big(v)
            }
        }
    }

    /// Integer weights of the marginal onto `s` (in unspecified order).
    pub(crate) fn marginal_weights(&self, s: SubsetMask) -> WeightVec {
        let g = self.group(s);
        self.group_weights(&g)
    }

    /// Decides `I(a;b|c) = 0` exactly.
    ///
    /// Holds iff `p(abc) p(c) = p(ac) p(bc)` for every value combination,
    /// including combinations absent from the support.
    pub fn is_cond_independent(&self, a: SubsetMask, b: SubsetMask, c: SubsetMask) -> Result<bool> {
        let n = self.arity();
        a.check(n)?;
        b.check(n)?;
        c.check_within(n)?;
        require_disjoint(&[a, b, c])?;
        let g_abc = self.group(a | b | c);
        let g_ac = self.group(a | c);
        let g_bc = self.group(b | c);
        let g_c = self.group(c);

        // Every (ac, bc) pair within a c-class must occur in the support.
        let mut rep = vec![usize::MAX; g_abc.count];
        for (atom, &id) in g_abc.ids.iter().enumerate() {
            if rep[id as usize] == usize::MAX {
                rep[id as usize] = atom;
            }
        }
        let mut abc_per_c = vec![0u64; g_c.count];
        for &r in &rep {
            abc_per_c[g_c.ids[r] as usize] += 1;
        }
        let mut ac_per_c = vec![0u64; g_c.count];
        let mut seen_ac = vec![false; g_ac.count];
        let mut bc_per_c = vec![0u64; g_c.count];
        let mut seen_bc = vec![false; g_bc.count];
        for atom in 0..self.num_atoms() {
            let cid = g_c.ids[atom] as usize;
            let ac = g_ac.ids[atom] as usize;
            if !seen_ac[ac] {
                seen_ac[ac] = true;
                ac_per_c[cid] += 1;
            }
            let bc = g_bc.ids[atom] as usize;
            if !seen_bc[bc] {
                seen_bc[bc] = true;
                bc_per_c[cid] += 1;
            }
        }
        if (0..g_c.count).any(|k| abc_per_c[k] != ac_per_c[k] * bc_per_c[k]) {
            return Ok(false);
        }

        let w_abc = self.group_weights(&g_abc);
        let w_ac = self.group_weights(&g_ac);
        let w_bc = self.group_weights(&g_bc);
        let w_c = self.group_weights(&g_c);
        let ok = match (&w_abc, &w_ac, &w_bc, &w_c) {
            (WeightVec::Small(abc), WeightVec::Small(ac), WeightVec::Small(bc), WeightVec::Small(cc)) => {
                rep.iter().enumerate().all(|(id, &r)| {
                    let lhs = abc[id] as u128 * cc[g_c.ids[r] as usize] as u128;
                    let rhs = ac[g_ac.ids[r] as usize] as u128 * bc[g_bc.ids[r] as usize] as u128;
                    lhs == rhs
                })
            }
            _ => {
                let (abc, ac, bc, cc) = (w_abc.to_big(), w_ac.to_big(), w_bc.to_big(), w_c.to_big());
                rep.iter().enumerate().all(|(id, &r)| {
                    &abc[id] * &cc[g_c.ids[r] as usize]
                        == &ac[g_ac.ids[r] as usize] * &bc[g_bc.ids[r] as usize]
                })
            }
        };
        Ok(ok)
    }

    /// Decides `H(target | given) = 0` exactly: every value of `given` in the
    /// support determines a unique value of `target`. An empty `given` asks
    /// whether `target` is constant.
    pub fn is_functional(&self, target: SubsetMask, given: SubsetMask) -> Result<bool> {
        let n = self.arity();
        target.check(n)?;
        given.check_within(n)?;
        require_disjoint(&[target, given])?;
        let g_given = self.group(given);
        let g_joint = self.group(target | given);
        Ok(g_given.count == g_joint.count)
    }

    /// Parses the distribution text format.
    ///
    /// ```text
    /// vars: A B
    /// 0 0 : 1/2   # comment
    /// 1 1 : 1/2
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Option<Vec<String>> = None;
        let mut atoms: Vec<(Vec<u32>, BigRational)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fail = |message: String| Error::DistributionFormat {
                line: line_no,
                message,
            };
            match &names {
                None => {
                    let rest = line
                        .strip_prefix("vars:")
                        .ok_or_else(|| fail("expected `vars:` header".into()))?;
                    let v: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                    if v.is_empty() {
                        return Err(fail("no variables declared".into()));
                    }
                    names = Some(v);
                }
                Some(v) => {
                    let (lhs, rhs) = line
                        .split_once(':')
                        .ok_or_else(|| fail("expected `<values> : <probability>`".into()))?;
                    let tuple: Vec<u32> = lhs
                        .split_whitespace()
                        .map(|s| s.parse::<u32>().map_err(|_| fail(format!("bad value `{s}`"))))
                        .collect::<Result<_>>()?;
                    if tuple.len() != v.len() {
                        return Err(fail(format!(
                            "expected {} values, found {}",
                            v.len(),
                            tuple.len()
                        )));
                    }
                    let p = parse_rational(rhs.trim()).map_err(fail)?;
                    atoms.push((tuple, p));
                }
            }
        }
        let names = names.ok_or(Error::DistributionFormat {
            line: 0,
            message: "missing `vars:` header".into(),
        })?;
        JointDistribution::new(names, None, atoms)
    }

    /// Renders the distribution text format with reduced fractions.
    pub fn to_text(&self) -> String {
        let mut out = format!("vars: {}\n", self.var_names.join(" "));
        for (t, p) in self.atoms() {
            let vals: Vec<String> = t.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{} : {}", vals.join(" "), format_rational(&p));
        }
        out
    }
}

fn check_names(names: &[String]) -> Result<()> {
    if names.is_empty() || names.len() > MAX_ARITY {
        return Err(Error::ArityOutOfRange(names.len()));
    }
    for (i, a) in names.iter().enumerate() {
        if a.is_empty() || !a.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
            return Err(Error::InvalidDistribution(format!("bad variable name `{a}`")));
        }
        if names[..i].contains(a) {
            return Err(Error::InvalidDistribution(format!("variable `{a}` declared twice")));
        }
    }
    Ok(())
}

fn dedupe_names(names: &mut [String]) {
    for i in 1..names.len() {
        let mut k = 2;
        let base = names[i].clone();
        while names[..i].contains(&names[i]) {
            names[i] = format!("{base}{k}");
            k += 1;
        }
    }
}

fn resolve_sizes(n: usize, given: Option<Vec<u32>>, values: &[u32]) -> Result<Vec<u32>> {
    let mut max = vec![0u32; n];
    for chunk in values.chunks(n) {
        for (m, &v) in max.iter_mut().zip(chunk) {
            *m = (*m).max(v);
        }
    }
    match given {
        None => Ok(max.into_iter().map(|m| m + 1).collect()),
        Some(sizes) => {
            if sizes.len() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: sizes.len(),
                });
            }
            for (j, (&s, &m)) in sizes.iter().zip(&max).enumerate() {
                if s == 0 || m >= s {
                    return Err(Error::InvalidDistribution(format!(
                        "value {m} of variable {j} outside alphabet of size {s}"
                    )));
                }
            }
            Ok(sizes)
        }
    }
}

/// Parses `p`, `p/q` or a finite decimal like `0.25` into an exact rational.
pub fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("bad rational `{s}`");
    if let Some((p, q)) = s.split_once('/') {
        let p: num_bigint::BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: num_bigint::BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: num_bigint::BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow(num_bigint::BigInt::from(10), frac.len());
        return Ok(BigRational::new(digits, scale));
    }
    let p: num_bigint::BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

/// Prints a rational as `p` or `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn two_fair_bits() -> JointDistribution {
        JointDistribution::uniform(
            names(&["X", "Y"]),
            None,
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]],
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_totals_and_masses() {
        let n = names(&["A"]);
        assert!(JointDistribution::new(n.clone(), None, vec![(vec![0], rat(1, 2))]).is_err());
        assert!(JointDistribution::new(
            n.clone(),
            None,
            vec![(vec![0], rat(3, 2)), (vec![1], rat(-1, 2))]
        )
        .is_err());
        assert!(JointDistribution::new(n, Some(vec![1]), vec![(vec![1], rat(1, 1))]).is_err());
    }

    #[test]
    fn marginal_of_independent_pair() {
        let d = two_fair_bits();
        let m = d.marginal(SubsetMask::singleton(1)).unwrap();
        assert_eq!(m.num_atoms(), 2);
        assert!(m.atoms().all(|(_, p)| p == rat(1, 2)));
        assert_eq!(d.marginal(SubsetMask::EMPTY), Err(Error::EmptyMask));
    }

    #[test]
    fn independence_of_fair_bits() {
        let d = two_fair_bits();
        let x = SubsetMask::singleton(0);
        let y = SubsetMask::singleton(1);
        assert!(d.is_cond_independent(x, y, SubsetMask::EMPTY).unwrap());
        assert_eq!(
            d.is_cond_independent(x, x | y, SubsetMask::EMPTY),
            Err(Error::OverlappingMasks)
        );
    }

    #[test]
    fn missing_cell_breaks_independence() {
        // Product weights on the present cells, but one cell missing.
        let d = JointDistribution::uniform(
            names(&["X", "Y"]),
            None,
            vec![vec![0, 0], vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        let x = SubsetMask::singleton(0);
        let y = SubsetMask::singleton(1);
        assert!(!d.is_cond_independent(x, y, SubsetMask::EMPTY).unwrap());
    }

    #[test]
    fn xor_is_functional() {
        let atoms = (0..4u32)
            .map(|v| {
                let (x, y) = (v & 1, v >> 1);
                vec![x, y, x ^ y]
            })
            .collect();
        let d = JointDistribution::uniform(names(&["X", "Y", "W"]), None, atoms).unwrap();
        let xy = SubsetMask::new(0b011);
        let w = SubsetMask::new(0b100);
        assert!(d.is_functional(w, xy).unwrap());
        assert!(!d.is_functional(w, SubsetMask::singleton(0)).unwrap());
    }

    #[test]
    fn text_roundtrip() {
        let text = "vars: A B\n# comment\n0 0 : 1/4\n1 1 : 3/4 # tail\n";
        let d = JointDistribution::parse(text).unwrap();
        assert_eq!(d.alphabet_sizes(), &[2, 2]);
        let back = JointDistribution::parse(&d.to_text()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = JointDistribution::parse("vars: A\n0 : 1/2\nx : 1/2\n").unwrap_err();
        assert!(matches!(err, Error::DistributionFormat { line: 3, .. }));
        assert!(JointDistribution::parse("0 : 1\n").is_err());
    }

    #[test]
    fn weighted_atoms_merge() {
        let d = JointDistribution::from_weighted_atoms(
            names(&["A"]),
            None,
            vec![(vec![0], 1u32.into()), (vec![1], 2u32.into()), (vec![0], 1u32.into())],
        )
        .unwrap();
        assert!(d.is_uniform());
        assert_eq!(d.num_atoms(), 2);
    }

    #[test]
    fn duplicate_variable() {
        let d = two_fair_bits().with_duplicate(0, "Z").unwrap();
        assert_eq!(d.arity(), 3);
        assert!(d
            .is_functional(SubsetMask::singleton(2), SubsetMask::singleton(0))
            .unwrap());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rational("-2").unwrap(), rat(-2, 1));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
    }
}
