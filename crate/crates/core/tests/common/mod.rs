//! Random distributions for tests, built from independent sources and
//! random lookup tables so that chosen independence constraints hold
//! exactly.
#![allow(dead_code)]

use std::collections::BTreeMap;

use infoineq::subset::default_names;
use infoineq::JointDistribution;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random map `0..domain → 0..range`.
pub struct Table(Vec<u32>);

impl Table {
    pub fn new(rng: &mut ChaCha8Rng, domain: u32, range: u32) -> Self {
        Table((0..domain).map(|_| rng.random_range(0..range)).collect())
    }

    pub fn at(&self, i: u32) -> u32 {
        self.0[i as usize]
    }
}

/// Mixed-radix index of `values` with digits below `radix`.
pub fn pack(values: &[u32], radix: u32) -> u32 {
    values.iter().fold(0, |acc, v| acc * radix + v)
}

/// Independent sources `U_i` on `0..sizes[i]` with random positive weights,
/// pushed through `f` into `n` variables.
pub fn build(
    rng: &mut ChaCha8Rng,
    sizes: &[u32],
    n: usize,
    f: impl Fn(&[u32]) -> Vec<u32>,
) -> JointDistribution {
    let marginals: Vec<Vec<u32>> = sizes
        .iter()
        .map(|&s| (0..s).map(|_| rng.random_range(1..6u32)).collect())
        .collect();
    let mut atoms: BTreeMap<Vec<u32>, BigUint> = BTreeMap::new();
    let total: u32 = sizes.iter().product();
    for mut code in 0..total {
        let mut u = vec![0; sizes.len()];
        let mut w = BigUint::from(1u32);
        for i in (0..sizes.len()).rev() {
            u[i] = code % sizes[i];
            code /= sizes[i];
            w *= marginals[i][u[i] as usize];
        }
        *atoms.entry(f(&u)).or_default() += w;
    }
    JointDistribution::from_weighted_atoms(default_names(n), None, atoms.into_iter().collect()).unwrap()
}

/// A random rational distribution on `n` variables with alphabet `0..k`
/// and at most `support` atoms.
pub fn random_distribution(rng: &mut ChaCha8Rng, n: usize, k: u32, support: usize) -> JointDistribution {
    let atoms = (0..rng.random_range(1..=support))
        .map(|_| {
            let v = (0..n).map(|_| rng.random_range(0..k)).collect();
            (v, BigUint::from(rng.random_range(1..20u32)))
        })
        .collect();
    JointDistribution::from_weighted_atoms(default_names(n), None, atoms).unwrap()
}

/// `X = (W, V1)`, `Y = (W, V2)`, `Z = f(W, N)` with the extra variables
/// produced by `rest`: returns `(x, y, z, rest...)` ordered by `order`.
/// Sources: W (3), V1 (2), V2 (2), N (2), R (2).
pub fn double_markov_sample(rng: &mut ChaCha8Rng, n: usize, order: [usize; 3]) -> JointDistribution {
    let fz = Table::new(rng, 6, 4);
    let fx = Table::new(rng, 6, 6);
    let fy = Table::new(rng, 6, 6);
    let extra: Vec<Table> = (0..n - 3).map(|_| Table::new(rng, 243, 3)).collect();
    // x and y must keep W recoverable on their own, so they use injective
    // encodings of (W, V) followed by a random relabeling of V only.
    build(rng, &[3, 2, 2, 2, 2], n, |u| {
        let (w, v1, v2, noise, r) = (u[0], u[1], u[2], u[3], u[4]);
        let x = w * 2 + (fx.at(w * 2 + v1) % 2);
        let y = w * 2 + (fy.at(w * 2 + v2) % 2);
        let z = fz.at(w * 2 + noise);
        let all = pack(&[w, v1, v2, noise, r], 3);
        let mut out = vec![0; n];
        out[order[0]] = x;
        out[order[1]] = y;
        out[order[2]] = z;
        let mut k = 0;
        for (i, slot) in out.iter_mut().enumerate() {
            if !order.contains(&i) {
                *slot = extra[k].at(all);
                k += 1;
            }
        }
        out
    })
}

/// A random distribution satisfying every constraint of the named registry
/// entry exactly.
pub fn satisfying(rng: &mut ChaCha8Rng, name: &str) -> JointDistribution {
    match name {
        // A ⊥ B and C depends on A (or B) plus private noise.
        "I1" => {
            let (fa, fb, fc, fd) = (
                Table::new(rng, 3, 3),
                Table::new(rng, 3, 3),
                Table::new(rng, 9, 3),
                Table::new(rng, 81, 3),
            );
            let c_from_b = rng.random_bool(0.5);
            build(rng, &[3, 3, 3, 3], 4, move |u| {
                let (a, b) = (fa.at(u[0]), fb.at(u[1]));
                let c = fc.at(if c_from_b { u[1] } else { u[0] } * 3 + u[2]);
                vec![a, b, c, fd.at(pack(u, 3))]
            })
        }
        // Given C, B depends on its own noise; A and D share another.
        "I2" => {
            let (fa, fb, fd) = (Table::new(rng, 9, 3), Table::new(rng, 9, 3), Table::new(rng, 27, 3));
            build(rng, &[3, 3, 3, 3], 4, move |u| {
                let c = u[0];
                vec![fa.at(c * 3 + u[1]), fb.at(c * 3 + u[2]), c, fd.at(pack(&[c, u[1], u[3]], 3))]
            })
        }
        // C = (a1, b1) with a1 inside A and b1 inside B.
        "I3" => {
            let (fa, fb, fd) = (Table::new(rng, 3, 3), Table::new(rng, 3, 3), Table::new(rng, 243, 3));
            build(rng, &[2, 2, 3, 3, 3], 4, move |u| {
                let (a1, b1) = (u[0], u[1]);
                vec![a1 * 3 + fa.at(u[2]), b1 * 3 + fb.at(u[3]), a1 * 2 + b1, fd.at(pack(u, 3))]
            })
        }
        // Double Markov patterns: Z is the variable conditioned against.
        "I4p" => double_markov_sample(rng, 4, [2, 3, 0]),
        "I5p" => double_markov_sample(rng, 4, [1, 3, 2]),
        "I4" => double_markov_sample(rng, 5, [2, 3, 0]),
        "I5" | "I6" => double_markov_sample(rng, 5, [1, 3, 2]),
        // A ⊥ B, C a function of one of them, D a function of the other.
        "weak" => {
            let (fa, fb, fc, fd) = (
                Table::new(rng, 4, 4),
                Table::new(rng, 4, 4),
                Table::new(rng, 4, 3),
                Table::new(rng, 4, 3),
            );
            let swap = rng.random_bool(0.5);
            build(rng, &[4, 4], 4, move |u| {
                let (a, b) = (fa.at(u[0]), fb.at(u[1]));
                let (c, d) = if swap { (fc.at(b), fd.at(a)) } else { (fc.at(a), fd.at(b)) };
                vec![a, b, c, d]
            })
        }
        other => panic!("no construction for {other}"),
    }
}

/// `(V, Z, X, Y)` with the double Markov pattern on `(X, Y, Z)` and `V` a
/// random function of all sources.
pub fn ingleton_sample(rng: &mut ChaCha8Rng) -> JointDistribution {
    double_markov_sample(rng, 4, [2, 3, 1])
}
