//! Dense exact-rational simplex for feasibility problems `A x = b, x ≥ 0`.
//!
//! Phase I with one artificial per row and Bland's rule. On infeasibility a
//! Farkas vector `y` with `yᵀA ≥ 0` and `yᵀb < 0` is returned.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility {
    Feasible(Vec<BigRational>),
    /// Farkas vector over the rows.
    Infeasible(Vec<BigRational>),
}

struct Tableau {
    /// rows × (cols + 1); last column is the right-hand side.
    t: Vec<Vec<BigRational>>,
    /// Objective row (reduced costs), same width.
    obj: Vec<BigRational>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        if !p.is_one() {
            for v in self.t[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
        }
        let pivot_row = self.t[r].clone();
        let nz: Vec<usize> = (0..=self.cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] -= &f * &pivot_row[j];
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for &j in &nz {
                self.obj[j] -= &f * &pivot_row[j];
            }
        }
        self.basis[r] = c;
    }

    /// Runs Bland's rule to optimality (minimization, reduced costs in `obj`).
    fn optimize(&mut self, allowed: impl Fn(usize) -> bool) {
        loop {
            let Some(c) = (0..self.cols).find(|&j| allowed(j) && self.obj[j].is_negative()) else {
                return;
            };
            let mut best: Option<(usize, BigRational)> = None;
            for (i, row) in self.t.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[self.cols] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                // Unbounded cannot happen for a Phase I objective bounded below by 0.
                None => unreachable!("phase I objective is bounded"),
            }
        }
    }
}

/// Phase I: minimizes the sum of artificials. Returns the final tableau,
/// the row sign flips and whether the optimum is zero.
fn phase_one(a: &[Vec<BigRational>], b: &[BigRational]) -> (Tableau, Vec<bool>, bool) {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let n = a.first().map_or(0, Vec::len);
    let cols = n + rows;
    let mut flipped = vec![false; rows];
    let mut t = Vec::with_capacity(rows);
    for i in 0..rows {
        assert_eq!(a[i].len(), n);
        let neg = b[i].is_negative();
        flipped[i] = neg;
        let mut row = Vec::with_capacity(cols + 1);
        for v in &a[i] {
            row.push(if neg { -v.clone() } else { v.clone() });
        }
        for k in 0..rows {
            row.push(if k == i { BigRational::one() } else { BigRational::zero() });
        }
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    // Objective in nonbasic terms: minus the column sums of the original part.
    let mut obj = vec![BigRational::zero(); cols + 1];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[cols] -= &row[cols];
    }
    let mut tab = Tableau {
        t,
        obj,
        basis: (n..cols).collect(),
        cols,
    };
    tab.optimize(|_| true);
    let feasible = tab.obj[cols].is_zero();
    (tab, flipped, feasible)
}

fn primal_solution(tab: &Tableau, n: usize) -> Vec<BigRational> {
    let mut x = vec![BigRational::zero(); n];
    for (i, &bv) in tab.basis.iter().enumerate() {
        if bv < n {
            x[bv] = tab.t[i][tab.cols].clone();
        }
    }
    x
}

/// Decides feasibility of `A x = b, x ≥ 0`, `A` given row-major.
pub fn solve_feasibility(a: &[Vec<BigRational>], b: &[BigRational]) -> Feasibility {
    let n = a.first().map_or(0, Vec::len);
    let (tab, flipped, feasible) = phase_one(a, b);
    if feasible {
        return Feasibility::Feasible(primal_solution(&tab, n));
    }
    // Duals of the Phase I optimum: the reduced cost of artificial i is
    // 1 - y_i. The Farkas vector is -y, mapped back through the sign flips.
    let y: Vec<BigRational> = (0..a.len())
        .map(|i| {
            let farkas = &tab.obj[n + i] - BigRational::one();
            if flipped[i] {
                -farkas
            } else {
                farkas
            }
        })
        .collect();
    if is_farkas(a, b, &y) {
        return Feasibility::Infeasible(y);
    }
    Feasibility::Infeasible(explicit_dual(a, b))
}

/// Checks `yᵀA ≥ 0` and `yᵀb < 0`.
pub fn is_farkas(a: &[Vec<BigRational>], b: &[BigRational], y: &[BigRational]) -> bool {
    let n = a.first().map_or(0, Vec::len);
    let yb = y.iter().zip(b).fold(BigRational::zero(), |s, (u, v)| s + u * v);
    if !yb.is_negative() {
        return false;
    }
    (0..n).all(|j| {
        let s = y
            .iter()
            .zip(a)
            .fold(BigRational::zero(), |s, (u, row)| s + u * &row[j]);
        !s.is_negative()
    })
}

/// Solves `Aᵀ(u - v) - s = 0, bᵀ(u - v) + t = -1` with all variables
/// nonnegative and returns `y = u - v`. Only called when `A x = b` is
/// infeasible, so a solution exists.
fn explicit_dual(a: &[Vec<BigRational>], b: &[BigRational]) -> Vec<BigRational> {
    let rows = a.len();
    let n = a.first().map_or(0, Vec::len);
    // Variables: u (rows), v (rows), s (n), t (1).
    let width = 2 * rows + n + 1;
    let mut m = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut row = vec![BigRational::zero(); width];
        for i in 0..rows {
            row[i] = a[i][j].clone();
            row[rows + i] = -a[i][j].clone();
        }
        row[2 * rows + j] = -BigRational::one();
        m.push(row);
    }
    let mut last = vec![BigRational::zero(); width];
    for i in 0..rows {
        last[i] = b[i].clone();
        last[rows + i] = -b[i].clone();
    }
    last[width - 1] = BigRational::one();
    m.push(last);
    let mut rhs = vec![BigRational::zero(); n];
    rhs.push(-BigRational::one());
    let (tab, _, feasible) = phase_one(&m, &rhs);
    assert!(feasible, "Farkas alternative guarantees a dual solution");
    let x = primal_solution(&tab, width);
    (0..rows).map(|i| &x[i] - &x[rows + i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn rows(v: &[&[i64]]) -> Vec<Vec<BigRational>> {
        v.iter().map(|row| row.iter().map(|&x| r(x)).collect()).collect()
    }

    fn check_solution(a: &[Vec<BigRational>], b: &[BigRational], x: &[BigRational]) {
        assert!(x.iter().all(|v| !v.is_negative()));
        for (row, bi) in a.iter().zip(b) {
            let s = row.iter().zip(x).fold(BigRational::zero(), |s, (u, v)| s + u * v);
            assert_eq!(&s, bi);
        }
    }

    #[test]
    fn feasible_system() {
        let a = rows(&[&[1, 1, 0], &[0, 1, 1]]);
        let b = vec![r(2), r(3)];
        match solve_feasibility(&a, &b) {
            Feasibility::Feasible(x) => check_solution(&a, &b, &x),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_rhs_is_infeasible_with_certificate() {
        let a = rows(&[&[1, 2], &[0, 1]]);
        let b = vec![r(-1), r(1)];
        match solve_feasibility(&a, &b) {
            Feasibility::Infeasible(y) => assert!(is_farkas(&a, &b, &y)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn explicit_dual_agrees() {
        let a = rows(&[&[1, -1], &[-1, 1]]);
        let b = vec![r(1), r(1)];
        let y = explicit_dual(&a, &b);
        assert!(is_farkas(&a, &b, &y));
        assert!(matches!(solve_feasibility(&a, &b), Feasibility::Infeasible(_)));
    }

    #[test]
    fn degenerate_redundant_rows() {
        let a = rows(&[&[1, 1], &[2, 2], &[1, 1]]);
        let b = vec![r(1), r(2), r(1)];
        match solve_feasibility(&a, &b) {
            Feasibility::Feasible(x) => check_solution(&a, &b, &x),
            other => panic!("{other:?}"),
        }
    }
}
