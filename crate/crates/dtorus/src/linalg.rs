//! Exact Gaussian elimination over any [`Scalar`] field.
//!
//! Rows are inserted one at a time into a reduced row echelon basis, so large
//! sparse systems (commutation equations, intertwining constraints) never
//! need to be stored in full.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct Echelon<S> {
    ncols: usize,
    rows: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

impl<S: Scalar> Echelon<S> {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn insert_sparse(&mut self, entries: &[(usize, S)]) -> bool {
        let mut row = vec![S::zero(); self.ncols];
        for (c, v) in entries {
            row[*c] = row[*c].clone() + v.clone();
        }
        self.insert(row)
    }

    /// Add a row; returns whether it increased the rank.
    pub fn insert(&mut self, mut row: Vec<S>) -> bool {
        assert_eq!(row.len(), self.ncols);
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for c in 0..self.ncols {
                if !r[c].is_zero() {
                    row[c] = row[c].clone() - f.clone() * r[c].clone();
                }
            }
        }
        let Some(p) = row.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let inv = row[p].recip().expect("nonzero pivot");
        for v in row.iter_mut() {
            if !v.is_zero() {
                *v = v.clone() * inv.clone();
            }
        }
        for r in self.rows.iter_mut() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for c in 0..self.ncols {
                if !row[c].is_zero() {
                    r[c] = r[c].clone() - f.clone() * row[c].clone();
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, row);
        true
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    /// Basis of the solution space of the homogeneous system, one vector
    /// per free column in ascending order.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        self.nullspace_of(self.ncols)
    }

    /// The same basis as [`Echelon::nullspace`] with only nonzero entries.
    pub fn nullspace_sparse(&self) -> Vec<Vec<(usize, S)>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|f| {
                let mut v = vec![(f, S::one())];
                for (r, &p) in self.rows.iter().zip(&self.pivots) {
                    if !r[f].is_zero() {
                        v.push((p, -r[f].clone()));
                    }
                }
                v.sort_by_key(|e| e.0);
                v
            })
            .collect()
    }

    fn nullspace_of(&self, n: usize) -> Vec<Vec<S>> {
        let mut out = Vec::new();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        for f in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![S::zero(); n];
            v[f] = S::one();
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                if p < n && !r[f].is_zero() {
                    v[p] = -r[f].clone();
                }
            }
            out.push(v);
        }
        out
    }
}

/// Rank of a dense matrix.
pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut e = Echelon::new(first.len());
    for r in rows {
        e.insert(r.clone());
        if e.is_full() {
            break;
        }
    }
    e.rank()
}

pub fn nullspace<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> Vec<Vec<S>> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r.clone());
    }
    e.nullspace()
}

/// Affine solution set `{x : A x = b}` as a particular solution plus a
/// nullspace basis, or `None` if inconsistent.
pub struct AffineSystem<S> {
    ech: Echelon<S>,
    n: usize,
    inconsistent: bool,
}

impl<S: Scalar> AffineSystem<S> {
    pub fn new(n: usize) -> Self {
        AffineSystem {
            ech: Echelon::new(n + 1),
            n,
            inconsistent: false,
        }
    }

    /// Add the equation `sum coeffs[k].1 * x[coeffs[k].0] = rhs`.
    pub fn equation(&mut self, coeffs: &[(usize, S)], rhs: S) {
        if self.inconsistent {
            return;
        }
        let mut row = vec![S::zero(); self.n + 1];
        for (c, v) in coeffs {
            row[*c] = row[*c].clone() + v.clone();
        }
        row[self.n] = rhs;
        self.ech.insert(row);
        if self.ech.pivots.last() == Some(&self.n) {
            self.inconsistent = true;
        }
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    pub fn solution(&self) -> Option<(Vec<S>, Vec<Vec<S>>)> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![S::zero(); self.n];
        for (r, &p) in self.ech.rows.iter().zip(&self.ech.pivots) {
            x[p] = r[self.n].clone();
        }
        Some((x, self.ech.nullspace_of(self.n)))
    }
}

/// Any solution of the dense system `rows * x = rhs`.
pub fn solve<S: Scalar>(rows: &[Vec<S>], rhs: &[S]) -> Option<Vec<S>> {
    let n = rows.first().map_or(0, |r| r.len());
    let mut sys = AffineSystem::new(n);
    for (r, b) in rows.iter().zip(rhs) {
        let entries: Vec<(usize, S)> = r
            .iter()
            .cloned()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .collect();
        sys.equation(&entries, b.clone());
    }
    sys.solution().map(|(x, _)| x)
}

/// An integer solution of `a x = b`, or `None` if there is none.
///
/// Column-style Hermite reduction with extended-gcd steps; the transform is
/// tracked so the solution is mapped back exactly.
pub fn solve_integer(a: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut v: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect();
    let mut pivots: Vec<Option<usize>> = vec![None; m];
    let mut p = 0;
    for r in 0..m {
        if p == n {
            break;
        }
        for j in p + 1..n {
            if h[r][j].is_zero() {
                continue;
            }
            if h[r][p].is_zero() {
                swap_cols(&mut h, p, j);
                swap_cols(&mut v, p, j);
                continue;
            }
            let x = h[r][p].clone();
            let y = h[r][j].clone();
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let (u1, u2) = (-(&y / &g), &x / &g);
            combine_cols(&mut h, p, j, &s, &t, &u1, &u2);
            combine_cols(&mut v, p, j, &s, &t, &u1, &u2);
        }
        if !h[r][p].is_zero() {
            pivots[r] = Some(p);
            p += 1;
        }
    }
    let mut y = vec![BigInt::zero(); n];
    for r in 0..m {
        let mut val = b[r].clone();
        let lim = pivots[r].unwrap_or(p);
        for c in 0..lim {
            if !h[r][c].is_zero() {
                val -= &h[r][c] * &y[c];
            }
        }
        match pivots[r] {
            Some(c) => {
                if !(&val % &h[r][c]).is_zero() {
                    return None;
                }
                y[c] = &val / &h[r][c];
            }
            None => {
                if !val.is_zero() {
                    return None;
                }
            }
        }
    }
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| &v[i][j] * &y[j]).sum())
            .collect(),
    )
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

// (col_a, col_b) <- (s col_a + t col_b, u1 col_a + u2 col_b)
fn combine_cols(
    m: &mut [Vec<BigInt>],
    a: usize,
    b: usize,
    s: &BigInt,
    t: &BigInt,
    u1: &BigInt,
    u2: &BigInt,
) {
    for row in m.iter_mut() {
        let (x, y) = (row[a].clone(), row[b].clone());
        row[a] = s * &x + t * &y;
        row[b] = u1 * &x + u2 * &y;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn r(p: i64) -> Rational {
        rat(p, 1)
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)]];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot: Rational = m[0].iter().zip(v).map(|(a, b)| a * b).sum();
            assert_eq!(dot, r(0));
        }
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn integer_systems() {
        let b = |v: i64| BigInt::from(v);
        // 2x + 4y = 6 has integer solutions; 2x + 4y = 3 does not.
        let a = vec![vec![b(2), b(4)]];
        let x = solve_integer(&a, &[b(6)]).unwrap();
        assert_eq!(&x[0] * b(2) + &x[1] * b(4), b(6));
        assert!(solve_integer(&a, &[b(3)]).is_none());
        let a2 = vec![vec![b(3), b(5), b(0)], vec![b(0), b(1), b(7)]];
        let x2 = solve_integer(&a2, &[b(1), b(2)]).unwrap();
        assert_eq!(&x2[0] * b(3) + &x2[1] * b(5), b(1));
        assert_eq!(&x2[1] + &x2[2] * b(7), b(2));
    }

    #[test]
    fn solve_and_inconsistency() {
        let m = vec![vec![r(2), r(1)], vec![r(1), r(-1)]];
        let x = solve(&m, &[r(3), r(0)]).unwrap();
        assert_eq!(x, vec![r(1), r(1)]);
        let bad = vec![vec![r(1), r(1)], vec![r(2), r(2)]];
        assert!(solve(&bad, &[r(1), r(3)]).is_none());
    }
}
