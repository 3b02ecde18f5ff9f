//! Center and Artin-Wedderburn block sizes of finite-dimensional algebras.
//!
//! The center is computed exactly. Block sizes come from the primitive
//! central idempotents, found numerically by diagonalizing a seeded random
//! central element on the center, and are then cross-checked exactly:
//! the number of blocks must equal the center dimension and the squares
//! must add up to the dimension.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::hopf::{Element, HopfAlgebra, HopfPresentation};
use crate::linalg::Echelon;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StructureError {
    #[error("decomposition unresolved: idempotent residual {residual:.3e} exceeds tolerance {tolerance:.1e}")]
    Unresolved { residual: f64, tolerance: f64 },
    #[error("block {block}: numeric rank is ambiguous (singular value {singular:.3e} near the tolerance); use a smaller tolerance or higher precision")]
    RankAmbiguous { block: usize, singular: f64 },
    #[error("block {block}: dimension {dim} is not a perfect square")]
    NotSquare { block: usize, dim: usize },
    #[error("random central element with seed {seed} has a repeated eigenvalue; retry with another seed")]
    DegenerateSpectrum { seed: u64 },
    #[error("projector {index} is not central: fails to commute with basis element {witness}")]
    NotCentral { index: usize, witness: usize },
    #[error("projector {index} is not idempotent")]
    NotIdempotent { index: usize },
}

/// An associative unital algebra given by structure constants.
#[derive(Debug, Clone)]
pub struct Algebra<S> {
    dim: usize,
    /// `mult[i * dim + j] = b_i b_j`.
    mult: Vec<Element<S>>,
    unit: Element<S>,
}

impl<S: Scalar> Algebra<S> {
    pub fn new(dim: usize, mult: Vec<Element<S>>, unit: Element<S>) -> Self {
        assert_eq!(mult.len(), dim * dim);
        Algebra { dim, mult, unit }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Element<S> {
        &self.unit
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Element<S> {
        &self.mult[i * self.dim + j]
    }

    pub fn mul(&self, a: &Element<S>, b: &Element<S>) -> Element<S> {
        let mut out = Element::zero();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                out.add_scaled(self.mul_basis(*i, *j), &(x.clone() * y.clone()));
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim)
            .all(|i| (i + 1..self.dim).all(|j| self.mul_basis(i, j) == self.mul_basis(j, i)))
    }
}

impl<S: Scalar> From<&HopfPresentation<S>> for Algebra<S> {
    fn from(h: &HopfPresentation<S>) -> Self {
        Algebra {
            dim: h.dim(),
            mult: h.mult.clone(),
            unit: h.unit.clone(),
        }
    }
}

/// Exact basis of the center, one vector per free column of the commutation system.
pub fn compute_center<S: Scalar>(a: &Algebra<S>) -> Vec<Element<S>> {
    center_with_free(a).0
}

/// The center basis with the free column of each vector (where it is 1 and the others vanish).
fn center_with_free<S: Scalar>(a: &Algebra<S>) -> (Vec<Element<S>>, Vec<usize>) {
    let d = a.dim;
    let mut ech = Echelon::new(d);
    for j in 0..d {
        // rows indexed by the output basis element k, columns by i
        let mut rows: Vec<Vec<(usize, S)>> = vec![Vec::new(); d];
        for i in 0..d {
            let c = a.mul_basis(i, j).minus(a.mul_basis(j, i));
            for (k, v) in c.iter() {
                rows[*k].push((i, v.clone()));
            }
        }
        for r in rows.into_iter().filter(|r| !r.is_empty()) {
            ech.insert_sparse(&r);
        }
        if ech.is_full() {
            break;
        }
    }
    let mut is_pivot = vec![false; d];
    for &p in ech.pivots() {
        is_pivot[p] = true;
    }
    let free = (0..d).filter(|&c| !is_pivot[c]).collect();
    (
        ech.nullspace_sparse()
            .into_iter()
            .map(Element::from_terms)
            .collect(),
        free,
    )
}

pub fn center_dim<S: Scalar>(a: &Algebra<S>) -> usize {
    compute_center(a).len()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactChecks {
    pub sum_of_squares: bool,
    pub block_count: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub center_dim: usize,
    /// Block sizes `n_i`, in decreasing order.
    pub blocks: Vec<usize>,
    pub residual: f64,
    pub seed: u64,
    pub exact_checks: ExactChecks,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.exact_checks.sum_of_squares && self.exact_checks.block_count
    }

    /// `(n, multiplicity)` pairs, largest blocks first.
    pub fn multiset(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &b in &self.blocks {
            match out.last_mut() {
                Some((n, m)) if *n == b => *m += 1,
                _ => out.push((b, 1)),
            }
        }
        out
    }

    pub fn describe(&self) -> String {
        self.multiset()
            .iter()
            .map(|(n, m)| {
                if *n == 1 {
                    format!("C^{m}")
                } else if *m == 1 {
                    format!("M{n}")
                } else {
                    format!("M{n}^{m}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Coordinates of a central element in the center basis: its values at the free columns.
fn center_coords<S: Scalar>(free: &[usize], z: &Element<S>) -> Vec<S> {
    free.iter().map(|f| z.get(f)).collect()
}

/// Numeric block sizes `n_i` from the primitive central idempotents.
pub fn wedderburn<S: Scalar>(
    a: &Algebra<S>,
    tolerance: f64,
    seed: u64,
) -> Result<DecompositionReport, StructureError> {
    let (center, free) = center_with_free(a);
    let c = center.len();

    // table[x][y] = coordinates of Z_x Z_y
    let table: Vec<Vec<Vec<Complex64>>> = (0..c)
        .into_par_iter()
        .map(|x| {
            (0..c)
                .map(|y| {
                    center_coords(&free, &a.mul(&center[x], &center[y]))
                        .iter()
                        .map(Scalar::to_complex)
                        .collect()
                })
                .collect()
        })
        .collect();
    let cmul = |u: &[Complex64], v: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); c];
        for x in 0..c {
            if u[x].norm() == 0.0 {
                continue;
            }
            for y in 0..c {
                let f = u[x] * v[y];
                if f.norm() == 0.0 {
                    continue;
                }
                for (o, t) in out.iter_mut().zip(&table[x][y]) {
                    *o += f * t;
                }
            }
        }
        out
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r: Vec<f64> = (0..c).map(|_| rng.random_range(-1.0..1.0)).collect();
    // left multiplication by z = Σ r_x Z_x on the center
    let mut m = DMatrix::<Complex64>::zeros(c, c);
    for y in 0..c {
        for x in 0..c {
            for (k, t) in table[x][y].iter().enumerate() {
                m[(k, y)] += Complex64::new(r[x], 0.0) * t;
            }
        }
    }
    let (_, t) = nalgebra::Schur::new(m.clone()).unpack();
    let eig: Vec<Complex64> = (0..c).map(|i| t[(i, i)]).collect();
    let scale = eig.iter().map(|e| e.norm()).fold(1.0, f64::max);
    for i in 0..c {
        for j in i + 1..c {
            if (eig[i] - eig[j]).norm() < 1e-6 * scale {
                return Err(StructureError::DegenerateSpectrum { seed });
            }
        }
    }

    let unit = center_coords(&free, &a.unit)
        .iter()
        .map(Scalar::to_complex)
        .collect::<Vec<_>>();
    let mut idem: Vec<Vec<Complex64>> = Vec::with_capacity(c);
    for &l in &eig {
        let shifted = &m - DMatrix::<Complex64>::identity(c, c) * l;
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.expect("requested");
        let k = (0..c)
            .min_by(|&x, &y| svd.singular_values[x].total_cmp(&svd.singular_values[y]))
            .unwrap();
        let v: Vec<Complex64> = (0..c).map(|j| v_t[(k, j)].conj()).collect();
        let sq = cmul(&v, &v);
        let p = (0..c)
            .max_by(|&x, &y| v[x].norm().total_cmp(&v[y].norm()))
            .unwrap();
        let mu = sq[p] / v[p];
        idem.push(v.iter().map(|x| x / mu).collect());
    }

    let mut residual: f64 = 0.0;
    let mut total = vec![Complex64::new(0.0, 0.0); c];
    for (i, e) in idem.iter().enumerate() {
        let sq = cmul(e, e);
        residual = residual.max(
            sq.iter()
                .zip(e)
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max),
        );
        for f in &idem[i + 1..] {
            residual = residual.max(cmul(e, f).iter().map(|x| x.norm()).fold(0.0, f64::max));
        }
        for (t, x) in total.iter_mut().zip(e) {
            *t += x;
        }
    }
    residual = residual.max(
        total
            .iter()
            .zip(&unit)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max),
    );
    if residual.is_nan() || residual > tolerance {
        return Err(StructureError::Unresolved {
            residual,
            tolerance,
        });
    }

    // left multiplication operators of the center basis on the whole algebra
    let d = a.dim;
    let lz: Vec<DMatrix<Complex64>> = center
        .par_iter()
        .map(|z| {
            let mut l = DMatrix::<Complex64>::zeros(d, d);
            for j in 0..d {
                for (i, v) in a.mul(z, &Element::basis(j)).iter() {
                    l[(*i, j)] = v.to_complex();
                }
            }
            l
        })
        .collect();
    let mut blocks = Vec::with_capacity(c);
    for (bi, e) in idem.iter().enumerate() {
        let mut l = DMatrix::<Complex64>::zeros(d, d);
        for (x, coef) in e.iter().enumerate() {
            if coef.norm() > 0.0 {
                l += &lz[x] * *coef;
            }
        }
        let sv = l.singular_values();
        let top = sv.iter().cloned().fold(0.0, f64::max).max(1.0);
        let mut rank = 0;
        for &s in sv.iter() {
            if s > 1e-3 * top {
                rank += 1;
            } else if s > tolerance * top {
                return Err(StructureError::RankAmbiguous {
                    block: bi,
                    singular: s,
                });
            }
        }
        let n = (rank as f64).sqrt().round() as usize;
        if n * n != rank {
            return Err(StructureError::NotSquare {
                block: bi,
                dim: rank,
            });
        }
        blocks.push(n);
    }
    blocks.sort_unstable_by(|x, y| y.cmp(x));
    let exact_checks = ExactChecks {
        sum_of_squares: blocks.iter().map(|n| n * n).sum::<usize>() == d,
        block_count: blocks.len() == c,
    };
    Ok(DecompositionReport {
        center_dim: c,
        blocks,
        residual,
        seed,
        exact_checks,
    })
}

/// A two-sided ideal `pA` for a central idempotent `p`, with `p` as its unit.
#[derive(Debug, Clone)]
pub struct Sector<S> {
    pub projector: Element<S>,
    /// Basis of `pA` in the coordinates of `A`.
    pub basis: Vec<Element<S>>,
    pub algebra: Algebra<S>,
}

/// Split `A` along central idempotents, verifying centrality and idempotency exactly.
pub fn sector_split<S: Scalar>(
    a: &Algebra<S>,
    projectors: &[Element<S>],
) -> Result<Vec<Sector<S>>, StructureError> {
    let d = a.dim;
    for (index, p) in projectors.iter().enumerate() {
        if a.mul(p, p) != *p {
            return Err(StructureError::NotIdempotent { index });
        }
        for j in 0..d {
            let b = Element::basis(j);
            if a.mul(p, &b) != a.mul(&b, p) {
                return Err(StructureError::NotCentral { index, witness: j });
            }
        }
    }
    projectors
        .par_iter()
        .map(|p| {
            let mut ech = Echelon::new(d);
            for j in 0..d {
                let v = a.mul(p, &Element::basis(j));
                if !v.is_zero() {
                    ech.insert(v.to_dense(d));
                }
            }
            let pivots = ech.pivots().to_vec();
            let basis: Vec<Element<S>> =
                ech.rows().iter().map(|r| Element::from_dense(r)).collect();
            // reduced echelon rows: coordinates are the values at the pivots
            let coords = |v: &Element<S>| {
                Element::from_terms(pivots.iter().enumerate().map(|(k, c)| (k, v.get(c))))
            };
            let n = basis.len();
            let mut mult = Vec::with_capacity(n * n);
            for x in &basis {
                for y in &basis {
                    mult.push(coords(&a.mul(x, y)));
                }
            }
            let unit = coords(p);
            Ok(Sector {
                projector: p.clone(),
                basis,
                algebra: Algebra::new(n, mult, unit),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{dual_w, group_algebra, kac_paljutkin};
    use crate::hopf::{Label, Sector as Grade};
    use crate::scalar::CycloScalar;
    use crate::symmetry::PermGroup;

    #[test]
    fn group_algebra_of_z2_is_commutative() {
        let h = group_algebra::<CycloScalar>(&PermGroup::cyclic(2));
        let a = Algebra::from(&h);
        assert!(a.is_commutative());
        assert_eq!(center_dim(&a), 2);
        let r = wedderburn(&a, 1e-8, 1).unwrap();
        assert_eq!(r.blocks, vec![1, 1]);
    }

    #[test]
    fn kac_paljutkin_two() {
        let a = Algebra::from(&kac_paljutkin(2).unwrap());
        assert_eq!(center_dim(&a), 5);
        let r = wedderburn(&a, 1e-8, 7).unwrap();
        assert_eq!(r.blocks, vec![2, 1, 1, 1, 1]);
        assert!(r.passed());
        assert_eq!(r.describe(), "M2 + C^4");
    }

    #[test]
    fn dual_w_three() {
        let a = Algebra::from(&dual_w(3).unwrap());
        let r = wedderburn(&a, 1e-8, 3).unwrap();
        assert_eq!(r.multiset(), vec![(2, 3), (1, 6)]);
    }

    #[test]
    fn split_by_sector_projectors() {
        let h = kac_paljutkin(3).unwrap();
        let a = Algebra::from(&h);
        let p = |s| h.basis(&Label::new("x", s, vec![0, 0])).unwrap();
        let parts = sector_split(&a, &[p(Grade::Plus), p(Grade::Minus)]).unwrap();
        assert_eq!(parts[0].algebra.dim(), 9);
        assert!(parts[0].algebra.is_commutative());
        assert!(!parts[1].algebra.is_commutative());
        assert_eq!(
            wedderburn(&parts[1].algebra, 1e-8, 0).unwrap().blocks,
            vec![3]
        );
        let whole = sector_split(&a, &[a.unit().clone()]).unwrap();
        assert_eq!(whole[0].algebra.dim(), 18);
        let bad = h.basis(&Label::new("x", Grade::Plus, vec![1, 0])).unwrap();
        assert!(matches!(
            sector_split(&a, &[bad]),
            Err(StructureError::NotIdempotent { .. })
        ));
    }
}
