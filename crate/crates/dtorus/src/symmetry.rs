//! Finite permutation groups acting on `Z^n`, invariant sublattices and
//! their finite quotients.
//!
//! Convention: a permutation `h` moves the entry in slot `j` to slot `h(j)`,
//! so `(h(i))_k = i_{h^{-1}(k)}`. With composition `(gh)(j) = g(h(j))` this is
//! a left action.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub type Perm = Vec<usize>;
pub type MultiIndex = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymmetryError {
    #[error("permutation {0:?} is not a bijection of 0..{1}")]
    BadPermutation(Vec<usize>, usize),
    #[error("lattice basis is singular")]
    DegenerateLattice,
    #[error("lattice basis must be {0}x{0}")]
    BadShape(usize),
    #[error("lattice is not invariant: g{g} maps basis column {col} outside L")]
    NotInvariant { g: usize, col: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroup {
    n: usize,
    elements: Vec<Perm>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

impl PermGroup {
    /// Close the given generators under composition. Element 0 is the
    /// identity; the rest appear in breadth-first order over the generators.
    pub fn from_generators(n: usize, gens: &[Perm]) -> Result<Self, SymmetryError> {
        for g in gens {
            let mut seen = vec![false; n];
            if g.len() != n
                || g.iter()
                    .any(|&x| x >= n || std::mem::replace(&mut seen[x], true))
            {
                return Err(SymmetryError::BadPermutation(g.clone(), n));
            }
        }
        let id: Perm = (0..n).collect();
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Perm, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for g in gens {
                let p = compose(&elements[e], g);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        let m = elements.len();
        let table: Vec<Vec<usize>> = (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| index[&compose(&elements[a], &elements[b])])
                    .collect()
            })
            .collect();
        let inverse = (0..m)
            .map(|a| (0..m).find(|&b| table[a][b] == 0).unwrap())
            .collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(PermGroup {
            n,
            elements,
            table,
            inverse,
            generators,
        })
    }

    /// Cyclic group generated by the shift `k -> k+1 mod n`.
    pub fn cyclic(n: usize) -> Self {
        let shift: Perm = (0..n).map(|k| (k + 1) % n).collect();
        Self::from_generators(n, &[shift]).unwrap()
    }

    /// The coordinate flip of `Z^2`.
    pub fn flip() -> Self {
        Self::cyclic(2)
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_generators(n, &[]).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, g: usize) -> &Perm {
        &self.elements[g]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn act(&self, g: usize, i: &[i64]) -> MultiIndex {
        let p = &self.elements[g];
        let mut out = vec![0; i.len()];
        for (j, &v) in i.iter().enumerate() {
            out[p[j]] = v;
        }
        out
    }

    /// Matrix `P_g` with `act(g, i) = P_g i`.
    pub fn matrix(&self, g: usize) -> Vec<Vec<i64>> {
        let p = &self.elements[g];
        let mut m = vec![vec![0; self.n]; self.n];
        for j in 0..self.n {
            m[p[j]][j] = 1;
        }
        m
    }
}

/// Sublattice `L = B Z^n` given by the columns of `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    n: usize,
    basis: Vec<Vec<i64>>,
    // U with U B V = diag(d); reduction works in U-coordinates.
    u: Vec<Vec<i64>>,
    u_inv: Vec<Vec<i64>>,
    diag: Vec<i64>,
    degenerate: bool,
}

/// Element of `Z^n / L`, stored by its coordinates in the reduction box.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexClass(pub Vec<i64>);

fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

impl Lattice {
    pub fn new(basis: Vec<Vec<i64>>) -> Result<Self, SymmetryError> {
        let n = basis.len();
        if basis.iter().any(|r| r.len() != n) {
            return Err(SymmetryError::BadShape(n));
        }
        let is_diag = (0..n).all(|i| (0..n).all(|j| i == j || basis[i][j] == 0));
        let id: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i64).collect())
            .collect();
        if is_diag {
            let diag: Vec<i64> = (0..n).map(|i| basis[i][i].abs()).collect();
            let degenerate = diag.contains(&0);
            return Ok(Lattice {
                n,
                basis,
                u: id.clone(),
                u_inv: id,
                diag,
                degenerate,
            });
        }
        let (u, u_inv, diag) = smith(&basis);
        let degenerate = diag.contains(&0);
        Ok(Lattice {
            n,
            basis,
            u,
            u_inv,
            diag,
            degenerate,
        })
    }

    /// `N Z^n`.
    pub fn scaled(n: usize, m: i64) -> Self {
        Self::new(
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { m } else { 0 }).collect())
                .collect(),
        )
        .unwrap()
    }

    /// `L = Z^n`, the trivial quotient.
    pub fn full(n: usize) -> Self {
        Self::scaled(n, 1)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn column(&self, k: usize) -> MultiIndex {
        self.basis.iter().map(|r| r[k]).collect()
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Invariant factors used for reduction.
    pub fn box_shape(&self) -> &[i64] {
        &self.diag
    }

    pub fn quotient_order(&self) -> Option<u64> {
        if self.degenerate {
            None
        } else {
            Some(self.diag.iter().map(|&d| d as u64).product())
        }
    }

    pub fn reduce(&self, i: &[i64]) -> Result<IndexClass, SymmetryError> {
        if self.degenerate {
            return Err(SymmetryError::DegenerateLattice);
        }
        let y = mat_vec(&self.u, i);
        Ok(IndexClass(
            y.iter()
                .zip(&self.diag)
                .map(|(v, d)| v.rem_euclid(*d))
                .collect(),
        ))
    }

    /// A multi-index in the class; for diagonal bases this is the box point.
    pub fn representative(&self, c: &IndexClass) -> MultiIndex {
        mat_vec(&self.u_inv, &c.0)
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool, SymmetryError> {
        Ok(self.reduce(v)?.0.iter().all(|&x| x == 0))
    }

    /// All classes in lexicographic order of their box coordinates.
    pub fn classes(&self) -> Result<Vec<IndexClass>, SymmetryError> {
        if self.degenerate {
            return Err(SymmetryError::DegenerateLattice);
        }
        let mut out = vec![Vec::new()];
        for &d in &self.diag {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..d).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        Ok(out.into_iter().map(IndexClass).collect())
    }

    /// Integer `x` with `B x = p`, when `p` lies in the lattice.
    pub fn coordinates(&self, p: &[i64]) -> Option<Vec<i64>> {
        let a: Vec<Vec<BigInt>> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let b: Vec<BigInt> = p.iter().map(|&v| BigInt::from(v)).collect();
        let x = crate::linalg::solve_integer(&a, &b)?;
        x.iter().map(|v| v.to_i64()).collect()
    }

    pub fn check_invariant(&self, g: &PermGroup) -> Result<(), SymmetryError> {
        for e in 0..g.order() {
            for col in 0..self.n {
                if !self.contains(&g.act(e, &self.column(col)))? {
                    return Err(SymmetryError::NotInvariant { g: e, col });
                }
            }
        }
        Ok(())
    }
}

/// Smith normal form: returns `(U, U^{-1}, d)` with `U B V = diag(d)`.
fn smith(b: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<i64>) {
    let n = b.len();
    let mut a = b.to_vec();
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    let mut ui = u.clone();
    // Row ops act on U from the left, inverse ops on U^{-1} from the right.
    let row_axpy = |a: &mut Vec<Vec<i64>>,
                    u: &mut Vec<Vec<i64>>,
                    ui: &mut Vec<Vec<i64>>,
                    dst: usize,
                    src: usize,
                    q: i64| {
        for c in 0..n {
            a[dst][c] -= q * a[src][c];
            u[dst][c] -= q * u[src][c];
        }
        for r in 0..n {
            ui[r][src] += q * ui[r][dst];
        }
    };
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            for r in ui.iter_mut() {
                r.swap(t, pi);
            }
            for r in a.iter_mut() {
                r.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    row_axpy(&mut a, &mut u, &mut ui, i, t, q);
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = a[t][j].div_euclid(a[t][t]);
                for r in a.iter_mut() {
                    r[j] -= q * r[t];
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| a[i][j] % a[t][t] != 0));
            if let Some(i) = bad {
                row_axpy(&mut a, &mut u, &mut ui, t, i, -1);
                continue;
            }
            break;
        }
        if a[t][t] < 0 {
            for c in 0..n {
                a[t][c] = -a[t][c];
                u[t][c] = -u[t][c];
            }
            for r in ui.iter_mut() {
                r[t] = -r[t];
            }
        }
    }
    let d = (0..n).map(|i| a[i][i]).collect();
    (u, ui, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip_and_cycle() {
        let f = PermGroup::flip();
        assert_eq!(f.act(1, &[3, 5]), vec![5, 3]);
        let c = PermGroup::cyclic(3);
        assert_eq!(c.act(1, &[1, 0, 0]), vec![0, 1, 0]);
        assert_eq!(c.act(0, &[1, 2, 3]), vec![1, 2, 3]);
        assert_eq!(c.order(), 3);
    }

    #[test]
    fn reduction_examples() {
        let l = Lattice::scaled(2, 2);
        assert_eq!(l.reduce(&[3, 4]).unwrap(), IndexClass(vec![1, 0]));
        let l3 = Lattice::scaled(3, 3);
        assert_eq!(l3.reduce(&[3, 3, 3]).unwrap(), IndexClass(vec![0, 0, 0]));
        assert_eq!(l3.quotient_order(), Some(27));
    }

    #[test]
    fn non_diagonal_lattice() {
        // L spanned by (2,0),(1,1): index 2.
        let l = Lattice::new(vec![vec![2, 1], vec![0, 1]]).unwrap();
        assert_eq!(l.quotient_order(), Some(2));
        assert!(l.contains(&[1, 1]).unwrap());
        assert!(!l.contains(&[1, 0]).unwrap());
        for c in l.classes().unwrap() {
            assert_eq!(l.reduce(&l.representative(&c)).unwrap(), c);
        }
        assert_eq!(l.coordinates(&[3, 1]), Some(vec![1, 1]));
        assert_eq!(l.coordinates(&[1, 0]), None);
    }

    #[test]
    fn degenerate_lattice_errors() {
        let l = Lattice::new(vec![vec![1, 2], vec![2, 4]]).unwrap();
        assert!(l.is_degenerate());
        assert_eq!(l.reduce(&[0, 0]), Err(SymmetryError::DegenerateLattice));
    }
}
