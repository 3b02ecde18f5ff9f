//! Group commutators of the unitaries `U^v = Σ_g U^v_g`.
//!
//! `(U^m)*(U^n)* U^m U^n = Σ_g e^{2πi(θ_g(m,n) - θ_g(n,m))} U^0_g`, which is
//! `Σ_g e^{4πiθ_g(m,n)} U^0_g` for an antisymmetric family.

use serde::Serialize;

use super::finite::Fibration;
use super::windows::DualUWindow;
use super::BuildError;
use crate::cohomology::CocycleFamily;
use crate::hopf::{format_element, mul, star, AxiomCheck, Element, HopfAlgebra, Overflow, Witness};
use crate::scalar::CycloScalar;
use crate::symmetry::Lattice;

#[derive(Debug, Clone, Serialize)]
pub struct CommutatorPair {
    pub m: Vec<i64>,
    pub n: Vec<i64>,
    /// Phase on each sector `U^0_g`.
    pub phases: Vec<CycloScalar>,
    pub check: AxiomCheck,
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutatorReport {
    pub pairs: Vec<CommutatorPair>,
}

impl CommutatorReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.check.passed())
    }
}

fn unit_vectors(rank: usize) -> Vec<Vec<i64>> {
    (0..rank)
        .map(|k| (0..rank).map(|j| (j == k) as i64).collect())
        .collect()
}

fn run(
    h: &dyn HopfAlgebra<CycloScalar>,
    theta: &CocycleFamily,
    vectors: &[Vec<i64>],
    generator: &dyn Fn(usize, &[i64]) -> Result<usize, Overflow>,
) -> Result<CommutatorReport, Overflow> {
    let order = theta.group.order();
    let zero = vec![0; theta.rank()];
    let u = |v: &[i64]| -> Result<Element<CycloScalar>, Overflow> {
        (0..order)
            .map(|g| Ok((generator(g, v)?, num_traits::One::one())))
            .collect()
    };
    let mut pairs = Vec::new();
    for (a, m) in vectors.iter().enumerate() {
        for n in &vectors[a + 1..] {
            let (um, un) = (u(m)?, u(n)?);
            let mut lhs = mul(h, &star(h, &um)?, &star(h, &un)?)?;
            lhs = mul(h, &lhs, &um)?;
            lhs = mul(h, &lhs, &un)?;
            let phases: Vec<CycloScalar> = (0..order)
                .map(|g| theta.alpha(g, m, n) * theta.alpha(g, n, m).conj())
                .collect();
            let mut rhs = Element::zero();
            for (g, p) in phases.iter().enumerate() {
                rhs.add_term(generator(g, &zero)?, p.clone());
            }
            let check = AxiomCheck::from_bool(
                &format!("commutator of U^{m:?}, U^{n:?}"),
                lhs == rhs,
                1,
                || Witness {
                    tuple: vec![format!("{m:?}"), format!("{n:?}")],
                    residual: format_element(h, &lhs.minus(&rhs)),
                },
            );
            pairs.push(CommutatorPair {
                m: m.clone(),
                n: n.clone(),
                phases,
                check,
            });
        }
    }
    Ok(CommutatorReport { pairs })
}

/// Commutators of the standard generators in `F^L_G`.
pub fn check_unitary_commutators(
    theta: &CocycleFamily,
    lattice: &Lattice,
) -> Result<CommutatorReport, BuildError> {
    let f = Fibration::new(theta, lattice)?;
    let h = super::finite_fibration(theta, lattice)?;
    let gen = |g: usize, v: &[i64]| Ok(f.index(g, f.class_of(v)));
    run(&h, theta, &unit_vectors(theta.rank()), &gen).map_err(|o| BuildError::Hopf(o.into()))
}

/// Commutators of the standard generators in a window of `U_G`.
pub fn check_window_commutators(w: &DualUWindow) -> Result<CommutatorReport, BuildError> {
    let gen = |g: usize, v: &[i64]| w.index(g, v);
    run(w, w.theta(), &unit_vectors(w.theta().rank()), &gen).map_err(|o| BuildError::Hopf(o.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::z;
    use crate::cohomology::{flip_family, lift_commutator_form, z3_family};
    use crate::scalar::rat;
    use crate::symmetry::PermGroup;
    use num_traits::One;

    #[test]
    fn trivial_cocycle_commutes() {
        let theta = CocycleFamily::zero(&PermGroup::cyclic(3));
        let r = check_unitary_commutators(&theta, &Lattice::scaled(3, 2)).unwrap();
        assert!(r.passed());
        assert!(r.pairs.iter().all(|p| p.phases.iter().all(|c| c.is_one())));
    }

    #[test]
    fn double_torus_pattern() {
        // sector e: 1, sector σ: q²
        for n in [3, 5] {
            let r = check_unitary_commutators(&flip_family(&rat(1, n)), &Lattice::scaled(2, n))
                .unwrap();
            assert!(r.passed());
            assert_eq!(r.pairs[0].phases, vec![CycloScalar::one(), z(n, 2)]);
        }
    }

    #[test]
    fn z3_sectors() {
        let lattice = Lattice::scaled(3, 3);
        let theta = lift_commutator_form(&z3_family(&rat(1, 3), &rat(0, 1)), &lattice).unwrap();
        let r = check_unitary_commutators(&theta, &lattice).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.pairs.len(), 3);
        let w = DualUWindow::new(&theta, 2).unwrap();
        let rw = check_window_commutators(&w).unwrap();
        assert!(rw.passed());
        for (p, q) in r.pairs.iter().zip(&rw.pairs) {
            assert_eq!(p.phases, q.phases);
        }
    }
}
