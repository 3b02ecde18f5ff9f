//! Concrete algebras: finite presentations, truncated windows of the
//! infinite ones, the maps between them and the Hilbert-space model.

use crate::cohomology::{lift_commutator_form, z3_family, CocycleFamily, CohomologyError};
use crate::hopf::{Element, HopfError, HopfPresentation, Label, Sector, Tensor2};
use crate::scalar::{rat, CycloScalar, Scalar};
use crate::symmetry::{Lattice, PermGroup, SymmetryError};

pub mod commutators;
pub mod finite;
pub mod lie;
pub mod rep;
pub mod sequences;
pub mod windows;

pub use commutators::{check_unitary_commutators, check_window_commutators, CommutatorReport};
pub use finite::{
    check_flip_identifications, dual_w, dual_w_at, finite_fibration, kac_paljutkin,
    kac_paljutkin_at, w_subalgebra, Fibration,
};
pub use lie::{action_table, build_lie_elements, LieElements, LieReport};
pub use rep::{build_rep_window, RepWindow};
pub use sequences::{double_torus_sequence, z3_sequence, ExactSequence, SectorWindow};
pub use windows::{BoxIndex, DeltaWindow, DtWindow, DualUWindow, LatticeGroupWindow};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BuildError {
    #[error("N must be at least 2, got {0}")]
    SmallN(i64),
    #[error("window degree must be at least {min}, got {got}")]
    SmallWindow { got: i64, min: i64 },
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

/// `zeta_m^k`.
pub(crate) fn z(m: i64, k: i64) -> CycloScalar {
    CycloScalar::root_of_unity(m as u32, k)
}

/// The cyclic `Z_3` data on `Z^3` with `L = N Z^3`, normalized so that in the
/// sector of the generator `U^1 U^2 = q^a U^2 U^1` and `U^1 U^3 = q^b U^3 U^1`.
pub fn z3_example(n: i64, a: i64, b: i64) -> Result<(CocycleFamily, Lattice), BuildError> {
    if n < 2 {
        return Err(BuildError::SmallN(n));
    }
    let lattice = Lattice::scaled(3, n);
    let comm = z3_family(&rat(a, n), &rat(-b, n));
    Ok((lift_commutator_form(&comm, &lattice)?, lattice))
}

/// Group algebra `C G` with group-like basis and `g* = g^{-1}`.
pub fn group_algebra<S: Scalar>(g: &PermGroup) -> HopfPresentation<S> {
    let labels = (0..g.order())
        .map(|k| Label::new("g", Sector::Group(k), vec![]))
        .collect();
    HopfPresentation::from_fns(
        labels,
        |a, b| Element::basis(g.mul(a, b)),
        |a| Tensor2::basis((a, a)),
        |_| S::one(),
        |a| Element::basis(g.inv(a)),
        |a| (g.inv(a), S::one()),
        Element::basis(g.identity()),
    )
    .expect("consistent by construction")
}

/// Functions on `G` in the basis of point masses.
pub fn function_algebra<S: Scalar>(g: &PermGroup) -> HopfPresentation<S> {
    let n = g.order();
    let labels = (0..n)
        .map(|k| Label::new("δ", Sector::Group(k), vec![]))
        .collect();
    HopfPresentation::from_fns(
        labels,
        |a, b| {
            if a == b {
                Element::basis(a)
            } else {
                Element::zero()
            }
        },
        |f| Tensor2::from_terms((0..n).map(|a| ((a, g.mul(g.inv(a), f)), S::one()))),
        |a| {
            if a == g.identity() {
                S::one()
            } else {
                S::zero()
            }
        },
        |a| Element::basis(g.inv(a)),
        |a| (a, S::one()),
        Element::from_terms((0..n).map(|a| (a, S::one()))),
    )
    .expect("consistent by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{verify_hopf, VerifyMode};

    #[test]
    fn classical_controls_pass() {
        for g in [PermGroup::flip(), PermGroup::cyclic(3)] {
            assert!(verify_hopf(&group_algebra::<CycloScalar>(&g), VerifyMode::Full).passed());
            assert!(verify_hopf(&function_algebra::<CycloScalar>(&g), VerifyMode::Full).passed());
        }
    }
}
