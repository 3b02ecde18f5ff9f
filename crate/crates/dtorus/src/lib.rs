//! Exact construction and verification of quantum double tori, their finite
//! Kac-Paljutkin fibrations and the dual Hopf algebras.
//!
//! Algebraic code is generic over [`scalar::Scalar`]; the aliases below fix
//! the exact cyclotomic field and its complex embedding.

pub mod acceptance;
pub mod builders;
pub mod cli;
pub mod cohomology;
pub mod duality;
pub mod hopf;
pub mod linalg;
pub mod scalar;
pub mod structure;
pub mod symmetry;

pub use scalar::{CycloScalar, Rational, Scalar};

/// A finite presentation over `Q(zeta_M)`.
pub type Presentation = hopf::HopfPresentation<CycloScalar>;
/// A finite presentation with floating point constants.
pub type ComplexPresentation = hopf::HopfPresentation<num_complex::Complex64>;
/// An exact element in the basis of a presentation.
pub type ExactElement = hopf::Element<CycloScalar>;
/// An exact element of `H ⊗ H`.
pub type ExactTensor = hopf::Tensor2<CycloScalar>;
pub type ExactAlgebra = structure::Algebra<CycloScalar>;
