//! Chern-connection invariants of left-invariant Hermitian structures on Lie
//! algebras, computed from structure constants.
//!
//! - [`algebra`]: real and complex presentations, frames, `complexify`/`realify`.
//! - [`checks`]: Jacobi, integrability, Bianchi, unimodularity, series, pure types.
//! - [`chern`]: torsion, curvature, holomorphic sectional curvature, forms path.
//! - [`admissible`]: admissible frames and the theorem verifier.
//! - [`catalog`]: example families and seeded samplers.
//! - [`io`]: file format and reports.

pub mod admissible;
pub mod algebra;
pub mod catalog;
pub mod checks;
pub mod chern;
pub mod error;
pub mod forms;
pub mod io;
pub mod linalg;
pub mod tensor;

pub use algebra::{
    build_unitary_frame, change_frame, complexify, realify, ComplexPresentation, CurvatureTensor, Frame,
    HermitianStructure, Instance, RealLieAlgebra, TorsionTensor, DEFAULT_TOL,
};
pub use error::{Error, Precondition, Result};
pub use tensor::{Tensor3, Tensor4, C64};

/// Tolerances for structural predicates and for flatness.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerances {
    /// Jacobi, integrability, admissibility and diagonalization residuals.
    pub structural: f64,
    /// Curvature, constant-H deviation and the constant `c`.
    pub flat: f64,
}

impl Tolerances {
    pub const STRUCTURAL: f64 = 1e-8;
    pub const FLAT: f64 = 1e-9;

    /// Both tolerances set to `tol`.
    pub fn uniform(tol: f64) -> Self {
        Self {
            structural: tol,
            flat: tol,
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            structural: Self::STRUCTURAL,
            flat: Self::FLAT,
        }
    }
}
