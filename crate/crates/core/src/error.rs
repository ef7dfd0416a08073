use thiserror::Error;

use crate::admissible::ViolationDiagnostics;
use crate::catalog::ConstraintReport;

/// Which precondition of an admissible-frame check failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Precondition {
    NotALieAlgebra,
    NotIntegrable,
    NotSolvable,
    CommutatorNotComplex,
    CommutatorDimension,
    NotAdmissible,
    NotConstantH,
    NonzeroConstant,
    NotChernFlat,
    GoalVanishing,
}

impl std::fmt::Display for Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Precondition::NotALieAlgebra => "not a Lie algebra",
            Precondition::NotIntegrable => "complex structure not integrable",
            Precondition::NotSolvable => "algebra not solvable",
            Precondition::CommutatorNotComplex => "commutator is not J-invariant",
            Precondition::CommutatorDimension => "r does not match the commutator dimension",
            Precondition::NotAdmissible => "frame is not admissible",
            Precondition::NotConstantH => "holomorphic sectional curvature not constant",
            Precondition::NonzeroConstant => "constant holomorphic sectional curvature is nonzero",
            Precondition::NotChernFlat => "Chern curvature does not vanish",
            Precondition::GoalVanishing => "D-tensor vanishings fail",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    TypeMismatch(String),
    #[error("structure constants are not antisymmetric (residual {residual:e})")]
    NotAntisymmetric { residual: f64 },
    #[error("J is not an almost complex structure: |J^2 + I| = {residual:e}")]
    NotAlmostComplex { residual: f64 },
    #[error("metric is not symmetric positive definite")]
    MetricNotSPD,
    #[error("metric is not J-compatible: |J^T g J - g| = {residual:e}")]
    MetricNotCompatible { residual: f64 },
    #[error("frame is not a unitary (1,0)-frame (residual {residual:e})")]
    FrameNotUnitary { residual: f64 },
    #[error("flag member {index} is not J-invariant")]
    FlagNotJInvariant { index: usize },
    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("not a Lie algebra: Jacobi defect {defect:e}")]
    NotALieAlgebra { defect: f64 },
    #[error("complex structure is not integrable: Nijenhuis defect {defect:e}")]
    NotIntegrable { defect: f64 },
    #[error("commutator is not J-invariant")]
    CommutatorNotComplex,
    #[error("commutator restricted to the first {r} frame vectors is not nilpotent")]
    NotNilpotentCommutator { r: usize },
    #[error("no admissible frame found (best residual {residual:e})")]
    AdmissibleFrameNotFound { residual: f64 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(Precondition),
    #[error("simultaneous diagonalization failed (residual {residual:e})")]
    DiagonalizationFailed { residual: f64 },
    #[error("holomorphic sectional curvature of the zero vector")]
    ZeroVector,
    #[error("parameter {index} must be nonzero")]
    ZeroParameter { index: usize },
    #[error("row {row} of the parameter arrays is degenerate")]
    DegenerateRow { row: usize },
    #[error("Jacobi identity fails (defect {:e})", .0.defect)]
    JacobiViolation(Box<ConstraintReport>),
    #[error("constant holomorphic sectional curvature without Chern flatness: {0}")]
    TheoremViolationCandidate(Box<ViolationDiagnostics>),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation failed at `{field}`: {invariant}")]
    Validation { field: String, invariant: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
