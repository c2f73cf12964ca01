//! Numerical symplectic and contact geometry in `C^n`.
//!
//! Points and tangent vectors are complex vectors; a real vector with
//! coordinates `(x_1, y_1, ..., x_n, y_n)` is the complex vector with
//! entries `x_k + i y_k`. With that packing `omega(u, v) = Im <u, v>`,
//! `lambda_p(v) = omega(p, v) / 2` and `Omega(u_1..u_n) = det[u_1..u_n]`.

mod forms;
mod hermquad;
mod loops;

use thiserror::Error;

use crate::cxmat::CxError;

pub use forms::{
    isotropy_residual, legendrian_residual, phase, phase_with_tol, AmbientForms, TOL_GEOMETRY,
};
pub use hermquad::{
    fu_condition_residual, fu_exterior_derivative, hamiltonian_field, harmonic_basis,
    sl_moment_residuals, Hamiltonian, HermQuad, HermitianQuadratic, MomentResidual, SurfaceSample,
};
pub use loops::{
    curve_liouville_integral, loop_liouville_integral, maslov_index, maslov_index_adaptive,
    LiouvilleIntegral, LoopTrace, EXACT_FLOOR, MAX_LOOP_SAMPLES, MIN_LOOP_SAMPLES,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymplecticError {
    #[error("loop is not closed (gap {gap:e})")]
    NotClosed { gap: f64 },
    #[error("frame is not Lagrangian (isotropy residual {residual:e})")]
    NotLagrangian { residual: f64 },
    #[error("point is not on the unit sphere (|p| = {norm})")]
    NotOnSphere { norm: f64 },
    #[error("phase jumps by {jump} at sample {index}")]
    PhaseJump { index: usize, jump: f64 },
    #[error("phase steps still reach pi/2 at {samples} samples")]
    RefinementExhausted { samples: usize },
    #[error("need a multiple of 4 and at least {min} intervals, got {found}")]
    TooFewSamples { found: usize, min: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("quadratic part is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("quadratic part has trace {trace:e}, expected 0")]
    NotTraceless { trace: f64 },
    #[error(transparent)]
    Linear(#[from] CxError),
}
