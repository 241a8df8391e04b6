//! Induced Hölder matrix norms and the matrices that attain norm-ratio bounds.
//!
//! For a matrix `A` with `n` rows and `m` columns and exponents
//! `p, q ∈ [1, ∞]`, the induced norm is
//! `‖A‖_{p,q} = max_{x≠0} ‖Ax‖_q / ‖x‖_p`. Changing the exponents to `(r, s)`
//! changes the norm by at most
//! `m^{[(1/p)−(1/r)]_+} · n^{[(1/s)−(1/q)]_+}`. This crate computes the norms
//! (exactly where possible, otherwise by certified lower bounds), evaluates
//! that bound, decides for which matrices it is attained, and builds such
//! matrices.
//!
//! Modules:
//! - [`index`], [`vector`]: exponents, ℓp norms, the K-classes of vectors.
//! - [`matrix`], [`svd`]: dense matrices and a Jacobi SVD.
//! - [`norms`]: closed forms, exact enumeration, estimator, brute-force oracle.
//! - [`bounds`]: the bound factor, duality, monotonicity, sign transfer.
//! - [`classes`]: membership in the four equality classes.
//! - [`generators`]: matrices that attain the bound.

pub mod bounds;
pub mod classes;
pub mod generators;
pub mod index;
pub mod matrix;
pub mod norms;
pub mod svd;
pub mod vector;

mod sampling;

pub use index::{ExtIndex, Sign};
pub use matrix::Matrix;
pub use norms::{Certainty, NormResult};
pub use vector::{Field, KClass, Vector};

pub use num_complex::Complex64;

/// Default relative tolerance for class and equality predicates.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Default relative tolerance when a predicate rests on an estimated norm.
pub const DEFAULT_ESTIMATE_TOL: f64 = 1e-4;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid norm exponent {0}: must lie in [1, inf]")]
    InvalidIndex(f64),
    #[error("vectors must have at least one entry")]
    EmptyVector,
    #[error("expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{what}: dimension {got} exceeds the supported limit {limit}")]
    DimensionTooLarge { what: &'static str, limit: usize, got: usize },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("vector must have unit 2-norm, got {norm}")]
    NotNormalized { norm: f64 },
    #[error("the zero vector is not allowed here")]
    ZeroVector,
    #[error("invalid singular values: {0}")]
    InvalidSigma(String),
    #[error("order {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("SVD did not converge within {sweeps} sweeps")]
    SvdNoConvergence { sweeps: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0}")]
    InvalidInput(String),
}
