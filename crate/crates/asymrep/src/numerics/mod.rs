//! Dense complex linear algebra for the representation layer.
//!
//! Floating point lives here and nowhere else. The key operations are the
//! operator norm (full singular-value computation for small matrices, power
//! iteration for large ones), the principal matrix logarithm (unitary
//! diagonalization for normal inputs, a power series for near-identity
//! non-normal ones), Kronecker products, and matrix exponentials. A seeded
//! harness checks the perturbation inequalities the certificates rely on.

mod eigen;
mod harness;
mod matrix;
mod random;

pub use eigen::{diagonalize_normal, hermitian_eigen};
pub use harness::{run_analytic_harness, HarnessReport, SectionReport};
pub use matrix::{ComplexMatrix, PhasePerm};
pub use random::{random_unitary, unitary_near_identity, SeededGaussian};

use thiserror::Error;

/// Tolerance for declaring a matrix unitary.
pub const UNITARITY_TOL: f64 = 1e-9;
/// Tolerance for the `exp(log(U)) = U` round trip.
pub const EXP_LOG_TOL: f64 = 1e-9;
/// Tolerance for declaring a raw pairing an integer.
pub const PAIRING_INT_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    /// The principal logarithm is undefined: the spectrum touches the closed
    /// negative real axis (for a unitary this means a point at distance 2
    /// from the identity).
    #[error("principal logarithm undefined: an eigenvalue lies on the negative real axis (nearest distance to identity {distance:.3e})")]
    TooFarFromIdentity { distance: f64 },
    /// Input is neither normal nor within the convergence radius of the
    /// logarithm power series.
    #[error("matrix is not normal (defect {defect:.3e}) and too far from the identity for the series logarithm")]
    NonNormal { defect: f64 },
    #[error("matrix is numerically singular")]
    Singular,
    #[error("iteration failed to converge: {0}")]
    NoConvergence(String),
}
