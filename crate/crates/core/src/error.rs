// Copyright 2026 the minkowski-geometry Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Error type shared by all modules of the crate.

use alloc::string::String;
use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong while evaluating or integrating a norm.
///
/// Variants carry the measured quantity that triggered the failure so
/// callers can report actionable diagnostics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Structural problem with a norm specification (dimension mismatch,
    /// non-symmetric matrix, out-of-range parameter, ...).
    #[error("invalid norm spec: {0}")]
    InvalidSpec(String),

    /// A caller passed an argument outside an operation's domain
    /// (e.g. the zero vector, or an out-of-range resolution).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The fundamental tensor failed the positive-definiteness check.
    #[error("norm is not strongly convex: min eigenvalue ratio {min_eig_ratio:.3e}")]
    NotStronglyConvex { min_eig_ratio: f64 },

    /// φ(s) left its positivity domain during evaluation.
    #[error("phi domain violation: phi({s:.6}) = {phi:.6} <= 0")]
    PhiDomainViolation { s: f64, phi: f64 },

    /// Zermelo shift too large: the base norm of the shift must stay
    /// strictly below 1.
    #[error("navigation shift infeasible: F_base(U) = {f_of_shift:.12} >= 1 - 1e-10")]
    NavigationInfeasible { f_of_shift: f64 },

    /// An iterative solver ran out of iterations.
    #[error("solver failed to converge after {iterations} iterations (residual {residual:.3e})")]
    ConvergenceFailure { iterations: usize, residual: f64 },

    /// The two derivative schemes (exact jets vs Richardson-extrapolated
    /// differences) disagree beyond tolerance.
    #[error("derivative cross-validation failed: max deviation {max_dev:.3e} (tol {tol:.3e})")]
    DifferentiationFailure { max_dev: f64, tol: f64 },

    /// The chart map lost rank at the requested point.
    #[error("singular chart: tangent Gram determinant {det:.3e}")]
    SingularChart { det: f64 },

    /// Gauss–Kronecker curvature of the indicatrix must be positive.
    #[error("non-positive Gauss-Kronecker curvature: K = {k:.3e}")]
    NonPositiveCurvature { k: f64 },

    /// Section plane basis is (numerically) linearly dependent.
    #[error("degenerate section basis: Gram determinant {gram_det:.3e}")]
    DegenerateSection { gram_det: f64 },

    /// The section curve could not be realized on the shifted indicatrix.
    #[error("section misses the indicatrix")]
    SectionMisses,

    /// Grid construction is only supported in ambient dimensions 2..=4.
    #[error("unsupported dimension {dim} (supported: 2..=4)")]
    UnsupportedDimension { dim: usize },
}
