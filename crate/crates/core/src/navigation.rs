// Copyright 2026 the minkowski-geometry Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Closed forms tying navigation data to Randers norms.
//!
//! A Randers norm `F = α + β` and a pair `(h, u)` — a Euclidean base norm
//! `h` and a shift `u` with `‖u‖_h < 1` — carry the same information: `F`
//! solves the navigation problem of `(h, u)`. The conversions and the
//! closed-form determinant and mean Cartan form below give an independent
//! route to quantities the jet pipeline computes numerically, which the
//! tests exploit.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};

#[cfg(not(feature = "std"))]
use crate::float::FloatFuncs;

/// Randers data `(Q, b)` of the norm solving the navigation problem with
/// Euclidean base `h` and shift `u`:
/// `Q = h/λ + (hu)⊗(hu)/λ²`, `b = hu/λ`, `λ = 1 − ‖u‖²_h`.
pub fn randers_pair_from_navigation(h: &Mat, shift: &[f64]) -> Result<(Mat, Vec<f64>)> {
    let d = h.rows;
    let wt = h.matvec(shift);
    let norm2 = linalg::dot(&wt, shift);
    let lambda = 1.0 - norm2;
    if lambda <= 1e-10 {
        return Err(Error::NavigationInfeasible { f_of_shift: norm2.max(0.0).sqrt() });
    }
    let mut q = h.scale(1.0 / lambda);
    for i in 0..d {
        for j in 0..d {
            q[(i, j)] += wt[i] * wt[j] / (lambda * lambda);
        }
    }
    let b = linalg::scaled(&wt, 1.0 / lambda);
    Ok((q, b))
}

/// Inverse of [`randers_pair_from_navigation`]:
/// `λ = 1 − ‖b‖²_{Q⁻¹}`, `h = λ(Q − b⊗b)`, `u = h⁻¹(λb)`.
pub fn navigation_pair_from_randers(q: &Mat, b: &[f64]) -> Result<(Mat, Vec<f64>)> {
    let d = q.rows;
    let qinv = linalg::inverse(q)
        .ok_or_else(|| Error::InvalidSpec(alloc::string::String::from("singular quadratic form")))?;
    let b_norm2 = linalg::dot(&qinv.matvec(b), b);
    let lambda = 1.0 - b_norm2;
    if lambda <= 1e-10 {
        return Err(Error::InvalidSpec(alloc::format!(
            "not a positive Randers norm: ‖b‖²_{{Q⁻¹}} = {b_norm2} ≥ 1"
        )));
    }
    let mut h = Mat::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            h[(i, j)] = lambda * (q[(i, j)] - b[i] * b[j]);
        }
    }
    let hinv = linalg::inverse(&h)
        .ok_or_else(|| Error::InvalidSpec(alloc::string::String::from("degenerate base norm")))?;
    let u = hinv.matvec(&linalg::scaled(b, lambda));
    Ok((h, u))
}

/// `det g` of a Randers norm in closed form:
/// `det g = (F/α)^{dim+1} · det Q`.
pub fn randers_det_g(q: &Mat, b: &[f64], y: &[f64]) -> f64 {
    let dim = q.rows;
    let alpha = linalg::dot(&q.matvec(y), y).sqrt();
    let f = alpha + linalg::dot(b, y);
    (f / alpha).powi(dim as i32 + 1) * linalg::det(q)
}

/// Covariant mean Cartan form of a Randers norm in closed form:
/// `I_B = ((dim+1)/2) · (b_B − β (Qy)_B / α²)`.
pub fn randers_cartan_form(q: &Mat, b: &[f64], y: &[f64]) -> Vec<f64> {
    let dim = q.rows;
    let qy = q.matvec(y);
    let alpha2 = linalg::dot(&qy, y);
    let beta = linalg::dot(b, y);
    let k = 0.5 * (dim as f64 + 1.0);
    (0..dim).map(|a| k * (b[a] - beta * qy[a] / alpha2)).collect()
}
