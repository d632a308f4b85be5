// Copyright 2026 the minkowski-geometry Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! The indicatrix `M = {F = 1}` as a parametrized hypersurface.
//!
//! Every local computation happens in a chart `θ ↦ r(θ) = w(θ)/F(w(θ))`,
//! `w(θ) = u + θ^i t_i`, where `u` is a unit direction and `{t_i}` an
//! orthonormal frame of its Euclidean orthogonal complement. At `θ = 0`
//! this chart is tangent to the usual sphere chart to first order, so
//! quadrature weights on the unit sphere transfer to the indicatrix with
//! the single factor `√det⟨E_i, E_j⟩`.
//!
//! Quadrature grids live here too: uniform on the circle, Gauss–Legendre ×
//! uniform on S², and a Gauss-type rule for the sin² weight × an S² grid on
//! S³. All nodes avoid the chart poles.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::jet::{Jet, JetShape, Scalar};
use crate::linalg::{self, Mat};
use crate::norm::NormSpec;

#[cfg(not(feature = "std"))]
use crate::float::FloatFuncs;

/// Nodes and weights of the `m`-point Gauss–Legendre rule on `[−1, 1]`,
/// computed by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    use core::f64::consts::PI;
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for k in 0..m {
        let mut x = (PI * (k as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_m(x) and its derivative by upward recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for j in 2..=m {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[k] = x;
        weights[k] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    // The recurrence enumerates from the positive end; sort ascending.
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}

/// Surface area of the Euclidean unit sphere `S^{dim−1}`.
pub fn sphere_area(dim: usize) -> f64 {
    use core::f64::consts::PI;
    match dim {
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        4 => 2.0 * PI * PI,
        _ => panic!("unsupported dimension {dim}"),
    }
}

/// Quadrature grid on the Euclidean unit sphere `S^{dim−1}`.
#[derive(Debug, Clone)]
pub struct SphereGrid {
    pub dim: usize,
    pub resolution: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl SphereGrid {
    /// `resolution` scales every angular direction: the circle gets
    /// `4·resolution` nodes, S² a `resolution × 2·resolution` product rule,
    /// S³ an extra `resolution`-point rule for the polar angle.
    pub fn new(dim: usize, resolution: usize) -> Result<SphereGrid> {
        use core::f64::consts::PI;
        let res = resolution.max(2);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        match dim {
            2 => {
                let m = 4 * res;
                let w = 2.0 * PI / m as f64;
                for k in 0..m {
                    let t = 2.0 * PI * (k as f64 + 0.5) / m as f64;
                    nodes.push(vec![t.cos(), t.sin()]);
                    weights.push(w);
                }
            }
            3 => {
                let (zs, wzs) = gauss_legendre(res);
                let m_phi = 2 * res;
                let w_phi = 2.0 * PI / m_phi as f64;
                for (z, wz) in zs.iter().zip(&wzs) {
                    let st = (1.0 - z * z).sqrt();
                    for k in 0..m_phi {
                        let phi = 2.0 * PI * (k as f64 + 0.5) / m_phi as f64;
                        nodes.push(vec![st * phi.cos(), st * phi.sin(), *z]);
                        weights.push(wz * w_phi);
                    }
                }
            }
            4 => {
                // Gauss–Chebyshev (second kind) handles the sin²ψ factor of
                // dV(S³) = sin²ψ dψ dV(S²) exactly.
                let inner = SphereGrid::new(3, res)?;
                let m_psi = res;
                for k in 1..=m_psi {
                    let psi = PI * k as f64 / (m_psi + 1) as f64;
                    let (sp, cp) = (psi.sin(), psi.cos());
                    let w_psi = PI / (m_psi + 1) as f64 * sp * sp;
                    for (node, w) in inner.nodes.iter().zip(&inner.weights) {
                        nodes.push(vec![sp * node[0], sp * node[1], sp * node[2], cp]);
                        weights.push(w_psi * w);
                    }
                }
            }
            _ => return Err(Error::UnsupportedDimension { dim }),
        }
        Ok(SphereGrid { dim, resolution: res, nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// A chart base point with an orthonormal tangent frame.
#[derive(Debug, Clone)]
pub struct Chart {
    /// Euclidean-unit base direction `u`.
    pub base: Vec<f64>,
    /// Orthonormal basis `{t_i}` of `u^⊥`, `dim − 1` vectors.
    pub frame: Vec<Vec<f64>>,
}

impl Chart {
    /// Deterministic frame completion: coordinate axes least aligned with
    /// `u`, Gram–Schmidt orthonormalized.
    pub fn standard(direction: &[f64]) -> Chart {
        let norm = linalg::norm2(direction);
        assert!(norm > 0.0, "chart direction must be nonzero");
        let base: Vec<f64> = direction.iter().map(|v| v / norm).collect();
        let d = base.len();
        let mut axes: Vec<usize> = (0..d).collect();
        axes.sort_by(|&a, &b| {
            base[a].abs().partial_cmp(&base[b].abs()).unwrap().then(a.cmp(&b))
        });
        let mut frame: Vec<Vec<f64>> = Vec::with_capacity(d - 1);
        for &ax in axes.iter().take(d - 1) {
            let mut v = vec![0.0; d];
            v[ax] = 1.0;
            linalg::axpy(-base[ax], &base, &mut v);
            for t in &frame {
                let proj = linalg::dot(&v, t);
                linalg::axpy(-proj, t, &mut v);
            }
            let n = linalg::norm2(&v);
            frame.push(linalg::scaled(&v, 1.0 / n));
        }
        Chart { base, frame }
    }

    /// The standard chart with its first two frame vectors rotated by
    /// `angle` (sign-flipped first vector on a 1-dimensional frame); used
    /// to verify that chart-dependent intermediates produce
    /// chart-independent invariants.
    pub fn rotated(direction: &[f64], angle: f64) -> Chart {
        let mut chart = Chart::standard(direction);
        if chart.frame.len() == 1 {
            chart.frame[0] = linalg::scaled(&chart.frame[0], -1.0);
        } else {
            let (c, s) = (angle.cos(), angle.sin());
            let t0 = chart.frame[0].clone();
            let t1 = chart.frame[1].clone();
            for a in 0..t0.len() {
                chart.frame[0][a] = c * t0[a] + s * t1[a];
                chart.frame[1][a] = -s * t0[a] + c * t1[a];
            }
        }
        chart
    }

    /// The chart map `w(θ) = u + θ^i t_i` as jets of truncation `order`.
    pub fn w_jets(&self, order: usize) -> Vec<Jet<f64>> {
        let n = self.frame.len();
        let shape = JetShape::new(n, order);
        (0..self.base.len())
            .map(|a| {
                let seeds: Vec<f64> = self.frame.iter().map(|t| t[a]).collect();
                Jet::affine(&shape, self.base[a], &seeds)
            })
            .collect()
    }
}

/// Pointwise extrinsic and metric data of the indicatrix at a chart base
/// point: everything needed for curvature integrals and their cross-checks.
#[derive(Debug, Clone)]
pub struct SurfaceSample {
    /// `r = u/F(u)`, the surface point.
    pub point: Vec<f64>,
    /// `E_i = ∂r/∂θ^i` at `θ = 0`.
    pub tangents: Vec<Vec<f64>>,
    /// Euclidean Gram matrix `⟨E_i, E_j⟩`.
    pub gram: Mat,
    pub det_gram: f64,
    /// Outward Euclidean unit normal `∇F/|∇F|`.
    pub normal: Vec<f64>,
    /// Support value `⟨r, ν⟩ > 0`.
    pub support: f64,
    /// Second fundamental form `−⟨∂²r, ν⟩` (positive definite on a
    /// strongly convex indicatrix).
    pub second_fundamental: Mat,
    /// Gauss–Kronecker curvature `det II / det ⟨E, E⟩`.
    pub gauss_curvature: f64,
    /// Pullback `h_ij = h_AB E_i^A E_j^B` of the angular metric.
    pub h_pullback: Mat,
    pub det_h: f64,
}

/// Evaluate the chart of `spec` at `chart.base` through order-2 jets.
pub fn sample_surface(spec: &NormSpec, chart: &Chart) -> Result<SurfaceSample> {
    let d = spec.dim;
    let n = d - 1;
    let w = chart.w_jets(2);
    let f2 = spec.f2_s(&w);
    if !(*f2.value() > 0.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "norm is not positive at the chart base point (F² = {})",
            f2.value()
        )));
    }
    let inv_f = f2.powf(-0.5);
    let r: Vec<Jet<f64>> = w.iter().map(|wa| wa.mul(&inv_f)).collect();

    let point: Vec<f64> = r.iter().map(|ra| *ra.value()).collect();
    let tangents: Vec<Vec<f64>> =
        (0..n).map(|i| r.iter().map(|ra| ra.d1(i)).collect()).collect();
    let gram = linalg::gram(&tangents);
    let det_gram = linalg::det(&gram);
    if det_gram <= 0.0 {
        return Err(Error::SingularChart { det: det_gram });
    }

    // Outward normal from the ambient gradient (0-homogeneous, so the base
    // direction works in place of the surface point).
    let grad = spec.gradient(&chart.base);
    let grad_norm = linalg::norm2(&grad);
    let normal = linalg::scaled(&grad, 1.0 / grad_norm);
    let support = linalg::dot(&point, &normal);

    let mut second_fundamental = Mat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut acc = 0.0;
            for (a, ra) in r.iter().enumerate() {
                acc += ra.d2(i, j) * normal[a];
            }
            second_fundamental[(i, j)] = -acc;
            second_fundamental[(j, i)] = -acc;
        }
    }
    let gauss_curvature = linalg::det(&second_fundamental) / det_gram;
    if gauss_curvature <= 0.0 {
        return Err(Error::NonPositiveCurvature { k: gauss_curvature });
    }

    // Angular metric pulled back along the tangents. g and ℓ are
    // 0-homogeneous, so the jet at the base direction suffices.
    let jet = spec.jet2(&chart.base);
    let f = jet.value().sqrt();
    let mut h_ab = Mat::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            h_ab[(a, b)] = 0.5 * jet.d2(a, b)
                - jet.d1(a) / (2.0 * f) * (jet.d1(b) / (2.0 * f));
        }
    }
    let mut h_pullback = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for a in 0..d {
                for b in 0..d {
                    acc += h_ab[(a, b)] * tangents[i][a] * tangents[j][b];
                }
            }
            h_pullback[(i, j)] = acc;
        }
    }
    let det_h = linalg::det(&h_pullback);

    Ok(SurfaceSample {
        point,
        tangents,
        gram,
        det_gram,
        normal,
        support,
        second_fundamental,
        gauss_curvature,
        h_pullback,
        det_h,
    })
}

/// Connection coefficients of the position-vector decomposition
/// `∂²_{ij} r = Γ^k_{ij} E_k − ĥ_{ij} r` (the centro-affine connection of
/// the indicatrix), along with the metric `ĥ` the decomposition induces —
/// an independent route to the angular metric pullback.
#[derive(Debug, Clone)]
pub struct CentroAffineData {
    /// `Γ^k_{ij}` flattened as `(i·n + j)·n + k`.
    pub gamma: Vec<f64>,
    pub h_from_decomposition: Mat,
}

pub fn centro_affine_connection(spec: &NormSpec, chart: &Chart) -> Result<CentroAffineData> {
    let d = spec.dim;
    let n = d - 1;
    let w = chart.w_jets(2);
    let f2 = spec.f2_s(&w);
    let inv_f = f2.powf(-0.5);
    let r: Vec<Jet<f64>> = w.iter().map(|wa| wa.mul(&inv_f)).collect();

    // Columns E_1 … E_n, r.
    let mut p = Mat::zeros(d, d);
    for a in 0..d {
        for i in 0..n {
            p[(a, i)] = r[a].d1(i);
        }
        p[(a, n)] = *r[a].value();
    }
    let det = linalg::det(&p);
    if det.abs() < 1e-12 {
        return Err(Error::SingularChart { det });
    }
    let pinv = linalg::inverse(&p).expect("transversal chart basis");

    let mut gamma = vec![0.0; n * n * n];
    let mut h = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let rhs: Vec<f64> = (0..d).map(|a| r[a].d2(i, j)).collect();
            let x = pinv.matvec(&rhs);
            for k in 0..n {
                gamma[(i * n + j) * n + k] = x[k];
            }
            h[(i, j)] = -x[n];
        }
    }
    Ok(CentroAffineData { gamma, h_from_decomposition: h })
}
