// Copyright 2026 the minkowski Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Equiaffine (Blaschke) structure of the unit level set: the Blaschke
//! metric, the affine normal field, the cubic form, the shape operator, and
//! the affine principal/mean curvatures derived from it.
//!
//! Everything at a chart point comes out of one nested-jet evaluation:
//! ambient derivatives of `F²` to third order, each coefficient itself a
//! second-order jet in the chart variables. That makes chart derivatives of
//! composite fields (the pullback metric, the mean Cartan form, the affine
//! normal) exact, which matters because the shape operator consumes them at
//! full third-derivative depth.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
#[cfg(not(feature = "std"))]
use crate::float::FloatFuncs;
use crate::indicatrix::{sample_surface, Chart, SurfaceSample};
use crate::jet::{adjugate_s, det_s, Jet, JetShape, Scalar};
use crate::linalg::{self, Mat};
use crate::norm::{MatsumotoCoeff, NormSpec};

/// Pointwise Blaschke data of the unit level set at a chart base point.
#[derive(Debug, Clone)]
pub struct BlaschkeSample {
    /// Euclidean extrinsic data at the same point.
    pub surface: SurfaceSample,
    /// Ambient fundamental determinant at the point.
    pub det_g: f64,
    /// Conformal factor `φ = (det g/σ²)^{1/(n+2)}`; the Blaschke metric is
    /// `G = h/φ` and the affine normal is `−φ(y + κ h*I)`.
    pub phi: f64,
    /// Blaschke metric `G_ij` in the chart.
    pub metric: Mat,
    pub det_metric: f64,
    /// Affine normal, ambient components.
    pub xi: Vec<f64>,
    /// `∂ξ/∂θ^i`, ambient components, one row per chart direction.
    pub dxi: Vec<Vec<f64>>,
    /// Pullback `I_i` of the mean Cartan form.
    pub cartan_form_pullback: Vec<f64>,
    /// Shape operator `s_i^j` (row `i`, column `j`), defined by
    /// `∂ξ/∂θ^i = −s_i^j ∂r/∂θ^j`.
    pub shape_operator: Mat,
    /// Eigenvalues of the shape operator (affine principal curvatures),
    /// ascending.
    pub principal_curvatures: Vec<f64>,
    /// Normalized elementary symmetric means `L_1 … L_n` of the principal
    /// curvatures; `L_n` is also `det(s)`.
    pub mean_curvatures: Vec<f64>,
    /// Cubic form `C_ijk = 2φ·M_ijk` in the chart, flattened as
    /// `(i·n + j)·n + k`.
    pub cubic: Vec<f64>,
    /// `max |∂ξ/∂θ^i + s_i^j ∂r/∂θ^j|`: how well the closed-form shape
    /// operator reproduces the actual derivative of the affine normal.
    pub equiaffine_defect: f64,
    /// Asymmetry of `s·h` (the operator is h-self-adjoint in exact
    /// arithmetic), reported as a numerical diagnostic.
    pub symmetrization_defect: f64,
}

impl BlaschkeSample {
    /// `√det G`: Blaschke area per unit chart volume.
    pub fn area_weight(&self) -> f64 {
        self.det_metric.sqrt()
    }

    pub fn max_abs_cubic(&self) -> f64 {
        self.cubic.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// `C(v, v, v)` for chart components `v`.
    pub fn cubic_eval(&self, v: &[f64]) -> f64 {
        let n = self.metric.rows;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    acc += self.cubic[(i * n + j) * n + k] * v[i] * v[j] * v[k];
                }
            }
        }
        acc
    }

    /// `C(T, T, T)` for an ambient direction `T` tangent to the level set,
    /// normalized to unit Blaschke length. Returns `None` when `T` is not
    /// resolvable in the tangent frame.
    pub fn cubic_in_ambient_direction(&self, t: &[f64]) -> Option<f64> {
        let n = self.metric.rows;
        let d = t.len();
        // Least squares of T against the tangent frame.
        let mut frame = Mat::zeros(d, n);
        for (i, e) in self.surface.tangents.iter().enumerate() {
            for a in 0..d {
                frame[(a, i)] = e[a];
            }
        }
        let v = linalg::lstsq(&frame, t);
        // Reject directions with a large normal component.
        let mut residual = 0.0f64;
        for a in 0..d {
            let mut pa = 0.0;
            for i in 0..n {
                pa += frame[(a, i)] * v[i];
            }
            residual = residual.max((pa - t[a]).abs());
        }
        let scale = linalg::norm2(t);
        if residual > 1e-8 * scale.max(1.0) {
            return None;
        }
        let mut g_len = 0.0;
        for i in 0..n {
            for j in 0..n {
                g_len += self.metric[(i, j)] * v[i] * v[j];
            }
        }
        if !(g_len > 0.0) {
            return None;
        }
        let inv = g_len.sqrt().recip();
        let unit: Vec<f64> = v.iter().map(|c| c * inv).collect();
        Some(self.cubic_eval(&unit))
    }
}

/// Compute the full Blaschke structure at a chart base point. `sigma` is the
/// volume normalization of the norm (see `volumes::sigma_f`); `coeff` picks
/// the trace coefficient used for the Matsumoto torsion inside the cubic
/// form.
pub fn blaschke_at(
    spec: &NormSpec,
    chart: &Chart,
    sigma: f64,
    coeff: MatsumotoCoeff,
) -> Result<BlaschkeSample> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "volume scale must be positive (got {sigma})"
        )));
    }
    let d = spec.dim;
    let n = d - 1;
    let nf = n as f64;
    let kappa = 2.0 / (nf + 2.0);

    let surface = sample_surface(spec, chart)?;

    // One nested evaluation: ambient order 3, chart order 2.
    let outer = JetShape::new(d, 3);
    let w = chart.w_jets(2);
    let y: Vec<Jet<Jet<f64>>> =
        (0..d).map(|a| Jet::variable(&outer, a, w[a].clone())).collect();
    let f2n = spec.f2_s(&y);

    // θ-dependent ambient tensors (inner jets).
    let f2t = f2n.value().clone();
    if !(*f2t.value() > 0.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "norm is not positive at the chart base point (F² = {})",
            f2t.value()
        )));
    }
    let ft = f2t.sqrt();
    let inv_2f = ft.scale(2.0).recip();

    let d1: Vec<Jet<f64>> = (0..d).map(|a| f2n.d1(a)).collect();
    let mut g_t = vec![vec![f2t.zero_like(); d]; d];
    let mut h_t = vec![vec![f2t.zero_like(); d]; d];
    let mut ell_t = vec![f2t.zero_like(); d];
    for a in 0..d {
        ell_t[a] = d1[a].mul(&inv_2f);
    }
    for a in 0..d {
        for b in a..d {
            let gab = f2n.d2(a, b).scale(0.5);
            h_t[a][b] = gab.sub(&ell_t[a].mul(&ell_t[b]));
            h_t[b][a] = h_t[a][b].clone();
            g_t[a][b] = gab.clone();
            g_t[b][a] = gab;
        }
    }
    // Cartan torsion A_abc = (F/4)·∂³F², symmetric; computed once per
    // ordered triple.
    let f_quarter = ft.scale(0.25);
    let mut cartan_t = vec![f2t.zero_like(); d * d * d];
    for a in 0..d {
        for b in a..d {
            for c in b..d {
                let v = f2n.d3(a, b, c).mul(&f_quarter);
                for (p, q, s) in [
                    (a, b, c),
                    (a, c, b),
                    (b, a, c),
                    (b, c, a),
                    (c, a, b),
                    (c, b, a),
                ] {
                    cartan_t[(p * d + q) * d + s] = v.clone();
                }
            }
        }
    }

    let det_g_t = det_s(&g_t);
    if !(*det_g_t.value() > 0.0) {
        return Err(Error::NotStronglyConvex { min_eig_ratio: *det_g_t.value() });
    }
    let adj = adjugate_s(&g_t);
    let inv_det = det_g_t.recip();
    let mut ginv_t = vec![vec![f2t.zero_like(); d]; d];
    for a in 0..d {
        for b in 0..d {
            ginv_t[a][b] = adj[a][b].mul(&inv_det);
        }
    }
    // Mean Cartan form I_a = g^{bc} A_abc.
    let mut cartan_form_t = vec![f2t.zero_like(); d];
    for a in 0..d {
        let mut acc = f2t.zero_like();
        for b in 0..d {
            for c in 0..d {
                acc = acc.add(&ginv_t[b][c].mul(&cartan_t[(a * d + b) * d + c]));
            }
        }
        cartan_form_t[a] = acc;
    }

    // Surface point and conformal factor as θ-functions.
    let inv_f = f2t.powf(-0.5);
    let r_t: Vec<Jet<f64>> = w.iter().map(|wa| wa.mul(&inv_f)).collect();
    let phi_t = det_g_t.scale(1.0 / (sigma * sigma)).powf(1.0 / (nf + 2.0));

    // Affine normal ξ = −φ(y + κ h*I) with the angular pseudo-inverse
    // h* = g⁻¹ − y⊗y/F² (so h*I is tangent because I·y = 0).
    let inv_f2 = f2t.recip();
    let mut xi_t = Vec::with_capacity(d);
    for a in 0..d {
        let mut corr = f2t.zero_like();
        for b in 0..d {
            let hstar_ab = ginv_t[a][b].sub(&w[a].mul(&w[b]).mul(&inv_f2));
            corr = corr.add(&hstar_ab.mul(&cartan_form_t[b]));
        }
        let total = r_t[a].add(&corr.scale(kappa));
        xi_t.push(total.mul(&phi_t).neg());
    }
    let xi: Vec<f64> = xi_t.iter().map(|x| *x.value()).collect();
    let dxi: Vec<Vec<f64>> = (0..n)
        .map(|i| xi_t.iter().map(|x| *x.derivative(i).value()).collect())
        .collect();

    // Chart pullbacks as θ-functions (valid to first order, which is all
    // the Christoffel symbols need).
    let e_t: Vec<Vec<Jet<f64>>> =
        (0..n).map(|i| r_t.iter().map(|ra| ra.derivative(i)).collect()).collect();
    let mut h_pull_t = vec![vec![f2t.zero_like(); n]; n];
    for i in 0..n {
        for j in i..n {
            let mut acc = f2t.zero_like();
            for a in 0..d {
                for b in 0..d {
                    acc = acc.add(&h_t[a][b].mul(&e_t[i][a]).mul(&e_t[j][b]));
                }
            }
            h_pull_t[i][j] = acc.clone();
            h_pull_t[j][i] = acc;
        }
    }
    let mut i_pull_t = vec![f2t.zero_like(); n];
    for i in 0..n {
        let mut acc = f2t.zero_like();
        for a in 0..d {
            acc = acc.add(&cartan_form_t[a].mul(&e_t[i][a]));
        }
        i_pull_t[i] = acc;
    }

    // Values at θ = 0.
    let phi = *phi_t.value();
    let det_g = *det_g_t.value();
    let mut h_pull = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            h_pull[(i, j)] = *h_pull_t[i][j].value();
        }
    }
    let hinv = linalg::inverse(&h_pull)
        .ok_or(Error::SingularChart { det: linalg::det(&h_pull) })?;
    let i_pull: Vec<f64> = i_pull_t.iter().map(|v| *v.value()).collect();

    // Levi-Civita symbols of the pullback angular metric.
    let dh = |k: usize, i: usize, j: usize| h_pull_t[i][j].d1(k);
    let mut lc = vec![0.0; n * n * n]; // Γ^m_{ki} at (m·n + k)·n + i
    for m in 0..n {
        for k in 0..n {
            for i in 0..n {
                let mut acc = 0.0;
                for l in 0..n {
                    acc += 0.5 * hinv[(m, l)] * (dh(k, l, i) + dh(i, l, k) - dh(l, k, i));
                }
                lc[(m * n + k) * n + i] = acc;
            }
        }
    }
    // I_{i;k} = ∂_k I_i − Γ^m_{ki} I_m (symmetric: I is locally a gradient).
    let mut i_cov = Mat::zeros(n, n);
    for i in 0..n {
        for k in 0..n {
            let mut acc = i_pull_t[i].d1(k);
            for m in 0..n {
                acc -= lc[(m * n + k) * n + i] * i_pull[m];
            }
            i_cov[(i, k)] = acc;
        }
    }

    // Cartan torsion pulled back to the chart at θ = 0.
    let e0: Vec<Vec<f64>> = e_t
        .iter()
        .map(|ei| ei.iter().map(|c| *c.value()).collect())
        .collect();
    let cartan0 = |a: usize, b: usize, c: usize| *cartan_t[(a * d + b) * d + c].value();
    let mut a_pull = vec![0.0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = 0.0;
                for a in 0..d {
                    for b in 0..d {
                        for c in 0..d {
                            acc += cartan0(a, b, c) * e0[i][a] * e0[j][b] * e0[k][c];
                        }
                    }
                }
                a_pull[(i * n + j) * n + k] = acc;
            }
        }
    }

    // Shape operator s_i^j = φ[δ + κ h^{jk}I_{i;k} − κ h^{jl}A_{ilm}(h*I)^m
    //                        + κ² I_i (h*I)^j].
    let hstar_i: Vec<f64> = (0..n)
        .map(|m| (0..n).map(|p| hinv[(m, p)] * i_pull[p]).sum())
        .collect();
    let mut shape = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = if i == j { 1.0 } else { 0.0 };
            for k in 0..n {
                acc += kappa * hinv[(j, k)] * i_cov[(i, k)];
            }
            let mut torsion = 0.0;
            for l in 0..n {
                let mut am = 0.0;
                for m in 0..n {
                    am += a_pull[(i * n + l) * n + m] * hstar_i[m];
                }
                torsion += hinv[(j, l)] * am;
            }
            acc -= kappa * torsion;
            acc += kappa * kappa * i_pull[i] * hstar_i[j];
            shape[(i, j)] = phi * acc;
        }
    }

    // Eigenvalues through the h-symmetric pencil s·h v = λ h v.
    let sh = shape.matmul(&h_pull);
    let mut sym = Mat::zeros(n, n);
    let mut symmetrization_defect = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            sym[(i, j)] = 0.5 * (sh[(i, j)] + sh[(j, i)]);
            symmetrization_defect = symmetrization_defect.max((sh[(i, j)] - sh[(j, i)]).abs());
        }
    }
    let principal_curvatures = linalg::gen_sym_eigen(&sym, &h_pull)
        .ok_or(Error::NotStronglyConvex { min_eig_ratio: linalg::det(&h_pull) })?;
    let mean_curvatures = normalized_symmetric_means(&principal_curvatures);

    // Blaschke metric and cubic form.
    let rho = 1.0 / phi;
    let metric = h_pull.scale(rho);
    let det_metric = linalg::det(&metric);
    let c_coeff = coeff.value(d);
    let h0 = |a: usize, b: usize| *h_t[a][b].value();
    let i0: Vec<f64> = cartan_form_t.iter().map(|v| *v.value()).collect();
    let mut cubic = vec![0.0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = 0.0;
                for a in 0..d {
                    for b in 0..d {
                        for c in 0..d {
                            let m_abc = cartan0(a, b, c)
                                - c_coeff
                                    * (i0[a] * h0(b, c) + i0[b] * h0(a, c) + i0[c] * h0(a, b));
                            acc += m_abc * e0[i][a] * e0[j][b] * e0[k][c];
                        }
                    }
                }
                cubic[(i * n + j) * n + k] = 2.0 * phi * acc;
            }
        }
    }

    // Consistency of the two routes to ∂ξ.
    let mut equiaffine_defect = 0.0f64;
    for i in 0..n {
        for a in 0..d {
            let mut back = 0.0;
            for j in 0..n {
                back += shape[(i, j)] * e0[j][a];
            }
            equiaffine_defect = equiaffine_defect.max((dxi[i][a] + back).abs());
        }
    }

    Ok(BlaschkeSample {
        surface,
        det_g,
        phi,
        metric,
        det_metric,
        xi,
        dxi,
        cartan_form_pullback: i_pull,
        shape_operator: shape,
        principal_curvatures,
        mean_curvatures,
        cubic,
        equiaffine_defect,
        symmetrization_defect,
    })
}

/// `L_k = e_k(λ)/binom(n,k)` for `k = 1…n`.
fn normalized_symmetric_means(lambda: &[f64]) -> Vec<f64> {
    let n = lambda.len();
    // e_{k}: incremental polynomial expansion of Π(x + λ_i).
    let mut e = vec![0.0; n + 1];
    e[0] = 1.0;
    for (count, &l) in lambda.iter().enumerate() {
        for k in (1..=count + 1).rev() {
            e[k] += l * e[k - 1];
        }
    }
    let mut out = Vec::with_capacity(n);
    let mut binom = 1.0;
    for k in 1..=n {
        binom = binom * (n - k + 1) as f64 / k as f64;
        out.push(e[k] / binom);
    }
    out
}

/// Unit-Blaschke-length chart directions `v` with `C(v,v,v) = 0` at a point
/// of a two-dimensional level surface. Returns an empty list when the cubic
/// form vanishes below `tol` (an affine-sphere point: every direction is
/// null); otherwise one or three directions, each normalized so its first
/// nonzero component is positive.
pub fn darboux_null_directions(sample: &BlaschkeSample, tol: f64) -> Vec<Vec<f64>> {
    assert_eq!(sample.metric.rows, 2, "null directions are defined on surfaces");
    if sample.max_abs_cubic() < tol {
        return Vec::new();
    }
    let c = |i: usize, j: usize, k: usize| sample.cubic[(i * 2 + j) * 2 + k];
    // C(v,v,v) with v = (cos ψ, sin ψ): a binary cubic; roots in t = tan ψ.
    let c0 = c(0, 0, 0);
    let c1 = 3.0 * c(0, 0, 1);
    let c2 = 3.0 * c(0, 1, 1);
    let c3 = c(1, 1, 1);
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    let mut push = |v: [f64; 2]| {
        let mut g_len = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                g_len += sample.metric[(i, j)] * v[i] * v[j];
            }
        }
        if g_len <= 0.0 {
            return;
        }
        let mut unit = [v[0] / g_len.sqrt(), v[1] / g_len.sqrt()];
        let lead = if unit[0].abs() > 1e-12 { unit[0] } else { unit[1] };
        if lead < 0.0 {
            unit = [-unit[0], -unit[1]];
        }
        if dirs
            .iter()
            .all(|u| (u[0] - unit[0]).abs() + (u[1] - unit[1]).abs() > 1e-7)
        {
            dirs.push(unit.to_vec());
        }
    };
    let scale = c0.abs().max(c1.abs()).max(c2.abs()).max(c3.abs());
    if c3.abs() < 1e-14 * scale {
        // v = (0, 1) solves the cubic exactly.
        push([0.0, 1.0]);
    }
    for t in real_cubic_roots(c3, c2, c1, c0) {
        push([1.0, t]);
    }
    dirs
}

/// Real roots of `a t³ + b t² + c t + d = 0`, degrading gracefully to the
/// quadratic/linear cases.
fn real_cubic_roots(a: f64, b: f64, c: f64, d: f64) -> Vec<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs()).max(d.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    if a.abs() < 1e-14 * scale {
        if b.abs() < 1e-14 * scale {
            if c.abs() < 1e-14 * scale {
                return Vec::new();
            }
            return vec![-d / c];
        }
        let disc = c * c - 4.0 * b * d;
        if disc < 0.0 {
            return Vec::new();
        }
        let s = disc.sqrt();
        return vec![(-c - s) / (2.0 * b), (-c + s) / (2.0 * b)];
    }
    // Depressed cubic t = x − b/(3a): x³ + px + q = 0.
    let b = b / a;
    let c = c / a;
    let d = d / a;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let shift = -b / 3.0;
    let disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);
    let mut roots = if disc > 0.0 {
        let s = disc.sqrt();
        let u = (-q / 2.0 + s).cbrt();
        let v = (-q / 2.0 - s).cbrt();
        vec![u + v + shift]
    } else if p.abs() < 1e-300 {
        vec![shift]
    } else {
        // Three real roots (trigonometric form).
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        let tau = 2.0 * core::f64::consts::PI / 3.0;
        vec![
            m * theta.cos() + shift,
            m * (theta - tau).cos() + shift,
            m * (theta + tau).cos() + shift,
        ]
    };
    // One Newton polish per root.
    for r in roots.iter_mut() {
        let f = ((*r + b) * *r + c) * *r + d;
        let df = (3.0 * *r + 2.0 * b) * *r + c;
        if df.abs() > 1e-300 {
            *r -= f / df;
        }
    }
    roots
}
