// Copyright 2026 the minkowski Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Volumes and areas of the unit ball and its boundary: the normalization
//! constant `σ_F`, Euclidean and affine surface areas, mixed volumes of the
//! unit ball against the body swept by the affine normal, and the margins of
//! the isoperimetric-type inequalities those quantities satisfy.

use alloc::vec;
use alloc::vec::Vec;

use crate::blaschke::{blaschke_at, BlaschkeSample};
use crate::error::{Error, Result};
#[cfg(not(feature = "std"))]
use crate::float::FloatFuncs;
use crate::indicatrix::{sample_surface, Chart, SphereGrid};
use crate::linalg::{self, Mat};
use crate::norm::{MatsumotoCoeff, NormSpec};

/// Lebesgue volume of the Euclidean unit ball in `R^dim`.
pub fn omega(dim: usize) -> f64 {
    use core::f64::consts::PI;
    match dim {
        2 => PI,
        3 => 4.0 * PI / 3.0,
        4 => PI * PI / 2.0,
        _ => panic!("unsupported dimension {dim}"),
    }
}

/// Lebesgue volume of the unit ball `{F ≤ 1}` by the radial integral
/// `(1/N) ∫_{S^{N−1}} F(u)^{−N} dA(u)`.
pub fn ball_volume(spec: &NormSpec, grid: &SphereGrid) -> Result<f64> {
    if grid.dim != spec.dim {
        return Err(Error::InvalidArgument(alloc::format!(
            "grid dimension {} does not match norm dimension {}",
            grid.dim,
            spec.dim
        )));
    }
    let n = spec.dim as f64;
    let mut acc = 0.0;
    for (node, w) in grid.nodes.iter().zip(&grid.weights) {
        let f = spec.f(node);
        if !(f > 0.0) {
            return Err(Error::InvalidArgument(alloc::format!(
                "norm is not positive at a grid node (F = {f})"
            )));
        }
        acc += w * f.powf(-n);
    }
    Ok(acc / n)
}

/// Volume normalization `σ_F = ω_N / Vol(B_F(1))`; the constant density of
/// the Busemann–Hausdorff volume form in the given coordinates.
pub fn sigma_f(spec: &NormSpec, grid: &SphereGrid) -> Result<f64> {
    Ok(omega(spec.dim) / ball_volume(spec, grid)?)
}

/// Euclidean surface area `∫ 1 dV_E` of the unit level set.
pub fn euclidean_area(spec: &NormSpec, grid: &SphereGrid) -> Result<f64> {
    let mut acc = 0.0;
    for (node, w) in grid.nodes.iter().zip(&grid.weights) {
        let sample = sample_surface(spec, &Chart::standard(node))?;
        acc += w * sample.det_gram.sqrt();
    }
    Ok(acc)
}

/// Total Gauss–Kronecker curvature `∫ K dV_E`. For any strictly convex unit
/// level set this equals the area of the round unit sphere, `N·ω_N` — a
/// strong quadrature and curvature cross-check.
pub fn total_curvature(spec: &NormSpec, grid: &SphereGrid) -> Result<f64> {
    let mut acc = 0.0;
    for (node, w) in grid.nodes.iter().zip(&grid.weights) {
        let sample = sample_surface(spec, &Chart::standard(node))?;
        acc += w * sample.det_gram.sqrt() * sample.gauss_curvature;
    }
    Ok(acc)
}

/// Affine (equiaffine) surface area of the unit level set for a given volume
/// scale `sigma`:
///
/// `S = sigma^{n/(n+2)} ∫ K^{1/(n+2)} dV_E`,  `n = dim − 1`.
///
/// This curvature form is numerically preferable to integrating the
/// Blaschke volume element directly; the two agree and the latter is kept as
/// a cross-check in the report path.
pub fn affine_area(spec: &NormSpec, grid: &SphereGrid, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "volume scale must be positive (got {sigma})"
        )));
    }
    let n = (spec.dim - 1) as f64;
    let p = 1.0 / (n + 2.0);
    let mut acc = 0.0;
    for (node, w) in grid.nodes.iter().zip(&grid.weights) {
        let sample = sample_surface(spec, &Chart::standard(node))?;
        acc += w * sample.det_gram.sqrt() * sample.gauss_curvature.powf(p);
    }
    Ok(sigma.powf(n * p) * acc)
}

/// Upper bound on the affine area for an arbitrary constant volume scale:
/// `(n+1)·[ω_N² · vol^n]^{1/(n+2)}` where `vol` is the unit-ball volume
/// measured in that scale. With the Busemann–Hausdorff scale (`vol·σ = ω_N`)
/// it reduces to `N·ω_N`.
pub fn isoperimetric_bound(dim: usize, scaled_ball_volume: f64) -> f64 {
    let n = (dim - 1) as f64;
    let om = omega(dim);
    (n + 1.0) * (om * om * scaled_ball_volume.powf(n)).powf(1.0 / (n + 2.0))
}

/// Blaschke data at one quadrature node, with its weight.
#[derive(Debug, Clone)]
pub struct VolumeNode {
    /// The unit direction whose ray meets the surface at this node.
    pub direction: Vec<f64>,
    pub sample: BlaschkeSample,
    pub weight: f64,
}

/// Evaluation abscissae for the sweep-volume polynomial fit: equispaced on
/// `[0, 1]`.
pub fn fit_abscissae() -> Vec<f64> {
    (0..=10).map(|j| j as f64 / 10.0).collect()
}

/// All scalar invariants derived from one quadrature pass over the unit
/// level set.
#[derive(Debug, Clone)]
pub struct VolumeReport {
    pub dim: usize,
    pub resolution: usize,
    pub node_count: usize,
    /// Lebesgue volume of `{F ≤ 1}`.
    pub vol_ball: f64,
    /// `ω_N / vol_ball`.
    pub sigma: f64,
    pub omega: f64,
    pub euclidean_area: f64,
    /// `∫ K dV_E`; equals `N·ω_N` for every admissible norm.
    pub total_curvature: f64,
    /// Affine surface area via the curvature form `σ^{n/(n+2)}∫K^{1/(n+2)}`.
    pub affine_area: f64,
    /// The same area as the integral of the Blaschke volume element
    /// `√det G`; agreement with `affine_area` cross-checks the two routes.
    pub affine_area_blaschke: f64,
    /// Mixed volumes `V_0 … V_{n+1}` of the ball against the affine-normal
    /// sweep, from the curvature integrals `V_{k+1} = (1/N)∫L_k √det G dθ`
    /// (`V_0` is the normalized ball volume, equal to `ω_N` by construction).
    pub mixed_volumes: Vec<f64>,
    /// The same coefficients recovered independently by fitting the sweep
    /// volume `t ↦ Vol(Ω_t)` with a degree-`N` polynomial.
    pub mixed_volumes_fitted: Vec<f64>,
    /// Max absolute residual of that fit; the per-node sweep volume is an
    /// exact polynomial in `t`, so this measures only arithmetic noise.
    pub fit_residual: f64,
    /// `(t, Vol(Ω_t))` pairs used for the fit (normalized volume).
    pub vol_samples: Vec<(f64, f64)>,
    /// `N·ω_N − S_affine`: margin of the affine isoperimetric inequality
    /// (zero exactly for ellipsoids).
    pub isoperimetric_margin: f64,
    /// Margins of the mixed-volume power inequalities, one entry
    /// `(k, k*, margin)` per admissible pair `k < k*`, `k < (n+2)/2`, with
    /// `margin = (N ω)^{2(k*−k)} − J_{k*}^{n+2−2k} J_k^{2k*−n−2}`,
    /// `J_k = N·V_k`.
    pub power_inequality_margins: Vec<(usize, usize, f64)>,
    /// `N·ω_N − ∫ √L_n √det G dθ`, the margin of the bound on the integrated
    /// root of the affine Gauss curvature; `None` when `L_n` turns negative
    /// somewhere (the integrand leaves the real domain, which happens for
    /// strongly curved norms).
    pub curvature_integral_margin: Option<f64>,
    /// Smallest value of `L_n` seen on the grid.
    pub min_gauss_affine: f64,
    /// `V_k² − V_{k−1}V_{k+1}` for `k = 1…n`.
    pub alexandrov_margins: Vec<f64>,
    /// Range of the first affine mean curvature over the grid.
    pub l1_range: (f64, f64),
    /// Smallest affine principal curvature seen on the grid.
    pub min_principal_curvature: f64,
    pub max_equiaffine_defect: f64,
    pub max_abs_cubic: f64,
}

/// Blaschke data at every grid node (sequential; callers that want
/// parallelism can map `blaschke_at` over `grid.nodes` themselves and hand
/// the result to [`report_from_nodes`]).
pub fn volume_nodes(
    spec: &NormSpec,
    grid: &SphereGrid,
    sigma: f64,
    coeff: MatsumotoCoeff,
) -> Result<Vec<VolumeNode>> {
    if grid.dim != spec.dim {
        return Err(Error::InvalidArgument(alloc::format!(
            "grid dimension {} does not match norm dimension {}",
            grid.dim,
            spec.dim
        )));
    }
    grid.nodes
        .iter()
        .zip(&grid.weights)
        .map(|(node, w)| {
            Ok(VolumeNode {
                direction: node.clone(),
                sample: blaschke_at(spec, &Chart::standard(node), sigma, coeff)?,
                weight: *w,
            })
        })
        .collect()
}

fn binom(n: usize, k: usize) -> f64 {
    let mut b = 1.0;
    for i in 0..k {
        b = b * (n - i) as f64 / (i + 1) as f64;
    }
    b
}

/// Reduce per-node Blaschke data to a [`VolumeReport`].
pub fn report_from_nodes(
    resolution: usize,
    vol_ball: f64,
    sigma: f64,
    nodes: &[VolumeNode],
) -> Result<VolumeReport> {
    let first = nodes
        .first()
        .ok_or_else(|| Error::InvalidArgument("no quadrature nodes".into()))?;
    let dim = first.sample.xi.len();
    let n = dim - 1;
    let nf = dim as f64;
    let om = omega(dim);
    let p = 1.0 / (n as f64 + 2.0);

    let mut euclidean_area = 0.0;
    let mut total_curvature = 0.0;
    let mut affine_area = 0.0;
    let mut affine_area_blaschke = 0.0;
    let mut curvature_integrals = vec![0.0; n + 1]; // ∫ L_k √det G, L_0 = 1
    let mut root_ln_integral = 0.0;
    let mut min_gauss_affine = f64::INFINITY;
    let mut l1_range = (f64::INFINITY, f64::NEG_INFINITY);
    let mut min_principal = f64::INFINITY;
    let mut max_defect = 0.0f64;
    let mut max_cubic = 0.0f64;

    let ts = fit_abscissae();
    let mut vol_t = vec![0.0; ts.len()];

    for node in nodes {
        let s = &node.sample;
        let w = node.weight;
        let root_gram = s.surface.det_gram.sqrt();
        let k_gauss = s.surface.gauss_curvature;
        let aw = s.area_weight();
        euclidean_area += w * root_gram;
        total_curvature += w * root_gram * k_gauss;
        affine_area += w * root_gram * k_gauss.powf(p);
        affine_area_blaschke += w * aw;
        curvature_integrals[0] += w * aw;
        for k in 1..=n {
            curvature_integrals[k] += w * s.mean_curvatures[k - 1] * aw;
        }
        let ln = s.mean_curvatures[n - 1];
        min_gauss_affine = min_gauss_affine.min(ln);
        root_ln_integral += w * ln.max(0.0).sqrt() * aw;
        let l1 = s.mean_curvatures[0];
        l1_range = (l1_range.0.min(l1), l1_range.1.max(l1));
        min_principal = min_principal.min(s.principal_curvatures[0]);
        max_defect = max_defect.max(s.equiaffine_defect);
        max_cubic = max_cubic.max(s.max_abs_cubic());

        // Sweep volume: r_t = r − tξ, divergence-theorem determinant with
        // the chart orientation fixed at t = 0.
        let mut m0 = Mat::zeros(dim, dim);
        for a in 0..dim {
            m0[(a, 0)] = s.surface.point[a];
            for i in 0..n {
                m0[(a, 1 + i)] = s.surface.tangents[i][a];
            }
        }
        let sign = if linalg::det(&m0) < 0.0 { -1.0 } else { 1.0 };
        for (j, t) in ts.iter().enumerate() {
            let mut m = Mat::zeros(dim, dim);
            for a in 0..dim {
                m[(a, 0)] = s.surface.point[a] - t * s.xi[a];
                for i in 0..n {
                    m[(a, 1 + i)] = s.surface.tangents[i][a] - t * s.dxi[i][a];
                }
            }
            vol_t[j] += w * sign * linalg::det(&m) / nf;
        }
    }
    affine_area *= sigma.powf(n as f64 * p);

    // Mixed volumes, normalized so that V_0 = ω_N. The Blaschke area
    // element √det G dθ is already the contraction of the normalized volume
    // form with the affine normal, so no further σ weight appears.
    let mut mixed = Vec::with_capacity(n + 2);
    mixed.push(sigma * vol_ball);
    for k in 0..=n {
        mixed.push(curvature_integrals[k] / nf);
    }

    // Independent recovery from the sweep polynomial.
    let vol_samples: Vec<(f64, f64)> =
        ts.iter().zip(&vol_t).map(|(t, v)| (*t, sigma * v)).collect();
    let mut design = Mat::zeros(ts.len(), dim + 1);
    for (row, t) in ts.iter().enumerate() {
        let mut pw = 1.0;
        for col in 0..=dim {
            design[(row, col)] = pw;
            pw *= t;
        }
    }
    let rhs: Vec<f64> = vol_samples.iter().map(|(_, v)| *v).collect();
    let coeffs = linalg::lstsq(&design, &rhs);
    let mut fit_residual = 0.0f64;
    for (row, target) in rhs.iter().enumerate() {
        let mut pred = 0.0;
        for col in 0..=dim {
            pred += design[(row, col)] * coeffs[col];
        }
        fit_residual = fit_residual.max((pred - target).abs());
    }
    let mixed_fitted: Vec<f64> =
        (0..=dim).map(|k| coeffs[k] / binom(dim, k)).collect();

    // Inequality margins.
    let isoperimetric_margin = nf * om - affine_area;
    let curvature_integral_margin = if min_gauss_affine >= 0.0 {
        Some(nf * om - root_ln_integral)
    } else {
        None
    };
    let j: Vec<f64> = mixed.iter().map(|v| nf * v).collect();
    let mut power_inequality_margins = Vec::new();
    for k in 0..=n + 1 {
        if 2 * k >= n + 2 {
            break;
        }
        for k_star in k + 1..=n + 1 {
            let lhs = (nf * om).powi(2 * (k_star - k) as i32);
            let rhs_pow = j[k_star].powi((n + 2 - 2 * k) as i32)
                * j[k].powi(2 * k_star as i32 - n as i32 - 2);
            power_inequality_margins.push((k, k_star, lhs - rhs_pow));
        }
    }
    let alexandrov_margins: Vec<f64> = (1..=n)
        .map(|k| mixed[k] * mixed[k] - mixed[k - 1] * mixed[k + 1])
        .collect();

    Ok(VolumeReport {
        dim,
        resolution,
        node_count: nodes.len(),
        vol_ball,
        sigma,
        omega: om,
        euclidean_area,
        total_curvature,
        affine_area,
        affine_area_blaschke,
        mixed_volumes: mixed,
        mixed_volumes_fitted: mixed_fitted,
        fit_residual,
        vol_samples,
        isoperimetric_margin,
        power_inequality_margins,
        curvature_integral_margin,
        min_gauss_affine,
        alexandrov_margins,
        l1_range,
        min_principal_curvature: min_principal,
        max_equiaffine_defect: max_defect,
        max_abs_cubic: max_cubic,
    })
}

/// One-call version: quadrature grid in, full report out.
pub fn volume_report(
    spec: &NormSpec,
    grid: &SphereGrid,
    coeff: MatsumotoCoeff,
) -> Result<VolumeReport> {
    let vol_ball = ball_volume(spec, grid)?;
    let sigma = omega(spec.dim) / vol_ball;
    let nodes = volume_nodes(spec, grid, sigma, coeff)?;
    report_from_nodes(grid.resolution, vol_ball, sigma, &nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indicatrix::sphere_area;
    use crate::linalg::Mat;
    use crate::norm::PhiSpec;
    use approx::assert_relative_eq;

    fn grid3() -> SphereGrid {
        SphereGrid::new(3, 48).unwrap()
    }

    fn randers3() -> NormSpec {
        let lambda: f64 = 0.75;
        let w = [0.0, 0.0, 0.5];
        let mut q = Mat::identity(3).scale(1.0 / lambda);
        for i in 0..3 {
            for j in 0..3 {
                q[(i, j)] += w[i] * w[j] / (lambda * lambda);
            }
        }
        let b: Vec<f64> = w.iter().map(|v| v / lambda).collect();
        NormSpec::randers(q, b)
    }

    #[test]
    fn round_ball_volumes_and_areas() {
        for dim in 2..=4 {
            let spec = NormSpec::euclidean(Mat::identity(dim));
            let grid = SphereGrid::new(dim, if dim == 4 { 24 } else { 48 }).unwrap();
            let om = omega(dim);
            assert_relative_eq!(ball_volume(&spec, &grid).unwrap(), om, max_relative = 1e-12);
            assert_relative_eq!(sigma_f(&spec, &grid).unwrap(), 1.0, max_relative = 1e-12);
            // Unit sphere: affine area = Euclidean area = N·ω_N.
            let area = sphere_area(dim);
            assert_relative_eq!(euclidean_area(&spec, &grid).unwrap(), area, max_relative = 1e-10);
            assert_relative_eq!(
                affine_area(&spec, &grid, 1.0).unwrap(),
                area,
                max_relative = 1e-10
            );
            assert_relative_eq!(
                total_curvature(&spec, &grid).unwrap(),
                area,
                max_relative = 1e-10
            );
            assert_relative_eq!(isoperimetric_bound(dim, om), area, max_relative = 1e-12);
        }
    }

    #[test]
    fn ellipsoid_volume_scales_by_determinant() {
        // {yᵀQy ≤ 1} is the image of the round ball under Q^{-1/2}.
        let spec = NormSpec::euclidean(Mat::from_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 4.0],
        ]));
        let grid = grid3();
        assert_relative_eq!(
            ball_volume(&spec, &grid).unwrap(),
            omega(3) / 2.0,
            max_relative = 1e-10
        );
        assert_relative_eq!(sigma_f(&spec, &grid).unwrap(), 2.0, max_relative = 1e-10);
        // An ellipsoid is the affine image of the round sphere: the affine
        // isoperimetric inequality is an equality.
        let sigma = sigma_f(&spec, &grid).unwrap();
        assert_relative_eq!(
            affine_area(&spec, &grid, sigma).unwrap(),
            sphere_area(3),
            max_relative = 1e-8
        );
        assert_relative_eq!(total_curvature(&spec, &grid).unwrap(), sphere_area(3), max_relative = 1e-8);
    }

    #[test]
    fn shifted_ball_keeps_volume_and_affine_area() {
        // The unit ball of the shifted norm is the base ball translated: the
        // volume is exactly preserved, and so is the affine area.
        let spec = NormSpec::navigation(
            NormSpec::euclidean(Mat::identity(3)),
            vec![0.0, 0.0, 0.5],
        );
        let grid = grid3();
        assert_relative_eq!(ball_volume(&spec, &grid).unwrap(), omega(3), max_relative = 1e-9);
        assert_relative_eq!(sigma_f(&spec, &grid).unwrap(), 1.0, max_relative = 1e-9);
        let sigma = sigma_f(&spec, &grid).unwrap();
        assert_relative_eq!(
            affine_area(&spec, &grid, sigma).unwrap(),
            sphere_area(3),
            max_relative = 1e-8
        );

        // Same body through the closed-form data.
        let randers = randers3();
        assert_relative_eq!(sigma_f(&randers, &grid).unwrap(), 1.0, max_relative = 1e-9);
        assert_relative_eq!(
            affine_area(&randers, &grid, 1.0).unwrap(),
            sphere_area(3),
            max_relative = 1e-8
        );
        assert_relative_eq!(total_curvature(&randers, &grid).unwrap(), sphere_area(3), max_relative = 1e-8);
    }

    #[test]
    fn genuinely_curved_norm_loses_affine_area() {
        // The deficit scales like the squared cubic form, so it is small but
        // far above the ~1e−13 quadrature floor; both scales are frozen here.
        let grid = grid3();
        let bound = sphere_area(3);
        for (eps, b, lo, hi) in [(0.1, 0.5, 1.0e-7, 2.5e-7), (0.2, 0.8, 5.0e-5, 1.2e-4)] {
            let spec = NormSpec::alpha_beta(
                Mat::identity(3),
                vec![0.0, 0.0, b],
                PhiSpec::Quadratic { epsilon: eps },
            );
            let sigma = sigma_f(&spec, &grid).unwrap();
            let margin = bound - affine_area(&spec, &grid, sigma).unwrap();
            assert!(
                margin > lo && margin < hi,
                "eps {eps}, b {b}: expected deficit in ({lo:e}, {hi:e}), got {margin:e}"
            );
            // Total curvature stays pinned regardless of the norm.
            assert_relative_eq!(total_curvature(&spec, &grid).unwrap(), bound, max_relative = 1e-8);
        }
    }

    #[test]
    fn hoelder_step_between_curvature_means() {
        for spec in [
            randers3(),
            NormSpec::alpha_beta(
                Mat::identity(3),
                vec![0.0, 0.0, 0.5],
                PhiSpec::Quadratic { epsilon: 0.1 },
            ),
        ] {
            let grid = SphereGrid::new(3, 24).unwrap();
            let area = euclidean_area(&spec, &grid).unwrap();
            let mean_root = affine_area(&spec, &grid, 1.0).unwrap() / area;
            let mean = total_curvature(&spec, &grid).unwrap() / area;
            let n = 2.0;
            assert!(mean_root.powf(n + 2.0) <= mean * (1.0 + 1e-12));
        }
    }

    #[test]
    fn bound_scales_with_the_volume_scale() {
        // Rescaling σ by c rescales both the affine area and the bound by
        // c^{n/(n+2)}: the inequality is scale-covariant, and so is its margin.
        let spec = NormSpec::alpha_beta(
            Mat::identity(3),
            vec![0.0, 0.0, 0.8],
            PhiSpec::Quadratic { epsilon: 0.2 },
        );
        let grid = SphereGrid::new(3, 24).unwrap();
        let sigma = sigma_f(&spec, &grid).unwrap();
        let vol = ball_volume(&spec, &grid).unwrap();
        let c = 1.7;
        let s1 = affine_area(&spec, &grid, sigma).unwrap();
        let s2 = affine_area(&spec, &grid, c * sigma).unwrap();
        let scale = c.powf(2.0 / 4.0);
        assert_relative_eq!(s2, scale * s1, max_relative = 1e-12);
        let b1 = isoperimetric_bound(3, sigma * vol);
        let b2 = isoperimetric_bound(3, c * sigma * vol);
        assert_relative_eq!(b2, scale * b1, max_relative = 1e-12);
        assert_relative_eq!(b2 - s2, scale * (b1 - s1), max_relative = 1e-6);
    }

    #[test]
    fn doubling_resolution_is_converged() {
        for spec in [NormSpec::euclidean(Mat::identity(3)), randers3()] {
            let coarse = SphereGrid::new(3, 24).unwrap();
            let fine = SphereGrid::new(3, 48).unwrap();
            let s_c = affine_area(&spec, &coarse, 1.0).unwrap();
            let s_f = affine_area(&spec, &fine, 1.0).unwrap();
            assert_relative_eq!(s_c, s_f, max_relative = 1e-6);
            let v_c = ball_volume(&spec, &coarse).unwrap();
            let v_f = ball_volume(&spec, &fine).unwrap();
            assert_relative_eq!(v_c, v_f, max_relative = 1e-6);
        }
    }
    fn report(spec: &NormSpec, res: usize) -> VolumeReport {
        let grid = SphereGrid::new(spec.dim, res).unwrap();
        volume_report(spec, &grid, MatsumotoCoeff::TraceFree).unwrap()
    }

    /// Every margin of `r`, relative to its own natural scale.
    fn assert_equality_case(r: &VolumeReport, tol: f64) {
        let scale = r.dim as f64 * r.omega;
        for v in r.mixed_volumes.iter().chain(&r.mixed_volumes_fitted) {
            assert_relative_eq!(*v, r.omega, max_relative = tol);
        }
        assert!(r.isoperimetric_margin.abs() <= tol * scale);
        let cm = r.curvature_integral_margin.expect("L_n stays positive");
        assert!(cm.abs() <= tol * scale);
        for (k, k_star, m) in &r.power_inequality_margins {
            let lhs = scale.powi(2 * (k_star - k) as i32);
            assert!(m.abs() <= tol * lhs, "pair ({k},{k_star}): {m:e}");
        }
        for m in &r.alexandrov_margins {
            assert!(m.abs() <= tol * r.omega * r.omega);
        }
        assert!((r.l1_range.0 - 1.0).abs() <= tol && (r.l1_range.1 - 1.0).abs() <= tol);
        assert_relative_eq!(r.min_principal_curvature, 1.0, max_relative = tol);
    }

    #[test]
    fn round_ball_report_is_flat() {
        for (dim, res) in [(2usize, 48usize), (3, 24)] {
            let r = report(&NormSpec::euclidean(Mat::identity(dim)), res);
            assert_eq!(r.dim, dim);
            assert_eq!(r.resolution, res);
            assert_eq!(r.node_count, SphereGrid::new(dim, res).unwrap().len());
            assert_relative_eq!(r.sigma, 1.0, max_relative = 1e-12);
            assert_relative_eq!(r.vol_ball, omega(dim), max_relative = 1e-12);
            assert_relative_eq!(
                r.total_curvature,
                dim as f64 * omega(dim),
                max_relative = 1e-12
            );
            assert_equality_case(&r, 1e-10);
            assert!(r.fit_residual <= 1e-11);
            assert!(r.max_equiaffine_defect <= 1e-12);
            assert!(r.max_abs_cubic <= 1e-12);
            // V_0 … V_N and one sample per fit abscissa.
            assert_eq!(r.mixed_volumes.len(), dim + 1);
            assert_eq!(r.vol_samples.len(), fit_abscissae().len());
        }
    }

    #[test]
    fn translated_ellipsoids_attain_every_equality() {
        // All three specs have an ellipsoid for a unit ball, placed off
        // center, so each report must sit exactly on every bound at once.
        let ellipsoid = NormSpec::euclidean(Mat::from_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 4.0],
        ]));
        let translated =
            NormSpec::navigation(NormSpec::euclidean(Mat::identity(3)), vec![0.0, 0.0, 0.5]);
        let generic = NormSpec::randers(
            Mat::from_rows(&[
                vec![1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 4.0],
            ]),
            vec![0.1, 0.0, 0.3],
        );
        let r = report(&ellipsoid, 24);
        assert_relative_eq!(r.sigma, 2.0, max_relative = 1e-9);
        assert_equality_case(&r, 1e-8);

        let r = report(&translated, 24);
        assert_relative_eq!(r.sigma, 1.0, max_relative = 1e-11);
        assert_equality_case(&r, 1e-9);
        assert!(r.max_abs_cubic <= 1e-9);

        let r = report(&generic, 24);
        assert_equality_case(&r, 1e-8);
        assert!(r.max_abs_cubic <= 1e-9);
    }

    #[test]
    fn curved_norms_keep_strict_margins() {
        // Frozen windows for a fixed grid; the two integral routes for the
        // mixed volumes must agree far below every margin they feed.
        let r = report(
            &NormSpec::alpha_beta(
                Mat::identity(3),
                vec![0.0, 0.0, 0.5],
                PhiSpec::Quadratic { epsilon: 0.6 },
            ),
            32,
        );
        assert!(
            r.isoperimetric_margin > 1.4e-4 && r.isoperimetric_margin < 1.7e-4,
            "margin {:e}",
            r.isoperimetric_margin
        );
        let cm = r.curvature_integral_margin.unwrap();
        assert!(cm > 4.5e-3 && cm < 6.0e-3, "margin {cm:e}");
        assert!(r.min_gauss_affine > 0.90 && r.min_gauss_affine < 0.99);
        for (k, k_star, m) in &r.power_inequality_margins {
            let lhs = (3.0 * r.omega).powi(2 * (k_star - k) as i32);
            assert!(*m > 3e-5 * lhs, "pair ({k},{k_star}): {m:e}");
        }
        for m in &r.alexandrov_margins {
            assert!(*m > 5e-4 && *m < 2e-3, "{m:e}");
        }
        for (a, b) in r.mixed_volumes.iter().zip(&r.mixed_volumes_fitted) {
            assert_relative_eq!(*a, *b, max_relative = 1e-10);
        }
        assert!(r.fit_residual <= 1e-10);
        assert!(r.max_abs_cubic > 1e-2 && r.max_abs_cubic < 5e-2);
        assert!(r.l1_range.0 < 1.0 && r.l1_range.1 > 1.0);

        // The planar analogue: the margins still separate the curved norm
        // from the ellipses even though the trace-free cubic vanishes
        // identically in two dimensions (a one-variable cubic is pure trace).
        let r = report(
            &NormSpec::alpha_beta(
                Mat::identity(2),
                vec![0.0, 0.5],
                PhiSpec::Quadratic { epsilon: 0.6 },
            ),
            48,
        );
        assert!(r.isoperimetric_margin > 8e-5 && r.isoperimetric_margin < 1.1e-4);
        let cm = r.curvature_integral_margin.unwrap();
        assert!(cm > 2.5e-3 && cm < 4.0e-3);
        assert!(r.alexandrov_margins[0] > 1.5e-3 && r.alexandrov_margins[0] < 2.5e-3);
        for (k, k_star, m) in &r.power_inequality_margins {
            let lhs = (2.0 * r.omega).powi(2 * (k_star - k) as i32);
            assert!(*m > 3e-5 * lhs, "pair ({k},{k_star}): {m:e}");
        }
        assert!(r.max_abs_cubic <= 1e-12);
    }

    #[test]
    fn strong_curvature_leaves_the_root_curvature_domain() {
        // An admissible norm whose affine shape operator develops a negative
        // eigenvalue: the affine Gauss curvature changes sign, so the bound
        // on ∫√L_n has no real integrand and is reported as undefined. The
        // other inequalities keep healthy strict margins.
        let r = report(
            &NormSpec::alpha_beta(
                Mat::identity(3),
                vec![0.0, 0.0, 0.8],
                PhiSpec::Quadratic { epsilon: 0.9 },
            ),
            32,
        );
        assert!(r.min_principal_curvature < -0.5);
        assert!(r.min_gauss_affine < -1.5);
        assert!(r.curvature_integral_margin.is_none());
        assert!(r.max_equiaffine_defect <= 1e-12);
        assert!(
            r.isoperimetric_margin > 1.5e-2 && r.isoperimetric_margin < 1.9e-2,
            "margin {:e}",
            r.isoperimetric_margin
        );
        for (k, k_star, m) in &r.power_inequality_margins {
            let lhs = (3.0 * r.omega).powi(2 * (k_star - k) as i32);
            assert!(*m > 4e-3 * lhs, "pair ({k},{k_star}): {m:e}");
        }
        for m in &r.alexandrov_margins {
            assert!(*m > 0.1);
        }
        for (a, b) in r.mixed_volumes.iter().zip(&r.mixed_volumes_fitted) {
            assert_relative_eq!(*a, *b, max_relative = 1e-8);
        }
        assert!(r.max_abs_cubic > 0.3 && r.max_abs_cubic < 0.4);
    }
}
