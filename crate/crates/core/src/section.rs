// Copyright 2026 the minkowski-geometry Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Norms induced on 2-planes and the section constancy test.
//!
//! A 3-dimensional Minkowski norm restricts to a Minkowski norm on every
//! 2-dimensional subspace `W²`. The restriction inherits the fundamental
//! tensor, the angular metric, and the Cartan torsion by plain pullback,
//! but its distortion `τ` carries the plane's own volume normalization, so
//! the combination
//!
//! ```text
//! T = τ/3 − τ̄/4
//! ```
//!
//! of plane and ambient distortions is a nontrivial scalar along the
//! section curve `{F = 1} ∩ W²`. `T` is constant along that curve exactly
//! when the curve's tangent is a null direction of the ambient cubic form
//! — and for norms built from a rotationally symmetric profile the planes
//! parallel to the symmetry plane have this property for *every* shifted
//! copy of the norm. [`constancy_sweep`] turns this into a practical test:
//! it translates the unit sphere by random admissible navigation shifts
//! and reports the worst deviation of `T` from constancy.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::blaschke::blaschke_at;
use crate::error::{Error, Result};
#[cfg(not(feature = "std"))]
use crate::float::FloatFuncs;
use crate::indicatrix::{Chart, SphereGrid};
use crate::jet::{Jet, JetShape, Scalar};
use crate::linalg;
use crate::norm::{AmbientTensors, MatsumotoCoeff, NormSpec};
use crate::volumes::{omega, sigma_f};

/// A 2-dimensional subspace of the ambient 3-space, held as a spanning
/// pair. Plane points are addressed by coordinates `c` in this basis: the
/// ambient point is `c⁰w₀ + c¹w₁`.
#[derive(Debug, Clone)]
pub struct SectionSpec {
    pub basis: [Vec<f64>; 2],
}

impl SectionSpec {
    pub fn new(w0: Vec<f64>, w1: Vec<f64>) -> Result<SectionSpec> {
        if w0.len() != 3 || w1.len() != 3 {
            return Err(Error::InvalidArgument(alloc::format!(
                "section basis vectors must have length 3, got {} and {}",
                w0.len(),
                w1.len()
            )));
        }
        let g00 = linalg::dot(&w0, &w0);
        let g11 = linalg::dot(&w1, &w1);
        let g01 = linalg::dot(&w0, &w1);
        let gram_det = g00 * g11 - g01 * g01;
        if !(gram_det > 1e-10 * g00 * g11) {
            return Err(Error::DegenerateSection { gram_det });
        }
        Ok(SectionSpec { basis: [w0, w1] })
    }

    /// Ambient point of the plane coordinates `c = (c⁰, c¹)`.
    pub fn embed(&self, c: &[f64]) -> Vec<f64> {
        (0..3).map(|a| c[0] * self.basis[0][a] + c[1] * self.basis[1][a]).collect()
    }

    /// Plane coordinates of an ambient point, provided it lies on the
    /// plane (least-squares otherwise).
    pub fn coordinates(&self, point: &[f64]) -> Vec<f64> {
        let mut cols = linalg::Mat::zeros(3, 2);
        for a in 0..3 {
            cols[(a, 0)] = self.basis[0][a];
            cols[(a, 1)] = self.basis[1][a];
        }
        linalg::lstsq(&cols, point)
    }
}

/// Order-`order` jet, in plane coordinates, of `F²` restricted to the
/// plane. The restriction is evaluated through the embedding, so it works
/// for every norm variant — including navigation norms whose shift leaves
/// the plane, where no closed-form restricted spec exists.
pub fn induced_jet(
    spec: &NormSpec,
    section: &SectionSpec,
    c: &[f64],
    order: usize,
) -> Jet<f64> {
    let shape = JetShape::new(2, order);
    let c0 = Jet::variable(&shape, 0, c[0]);
    let c1 = Jet::variable(&shape, 1, c[1]);
    let y: Vec<Jet<f64>> = (0..3)
        .map(|a| c0.scale(section.basis[0][a]).add(&c1.scale(section.basis[1][a])))
        .collect();
    spec.f2_s(&y)
}

/// Pointwise invariants of the induced plane norm at plane coordinates
/// `c ≠ 0`.
pub fn induced_tensors(
    spec: &NormSpec,
    section: &SectionSpec,
    c: &[f64],
) -> Result<AmbientTensors> {
    AmbientTensors::from_jet3(2, c, &induced_jet(spec, section, c, 3))
}

/// Busemann–Hausdorff normalization of the induced plane norm:
/// `ω₂ / area{F|_W ≤ 1}`.
pub fn induced_sigma(spec: &NormSpec, section: &SectionSpec, resolution: usize) -> Result<f64> {
    let grid = SphereGrid::new(2, resolution)?;
    let mut vol = 0.0;
    for (node, w) in grid.nodes.iter().zip(&grid.weights) {
        let f2 = spec.f2_s(&section.embed(node));
        if !(f2 > 0.0) {
            return Err(Error::InvalidArgument(alloc::format!(
                "induced norm is not positive on the plane (F² = {f2})"
            )));
        }
        vol += w / f2;
    }
    Ok(omega(2) / (0.5 * vol))
}

/// The constancy statistic sampled along one section curve.
#[derive(Debug, Clone)]
pub struct SectionProfile {
    /// Sample angles in the plane basis.
    pub angles: Vec<f64>,
    /// Distortion of the induced plane norm at each sample.
    pub tau_plane: Vec<f64>,
    /// Distortion of the ambient (shifted) norm at the same points.
    pub tau_ambient: Vec<f64>,
    /// `T = τ/3 − τ̄/4` per sample.
    pub t_values: Vec<f64>,
    /// Normalization used for `tau_plane`.
    pub sigma_plane: f64,
    /// Normalization used for `tau_ambient`.
    pub sigma_ambient: f64,
    /// `max T − min T`; zero exactly when `T` is constant on the curve.
    pub dev: f64,
}

fn shifted_norm(spec: &NormSpec, shift: &[f64]) -> Result<NormSpec> {
    if spec.dim != 3 {
        return Err(Error::InvalidArgument(alloc::format!(
            "plane sections are defined for dimension-3 norms, got dimension {}",
            spec.dim
        )));
    }
    if shift.iter().all(|v| *v == 0.0) {
        return Ok(spec.clone());
    }
    let f_of_shift = spec.f(shift);
    if f_of_shift >= 1.0 - 1e-10 {
        return Err(Error::NavigationInfeasible { f_of_shift });
    }
    Ok(NormSpec::navigation(spec.clone(), shift.to_vec()))
}

/// Sample `T = τ/3 − τ̄/4` along the section curve of the norm translated
/// by the navigation shift `U` (the unit sphere of the shifted norm is the
/// original one moved by `−U`, so varying `U` scans all planes parallel to
/// the section).
///
/// `n_samples` angles are taken uniformly in the plane basis; `resolution`
/// controls the quadrature grids behind the two Busemann–Hausdorff
/// normalizations. Note the normalizations only shift `T` by constants —
/// `dev` is independent of them.
pub fn section_t_profile(
    spec: &NormSpec,
    section: &SectionSpec,
    shift: &[f64],
    n_samples: usize,
    resolution: usize,
) -> Result<SectionProfile> {
    if n_samples < 2 {
        return Err(Error::InvalidArgument(alloc::string::String::from(
            "need at least two section samples",
        )));
    }
    let shifted = shifted_norm(spec, shift)?;
    let sigma_ambient = sigma_f(&shifted, &SphereGrid::new(3, resolution)?)?;
    let sigma_plane = induced_sigma(&shifted, section, resolution)?;

    let mut angles = Vec::with_capacity(n_samples);
    let mut tau_plane = Vec::with_capacity(n_samples);
    let mut tau_ambient = Vec::with_capacity(n_samples);
    let mut t_values = Vec::with_capacity(n_samples);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for k in 0..n_samples {
        let theta = 2.0 * core::f64::consts::PI * k as f64 / n_samples as f64;
        let c = [theta.cos(), theta.sin()];
        // All tensors are 0-homogeneous: evaluating at the raw direction
        // equals evaluating on the section curve itself.
        let tau = induced_tensors(&shifted, section, &c)?.distortion(sigma_plane);
        let tau_bar = shifted.tensors(&section.embed(&c))?.distortion(sigma_ambient);
        let t = tau / 3.0 - tau_bar / 4.0;
        lo = lo.min(t);
        hi = hi.max(t);
        angles.push(theta);
        tau_plane.push(tau);
        tau_ambient.push(tau_bar);
        t_values.push(t);
    }
    Ok(SectionProfile {
        angles,
        tau_plane,
        tau_ambient,
        t_values,
        sigma_plane,
        sigma_ambient,
        dev: hi - lo,
    })
}

/// [`SectionProfile`] together with the ambient cubic form evaluated on
/// the section curve's own tangent at each sampled angle.
#[derive(Debug, Clone)]
pub struct DarbouxReport {
    pub profile: SectionProfile,
    /// Signed cubic values, one per angle of the profile.
    pub cubics: Vec<f64>,
    pub max_cubic: f64,
}

/// The two faces of the same criterion, computed independently: the
/// deviation of `T` from constancy, and the value of the ambient cubic
/// form on the section curve's own tangent. They vanish together.
pub fn darboux_profile(
    spec: &NormSpec,
    section: &SectionSpec,
    shift: &[f64],
    n_samples: usize,
    resolution: usize,
) -> Result<DarbouxReport> {
    let profile = section_t_profile(spec, section, shift, n_samples, resolution)?;
    let shifted = shifted_norm(spec, shift)?;
    let mut cubics = Vec::with_capacity(profile.angles.len());
    let mut max_cubic = 0.0f64;
    for &theta in &profile.angles {
        let e = section.embed(&[theta.cos(), theta.sin()]);
        let e_prime = section.embed(&[-theta.sin(), theta.cos()]);
        // Tangent of θ ↦ e(θ)/F(e(θ)) by the quotient rule.
        let f = shifted.f(&e);
        let df = linalg::dot(&shifted.gradient(&e), &e_prime);
        let gamma_prime: Vec<f64> =
            (0..3).map(|a| e_prime[a] / f - e[a] * df / (f * f)).collect();
        let sample = blaschke_at(
            &shifted,
            &Chart::standard(&e),
            profile.sigma_ambient,
            MatsumotoCoeff::TraceFree,
        )?;
        let cubic = sample
            .cubic_in_ambient_direction(&gamma_prime)
            .ok_or(Error::SectionMisses)?;
        max_cubic = max_cubic.max(cubic.abs());
        cubics.push(cubic);
    }
    Ok(DarbouxReport { profile, cubics, max_cubic })
}

/// Just the two scalars of [`darboux_profile`]: `(dev, max |cubic|)`.
pub fn darboux_consistency(
    spec: &NormSpec,
    section: &SectionSpec,
    shift: &[f64],
    n_samples: usize,
    resolution: usize,
) -> Result<(f64, f64)> {
    let report = darboux_profile(spec, section, shift, n_samples, resolution)?;
    Ok((report.profile.dev, report.max_cubic))
}

/// One profile per random navigation shift, with the worst deviation.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub seed: u64,
    /// The shifts drawn; each satisfies `F(U) ≤ 0.9`.
    pub shifts: Vec<Vec<f64>>,
    /// `dev` of the profile at the matching shift.
    pub devs: Vec<f64>,
    pub max_dev: f64,
}

fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    // 53 uniform mantissa bits in [0, 1).
    (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
}

/// Profiles the section against `n_shifts` random translations of the
/// unit sphere and reports the worst constancy deviation. Shift directions
/// are uniform, radii scaled so the shifted norm always exists
/// (`F(U) ∈ [0.045, 0.9]`); the draw is fully determined by `seed`.
pub fn constancy_sweep(
    spec: &NormSpec,
    section: &SectionSpec,
    n_shifts: usize,
    seed: u64,
    n_samples: usize,
    resolution: usize,
) -> Result<SweepReport> {
    let shifts = sweep_shifts(spec, n_shifts, seed);
    let mut devs = Vec::with_capacity(n_shifts);
    let mut max_dev = 0.0f64;
    for shift in &shifts {
        let profile = section_t_profile(spec, section, shift, n_samples, resolution)?;
        max_dev = max_dev.max(profile.dev);
        devs.push(profile.dev);
    }
    Ok(SweepReport { seed, shifts, devs, max_dev })
}

/// The deterministic shift sequence used by [`constancy_sweep`]: uniform
/// random directions at norms `F(U)` between 0.045 and 0.9, so every
/// shift is admissible for navigation with a wide safety margin.
pub fn sweep_shifts(spec: &NormSpec, n_shifts: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shifts = Vec::with_capacity(n_shifts);
    for _ in 0..n_shifts {
        let dir = loop {
            let v: Vec<f64> = (0..3).map(|_| 2.0 * unit_f64(&mut rng) - 1.0).collect();
            let n = linalg::norm2(&v);
            if (0.1..=1.0).contains(&n) {
                break linalg::scaled(&v, 1.0 / n);
            }
        };
        let rho = 0.9 * (0.05 + 0.95 * unit_f64(&mut rng));
        shifts.push(linalg::scaled(&dir, rho / spec.f(&dir)));
    }
    shifts
}
