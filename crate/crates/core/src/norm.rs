// Copyright 2026 the minkowski-geometry Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Minkowski norm specifications and their pointwise tensor invariants.
//!
//! A norm is described symbolically by [`NormSpec`] and evaluated through a
//! single generic routine [`NormSpec::f2_s`] returning `F²(y)` for any
//! [`Scalar`] argument type. Evaluating it on jets yields exact derivatives
//! of any order the jet carries; evaluating on nested jets yields exact
//! mixed partials with respect to chart parameters. The pointwise
//! invariants — fundamental tensor, Cartan torsion, angular metric, mean
//! Cartan form, Matsumoto torsion — are assembled in [`AmbientTensors`].

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::jet::{Jet, JetShape, Scalar};
use crate::linalg::{self, Mat};

#[cfg(not(feature = "std"))]
use crate::float::FloatFuncs;

/// Profile function for a general (α, β) norm `F = α · φ(β/α)`.
#[derive(Debug, Clone, PartialEq)]
pub enum PhiSpec {
    /// `φ(s) = 1 + ε s²`
    Quadratic { epsilon: f64 },
    /// `φ(s) = exp(ε s)`
    Exponential { epsilon: f64 },
}

impl PhiSpec {
    pub fn eval_s<S: Scalar>(&self, s: &S) -> S {
        match *self {
            PhiSpec::Quadratic { epsilon } => s.mul(s).scale(epsilon).add_f64(1.0),
            PhiSpec::Exponential { epsilon } => s.scale(epsilon).exp(),
        }
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.eval_s(&s)
    }
}

/// Which multiple of the symmetrized `I ⊗ h` term to subtract from the
/// Cartan torsion. `TraceFree` (`1/(dim+1)`) makes the result trace-free
/// with respect to the fundamental tensor and vanish identically for
/// Randers norms; `NPlusTwo` (`1/(dim+2)`) is kept as an alternative
/// normalization behind a flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatsumotoCoeff {
    #[default]
    TraceFree,
    NPlusTwo,
}

impl MatsumotoCoeff {
    pub fn value(self, dim: usize) -> f64 {
        match self {
            MatsumotoCoeff::TraceFree => 1.0 / (dim as f64 + 1.0),
            MatsumotoCoeff::NPlusTwo => 1.0 / (dim as f64 + 2.0),
        }
    }
}

#[derive(Debug, Clone)]
pub enum NormVariant {
    /// `F² = yᵀ Q y` for symmetric positive definite `Q`.
    Euclidean { q: Mat },
    /// `F = α + β` with `α² = yᵀ Q y`, `β = b·y`, `‖b‖_{Q⁻¹} < 1`.
    Randers { q: Mat, b: Vec<f64> },
    /// `F = α · φ(β/α)`.
    AlphaBeta { q: Mat, b: Vec<f64>, phi: PhiSpec },
    /// `F(y)` is the unique positive solution of `F_base(y/F + shift) = 1`;
    /// requires `F_base(shift) < 1`.
    Navigation { base: Box<NormSpec>, shift: Vec<f64> },
}

#[derive(Debug, Clone)]
pub struct NormSpec {
    pub dim: usize,
    pub variant: NormVariant,
}

fn quad_form_s<S: Scalar>(q: &Mat, y: &[S]) -> S {
    let mut acc = y[0].zero_like();
    for i in 0..y.len() {
        for j in 0..y.len() {
            let qij = q[(i, j)];
            if qij != 0.0 {
                acc = acc.add(&y[i].mul(&y[j]).scale(qij));
            }
        }
    }
    acc
}

fn linear_form_s<S: Scalar>(b: &[f64], y: &[S]) -> S {
    let mut acc = y[0].zero_like();
    for (bi, yi) in b.iter().zip(y) {
        if *bi != 0.0 {
            acc = acc.add(&yi.scale(*bi));
        }
    }
    acc
}

impl NormSpec {
    pub fn euclidean(q: Mat) -> NormSpec {
        let dim = q.rows;
        NormSpec { dim, variant: NormVariant::Euclidean { q } }
    }

    pub fn randers(q: Mat, b: Vec<f64>) -> NormSpec {
        let dim = q.rows;
        NormSpec { dim, variant: NormVariant::Randers { q, b } }
    }

    pub fn alpha_beta(q: Mat, b: Vec<f64>, phi: PhiSpec) -> NormSpec {
        let dim = q.rows;
        NormSpec { dim, variant: NormVariant::AlphaBeta { q, b, phi } }
    }

    pub fn navigation(base: NormSpec, shift: Vec<f64>) -> NormSpec {
        let dim = base.dim;
        // Shifting a shifted norm shifts the indicatrix twice, so the two
        // solves collapse into one with the summed shift.
        if let NormVariant::Navigation { base: inner, shift: inner_shift } = base.variant {
            let total = linalg::add_vec(&inner_shift, &shift);
            return NormSpec { dim, variant: NormVariant::Navigation { base: inner, shift: total } };
        }
        NormSpec { dim, variant: NormVariant::Navigation { base: Box::new(base), shift } }
    }

    /// `F²(y)` for any scalar type: `f64` for plain values, jets for exact
    /// derivatives, nested jets for mixed chart/vector derivatives.
    pub fn f2_s<S: Scalar>(&self, y: &[S]) -> S {
        debug_assert_eq!(y.len(), self.dim);
        match &self.variant {
            NormVariant::Euclidean { q } => quad_form_s(q, y),
            NormVariant::Randers { q, b } => {
                let alpha = quad_form_s(q, y).sqrt();
                let beta = linear_form_s(b, y);
                let f = alpha.add(&beta);
                f.mul(&f)
            }
            NormVariant::AlphaBeta { q, b, phi } => {
                let alpha = quad_form_s(q, y).sqrt();
                let beta = linear_form_s(b, y);
                let s = beta.div(&alpha);
                let f = alpha.mul(&phi.eval_s(&s));
                f.mul(&f)
            }
            NormVariant::Navigation { base, shift } => {
                let f = navigation_f_s(base, shift, y);
                f.mul(&f)
            }
        }
    }

    pub fn f(&self, y: &[f64]) -> f64 {
        self.f2_s(y).max(0.0).sqrt()
    }

    /// `y / F(y)`, the point of the unit sphere of the norm in direction `y`.
    pub fn unit_vector(&self, y: &[f64]) -> Vec<f64> {
        let f = self.f(y);
        y.iter().map(|v| v / f).collect()
    }

    /// Jet of `F²` at `y` to the given truncation order.
    pub fn jet_at(&self, y: &[f64], order: usize) -> Jet<f64> {
        let shape = JetShape::new(self.dim, order);
        let vars: Vec<Jet<f64>> =
            y.iter().enumerate().map(|(i, &v)| Jet::variable(&shape, i, v)).collect();
        self.f2_s(&vars)
    }

    pub fn jet2(&self, y: &[f64]) -> Jet<f64> {
        self.jet_at(y, 2)
    }

    pub fn jet3(&self, y: &[f64]) -> Jet<f64> {
        self.jet_at(y, 3)
    }

    /// `∇F(y)` (the covector ℓ, equal to `∇F²/(2F)`).
    pub fn gradient(&self, y: &[f64]) -> Vec<f64> {
        let jet = self.jet_at(y, 1);
        let f = jet.value().max(0.0).sqrt();
        (0..self.dim).map(|a| jet.d1(a) / (2.0 * f)).collect()
    }

    /// All pointwise tensor invariants at `y ≠ 0`.
    pub fn tensors(&self, y: &[f64]) -> Result<AmbientTensors> {
        AmbientTensors::compute(self, y)
    }

    /// The norm precomposed with the linear map `l` (i.e. `y ↦ F(l·y)`).
    pub fn compose_linear(&self, l: &Mat) -> Result<NormSpec> {
        if l.rows != self.dim || l.cols != self.dim {
            return Err(Error::InvalidArgument(format!(
                "linear map must be {0}×{0} to compose with a dimension-{0} norm",
                self.dim
            )));
        }
        let lt = l.transpose();
        let variant = match &self.variant {
            NormVariant::Euclidean { q } => NormVariant::Euclidean { q: lt.matmul(q).matmul(l) },
            NormVariant::Randers { q, b } => {
                NormVariant::Randers { q: lt.matmul(q).matmul(l), b: lt.matvec(b) }
            }
            NormVariant::AlphaBeta { q, b, phi } => NormVariant::AlphaBeta {
                q: lt.matmul(q).matmul(l),
                b: lt.matvec(b),
                phi: phi.clone(),
            },
            NormVariant::Navigation { base, shift } => {
                let linv = linalg::inverse(l).ok_or_else(|| {
                    Error::InvalidArgument(String::from(
                        "cannot compose a navigation norm with a singular linear map",
                    ))
                })?;
                NormVariant::Navigation {
                    base: Box::new(base.compose_linear(l)?),
                    shift: linv.matvec(shift),
                }
            }
        };
        Ok(NormSpec { dim: self.dim, variant })
    }

    /// Restriction of the norm to the 2-plane spanned by `basis`, expressed
    /// in the coordinates of that basis. `None` when the variant does not
    /// restrict in closed form (a navigation shift off the plane).
    pub fn restrict_to_plane(&self, basis: &[Vec<f64>; 2]) -> Option<NormSpec> {
        let d = self.dim;
        debug_assert!(basis.iter().all(|v| v.len() == d));
        let restrict_q = |q: &Mat| {
            let mut q2 = Mat::zeros(2, 2);
            for i in 0..2 {
                for j in 0..2 {
                    q2[(i, j)] = linalg::dot(&q.matvec(&basis[j]), &basis[i]);
                }
            }
            q2
        };
        let restrict_b =
            |b: &[f64]| -> Vec<f64> { vec![linalg::dot(b, &basis[0]), linalg::dot(b, &basis[1])] };
        let variant = match &self.variant {
            NormVariant::Euclidean { q } => NormVariant::Euclidean { q: restrict_q(q) },
            NormVariant::Randers { q, b } => {
                NormVariant::Randers { q: restrict_q(q), b: restrict_b(b) }
            }
            NormVariant::AlphaBeta { q, b, phi } => NormVariant::AlphaBeta {
                q: restrict_q(q),
                b: restrict_b(b),
                phi: phi.clone(),
            },
            NormVariant::Navigation { base, shift } => {
                // The shift must lie in the plane for the restriction to be
                // a navigation norm of the restricted base.
                let gram = linalg::gram(basis.as_slice());
                let rhs =
                    vec![linalg::dot(shift, &basis[0]), linalg::dot(shift, &basis[1])];
                let coeffs = linalg::solve(&gram, &rhs)?;
                let mut recon = vec![0.0; d];
                linalg::axpy(coeffs[0], &basis[0], &mut recon);
                linalg::axpy(coeffs[1], &basis[1], &mut recon);
                let err = linalg::norm2(&linalg::sub_vec(shift, &recon));
                let scale = linalg::norm2(shift).max(1.0);
                if err > 1e-12 * scale {
                    return None;
                }
                NormVariant::Navigation {
                    base: Box::new(base.restrict_to_plane(basis)?),
                    shift: coeffs,
                }
            }
        };
        Some(NormSpec { dim: 2, variant })
    }

    /// Structural well-formedness plus strong convexity sampled over a
    /// grid of directions.
    pub fn validate(&self) -> Result<()> {
        self.validate_structure()?;
        for dir in sample_directions(self.dim, 6) {
            self.tensors(&dir)?;
        }
        Ok(())
    }

    pub fn validate_structure(&self) -> Result<()> {
        if !(2..=4).contains(&self.dim) {
            return Err(Error::UnsupportedDimension { dim: self.dim });
        }
        let check_q = |q: &Mat, what: &str| -> Result<()> {
            if q.rows != self.dim || q.cols != self.dim {
                return Err(Error::InvalidSpec(format!(
                    "{what} must be a {0}×{0} matrix",
                    self.dim
                )));
            }
            if !q.is_symmetric(1e-9 * (1.0 + q.max_abs())) {
                return Err(Error::InvalidSpec(format!("{what} must be symmetric")));
            }
            if linalg::cholesky(q).is_none() {
                return Err(Error::InvalidSpec(format!("{what} must be positive definite")));
            }
            Ok(())
        };
        match &self.variant {
            NormVariant::Euclidean { q } => check_q(q, "quadratic form")?,
            NormVariant::Randers { q, b } | NormVariant::AlphaBeta { q, b, .. } => {
                check_q(q, "quadratic form")?;
                if b.len() != self.dim {
                    return Err(Error::InvalidSpec(format!(
                        "linear form must have {} components",
                        self.dim
                    )));
                }
                let qinv = linalg::inverse(q).expect("positive definite matrix is invertible");
                let b_norm2 = linalg::dot(&qinv.matvec(b), b);
                if matches!(self.variant, NormVariant::Randers { .. }) && b_norm2 >= 1.0 {
                    return Err(Error::InvalidSpec(format!(
                        "linear term too large for positivity: ‖b‖²_{{Q⁻¹}} = {b_norm2} ≥ 1"
                    )));
                }
            }
            NormVariant::Navigation { base, shift } => {
                if base.dim != self.dim {
                    return Err(Error::InvalidSpec(String::from(
                        "navigation base norm must have the same dimension",
                    )));
                }
                if shift.len() != self.dim {
                    return Err(Error::InvalidSpec(format!(
                        "navigation shift must have {} components",
                        self.dim
                    )));
                }
                base.validate()?;
                let f_of_shift = base.f(shift);
                if f_of_shift >= 1.0 - 1e-10 {
                    return Err(Error::NavigationInfeasible { f_of_shift });
                }
            }
        }
        Ok(())
    }
}

/// Positive solution `F` of `F_base(y/F + shift) = 1`, lifted through jet
/// arithmetic: the scalar root is found by safeguarded Newton, then
/// polished by a constant-slope Newton iteration whose error gains one
/// nilpotent degree per step, so `nil_order + 2` steps reproduce the jet of
/// `F` exactly.
fn navigation_f_s<S: Scalar>(base: &NormSpec, shift: &[f64], y: &[S]) -> S {
    let y0: Vec<f64> = y.iter().map(|c| c.const_part()).collect();
    let (s_star, slope) = navigation_scalar_root(base, shift, &y0);
    let mut s = y[0].lift_f64(s_star);
    let iters = y[0].nil_order() + 2;
    let inv_slope = 1.0 / slope;
    for _ in 0..iters {
        let arg: Vec<S> =
            (0..y.len()).map(|i| s.mul(&y[i]).add_f64(shift[i])).collect();
        let phi = base.f2_s(&arg).sqrt().add_f64(-1.0);
        s = s.sub(&phi.scale(inv_slope));
    }
    s.recip()
}

/// Root of `φ(s) = F_base(s·y0 + shift) − 1` on the bracket guaranteed by
/// the triangle inequality, together with `φ'` at the root.
fn navigation_scalar_root(base: &NormSpec, shift: &[f64], y0: &[f64]) -> (f64, f64) {
    let fy = base.f(y0);
    assert!(fy > 0.0, "navigation requires a nonzero direction");
    let fu = base.f(shift);
    let minus_shift: Vec<f64> = shift.iter().map(|v| -v).collect();
    let fmu = base.f(&minus_shift);
    let mut lo = (1.0 - fu) / fy;
    let mut hi = (1.0 + fmu) / fy;
    let shape = JetShape::new(1, 1);
    let mut s = 0.5 * (lo + hi);
    let mut slope = 1.0;
    for _ in 0..200 {
        let s_jet = Jet::variable(&shape, 0, s);
        let arg: Vec<Jet<f64>> =
            (0..y0.len()).map(|i| s_jet.scale(y0[i]).add_f64(shift[i])).collect();
        let f_jet = base.f2_s(&arg).sqrt();
        let phi = f_jet.value() - 1.0;
        slope = f_jet.d1(0);
        if phi > 0.0 {
            hi = s;
        } else {
            lo = s;
        }
        if phi.abs() < 1e-14 || (hi - lo) < 1e-16 * s.abs() {
            break;
        }
        let newton = s - phi / slope;
        s = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
    }
    (s, slope)
}

/// Pointwise invariants of a Minkowski norm at a fixed direction `y`.
///
/// Index convention: all tensors are covariant in the ambient coordinates;
/// the rank-3 ones are flattened as `idx = (a·dim + b)·dim + c`.
#[derive(Debug, Clone)]
pub struct AmbientTensors {
    pub dim: usize,
    pub y: Vec<f64>,
    /// `F(y)`
    pub f: f64,
    /// Fundamental tensor `g = ½ ∂² F²`.
    pub g: Mat,
    pub ginv: Mat,
    pub det_g: f64,
    /// `ℓ = ∇F`
    pub ell: Vec<f64>,
    /// Angular metric `h = g − ℓ⊗ℓ`.
    pub h: Mat,
    /// Cartan torsion `A = (F/4) ∂³ F²`, flattened.
    pub cartan: Vec<f64>,
    /// Mean Cartan form `I_a = g^{bc} A_{abc}`.
    pub cartan_form: Vec<f64>,
}

impl AmbientTensors {
    pub fn compute(spec: &NormSpec, y: &[f64]) -> Result<AmbientTensors> {
        Self::from_jet3(spec.dim, y, &spec.jet3(y))
    }

    /// Tensors from a precomputed order-3 jet of `F²` at `y`. This is how
    /// norms induced on subspaces get their invariants: evaluate `F²`
    /// through the embedding with subspace-coordinate jets and read the
    /// result off here.
    pub fn from_jet3(dim: usize, y: &[f64], jet: &Jet<f64>) -> Result<AmbientTensors> {
        let f2 = *jet.value();
        if !(f2 > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "norm is not positive at the sample direction (F² = {f2})"
            )));
        }
        let f = f2.sqrt();
        let mut g = Mat::zeros(dim, dim);
        for a in 0..dim {
            for b in 0..dim {
                g[(a, b)] = 0.5 * jet.d2(a, b);
            }
        }
        let (eigs, _) = linalg::sym_eigen(&g);
        if eigs[0] <= 0.0 || eigs[0] < 1e-12 * eigs[dim - 1] {
            return Err(Error::NotStronglyConvex { min_eig_ratio: eigs[0] / eigs[dim - 1] });
        }
        let ginv = linalg::inverse(&g).expect("positive definite fundamental tensor");
        let det_g = linalg::det(&g);
        let ell: Vec<f64> = (0..dim).map(|a| jet.d1(a) / (2.0 * f)).collect();
        let mut h = g.clone();
        for a in 0..dim {
            for b in 0..dim {
                h[(a, b)] -= ell[a] * ell[b];
            }
        }
        let mut cartan = vec![0.0; dim * dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    cartan[(a * dim + b) * dim + c] = 0.25 * f * jet.d3(a, b, c);
                }
            }
        }
        let mut cartan_form = vec![0.0; dim];
        for a in 0..dim {
            let mut acc = 0.0;
            for b in 0..dim {
                for c in 0..dim {
                    acc += ginv[(b, c)] * cartan[(a * dim + b) * dim + c];
                }
            }
            cartan_form[a] = acc;
        }
        Ok(AmbientTensors { dim, y: y.to_vec(), f, g, ginv, det_g, ell, h, cartan, cartan_form })
    }

    pub fn cartan_at(&self, a: usize, b: usize, c: usize) -> f64 {
        self.cartan[(a * self.dim + b) * self.dim + c]
    }

    /// Pseudo-inverse of the angular metric on the orthogonal complement of
    /// `y`: `h* = g⁻¹ − y⊗y/F²`, satisfying `h* h = Id − y⊗ℓ/F`.
    pub fn angular_pseudo_inverse(&self) -> Mat {
        let mut hinv = self.ginv.clone();
        let f2 = self.f * self.f;
        for a in 0..self.dim {
            for b in 0..self.dim {
                hinv[(a, b)] -= self.y[a] * self.y[b] / f2;
            }
        }
        hinv
    }

    /// Matsumoto torsion `M = A − c·(I⊗h + cyclic)`, flattened like
    /// [`AmbientTensors::cartan`].
    pub fn matsumoto(&self, coeff: MatsumotoCoeff) -> Vec<f64> {
        let d = self.dim;
        let c = coeff.value(d);
        let mut m = self.cartan.clone();
        for a in 0..d {
            for b in 0..d {
                for k in 0..d {
                    m[(a * d + b) * d + k] -= c
                        * (self.cartan_form[a] * self.h[(b, k)]
                            + self.cartan_form[b] * self.h[(k, a)]
                            + self.cartan_form[k] * self.h[(a, b)]);
                }
            }
        }
        m
    }

    pub fn max_abs_matsumoto(&self, coeff: MatsumotoCoeff) -> f64 {
        self.matsumoto(coeff).iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_cartan(&self) -> f64 {
        self.cartan.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Distortion `τ = ln(√det g / σ)` for a given normalization constant
    /// (the Busemann–Hausdorff volume density of the norm).
    pub fn distortion(&self, sigma: f64) -> f64 {
        (self.det_g.sqrt() / sigma).ln()
    }
}

/// A deterministic covering of the unit directions, used for validation
/// sampling and convexity scans (not for quadrature).
pub fn sample_directions(dim: usize, res: usize) -> Vec<Vec<f64>> {
    use core::f64::consts::PI;
    let mut dirs = Vec::new();
    match dim {
        2 => {
            let n = 4 * res;
            for k in 0..n {
                let t = 2.0 * PI * k as f64 / n as f64;
                dirs.push(vec![t.cos(), t.sin()]);
            }
        }
        3 => {
            dirs.push(vec![0.0, 0.0, 1.0]);
            dirs.push(vec![0.0, 0.0, -1.0]);
            for i in 1..res {
                let theta = PI * i as f64 / res as f64;
                let (st, ct) = (theta.sin(), theta.cos());
                let m = 2 * res;
                for j in 0..m {
                    let phi = 2.0 * PI * j as f64 / m as f64;
                    dirs.push(vec![st * phi.cos(), st * phi.sin(), ct]);
                }
            }
        }
        4 => {
            dirs.push(vec![0.0, 0.0, 0.0, 1.0]);
            dirs.push(vec![0.0, 0.0, 0.0, -1.0]);
            for i in 1..res {
                let psi = PI * i as f64 / res as f64;
                let (sp, cp) = (psi.sin(), psi.cos());
                for j in 1..res {
                    let theta = PI * j as f64 / res as f64;
                    let (st, ct) = (theta.sin(), theta.cos());
                    let m = 2 * res;
                    for k in 0..m {
                        let phi = 2.0 * PI * k as f64 / m as f64;
                        dirs.push(vec![
                            sp * st * phi.cos(),
                            sp * st * phi.sin(),
                            sp * ct,
                            cp,
                        ]);
                    }
                }
            }
        }
        _ => {}
    }
    dirs
}

/// Finite-difference derivatives of `F²`: gradient, Hessian and third
/// tensor by Richardson-extrapolated central differences. This exists as
/// an independent cross-check of the jet engine; it is never used in the
/// production pipeline.
pub struct FdDerivs {
    pub f2: f64,
    pub grad: Vec<f64>,
    pub hess: Mat,
    pub third: Vec<f64>,
}

impl NormSpec {
    pub fn jet3_fd(&self, y: &[f64]) -> FdDerivs {
        let d = self.dim;
        let h0 = 5e-3 * linalg::norm2(y).max(1e-3);
        let coarse = self.fd_level(y, h0);
        let fine = self.fd_level(y, 0.5 * h0);
        let rich = |a: f64, b: f64| (4.0 * b - a) / 3.0;
        let grad: Vec<f64> =
            coarse.1.iter().zip(&fine.1).map(|(&a, &b)| rich(a, b)).collect();
        let mut hess = Mat::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                hess[(i, j)] = rich(coarse.2[(i, j)], fine.2[(i, j)]);
            }
        }
        let third: Vec<f64> =
            coarse.3.iter().zip(&fine.3).map(|(&a, &b)| rich(a, b)).collect();
        FdDerivs { f2: coarse.0, grad, hess, third }
    }

    fn fd_level(&self, y: &[f64], h: f64) -> (f64, Vec<f64>, Mat, Vec<f64>) {
        let d = self.dim;
        let at = |offsets: &[(usize, f64)]| -> f64 {
            let mut p = y.to_vec();
            for &(i, s) in offsets {
                p[i] += s * h;
            }
            self.f2_s(&p)
        };
        let f0 = self.f2_s(&y.to_vec());
        let mut grad = vec![0.0; d];
        for i in 0..d {
            grad[i] = (at(&[(i, 1.0)]) - at(&[(i, -1.0)])) / (2.0 * h);
        }
        let mut hess = Mat::zeros(d, d);
        for i in 0..d {
            hess[(i, i)] = (at(&[(i, 1.0)]) - 2.0 * f0 + at(&[(i, -1.0)])) / (h * h);
            for j in (i + 1)..d {
                let v = (at(&[(i, 1.0), (j, 1.0)]) - at(&[(i, 1.0), (j, -1.0)])
                    - at(&[(i, -1.0), (j, 1.0)])
                    + at(&[(i, -1.0), (j, -1.0)]))
                    / (4.0 * h * h);
                hess[(i, j)] = v;
                hess[(j, i)] = v;
            }
        }
        let mut third = vec![0.0; d * d * d];
        for i in 0..d {
            for j in i..d {
                for k in j..d {
                    let mut acc = 0.0;
                    for &si in &[1.0, -1.0] {
                        for &sj in &[1.0, -1.0] {
                            for &sk in &[1.0, -1.0] {
                                acc += si * sj * sk * at(&[(i, si), (j, sj), (k, sk)]);
                            }
                        }
                    }
                    let v = acc / (8.0 * h * h * h);
                    for (a, b, c) in
                        [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)]
                    {
                        third[(a * d + b) * d + c] = v;
                    }
                }
            }
        }
        (f0, grad, hess, third)
    }

    /// Jet derivatives cross-validated against the finite-difference
    /// oracle; errors out when the two disagree beyond `tol` (relative to
    /// the largest derivative magnitude).
    pub fn jet3_checked(&self, y: &[f64], tol: f64) -> Result<Jet<f64>> {
        let jet = self.jet3(y);
        let fd = self.jet3_fd(y);
        let d = self.dim;
        let mut scale: f64 = 1.0;
        let mut max_dev: f64 = (*jet.value() - fd.f2).abs();
        for a in 0..d {
            scale = scale.max(fd.grad[a].abs());
            max_dev = max_dev.max((jet.d1(a) - fd.grad[a]).abs());
            for b in 0..d {
                scale = scale.max(fd.hess[(a, b)].abs());
                max_dev = max_dev.max((jet.d2(a, b) - fd.hess[(a, b)]).abs());
                for c in 0..d {
                    let fd3 = fd.third[(a * d + b) * d + c];
                    scale = scale.max(fd3.abs());
                    max_dev = max_dev.max((jet.d3(a, b, c) - fd3).abs());
                }
            }
        }
        let rel = max_dev / scale;
        if rel > tol {
            return Err(Error::DifferentiationFailure { max_dev: rel, tol });
        }
        Ok(jet)
    }
}
