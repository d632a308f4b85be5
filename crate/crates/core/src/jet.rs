// Copyright 2026 the minkowski-geometry Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Truncated multivariate Taylor arithmetic ("jets"), generic over a scalar
//! type so that jets can nest.
//!
//! A `Jet<S>` holds the Taylor coefficients of a function of `nvars`
//! variables, truncated at total degree `order`, with coefficients in `S`.
//! With `S = f64` this is ordinary forward-mode differentiation to third
//! order; with `S = Jet<f64>` the coefficients themselves carry a second,
//! independent family of variables, which yields exact mixed partials of
//! chart-dependent quantities without any finite differencing.
//!
//! Coefficients are stored as Taylor coefficients (the factorial is
//! absorbed), so multiplication is plain truncated polynomial convolution
//! and `∂^α f = α! · c_α`.

use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use crate::float::FloatFuncs;

/// Arithmetic required of jet coefficients. Implemented by `f64` and by
/// `Jet<S>` itself, which is what makes nesting work.
///
/// `const_part` digs down to the innermost `f64`, and `nil_order` is the
/// total truncation degree across all nesting levels: the non-constant part
/// of the scalar is nilpotent of that order, which bounds how many Taylor
/// terms a univariate composition needs.
pub trait Scalar: Clone + core::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Constant with the same shape as `self`.
    fn lift_f64(&self, v: f64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, k: f64) -> Self;
    /// Add a constant to the innermost constant coefficient.
    fn add_f64(&self, k: f64) -> Self;
    fn recip(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn powf(&self, p: f64) -> Self;
    fn const_part(&self) -> f64;
    fn nil_order(&self) -> usize;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    fn powi(&self, k: i32) -> Self {
        if k < 0 {
            return self.recip().powi(-k);
        }
        let mut result = self.one_like();
        let mut base = self.clone();
        let mut e = k as u32;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }
}

impl Scalar for f64 {
    fn zero_like(&self) -> f64 {
        0.0
    }
    fn one_like(&self) -> f64 {
        1.0
    }
    fn lift_f64(&self, v: f64) -> f64 {
        v
    }
    fn add(&self, other: &f64) -> f64 {
        self + other
    }
    fn sub(&self, other: &f64) -> f64 {
        self - other
    }
    fn mul(&self, other: &f64) -> f64 {
        self * other
    }
    fn neg(&self) -> f64 {
        -self
    }
    fn scale(&self, k: f64) -> f64 {
        self * k
    }
    fn add_f64(&self, k: f64) -> f64 {
        self + k
    }
    fn recip(&self) -> f64 {
        1.0 / self
    }
    fn sqrt(&self) -> f64 {
        (*self).sqrt()
    }
    fn exp(&self) -> f64 {
        (*self).exp()
    }
    fn ln(&self) -> f64 {
        (*self).ln()
    }
    fn powf(&self, p: f64) -> f64 {
        (*self).powf(p)
    }
    fn const_part(&self) -> f64 {
        *self
    }
    fn nil_order(&self) -> usize {
        0
    }
}

/// Shared layout data for jets of a given `(nvars, order)`: the graded-lex
/// enumeration of multi-indices and a pairwise product-rank table, so that
/// multiplication is a flat double loop.
#[derive(Debug)]
pub struct JetShape {
    pub nvars: usize,
    pub order: usize,
    len: usize,
    /// Flattened multi-indices, `nvars` entries per rank.
    indices: Vec<u8>,
    /// `i * len + j -> rank(α_i + α_j)`, `u16::MAX` when the sum overflows
    /// the truncation order.
    prod: Vec<u16>,
    /// `rank -> α!`
    factorial: Vec<f64>,
}

impl JetShape {
    pub fn new(nvars: usize, order: usize) -> Rc<JetShape> {
        assert!(nvars >= 1 && order >= 1, "jet shape needs nvars, order >= 1");
        let mut indices: Vec<u8> = Vec::new();
        let mut prefix = vec![0u8; nvars];
        for d in 0..=order {
            enumerate_degree(nvars, d as u8, 0, &mut prefix, &mut indices);
        }
        let len = indices.len() / nvars;
        assert!(len <= u16::MAX as usize);

        // key(α) = Σ α_i · stride^i, valid because every α_i ≤ order.
        let stride = order + 1;
        let mut table_len = 1usize;
        for _ in 0..nvars {
            table_len *= stride;
        }
        let mut rank_of = vec![u16::MAX; table_len];
        for r in 0..len {
            let alpha = &indices[r * nvars..(r + 1) * nvars];
            let mut key = 0usize;
            for &a in alpha {
                key = key * stride + a as usize;
            }
            rank_of[key] = r as u16;
        }

        let mut prod = vec![u16::MAX; len * len];
        let mut factorial = vec![1.0f64; len];
        for i in 0..len {
            let ai = &indices[i * nvars..(i + 1) * nvars];
            let mut f = 1.0;
            for &a in ai {
                for m in 2..=a {
                    f *= m as f64;
                }
            }
            factorial[i] = f;
            for j in 0..len {
                let aj = &indices[j * nvars..(j + 1) * nvars];
                let total: usize = ai.iter().zip(aj).map(|(&x, &y)| (x + y) as usize).sum();
                if total > order {
                    continue;
                }
                let mut key = 0usize;
                for (&x, &y) in ai.iter().zip(aj) {
                    key = key * stride + (x + y) as usize;
                }
                prod[i * len + j] = rank_of[key];
            }
        }
        Rc::new(JetShape { nvars, order, len, indices, prod, factorial })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn alpha(&self, rank: usize) -> &[u8] {
        &self.indices[rank * self.nvars..(rank + 1) * self.nvars]
    }

    pub fn rank(&self, alpha: &[u8]) -> usize {
        debug_assert_eq!(alpha.len(), self.nvars);
        for r in 0..self.len {
            if self.alpha(r) == alpha {
                return r;
            }
        }
        panic!("multi-index out of shape");
    }
}

/// Degree-`d` multi-indices over the trailing variables, first exponent
/// descending, so the degree-1 block lists the variables in order.
fn enumerate_degree(nvars: usize, d: u8, var: usize, prefix: &mut [u8], out: &mut Vec<u8>) {
    if var == nvars - 1 {
        prefix[var] = d;
        out.extend_from_slice(prefix);
        return;
    }
    for a in (0..=d).rev() {
        prefix[var] = a;
        enumerate_degree(nvars, d - a, var + 1, prefix, out);
    }
}

#[derive(Debug, Clone)]
pub struct Jet<S: Scalar> {
    pub shape: Rc<JetShape>,
    pub coeffs: Vec<S>,
}

impl<S: Scalar> Jet<S> {
    pub fn constant(shape: &Rc<JetShape>, value: S) -> Jet<S> {
        let zero = value.zero_like();
        let mut coeffs = vec![zero; shape.len()];
        coeffs[0] = value;
        Jet { shape: Rc::clone(shape), coeffs }
    }

    /// `value + x_i`: the seed for differentiating with respect to
    /// variable `i` around the point `value`.
    pub fn variable(shape: &Rc<JetShape>, i: usize, value: S) -> Jet<S> {
        debug_assert!(i < shape.nvars);
        let mut jet = Jet::constant(shape, value);
        jet.coeffs[1 + i] = jet.coeffs[0].one_like();
        jet
    }

    /// `value + Σ seeds[i] · x_i`: a point moving linearly with the jet
    /// variables, the building block of chart parametrizations.
    pub fn affine(shape: &Rc<JetShape>, value: S, seeds: &[f64]) -> Jet<S> {
        debug_assert_eq!(seeds.len(), shape.nvars);
        let mut jet = Jet::constant(shape, value);
        for (i, &s) in seeds.iter().enumerate() {
            jet.coeffs[1 + i] = jet.coeffs[0].lift_f64(s);
        }
        jet
    }

    pub fn coeff(&self, alpha: &[u8]) -> &S {
        &self.coeffs[self.shape.rank(alpha)]
    }

    /// `∂^α f = α! · c_α`.
    pub fn deriv(&self, alpha: &[u8]) -> S {
        let r = self.shape.rank(alpha);
        self.coeffs[r].scale(self.shape.factorial[r])
    }

    pub fn value(&self) -> &S {
        &self.coeffs[0]
    }

    pub fn d1(&self, i: usize) -> S {
        self.coeffs[1 + i].clone()
    }

    pub fn d2(&self, i: usize, j: usize) -> S {
        let mut alpha = vec![0u8; self.shape.nvars];
        alpha[i] += 1;
        alpha[j] += 1;
        self.deriv(&alpha)
    }

    pub fn d3(&self, i: usize, j: usize, k: usize) -> S {
        let mut alpha = vec![0u8; self.shape.nvars];
        alpha[i] += 1;
        alpha[j] += 1;
        alpha[k] += 1;
        self.deriv(&alpha)
    }

    /// `∂f/∂x_i` as a jet in the same shape. The top-degree coefficients of
    /// the result are zero, so it is only valid to `order − 1`.
    pub fn derivative(&self, i: usize) -> Jet<S> {
        assert!(i < self.shape.nvars, "variable index out of range");
        let len = self.shape.len();
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; len];
        let ei = 1 + i;
        for r in 0..len {
            let up = self.shape.prod[r * len + ei];
            if up != u16::MAX {
                // coefficient of x^β in ∂_i f is (β_i + 1)·c_{β+e_i}
                let bi = self.shape.alpha(r)[i] as f64;
                out[r] = self.coeffs[up as usize].scale(bi + 1.0);
            }
        }
        Jet { shape: Rc::clone(&self.shape), coeffs: out }
    }

    /// Horner evaluation of `Σ taylor[k] · p^k` where `p` is the nilpotent
    /// part of `self`; `taylor[k]` must be `g⁽ᵏ⁾(c)/k!` at `c = const_part`.
    fn univariate(&self, taylor: &[f64]) -> Jet<S> {
        let c = self.const_part();
        let p = self.add_f64(-c);
        let last = taylor[taylor.len() - 1];
        let mut acc = Jet::constant(&self.shape, self.coeffs[0].lift_f64(last));
        for k in (0..taylor.len() - 1).rev() {
            acc = acc.mul(&p).add_f64(taylor[k]);
        }
        acc
    }
}

impl<S: Scalar> Scalar for Jet<S> {
    fn zero_like(&self) -> Jet<S> {
        Jet::constant(&self.shape, self.coeffs[0].zero_like())
    }
    fn one_like(&self) -> Jet<S> {
        Jet::constant(&self.shape, self.coeffs[0].one_like())
    }
    fn lift_f64(&self, v: f64) -> Jet<S> {
        Jet::constant(&self.shape, self.coeffs[0].lift_f64(v))
    }
    fn add(&self, other: &Jet<S>) -> Jet<S> {
        debug_assert_eq!((self.shape.nvars, self.shape.order), (other.shape.nvars, other.shape.order));
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect();
        Jet { shape: Rc::clone(&self.shape), coeffs }
    }
    fn sub(&self, other: &Jet<S>) -> Jet<S> {
        debug_assert_eq!((self.shape.nvars, self.shape.order), (other.shape.nvars, other.shape.order));
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect();
        Jet { shape: Rc::clone(&self.shape), coeffs }
    }
    fn mul(&self, other: &Jet<S>) -> Jet<S> {
        debug_assert_eq!((self.shape.nvars, self.shape.order), (other.shape.nvars, other.shape.order));
        let len = self.shape.len();
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; len];
        let prod = &self.shape.prod;
        for i in 0..len {
            let a = &self.coeffs[i];
            let row = &prod[i * len..(i + 1) * len];
            for (j, &k) in row.iter().enumerate() {
                if k == u16::MAX {
                    continue;
                }
                let k = k as usize;
                out[k] = out[k].add(&a.mul(&other.coeffs[j]));
            }
        }
        Jet { shape: Rc::clone(&self.shape), coeffs: out }
    }
    fn neg(&self) -> Jet<S> {
        let coeffs = self.coeffs.iter().map(|a| a.neg()).collect();
        Jet { shape: Rc::clone(&self.shape), coeffs }
    }
    fn scale(&self, k: f64) -> Jet<S> {
        let coeffs = self.coeffs.iter().map(|a| a.scale(k)).collect();
        Jet { shape: Rc::clone(&self.shape), coeffs }
    }
    fn add_f64(&self, k: f64) -> Jet<S> {
        let mut out = self.clone();
        out.coeffs[0] = out.coeffs[0].add_f64(k);
        out
    }
    fn recip(&self) -> Jet<S> {
        let c = self.const_part();
        let m = self.nil_order();
        let mut taylor = vec![0.0; m + 1];
        taylor[0] = 1.0 / c;
        for k in 1..=m {
            taylor[k] = taylor[k - 1] * (-1.0 / c);
        }
        self.univariate(&taylor)
    }
    fn sqrt(&self) -> Jet<S> {
        let c = self.const_part();
        let m = self.nil_order();
        let mut taylor = vec![0.0; m + 1];
        taylor[0] = c.sqrt();
        for k in 1..=m {
            taylor[k] = taylor[k - 1] * (1.5 - k as f64) / (k as f64 * c);
        }
        self.univariate(&taylor)
    }
    fn exp(&self) -> Jet<S> {
        let c = self.const_part();
        let m = self.nil_order();
        let mut taylor = vec![0.0; m + 1];
        taylor[0] = c.exp();
        for k in 1..=m {
            taylor[k] = taylor[k - 1] / k as f64;
        }
        self.univariate(&taylor)
    }
    fn ln(&self) -> Jet<S> {
        let c = self.const_part();
        let m = self.nil_order();
        let mut taylor = vec![0.0; m + 1];
        taylor[0] = c.ln();
        if m >= 1 {
            taylor[1] = 1.0 / c;
        }
        for k in 2..=m {
            taylor[k] = taylor[k - 1] * (-((k - 1) as f64)) / (k as f64 * c);
        }
        self.univariate(&taylor)
    }
    fn powf(&self, p: f64) -> Jet<S> {
        let c = self.const_part();
        let m = self.nil_order();
        let mut taylor = vec![0.0; m + 1];
        taylor[0] = c.powf(p);
        for k in 1..=m {
            taylor[k] = taylor[k - 1] * (p - (k - 1) as f64) / (k as f64 * c);
        }
        self.univariate(&taylor)
    }
    fn const_part(&self) -> f64 {
        self.coeffs[0].const_part()
    }
    fn nil_order(&self) -> usize {
        self.shape.order + self.coeffs[0].nil_order()
    }
}

/// Determinant of a small matrix with entries in any `Scalar`, by cofactor
/// expansion along the first row (sizes here never exceed 4).
pub fn det_s<S: Scalar>(m: &[Vec<S>]) -> S {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    match n {
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        _ => {
            let mut acc = m[0][0].zero_like();
            for j in 0..n {
                let minor: Vec<Vec<S>> = (1..n)
                    .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect())
                    .collect();
                let term = m[0][j].mul(&det_s(&minor));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// Adjugate, so that `m · adj(m) = det(m) · I`; used to invert jet-valued
/// metric blocks without a jet-valued pivoting solver.
pub fn adjugate_s<S: Scalar>(m: &[Vec<S>]) -> Vec<Vec<S>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![m[0][0].one_like()]];
    }
    let mut adj = vec![vec![m[0][0].zero_like(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<S>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect())
                .collect();
            let cof = det_s(&minor);
            adj[j][i] = if (i + j) % 2 == 0 { cof } else { cof.neg() };
        }
    }
    adj
}
