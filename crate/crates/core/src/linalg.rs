// Copyright 2026 the minkowski-geometry Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Dense linear algebra for the tiny matrices this crate works with.
//!
//! Ambient dimension is at most 4 and tangent dimension at most 3, so all
//! solvers below are written for robustness at fixed small sizes (partial
//! pivoting, cyclic Jacobi, Householder) rather than asymptotic speed.

use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use crate::float::FloatFuncs;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            debug_assert_eq!(row.len(), c);
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(self.cols, x.len());
        let mut out = vec![0.0; self.rows];
        for i in 0..self.rows {
            out[i] = dot(self.row(i), x);
        }
        out
    }

    pub fn scale(&self, k: f64) -> Mat {
        let mut m = self.clone();
        for v in &mut m.data {
            *v *= k;
        }
        m
    }

    pub fn add(&self, other: &Mat) -> Mat {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (v, w) in m.data.iter_mut().zip(&other.data) {
            *v += w;
        }
        m
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (v, w) in m.data.iter_mut().zip(&other.data) {
            *v -= w;
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if (self[(i, j)] - self[(j, i)]).abs() > tol {
                    return false;
                }
            }
        }
        true
    }
}

impl core::ops::Index<(usize, usize)> for Mat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn scaled(x: &[f64], k: f64) -> Vec<f64> {
    x.iter().map(|v| v * k).collect()
}

pub fn sub_vec(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_vec(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// LU decomposition with partial pivoting. Returns (LU, perm, sign) or None
/// when the matrix is numerically singular.
fn lu(m: &Mat) -> Option<(Mat, Vec<usize>, f64)> {
    debug_assert!(m.is_square());
    let n = m.rows;
    let mut a = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    for k in 0..n {
        let mut p = k;
        let mut best = a[(k, k)].abs();
        for i in (k + 1)..n {
            let v = a[(i, k)].abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best == 0.0 {
            return None;
        }
        if p != k {
            for j in 0..n {
                let tmp = a[(k, j)];
                a[(k, j)] = a[(p, j)];
                a[(p, j)] = tmp;
            }
            perm.swap(k, p);
            sign = -sign;
        }
        let pivot = a[(k, k)];
        for i in (k + 1)..n {
            let f = a[(i, k)] / pivot;
            a[(i, k)] = f;
            for j in (k + 1)..n {
                a[(i, j)] -= f * a[(k, j)];
            }
        }
    }
    Some((a, perm, sign))
}

pub fn det(m: &Mat) -> f64 {
    match lu(m) {
        Some((a, _, sign)) => {
            let mut d = sign;
            for i in 0..m.rows {
                d *= a[(i, i)];
            }
            d
        }
        None => 0.0,
    }
}

fn lu_solve(luf: &(Mat, Vec<usize>, f64), b: &[f64]) -> Vec<f64> {
    let (a, perm, _) = luf;
    let n = a.rows;
    let mut x: Vec<f64> = perm.iter().map(|&p| b[p]).collect();
    for i in 1..n {
        for j in 0..i {
            x[i] -= a[(i, j)] * x[j];
        }
    }
    for i in (0..n).rev() {
        for j in (i + 1)..n {
            x[i] -= a[(i, j)] * x[j];
        }
        x[i] /= a[(i, i)];
    }
    x
}

pub fn solve(m: &Mat, b: &[f64]) -> Option<Vec<f64>> {
    lu(m).map(|f| lu_solve(&f, b))
}

pub fn inverse(m: &Mat) -> Option<Mat> {
    let f = lu(m)?;
    let n = m.rows;
    let mut inv = Mat::zeros(n, n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        let col = lu_solve(&f, &e);
        for i in 0..n {
            inv[(i, j)] = col[i];
        }
        e[j] = 0.0;
    }
    Some(inv)
}

/// Lower-triangular Cholesky factor of an SPD matrix, or None.
pub fn cholesky(m: &Mat) -> Option<Mat> {
    debug_assert!(m.is_square());
    let n = m.rows;
    let mut l = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            if i == j {
                if s <= 0.0 {
                    return None;
                }
                l[(i, j)] = s.sqrt();
            } else {
                l[(i, j)] = s / l[(j, j)];
            }
        }
    }
    Some(l)
}

/// Solve L x = b for lower-triangular L.
fn forward_sub(l: &Mat, b: &[f64]) -> Vec<f64> {
    let n = l.rows;
    let mut x = b.to_vec();
    for i in 0..n {
        for j in 0..i {
            let xj = x[j];
            x[i] -= l[(i, j)] * xj;
        }
        x[i] /= l[(i, i)];
    }
    x
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns eigenvalues (ascending) and the matrix whose columns are the
/// corresponding orthonormal eigenvectors.
pub fn sym_eigen(m: &Mat) -> (Vec<f64>, Mat) {
    debug_assert!(m.is_square());
    let n = m.rows;
    let mut a = m.clone();
    let mut v = Mat::identity(n);
    for _sweep in 0..64 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[(i, j)] * a[(i, j)];
            }
        }
        if off.sqrt() < 1e-15 * (1.0 + a.max_abs()) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (a[(i, i)], i)).collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let vals: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let mut vecs = Mat::zeros(n, n);
    for (newcol, &(_, oldcol)) in pairs.iter().enumerate() {
        for r in 0..n {
            vecs[(r, newcol)] = v[(r, oldcol)];
        }
    }
    (vals, vecs)
}

/// Eigenvalues (ascending) of the pencil S v = λ H v for symmetric S and
/// SPD H, via the Cholesky reduction L⁻¹ S L⁻ᵀ.
pub fn gen_sym_eigen(s: &Mat, h: &Mat) -> Option<Vec<f64>> {
    let l = cholesky(h)?;
    let n = s.rows;
    // B = L⁻¹ S L⁻ᵀ, built column by column.
    let mut half = Mat::zeros(n, n);
    for j in 0..n {
        let col: Vec<f64> = (0..n).map(|i| s[(i, j)]).collect();
        let x = forward_sub(&l, &col);
        for i in 0..n {
            half[(i, j)] = x[i];
        }
    }
    let mut b = Mat::zeros(n, n);
    for i in 0..n {
        let row: Vec<f64> = (0..n).map(|j| half[(i, j)]).collect();
        let x = forward_sub(&l, &row);
        for j in 0..n {
            b[(i, j)] = x[j];
        }
    }
    // Symmetrize away roundoff before Jacobi.
    for i in 0..n {
        for j in (i + 1)..n {
            let m = 0.5 * (b[(i, j)] + b[(j, i)]);
            b[(i, j)] = m;
            b[(j, i)] = m;
        }
    }
    Some(sym_eigen(&b).0)
}

/// Least-squares solution of an overdetermined system via Householder QR.
pub fn lstsq(a: &Mat, b: &[f64]) -> Vec<f64> {
    debug_assert!(a.rows >= a.cols);
    debug_assert_eq!(a.rows, b.len());
    let m = a.rows;
    let n = a.cols;
    let mut r = a.clone();
    let mut y = b.to_vec();
    for k in 0..n {
        let mut alpha = 0.0;
        for i in k..m {
            alpha += r[(i, k)] * r[(i, k)];
        }
        alpha = alpha.sqrt();
        if alpha == 0.0 {
            continue;
        }
        if r[(k, k)] > 0.0 {
            alpha = -alpha;
        }
        let mut v = vec![0.0; m];
        for i in k..m {
            v[i] = r[(i, k)];
        }
        v[k] -= alpha;
        let vnorm2 = dot(&v, &v);
        if vnorm2 == 0.0 {
            continue;
        }
        for j in k..n {
            let mut proj = 0.0;
            for i in k..m {
                proj += v[i] * r[(i, j)];
            }
            let f = 2.0 * proj / vnorm2;
            for i in k..m {
                r[(i, j)] -= f * v[i];
            }
        }
        let mut proj = 0.0;
        for i in k..m {
            proj += v[i] * y[i];
        }
        let f = 2.0 * proj / vnorm2;
        for i in k..m {
            y[i] -= f * v[i];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for j in (i + 1)..n {
            s -= r[(i, j)] * x[j];
        }
        x[i] = s / r[(i, i)];
    }
    x
}

/// Gram matrix of the columns of `vectors` (each a length-`dim` vector).
pub fn gram(vectors: &[Vec<f64>]) -> Mat {
    let n = vectors.len();
    let mut g = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = dot(&vectors[i], &vectors[j]);
        }
    }
    g
}
