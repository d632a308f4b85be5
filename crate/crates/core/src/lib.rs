// Copyright 2026 the minkowski-geometry Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Differential- and affine-geometric invariants of Minkowski norms.
//!
//! A Minkowski norm is a positively 1-homogeneous, strongly convex function
//! on a finite-dimensional vector space. This crate computes the tensors
//! that classify such norms — the fundamental tensor, the Cartan and
//! Matsumoto torsions, the mean Cartan form — together with the
//! equiaffine geometry of the unit sphere of the norm (the indicatrix):
//! its Blaschke metric, affine shape operator, curvature functions, and
//! the affine and dual mixed volumes built from them.
//!
//! The crate is `no_std` (with `alloc`); everything that needs an OS lives
//! in the companion CLI crate. All differentiation is exact truncated
//! Taylor arithmetic (see [`jet`]), never finite differencing, although a
//! finite-difference cross-check is available for validation.
//!
//! # Feature flags
//!
//! - `std` (default): use the standard library's float intrinsics.
//! - `no-std-math`: build without `std`, routing float math through `libm`.

#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "no-std-math")))]
compile_error!("enable either the `std` or the `no-std-math` feature");

mod float;

pub mod blaschke;
pub mod error;
pub mod indicatrix;
pub mod jet;
pub mod linalg;
pub mod navigation;
pub mod norm;
pub mod section;
pub mod volumes;

pub use error::{Error, Result};
pub use norm::{AmbientTensors, MatsumotoCoeff, NormSpec, NormVariant, PhiSpec};
