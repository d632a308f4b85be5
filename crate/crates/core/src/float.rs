// Copyright 2026 the minkowski-geometry Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Math functions for `f64` that work without `std`.
//!
//! With the `std` feature (default) the inherent methods are used and this
//! module is inert. Without `std`, enable `no-std-math` to route the same
//! calls through `libm`.

#[cfg(all(not(feature = "std"), not(feature = "no-std-math")))]
compile_error!("building without `std` requires the `no-std-math` feature");

/// Shim trait mirroring the inherent `f64` math methods missing in `core`.
#[cfg(not(feature = "std"))]
pub(crate) trait FloatFuncs: Sized {
    // Recent toolchains ship an inherent `f64::abs` in `core` that shadows
    // this method; the MSRV toolchain still resolves through the trait.
    #[allow(dead_code)]
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn cbrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn powf(self, e: Self) -> Self;
    fn powi(self, e: i32) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn acos(self) -> Self;
}

#[cfg(not(feature = "std"))]
impl FloatFuncs for f64 {
    fn abs(self) -> Self {
        libm::fabs(self)
    }
    fn sqrt(self) -> Self {
        libm::sqrt(self)
    }
    fn cbrt(self) -> Self {
        libm::cbrt(self)
    }
    fn exp(self) -> Self {
        libm::exp(self)
    }
    fn ln(self) -> Self {
        libm::log(self)
    }
    fn powf(self, e: Self) -> Self {
        libm::pow(self, e)
    }
    fn powi(self, e: i32) -> Self {
        libm::pow(self, e as f64)
    }
    fn sin(self) -> Self {
        libm::sin(self)
    }
    fn cos(self) -> Self {
        libm::cos(self)
    }
    fn acos(self) -> Self {
        libm::acos(self)
    }
}
