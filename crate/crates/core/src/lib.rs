//! Polynomial extended gcd over prime fields with power-of-two roots of
//! unity, built on an optimized half-gcd matrix recursion.
//!
//! The crate provides:
//!
//! - exact arithmetic in NTT-friendly prime fields and in the rationals
//!   ([`field`]);
//! - radix-two transforms with FFT doubling and per-length invocation
//!   counters ([`ntt`]);
//! - dense polynomial arithmetic with interchangeable multiplication
//!   backends and middle products ([`poly`]);
//! - 2x2 polynomial matrix kernels, including spectral products with
//!   wrap-around correction ([`mat2`]);
//! - a quadratic reference implementation of Euclidean remainder sequences,
//!   Bezout matrices, and their re-indexation ([`euclid`]), used as the
//!   ground truth for everything else;
//! - the half-gcd algorithms themselves, in normal-case and general-case
//!   variants, generic and FFT-specialized ([`hgcd`]);
//! - user-facing gcd / extended-gcd entry points ([`gcd`]);
//! - seeded input generators for benchmarks and tests ([`gen`]).
//!
//! Every arithmetic routine tallies field operations and transform
//! invocations into a caller-supplied [`counter::CostCounter`], which is how
//! the constant-factor claims are checked empirically.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod counter;
pub mod error;
pub mod euclid;
pub mod field;
pub mod gcd;
pub mod gen;
pub mod hgcd;
pub mod mat2;
pub mod ntt;
pub mod poly;

pub use counter::CostCounter;
pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals, DEFAULT_PRIME};
pub use ntt::{dft, fft_double, inverse_dft, SpectrumVec, TransformPlan};
pub use poly::{Degree, MulBackend, Poly, PolyMul};
