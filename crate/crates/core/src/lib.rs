//! Double-bracket algorithmic cooling of small qubit registers.
//!
//! The crate is generic over the real scalar through [`Real`] (implemented for
//! `f32` and `f64`); the aliases below fix it to double precision, which is
//! what every documented tolerance refers to.

// `!(x <= y)` is used on purpose so that NaN inputs fail validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baselines;
pub mod circuits;
pub mod dbac;
pub mod dme;
pub mod error;
pub mod qmath;
pub mod scalar;
pub mod states;
pub mod tomography;

pub use error::{Error, Result};
pub use scalar::Real;

/// Double-precision dense complex matrix.
pub type CMatrix = qmath::Matrix<f64>;
/// Single-precision dense complex matrix.
pub type CMatrix32 = qmath::Matrix<f32>;
/// Double-precision complex scalar.
pub type C64 = num_complex::Complex<f64>;
