//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar the linear-algebra kernel is generic over.
///
/// Tolerances are tied to the precision of the type: the `f64` values are
/// the contract values used throughout the crate, the `f32` ones are scaled
/// to single precision.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Default
    + Debug
    + Display
    + LowerExp
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Entrywise tolerance on `|h - h†|` accepted by Hermitian routines.
    fn hermitian_tol() -> Self;
    /// Tolerance for unitarity, trace and positivity checks on states and operators.
    fn validation_tol() -> Self;
    /// Below this magnitude an off-diagonal element is treated as zero by the eigensolver.
    fn eig_tiny() -> Self;
    /// Hermiticity and unit-trace tolerance for density matrices.
    fn state_tol() -> Self;
}

impl Real for f64 {
    fn hermitian_tol() -> Self {
        1e-12
    }
    fn validation_tol() -> Self {
        1e-9
    }
    fn eig_tiny() -> Self {
        1e-300
    }
    fn state_tol() -> Self {
        1e-11
    }
}

impl Real for f32 {
    fn hermitian_tol() -> Self {
        1e-5
    }
    fn validation_tol() -> Self {
        1e-4
    }
    fn eig_tiny() -> Self {
        1e-36
    }
    fn state_tol() -> Self {
        1e-4
    }
}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

#[inline]
pub fn clit<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(lit(re), lit(im))
}

/// `e^{iθ}`.
#[inline]
pub fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}
