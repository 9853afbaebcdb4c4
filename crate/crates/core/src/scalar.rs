//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! All algorithms are written against [`Real`], which both `f32` and `f64`
//! implement. Complex quantities are `nalgebra::Complex<T>`.

use std::fmt::{Debug, Display};

use nalgebra::{Complex, ComplexField, DMatrix, DVector, RealField};

/// Real floating-point scalar usable throughout the crate.
pub trait Real: RealField + Copy + Debug + Display + Send + Sync + 'static {
    /// Converts a literal constant into this scalar type.
    fn lit(x: f64) -> Self;

    /// Lossy conversion back to `f64` (used for reporting and error payloads).
    fn as_f64(self) -> f64;

    /// A tolerance of `base` (given in `f64` units) floored at a small multiple
    /// of the type's machine epsilon, so single-precision callers get a
    /// tolerance they can actually meet.
    fn tol(base: f64) -> Self {
        let floor = Self::default_epsilon() * Self::lit(4096.0);
        let base = Self::lit(base);
        if base > floor {
            base
        } else {
            floor
        }
    }
}

impl Real for f64 {
    #[inline]
    fn lit(x: f64) -> Self {
        x
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}

impl Real for f32 {
    #[inline]
    fn lit(x: f64) -> Self {
        x as f32
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

pub type Cx<T> = Complex<T>;
pub type CMat<T> = DMatrix<Complex<T>>;
pub type CVec<T> = DVector<Complex<T>>;

#[inline]
pub fn cx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

#[inline]
pub fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// `e^{iθ}`.
#[inline]
pub fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

#[inline]
pub fn modulus<T: Real>(z: Complex<T>) -> T {
    ComplexField::modulus(z)
}

#[inline]
pub fn cexp<T: Real>(z: Complex<T>) -> Complex<T> {
    ComplexField::exp(z)
}
