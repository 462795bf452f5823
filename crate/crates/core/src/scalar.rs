//! Scalar types that carry holomorphic arithmetic.
//!
//! Both plain complex numbers and truncated Taylor jets implement
//! [`HoloScalar`], so chart programs and frame constructions can be written
//! once and evaluated either pointwise or with exact derivatives attached.

use num_complex::Complex64;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub trait HoloScalar:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn constant(c: Complex64) -> Self;
    /// Value at the expansion point.
    fn value(&self) -> Complex64;
    fn scale(self, c: Complex64) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn sqrt(self) -> Self;

    fn zero() -> Self {
        Self::constant(Complex64::new(0.0, 0.0))
    }

    fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    fn powi(self, n: i32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc * self;
        }
        if n < 0 {
            Self::one() / acc
        } else {
            acc
        }
    }
}

impl HoloScalar for Complex64 {
    fn constant(c: Complex64) -> Self {
        c
    }
    fn value(&self) -> Complex64 {
        *self
    }
    fn scale(self, c: Complex64) -> Self {
        self * c
    }
    fn exp(self) -> Self {
        Complex64::exp(self)
    }
    fn ln(self) -> Self {
        Complex64::ln(self)
    }
    fn sin(self) -> Self {
        Complex64::sin(self)
    }
    fn cos(self) -> Self {
        Complex64::cos(self)
    }
    fn sinh(self) -> Self {
        Complex64::sinh(self)
    }
    fn cosh(self) -> Self {
        Complex64::cosh(self)
    }
    fn sqrt(self) -> Self {
        Complex64::sqrt(self)
    }
    fn powi(self, n: i32) -> Self {
        Complex64::powi(&self, n)
    }
}

/// Holomorphic (unconjugated) dot product of two equal-length slices.
pub fn dot0<T: HoloScalar>(x: &[T], y: &[T]) -> T {
    x.iter()
        .zip(y)
        .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
}

/// Hermitian norm of a complex slice; used only for scale estimates.
pub fn herm_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
