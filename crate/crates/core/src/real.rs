//! Scalar abstraction shared by the eigensolver and the exact-identity verifiers.
//!
//! Three implementations ship: plain `f64`, [`Dd`](crate::Dd) (double-double,
//! ~32 significant digits) and [`Fixed`](crate::Fixed) (binary fixed point
//! with a compile-time number of fractional bits, backed by big integers).
//! Matrix entries are built directly in the target type so that the extra
//! precision is not wasted on entries rounded to `f64`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Real:
    Clone
    + Debug
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Short human-readable name, used in reports.
    const NAME: &'static str;

    /// Whether recurrences evaluated in this type need periodic rescaling to
    /// stay inside the exponent range.
    const BOUNDED_EXPONENT: bool;

    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;

    /// Exact for every integer that `f64` represents exactly.
    fn from_usize(k: usize) -> Self {
        Self::from_f64(k as f64)
    }

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn sqrt(&self) -> Self;

    fn is_negative(&self) -> bool;

    fn is_zero(&self) -> bool;

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn half(&self) -> Self {
        self.clone() * Self::from_f64(0.5)
    }

    /// Smallest meaningful absolute difference between two values of
    /// magnitude `magnitude`.
    fn resolution(magnitude: f64) -> f64;

    /// Natural log of the absolute value, as `f64`. Finite for every nonzero
    /// value, even when `to_f64` would underflow.
    fn ln_abs(&self) -> f64 {
        self.to_f64().abs().ln()
    }
}

impl Real for f64 {
    const NAME: &'static str = "double";
    const BOUNDED_EXPONENT: bool = true;

    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }

    #[inline]
    fn to_f64(&self) -> f64 {
        *self
    }

    #[inline]
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    #[inline]
    fn is_negative(&self) -> bool {
        *self < 0.0
    }

    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    #[inline]
    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn resolution(magnitude: f64) -> f64 {
        f64::EPSILON * magnitude.abs().max(f64::MIN_POSITIVE)
    }
}
