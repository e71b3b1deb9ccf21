//! Binary fixed-point numbers `m / 2^FRAC` with an arbitrary-size integer
//! mantissa.
//!
//! Fixed point rather than floating point because the quantities that need
//! the extra digits (gap deviations near integer-valued zeros, pivots of the
//! Sturm recursion) are governed by absolute, not relative, error. Addition
//! and subtraction are exact; multiplication, division and square roots
//! round toward negative infinity in the last fractional bit.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};

use crate::real::Real;

#[derive(Clone, PartialEq, Eq)]
pub struct Fixed<const FRAC: u32>(BigInt);

/// The multiprecision type used by [`Precision::Multi`](crate::Precision::Multi):
/// 512 fractional bits, about 154 decimal digits after the point.
pub type Mp = Fixed<512>;

impl<const FRAC: u32> Fixed<FRAC> {
    pub fn from_raw(mantissa: BigInt) -> Self {
        Fixed(mantissa)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.0
    }

    pub fn ulp() -> f64 {
        (-(FRAC as f64)).exp2()
    }
}

impl<const FRAC: u32> fmt::Debug for Fixed<FRAC> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fixed<{FRAC}>({:e})", self.to_f64())
    }
}

impl<const FRAC: u32> Add for Fixed<FRAC> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Fixed(self.0 + rhs.0)
    }
}

impl<const FRAC: u32> Sub for Fixed<FRAC> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Fixed(self.0 - rhs.0)
    }
}

impl<const FRAC: u32> Neg for Fixed<FRAC> {
    type Output = Self;

    fn neg(self) -> Self {
        Fixed(-self.0)
    }
}

impl<const FRAC: u32> Mul for Fixed<FRAC> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Fixed((self.0 * rhs.0) >> FRAC)
    }
}

impl<const FRAC: u32> Div for Fixed<FRAC> {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        Fixed((self.0 << FRAC) / rhs.0)
    }
}

impl<const FRAC: u32> PartialOrd for Fixed<FRAC> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.0.cmp(&other.0))
    }
}

/// `m * 2^exp` as f64 for an arbitrary big integer, without intermediate overflow.
fn scaled_to_f64(m: &BigInt, exp: i64) -> f64 {
    if m.is_zero() {
        return 0.0;
    }
    let bits = m.bits() as i64;
    let shift = (bits - 64).max(0);
    let top = (m >> shift as usize).to_f64().unwrap_or(f64::NAN);
    let mut e = exp + shift;
    let mut v = top;
    // Apply the exponent in steps that stay inside the f64 range.
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

impl<const FRAC: u32> Real for Fixed<FRAC> {
    const NAME: &'static str = "fixed-point";
    const BOUNDED_EXPONENT: bool = false;

    fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "cannot represent {x} in fixed point");
        if x == 0.0 {
            return Fixed(BigInt::zero());
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        let shift = exp + FRAC as i64;
        let mut m = BigInt::from(mant);
        if shift >= 0 {
            m <<= shift as usize;
        } else {
            m >>= (-shift) as usize;
        }
        Fixed(if negative { -m } else { m })
    }

    fn from_usize(k: usize) -> Self {
        Fixed(BigInt::from(k) << FRAC)
    }

    fn to_f64(&self) -> f64 {
        scaled_to_f64(&self.0, -(FRAC as i64))
    }

    fn sqrt(&self) -> Self {
        assert!(self.0.sign() != Sign::Minus, "square root of a negative fixed-point value");
        Fixed((&self.0 << FRAC).sqrt())
    }

    fn is_negative(&self) -> bool {
        self.0.sign() == Sign::Minus
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn half(&self) -> Self {
        Fixed(&self.0 >> 1usize)
    }

    fn resolution(_magnitude: f64) -> f64 {
        Self::ulp()
    }

    fn ln_abs(&self) -> f64 {
        let m = self.0.magnitude();
        let bits = m.bits() as i64;
        let shift = (bits - 64).max(0);
        let top = (m >> shift as usize).to_f64().unwrap_or(f64::NAN);
        top.ln() + ((shift - FRAC as i64) as f64) * std::f64::consts::LN_2
    }
}
