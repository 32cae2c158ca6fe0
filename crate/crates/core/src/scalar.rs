//! Working-precision scalar abstraction.
//!
//! Every kernel in this crate is generic over [`Scalar`] so the same code
//! path can run on plain `f64` or on [`Counted`](crate::flops::Counted),
//! which tallies floating-point operations. Rust never contracts `a * b + c`
//! into an FMA nor re-associates float expressions, so the operation order
//! written in the kernels is the order executed.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Unit round-off of binary64, `2^-53`.
pub const UNIT_ROUNDOFF: f64 = 1.0 / 9_007_199_254_740_992.0;

/// Splitting factor `2^27 + 1` for binary64.
pub const SPLIT_FACTOR: f64 = 134_217_729.0;

pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_f64(x: f64) -> Self;

    fn to_f64(self) -> f64;

    /// `fl(a * b + c)` with a single rounding.
    fn fused_mul_add(a: Self, b: Self, c: Self) -> Self;

    #[inline]
    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    #[inline]
    fn one() -> Self {
        Self::from_f64(1.0)
    }

    #[inline]
    fn is_finite(self) -> bool {
        self.to_f64().is_finite()
    }
}

impl Scalar for f64 {
    #[inline(always)]
    fn from_f64(x: f64) -> Self {
        x
    }

    #[inline(always)]
    fn to_f64(self) -> f64 {
        self
    }

    #[inline(always)]
    fn fused_mul_add(a: Self, b: Self, c: Self) -> Self {
        a.mul_add(b, c)
    }
}
