//! Error-free transformations and K-fold compensated summation.
//!
//! All routines are branch-free and assume round-to-nearest, ties-to-even.
//! Exactness holds only in the absence of overflow and underflow; nothing
//! here checks for either.

use crate::error::{Error, Result};
use crate::scalar::{Scalar, SPLIT_FACTOR};

/// A floating-point result together with its exact rounding error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EftPair<T = f64> {
    pub result: T,
    pub error: T,
}

/// The two halves produced by [`split`]; `high + low` equals the input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitPair<T = f64> {
    pub high: T,
    pub low: T,
}

/// Knuth's TwoSum: `result = fl(a + b)` and `result + error = a + b`.
///
/// 6 flops, no branches.
#[inline]
pub fn two_sum<T: Scalar>(a: T, b: T) -> EftPair<T> {
    let result = a + b;
    let z = result - a;
    let error = (a - (result - z)) + (b - z);
    EftPair { result, error }
}

/// Veltkamp splitting with `r = 27`. 4 flops.
///
/// Requires `|a| < 2^996` so that `a * (2^27 + 1)` does not overflow.
#[inline]
pub fn split<T: Scalar>(a: T) -> SplitPair<T> {
    let z = a * T::from_f64(SPLIT_FACTOR);
    let high = z - (z - a);
    let low = a - high;
    SplitPair { high, low }
}

/// Dekker's TwoProd built on [`split`]. 17 flops.
#[inline]
pub fn two_prod<T: Scalar>(a: T, b: T) -> EftPair<T> {
    let result = a * b;
    let SplitPair { high: ah, low: al } = split(a);
    let SplitPair { high: bh, low: bl } = split(b);
    let error = al * bl - (((result - ah * bh) - al * bh) - ah * bl);
    EftPair { result, error }
}

/// TwoProd using a fused multiply-add for the residual. 2 flops.
///
/// Produces the same pair as [`two_prod`] whenever neither overflows nor
/// underflows. `f64::mul_add` is correctly rounded even when the host
/// lacks an FMA unit (it falls back to a software routine), so this is
/// exact everywhere; [`fma_available`] only says whether it is fast.
#[inline]
pub fn two_prod_fma<T: Scalar>(a: T, b: T) -> EftPair<T> {
    let result = a * b;
    let error = T::fused_mul_add(a, b, -result);
    EftPair { result, error }
}

/// Whether the host CPU executes fused multiply-add in hardware.
pub fn fma_available() -> bool {
    #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
    {
        std::is_x86_feature_detected!("fma")
    }
    #[cfg(target_arch = "aarch64")]
    {
        true
    }
    #[cfg(not(any(target_arch = "x86", target_arch = "x86_64", target_arch = "aarch64")))]
    {
        cfg!(target_feature = "fma")
    }
}

/// Selects the TwoProd variant used by the evaluators.
///
/// The split-based form is the default; the FMA form is never chosen
/// automatically so results and flop counts do not depend on the host.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProductEft {
    #[default]
    Split,
    Fma,
}

impl ProductEft {
    #[inline]
    pub fn apply<T: Scalar>(self, a: T, b: T) -> EftPair<T> {
        match self {
            ProductEft::Split => two_prod(a, b),
            ProductEft::Fma => two_prod_fma(a, b),
        }
    }
}

/// Error-free vector transformation for summation, in place.
///
/// After the call the vector has the same exact sum; the last entry holds
/// the cascaded floating-point sum and the others hold the residuals.
pub fn vec_sum_in_place<T: Scalar>(p: &mut [T]) {
    for j in 1..p.len() {
        let EftPair { result, error } = two_sum(p[j], p[j - 1]);
        p[j] = result;
        p[j - 1] = error;
    }
}

/// Returns the transformed copy of `p`; see [`vec_sum_in_place`].
pub fn vec_sum<T: Scalar>(p: &[T]) -> Result<Vec<T>> {
    if p.is_empty() {
        return Err(Error::TooShort { min: 1, len: 0 });
    }
    let mut out = p.to_vec();
    vec_sum_in_place(&mut out);
    Ok(out)
}

/// Sum "as if" in K-fold working precision: `K - 1` passes of
/// [`vec_sum_in_place`] followed by a left-to-right reduction.
///
/// Costs `(6K - 5)(n - 1)` flops. `K = 1` is the plain recursive sum.
pub fn sum_k<T: Scalar>(p: &[T], k: usize) -> Result<T> {
    if k == 0 {
        return Err(Error::ZeroOrder);
    }
    if p.is_empty() {
        return Err(Error::TooShort { min: 1, len: 0 });
    }
    let mut buf = p.to_vec();
    Ok(sum_k_in_place(&mut buf, k))
}

pub(crate) fn sum_k_in_place<T: Scalar>(buf: &mut [T], k: usize) -> T {
    for _ in 1..k {
        vec_sum_in_place(buf);
    }
    let mut acc = buf[0];
    for &v in &buf[1..] {
        acc = acc + v;
    }
    acc
}
