//! Exact rational scalars used as ground truth.
//!
//! Every finite binary64 value is a dyadic rational, so conversion in is
//! exact. Conversion out rounds once, to nearest with ties to even.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Reduced fraction `numerator / denominator` with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self(q)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    /// Exact value of a finite `f64`. Panics on NaN or infinity.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "cannot convert non-finite {x} exactly");
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let fraction = bits & ((1u64 << 52) - 1);
        let (mantissa, exp) = if biased == 0 {
            (fraction, -1074)
        } else {
            (fraction | (1u64 << 52), biased - 1075)
        };
        if mantissa == 0 {
            return Self::zero();
        }
        // An odd mantissa over a power of two is already in lowest terms.
        let shift = mantissa.trailing_zeros() as i64;
        let (mantissa, exp) = (mantissa >> shift, exp + shift);
        let mut num = BigInt::from(mantissa);
        if negative {
            num = -num;
        }
        Self(if exp >= 0 {
            BigRational::from_integer(num << exp as usize)
        } else {
            BigRational::new_raw(num, BigInt::from(1u8) << (-exp) as usize)
        })
    }

    /// `2^e` exactly.
    pub fn pow2(e: i64) -> Self {
        Self(pow2(e))
    }

    pub fn powi(&self, e: i32) -> Self {
        Self(num_traits::pow::Pow::pow(&self.0, e))
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Nearest binary64 value, ties to even. Overflows to infinity and
    /// underflows gradually through the subnormal range.
    pub fn to_f64(&self) -> f64 {
        let negative = self.is_negative();
        let mag = if negative {
            -self.0.clone()
        } else {
            self.0.clone()
        };
        if mag.is_zero() {
            return if negative { -0.0 } else { 0.0 };
        }
        let e = floor_log2(&mag);
        if e > 1023 {
            return signed(f64::INFINITY, negative);
        }
        let quantum = e.max(-1022) - 52;
        // m = mag / 2^quantum, rounded to an integer.
        let scaled = mag / pow2(quantum);
        let (q, r) = scaled.numer().div_rem(scaled.denom());
        let twice_r: BigInt = r << 1;
        let mut m = q.to_u64().expect("mantissa fits in 54 bits");
        match twice_r.cmp(scaled.denom()) {
            Ordering::Greater => m += 1,
            Ordering::Equal if m & 1 == 1 => m += 1,
            _ => {}
        }
        let (m, quantum) = if m == 1u64 << 53 {
            (m >> 1, quantum + 1)
        } else {
            (m, quantum)
        };
        let bits = if m >= 1u64 << 52 {
            let biased = quantum + 52 + 1023;
            if biased >= 2047 {
                return signed(f64::INFINITY, negative);
            }
            ((biased as u64) << 52) | (m - (1u64 << 52))
        } else {
            m
        };
        signed(f64::from_bits(bits), negative)
    }

    /// Decimal scientific rendering with `digits` significant digits,
    /// rounded to nearest (ties to even). Zero renders as `0`.
    pub fn to_decimal(&self, digits: usize) -> String {
        assert!(digits >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let mag = self.0.abs();
        let ten = BigRational::from_integer(BigInt::from(10));
        // Estimate floor(log10 |x|) from the binary exponent, then fix it up.
        let mut exp10 = ((floor_log2(&mag) as f64) * std::f64::consts::LOG10_2).floor() as i64;
        loop {
            let lo = pow_i(&ten, exp10);
            if mag < lo {
                exp10 -= 1;
            } else if mag >= &lo * &ten {
                exp10 += 1;
            } else {
                break;
            }
        }
        let scaled = &mag * pow_i(&ten, digits as i64 - 1 - exp10);
        let (q, r) = scaled.numer().div_rem(scaled.denom());
        let twice_r: BigInt = r << 1;
        let mut q = q;
        match twice_r.cmp(scaled.denom()) {
            Ordering::Greater => q += 1,
            Ordering::Equal if q.is_odd() => q += 1,
            _ => {}
        }
        let mut text = q.to_string();
        if text.len() > digits {
            // Rounded up to the next power of ten.
            text.truncate(digits);
            exp10 += 1;
        }
        let sign = if self.is_negative() { "-" } else { "" };
        let (head, tail) = text.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{exp10}")
        } else {
            format!("{sign}{head}.{tail}e{exp10}")
        }
    }
}

fn signed(x: f64, negative: bool) -> f64 {
    if negative {
        -x
    } else {
        x
    }
}

fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << (e as usize))
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << ((-e) as usize))
    }
}

fn pow_i(base: &BigRational, e: i64) -> BigRational {
    num_traits::pow::Pow::pow(base, e as i32)
}

/// `floor(log2(x))` for `x > 0`.
fn floor_log2(x: &BigRational) -> i64 {
    let n = x.numer();
    let d = x.denom();
    let mut e = n.bits() as i64 - d.bits() as i64;
    // Now 2^(e-1) < x < 2^(e+1).
    if x < &pow2(e) {
        e -= 1;
    }
    e
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<f64> for ExactScalar {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &'a ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$m(&rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &'a ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$m(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0.clone())
    }
}

impl std::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |a, b| a + b)
    }
}
