//! Analytic flop counts and an operation-counting scalar.

use std::cell::Cell;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// `T_n = n (n + 1) / 2`.
pub fn triangular(n: u64) -> u64 {
    n * (n + 1) / 2
}

/// Flops used by the K-compensated de Casteljau evaluation of a degree
/// `n` polynomial with split-based TwoProd and a SumK final combine.
///
/// `K = 1` is plain de Casteljau, `3 T_n + 1`. For `K >= 2` the count is
/// `(15K^2 + 11K - 34) T_n + 6K^2 - 11K + 11`.
pub fn flop_count(n: u64, k: u64) -> u64 {
    let t = triangular(n);
    if k <= 1 {
        return 3 * t + 1;
    }
    let k2 = k * k;
    (15 * k2 + 11 * k - 34) * t + 6 * k2 + 11 - 11 * k
}

/// Flops of SumK on `len` terms: `(6K - 5)(len - 1)`.
pub fn sum_k_cost(len: u64, k: u64) -> u64 {
    (6 * k - 5) * len.saturating_sub(1)
}

/// Number of TwoProd calls made by the K-compensated evaluator, `(3K - 4) T_n`.
pub fn two_prod_calls(n: u64, k: u64) -> u64 {
    (3 * k).saturating_sub(4) * triangular(n)
}

/// Flops saved by switching to the FMA TwoProd, `15 (3K - 4) T_n`.
pub fn fma_savings(n: u64, k: u64) -> u64 {
    15 * two_prod_calls(n, k)
}

/// Per-operation tallies recorded by [`Counted`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpLedger {
    pub add: u64,
    pub sub: u64,
    pub mul: u64,
    pub fma: u64,
}

impl OpLedger {
    pub fn total(&self) -> u64 {
        self.add + self.sub + self.mul + self.fma
    }
}

impl fmt::Display for OpLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "add={} sub={} mul={} fma={} total={}",
            self.add,
            self.sub,
            self.mul,
            self.fma,
            self.total()
        )
    }
}

thread_local! {
    static LEDGER: Cell<OpLedger> = const { Cell::new(OpLedger { add: 0, sub: 0, mul: 0, fma: 0 }) };
}

fn bump(f: impl FnOnce(&mut OpLedger)) {
    LEDGER.with(|c| {
        let mut l = c.get();
        f(&mut l);
        c.set(l);
    });
}

/// An `f64` that counts every arithmetic operation performed on it in a
/// thread-local ledger. Negation is a sign flip and is not counted.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub struct Counted(pub f64);

impl fmt::Debug for Counted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Counted {
    /// Clears the calling thread's ledger.
    pub fn reset() {
        LEDGER.with(|c| c.set(OpLedger::default()));
    }

    /// Snapshot of the calling thread's ledger.
    pub fn ledger() -> OpLedger {
        LEDGER.with(|c| c.get())
    }

    /// Runs `f` with a fresh ledger and returns its result and the counts.
    pub fn measure<R>(f: impl FnOnce() -> R) -> (R, OpLedger) {
        Self::reset();
        let r = f();
        (r, Self::ledger())
    }
}

impl Add for Counted {
    type Output = Counted;
    #[inline]
    fn add(self, rhs: Counted) -> Counted {
        bump(|l| l.add += 1);
        Counted(self.0 + rhs.0)
    }
}

impl Sub for Counted {
    type Output = Counted;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Counted) -> Counted {
        bump(|l| l.sub += 1);
        Counted(self.0 - rhs.0)
    }
}

impl Mul for Counted {
    type Output = Counted;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Counted) -> Counted {
        bump(|l| l.mul += 1);
        Counted(self.0 * rhs.0)
    }
}

impl Neg for Counted {
    type Output = Counted;
    #[inline]
    fn neg(self) -> Counted {
        Counted(-self.0)
    }
}

impl Scalar for Counted {
    fn from_f64(x: f64) -> Self {
        Counted(x)
    }

    fn to_f64(self) -> f64 {
        self.0
    }

    fn fused_mul_add(a: Self, b: Self, c: Self) -> Self {
        bump(|l| l.fma += 1);
        Counted(a.0.mul_add(b.0, c.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eft::{split, two_prod, two_prod_fma, two_sum};

    #[test]
    fn formula_examples() {
        assert_eq!(flop_count(2, 2), 157);
        assert_eq!(flop_count(5, 1), 46);
        assert_eq!(triangular(4), 10);
        assert_eq!(sum_k_cost(4, 3), 39);
        assert_eq!(fma_savings(3, 2), 15 * 2 * 6);
    }

    #[test]
    fn primitive_costs() {
        let a = Counted(1.1);
        let b = Counted(-3.7);
        assert_eq!(Counted::measure(|| two_sum(a, b)).1.total(), 6);
        assert_eq!(Counted::measure(|| split(a)).1.total(), 4);
        assert_eq!(Counted::measure(|| two_prod(a, b)).1.total(), 17);
        assert_eq!(Counted::measure(|| two_prod_fma(a, b)).1.total(), 2);
    }
}
