//! Exact evaluation, condition numbers and relative errors.
//!
//! Everything here stays in rational arithmetic; the only rounding happens
//! when a result is turned back into an `f64` for reporting.

use crate::error::{Error, Result};
use crate::exact::ExactScalar;
use crate::poly::BernsteinPoly;

fn exact_coeffs(p: &BernsteinPoly) -> Vec<ExactScalar> {
    p.coeffs()
        .iter()
        .map(|&b| ExactScalar::from_f64(b))
        .collect()
}

/// Rows of the exact de Casteljau triangle; `rows[k][j] = b_j^(k)`.
pub fn exact_triangle(p: &BernsteinPoly, s: f64) -> Vec<Vec<ExactScalar>> {
    let s = ExactScalar::from_f64(s);
    let r = ExactScalar::one() - &s;
    let n = p.degree();
    let mut rows = vec![Vec::new(); n + 1];
    rows[n] = exact_coeffs(p);
    for k in (0..n).rev() {
        let above = &rows[k + 1];
        rows[k] = (0..=k)
            .map(|j| &r * &above[j] + &s * &above[j + 1])
            .collect();
    }
    rows
}

/// `p(s)` by the exact de Casteljau recurrence.
pub fn exact_eval(p: &BernsteinPoly, s: f64) -> ExactScalar {
    exact_triangle(p, s).swap_remove(0).swap_remove(0)
}

fn binomial(n: usize, k: usize) -> ExactScalar {
    let mut c = ExactScalar::one();
    for i in 0..k {
        c = c * ExactScalar::ratio((n - i) as i64, (i + 1) as i64);
    }
    c
}

/// `B_{j,n}(s) = C(n, j) (1 - s)^(n - j) s^j`.
pub fn bernstein_basis(n: usize, j: usize, s: &ExactScalar) -> ExactScalar {
    let r = ExactScalar::one() - s;
    binomial(n, j) * r.powi((n - j) as i32) * s.powi(j as i32)
}

/// `p(s)` by summing `b_j B_{j,n}(s)`; independent of [`exact_eval`].
pub fn exact_eval_basis(p: &BernsteinPoly, s: f64) -> ExactScalar {
    let n = p.degree();
    let s = ExactScalar::from_f64(s);
    exact_coeffs(p)
        .iter()
        .enumerate()
        .map(|(j, b)| b * &bernstein_basis(n, j, &s))
        .sum()
}

fn check_unit(s: f64) -> Result<()> {
    if (0.0..=1.0).contains(&s) {
        Ok(())
    } else {
        Err(Error::OutsideUnitInterval(s))
    }
}

/// `p~(s) = sum_j |b_j| B_{j,n}(s)`, for `s` in `[0, 1]`.
pub fn p_tilde(p: &BernsteinPoly, s: f64) -> Result<ExactScalar> {
    check_unit(s)?;
    let n = p.degree();
    let s = ExactScalar::from_f64(s);
    Ok(exact_coeffs(p)
        .iter()
        .enumerate()
        .map(|(j, b)| b.abs() * bernstein_basis(n, j, &s))
        .sum())
}

/// Condition number of evaluating `p` at `s`; infinite at a root.
#[derive(Debug, Clone, PartialEq)]
pub enum Cond {
    Finite(ExactScalar),
    Infinite,
}

impl Cond {
    pub fn to_f64(&self) -> f64 {
        match self {
            Cond::Finite(c) => c.to_f64(),
            Cond::Infinite => f64::INFINITY,
        }
    }

    pub fn finite(&self) -> Option<&ExactScalar> {
        match self {
            Cond::Finite(c) => Some(c),
            Cond::Infinite => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub s: f64,
    pub exact_value: ExactScalar,
    pub p_tilde: ExactScalar,
    pub cond: Cond,
    /// `cond` rounded once to the nearest `f64` (`inf` at a root).
    pub rounded_cond: f64,
}

pub fn condition_number(p: &BernsteinPoly, s: f64) -> Result<ConditionReport> {
    let p_tilde = p_tilde(p, s)?;
    let exact_value = exact_eval(p, s);
    let cond = if exact_value.is_zero() {
        Cond::Infinite
    } else {
        Cond::Finite(&p_tilde / &exact_value.abs())
    };
    Ok(ConditionReport {
        s,
        rounded_cond: cond.to_f64(),
        exact_value,
        p_tilde,
        cond,
    })
}

/// `|computed - exact|`, rounded once.
pub fn absolute_error(computed: f64, exact: &ExactScalar) -> f64 {
    (ExactScalar::from_f64(computed) - exact).abs().to_f64()
}

/// `|computed - exact| / |exact|`, rounded once. Fails when `exact` is 0.
pub fn relative_error(computed: f64, exact: &ExactScalar) -> Result<f64> {
    Ok(relative_error_exact(computed, exact)?.to_f64())
}

pub fn relative_error_exact(computed: f64, exact: &ExactScalar) -> Result<ExactScalar> {
    if exact.is_zero() {
        return Err(Error::ZeroExact);
    }
    Ok((ExactScalar::from_f64(computed) - exact).abs() / exact.abs())
}

fn to_representable(coeffs: Vec<ExactScalar>) -> Result<BernsteinPoly> {
    let mut out = Vec::with_capacity(coeffs.len());
    for (index, c) in coeffs.iter().enumerate() {
        let f = c.to_f64();
        if !f.is_finite() || &ExactScalar::from_f64(f) != c {
            return Err(Error::NotRepresentable { index });
        }
        out.push(f);
    }
    BernsteinPoly::new(out)
}

/// Exact Bernstein coefficients of `sum_i a_i s^i`:
/// `b_j = sum_{i <= j} C(j, i) / C(n, i) a_i`.
pub fn bernstein_coeffs_exact(monomial: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
    if monomial.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    let n = monomial.len() - 1;
    Ok((0..=n)
        .map(|j| {
            (0..=j)
                .map(|i| binomial(j, i) / binomial(n, i) * &monomial[i])
                .sum()
        })
        .collect())
}

/// As [`bernstein_coeffs_exact`], then checks every coefficient is an
/// `f64` and names the first one that is not.
pub fn bernstein_from_monomial(monomial: &[ExactScalar]) -> Result<BernsteinPoly> {
    to_representable(bernstein_coeffs_exact(monomial)?)
}

/// Monomial coefficients of `leading * prod (s - root)^mult`.
pub fn expand_root_form(leading: &ExactScalar, factors: &[(ExactScalar, u32)]) -> Vec<ExactScalar> {
    let mut poly = vec![leading.clone()];
    for (root, mult) in factors {
        for _ in 0..*mult {
            // poly * (s - root)
            let mut next = vec![ExactScalar::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] = &next[i + 1] + c;
                next[i] = &next[i] - &(c * root);
            }
            poly = next;
        }
    }
    poly
}

/// Bernstein form of `leading * prod (s - root)^mult`.
pub fn bernstein_from_root_form(
    leading: &ExactScalar,
    factors: &[(ExactScalar, u32)],
) -> Result<BernsteinPoly> {
    bernstein_from_monomial(&expand_root_form(leading, factors))
}
