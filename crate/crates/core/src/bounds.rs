//! A priori error bounds, evaluated in `f64`.
//!
//! These are used as acceptance thresholds, not inside the kernels.

use crate::scalar::UNIT_ROUNDOFF as U;

/// `gamma_m = m u / (1 - m u)`.
pub fn gamma(m: usize) -> f64 {
    let mu = m as f64 * U;
    mu / (1.0 - mu)
}

fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Coefficient of `cond(p, s)` in the relative error bound of the K-fold
/// evaluator, including the power `u^K`. Known for `K = 1..=4`.
pub fn cond_multiplier(k: usize, n: usize) -> Option<f64> {
    let nf = n as f64;
    let poly = match k {
        1 => 3.0 * nf,
        2 => 3.0 * nf * (3.0 * nf + 7.0) / 2.0,
        3 => 3.0 * nf * (3.0 * nf * nf + 36.0 * nf + 61.0) / 2.0,
        4 => 81.0 * binom(n, 4) + 810.0 * binom(n, 3) + 2475.0 * binom(n, 2) + 2250.0 * nf,
        _ => return None,
    };
    Some(poly * U.powi(k as i32))
}

/// Absolute error bound of plain de Casteljau: `gamma_{3n} p~(s)`.
pub fn de_casteljau_abs_bound(n: usize, p_tilde: f64) -> f64 {
    gamma(3 * n) * p_tilde
}

/// Relative error bound of the compensated evaluator:
/// `u + 2 gamma_{3n}^2 cond`.
pub fn comp_rel_bound(n: usize, cond: f64) -> f64 {
    let g = gamma(3 * n);
    U + 2.0 * g * g * cond
}

/// Relative error bound of the K-fold evaluator for `K = 3`.
///
/// The `O(u^2)` term is pinned to `gamma_{3n}^2` and the `O(u^4) cond`
/// remainder to a `(1 + gamma_{3n})` factor on the leading multiplier.
pub fn comp3_rel_bound(n: usize, cond: f64) -> f64 {
    let g = gamma(3 * n);
    U + g * g + cond_multiplier(3, n).unwrap() * (1.0 + g) * cond
}

/// Curve `min(1, multiplier_K(n) cond + 2u)` traced by the accuracy plots.
pub fn theoretical_curve(k: usize, n: usize, cond: f64) -> Option<f64> {
    cond_multiplier(k, n).map(|m| (m * cond + 2.0 * U).min(1.0))
}
