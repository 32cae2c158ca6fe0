//! Random inputs and small helpers shared by the integration tests.
#![allow(dead_code)]

use kcasteljau::oracle::bernstein_coeffs_exact;
use kcasteljau::{BernsteinPoly, ExactScalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random sign, full random 53-bit significand, exponent uniform in
/// `[lo, hi)`.
pub fn random_magnitude(rng: &mut impl Rng, lo: i32, hi: i32) -> f64 {
    let mantissa = 1.0 + (rng.random::<u64>() >> 12) as f64 * 2f64.powi(-52);
    let x = mantissa * 2f64.powi(rng.random_range(lo..hi));
    if rng.random() {
        -x
    } else {
        x
    }
}

/// Coefficients uniform in `[-1, 1]`.
pub fn random_poly(rng: &mut impl Rng, degree: usize) -> BernsteinPoly {
    BernsteinPoly::new((0..=degree).map(|_| rng.random_range(-1.0..=1.0)).collect()).unwrap()
}

/// A point in `[0, 1]`.
pub fn random_point(rng: &mut impl Rng) -> f64 {
    rng.random_range(0.0..=1.0)
}

/// Bernstein coefficients of `prod (s - r_i)` rounded to `f64`, with
/// every root within `spread` of `center`. Evaluated near `center` this
/// is badly conditioned.
pub fn clustered_poly(
    rng: &mut impl Rng,
    degree: usize,
    center: f64,
    spread: f64,
) -> BernsteinPoly {
    let mut mono = vec![ExactScalar::one()];
    for _ in 0..degree {
        let root = ExactScalar::from_f64(center + rng.random_range(-spread..=spread));
        let mut next = vec![ExactScalar::zero(); mono.len() + 1];
        for (i, c) in mono.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(c * &root);
        }
        mono = next;
    }
    let coeffs = bernstein_coeffs_exact(&mono).unwrap();
    BernsteinPoly::new(coeffs.iter().map(|c| c.to_f64()).collect()).unwrap()
}

/// Number of representable doubles between `a` and `b`.
pub fn ulp_distance(a: f64, b: f64) -> u64 {
    fn key(x: f64) -> i64 {
        let bits = x.to_bits() as i64;
        if bits < 0 {
            i64::MIN - bits
        } else {
            bits
        }
    }
    key(a).abs_diff(key(b))
}

pub fn exact(x: f64) -> ExactScalar {
    ExactScalar::from_f64(x)
}
