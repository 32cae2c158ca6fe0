//! de Casteljau evaluators: plain, compensated, and K-fold compensated.
//!
//! The K-fold evaluator keeps a "cascade" of triangles. Level 0 holds the
//! computed de Casteljau values; level `F` holds the computed global error
//! of level `F - 1`. Every update on levels `0..K-1` goes through
//! error-free transformations and its residuals are filtered down to the
//! next level; the last level is updated with plain arithmetic. The `K`
//! leading values are combined with SumK.
//!
//! Each update multiplies the `r_hat = 1 - s` term last. Do not reorder.

use crate::eft::{sum_k_in_place, two_sum, EftPair, ProductEft};
use crate::error::{Error, Result};
use crate::poly::{BernsteinPoly, MonomialPoly};
use crate::scalar::Scalar;

/// Plain de Casteljau. Costs `3 T_n + 1` flops.
pub fn de_casteljau<T: Scalar>(p: &BernsteinPoly<T>, s: T) -> T {
    let mut b = p.coeffs().to_vec();
    let r_hat = T::one() - s;
    for k in (0..b.len() - 1).rev() {
        for j in 0..=k {
            b[j] = r_hat * b[j] + s * b[j + 1];
        }
    }
    b[0]
}

/// Compensated de Casteljau with a single error level and a plain final sum.
pub fn comp_de_casteljau<T: Scalar>(p: &BernsteinPoly<T>, s: T) -> T {
    comp_de_casteljau_with(p, s, ProductEft::Split)
}

pub fn comp_de_casteljau_with<T: Scalar>(p: &BernsteinPoly<T>, s: T, product: ProductEft) -> T {
    let mut b = p.coeffs().to_vec();
    let mut db = vec![T::zero(); b.len()];
    let EftPair {
        result: r_hat,
        error: rho,
    } = two_sum(T::one(), -s);
    for k in (0..b.len() - 1).rev() {
        for j in 0..=k {
            let p1 = product.apply(r_hat, b[j]);
            let p2 = product.apply(s, b[j + 1]);
            let sum = two_sum(p1.result, p2.result);
            let l_hat = p1.error + p2.error + sum.error + rho * b[j];
            db[j] = l_hat + s * db[j + 1] + r_hat * db[j];
            b[j] = sum.result;
        }
    }
    b[0] + db[0]
}

/// Local-error EFT: folds `e` left to right with TwoSum, then adds
/// `rho * delta_b` through TwoProd and TwoSum.
///
/// Returns the residuals `eta` (one more entry than `e`) and `l_hat`, with
/// `l_hat + sum(eta) == sum(e) + rho * delta_b` exactly.
pub fn local_error_eft<T: Scalar>(e: &[T], rho: T, delta_b: T) -> Result<(Vec<T>, T)> {
    if e.len() < 2 {
        return Err(Error::TooShort {
            min: 2,
            len: e.len(),
        });
    }
    let mut eta = Vec::with_capacity(e.len() + 1);
    let l_hat = local_error_eft_into(e, rho, delta_b, ProductEft::Split, &mut eta);
    Ok((eta, l_hat))
}

fn local_error_eft_into<T: Scalar>(
    e: &[T],
    rho: T,
    delta_b: T,
    product: ProductEft,
    eta: &mut Vec<T>,
) -> T {
    eta.clear();
    let first = two_sum(e[0], e[1]);
    let mut l_hat = first.result;
    eta.push(first.error);
    for &ej in &e[2..] {
        let step = two_sum(l_hat, ej);
        l_hat = step.result;
        eta.push(step.error);
    }
    let prod = product.apply(rho, delta_b);
    eta.push(prod.error);
    let last = two_sum(l_hat, prod.result);
    eta.push(last.error);
    last.result
}

/// Non-EFT counterpart of [`local_error_eft`]: same summation order,
/// residuals discarded.
pub fn local_error<T: Scalar>(e: &[T], rho: T, delta_b: T) -> Result<T> {
    if e.len() < 2 {
        return Err(Error::TooShort {
            min: 2,
            len: e.len(),
        });
    }
    Ok(local_error_unchecked(e, rho, delta_b))
}

#[inline]
fn local_error_unchecked<T: Scalar>(e: &[T], rho: T, delta_b: T) -> T {
    let mut l_hat = e[0] + e[1];
    for &ej in &e[2..] {
        l_hat = l_hat + ej;
    }
    l_hat + rho * delta_b
}

/// Error terms carried into filtration stage `F`: `e_1..e_{5F-2}` plus
/// the pending `rho * delta_b` product.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorVector<T = f64> {
    pub entries: Vec<T>,
    pub rho: T,
    pub delta_b: T,
}

impl<T: Scalar> ErrorVector<T> {
    /// Length of the error vector entering stage `stage` (1-based).
    pub fn len_at_stage(stage: usize) -> usize {
        5 * stage - 2
    }

    /// Filtration stage implied by the entry count, if it is a valid one.
    pub fn stage(&self) -> Option<usize> {
        let m = self.entries.len() + 2;
        (m.is_multiple_of(5) && m >= 5).then_some(m / 5)
    }
}

/// One error-free update inside the cascade, reported to an observer.
///
/// At stage 0 the update is `b_hat_j^(k)`; at stage `F >= 1` it is the
/// level-`F` error. The exact identity
///
/// `(1 - s) x_j + s x_{j+1} + sum(carried) + rho * delta_b
///     == output + sum(residuals) + rho * x_j`
///
/// holds at every site, where `carried` is empty at stage 0.
#[derive(Debug)]
pub struct FiltrationSite<'a, T> {
    pub stage: usize,
    pub k: usize,
    pub j: usize,
    pub s: T,
    pub r_hat: T,
    pub rho: T,
    pub x_j: T,
    pub x_j1: T,
    pub carried: &'a [T],
    pub delta_b: T,
    pub output: T,
    pub residuals: &'a [T],
}

/// Hooks into the K-fold evaluator. Both methods default to no-ops, so an
/// observer that overrides nothing compiles away.
pub trait CascadeObserver<T> {
    fn site(&mut self, _site: &FiltrationSite<'_, T>) {}

    /// Called after row `k` of every level has been computed. `levels[F]`
    /// holds the first `k + 1` valid entries of level `F`.
    fn row_done(&mut self, _k: usize, _levels: &[&[T]]) {}

    /// Whether [`row_done`](Self::row_done) should be called at all.
    fn wants_rows(&self) -> bool {
        false
    }
}

impl<T> CascadeObserver<T> for () {}

/// Every value the K-fold evaluator computes, row by row.
#[derive(Debug, Clone, PartialEq)]
pub struct CompensationTrace<T = f64> {
    /// `base_triangle[k][j] = b_hat_j^(k)` for `k = 0..=n`.
    pub base_triangle: Vec<Vec<T>>,
    /// `error_triangles[F - 1][k][j]` is the computed level-`F` error.
    pub error_triangles: Vec<Vec<Vec<T>>>,
    pub r_hat: T,
    pub rho: T,
}

impl<T: Scalar> CompensationTrace<T> {
    pub fn degree(&self) -> usize {
        self.base_triangle.len() - 1
    }

    pub fn base(&self, k: usize, j: usize) -> T {
        self.base_triangle[k][j]
    }

    pub fn error(&self, level: usize, k: usize, j: usize) -> T {
        self.error_triangles[level - 1][k][j]
    }
}

struct TraceRecorder<T> {
    base: Vec<Vec<T>>,
    errors: Vec<Vec<Vec<T>>>,
}

impl<T: Scalar> TraceRecorder<T> {
    fn new(coeffs: &[T], k: usize) -> Self {
        let n = coeffs.len() - 1;
        let mut base = vec![Vec::new(); n + 1];
        base[n] = coeffs.to_vec();
        let mut errors = vec![vec![Vec::new(); n + 1]; k - 1];
        for level in errors.iter_mut() {
            level[n] = vec![T::zero(); n + 1];
        }
        Self { base, errors }
    }

    fn finish(self, r_hat: T, rho: T) -> CompensationTrace<T> {
        CompensationTrace {
            base_triangle: self.base,
            error_triangles: self.errors,
            r_hat,
            rho,
        }
    }
}

impl<T: Scalar> CascadeObserver<T> for TraceRecorder<T> {
    fn wants_rows(&self) -> bool {
        true
    }

    fn row_done(&mut self, k: usize, levels: &[&[T]]) {
        self.base[k] = levels[0][..=k].to_vec();
        for (f, level) in levels[1..].iter().enumerate() {
            self.errors[f][k] = level[..=k].to_vec();
        }
    }
}

/// K-fold compensated de Casteljau with split-based TwoProd.
///
/// `K = 1` is [`de_casteljau`]; `K = 2` matches [`comp_de_casteljau`] up to
/// the final SumK combine.
pub fn comp_de_casteljau_k<T: Scalar>(p: &BernsteinPoly<T>, s: T, k: usize) -> Result<T> {
    comp_de_casteljau_k_observed(p, s, k, ProductEft::Split, &mut ())
}

/// As [`comp_de_casteljau_k`], also returning the full cascade.
pub fn comp_de_casteljau_k_traced<T: Scalar>(
    p: &BernsteinPoly<T>,
    s: T,
    k: usize,
) -> Result<(T, CompensationTrace<T>)> {
    if k == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut rec = TraceRecorder::new(p.coeffs(), k);
    let value = comp_de_casteljau_k_observed(p, s, k, ProductEft::Split, &mut rec)?;
    let EftPair {
        result: r_hat,
        error: rho,
    } = two_sum(T::one(), -s);
    Ok((value, rec.finish(r_hat, rho)))
}

/// The general K-fold evaluator with a configurable TwoProd and observer.
pub fn comp_de_casteljau_k_observed<T: Scalar, O: CascadeObserver<T>>(
    p: &BernsteinPoly<T>,
    s: T,
    k: usize,
    product: ProductEft,
    observer: &mut O,
) -> Result<T> {
    match k {
        0 => Err(Error::ZeroOrder),
        1 => Ok(de_casteljau_observed(p, s, observer)),
        _ => Ok(cascade(p.coeffs(), s, k, product, observer)),
    }
}

fn de_casteljau_observed<T: Scalar, O: CascadeObserver<T>>(
    p: &BernsteinPoly<T>,
    s: T,
    observer: &mut O,
) -> T {
    let mut b = p.coeffs().to_vec();
    let r_hat = T::one() - s;
    for k in (0..b.len() - 1).rev() {
        for j in 0..=k {
            b[j] = r_hat * b[j] + s * b[j + 1];
        }
        if observer.wants_rows() {
            observer.row_done(k, &[&b]);
        }
    }
    b[0]
}

fn cascade<T: Scalar, O: CascadeObserver<T>>(
    coeffs: &[T],
    s: T,
    k_fold: usize,
    product: ProductEft,
    observer: &mut O,
) -> T {
    let width = coeffs.len();
    let n = width - 1;
    let last = k_fold - 1;
    let EftPair {
        result: r_hat,
        error: rho,
    } = two_sum(T::one(), -s);

    // levels[F * width + j]; level 0 starts as the coefficients, the error
    // levels start at zero.
    let mut levels = vec![T::zero(); k_fold * width];
    levels[..width].copy_from_slice(coeffs);

    let max_len = ErrorVector::<T>::len_at_stage(last);
    let mut e: Vec<T> = Vec::with_capacity(max_len);
    let mut eta: Vec<T> = Vec::with_capacity(max_len);

    for k in (0..n).rev() {
        for j in 0..=k {
            let b_j = levels[j];
            let b_j1 = levels[j + 1];
            let p1 = product.apply(r_hat, b_j);
            let p2 = product.apply(s, b_j1);
            let sum = two_sum(p1.result, p2.result);
            levels[j] = sum.result;

            e.clear();
            e.extend_from_slice(&[p1.error, p2.error, sum.error]);
            observer.site(&FiltrationSite {
                stage: 0,
                k,
                j,
                s,
                r_hat,
                rho,
                x_j: b_j,
                x_j1: b_j1,
                carried: &[],
                delta_b: T::zero(),
                output: sum.result,
                residuals: &e,
            });
            let mut delta_b = b_j;

            for stage in 1..last {
                let off = stage * width;
                let x_j = levels[off + j];
                let x_j1 = levels[off + j + 1];
                let l_hat = local_error_eft_into(&e, rho, delta_b, product, &mut eta);
                let q1 = product.apply(s, x_j1);
                eta.push(q1.error);
                let s2 = two_sum(l_hat, q1.result);
                eta.push(s2.error);
                let q3 = product.apply(r_hat, x_j);
                eta.push(q3.error);
                let out = two_sum(s2.result, q3.result);
                eta.push(out.error);
                levels[off + j] = out.result;

                observer.site(&FiltrationSite {
                    stage,
                    k,
                    j,
                    s,
                    r_hat,
                    rho,
                    x_j,
                    x_j1,
                    carried: &e,
                    delta_b,
                    output: out.result,
                    residuals: &eta,
                });
                std::mem::swap(&mut e, &mut eta);
                delta_b = x_j;
            }

            let off = last * width;
            let l_hat = local_error_unchecked(&e, rho, delta_b);
            levels[off + j] = l_hat + s * levels[off + j + 1] + r_hat * levels[off + j];
        }
        if observer.wants_rows() {
            let rows: Vec<&[T]> = levels.chunks(width).collect();
            observer.row_done(k, &rows);
        }
    }

    let mut heads: Vec<T> = (0..k_fold).map(|f| levels[f * width]).collect();
    sum_k_in_place(&mut heads, k_fold)
}

/// Horner's rule in the monomial basis. Costs `2n` flops.
pub fn horner<T: Scalar>(p: &MonomialPoly<T>, s: T) -> T {
    let a = p.coeffs();
    let mut acc = a[a.len() - 1];
    for &ai in a[..a.len() - 1].iter().rev() {
        acc = acc * s + ai;
    }
    acc
}
