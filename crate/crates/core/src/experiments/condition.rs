use super::{bernstein_sweep, neighborhood_polynomial, ExperimentConfig, Method, SweepRecord};
use crate::error::{Error, Result};
use crate::exact::ExactScalar;
use crate::oracle::condition_number;

const DEFAULT_POINTS: usize = 86;
const DEFAULT_K: [usize; 4] = [1, 2, 3, 4];
const FIRST_EXPONENT: i32 = -5;

/// Points `fl(3/4 - fl(1.3^j))` for `j = -5, -6, ...`, `count` of them.
///
/// `fl(1.3^j)` is the correctly rounded power of the binary64 value
/// nearest 1.3, computed exactly, so the grid does not depend on `powi`.
pub fn condition_points(count: usize) -> Vec<(i32, f64)> {
    let base = ExactScalar::from_f64(1.3);
    (0..count as i32)
        .map(|i| {
            let j = FIRST_EXPONENT - i;
            let step = base.powi(j).to_f64();
            (j, 0.75 - step)
        })
        .collect()
}

/// Relative error of each K against the condition number, for the
/// geometric grid approaching the multiple root 3/4 from below.
pub fn condition_sweep(cfg: &ExperimentConfig) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    let p = neighborhood_polynomial();
    let grid = condition_points(cfg.count(DEFAULT_POINTS));

    // The grid must drive the condition number up monotonically.
    let conds = crate::par::map_ordered(&grid, |&(_, s)| condition_number(&p, s).map(|r| r.cond));
    let mut prev: Option<ExactScalar> = None;
    for ((j, s), c) in grid.iter().zip(conds) {
        let c = c?;
        let c = c
            .finite()
            .ok_or_else(|| Error::Regression(format!("cond infinite at j = {j}, s = {s}")))?
            .clone();
        if let Some(p) = &prev {
            if &c <= p {
                return Err(Error::Regression(format!("cond not increasing at j = {j}")));
            }
        }
        prev = Some(c);
    }

    let points: Vec<f64> = grid.iter().map(|&(_, s)| s).collect();
    let methods: Vec<_> = cfg
        .ks(&DEFAULT_K)
        .into_iter()
        .map(|k| (Method::for_k(k), k))
        .collect();
    bernstein_sweep(&p, &points, &methods)
}
