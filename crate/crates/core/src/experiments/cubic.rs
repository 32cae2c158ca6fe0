use super::{
    bernstein_sweep, cubic_bernstein, cubic_monomial, offsets, quartic_bernstein, sort_records,
    window_point, ExperimentConfig, Method, PointOracle, SweepRecord,
};
use crate::casteljau::{de_casteljau, horner};
use crate::error::{Error, Result};
use crate::scalar::UNIT_ROUNDOFF;

/// Grid spacing for the Horner comparison: 401 points cover
/// `|s - 1/2| <= 2e-5`.
pub const CUBIC_STEP: f64 = 1e-7;

/// Grid spacing for the quartic: 401 points cover `|s - 1/2| <= 1.5e-11`.
pub const QUARTIC_STEP: f64 = 7.5e-14;

const DEFAULT_POINTS: usize = 401;
const DEFAULT_K: [usize; 3] = [2, 3, 4];

/// `1/2 + 1001u`, where the compensated evaluator returns exactly 0.
pub fn distinguished_point() -> f64 {
    0.5 + 1001.0 * UNIT_ROUNDOFF
}

/// Two comparisons in one table, told apart by method:
///
/// * `horner` and `decasteljau` rows evaluate `(2s - 1)^3` near 1/2;
/// * `comp` and `compK` rows evaluate `(2s - 1)^3 (s - 1)` near 1/2,
///   including the point `1/2 + 1001u`.
pub fn cubic_comparison(cfg: &ExperimentConfig) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    let ks = cfg.ks(&DEFAULT_K);
    if ks.contains(&1) {
        return Err(Error::Config(
            "cubic-compare takes K >= 2; K = 1 rows are the Horner comparison".into(),
        ));
    }
    let count = cfg.count(DEFAULT_POINTS);

    let cubic = cubic_bernstein();
    let mono = cubic_monomial();
    let cubic_points: Vec<f64> = offsets(count)
        .map(|j| window_point(0.5, j, CUBIC_STEP))
        .collect();
    let per_point = crate::par::map_ordered(&cubic_points, |&s| -> Result<[SweepRecord; 2]> {
        let oracle = PointOracle::new(&cubic, s)?;
        Ok([
            oracle.record(s, Method::Horner, 1, horner(&mono, s)),
            oracle.record(s, Method::DeCasteljau, 1, de_casteljau(&cubic, s)),
        ])
    });
    let mut rows = Vec::with_capacity(count * (2 + ks.len()) + ks.len());
    for r in per_point {
        rows.extend(r?);
    }

    let mut quartic_points: Vec<f64> = offsets(count)
        .map(|j| window_point(0.5, j, QUARTIC_STEP))
        .collect();
    let special = distinguished_point();
    if !quartic_points.contains(&special) {
        quartic_points.push(special);
    }
    let methods: Vec<_> = ks.iter().map(|&k| (Method::for_k(k), k)).collect();
    rows.extend(bernstein_sweep(
        &quartic_bernstein(),
        &quartic_points,
        &methods,
    )?);
    sort_records(&mut rows);
    Ok(rows)
}
