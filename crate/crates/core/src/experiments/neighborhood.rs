use super::{
    bernstein_sweep, neighborhood_polynomial, offsets, window_point, ExperimentConfig, Method,
    SweepRecord,
};
use crate::error::Result;

/// Spacing of the root-neighborhood grid, `10^-7 / 2`.
pub const NEIGHBORHOOD_STEP: f64 = 5e-8;

const DEFAULT_POINTS: usize = 401;
const DEFAULT_K: [usize; 3] = [1, 2, 3];

/// `fl(3/4 + fl(j * 5e-8))` for the centered offsets `j`.
pub fn neighborhood_points(count: usize) -> Vec<f64> {
    offsets(count)
        .map(|j| window_point(0.75, j, NEIGHBORHOOD_STEP))
        .collect()
}

/// `(s - 1)(s - 3/4)^7` around its multiple root, one row per point and K.
pub fn root_neighborhood(cfg: &ExperimentConfig) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    let points = neighborhood_points(cfg.count(DEFAULT_POINTS));
    let methods: Vec<_> = cfg
        .ks(&DEFAULT_K)
        .into_iter()
        .map(|k| (Method::for_k(k), k))
        .collect();
    bernstein_sweep(&neighborhood_polynomial(), &points, &methods)
}
