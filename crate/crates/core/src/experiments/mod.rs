//! Deterministic reproductions of the accuracy experiments.
//!
//! Each sweep produces [`SweepRecord`]s which serialize to CSV with the
//! header `s_hex,s_dec,method,k,value_hex,exact_dec,rel_err,cond`. Floats
//! that must round-trip are written as hexadecimal literals; decimal columns
//! are for humans. Rows are sorted by `(s, method, k)`.

mod condition;
mod cubic;
mod flop_report;
mod neighborhood;
mod table;

use std::fmt;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::casteljau::{comp_de_casteljau, comp_de_casteljau_k, de_casteljau};
use crate::error::{Error, Result};
use crate::exact::ExactScalar;
use crate::hexfloat::{format_hex, parse_hex};
use crate::oracle::{absolute_error, condition_number, relative_error, Cond};
use crate::poly::{BernsteinPoly, MonomialPoly};
use crate::scalar::UNIT_ROUNDOFF;

pub use condition::{condition_points, condition_sweep};
pub use cubic::{cubic_comparison, distinguished_point, CUBIC_STEP, QUARTIC_STEP};
pub use flop_report::{flop_report, write_flop_report, FlopRow};
pub use neighborhood::{neighborhood_points, root_neighborhood, NEIGHBORHOOD_STEP};
pub use table::{table_reproduction, TraceEntry, TraceReport};

/// Significant digits used for `exact_dec`.
pub const EXACT_DIGITS: usize = 40;

/// Largest K accepted on the command line.
pub const MAX_K: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "decasteljau")]
    DeCasteljau,
    #[serde(rename = "comp")]
    Comp,
    #[serde(rename = "compK")]
    CompK,
    #[serde(rename = "horner")]
    Horner,
}

impl Method {
    /// Bernstein evaluator conventionally used for a given K.
    pub fn for_k(k: usize) -> Method {
        match k {
            1 => Method::DeCasteljau,
            2 => Method::Comp,
            _ => Method::CompK,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::DeCasteljau => "decasteljau",
            Method::Comp => "comp",
            Method::CompK => "compK",
            Method::Horner => "horner",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Error of a computed value against the oracle. Relative unless the exact
/// value is zero, in which case the absolute error is reported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ErrorMeasure {
    Relative(f64),
    Absolute(f64),
}

impl ErrorMeasure {
    pub fn relative(&self) -> Option<f64> {
        match self {
            ErrorMeasure::Relative(r) => Some(*r),
            ErrorMeasure::Absolute(_) => None,
        }
    }

    fn render(&self) -> String {
        match self {
            ErrorMeasure::Relative(r) => format!("{r:e}"),
            ErrorMeasure::Absolute(a) => format!("abs:{a:e}"),
        }
    }
}

/// One evaluation of one method at one point, with its oracle comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub s: f64,
    pub method: Method,
    pub k: usize,
    pub value: f64,
    pub exact: ExactScalar,
    pub error: ErrorMeasure,
    /// Rounded condition number; `inf` at a root.
    pub cond: f64,
}

impl SweepRecord {
    pub fn abs_error(&self) -> f64 {
        absolute_error(self.value, &self.exact)
    }

    pub fn to_row(&self) -> CsvRow {
        CsvRow {
            s_hex: format_hex(self.s),
            s_dec: format!("{:e}", self.s),
            method: self.method,
            k: self.k,
            value_hex: format_hex(self.value),
            exact_dec: self.exact.to_decimal(EXACT_DIGITS),
            rel_err: self.error.render(),
            cond: if self.cond.is_infinite() {
                "inf".to_string()
            } else {
                format!("{:e}", self.cond)
            },
        }
    }
}

/// Serialized form of a [`SweepRecord`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub s_hex: String,
    pub s_dec: String,
    pub method: Method,
    pub k: usize,
    pub value_hex: String,
    pub exact_dec: String,
    pub rel_err: String,
    pub cond: String,
}

impl CsvRow {
    pub fn s(&self) -> Result<f64> {
        parse_hex(&self.s_hex).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn value(&self) -> Result<f64> {
        parse_hex(&self.value_hex).map_err(|e| Error::Io(e.to_string()))
    }
}

pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    for r in records {
        w.serialize(r.to_row())?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(records: &[SweepRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(records, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<CsvRow>> {
    let mut rdr = csv::Reader::from_reader(input);
    rdr.deserialize().map(|r| r.map_err(Error::from)).collect()
}

/// Sorts rows by `(s, method, k)`.
pub fn sort_records(records: &mut [SweepRecord]) {
    records.sort_by(|a, b| {
        a.s.total_cmp(&b.s)
            .then(a.method.cmp(&b.method))
            .then(a.k.cmp(&b.k))
    });
}

/// Which experiment to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    RootNeighborhood,
    ConditionSweep,
    Table1,
    CubicCompare,
    Flops,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    /// Compensation orders; `None` selects the experiment's default.
    pub k_list: Option<Vec<usize>>,
    /// Point count override; `None` selects the experiment's default.
    pub points: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment) -> Self {
        Self {
            experiment,
            k_list: None,
            points: None,
        }
    }

    pub fn with_k(mut self, k: Vec<usize>) -> Self {
        self.k_list = Some(k);
        self
    }

    pub fn with_points(mut self, n: usize) -> Self {
        self.points = Some(n);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(ks) = &self.k_list {
            if ks.is_empty() {
                return Err(Error::Config("K list is empty".into()));
            }
            if let Some(bad) = ks.iter().find(|&&k| k == 0 || k > MAX_K) {
                return Err(Error::Config(format!("K = {bad} outside 1..={MAX_K}")));
            }
        }
        if let Some(n) = self.points {
            if n < 2 {
                return Err(Error::Config(format!("point count {n} is below 2")));
            }
        }
        Ok(())
    }

    pub(crate) fn ks(&self, default: &[usize]) -> Vec<usize> {
        let mut ks = self.k_list.clone().unwrap_or_else(|| default.to_vec());
        ks.sort_unstable();
        ks.dedup();
        ks
    }

    pub(crate) fn count(&self, default: usize) -> usize {
        self.points.unwrap_or(default)
    }
}

/// `(s - 1)(s - 3/4)^7` in Bernstein form.
pub fn neighborhood_polynomial() -> BernsteinPoly {
    crate::oracle::bernstein_from_root_form(
        &ExactScalar::one(),
        &[(ExactScalar::one(), 1), (ExactScalar::ratio(3, 4), 7)],
    )
    .expect("dyadic coefficients")
}

/// `(2s - 1)^3` in Bernstein form: `[-1, 1, -1, 1]`.
pub fn cubic_bernstein() -> BernsteinPoly {
    BernsteinPoly::new(vec![-1.0, 1.0, -1.0, 1.0]).unwrap()
}

/// `(2s - 1)^3` in the monomial basis.
pub fn cubic_monomial() -> MonomialPoly {
    MonomialPoly::new(vec![-1.0, 6.0, -12.0, 8.0]).unwrap()
}

/// `(2s - 1)^3 (s - 1)` in Bernstein form: `[1, -3/4, 1/2, -1/4, 0]`.
pub fn quartic_bernstein() -> BernsteinPoly {
    BernsteinPoly::new(vec![1.0, -0.75, 0.5, -0.25, 0.0]).unwrap()
}

/// Symmetric integer offsets for `count` points: `-floor((count-1)/2)`
/// through `floor(count/2)`.
pub(crate) fn offsets(count: usize) -> impl Iterator<Item = i64> {
    let lo = -(((count - 1) / 2) as i64);
    (0..count as i64).map(move |i| lo + i)
}

/// `fl(center + fl(j * step))`, the construction order used for windows.
pub(crate) fn window_point(center: f64, j: i64, step: f64) -> f64 {
    center + (j as f64) * step
}

/// Runs the chosen Bernstein evaluator.
pub fn evaluate(p: &BernsteinPoly, s: f64, method: Method, k: usize) -> f64 {
    match method {
        Method::DeCasteljau => de_casteljau(p, s),
        Method::Comp => comp_de_casteljau(p, s),
        Method::CompK => comp_de_casteljau_k(p, s, k).expect("k >= 1"),
        Method::Horner => panic!("Horner needs a monomial polynomial"),
    }
}

/// Oracle data shared by every method at one point.
pub(crate) struct PointOracle {
    pub exact: ExactScalar,
    pub cond: f64,
}

impl PointOracle {
    pub fn new(p: &BernsteinPoly, s: f64) -> Result<Self> {
        let report = condition_number(p, s)?;
        Ok(Self {
            cond: match report.cond {
                Cond::Finite(_) => report.rounded_cond,
                Cond::Infinite => f64::INFINITY,
            },
            exact: report.exact_value,
        })
    }

    pub fn record(&self, s: f64, method: Method, k: usize, value: f64) -> SweepRecord {
        let error = match relative_error(value, &self.exact) {
            Ok(r) => ErrorMeasure::Relative(r),
            Err(_) => ErrorMeasure::Absolute(absolute_error(value, &self.exact)),
        };
        SweepRecord {
            s,
            method,
            k,
            value,
            exact: self.exact.clone(),
            error,
            cond: self.cond,
        }
    }
}

/// Evaluates `p` at every point with every `(method, k)` and sorts the rows.
pub(crate) fn bernstein_sweep(
    p: &BernsteinPoly,
    points: &[f64],
    methods: &[(Method, usize)],
) -> Result<Vec<SweepRecord>> {
    let per_point = crate::par::map_ordered(points, |&s| -> Result<Vec<SweepRecord>> {
        let oracle = PointOracle::new(p, s)?;
        Ok(methods
            .iter()
            .map(|&(m, k)| oracle.record(s, m, k, evaluate(p, s, m, k)))
            .collect())
    });
    let mut rows = Vec::with_capacity(points.len() * methods.len());
    for r in per_point {
        rows.extend(r?);
    }
    sort_records(&mut rows);
    Ok(rows)
}

/// `2u`, the "full accuracy" threshold used by the sweeps.
pub const TWO_U: f64 = 2.0 * UNIT_ROUNDOFF;
