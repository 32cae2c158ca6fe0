use std::io::Write;

use crate::casteljau::comp_de_casteljau_k_observed;
use crate::eft::ProductEft;
use crate::error::{Error, Result};
use crate::flops::{flop_count, fma_savings, sum_k_cost, Counted, OpLedger};
use crate::poly::BernsteinPoly;

#[derive(Debug, Clone, PartialEq)]
pub struct FlopRow {
    pub n: u64,
    pub k: u64,
    pub formula: u64,
    pub counted: OpLedger,
    /// SumK cost of the final combine over the K leading terms.
    pub sum_k_cost: u64,
    pub fma_savings: u64,
    /// Count with the FMA-based TwoProd.
    pub counted_fma: OpLedger,
}

impl FlopRow {
    pub fn matches(&self) -> bool {
        self.counted.total() == self.formula
            && self.counted_fma.total() == self.formula - self.fma_savings
    }
}

fn count(n: u64, k: u64, product: ProductEft) -> OpLedger {
    // Coefficients and point are arbitrary; the operation sequence does not
    // depend on the data.
    let coeffs: Vec<Counted> = (0..=n).map(|i| Counted(1.0 / (i as f64 + 1.5))).collect();
    let p = BernsteinPoly::new(coeffs).expect("non-empty");
    let s = Counted(0.3125);
    let (_, ledger) = Counted::measure(|| {
        comp_de_casteljau_k_observed(&p, s, k as usize, product, &mut ()).expect("k >= 1")
    });
    ledger
}

/// Analytic and instrumented flop counts for every `(n, K)` in the ranges.
pub fn flop_report(
    degrees: impl IntoIterator<Item = u64>,
    orders: impl IntoIterator<Item = u64> + Clone,
) -> Vec<FlopRow> {
    let mut rows = Vec::new();
    for n in degrees {
        for k in orders.clone() {
            let savings = if k >= 2 { fma_savings(n, k) } else { 0 };
            rows.push(FlopRow {
                n,
                k,
                formula: flop_count(n, k),
                counted: count(n, k, ProductEft::Split),
                sum_k_cost: if k >= 2 { sum_k_cost(k, k) } else { 0 },
                fma_savings: savings,
                counted_fma: count(n, k, ProductEft::Fma),
            });
        }
    }
    rows
}

/// Writes the table as CSV; fails after writing if any cell disagrees,
/// naming the per-operation ledger of each mismatch.
pub fn write_flop_report<W: Write>(rows: &[FlopRow], mut out: W) -> Result<()> {
    writeln!(
        out,
        "n,k,formula,counted,match,sumk_cost,fma_savings,counted_fma"
    )?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.n,
            r.k,
            r.formula,
            r.counted.total(),
            r.matches(),
            r.sum_k_cost,
            r.fma_savings,
            r.counted_fma.total()
        )?;
    }
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.matches())
        .map(|r| {
            format!(
                "n={} K={}: formula {} vs [{}], fma formula {} vs [{}]",
                r.n,
                r.k,
                r.formula,
                r.counted,
                r.formula - r.fma_savings,
                r.counted_fma
            )
        })
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::Regression(bad.join("; ")))
    }
}
