//! Term-by-term check of the compensated evaluation of
//! `(2s - 1)^3 (s - 1)` at `s = 1/2 + 1001u`.

use std::fmt::Write;

use super::{distinguished_point, quartic_bernstein};
use crate::casteljau::comp_de_casteljau_k_traced;
use crate::error::{Error, Result};
use crate::exact::ExactScalar;
use crate::hexfloat::format_hex;
use crate::oracle::{exact_eval, exact_triangle};

/// `num/den * u^u_pow * (1001u)^w_pow`.
#[derive(Debug, Clone, Copy)]
struct Term {
    num: i64,
    den: i64,
    u_pow: i32,
    w_pow: i32,
}

const fn t(num: i64, den: i64, u_pow: i32, w_pow: i32) -> Term {
    Term {
        num,
        den,
        u_pow,
        w_pow,
    }
}

fn eval_terms(terms: &[Term]) -> ExactScalar {
    let u = ExactScalar::pow2(-53);
    let w = ExactScalar::from_integer(1001) * &u;
    terms
        .iter()
        .map(|t| ExactScalar::ratio(t.num, t.den) * u.powi(t.u_pow) * w.powi(t.w_pow))
        .sum()
}

struct Row {
    k: usize,
    j: usize,
    b_hat: (&'static str, &'static [Term]),
    db_hat: (&'static str, &'static [Term]),
    residual: (&'static str, &'static [Term]),
}

const ZERO: (&str, &[Term]) = ("0", &[]);

// w = 1001u
const ROWS: &[Row] = &[
    Row {
        k: 3,
        j: 0,
        b_hat: (
            "0.125 - 1.75w - 0.25u",
            &[t(1, 8, 0, 0), t(-7, 4, 0, 1), t(-1, 4, 1, 0)],
        ),
        db_hat: ("0.25u", &[t(1, 4, 1, 0)]),
        residual: ZERO,
    },
    Row {
        k: 3,
        j: 1,
        b_hat: (
            "-0.125 + 1.25w + 0.25u",
            &[t(-1, 8, 0, 0), t(5, 4, 0, 1), t(1, 4, 1, 0)],
        ),
        db_hat: ("-0.25u", &[t(-1, 4, 1, 0)]),
        residual: ZERO,
    },
    Row {
        k: 3,
        j: 2,
        b_hat: ("0.125 - 0.75w", &[t(1, 8, 0, 0), t(-3, 4, 0, 1)]),
        db_hat: ZERO,
        residual: ZERO,
    },
    Row {
        k: 3,
        j: 3,
        b_hat: ("-0.125 + 0.25w", &[t(-1, 8, 0, 0), t(1, 4, 0, 1)]),
        db_hat: ZERO,
        residual: ZERO,
    },
    Row {
        k: 2,
        j: 0,
        b_hat: ("-0.5w", &[t(-1, 2, 0, 1)]),
        db_hat: ("3w^2", &[t(3, 1, 0, 2)]),
        residual: ZERO,
    },
    Row {
        k: 2,
        j: 1,
        b_hat: ("0.5w + 0.125u", &[t(1, 2, 0, 1), t(1, 8, 1, 0)]),
        db_hat: ("-0.125u - 2w^2", &[t(-1, 8, 1, 0), t(-2, 1, 0, 2)]),
        residual: ZERO,
    },
    Row {
        k: 2,
        j: 2,
        b_hat: ("-0.5w", &[t(-1, 2, 0, 1)]),
        db_hat: ("w^2", &[t(1, 1, 0, 2)]),
        residual: ZERO,
    },
    Row {
        k: 1,
        j: 0,
        b_hat: (
            "0.0625u + w^2 + 239u^2",
            &[t(1, 16, 1, 0), t(1, 1, 0, 2), t(239, 1, 2, 0)],
        ),
        db_hat: (
            "-0.0625u + 0.5w^2 - 239u^2",
            &[t(-1, 16, 1, 0), t(1, 2, 0, 2), t(-239, 1, 2, 0)],
        ),
        residual: ("-5w^3", &[t(-5, 1, 0, 3)]),
    },
    Row {
        k: 1,
        j: 1,
        b_hat: (
            "0.0625u - w^2 - 239u^2",
            &[t(1, 16, 1, 0), t(-1, 1, 0, 2), t(-239, 1, 2, 0)],
        ),
        db_hat: (
            "-0.0625u - 0.5w^2 + 239u^2",
            &[t(-1, 16, 1, 0), t(-1, 2, 0, 2), t(239, 1, 2, 0)],
        ),
        residual: ("3w^3", &[t(3, 1, 0, 3)]),
    },
    Row {
        k: 0,
        j: 0,
        b_hat: ("0.0625u", &[t(1, 16, 1, 0)]),
        db_hat: ("-0.0625u", &[t(-1, 16, 1, 0)]),
        residual: ("-4w^3 + 8w^4", &[t(-4, 1, 0, 3), t(8, 1, 0, 4)]),
    },
];

/// Which quantity of the cascade a [`TraceEntry`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// Computed de Casteljau value.
    BHat,
    /// Computed first-order error.
    DbHat,
    /// Exact first-order error minus the computed one.
    Residual,
}

impl Quantity {
    fn name(self) -> &'static str {
        match self {
            Quantity::BHat => "b_hat",
            Quantity::DbHat => "db1_hat",
            Quantity::Residual => "db2",
        }
    }
}

#[derive(Debug, Clone)]
pub struct TraceEntry {
    pub k: usize,
    pub j: usize,
    pub quantity: Quantity,
    /// Value produced by the evaluator (exact residual for `db2`).
    pub actual: ExactScalar,
    pub expression: &'static str,
    pub expected: ExactScalar,
}

impl TraceEntry {
    pub fn matches(&self) -> bool {
        self.actual == self.expected
    }
}

#[derive(Debug, Clone)]
pub struct TraceReport {
    pub s: f64,
    pub entries: Vec<TraceEntry>,
    /// K = 2 result, expected to be exactly 0.
    pub result: f64,
    pub exact_value: ExactScalar,
    /// Closed form `-4w^3 + 8w^4` of the exact value.
    pub expected_exact: ExactScalar,
}

impl TraceReport {
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .entries
            .iter()
            .filter(|e| !e.matches())
            .map(|e| {
                format!(
                    "k={} j={} {}: got {} expected {} = {}",
                    e.k,
                    e.j,
                    e.quantity.name(),
                    e.actual,
                    e.expression,
                    e.expected
                )
            })
            .collect();
        let u16 = ExactScalar::pow2(-57);
        let b00 = self
            .entries
            .iter()
            .find(|e| e.k == 0 && e.quantity == Quantity::BHat);
        if b00.map(|e| e.actual != u16).unwrap_or(true) {
            out.push("b_hat_0^(0) != 2^-57".into());
        }
        let d00 = self
            .entries
            .iter()
            .find(|e| e.k == 0 && e.quantity == Quantity::DbHat);
        if d00.map(|e| e.actual != -u16.clone()).unwrap_or(true) {
            out.push("db1_hat_0^(0) != -2^-57".into());
        }
        if self.result != 0.0 {
            out.push(format!("K=2 result {} is not 0", self.result));
        }
        if self.exact_value != self.expected_exact {
            out.push("oracle value differs from -4w^3 + 8w^4".into());
        }
        out
    }

    pub fn verify(&self) -> Result<()> {
        let f = self.failures();
        if f.is_empty() {
            Ok(())
        } else {
            Err(Error::Regression(f.join("; ")))
        }
    }

    /// CSV rendering: `k,j,quantity,value_hex,value_dec,expression,expected_dec,match`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# s = {} (1/2 + 1001u), w = 1001u", format_hex(self.s)).unwrap();
        writeln!(
            out,
            "k,j,quantity,value_hex,value_dec,expression,expected_dec,match"
        )
        .unwrap();
        for e in &self.entries {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                e.k,
                e.j,
                e.quantity.name(),
                format_hex(e.actual.to_f64()),
                e.actual.to_decimal(super::EXACT_DIGITS),
                e.expression,
                e.expected.to_decimal(super::EXACT_DIGITS),
                e.matches()
            )
            .unwrap();
        }
        writeln!(
            out,
            "# result = {}, exact = {}",
            format_hex(self.result),
            self.exact_value.to_decimal(super::EXACT_DIGITS)
        )
        .unwrap();
        out
    }
}

/// Runs the K = 2 evaluator with trace capture and lines every computed
/// term up with its closed form.
pub fn table_reproduction() -> Result<TraceReport> {
    let p = quartic_bernstein();
    let s = distinguished_point();
    let (result, trace) = comp_de_casteljau_k_traced(&p, s, 2)?;
    let exact = exact_triangle(&p, s);

    let mut entries = Vec::with_capacity(3 * ROWS.len());
    for row in ROWS {
        let b_hat = trace.base(row.k, row.j);
        let db_hat = trace.error(1, row.k, row.j);
        let db = &exact[row.k][row.j] - &ExactScalar::from_f64(b_hat);
        let residual = db - ExactScalar::from_f64(db_hat);
        for (quantity, actual, (expression, terms)) in [
            (Quantity::BHat, ExactScalar::from_f64(b_hat), row.b_hat),
            (Quantity::DbHat, ExactScalar::from_f64(db_hat), row.db_hat),
            (Quantity::Residual, residual, row.residual),
        ] {
            entries.push(TraceEntry {
                k: row.k,
                j: row.j,
                quantity,
                actual,
                expression,
                expected: eval_terms(terms),
            });
        }
    }

    Ok(TraceReport {
        s,
        entries,
        result,
        exact_value: exact_eval(&p, s),
        expected_exact: eval_terms(&[t(-4, 1, 0, 3), t(8, 1, 0, 4)]),
    })
}
