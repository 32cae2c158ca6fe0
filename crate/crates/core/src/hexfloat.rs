//! C99-style hexadecimal float literals (`%a`), used for bit-exact CSV.
//!
//! Normal numbers render as `0x1.<hex>p<exp>` with trailing zero nibbles
//! dropped, subnormals as `0x0.<hex>p-1022`, zero as `0x0p+0`.

use std::fmt::Write;

pub fn format_hex(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    let sign = if x.is_sign_negative() { "-" } else { "" };
    if x.is_infinite() {
        return format!("{sign}inf");
    }
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i32;
    let fraction = bits & ((1u64 << 52) - 1);
    let (lead, exp) = match (biased, fraction) {
        (0, 0) => return format!("{sign}0x0p+0"),
        (0, _) => (0, -1022),
        _ => (1, biased - 1023),
    };
    let mut out = format!("{sign}0x{lead}");
    if fraction != 0 {
        let mut digits = String::with_capacity(13);
        write!(digits, "{fraction:013x}").unwrap();
        out.push('.');
        out.push_str(digits.trim_end_matches('0'));
    }
    write!(out, "p{exp:+}").unwrap();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseHexError(pub String);

impl std::fmt::Display for ParseHexError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid hex float literal {:?}", self.0)
    }
}

impl std::error::Error for ParseHexError {}

/// Parses literals produced by [`format_hex`] (and any `%a` output whose
/// value is exactly representable). Inexact literals are rejected rather
/// than rounded.
pub fn parse_hex(text: &str) -> Result<f64, ParseHexError> {
    let err = || ParseHexError(text.to_string());
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let value = match body {
        "inf" => f64::INFINITY,
        "nan" => return Ok(f64::NAN),
        _ => {
            let body = body
                .strip_prefix("0x")
                .or_else(|| body.strip_prefix("0X"))
                .ok_or_else(err)?;
            let (mantissa, exp) = body.split_once(['p', 'P']).ok_or_else(err)?;
            let exp: i32 = exp.parse().map_err(|_| err())?;
            let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
            if int_part.is_empty() || frac_part.len() > 13 {
                return Err(err());
            }
            let lead = u64::from_str_radix(int_part, 16).map_err(|_| err())?;
            if lead > 1 {
                return Err(err());
            }
            let frac = if frac_part.is_empty() {
                0
            } else {
                u64::from_str_radix(frac_part, 16).map_err(|_| err())?
                    << (4 * (13 - frac_part.len()))
            };
            let m = (lead << 52) | frac;
            if m == 0 {
                0.0
            } else {
                // value = m * 2^(exp - 52); build it exactly or fail.
                let x = crate::exact::ExactScalar::from_integer(m as i64)
                    * crate::exact::ExactScalar::pow2(exp as i64 - 52);
                let f = x.to_f64();
                if !f.is_finite() || crate::exact::ExactScalar::from_f64(f) != x {
                    return Err(err());
                }
                f
            }
        }
    };
    Ok(if negative { -value } else { value })
}
