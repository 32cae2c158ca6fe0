use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn validate<T: Scalar>(coeffs: &[T]) -> Result<()> {
    if coeffs.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    if let Some((index, v)) = coeffs.iter().enumerate().find(|(_, c)| !c.is_finite()) {
        return Err(Error::NonFiniteCoefficient {
            index,
            value: v.to_f64(),
        });
    }
    Ok(())
}

/// Polynomial `p(s) = sum_j b_j B_{j,n}(s)` stored by its Bernstein
/// coefficients `b_0..b_n`. Never empty; all coefficients finite.
#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinPoly<T = f64> {
    coeffs: Vec<T>,
}

impl<T: Scalar> BernsteinPoly<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        validate(&coeffs)?;
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Re-types the coefficients, e.g. into [`Counted`](crate::flops::Counted).
    pub fn map<U: Scalar>(&self) -> BernsteinPoly<U> {
        BernsteinPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| U::from_f64(c.to_f64()))
                .collect(),
        }
    }
}

/// Polynomial `p(s) = sum_i a_i s^i` in the monomial basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialPoly<T = f64> {
    coeffs: Vec<T>,
}

impl<T: Scalar> MonomialPoly<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        validate(&coeffs)?;
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}
