//! Accurate evaluation of polynomials in Bernstein form.
//!
//! Three evaluators share one code path: plain de Casteljau, the
//! compensated variant, and the K-fold compensated variant whose result is
//! as accurate as de Casteljau run in K times the working precision. An
//! exact rational oracle ([`oracle`]) provides ground truth for every
//! error bound, and [`experiments`] regenerates the accuracy sweeps as
//! bit-exact CSV.

pub mod bounds;
pub mod casteljau;
pub mod eft;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod flops;
pub mod hexfloat;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod scalar;

pub use casteljau::{
    comp_de_casteljau, comp_de_casteljau_k, comp_de_casteljau_k_traced, de_casteljau, horner,
    local_error, local_error_eft, CompensationTrace,
};
pub use eft::{split, sum_k, two_prod, two_prod_fma, two_sum, vec_sum, EftPair, SplitPair};
pub use error::{Error, Result};
pub use exact::ExactScalar;
pub use flops::flop_count;
pub use poly::{BernsteinPoly, MonomialPoly};
pub use scalar::{Scalar, UNIT_ROUNDOFF};
