//! Exact arbitrary-precision arithmetic: big integers, reduced rationals,
//! Gaussian integers, and certified interval reals with directed rounding.
//!
//! Interval operations take an explicit bit budget. Callers that need a
//! decision use [`interval::refine`], which doubles precision from 128 bits
//! until the predicate is unambiguous and errors out past 16384 bits.

pub mod dyadic;
pub mod functions;
pub mod gauss;
pub mod interval;
pub mod rational;

pub use dyadic::{Dyadic, Round};
pub use gauss::{gauss_pow, GaussInt};
pub use interval::{refine, IntervalScalar, PREC_MAX, PREC_START};
pub use rational::RationalVal;

use crate::error::Error;
use num_bigint::BigInt;
use num_traits::Signed;

/// Certified enclosure of `atan(v/u)`, width at most `2^(1-bits)`.
///
/// Rejects `u <= 0` or `v <= 0`; the toolkit only ever needs first-quadrant
/// angles `xi = atan(v/u)`.
pub fn interval_atan2(v: &BigInt, u: &BigInt, bits: u32) -> Result<IntervalScalar, Error> {
    if !u.is_positive() {
        return Err(Error::InvalidInput("interval_atan2 requires u > 0".into()));
    }
    if !v.is_positive() {
        return Err(Error::InvalidInput("interval_atan2 requires v > 0".into()));
    }
    let mut extra = 0u32;
    loop {
        let r = functions::atan_ratio(v, u, bits + extra)?;
        if r.width() <= Dyadic::new(BigInt::from(1), 1 - bits as i64) {
            return Ok(r);
        }
        extra += 32;
        if bits + extra > PREC_MAX {
            return Err(Error::PrecisionExhausted { bits: bits + extra, context: "interval_atan2".into() });
        }
    }
}

/// Certified enclosure of `ln(x)` for a positive rational, width at most `2^(1-bits)`.
pub fn interval_log(x: &RationalVal, bits: u32) -> Result<IntervalScalar, Error> {
    if !x.numer().is_positive() {
        return Err(Error::InvalidInput("interval_log requires x > 0".into()));
    }
    let mut extra = 0u32;
    loop {
        let r = functions::ln_ratio(x.numer(), x.denom(), bits + extra)?;
        if r.width() <= Dyadic::new(BigInt::from(1), 1 - bits as i64) {
            return Ok(r);
        }
        extra += 32;
        if bits + extra > PREC_MAX {
            return Err(Error::PrecisionExhausted { bits: bits + extra, context: "interval_log".into() });
        }
    }
}
