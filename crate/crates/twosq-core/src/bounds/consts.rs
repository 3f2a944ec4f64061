//! Re-derivation of every printed constant in the bound chains. Printed
//! values are never trusted as inputs: each is recomputed with certified
//! intervals from its defining formula, and compared against the printed
//! value to one unit in the last printed digit. A mismatch is reported, not
//! silently propagated.

use crate::error::Error;
use crate::exact::functions::{exp, ln, ln_big, pi};
use crate::exact::IntervalScalar;
use num_bigint::BigInt;

const PREC: u32 = 160;

/// One re-derived constant with its certified enclosure and the printed value.
#[derive(Debug, Clone)]
pub struct RederivedConst {
    pub name: &'static str,
    pub printed: f64,
    /// One unit in the last printed digit.
    pub ulp: f64,
    pub derived: IntervalScalar,
    pub within_ulp: bool,
}

fn check(name: &'static str, printed: f64, ulp: f64, derived: IntervalScalar) -> RederivedConst {
    // certified: derived interval inside [printed - ulp, printed + ulp],
    // with the band endpoints as exact rationals (printed values have at
    // most 6 decimals, so the 1e9 scaling below is exact).
    let lo_r = IntervalScalar::from_ratio(
        &BigInt::from(((printed - ulp) * 1e9).round() as i64),
        &BigInt::from(1_000_000_000i64),
        PREC,
    );
    let hi_r = IntervalScalar::from_ratio(
        &BigInt::from(((printed + ulp) * 1e9).round() as i64),
        &BigInt::from(1_000_000_000i64),
        PREC,
    );
    let within = derived.lo() >= lo_r.lo() && derived.hi() <= hi_r.hi();
    RederivedConst { name, printed, ulp, derived, within_ulp: within }
}

/// log(1 + 462^2 / pi^2), printed 9.982 (the r < 462 quotient constant).
pub fn const_9_982() -> Result<RederivedConst, Error> {
    let v = log1p_ratio_sq(462)?;
    Ok(check("9.982", 9.982, 0.001, v))
}

/// log(1 + 264^2 / pi^2), printed 8.863 (the r <= 263 quotient constant).
pub fn const_8_863() -> Result<RederivedConst, Error> {
    let v = log1p_ratio_sq(264)?;
    Ok(check("8.863", 8.863, 0.001, v))
}

/// log(1 + 396^2/pi^2) / log 2.171, printed 12.5.
pub fn const_12_5() -> Result<RederivedConst, Error> {
    let num = log1p_ratio_sq(396)?;
    let den = ln(
        &IntervalScalar::from_ratio(&BigInt::from(2171), &BigInt::from(1000), PREC),
        PREC,
    )?;
    Ok(check("12.5", 12.5, 0.1, num.div(&den)?))
}

/// sqrt(2.1716^4 - 1), printed 4.608.
pub fn const_4_608() -> Result<RederivedConst, Error> {
    let base = IntervalScalar::from_ratio(&BigInt::from(21716), &BigInt::from(10000), PREC);
    let v = base.pow_u32(4).sub(&IntervalScalar::from_i64(1, PREC)).sqrt()?;
    Ok(check("4.608", 4.608, 0.001, v))
}

/// 3^(12/17), printed 2.1716 (from 3^(y(1-5/17)) with v_3(z) <= 5, y >= 34).
pub fn const_2_1716() -> Result<RederivedConst, Error> {
    let ln3 = ln_big(&BigInt::from(3), PREC)?;
    let expo = IntervalScalar::from_ratio(&BigInt::from(12), &BigInt::from(17), PREC);
    let v = exp(&expo.mul(&ln3), PREC)?;
    Ok(check("2.1716", 2.1716, 0.0001, v))
}

/// pi / (2 * 846), printed 0.001856 (the skew-ratio floor).
pub fn const_0_001856() -> Result<RederivedConst, Error> {
    let v = pi(PREC).div(&IntervalScalar::from_i64(2 * 846, PREC))?;
    Ok(check("0.001856", 0.001856, 0.000001, v))
}

/// ceil(0.001856 sqrt(c / (1 + 0.001856^2))) at c = 4e10, printed 372.
pub fn const_372() -> Result<(BigInt, bool), Error> {
    let ratio = IntervalScalar::from_ratio(&BigInt::from(1856), &BigInt::from(1_000_000), PREC);
    let c = IntervalScalar::from_bigint(&BigInt::from(40_000_000_000u64), PREC);
    let denom = IntervalScalar::from_i64(1, PREC).add(&ratio.mul(&ratio));
    let v = ratio.mul(&c.div(&denom)?.sqrt()?);
    let derived = v.lo().floor_bigint() + 1u32;
    Ok((derived.clone(), derived == BigInt::from(372)))
}

/// ceil of 539 (2 + 8.863 / log 925), printed 1778 (the absolute y cap).
pub fn const_1778() -> Result<(BigInt, bool), Error> {
    let c8863 = const_8_863()?.derived;
    let log925 = ln_big(&BigInt::from(925), PREC)?;
    let v = c8863.div(&log925)?.add(&IntervalScalar::from_i64(2, PREC)).mul_i64(539);
    let derived = v.hi().floor_bigint() + 1u32;
    Ok((derived.clone(), derived == BigInt::from(1778)))
}

/// 2 * 319 - 4 = 634 (the y cap from the high-y ladder with z <= 319).
pub fn const_634() -> (BigInt, bool) {
    let derived = BigInt::from(2 * 319 - 4);
    (derived.clone(), derived == BigInt::from(634))
}

fn log1p_ratio_sq(n: u64) -> Result<IntervalScalar, Error> {
    let pi_iv = pi(PREC);
    let sq = IntervalScalar::from_i64((n * n) as i64, PREC);
    let ratio = sq.div(&pi_iv.mul(&pi_iv))?;
    ln(&IntervalScalar::from_i64(1, PREC).add(&ratio), PREC)
}

/// Every re-derived floating constant in one list (for reports and tests).
pub fn all_float_consts() -> Result<Vec<RederivedConst>, Error> {
    Ok(vec![
        const_9_982()?,
        const_8_863()?,
        const_12_5()?,
        const_4_608()?,
        const_2_1716()?,
        const_0_001856()?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_constants_within_one_ulp() {
        for c in all_float_consts().unwrap() {
            assert!(
                c.within_ulp,
                "{} derived {} not within {} of printed {}",
                c.name,
                c.derived.to_f64_lossy(),
                c.ulp,
                c.printed
            );
        }
    }

    #[test]
    fn integer_constants() {
        let (v, ok) = const_372().unwrap();
        assert!(ok, "derived {v}");
        let (v, ok) = const_1778().unwrap();
        assert!(ok, "derived {v}");
        let (v, ok) = const_634();
        assert!(ok, "derived {v}");
    }
}
