//! Linear forms in two logarithms: the form `Lambda = n log(alpha) - k log(-1)`
//! attached to a representation, the certified lower-bound evaluator, the
//! exponent-threshold machinery, and continued-fraction angle certificates.

pub mod anglemin;
pub mod laurent;
pub mod threshold;

pub use anglemin::{angle_min_lower_bound, AngleMinCertificate};
pub use laurent::{laurent_verdict, AngleBound, LaurentParams, LaurentVerdict, ResolvedParams};
pub use threshold::{exponent_threshold, param_search, ThresholdTarget};

use crate::error::Error;
use crate::exact::functions::{ln_big, pi};
use crate::exact::{interval_atan2, IntervalScalar};
use crate::repr::Representation;
use num_bigint::BigInt;

/// The linear form `Lambda = n log(alpha) - k log(-1)` for one representation,
/// with `alpha = eps/conj(eps)` rotated by a power of i so the reduced angle
/// `2 xi'` satisfies `|2 xi'| <= pi/4`. Height is unchanged by the rotation.
#[derive(Debug, Clone)]
pub struct LinearFormInstance {
    pub rep: Representation,
    pub n: u64,
    /// h(alpha) = (1/2) log c.
    pub height: IntervalScalar,
    /// The reduced angle |2 xi'| (absolute value), certified.
    pub angle: IntervalScalar,
    /// Number of quarter turns applied in the reduction.
    pub rotation: u8,
}

/// Build the normalized instance. The rotation subtracts multiples of pi/2
/// from `2 xi` until the result lies in [-pi/4, pi/4]; only |angle| is kept.
pub fn build_form(rep: &Representation, n: u64, prec: u32) -> Result<LinearFormInstance, Error> {
    if n == 0 {
        return Err(Error::InvalidInput("n >= 1 required".into()));
    }
    let xi = interval_atan2(&rep.v, &rep.u, prec)?;
    let theta = xi.shl(1); // 2 xi in (0, pi)
    let pi_iv = pi(prec);
    let quarter = pi_iv.shl(-1); // pi/2
    // rotation count: round(theta / (pi/2)) in 0..=2
    let mut rot = 0u8;
    let mut reduced = theta.clone();
    for k in 1..=2u8 {
        let cand = theta.sub(&quarter.mul_i64(k as i64));
        if cand.abs().certainly_lt(&reduced.abs()) == Some(true) {
            reduced = cand;
            rot = k;
        }
    }
    let angle = reduced.abs();
    // |2 xi'| <= pi/4 must certify; widen precision upstream if not.
    if angle.certainly_lt(&pi_iv.shl(-2).widen_pow2(-8)) != Some(true) {
        return Err(Error::PrecisionExhausted { bits: prec, context: "angle reduction".into() });
    }
    let height = ln_big(&rep.c, prec)?.shl(-1);
    Ok(LinearFormInstance { rep: rep.clone(), n, height, angle, rotation: rot })
}

/// The two displayed lower bounds on min{X, Y} given a certified |Lambda|
/// lower bound: `Z^(n/2) |Lambda| / pi` and `0.99 Z^(n/2) min(|Lambda|, 0.001)`.
pub struct MinXyBound {
    pub via_pi: IntervalScalar,
    pub via_clamp: IntervalScalar,
}

/// Certified evaluation of both forms; `lambda_lower` is a lower bound for
/// |Lambda| (an interval whose lower endpoint is the certified bound).
pub fn min_xy_bound(
    c: &BigInt,
    n: u64,
    lambda_lower: &IntervalScalar,
    prec: u32,
) -> Result<MinXyBound, Error> {
    let log_c = ln_big(c, prec)?;
    // Z^(n/2) = exp((n/2) log c)
    let half_pow = crate::exact::functions::exp(&log_c.mul_i64(n as i64).shl(-1), prec)?;
    let pi_iv = pi(prec);
    let via_pi = half_pow.mul(lambda_lower).div(&pi_iv)?;
    let milli = IntervalScalar::from_ratio(&BigInt::from(1), &BigInt::from(1000), prec);
    let clamped = if lambda_lower.certainly_gt(&milli) == Some(true) { milli } else { lambda_lower.clone() };
    let q99 = IntervalScalar::from_ratio(&BigInt::from(99), &BigInt::from(100), prec);
    let via_clamp = half_pow.mul(&clamped).mul(&q99);
    Ok(MinXyBound { via_pi, via_clamp })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(c: i64, u: i64, v: i64) -> Representation {
        Representation::new(BigInt::from(c), BigInt::from(u), BigInt::from(v)).unwrap()
    }

    #[test]
    fn build_form_heights() {
        // h(alpha) = (1/2) log 5 for (2, 1)
        let f = build_form(&rep(5, 2, 1), 3, 128).unwrap();
        let expect = ln_big(&BigInt::from(5), 128).unwrap().shl(-1);
        assert!(f.height.certainly_lt(&expect.widen_pow2(-60)).is_none());
        // angle reduced below pi/4
        let quarter_pi = pi(128).shl(-2);
        assert_eq!(f.angle.certainly_lt(&quarter_pi), Some(true));
    }

    #[test]
    fn build_form_rotation_invariance() {
        // (6,7): 2*atan(7/6) = 1.7276 rad; reduction subtracts pi/2 once.
        let f = build_form(&rep(85, 6, 7), 3, 128).unwrap();
        assert_eq!(f.rotation, 1);
        // degenerate n = 1 allowed
        let f1 = build_form(&rep(5, 2, 1), 1, 128).unwrap();
        assert_eq!(f1.n, 1);
    }

    #[test]
    fn min_xy_plug_in() {
        // |Lambda| >= 1e-4, Z = 5, n = 3: min{X,Y} >= 5^1.5 * 1e-4 / pi
        let lam = IntervalScalar::from_ratio(&BigInt::from(1), &BigInt::from(10000), 128);
        let b = min_xy_bound(&BigInt::from(5), 3, &lam, 128).unwrap();
        let v = b.via_pi.to_f64_lossy();
        assert!((v - 5f64.powf(1.5) * 1e-4 / std::f64::consts::PI).abs() < 1e-9);
        // clamp branch: |Lambda| = 0.01 -> uses 0.001
        let lam = IntervalScalar::from_ratio(&BigInt::from(1), &BigInt::from(100), 128);
        let b = min_xy_bound(&BigInt::from(5), 3, &lam, 128).unwrap();
        let v = b.via_clamp.to_f64_lossy();
        assert!((v - 0.99 * 5f64.powf(1.5) * 0.001).abs() < 1e-9);
    }
}
