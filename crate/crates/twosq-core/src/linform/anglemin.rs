//! Certified lower bounds for `min over odd n <= n_max, k in Z of |n theta - k pi|`
//! with `theta = 2 atan(v/u)`, via continued-fraction best approximations of
//! `t = theta / pi` computed from interval-refined convergents.
//!
//! The classical best-approximation fact gives, for every n < q_(i+1),
//! `dist(n t, Z) >= dist(q_i t, Z)`; walking the certified convergent
//! denominators therefore covers whole blocks of n with one evaluation.

use crate::error::Error;
use crate::exact::functions::pi;
use crate::exact::{interval_atan2, refine, Dyadic, IntervalScalar};
use crate::repr::Representation;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

/// Certified block structure: for n in [q_i, next q), `pi * ||q_i t||` lower
/// bounds the angle distance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AngleMinCertificate {
    pub c: BigInt,
    pub u: BigInt,
    pub v: BigInt,
    pub n_max: u64,
    /// (block start q_i, certified lower bound for ||q_i t|| as a dyadic).
    pub blocks: Vec<(u64, f64)>,
    /// Certified positive rational lower bound for the minimum over the
    /// whole range, as (numer, denom).
    pub lower_bound: (BigInt, BigInt),
}

/// Continued-fraction walk of an interval value in (0, 1): emits certified
/// convergent denominators and the certified distance ||q_i t||.
///
/// Returns (q_i, lower bound of |q_i t - p_i|) pairs with q_i <= n_max, plus
/// the first denominator beyond n_max (for the final block's upper edge).
fn certified_cf_blocks(
    t: &IntervalScalar,
    n_max: u64,
) -> Result<Vec<(u64, IntervalScalar)>, Error> {
    // Convergents via the standard recurrence with certified digit decisions.
    let mut out = vec![];
    let mut x = t.clone();
    // p/q convergents
    let (mut p0, mut q0, mut p1, mut q1) = (1i128, 0i128, 0i128, 1i128); // (p_-1, q_-1, p_0, q_0)
    loop {
        // digit a = floor(x); certified only if both endpoints agree.
        let fa = x.lo().floor_bigint();
        let fb = x.hi().floor_bigint();
        if fa != fb {
            return Err(Error::PrecisionExhausted {
                bits: t.prec(),
                context: "continued fraction digit".into(),
            });
        }
        let a: i128 = fa.to_i64().ok_or_else(|| Error::InvalidInput("cf digit overflow".into()))? as i128;
        let p2 = a * p1 + p0;
        let q2 = a * q1 + q0;
        if q2 > n_max as i128 * 4 || q2 > i64::MAX as i128 {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        if q1 > 0 {
            // ||q1 t|| = |q1 t - p1|
            let dist = t
                .mul_i64(q1 as i64)
                .sub(&IntervalScalar::from_i64(p1 as i64, t.prec()))
                .abs();
            out.push((q1 as u64, dist));
        }
        if q1 > n_max as i128 {
            break;
        }
        // x <- 1/(x - a)
        let frac = x.sub(&IntervalScalar::from_i64(a as i64, t.prec()));
        if !frac.is_certainly_positive() {
            // Cannot certify the next digit: without the next denominator the
            // last block's coverage is unproven, so ask for more precision.
            return Err(Error::PrecisionExhausted {
                bits: t.prec(),
                context: "continued fraction fractional part".into(),
            });
        }
        x = IntervalScalar::from_i64(1, t.prec()).div(&frac)?;
    }
    // Both exits guarantee coverage: either a denominator beyond n_max was
    // pushed, or the cap shows the next denominator exceeds 4 n_max.
    if out.is_empty() {
        return Err(Error::PrecisionExhausted { bits: t.prec(), context: "no cf blocks".into() });
    }
    Ok(out)
}

/// Certified positive lower bound for `min |n theta - k pi|` over odd
/// 3 <= n <= n_max (in fact over all 1 <= n <= n_max).
pub fn angle_min_lower_bound(rep: &Representation, n_max: u64) -> Result<AngleMinCertificate, Error> {
    if n_max < 3 || n_max > 1_000_000 {
        return Err(Error::InvalidInput("n_max in [3, 1e6] required".into()));
    }
    refine("angle_min_lower_bound", |prec| {
        let xi = interval_atan2(&rep.v, &rep.u, prec)?;
        let theta = xi.shl(1);
        let pi_iv = pi(prec);
        let t = theta.div(&pi_iv)?; // in (0, 1)
        let blocks = match certified_cf_blocks(&t, n_max) {
            Ok(b) => b,
            Err(Error::PrecisionExhausted { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        // Lower bound over n <= n_max: the smallest certified block distance
        // among blocks with q_i <= n_max, PLUS the final partial block: for
        // n < q_(i+1) the bound ||q_i t|| applies, so the minimum over all
        // blocks covering [1, n_max] is the global bound.
        let mut min_dist: Option<IntervalScalar> = None;
        for (q, dist) in &blocks {
            if *q > n_max {
                break;
            }
            min_dist = Some(match min_dist {
                None => dist.clone(),
                Some(m) => {
                    if dist.certainly_lt(&m) == Some(true) {
                        dist.clone()
                    } else {
                        m
                    }
                }
            });
        }
        let min_dist = match min_dist {
            Some(m) => m,
            None => blocks[0].1.clone(),
        };
        // angle distance = pi * ||n t||; lower bound from interval endpoints.
        let bound = pi_iv.mul(&min_dist);
        if !bound.is_certainly_positive() {
            return Ok(None); // refine precision
        }
        // Export as an exact rational below the certified lower endpoint.
        let lo = bound.lo();
        let denom_bits = 96i64;
        let scaled = lo.mul(&Dyadic::new(BigInt::from(1), denom_bits)).floor_bigint();
        if !scaled.is_positive() {
            return Ok(None);
        }
        let cert = AngleMinCertificate {
            c: rep.c.clone(),
            u: rep.u.clone(),
            v: rep.v.clone(),
            n_max,
            blocks: blocks
                .iter()
                .filter(|(q, _)| *q <= n_max)
                .map(|(q, d)| (*q, d.lo().to_f64_lossy()))
                .collect(),
            lower_bound: (scaled, BigInt::from(1) << denom_bits as u32),
        };
        Ok(Some(cert))
    })
}

/// Direct per-n oracle used by tests: interval evaluation of
/// `min_k |n theta - k pi|` for each odd n <= n_max; returns the smallest.
pub fn direct_min(rep: &Representation, n_max: u64, prec: u32) -> Result<IntervalScalar, Error> {
    let xi = interval_atan2(&rep.v, &rep.u, prec)?;
    let theta = xi.shl(1);
    let pi_iv = pi(prec);
    let mut best: Option<IntervalScalar> = None;
    let mut n = 3u64;
    while n <= n_max {
        let nt = theta.mul_i64(n as i64);
        // k = round(n theta / pi)
        let k = {
            let q = nt.div(&pi_iv)?;
            let half = IntervalScalar::from_ratio(&BigInt::from(1), &BigInt::from(2), prec);
            q.add(&half).lo().floor_bigint()
        };
        let k_i: i64 = k.try_into().map_err(|_| Error::InvalidInput("k overflow".into()))?;
        let dist = nt.sub(&pi_iv.mul_i64(k_i)).abs();
        best = Some(match best {
            None => dist,
            Some(b) => {
                if dist.certainly_lt(&b) == Some(true) {
                    dist
                } else {
                    b
                }
            }
        });
        n += 2;
    }
    Ok(best.expect("n_max >= 3"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(c: i64, u: i64, v: i64) -> Representation {
        Representation::new(BigInt::from(c), BigInt::from(u), BigInt::from(v)).unwrap()
    }

    fn as_f64(b: &(BigInt, BigInt)) -> f64 {
        let n = b.0.to_f64().unwrap_or(0.0);
        let d = b.1.to_f64().unwrap_or(1.0);
        n / d
    }

    #[test]
    fn bounded_by_direct_minimum() {
        for (c, u, v, n_max) in [(5i64, 2i64, 1i64, 9u64), (5, 2, 1, 99), (85, 6, 7, 983), (85, 2, 9, 201)] {
            let cert = angle_min_lower_bound(&rep(c, u, v), n_max).unwrap();
            let direct = direct_min(&rep(c, u, v), n_max, 192).unwrap();
            let lb = as_f64(&cert.lower_bound);
            assert!(lb > 0.0);
            assert!(
                lb <= direct.hi().to_f64_lossy() + 1e-12,
                "c={c} n_max={n_max}: lb {lb} vs direct {}",
                direct.to_f64_lossy()
            );
        }
    }

    #[test]
    fn single_candidate_case() {
        let cert = angle_min_lower_bound(&rep(5, 2, 1), 3).unwrap();
        assert!(as_f64(&cert.lower_bound) > 0.0);
    }
}
