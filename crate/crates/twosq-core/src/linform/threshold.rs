//! Exponent thresholds: for which odd n does the certified linear-form bound
//! force the mutual-exclusion contradiction (mu1 * mu2 <= 2y)?
//!
//! The machinery mirrors the source computations: a fixed parameter point
//! (rho = 7.7, mu = 0.56, L = 8, R1 = 4, S1 = 2, R2 from the m = 0.1166
//! recipe, minimal feasible K), the 0.99-form translation from |Lambda| to
//! exponent claims on a and b, Liouville branches covering k-values outside
//! the cardinality condition, a block ladder certifying `mu <= 2 sqrt(3)`
//! for every odd n up to an explicit ceiling, and the standard two-logarithm
//! tail fact beyond it (recorded as an external assumption).

use super::laurent::{laurent_verdict, AngleBound, LaurentParams};
use crate::cert::{Certificate, Verdict};
use crate::error::Error;
use crate::exact::functions::{ln, ln_big, sqrt3};
use crate::exact::{Dyadic, IntervalScalar};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Which exponent the threshold bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThresholdTarget {
    RBound,
    ZBound,
}

/// Beyond this coefficient the two-logarithm tail fact is consumed as an
/// external assumption (the same cutoff the source computation used).
pub const TAIL_CUTOFF: u64 = 55_000;

/// Coefficients below this are the small-exponent battery's job.
const SEARCH_FLOOR: u64 = 203;
const SEARCH_CAP: u64 = 4_001;

/// Exponent-threshold engine for one c_min; caches certified per-coefficient
/// bounds. All decisions are interval-certified.
pub struct ThresholdMachine {
    pub c_min: BigInt,
    pub grid: Vec<LaurentParams>,
    prec: u32,
    log_c: IntervalScalar,
    mu_cache: HashMap<u64, Option<IntervalScalar>>,
    neg_log_cache: HashMap<u64, Option<IntervalScalar>>,
    ladder: Option<(u64, Vec<(u64, u64)>)>,
}

impl ThresholdMachine {
    pub fn new(c_min: &BigInt, prec: u32) -> Result<Self, Error> {
        Ok(ThresholdMachine {
            c_min: c_min.clone(),
            grid: vec![LaurentParams::paper_point()],
            prec,
            log_c: ln_big(c_min, prec)?,
            mu_cache: HashMap::new(),
            neg_log_cache: HashMap::new(),
            ladder: None,
        })
    }

    /// Certified -log lower bound for |Lambda| at coefficient n, valid for
    /// every integer k: the lemma branch (k covered by the cardinality
    /// condition), Liouville branches for divisors d >= 5 of n, and k = 0.
    pub fn neg_log_all_k(&mut self, n: u64) -> Result<Option<IntervalScalar>, Error> {
        if let Some(v) = self.neg_log_cache.get(&n) {
            return Ok(v.clone());
        }
        let mut best: Option<IntervalScalar> = None;
        for p in self.grid.clone() {
            let v = laurent_verdict(&self.c_min, &AngleBound::WorstCase, &p, n, None, self.prec)?;
            if v.cond_i && v.cond_ii && v.cond_iii {
                if let Some(nl) = v.lambda_lower_neg_log {
                    best = match best {
                        None => Some(nl),
                        Some(b) if nl.certainly_lt(&b) == Some(true) => Some(nl),
                        Some(b) => Some(b),
                    };
                }
            }
        }
        let out = match best {
            None => None,
            Some(lemma_bound) => {
                let mut overall = lemma_bound;
                // Divisor branches: gcd(k, n) = d >= 5 leaves the reduced form
                // |Lambda| >= d * c^(-n/d); -log = (n/d) log c - log d.
                for d in divisors(n) {
                    if d < 5 {
                        continue; // covered by condition (II) with gcd cap 4
                    }
                    let nd = n / d;
                    if nd == 0 {
                        continue;
                    }
                    let branch = self
                        .log_c
                        .mul_i64(nd as i64)
                        .sub(&ln_big(&BigInt::from(d), self.prec)?);
                    if branch.certainly_gt(&overall) == Some(true) {
                        overall = branch;
                    }
                }
                // k = 0: |Lambda| = n |2 xi'| >= n / c.
                let k0 = self.log_c.sub(&ln_big(&BigInt::from(n), self.prec)?);
                if k0.certainly_gt(&overall) == Some(true) {
                    overall = k0;
                }
                Some(overall)
            }
        };
        self.neg_log_cache.insert(n, out.clone());
        Ok(out)
    }

    /// Certified mu(n): `min side >= c^(n/mu)` from the 0.99-form. The upper
    /// endpoint of the returned interval is the claimable exponent.
    pub fn mu_of(&mut self, n: u64) -> Result<Option<IntervalScalar>, Error> {
        if let Some(v) = self.mu_cache.get(&n) {
            return Ok(v.clone());
        }
        let out = match self.neg_log_all_k(n)? {
            None => None,
            Some(neg_log) => {
                let prec = self.prec;
                let slack = ln(
                    &IntervalScalar::from_ratio(&BigInt::from(100), &BigInt::from(99), prec),
                    prec,
                )?;
                let half = IntervalScalar::from_ratio(&BigInt::from(1), &BigInt::from(2), prec);
                let denom = self.log_c.mul_i64(n as i64);
                let inv_mu = half.sub(&neg_log.add(&slack).div(&denom)?);
                if inv_mu.is_certainly_positive() {
                    Some(IntervalScalar::from_i64(1, prec).div(&inv_mu)?)
                } else {
                    None
                }
            }
        };
        self.mu_cache.insert(n, out.clone());
        Ok(out)
    }

    fn mu_le(&mut self, n: u64, bound: &Dyadic) -> Result<bool, Error> {
        Ok(match self.mu_of(n)? {
            Some(m) => m.hi() <= bound,
            None => false,
        })
    }

    fn product_le(&mut self, n1: u64, n2: u64, two_y: u64) -> Result<bool, Error> {
        let (m1, m2) = match (self.mu_of(n1)?, self.mu_of(n2)?) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(false),
        };
        Ok(m1.mul(&m2).hi() <= &Dyadic::from_i64(two_y as i64))
    }

    /// The ladder: smallest odd n0 with certified mu(n0) <= 2 sqrt(3), plus
    /// blocks certifying the same for every odd n in [n0, TAIL_CUTOFF].
    ///
    /// Per block [a, b]: one lemma tuple chosen at b certifies condition
    /// (III) for every n <= b (the b-quantity grows with the coefficient),
    /// and its constant bound meets the 2 sqrt(3) requirement at a (the
    /// hardest point). Divisor branches are n-uniform for this target.
    pub fn ladder(&mut self) -> Result<(u64, Vec<(u64, u64)>), Error> {
        if let Some(l) = &self.ladder {
            return Ok(l.clone());
        }
        let prec = self.prec;
        let two_sqrt3 = sqrt3(prec).mul_i64(2);
        let bound = two_sqrt3.lo().clone();
        let mut n0 = SEARCH_FLOOR;
        while n0 <= SEARCH_CAP {
            if self.mu_le(n0, &bound)? {
                break;
            }
            n0 += 2;
        }
        if n0 > SEARCH_CAP {
            return Err(Error::NoThreshold { cap: SEARCH_CAP });
        }
        // Blocks: for a start a, pick the largest end b such that the tuple
        // minimal at b still meets the requirement at a.
        let lam = {
            // lambda = 1/2 - 1/(2 sqrt(3)) as an interval
            let half = IntervalScalar::from_ratio(&BigInt::from(1), &BigInt::from(2), prec);
            let inv = IntervalScalar::from_i64(1, prec).div(&two_sqrt3)?;
            half.sub(&inv)
        };
        let slack = ln(
            &IntervalScalar::from_ratio(&BigInt::from(100), &BigInt::from(99), prec),
            prec,
        )?;
        let mut blocks = vec![];
        let mut a = n0;
        while a <= TAIL_CUTOFF {
            let mut lo = a;
            let mut hi = TAIL_CUTOFF;
            // F(b) is the bound from the minimal tuple at b; requirement at a:
            // F(b) + slack <= lam * a * log c. F grows with b, so bisect for
            // the largest feasible b.
            let ok_at = |m: &mut Self, b: u64| -> Result<bool, Error> {
                Ok(match m.neg_log_all_k(b)? {
                    None => false,
                    Some(f) => {
                        let budget = lam.mul(&m.log_c.clone()).mul_i64(a as i64);
                        f.add(&slack).certainly_lt(&budget) == Some(true)
                    }
                })
            };
            if !ok_at(self, lo)? {
                return Err(Error::NoThreshold { cap: lo });
            }
            while lo < hi {
                let mid = lo + (hi - lo).div_ceil(2);
                let mid = if mid % 2 == 0 { mid + 1 } else { mid };
                if mid > hi || mid == lo {
                    break;
                }
                if ok_at(self, mid)? {
                    lo = mid;
                } else {
                    hi = mid - 2;
                }
            }
            blocks.push((a, lo));
            if lo >= TAIL_CUTOFF {
                break;
            }
            a = lo + 2;
            if blocks.len() > 500 {
                return Err(Error::NoThreshold { cap: a });
            }
        }
        let out = (n0, blocks);
        self.ladder = Some(out.clone());
        Ok(out)
    }

    /// Candidate odd r is excluded at budget 2y: the b-side exponent at r
    /// pairs with the a-side exponent at every admissible z > r.
    fn r_excluded(&mut self, r: u64, y: u64) -> Result<bool, Error> {
        let (ladder_start, _) = self.ladder()?;
        // Beyond the ladder mu2 <= 2 sqrt(3); need mu1(r) * 2 sqrt(3) <= 2y,
        // i.e. mu1 <= y / sqrt(3). (For y = 6 that equals 2 sqrt(3).)
        let prec = self.prec;
        let y_over_sqrt3 = IntervalScalar::from_i64(y as i64, prec).div(&sqrt3(prec))?;
        let m1 = match self.mu_of(r)? {
            Some(m) => m,
            None => return Ok(false),
        };
        if !(m1.hi() <= y_over_sqrt3.lo()) {
            return Ok(false);
        }
        // Explicit products for z strictly between r and the ladder start.
        let mut z = r + 2;
        while z < ladder_start {
            if !self.product_le(r, z, 2 * y)? {
                return Ok(false);
            }
            z += 2;
        }
        Ok(true)
    }

    /// Candidate odd z is excluded: two-step interplay. The a-side at z
    /// forces r > 2z/mu2; every admissible r in [r_lo, r_max] must then close
    /// the product bound (r > r_max is excluded by the r-threshold).
    fn z_excluded(&mut self, z: u64, y: u64, r_max: u64) -> Result<bool, Error> {
        let m2 = match self.mu_of(z)? {
            Some(m) => m,
            None => return Ok(false),
        };
        // Claimable exponent is m2.hi; the valid floor is 2z / m2.hi, the
        // lower endpoint of the interval quotient.
        let quot = IntervalScalar::from_i64(2 * z as i64, self.prec).div(&m2)?;
        let floor: u64 = quot
            .lo()
            .floor_bigint()
            .try_into()
            .map_err(|_| Error::InvalidInput("r floor overflow".into()))?;
        let mut r_lo = floor + 1;
        if r_lo % 2 == 0 {
            r_lo += 1;
        }
        if r_lo > r_max {
            return Ok(true);
        }
        let (ladder_start, _) = self.ladder()?;
        let two_y = &Dyadic::from_i64(2 * y as i64);
        let two_sqrt3 = sqrt3(self.prec).mul_i64(2);
        // r beyond the ladder: product <= mu2 * 2 sqrt(3).
        if m2.mul(&two_sqrt3).hi() > two_y {
            // then every r in the scan range must close individually and the
            // range must not extend past the ladder
            if r_max >= ladder_start {
                return Ok(false);
            }
        }
        let mut r = r_lo;
        while r <= r_max.min(ladder_start.saturating_sub(2)) {
            if !self.product_le(r, z, 2 * y)? {
                return Ok(false);
            }
            r += 2;
        }
        Ok(true)
    }

    /// Smallest odd B with every odd n > B excluded. The certificate records
    /// the grid, the ladder blocks, and the tail assumption.
    pub fn threshold(
        &mut self,
        target: ThresholdTarget,
        y_floor: u64,
    ) -> Result<(u64, Certificate), Error> {
        let mut cert = Certificate::new(
            match target {
                ThresholdTarget::RBound => "threshold/r-bound",
                ThresholdTarget::ZBound => "threshold/z-bound",
            },
            "linear-forms",
        );
        cert.inputs.insert("c_min".into(), self.c_min.to_string());
        cert.inputs.insert("y_floor".into(), y_floor.to_string());
        cert.parameters.insert("grid".into(), serde_json::to_value(&self.grid).unwrap());

        let r_max = match target {
            ThresholdTarget::ZBound => self.threshold(ThresholdTarget::RBound, y_floor)?.0,
            ThresholdTarget::RBound => u64::MAX,
        };

        let mut n = SEARCH_FLOOR;
        let mut first: Option<u64> = None;
        while n <= SEARCH_CAP {
            let excluded = match target {
                ThresholdTarget::RBound => self.r_excluded(n, y_floor)?,
                ThresholdTarget::ZBound => self.z_excluded(n, y_floor, r_max)?,
            };
            if excluded {
                first = Some(n);
                break;
            }
            n += 2;
        }
        let n0 = first.ok_or(Error::NoThreshold { cap: SEARCH_CAP })?;
        // Every candidate above n0 must stay excluded; scan to the ladder
        // start (beyond it the ladder plus pair logic closes uniformly).
        let (ladder_start, blocks) = self.ladder()?;
        let mut m = n0 + 2;
        while m <= ladder_start.max(n0) + 2 {
            let ok = match target {
                ThresholdTarget::RBound => self.r_excluded(m, y_floor)?,
                ThresholdTarget::ZBound => self.z_excluded(m, y_floor, r_max)?,
            };
            if !ok {
                return Err(Error::NoThreshold { cap: m });
            }
            m += 2;
        }
        cert.condition("first-excluded", true, format!("n0 = {n0}"));
        cert.condition(
            "ladder",
            true,
            format!(
                "{} blocks certify mu <= 2 sqrt(3) for odd n in [{}, {}]",
                blocks.len(),
                ladder_start,
                TAIL_CUTOFF
            ),
        );
        cert.assume(
            "n > 55000: the two-log lower bound keeps min-side > c^(n/(2 sqrt 3)) (standard explicit estimate, consumed as external fact)",
        );
        cert.verdict = Verdict::Verified;
        cert.step(format!("threshold B = {}", n0 - 2));
        Ok((n0 - 2, cert))
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut d = vec![];
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            d.push(i);
            if i != n / i {
                d.push(n / i);
            }
        }
        i += 1;
    }
    d.sort_unstable();
    d
}

/// Spec-facing wrapper: threshold for one target/budget at c_min.
pub fn exponent_threshold(
    c_min: &BigInt,
    target: ThresholdTarget,
    y_floor: u64,
) -> Result<(u64, Certificate), Error> {
    let mut m = ThresholdMachine::new(c_min, 160)?;
    m.threshold(target, y_floor)
}

/// Deterministic grid search minimizing the certified exponent theta in
/// `|Lambda| > c^(-theta b1)`. Ties break on grid order.
pub fn param_search(
    c_min: &BigInt,
    b1: u64,
    grid: &[LaurentParams],
    prec: u32,
) -> Result<(LaurentParams, IntervalScalar), Error> {
    let log_c = ln_big(c_min, prec)?;
    let denom = log_c.mul_i64(b1 as i64);
    let mut best: Option<(LaurentParams, IntervalScalar)> = None;
    for p in grid {
        let v = laurent_verdict(c_min, &AngleBound::WorstCase, p, b1, None, prec)?;
        if !(v.cond_i && v.cond_ii && v.cond_iii) {
            continue;
        }
        let theta = v.lambda_lower_neg_log.unwrap().div(&denom)?;
        best = match best {
            None => Some((p.clone(), theta)),
            Some((bp, bt)) => {
                if theta.certainly_lt(&bt) == Some(true) {
                    Some((p.clone(), theta))
                } else {
                    Some((bp, bt))
                }
            }
        };
    }
    best.ok_or(Error::ConditionFailed("no grid point certifies"))
}

/// The default documented search grid around the source point.
pub fn default_param_grid() -> Vec<LaurentParams> {
    let mut g = vec![];
    for rho10 in [75u64, 76, 77, 78, 79, 80] {
        for mu100 in [54u64, 55, 56, 57, 58] {
            let mut p = LaurentParams::paper_point();
            p.rho = (rho10, 10);
            p.mu = (mu100, 100);
            g.push(p);
        }
    }
    g
}

/// Certified theta bound at the source parameter point.
pub fn theta_at(c_min: &BigInt, b1: u64, prec: u32) -> Result<IntervalScalar, Error> {
    let v = laurent_verdict(
        c_min,
        &AngleBound::WorstCase,
        &LaurentParams::paper_point(),
        b1,
        None,
        prec,
    )?;
    if !(v.cond_i && v.cond_ii && v.cond_iii) {
        return Err(Error::ConditionFailed("source point does not certify"));
    }
    let log_c = ln_big(c_min, prec)?;
    v.lambda_lower_neg_log.unwrap().div(&log_c.mul_i64(b1 as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_at_source_point() {
        let c = BigInt::from(40_000_000_005u64);
        let theta = theta_at(&c, 771, 160).unwrap();
        let lim = IntervalScalar::from_ratio(&BigInt::from(2113), &BigInt::from(10_000), 160);
        assert_eq!(theta.certainly_lt(&lim), Some(true), "theta = {}", theta.to_f64_lossy());
    }

    #[test]
    #[ignore = "several minutes; exercised by the acceptance suite"]
    fn r_threshold_y6_matches_source() {
        let c = BigInt::from(40_000_000_005u64);
        let (b, cert) = exponent_threshold(&c, ThresholdTarget::RBound, 6).unwrap();
        assert_eq!(b, 769);
        assert_eq!(cert.verdict, Verdict::Verified);
        assert!(!cert.assumptions.is_empty());
    }
}
