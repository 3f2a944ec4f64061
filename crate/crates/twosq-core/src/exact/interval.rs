use super::dyadic::{Dyadic, Round};
use crate::error::Error;
use num_bigint::BigInt;
use num_traits::Signed;
use std::cmp::Ordering;

/// Guard bits used internally above the requested precision.
pub const GUARD: u32 = 32;

/// Default starting precision for adaptive evaluation.
pub const PREC_START: u32 = 128;
/// Hard ceiling; beyond this a predicate is reported as undecidable.
pub const PREC_MAX: u32 = 16384;

/// A certified real: the exact value lies in `[lo, hi]`.
///
/// Every operation rounds outward at the stored working precision, so
/// enclosure is preserved under composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalScalar {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl IntervalScalar {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        IntervalScalar { lo, hi, prec }
    }

    pub fn point(d: Dyadic, prec: u32) -> Self {
        IntervalScalar { lo: d.clone(), hi: d, prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self::point(Dyadic::zero(), prec)
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Self {
        Self::point(Dyadic::from_bigint(n), prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::point(Dyadic::from_i64(n), prec)
    }

    /// `p/q` rounded outward.
    pub fn from_ratio(p: &BigInt, q: &BigInt, prec: u32) -> Self {
        let pd = Dyadic::from_bigint(p);
        let qd = Dyadic::from_bigint(q);
        let w = prec + GUARD;
        IntervalScalar::new(pd.div(&qd, w, Round::Down), pd.div(&qd, w, Round::Up), prec)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    fn out(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        let w = prec + GUARD;
        IntervalScalar::new(lo.round(w, Round::Down), hi.round(w, Round::Up), prec)
    }

    pub fn neg(&self) -> Self {
        IntervalScalar::new(self.hi.neg(), self.lo.neg(), self.prec)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::out(self.lo.add(&o.lo), self.hi.add(&o.hi), self.prec.max(o.prec))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let cands = [
            self.lo.mul(&o.lo),
            self.lo.mul(&o.hi),
            self.hi.mul(&o.lo),
            self.hi.mul(&o.hi),
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Self::out(lo, hi, self.prec.max(o.prec))
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        if k >= 0 {
            Self::out(self.lo.mul_i64(k), self.hi.mul_i64(k), self.prec)
        } else {
            Self::out(self.hi.mul_i64(k), self.lo.mul_i64(k), self.prec)
        }
    }

    /// Exact scaling by 2^k.
    pub fn shl(&self, k: i64) -> Self {
        IntervalScalar::new(self.lo.shl(k), self.hi.shl(k), self.prec)
    }

    /// Division; requires the divisor interval to exclude zero.
    pub fn div(&self, o: &Self) -> Result<Self, Error> {
        if o.contains_zero() {
            return Err(Error::InvalidInput("interval division by interval containing zero".into()));
        }
        let w = self.prec.max(o.prec) + GUARD;
        let q = |a: &Dyadic, b: &Dyadic, dir: Round| a.div(b, w, dir);
        let cands_lo = [
            q(&self.lo, &o.lo, Round::Down),
            q(&self.lo, &o.hi, Round::Down),
            q(&self.hi, &o.lo, Round::Down),
            q(&self.hi, &o.hi, Round::Down),
        ];
        let cands_hi = [
            q(&self.lo, &o.lo, Round::Up),
            q(&self.lo, &o.hi, Round::Up),
            q(&self.hi, &o.lo, Round::Up),
            q(&self.hi, &o.hi, Round::Up),
        ];
        let lo = cands_lo.iter().min().unwrap().clone();
        let hi = cands_hi.iter().max().unwrap().clone();
        Ok(IntervalScalar::new(lo, hi, self.prec.max(o.prec)))
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let hi = self.lo.abs().max(self.hi.abs());
            IntervalScalar::new(Dyadic::zero(), hi, self.prec)
        }
    }

    /// Integer power by repeated squaring.
    pub fn pow_u32(&self, n: u32) -> Self {
        let mut acc = IntervalScalar::point(Dyadic::one(), self.prec);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Square root, endpoint-wise with directed integer square roots.
    pub fn sqrt(&self) -> Result<Self, Error> {
        if self.lo.is_negative() {
            return Err(Error::InvalidInput("sqrt of interval with negative part".into()));
        }
        let w = self.prec + GUARD;
        Ok(IntervalScalar::new(sqrt_dyadic(&self.lo, w, Round::Down), sqrt_dyadic(&self.hi, w, Round::Up), self.prec))
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_certainly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_certainly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// `Some(true)` iff certainly `< o`, `Some(false)` iff certainly `>= o`.
    pub fn certainly_lt(&self, o: &Self) -> Option<bool> {
        if self.hi < o.lo {
            Some(true)
        } else if self.lo >= o.hi {
            Some(false)
        } else {
            None
        }
    }

    pub fn certainly_gt(&self, o: &Self) -> Option<bool> {
        o.certainly_lt(self)
    }

    /// Hull of two intervals.
    pub fn union(&self, o: &Self) -> Self {
        IntervalScalar::new(
            self.lo.clone().min(o.lo.clone()),
            self.hi.clone().max(o.hi.clone()),
            self.prec.max(o.prec),
        )
    }

    pub fn contains_dyadic(&self, d: &Dyadic) -> bool {
        self.lo <= *d && *d <= self.hi
    }

    pub fn contains(&self, o: &Self) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn midpoint(&self) -> Dyadic {
        self.lo.add(&self.hi).shl(-1)
    }

    pub fn to_f64_lossy(&self) -> f64 {
        self.midpoint().to_f64_lossy()
    }

    /// Widen so the interval is symmetric-enclosing with the given margin of
    /// the form 2^e added on both sides.
    pub fn widen_pow2(&self, e: i64) -> Self {
        let m = Dyadic::new(BigInt::from(1), e);
        IntervalScalar::new(self.lo.sub(&m), self.hi.add(&m), self.prec)
    }
}

/// Directed square root of a nonnegative dyadic at `prec` significant bits.
fn sqrt_dyadic(d: &Dyadic, prec: u32, dir: Round) -> Dyadic {
    use num_traits::Zero;
    if d.is_zero() {
        return Dyadic::zero();
    }
    debug_assert!(d.is_positive());
    // Scale to an integer with an even exponent and >= 2*prec bits.
    let bits = d.bits() as i64;
    let mut shift = (2 * prec as i64 + 2 - bits).max(0);
    if (d.exp() - shift) % 2 != 0 {
        shift += 1;
    }
    let m = d.mant() << shift as u64;
    let root_exp = (d.exp() - shift) / 2;
    let m_u = m.to_biguint().expect("nonnegative");
    let r = m_u.sqrt();
    let r = BigInt::from(r);
    match dir {
        Round::Down => Dyadic::new(r, root_exp),
        Round::Up => {
            if &r * &r == m {
                Dyadic::new(r, root_exp)
            } else {
                Dyadic::new(r + 1, root_exp)
            }
        }
    }
}

/// Adaptive precision driver: runs `f` at doubling precision until it returns
/// a decision, starting at [`PREC_START`] and giving up past [`PREC_MAX`].
pub fn refine<T>(
    context: &str,
    mut f: impl FnMut(u32) -> Result<Option<T>, Error>,
) -> Result<T, Error> {
    let mut prec = PREC_START;
    loop {
        if let Some(t) = f(prec)? {
            return Ok(t);
        }
        if prec >= PREC_MAX {
            return Err(Error::PrecisionExhausted { bits: prec, context: context.to_string() });
        }
        prec *= 2;
    }
}

impl PartialOrd for IntervalScalar {
    /// Partial order: defined only when intervals are disjoint.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.lo == other.lo && self.hi == other.hi && self.lo == self.hi {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: i64, hi: i64) -> IntervalScalar {
        IntervalScalar::new(Dyadic::from_i64(lo), Dyadic::from_i64(hi), 64)
    }

    #[test]
    fn arithmetic_encloses() {
        let a = iv(2, 3);
        let b = iv(-1, 1);
        let s = a.add(&b);
        assert!(s.contains_dyadic(&Dyadic::from_i64(1)));
        assert!(s.contains_dyadic(&Dyadic::from_i64(4)));
        let p = a.mul(&b);
        assert!(p.contains_dyadic(&Dyadic::from_i64(-3)));
        assert!(p.contains_dyadic(&Dyadic::from_i64(3)));
    }

    #[test]
    fn division_excludes_zero() {
        let a = iv(1, 1);
        assert!(a.div(&iv(-1, 1)).is_err());
        let q = a.div(&iv(3, 3)).unwrap();
        let three = IntervalScalar::from_i64(3, 64);
        let back = q.mul(&three);
        assert!(back.contains_dyadic(&Dyadic::one()));
    }

    #[test]
    fn sqrt_brackets() {
        let two = iv(2, 2);
        let r = two.sqrt().unwrap();
        let sq = r.mul(&r);
        assert!(sq.contains_dyadic(&Dyadic::from_i64(2)));
        assert!(r.is_certainly_positive());
    }

    #[test]
    fn refine_drives_precision() {
        // Deciding sqrt(2)^2 vs 2 + 2^-200 needs more than the starting bits.
        let res = refine("test", |prec| {
            let two = IntervalScalar::from_i64(2, prec);
            let r = two.sqrt()?;
            let sq = r.mul(&r);
            let target = IntervalScalar::from_i64(2, prec)
                .add(&IntervalScalar::point(Dyadic::new(num_bigint::BigInt::from(1), -200), prec));
            Ok(sq.certainly_lt(&target))
        });
        assert_eq!(res.unwrap(), true);
    }
}
