use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

/// Rounding direction for dyadic operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// Arbitrary-precision dyadic rational `mant * 2^exp`.
///
/// All interval endpoints are dyadics: addition and multiplication are exact,
/// and precision is controlled explicitly through [`Dyadic::round`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::from(1), exp: 0 }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Dyadic::new(n.clone(), 0)
    }

    pub fn from_i64(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Exact sum. Exponents are aligned, so adding values of wildly different
    /// scales allocates the difference in bits; callers round afterwards.
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact product.
    pub fn mul(&self, other: &Self) -> Self {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        Dyadic::new(&self.mant * k, self.exp)
    }

    /// Exact scaling by `2^k`.
    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Round to at most `prec` significant bits in the given direction.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let drop = bits - prec as u64;
        let q = &self.mant >> drop;
        let exact = (&q << drop) == self.mant;
        let q = if exact {
            q
        } else {
            match dir {
                // BigInt shr truncates toward negative infinity, which is
                // exactly floor; Up needs floor + 1.
                Round::Down => q,
                Round::Up => q + 1,
            }
        };
        Dyadic::new(q, self.exp + drop as i64)
    }

    /// Directed division `self / other` correct to `prec` significant bits.
    pub fn div(&self, other: &Self, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Scale numerator so the integer quotient carries prec+2 bits.
        let shift = (other.mant.bits() as i64 + prec as i64 + 2) - self.mant.bits() as i64;
        let shift = shift.max(0) as u64;
        let num = &self.mant << shift;
        let (q, r) = num_integer::Integer::div_rem(&num, &other.mant);
        let exact = r.is_zero();
        // div_rem truncates toward zero; fix to floor, then apply direction.
        let mut q = q;
        if !exact {
            let qneg = (self.mant.is_negative()) != (other.mant.is_negative());
            match (qneg, dir) {
                (true, Round::Down) => q -= 1,
                (false, Round::Up) => q += 1,
                _ => {}
            }
        }
        Dyadic::new(q, self.exp - other.exp - shift as i64)
    }

    /// Floor to a BigInt.
    pub fn floor_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            &self.mant >> (-self.exp) as u64
        }
    }

    pub fn cmp_dyadic(&self, other: &Self) -> Ordering {
        match (self.mant.sign(), other.mant.sign()) {
            (num_bigint::Sign::Minus, num_bigint::Sign::Plus | num_bigint::Sign::NoSign) => {
                return Ordering::Less
            }
            (num_bigint::Sign::Plus, num_bigint::Sign::Minus | num_bigint::Sign::NoSign) => {
                return Ordering::Greater
            }
            (num_bigint::Sign::NoSign, num_bigint::Sign::Minus) => return Ordering::Greater,
            (num_bigint::Sign::NoSign, num_bigint::Sign::Plus) => return Ordering::Less,
            (num_bigint::Sign::NoSign, num_bigint::Sign::NoSign) => return Ordering::Equal,
            _ => {}
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }

    /// Approximate conversion for diagnostics only; never used in certified paths.
    pub fn to_f64_lossy(&self) -> f64 {
        let bits = self.mant.bits() as i64;
        if bits <= 52 {
            let m = i64::try_from(self.mant.clone()).unwrap_or(0) as f64;
            return m * (self.exp as f64).exp2();
        }
        let drop = bits - 52;
        let top = i64::try_from(&self.mant >> drop as u64).unwrap_or(0) as f64;
        top * ((self.exp + drop) as f64).exp2()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_dyadic(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_dyadic(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn add_mul_exact() {
        let a = d(3, -1); // 1.5
        let b = d(5, -2); // 1.25
        assert_eq!(a.add(&b), d(11, -2));
        assert_eq!(a.mul(&b), d(15, -3));
    }

    #[test]
    fn rounding_directions() {
        let x = d(0b10111, 0); // 23
        assert_eq!(x.round(3, Round::Down), d(0b101, 2)); // 20
        assert_eq!(x.round(3, Round::Up), d(0b110, 2)); // 24
        let nx = x.neg();
        assert_eq!(nx.round(3, Round::Down), d(0b110, 2).neg()); // -24
        assert_eq!(nx.round(3, Round::Up), d(0b101, 2).neg()); // -20
    }

    #[test]
    fn division_directed() {
        let a = d(1, 0);
        let b = d(3, 0);
        let lo = a.div(&b, 20, Round::Down);
        let hi = a.div(&b, 20, Round::Up);
        assert!(lo < hi);
        let third_lo = lo.mul(&d(3, 0));
        let third_hi = hi.mul(&d(3, 0));
        assert!(third_lo < d(1, 0) && d(1, 0) < third_hi);
        // negative numerator mirrors
        let nlo = a.neg().div(&b, 20, Round::Down);
        let nhi = a.neg().div(&b, 20, Round::Up);
        assert!(nlo < nhi && nhi.is_negative());
    }

    #[test]
    fn ordering_across_scales() {
        assert!(d(1, 100) > d(i64::MAX, 0));
        assert!(d(-1, 100) < d(1, -100));
        assert_eq!(d(4, 0).cmp_dyadic(&d(1, 2)), Ordering::Equal);
    }
}
