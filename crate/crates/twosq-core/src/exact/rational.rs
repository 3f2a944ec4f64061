use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Reduced rational with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalVal {
    numer: BigInt,
    denom: BigInt,
}

impl RationalVal {
    /// Construct and canonicalize; panics on zero denominator.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let mut n: BigInt = numer.into();
        let mut d: BigInt = denom.into();
        assert!(!d.is_zero(), "rational with zero denominator");
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if !g.is_one() && !g.is_zero() {
            n /= &g;
            d /= &g;
        }
        if n.is_zero() {
            d = BigInt::one();
        }
        RationalVal { numer: n, denom: d }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        RationalVal { numer: n.into(), denom: BigInt::one() }
    }

    pub fn numer(&self) -> &BigInt {
        &self.numer
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn is_positive(&self) -> bool {
        self.numer.is_positive()
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalVal::new(&self.numer * &o.numer, &self.denom * &o.denom)
    }

    pub fn add(&self, o: &Self) -> Self {
        RationalVal::new(&self.numer * &o.denom + &o.numer * &self.denom, &self.denom * &o.denom)
    }

    pub fn recip(&self) -> Self {
        RationalVal::new(self.denom.clone(), self.numer.clone())
    }
}

impl fmt::Display for RationalVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_one() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_sign() {
        let r = RationalVal::new(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        let z = RationalVal::new(0, -7);
        assert_eq!(z.denom(), &BigInt::one());
    }
}
