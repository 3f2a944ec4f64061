use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Exact Gaussian integer `re + im*i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt { re: re.into(), im: im.into() }
    }

    pub fn one() -> Self {
        GaussInt { re: BigInt::one(), im: BigInt::zero() }
    }

    pub fn conj(&self) -> Self {
        GaussInt { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn mul(&self, other: &Self) -> Self {
        GaussInt {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    /// Multiplication by i^k, exact unit rotation.
    pub fn mul_unit(&self, k: u8) -> Self {
        match k % 4 {
            0 => self.clone(),
            1 => GaussInt { re: -&self.im, im: self.re.clone() },
            2 => GaussInt { re: -&self.re, im: -&self.im },
            _ => GaussInt { re: self.im.clone(), im: -&self.re },
        }
    }
}

/// Exact n-th power by repeated squaring; `norm(g^n) = norm(g)^n`.
pub fn gauss_pow(base: &GaussInt, n: u64) -> GaussInt {
    let mut acc = GaussInt::one();
    let mut b = base.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b);
        }
        e >>= 1;
        if e > 0 {
            b = b.mul(&b);
        }
    }
    acc
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_small_cases() {
        let g = GaussInt::new(2, 1);
        assert_eq!(gauss_pow(&g, 3), GaussInt::new(2, 11));
        assert_eq!(gauss_pow(&g, 1), g);
        assert_eq!(gauss_pow(&g, 0), GaussInt::one());
    }

    #[test]
    fn norm_multiplicative_under_pow() {
        let g = GaussInt::new(6, 7);
        for n in 0..20u64 {
            let p = gauss_pow(&g, n);
            assert_eq!(p.norm(), g.norm().pow(n as u32));
        }
    }

    #[test]
    fn conj_commutes_with_pow() {
        let g = GaussInt::new(14, 9);
        for n in [1u64, 2, 5, 13] {
            assert_eq!(gauss_pow(&g, n).conj(), gauss_pow(&g.conj(), n));
        }
    }
}
