use super::cornacchia::Representation;
use crate::error::Error;
use crate::exact::gauss::gauss_pow;
use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

/// An exact witness `a^2 + b^2 = c^r` built from the r-th power of the
/// Gaussian integer attached to a representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionWitness {
    pub rep: Representation,
    pub r: u64,
    pub a: BigInt,
    pub b: BigInt,
}

/// Construct the witness for odd r: `eps^r = A + B i` has one even and one
/// odd component; a is the even one, b the odd one, both taken positive.
pub fn witness_from(rep: &Representation, r: u64) -> Result<SolutionWitness, Error> {
    if r == 0 || r % 2 == 0 {
        return Err(Error::InvalidInput(format!("witness requires odd r >= 1, got {r}")));
    }
    let p = gauss_pow(&rep.eps(), r);
    let (re, im) = (p.re.abs(), p.im.abs());
    let (a, b) = if (&re % 2u32) == BigInt::from(0) { (re, im) } else { (im, re) };
    let w = SolutionWitness { rep: rep.clone(), r, a, b };
    debug_assert!(w.verify());
    Ok(w)
}

impl SolutionWitness {
    /// Exact check a^2 + b^2 = c^r.
    pub fn verify(&self) -> bool {
        &self.a * &self.a + &self.b * &self.b == self.rep.c.pow(self.r as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn rep(c: i64, u: i64, v: i64) -> Representation {
        Representation::new(BigInt::from(c), BigInt::from(u), BigInt::from(v)).unwrap()
    }

    #[test]
    fn witness_examples() {
        let w = witness_from(&rep(5, 2, 1), 3).unwrap();
        assert_eq!((w.a, w.b), (BigInt::from(2), BigInt::from(11)));

        let w = witness_from(&rep(5, 2, 1), 1).unwrap();
        assert_eq!((w.a, w.b), (BigInt::from(2), BigInt::from(1)));

        // (6+7i)^3 = -666 + 413i, so a = 666, b = 413, 666^2+413^2 = 85^3
        let w = witness_from(&rep(85, 6, 7), 3).unwrap();
        assert_eq!((w.a.clone(), w.b.clone()), (BigInt::from(666), BigInt::from(413)));
        assert!(w.verify());
    }

    #[test]
    fn rejects_even_r() {
        assert!(witness_from(&rep(5, 2, 1), 2).is_err());
        assert!(witness_from(&rep(5, 2, 1), 0).is_err());
    }

    #[test]
    fn parity_and_coprimality() {
        for (c, u, v) in [(5i64, 2i64, 1i64), (85, 2, 9), (85, 6, 7), (13, 2, 3)] {
            for r in [3u64, 5, 7, 9, 11] {
                let w = witness_from(&rep(c, u, v), r).unwrap();
                assert!(w.verify());
                assert_eq!(&w.a % 2, BigInt::from(0));
                assert_eq!(&w.b % 2, BigInt::one());
                assert!(num_integer::Integer::gcd(&w.a, &w.b).is_one());
            }
        }
    }
}
