use super::factor::Factorization;
use crate::error::Error;
use crate::exact::gauss::{gauss_pow, GaussInt};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A primitive two-square representation `c = u^2 + v^2` with the
/// normalization u even, v odd, both positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Representation {
    pub c: BigInt,
    pub u: BigInt,
    pub v: BigInt,
}

impl Representation {
    pub fn new(c: BigInt, u: BigInt, v: BigInt) -> Result<Self, Error> {
        let r = Representation { c, u, v };
        if !r.check() {
            return Err(Error::InvalidInput(format!(
                "not a normalized primitive representation: {} = {}^2 + {}^2",
                r.c, r.u, r.v
            )));
        }
        Ok(r)
    }

    fn check(&self) -> bool {
        self.u.is_positive()
            && self.v.is_positive()
            && (&self.u % 2u32).is_zero()
            && !(&self.v % 2u32).is_zero()
            && &self.u * &self.u + &self.v * &self.v == self.c
            && self.u.gcd(&self.v).is_one()
    }

    /// The Gaussian integer `u + v i` attached to the representation.
    pub fn eps(&self) -> GaussInt {
        GaussInt { re: self.u.clone(), im: self.v.clone() }
    }
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, b, m);
        }
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Square root of -1 modulo a prime p = 1 (mod 4), via Tonelli-Shanks
/// specialized to -1: for a quadratic non-residue n, n^((p-1)/4) works.
fn sqrt_minus_one_u64(p: u64) -> u64 {
    debug_assert!(p % 4 == 1);
    let mut n = 2u64;
    loop {
        // Euler criterion: non-residue iff n^((p-1)/2) == p-1.
        if powmod_u64(n, (p - 1) / 2, p) == p - 1 {
            return powmod_u64(n, (p - 1) / 4, p);
        }
        n += 1;
    }
}

fn sqrt_minus_one_big(p: &BigInt) -> BigInt {
    let pu = p.to_biguint().expect("positive prime");
    let exp2 = (&pu - 1u32) >> 1;
    let exp4 = (&pu - 1u32) >> 2;
    let pm1 = &pu - 1u32;
    let mut n = num_bigint::BigUint::from(2u32);
    loop {
        if n.modpow(&exp2, &pu) == pm1 {
            return BigInt::from(n.modpow(&exp4, &pu));
        }
        n += 1u32;
    }
}

/// Cornacchia's algorithm for a prime p = 1 (mod 4): returns (x, y) with
/// x^2 + y^2 = p, via the Euclidean descent from a square root of -1.
pub fn cornacchia_prime(p: &BigInt) -> (BigInt, BigInt) {
    let x0 = if let Some(pu) = p.to_u64() {
        BigInt::from(sqrt_minus_one_u64(pu))
    } else {
        sqrt_minus_one_big(p)
    };
    // Descend remainders of gcd(p, x0) until below sqrt(p).
    let sqrt_p = p.sqrt();
    let mut a = p.clone();
    let mut b = x0;
    while b > sqrt_p {
        let r = &a % &b;
        a = b;
        b = r;
    }
    let y2 = p - &b * &b;
    let y = y2.sqrt();
    debug_assert_eq!(&b * &b + &y * &y, *p);
    (b, y)
}

/// All primitive representations of c with u even, v odd, both positive.
///
/// Empty when c is even, divisible by a prime 3 (mod 4), or has a squared
/// obstruction; otherwise there are exactly 2^(t-1) of them for t distinct
/// prime factors, generated by conjugation choices over the Gaussian prime
/// factorization.
pub fn cornacchia_all(c: &BigInt, fac: &Factorization) -> Result<Vec<Representation>, Error> {
    if fac.n != *c {
        return Err(Error::InvalidInput("factorization does not match c".into()));
    }
    if c < &BigInt::from(2) {
        return Ok(vec![]);
    }
    // A primitive u^2 + v^2 with u even, v odd is odd; any prime divisor
    // must split in Z[i].
    for f in &fac.factors {
        if (&f.prime % 4u32) != BigInt::from(1) {
            return Ok(vec![]);
        }
    }
    // Gaussian prime power for each rational prime.
    let mut prime_powers: Vec<GaussInt> = Vec::new();
    for f in &fac.factors {
        let (x, y) = cornacchia_prime(&f.prime);
        let pi = GaussInt { re: x, im: y };
        prime_powers.push(gauss_pow(&pi, f.exponent as u64));
    }
    // Enumerate conjugation choices; fixing the first factor halves the
    // unit/conjugation symmetry (2^(t-1) distinct representations).
    let t = prime_powers.len();
    let mut out = Vec::new();
    for mask in 0..(1u64 << t.saturating_sub(1)) {
        let mut z = prime_powers[0].clone();
        for (i, pp) in prime_powers.iter().enumerate().skip(1) {
            let factor = if (mask >> (i - 1)) & 1 == 1 { pp.conj() } else { pp.clone() };
            z = z.mul(&factor);
        }
        let (re, im) = (z.re.abs(), z.im.abs());
        let (u, v) = if (&re % 2u32).is_zero() { (re, im) } else { (im, re) };
        if u.is_zero() || v.is_zero() {
            continue; // c a perfect square times unit; not primitive here
        }
        if !u.gcd(&v).is_one() {
            continue; // repeated-prime mask yielding an imprimitive pair
        }
        out.push(Representation { c: c.clone(), u, v });
    }
    out.sort();
    out.dedup();
    for r in &out {
        debug_assert!(r.check());
    }
    Ok(out)
}

/// The paper-setting filter: c = 5 (mod 8), not a prime power, c >= 85.
pub fn residue_class_filter(c: &BigInt, fac: &Factorization) -> bool {
    c >= &BigInt::from(85) && (c % 8u32) == BigInt::from(5) && !fac.is_prime_power()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr::factor::factor;

    /// Brute force over u < sqrt(c): the oracle for enumeration tests.
    pub fn brute_force_reps(c: u64) -> Vec<(u64, u64)> {
        let mut out = vec![];
        let mut u = 2u64;
        while u * u < c {
            let v2 = c - u * u;
            let v = (v2 as f64).sqrt() as u64;
            for vv in [v.saturating_sub(1), v, v + 1] {
                if vv * vv == v2 && vv % 2 == 1 && gcd(u, vv) == 1 {
                    out.push((u, vv));
                }
            }
            u += 2;
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    fn reps(c: u64) -> Vec<(u64, u64)> {
        let cb = BigInt::from(c);
        let f = factor(&cb).unwrap();
        cornacchia_all(&cb, &f)
            .unwrap()
            .into_iter()
            .map(|r| (r.u.to_u64().unwrap(), r.v.to_u64().unwrap()))
            .collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(reps(5), vec![(2, 1)]);
        assert_eq!(reps(85), vec![(2, 9), (6, 7)]);
        assert_eq!(reps(21), vec![]); // 3 | 21
        assert_eq!(reps(25), vec![(4, 3)]); // 25 = 16 + 9
    }

    #[test]
    fn matches_brute_force_sample() {
        for c in (85u64..3000).step_by(4) {
            // c = 1 mod 4
            assert_eq!(reps(c + 0), brute_force_reps(c), "c = {c}");
        }
    }

    #[test]
    fn count_law_two_primes() {
        // 5 * 13 * 17 = 1105, t = 3 distinct primes, all 1 mod 4 -> 4 reps
        assert_eq!(reps(1105).len(), 4);
        // 5^2 * 13 = 325, t = 2 -> 2 reps
        assert_eq!(reps(325).len(), 2);
    }

    #[test]
    fn filter_cases() {
        let f85 = factor(&BigInt::from(85)).unwrap();
        assert!(residue_class_filter(&BigInt::from(85), &f85));
        let f5 = factor(&BigInt::from(5)).unwrap();
        assert!(!residue_class_filter(&BigInt::from(5), &f5));
        let f125 = factor(&BigInt::from(125)).unwrap();
        assert!(!residue_class_filter(&BigInt::from(125), &f125));
    }
}
