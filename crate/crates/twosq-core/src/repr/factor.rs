use super::primality::{is_prime, PrimalityEvidence};
use crate::error::Error;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// One prime power in a factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub prime: BigInt,
    pub exponent: u32,
    pub evidence: PrimalityEvidence,
}

/// Complete certified factorization with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub n: BigInt,
    pub factors: Vec<PrimePower>,
}

impl Factorization {
    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    /// Re-multiply and compare; used by certificate replay.
    pub fn verify(&self) -> bool {
        let mut acc = BigInt::one();
        let mut last: Option<&BigInt> = None;
        for pp in &self.factors {
            if let Some(l) = last {
                if l >= &pp.prime {
                    return false;
                }
            }
            last = Some(&pp.prime);
            acc *= pp.prime.pow(pp.exponent);
        }
        acc == self.n
    }

    pub fn exponent_of(&self, p: &BigInt) -> u32 {
        self.factors.iter().find(|f| &f.prime == p).map_or(0, |f| f.exponent)
    }
}

/// Factoring effort knobs. `rho_rounds` bounds Brent-rho iterations per
/// cofactor; exceeding it surfaces as `FactorLimitExceeded`, which sweeps
/// must record and skip rather than ignore.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FactorEffort {
    pub trial_limit: u64,
    pub rho_rounds: u64,
}

impl Default for FactorEffort {
    fn default() -> Self {
        FactorEffort { trial_limit: 100_000, rho_rounds: 2_000_000 }
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Brent's cycle variant of Pollard rho on u64; returns a nontrivial factor.
fn rho_u64(n: u64, rounds: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    let mut c = 1u64;
    loop {
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut count = 0u64;
        let f = |v: u64| (mulmod(v, v, n) + c) % n;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            let diff = if x > y { x - y } else { y - x };
            d = if diff == 0 { n } else { gcd_u64(diff, n) };
            count += 1;
            if count > rounds {
                return None;
            }
        }
        if d != n {
            return Some(d);
        }
        c += 1;
        if c > 20 {
            return None;
        }
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Pollard rho over BigInt for cofactors beyond u64, bounded by `rounds`.
fn rho_big(n: &BigInt, rounds: u64) -> Option<BigInt> {
    let one = BigInt::one();
    for c in 1u32..=8 {
        let mut x = BigInt::from(2);
        let mut y = BigInt::from(2);
        let mut d = BigInt::one();
        let mut count = 0u64;
        while d.is_one() {
            x = (&x * &x + c) % n;
            y = (&y * &y + c) % n;
            y = (&y * &y + c) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            d = if diff.is_zero() { n.clone() } else { diff.gcd(n) };
            count += 1;
            if count > rounds {
                return None;
            }
        }
        if &d != n && d > one {
            return Some(d);
        }
    }
    None
}

/// Primes below 2^16, sieved once; enough to trial-divide any u64 candidate
/// the sweep sees before handing the cofactor to rho.
fn small_primes() -> &'static [u32] {
    use std::sync::OnceLock;
    static P: OnceLock<Vec<u32>> = OnceLock::new();
    P.get_or_init(|| {
        let n = 1usize << 16;
        let mut sieve = vec![true; n];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2usize;
        while i * i < n {
            if sieve[i] {
                let mut j = i * i;
                while j < n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (2..n).filter(|&i| sieve[i]).map(|i| i as u32).collect()
    })
}

fn factor_u64_fast(n: u64, effort: FactorEffort) -> Result<Vec<(u64, u32)>, Error> {
    let mut m = n;
    let mut out: Vec<(u64, u32)> = Vec::new();
    for &p in small_primes() {
        let p = p as u64;
        if p > effort.trial_limit || p * p > m {
            break;
        }
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    let mut pending = vec![m];
    while let Some(m) = pending.pop() {
        if m == 1 {
            continue;
        }
        if super::primality::is_prime_u64(m) {
            out.push((m, 1));
            continue;
        }
        match rho_u64(m, effort.rho_rounds) {
            Some(d) => {
                pending.push(d);
                pending.push(m / d);
            }
            None => {
                return Err(Error::FactorLimitExceeded { n: m.to_string(), rounds: effort.rho_rounds })
            }
        }
    }
    out.sort_unstable();
    let mut merged: Vec<(u64, u32)> = Vec::new();
    for (p, e) in out {
        if let Some(last) = merged.last_mut() {
            if last.0 == p {
                last.1 += e;
                continue;
            }
        }
        merged.push((p, e));
    }
    Ok(merged)
}

/// Complete factorization of `n >= 2` within the given effort.
pub fn factor_with_effort(n: &BigInt, effort: FactorEffort) -> Result<Factorization, Error> {
    if n < &BigInt::from(2) {
        return Err(Error::InvalidInput(format!("factor requires n >= 2, got {n}")));
    }
    if let Some(u) = n.to_u64() {
        let factors = factor_u64_fast(u, effort)?
            .into_iter()
            .map(|(p, e)| PrimePower {
                prime: BigInt::from(p),
                exponent: e,
                evidence: PrimalityEvidence::Deterministic,
            })
            .collect();
        return Ok(Factorization { n: n.clone(), factors });
    }
    let mut pending = vec![n.clone()];
    let mut primes: Vec<(BigInt, u32, PrimalityEvidence)> = Vec::new();
    let mut rest = BigInt::one();

    // Strip small primes first so rho only sees hard cofactors.
    {
        let mut m = pending.pop().unwrap();
        let mut p = 2u64;
        while p <= effort.trial_limit && BigInt::from(p) * BigInt::from(p) <= m {
            let bp = BigInt::from(p);
            let mut e = 0u32;
            while (&m % &bp).is_zero() {
                m /= &bp;
                e += 1;
            }
            if e > 0 {
                primes.push((bp, e, PrimalityEvidence::Deterministic));
            }
            p = if p == 2 { 3 } else { p + 2 };
        }
        if !m.is_one() {
            pending.push(m);
        }
    }

    while let Some(m) = pending.pop() {
        if m.is_one() {
            continue;
        }
        let (prime, ev) = is_prime(&m);
        if prime {
            primes.push((m, 1, ev));
            continue;
        }
        let split = if let Some(u) = m.to_u64() {
            rho_u64(u, effort.rho_rounds).map(BigInt::from)
        } else {
            rho_big(&m, effort.rho_rounds)
        };
        match split {
            Some(d) => {
                pending.push(&m / &d);
                pending.push(d);
            }
            None => {
                rest = m;
                break;
            }
        }
    }

    if !rest.is_one() {
        return Err(Error::FactorLimitExceeded { n: rest.to_string(), rounds: effort.rho_rounds });
    }

    // Merge equal primes and sort.
    primes.sort_by(|a, b| a.0.cmp(&b.0));
    let mut factors: Vec<PrimePower> = Vec::new();
    for (p, e, ev) in primes {
        if let Some(last) = factors.last_mut() {
            if last.prime == p {
                last.exponent += e;
                continue;
            }
        }
        factors.push(PrimePower { prime: p, exponent: e, evidence: ev });
    }
    let f = Factorization { n: n.clone(), factors };
    debug_assert!(f.verify());
    Ok(f)
}

/// Factor with default effort.
pub fn factor(n: &BigInt) -> Result<Factorization, Error> {
    factor_with_effort(n, FactorEffort::default())
}

/// Fast path for sweep ranges: factor a u64 completely.
pub fn factor_u64(n: u64) -> Result<Factorization, Error> {
    factor(&BigInt::from(n))
}

/// p-adic valuation of n.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut m = n.clone();
    let mut v = 0u32;
    if m.is_zero() {
        return 0;
    }
    while (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fz(n: u64) -> Vec<(u64, u32)> {
        factor(&BigInt::from(n))
            .unwrap()
            .factors
            .iter()
            .map(|f| (f.prime.to_u64().unwrap(), f.exponent))
            .collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(fz(85), vec![(5, 1), (17, 1)]);
        assert_eq!(fz(64), vec![(2, 6)]);
        assert_eq!(fz(2), vec![(2, 1)]);
    }

    #[test]
    fn sweep_domain_anchor() {
        // 4e10 + 5 = 3^2 * 5 * 7 * 23 * 29 * 61 * 3121
        assert_eq!(
            fz(40_000_000_005),
            vec![(3, 2), (5, 1), (7, 1), (23, 1), (29, 1), (61, 1), (3121, 1)]
        );
    }

    #[test]
    fn semiprime_needs_rho() {
        let p = 1_000_003u64;
        let q = 999_983u64;
        assert_eq!(fz(p * q), vec![(q, 1), (p, 1)]);
    }

    #[test]
    fn effort_limit_is_an_error() {
        // A 60-digit semiprime with tiny effort must fail loudly, not hang.
        let p = BigInt::parse_bytes(b"354319479161975386527569472437", 10).unwrap();
        let n = &p * (&p + 42u32);
        let err = factor_with_effort(&n, FactorEffort { trial_limit: 100, rho_rounds: 50 });
        assert!(matches!(err, Err(Error::FactorLimitExceeded { .. })));
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&BigInt::from(72), &BigInt::from(2)), 3);
        assert_eq!(valuation(&BigInt::from(72), &BigInt::from(3)), 2);
        assert_eq!(valuation(&BigInt::from(72), &BigInt::from(5)), 0);
    }
}
