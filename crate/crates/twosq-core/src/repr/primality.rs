use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// Strength of the primality evidence attached to a factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum PrimalityEvidence {
    /// Deterministic Miller-Rabin base set (covers all of u64, hence the
    /// whole 4e10 sweep domain).
    Deterministic,
    /// Probabilistic Miller-Rabin; certificates flag such factors.
    Probabilistic,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

fn sprp_u64(n: u64, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    let mut x = powmod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mulmod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic Miller-Rabin for u64 (first twelve prime bases).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37].iter().all(|&a| sprp_u64(n, a))
}

/// Primality for BigInt: deterministic when the value fits u64,
/// 40-round Miller-Rabin otherwise (flagged as probabilistic).
pub fn is_prime(n: &BigInt) -> (bool, PrimalityEvidence) {
    if let Some(u) = n.to_u64() {
        return (is_prime_u64(u), PrimalityEvidence::Deterministic);
    }
    if n < &BigInt::from(2) {
        return (false, PrimalityEvidence::Deterministic);
    }
    let nu = n.to_biguint().expect("positive");
    if (&nu % 2u32).is_zero() {
        return (false, PrimalityEvidence::Deterministic);
    }
    let n1 = &nu - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let one = num_bigint::BigUint::one();
    // Deterministic base schedule seeded from small primes; evidence is
    // still reported as probabilistic for values beyond u64.
    for a0 in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73,
        79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173]
    {
        let a = num_bigint::BigUint::from(a0) % &nu;
        if a <= one {
            continue;
        }
        let mut x = a.modpow(&d, &nu);
        if x == one || x == n1 {
            continue;
        }
        let mut witness = true;
        for _ in 1..s {
            x = (&x * &x) % &nu;
            if x == n1 {
                witness = false;
                break;
            }
        }
        if witness {
            return (false, PrimalityEvidence::Probabilistic);
        }
    }
    (true, PrimalityEvidence::Probabilistic)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes_and_composites() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(17));
        assert!(is_prime_u64(257));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(!is_prime_u64(3215031751)); // strong pseudoprime to bases 2,3,5,7
        assert!(is_prime_u64(40_000_000_003));
        assert!(!is_prime_u64(40_000_000_005));
    }

    #[test]
    fn bigint_path_agrees_with_u64() {
        for n in [5u64, 85, 1_000_003, 4_000_000_007, 99_999_999_977] {
            assert_eq!(is_prime(&BigInt::from(n)).0, is_prime_u64(n));
        }
    }

    #[test]
    fn big_probabilistic_prime() {
        // 2^89 - 1 is a Mersenne prime
        let m89 = (BigInt::from(1) << 89) - 1;
        let (p, ev) = is_prime(&m89);
        assert!(p);
        assert_eq!(ev, PrimalityEvidence::Probabilistic);
        let (q, _) = is_prime(&(m89 + 2));
        assert!(!q);
    }
}
