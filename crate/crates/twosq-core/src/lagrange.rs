//! Lagrange's identity `X^n + Y^n = sum c_{n,j} (-XY)^j (X+Y)^(n-2j)`:
//! closed-form coefficients, the defining recurrence, the exact symbolic
//! expansion check, and the p-adic coefficient valuation bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `c_{n,j} = (n-j-1)! n / ((n-2j)! j!)`, computed by incremental products
/// (no repeated factorials); 0 outside `0 <= j <= n/2`.
pub fn lagrange_coeff(n: u64, j: i64) -> BigInt {
    if n == 0 || j < 0 || 2 * j as u64 > n {
        return BigInt::zero();
    }
    let j = j as u64;
    if j == 0 {
        return BigInt::one(); // (n-1)! n / n! = 1
    }
    // (n-j-1)! / (n-2j)! = product of (n-2j+1 ..= n-j-1), a run of j-1 terms.
    let mut num = BigInt::from(n);
    for k in (n - 2 * j + 1)..=(n.saturating_sub(j + 1)) {
        num *= k;
    }
    let mut den = BigInt::one();
    for k in 1..=j {
        den *= k;
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero(), "coefficient must be integral");
    q
}

/// Coefficient table for rows 1..=n built purely from the recurrence
/// `c_{n+1,j} = c_{n,j} + c_{n-1,j-1}`, for cross-checking the closed form.
pub fn coeff_table_by_recurrence(n_max: u64) -> Vec<Vec<BigInt>> {
    let mut table: Vec<Vec<BigInt>> = Vec::with_capacity(n_max as usize + 1);
    table.push(vec![]); // n = 0 unused
    table.push(vec![BigInt::one()]); // c_{1,0} = 1
    if n_max >= 2 {
        table.push(vec![BigInt::one(), BigInt::from(2)]); // c_{2,0}, c_{2,1}
    }
    for n in 2..n_max {
        let width = (n as usize + 1) / 2 + 1;
        let mut row = vec![BigInt::zero(); width];
        for (j, item) in row.iter_mut().enumerate() {
            let a = table[n as usize].get(j).cloned().unwrap_or_else(BigInt::zero);
            let b = if j >= 1 {
                table[n as usize - 1].get(j - 1).cloned().unwrap_or_else(BigInt::zero)
            } else {
                BigInt::zero()
            };
            *item = a + b;
        }
        table.push(row);
    }
    table
}

/// Exact bivariate check that `sum_j c_{n,j} (-XY)^j (X+Y)^(n-2j) = X^n + Y^n`.
///
/// The coefficient of X^p Y^(n-p) in the expansion is
/// `sum_j c_{n,j} (-1)^j C(n-2j, p-j)`; the identity holds iff that is 1 for
/// p in {0, n} and 0 otherwise.
pub fn lagrange_expand(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    // binomials C(m, i) for m <= n
    let n_us = n as usize;
    let mut binom: Vec<Vec<BigInt>> = Vec::with_capacity(n_us + 1);
    binom.push(vec![BigInt::one()]);
    for m in 1..=n_us {
        let prev = &binom[m - 1];
        let mut row = vec![BigInt::one(); m + 1];
        for i in 1..m {
            row[i] = &prev[i - 1] + &prev[i];
        }
        binom.push(row);
    }
    for p in 0..=n_us {
        let mut acc = BigInt::zero();
        for j in 0..=(n_us / 2) {
            let c = lagrange_coeff(n, j as i64);
            if c.is_zero() {
                continue;
            }
            if p < j || p - j > n_us - 2 * j {
                continue;
            }
            let term = &c * &binom[n_us - 2 * j][p - j];
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let expected = if p == 0 || p == n_us { BigInt::one() } else { BigInt::zero() };
        if acc != expected {
            return false;
        }
    }
    true
}

/// p-adic valuation of a positive integer.
fn vp(mut x: BigInt, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let mut v = 0;
    if x.is_zero() {
        return 0;
    }
    x = x.abs();
    while (&x % &pb).is_zero() {
        x /= &pb;
        v += 1;
    }
    v
}

/// Checks `v_p(c_{n,j}) >= v_p(n) - (n-2j)/(p-1)` for an odd prime p.
///
/// The inequality is a theorem; this evaluates both sides exactly and
/// returns whether it holds (always true, used as an exhaustive test).
pub fn coeff_valuation_bound(n: u64, j: u64, p: u64) -> bool {
    debug_assert!(p >= 3 && p % 2 == 1);
    if 2 * j > n {
        return true;
    }
    let lhs = vp(lagrange_coeff(n, j as i64), p) as i128;
    // lhs >= v_p(n) - (n-2j)/(p-1)  <=>  (p-1)*lhs >= (p-1)*v_p(n) - (n-2j)
    let rhs = (p as i128 - 1) * vp(BigInt::from(n), p) as i128 - (n as i128 - 2 * j as i128);
    (p as i128 - 1) * lhs >= rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_anchors() {
        assert_eq!(lagrange_coeff(1, 0), BigInt::one());
        assert_eq!(lagrange_coeff(2, 0), BigInt::one());
        assert_eq!(lagrange_coeff(2, 1), BigInt::from(2));
        assert_eq!(lagrange_coeff(5, 2), BigInt::from(5));
        assert_eq!(lagrange_coeff(7, -1), BigInt::zero());
        assert_eq!(lagrange_coeff(7, 4), BigInt::zero());
    }

    #[test]
    fn closed_form_equals_recurrence_to_60() {
        let table = coeff_table_by_recurrence(60);
        for n in 1..=60u64 {
            for j in 0..=(n / 2) {
                assert_eq!(
                    lagrange_coeff(n, j as i64),
                    table[n as usize][j as usize],
                    "n={n} j={j}"
                );
            }
        }
    }

    #[test]
    fn expansion_small() {
        assert!(lagrange_expand(1));
        assert!(lagrange_expand(2));
        assert!(lagrange_expand(5));
        assert!(lagrange_expand(12));
    }

    #[test]
    fn valuation_examples() {
        // v_3(c_{9,1}) = v_3(9) = 2
        assert_eq!(vp(lagrange_coeff(9, 1), 3), 2);
        assert!(coeff_valuation_bound(9, 1, 3));
        // c_{n,0} = 1
        assert_eq!(lagrange_coeff(100, 0), BigInt::one());
        assert!(coeff_valuation_bound(100, 0, 3));
        // boundary j = (n-1)/2
        assert!(coeff_valuation_bound(15, 7, 3));
    }
}
