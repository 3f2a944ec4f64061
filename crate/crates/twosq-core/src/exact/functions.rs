//! Certified elementary functions on intervals.
//!
//! Every routine returns an enclosure of the exact value. Series are summed
//! in interval arithmetic with an explicit tail bound added at the end, so
//! widening only comes from outward rounding and the tail term.

use super::dyadic::{Dyadic, Round};
use super::interval::{IntervalScalar, GUARD};
use crate::error::Error;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

fn cache() -> &'static Mutex<HashMap<(u8, u32), IntervalScalar>> {
    static C: OnceLock<Mutex<HashMap<(u8, u32), IntervalScalar>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// atan(1/k) for an integer k >= 2, by the alternating Gregory series.
fn atan_inv(k: &BigInt, prec: u32) -> IntervalScalar {
    debug_assert!(*k >= BigInt::from(2));
    let w = prec + GUARD;
    let x = IntervalScalar::from_ratio(&BigInt::from(1), k, w);
    let x2 = x.mul(&x);
    let mut term = x.clone(); // x^(2j+1), starting j=0
    let mut sum = IntervalScalar::zero(w);
    let mut j = 0u32;
    let eps = Dyadic::new(BigInt::from(1), -((w + 2) as i64));
    loop {
        let contrib = term.div(&IntervalScalar::from_i64((2 * j + 1) as i64, w)).expect("odd > 0");
        sum = if j % 2 == 0 { sum.add(&contrib) } else { sum.sub(&contrib) };
        term = term.mul(&x2);
        j += 1;
        let next = term.hi().abs();
        if next < eps {
            break;
        }
    }
    // Alternating series with decreasing terms: remainder bounded by the
    // magnitude of the first omitted term.
    let tail = term.hi().abs();
    let tail_iv = IntervalScalar::new(tail.neg(), tail, w);
    sum.add(&tail_iv)
}

/// Certified pi by Machin's formula: pi = 16 atan(1/5) - 4 atan(1/239).
pub fn pi(prec: u32) -> IntervalScalar {
    if let Some(v) = cache().lock().unwrap().get(&(0, prec)) {
        return v.clone();
    }
    let a = atan_inv(&BigInt::from(5), prec + GUARD);
    let b = atan_inv(&BigInt::from(239), prec + GUARD);
    let v = a.mul_i64(16).sub(&b.mul_i64(4));
    cache().lock().unwrap().insert((0, prec), v.clone());
    v
}

/// Certified ln 2 = 2 atanh(1/3).
pub fn ln2(prec: u32) -> IntervalScalar {
    if let Some(v) = cache().lock().unwrap().get(&(1, prec)) {
        return v.clone();
    }
    let w = prec + GUARD;
    let t = IntervalScalar::from_ratio(&BigInt::from(1), &BigInt::from(3), w);
    let v = atanh_small(&t, w).mul_i64(2);
    cache().lock().unwrap().insert((1, prec), v.clone());
    v
}

/// atanh for |t| <= 1/2, by the odd series with a geometric tail bound.
fn atanh_small(t: &IntervalScalar, w: u32) -> IntervalScalar {
    let t2 = t.mul(t);
    let mut term = t.clone();
    let mut sum = IntervalScalar::zero(w);
    let mut j = 0u32;
    let eps = Dyadic::new(BigInt::from(1), -((w + 2) as i64));
    loop {
        let contrib = term.div(&IntervalScalar::from_i64((2 * j + 1) as i64, w)).expect("odd > 0");
        sum = sum.add(&contrib);
        term = term.mul(&t2);
        j += 1;
        if term.hi().abs() < eps && j > 1 {
            break;
        }
    }
    // Tail: sum_{i>=j} |t|^(2i+1)/(2i+1) <= |t|^(2j+1) / (1 - t^2).
    let tmax = term.abs();
    let denom = IntervalScalar::from_i64(1, w).sub(&t2);
    let tail = tmax.div(&denom).expect("1 - t^2 > 0 for |t| <= 1/2");
    let tail_hi = tail.hi().abs();
    sum.add(&IntervalScalar::new(tail_hi.neg(), tail_hi, w))
}

/// Natural log of an interval with strictly positive lower bound.
pub fn ln(x: &IntervalScalar, prec: u32) -> Result<IntervalScalar, Error> {
    if !x.lo().is_positive() {
        return Err(Error::InvalidInput("ln of non-positive interval".into()));
    }
    let w = prec + GUARD;
    // Normalize by 2^e so the scaled interval sits in ~[1/2, 2).
    let e = x.hi().bits() as i64 + x.hi().exp() - 1;
    let z = x.shl(-e);
    // t = (z-1)/(z+1); for z in [1/2, 2), |t| <= 1/3.
    let one = IntervalScalar::from_i64(1, w);
    let t = z.sub(&one).div(&z.add(&one))?;
    if t.hi().abs() > Dyadic::new(BigInt::from(3), -3) {
        // Interval too wide for the series domain; widen conservatively by
        // recursing on the endpoints.
        let lo_iv = IntervalScalar::point(x.lo().clone(), w);
        let hi_iv = IntervalScalar::point(x.hi().clone(), w);
        let a = ln(&lo_iv, prec)?;
        let b = ln(&hi_iv, prec)?;
        return Ok(IntervalScalar::new(a.lo().clone(), b.hi().clone(), prec));
    }
    let l = atanh_small(&t, w).mul_i64(2);
    Ok(l.add(&ln2(prec).mul_i64(e)))
}

/// ln(n) for a positive big integer.
pub fn ln_big(n: &BigInt, prec: u32) -> Result<IntervalScalar, Error> {
    if !n.is_positive() {
        return Err(Error::InvalidInput("ln of non-positive integer".into()));
    }
    ln(&IntervalScalar::from_bigint(n, prec), prec)
}

/// ln(p/q) for positive big integers.
pub fn ln_ratio(p: &BigInt, q: &BigInt, prec: u32) -> Result<IntervalScalar, Error> {
    Ok(ln_big(p, prec)?.sub(&ln_big(q, prec)?))
}

/// exp on a moderate-magnitude interval (|x| up to a few thousand).
pub fn exp(x: &IntervalScalar, prec: u32) -> Result<IntervalScalar, Error> {
    let w = prec + GUARD;
    // Argument reduction: x = k ln2 + r with |r| <= ln2/2 + width.
    let l2 = ln2(prec);
    let k_d = x.midpoint().div(l2.lo(), 32, Round::Down);
    let k = k_d.floor_bigint();
    let k_i: i64 = k.clone().try_into().map_err(|_| {
        Error::InvalidInput("exp argument too large".into())
    })?;
    let r = x.sub(&l2.mul_i64(k_i));
    if r.hi().abs() > Dyadic::from_i64(2) {
        // Wide interval: recurse on endpoints.
        let a = exp(&IntervalScalar::point(r.lo().clone(), w), prec)?;
        let b = exp(&IntervalScalar::point(r.hi().clone(), w), prec)?;
        return Ok(IntervalScalar::new(a.lo().clone(), b.hi().clone(), prec).shl(k_i));
    }
    // Taylor with factorial tail: |R_N| <= |term_N| * 2 once N >= 2|r|.
    let mut term = IntervalScalar::from_i64(1, w);
    let mut sum = IntervalScalar::zero(w);
    let eps = Dyadic::new(BigInt::from(1), -((w + 2) as i64));
    let mut n = 1i64;
    loop {
        sum = sum.add(&term);
        term = term.mul(&r).div(&IntervalScalar::from_i64(n, w))?;
        if term.hi().abs() < eps && n > 4 {
            break;
        }
        n += 1;
        if n > 10_000 {
            return Err(Error::PrecisionExhausted { bits: prec, context: "exp series".into() });
        }
    }
    let tail_hi = term.hi().abs().shl(1);
    let sum = sum.add(&IntervalScalar::new(tail_hi.neg(), tail_hi, w));
    Ok(sum.shl(k_i))
}

/// sin and cos on a reduced argument |r| <= 1, by alternating Taylor series.
fn sincos_reduced(r: &IntervalScalar, w: u32) -> (IntervalScalar, IntervalScalar) {
    let r2 = r.mul(r);
    let eps = Dyadic::new(BigInt::from(1), -((w + 2) as i64));
    // sin
    let mut term = r.clone();
    let mut sin = IntervalScalar::zero(w);
    let mut j = 0i64;
    loop {
        sin = if j % 2 == 0 { sin.add(&term) } else { sin.sub(&term) };
        term = term
            .mul(&r2)
            .div(&IntervalScalar::from_i64((2 * j + 2) * (2 * j + 3), w))
            .expect("nonzero");
        j += 1;
        if term.hi().abs() < eps {
            break;
        }
    }
    let t = term.hi().abs();
    let sin = sin.add(&IntervalScalar::new(t.neg(), t, w));
    // cos
    let mut term = IntervalScalar::from_i64(1, w);
    let mut cos = IntervalScalar::zero(w);
    let mut j = 0i64;
    loop {
        cos = if j % 2 == 0 { cos.add(&term) } else { cos.sub(&term) };
        term = term
            .mul(&r2)
            .div(&IntervalScalar::from_i64((2 * j + 1) * (2 * j + 2), w))
            .expect("nonzero");
        j += 1;
        if term.hi().abs() < eps {
            break;
        }
    }
    let t = term.hi().abs();
    let cos = cos.add(&IntervalScalar::new(t.neg(), t, w));
    (sin, cos)
}

/// Certified sine. Handles arguments up to ~2^40 by quadrant reduction.
pub fn sin(x: &IntervalScalar, prec: u32) -> Result<IntervalScalar, Error> {
    let arg_bits = (x.hi().abs().bits() as i64 + x.hi().exp()).max(1) as u32;
    let w = prec + GUARD + 2 * arg_bits;
    let half_pi = pi(w).shl(-1);
    let q = x
        .div(&half_pi)?
        .add(&IntervalScalar::from_ratio(&BigInt::from(1), &BigInt::from(2), w))
        .lo()
        .floor_bigint();
    let q_i: i64 = q.clone().try_into().map_err(|_| Error::InvalidInput("sin argument too large".into()))?;
    let r = x.sub(&half_pi.mul_i64(q_i));
    if r.hi().abs() > Dyadic::from_i64(1) {
        // Reduction left a wide interval: the result is safely within [-1, 1].
        return Ok(IntervalScalar::new(Dyadic::from_i64(-1), Dyadic::from_i64(1), prec));
    }
    let (s, c) = sincos_reduced(&r, w);
    Ok(match q_i.rem_euclid(4) {
        0 => s,
        1 => c,
        2 => s.neg(),
        _ => c.neg(),
    })
}

/// Certified cosine via the sine reduction.
pub fn cos(x: &IntervalScalar, prec: u32) -> Result<IntervalScalar, Error> {
    let w = prec + GUARD;
    let half_pi = pi(w).shl(-1);
    sin(&x.add(&half_pi), prec)
}

/// atan(v/u) for positive big integers, exact angle-splitting reduction.
///
/// Uses arg(u + vi) = atan(1/k) - atan(rem/(uk+v)) with k = floor(u/v),
/// which peels continued-fraction-sized pieces until the remainder vanishes.
pub fn atan_ratio(v: &BigInt, u: &BigInt, prec: u32) -> Result<IntervalScalar, Error> {
    if !u.is_positive() || !v.is_positive() {
        return Err(Error::InvalidInput("atan_ratio requires u > 0, v > 0".into()));
    }
    let w = prec + GUARD;
    if v > u {
        // atan(v/u) = pi/2 - atan(u/v)
        return Ok(pi(w).shl(-1).sub(&atan_ratio(u, v, prec)?));
    }
    let mut num = v.clone();
    let mut den = u.clone();
    let mut sum = IntervalScalar::zero(w);
    let mut sign = 1i64;
    loop {
        if num.is_zero() {
            break;
        }
        let (k, r) = num_integer::Integer::div_rem(&den, &num);
        let piece = if k == BigInt::from(1) && r.is_zero() && num == den {
            pi(w).shl(-2) // atan(1) = pi/4
        } else if k == BigInt::from(1) {
            // atan(1/1) = pi/4 also covers k == 1 with remainder
            pi(w).shl(-2)
        } else {
            atan_inv(&k, w)
        };
        sum = sum.add(&piece.mul_i64(sign));
        // next angle: atan(r / (den*k + num)), negated
        let new_den = &den * &k + &num;
        num = r;
        den = new_den;
        sign = -sign;
        if den.bits() > 64 * 1024 {
            return Err(Error::PrecisionExhausted { bits: prec, context: "atan_ratio reduction".into() });
        }
    }
    Ok(sum)
}

/// x^y as exp(y ln x); x must be certainly positive.
pub fn pow(x: &IntervalScalar, y: &IntervalScalar, prec: u32) -> Result<IntervalScalar, Error> {
    let lx = ln(x, prec)?;
    exp(&y.mul(&lx), prec)
}

/// Certified sqrt(3), used by the 2*sqrt(3) exponent comparisons.
pub fn sqrt3(prec: u32) -> IntervalScalar {
    IntervalScalar::from_i64(3, prec).sqrt().expect("3 > 0")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn width_leq(x: &IntervalScalar, e: i64) -> bool {
        x.width() <= Dyadic::new(BigInt::from(1), e)
    }

    #[test]
    fn pi_matches_reference() {
        let p = pi(128);
        // pi = 3.14159265358979323846...
        let lo = p.lo().to_f64_lossy();
        let hi = p.hi().to_f64_lossy();
        assert!(lo <= std::f64::consts::PI && std::f64::consts::PI <= hi);
        assert!(width_leq(&p, -120));
    }

    #[test]
    fn ln_of_e_near_one() {
        // ln(2.718281828459045) ~ 1; feed the rational 2718281828459045 / 10^15
        let p = BigInt::from(2718281828459045u64);
        let q = BigInt::parse_bytes(b"1000000000000000", 10).unwrap();
        let l = ln_ratio(&p, &q, 96).unwrap();
        let mid = l.to_f64_lossy();
        assert!((mid - 1.0).abs() < 1e-9, "got {mid}");
    }

    #[test]
    fn atan_symmetry_case() {
        let a = atan_ratio(&BigInt::from(1), &BigInt::from(1), 128).unwrap();
        let quarter_pi = pi(128).shl(-2);
        assert!(a.lo() <= quarter_pi.hi() && quarter_pi.lo() <= a.hi());
    }

    #[test]
    fn atan_small_ratio_brackets() {
        // atan(1/10^6) in (9.9999e-7, 1.0001e-6)
        let a = atan_ratio(&BigInt::from(1), &BigInt::from(1_000_000), 64).unwrap();
        let v = a.to_f64_lossy();
        assert!(v > 9.9999e-7 && v < 1.0001e-6);
    }

    #[test]
    fn exp_ln_roundtrip() {
        let x = IntervalScalar::from_i64(7, 128);
        let e = exp(&ln(&x, 128).unwrap(), 128).unwrap();
        assert!(e.contains_dyadic(&Dyadic::from_i64(7)));
        assert!(width_leq(&e, -100));
    }

    #[test]
    fn sin_quadrants() {
        let p = pi(128);
        // sin(pi) ~ 0
        let s = sin(&p, 96).unwrap();
        assert!(s.contains_zero());
        // sin(pi/2) ~ 1
        let s = sin(&p.shl(-1), 96).unwrap();
        assert!(s.contains_dyadic(&Dyadic::from_i64(1)));
        // sin(100pi + pi/2) ~ 1
        let big = p.mul_i64(100).add(&p.shl(-1));
        let s = sin(&big, 96).unwrap();
        assert!(s.contains_dyadic(&Dyadic::from_i64(1)));
    }

    #[test]
    fn pow_basic() {
        let five = IntervalScalar::from_i64(5, 128);
        let half = IntervalScalar::from_ratio(&BigInt::from(1), &BigInt::from(2), 128);
        let r = pow(&five, &half, 128).unwrap();
        let sq = r.mul(&r);
        assert!(sq.contains_dyadic(&Dyadic::from_i64(5)));
    }
}
