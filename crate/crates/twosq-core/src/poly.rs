//! Dense univariate polynomials over Z: exact arithmetic, pseudo-division,
//! primitive-PRS gcd, subresultant resultants, discriminants, and squarefree
//! parts. Degrees stay small (trinomial certificates), so dense is fine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial as coefficients, lowest degree first. Invariant: no trailing
/// zero coefficients (zero polynomial = empty vec).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(vec![])
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::new(vec![c])
    }

    /// c * x^k
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn leading(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut v = vec![BigInt::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            v[i] += c;
        }
        Poly::new(v)
    }

    pub fn neg(&self) -> Self {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|c| c * k).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// Content: gcd of coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
        }
        g
    }

    /// Primitive part with the sign of the leading coefficient preserved.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = self.content();
        Poly(self.0.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder: lc(d)^(deg n - deg d + 1) * n = q*d + rem.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "pseudo_rem by zero");
        let dd = d.degree().unwrap();
        let mut r = self.clone();
        let lc_d = d.leading();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            // r <- lc_d * r - lc_r * x^(dr-dd) * d
            let lc_r = r.leading();
            let shifted = Poly::monomial(lc_r, dr - dd).mul(d);
            r = r.scale(&lc_d).sub(&shifted);
        }
        r
    }

    /// Polynomial gcd over Z via the primitive Euclidean sequence; result is
    /// primitive with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return fix_sign(b);
        }
        if b.is_zero() {
            return fix_sign(a);
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.is_zero() {
                let g = self.content().gcd(&other.content());
                return fix_sign(b_scale(a.primitive(), g));
            }
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
    }

    /// Squarefree part: self / gcd(self, self').
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(&self.derivative());
        match g.degree() {
            None | Some(0) => self.primitive(),
            _ => exact_div(&self.primitive(), &g),
        }
    }

    /// Resultant by the subresultant polynomial remainder sequence.
    pub fn resultant(&self, other: &Self) -> BigInt {
        resultant_prs(self, other)
    }

    /// Discriminant: (-1)^(d(d-1)/2) res(f, f') / lc(f).
    pub fn discriminant(&self) -> BigInt {
        let d = match self.degree() {
            None | Some(0) => return BigInt::zero(),
            Some(d) => d,
        };
        let res = self.resultant(&self.derivative());
        let lc = self.leading();
        let (q, r) = res.div_rem(&lc);
        debug_assert!(r.is_zero(), "resultant divisible by leading coefficient");
        if (d * (d - 1) / 2) % 2 == 0 {
            q
        } else {
            -q
        }
    }
}

fn fix_sign(p: Poly) -> Poly {
    if p.leading().is_negative() {
        p.neg()
    } else {
        p
    }
}

fn b_scale(p: Poly, k: BigInt) -> Poly {
    if k.is_one() {
        p
    } else {
        p.scale(&k)
    }
}

/// Exact division assuming divisibility (used for squarefree parts).
fn exact_div(n: &Poly, d: &Poly) -> Poly {
    let mut r = n.clone();
    let dd = d.degree().expect("nonzero divisor");
    let lc_d = d.leading();
    let mut q = vec![BigInt::zero(); n.0.len().saturating_sub(d.0.len()) + 1];
    while let Some(dr) = r.degree() {
        if dr < dd {
            break;
        }
        let (c, rem) = r.leading().div_rem(&lc_d);
        debug_assert!(rem.is_zero(), "exact_div expects exact divisibility");
        q[dr - dd] = c.clone();
        r = r.sub(&Poly::monomial(c, dr - dd).mul(d));
    }
    debug_assert!(r.is_zero(), "exact_div expects exact divisibility");
    Poly::new(q)
}

/// Resultant as the Sylvester determinant, evaluated exactly by Bareiss
/// fraction-free elimination. Degrees here stay small (trinomial
/// certificates cap out in the twenties), so the cubic cost is irrelevant.
fn resultant_prs(f: &Poly, g: &Poly) -> BigInt {
    let (df, dg) = match (f.degree(), g.degree()) {
        (Some(a), Some(b)) => (a, b),
        _ => return BigInt::zero(),
    };
    if df == 0 {
        return f.leading().pow(dg as u32);
    }
    if dg == 0 {
        return g.leading().pow(df as u32);
    }
    let n = df + dg;
    // Sylvester matrix: dg rows of f's coefficients, df rows of g's.
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for (row, mrow) in m.iter_mut().enumerate().take(dg) {
        for (k, c) in f.0.iter().rev().enumerate() {
            mrow[row + k] = c.clone();
        }
    }
    for (row, mrow) in m.iter_mut().enumerate().skip(dg) {
        let row = row - dg;
        for (k, c) in g.0.iter().rev().enumerate() {
            mrow[row + k] = c.clone();
        }
    }
    bareiss_det(m)
}

/// Exact integer determinant by Bareiss single-step fraction-free elimination.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // pivot search
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Poly {
        Poly::new(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn arithmetic_and_eval() {
        let f = p(&[1, 0, 1]); // 1 + x^2
        let g = p(&[-1, 1]); // x - 1
        assert_eq!(f.mul(&g), p(&[-1, 1, -1, 1]));
        assert_eq!(f.eval(&BigInt::from(3)), BigInt::from(10));
        assert_eq!(f.derivative(), p(&[0, 2]));
    }

    #[test]
    fn disc_quadratic() {
        // disc(x^2 + c) = -4c
        for c in [-3i64, 1, 2, 7] {
            let f = p(&[c, 0, 1]);
            assert_eq!(f.discriminant(), BigInt::from(-4 * c));
        }
        // disc(ax^2+bx+c) = b^2-4ac
        let f = p(&[5, 3, 2]);
        assert_eq!(f.discriminant(), BigInt::from(9 - 40));
    }

    #[test]
    fn disc_cubic() {
        // disc(x^3 + px + q) = -4p^3 - 27q^2
        for (pp, q) in [(1i64, 1i64), (-2, 3), (5, -7)] {
            let f = p(&[q, pp, 0, 1]);
            assert_eq!(f.discriminant(), BigInt::from(-4 * pp * pp * pp - 27 * q * q));
        }
    }

    #[test]
    fn resultant_known() {
        // res(x^2-1, x-2) = (2^2 - 1) = 3
        let f = p(&[-1, 0, 1]);
        let g = p(&[-2, 1]);
        assert_eq!(f.resultant(&g), BigInt::from(3));
        // res of two linears (x-a, x-b) = b - a
        assert_eq!(p(&[-3, 1]).resultant(&p(&[-5, 1])), BigInt::from(-2));
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+2): squarefree part (x-1)(x+2)
        let f = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1]));
        let sf = f.squarefree_part();
        assert_eq!(sf, p(&[-1, 1]).mul(&p(&[2, 1])));
        let g = p(&[-1, 1]).mul(&p(&[3, 1]));
        assert_eq!(f.gcd(&g), p(&[-1, 1]));
    }
}
