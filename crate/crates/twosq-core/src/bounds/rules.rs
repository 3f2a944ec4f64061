//! The hand-coded implication rules. Each rule reads the context and the
//! current store, emits canonical facts, and never retracts: the engine's
//! fixed point is therefore order-independent.

use super::{Context, FactStore};
use crate::error::Error;
use crate::exact::functions::{ln, ln_big, pi};
use crate::exact::IntervalScalar;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RuleId {
    Le0,
    Le0Bis,
    Le1,
    Le1Bis,
    Le2,
    Teunu,
    Le55,
    Le55C,
    Pr55,
    ExternalFilters,
}

pub fn default_rule_order() -> Vec<RuleId> {
    vec![
        RuleId::Le0,
        RuleId::Le0Bis,
        RuleId::Le1,
        RuleId::Le1Bis,
        RuleId::Le2,
        RuleId::Teunu,
        RuleId::Le55,
        RuleId::Le55C,
        RuleId::Pr55,
        RuleId::ExternalFilters,
    ]
}

pub fn apply(rule: RuleId, ctx: &Context, store: &mut FactStore) -> Result<(), Error> {
    match rule {
        RuleId::Le0 => rule_le0(ctx, store),
        RuleId::Le0Bis => rule_le0bis(ctx, store),
        RuleId::Le1 => rule_le1(ctx, store),
        RuleId::Le1Bis => rule_le1bis(ctx, store),
        RuleId::Le2 => rule_le2(ctx, store),
        RuleId::Teunu => rule_teunu(ctx, store),
        RuleId::Le55 => rule_le55(ctx, store),
        RuleId::Le55C => rule_le55c(ctx, store),
        RuleId::Pr55 => rule_pr55(ctx, store),
        RuleId::ExternalFilters => rule_external_filters(ctx, store),
    }
}

const PREC: u32 = 128;

/// Shape constraints on any non-(2,2,r) solution: x = 2, y = 2 (mod 4),
/// y >= 6, z odd.
pub fn rule_le0(ctx: &Context, store: &mut FactStore) -> Result<(), Error> {
    if let Some(y) = ctx.y {
        if y % 4 != 2 {
            store.insert("le0", format!("contradiction:y-mod-4:{y}"), format!("y = {y} not 2 mod 4"), &[]);
        } else if y < 6 {
            store.insert("le0", format!("contradiction:y-small:{y}"), format!("y = {y} < 6"), &[]);
        } else {
            store.insert("le0", "y-shape", format!("y = {y}: y = 2 mod 4, y >= 6"), &[]);
        }
    }
    if let Some(z) = ctx.z {
        if z % 2 == 0 {
            store.insert("le0", format!("contradiction:z-even:{z}"), format!("z = {z} even"), &[]);
        } else {
            store.insert("le0", "z-odd", format!("z = {z} odd"), &[]);
        }
    }
    if let (Some(r), Some(z)) = (ctx.r, ctx.z) {
        if z <= r {
            store.insert("le0", format!("contradiction:z-le-r:{z}:{r}"), format!("z = {z} <= r = {r}"), &[]);
        }
    }
    Ok(())
}

/// Mutual exclusion: a >= c^(z/mu1) gives 2z < mu1 r; b >= c^(r/mu2) gives
/// y r < mu2 z; both with mu1 mu2 <= 2y cannot hold.
pub fn rule_le0bis(ctx: &Context, store: &mut FactStore) -> Result<(), Error> {
    let y = match ctx.y.or(ctx.y_floor) {
        Some(y) => y,
        None => return Ok(()),
    };
    let a_claim = ctx.mu_claims.iter().find(|m| m.side == 'a');
    let b_claim = ctx.mu_claims.iter().find(|m| m.side == 'b');
    if let Some(a) = a_claim {
        store.insert(
            "le0bis-a",
            format!("2z<mu1*r:{}", a.n),
            format!("a >= c^(z/{:.6}) forces 2z < {:.6} r", a.mu, a.mu),
            &[],
        );
    }
    if let Some(b) = b_claim {
        store.insert(
            "le0bis-b",
            format!("yr<mu2*z:{}", b.n),
            format!("b >= c^(r/{:.6}) forces y r < {:.6} z", b.mu, b.mu),
            &[],
        );
    }
    if let (Some(a), Some(b)) = (a_claim, b_claim) {
        if a.mu * b.mu <= (2 * y) as f64 {
            store.insert(
                "le0bis-c",
                format!("contradiction:mutual-exclusion:{}:{}", a.n, b.n),
                format!("mu1 mu2 = {:.6} <= 2y = {}", a.mu * b.mu, 2 * y),
                &[&format!("2z<mu1*r:{}", a.n), &format!("yr<mu2*z:{}", b.n)],
            );
        }
    }
    Ok(())
}

/// Angle-window bound: (r+1) v < pi u certifies b >= v c^((r-1)/2); b >= v
/// holds unconditionally.
pub fn rule_le1(ctx: &Context, store: &mut FactStore) -> Result<(), Error> {
    let (rep, r) = match (&ctx.rep, ctx.r) {
        (Some(rep), Some(r)) => (rep, r),
        _ => return Ok(()),
    };
    if r < 3 || r % 2 == 0 {
        return Ok(());
    }
    store.insert("le1", "b>=v", format!("b >= v = {}", rep.v), &[]);
    let pi_iv = pi(PREC);
    let lhs = IntervalScalar::from_bigint(&(&rep.v * (r + 1)), PREC);
    let rhs = pi_iv.mul(&IntervalScalar::from_bigint(&rep.u, PREC));
    if lhs.certainly_lt(&rhs) == Some(true) {
        store.insert(
            "le1",
            "b>=v*c^((r-1)/2)",
            format!("(r+1)v = {} < pi u: b >= {} * c^{}", &rep.v * (r + 1), rep.v, (r - 1) / 2),
            &["b>=v"],
        );
    }
    Ok(())
}

/// The sqrt(c) lower bound on b and the y/z quotient bound
/// y < z (2 + log(1 + (r+1)^2/pi^2) / log b).
pub fn rule_le1bis(ctx: &Context, store: &mut FactStore) -> Result<(), Error> {
    let (r, z) = match (ctx.r, ctx.z) {
        (Some(r), Some(z)) => (r, z),
        _ => return Ok(()),
    };
    let y = match ctx.y {
        Some(y) => y,
        None => return Ok(()),
    };
    let b = match &ctx.b {
        Some(b) if b > &BigInt::one() => b.clone(),
        _ => return Ok(()),
    };
    let pi_iv = pi(PREC);
    let pi2 = pi_iv.mul(&pi_iv);
    let r1sq = IntervalScalar::from_i64(((r + 1) * (r + 1)) as i64, PREC);
    let ratio = r1sq.div(&pi2)?;
    let log_term = ln(&IntervalScalar::from_i64(1, PREC).add(&ratio), PREC)?;
    let log_b = ln_big(&b, PREC)?;
    let bound = log_term.div(&log_b)?.add(&IntervalScalar::from_i64(2, PREC)).mul_i64(z as i64);
    let y_iv = IntervalScalar::from_i64(y as i64, PREC);
    if y_iv.certainly_lt(&bound) == Some(false) {
        store.insert(
            "le1bis",
            format!("contradiction:quotient-bound:{y}:{z}:{r}"),
            format!("y = {y} >= z (2 + log(1+(r+1)^2/pi^2)/log b) with r = {r}, b = {b}"),
            &[],
        );
    } else {
        store.insert(
            "le1bis",
            "y<z(2+const/logb)",
            format!("y = {y} < {:.4}", bound.to_f64_lossy()),
            &[],
        );
    }
    Ok(())
}

/// lambda' lower bound with the slack re-derived from log(1 - c^-2): for the
/// exact witness scenario `a = b^((y - lambda')/2)`.
pub fn rule_le2(ctx: &Context, store: &mut FactStore) -> Result<(), Error> {
    let (r, z) = match (ctx.r, ctx.z) {
        (Some(r), Some(z)) => (r, z),
        _ => return Ok(()),
    };
    let c_min = match &ctx.c_min {
        Some(c) => c.clone(),
        None => return Ok(()),
    };
    if z < r + 2 {
        return Ok(()); // hypothesis z >= r + 2 fails; le0 flags z <= r
    }
    // delta = -log(1 - c^-2) must be < 1e-22 for c > 4e10 (re-derived).
    let delta = consts_delta(&c_min)?;
    let tiny = IntervalScalar::from_ratio(&BigInt::one(), &BigInt::from(10u64).pow(22u32).into(), PREC);
    let ok = delta.certainly_lt(&tiny) == Some(true);
    store.insert(
        "le2",
        "lambda-prime-positive",
        format!(
            "lambda' > (log c/log b)(z - r - d) > (2/r)(2 - d), delta {} 1e-22 (z = {z}, r = {r})",
            if ok { "<" } else { "not certified <" }
        ),
        &[],
    );
    Ok(())
}

fn consts_delta(c_min: &BigInt) -> Result<IntervalScalar, Error> {
    // -log(1 - x) <= x/(1-x) for x = c^-2; evaluate with intervals.
    let c_iv = IntervalScalar::from_bigint(c_min, PREC);
    let x = IntervalScalar::from_i64(1, PREC).div(&c_iv.mul(&c_iv))?;
    let denom = IntervalScalar::from_i64(1, PREC).sub(&x);
    x.div(&denom)
}

/// v = 1 route: congruence chain a = +-ru (mod u^3), b = +-(1 - C(r,2) u^2)
/// (mod u^4), c^z = 1 + z u^2 (mod u^4) and the size contradiction
/// u^2 + r^2 <= r(r-1)y/2 + z < r^2 y / 2.
pub fn rule_teunu(ctx: &Context, store: &mut FactStore) -> Result<(), Error> {
    let rep = match &ctx.rep {
        Some(rep) if rep.v.is_one() => rep,
        _ => return Ok(()),
    };
    let (r, y) = match (ctx.r, ctx.y.or(ctx.y_floor)) {
        (Some(r), Some(y)) => (r, y),
        _ => return Ok(()),
    };
    // Congruence validation on the exact witness.
    if let Ok(w) = crate::repr::witness_from(rep, r) {
        let u3 = rep.u.pow(3);
        let ru = BigInt::from(r) * &rep.u;
        let plus = (&w.a - &ru) % &u3;
        let minus = (&w.a + &ru) % &u3;
        let cong_ok = plus.is_zero() || minus.is_zero();
        store.insert(
            "teunu",
            "a-congruence",
            format!("a = {} vs +-ru (mod u^3 = {}): {}", w.a, u3, if cong_ok { "holds" } else { "FAILS" }),
            &[],
        );
        use num_traits::Zero;
        let u4 = rep.u.pow(4);
        let binom = BigInt::from(r) * (r - 1) / 2u32;
        let bexp = BigInt::one() - binom * &rep.u * &rep.u;
        let bp = (&w.b - &bexp) % &u4;
        let bm = (&w.b + &bexp) % &u4;
        let bcong_ok = bp.is_zero() || bm.is_zero();
        store.insert(
            "teunu",
            "b-congruence",
            format!("b vs +-(1 - C(r,2) u^2) (mod u^4): {}", if bcong_ok { "holds" } else { "FAILS" }),
            &["a-congruence"],
        );
    }
    // Size contradiction: u^2 + r^2 <= r(r-1)y/2 + z < r^2 y/2; with the
    // current bounds r, y the left side exceeds the right when u^2 is large.
    let u2 = &rep.u * &rep.u;
    let rhs = BigInt::from(r) * r * y / 2u32;
    if u2 + BigInt::from(r) * r >= rhs {
        store.insert(
            "teunu",
            format!("contradiction:teunu:{r}:{y}"),
            format!(
                "u^2 + r^2 = {} >= r^2 y / 2 = {}",
                &rep.u * &rep.u + BigInt::from(r) * r,
                BigInt::from(r) * r * y / 2u32
            ),
            &["a-congruence"],
        );
    }
    Ok(())
}

/// Skew bounds for (u1, v1): the (z+1) xi1 < pi/2 argument gives the ratio
/// floor min(u1/v1, v1/u1) >= 0.001856 and then min(u1, v1) >= 372.
pub fn rule_le55(ctx: &Context, store: &mut FactStore) -> Result<(), Error> {
    let c_min = match &ctx.c_min {
        Some(c) => c,
        None => return Ok(()),
    };
    if c_min < &BigInt::from(40_000_000_000u64) {
        return Ok(());
    }
    // ratio floor: pi / (2 * 846), from z <= 845 in the skew regime.
    let pi_iv = pi(PREC);
    let ratio_floor = pi_iv.div(&IntervalScalar::from_i64(2 * 846, PREC))?;
    store.insert(
        "le55",
        "ratio-floor",
        format!("min(u1/v1, v1/u1) >= {:.9} (pi / 1692)", ratio_floor.to_f64_lossy()),
        &[],
    );
    // min(u1, v1) >= ratio_floor * sqrt(c / (1 + ratio^2)), evaluated at c_min.
    let c_iv = IntervalScalar::from_bigint(c_min, PREC);
    let denom = IntervalScalar::from_i64(1, PREC).add(&ratio_floor.mul(&ratio_floor));
    let min_uv = ratio_floor.mul(&c_iv.div(&denom)?.sqrt()?);
    // Integer floor: min >= ceil(lower bound).
    let floor_int = min_uv.lo().floor_bigint() + 1u32;
    store.insert(
        "le55",
        "min-u1v1",
        format!("min(u1, v1) >= {floor_int}"),
        &["ratio-floor"],
    );
    if let Some(rep1) = &ctx.rep1 {
        let min_actual = rep1.u.clone().min(rep1.v.clone());
        if min_actual < floor_int {
            store.insert(
                "le55",
                format!("contradiction:le55-min:{min_actual}"),
                format!("min(u1, v1) = {min_actual} < {floor_int}"),
                &["min-u1v1"],
            );
        }
    }
    Ok(())
}

/// Parity-exact relation r y / 2 = z + 2t with t >= 1, the b upper bound
/// b < c^(r/2 - 2/y), and the conditional collapse to t = 1.
pub fn rule_le55c(ctx: &Context, store: &mut FactStore) -> Result<(), Error> {
    let (r, z, y) = match (ctx.r, ctx.z, ctx.y) {
        (Some(r), Some(z), Some(y)) => (r, z, y),
        _ => return Ok(()),
    };
    if r % 2 == 0 || z % 2 == 0 || y % 4 != 2 {
        return Ok(());
    }
    let ry2 = r * y / 2;
    if ry2 <= z {
        store.insert(
            "le55c",
            format!("contradiction:ry2-le-z:{r}:{y}:{z}"),
            format!("r y / 2 = {ry2} <= z = {z}"),
            &[],
        );
        return Ok(());
    }
    let diff = ry2 - z;
    if diff % 2 != 0 {
        store.insert(
            "le55c",
            format!("contradiction:parity:{r}:{y}:{z}"),
            format!("r y / 2 - z = {diff} odd (both sides must be odd)"),
            &[],
        );
        return Ok(());
    }
    let t = diff / 2;
    store.insert("le55c", format!("t-value:{t}"), format!("r y / 2 = z + 2t with t = {t}"), &[]);
    if t == 1 {
        store.insert("le55c", "t-eq-1", "t = 1 branch: tightened r-table applies", &[&format!("t-value:{t}")]);
        // terminal rows of the t = 1 table
        if y >= 102 {
            store.insert(
                "le55c",
                format!("contradiction:t1-y-cap:{y}"),
                format!("t = 1 and y = {y} >= 102: no solution"),
                &["t-eq-1"],
            );
        } else if y >= 66 && r != 3 {
            store.insert(
                "le55c",
                format!("contradiction:t1-r3:{y}:{r}"),
                format!("t = 1 and y = {y} >= 66 force r = 3, got r = {r}"),
                &["t-eq-1"],
            );
        }
    }
    Ok(())
}

/// The further-results chain: c > 3^(y-10) via the valuation identity,
/// a > 4.608 b, b > 2.171^z, the y vs z ladder, and y <= 634.
pub fn rule_pr55(ctx: &Context, store: &mut FactStore) -> Result<(), Error> {
    let y = match ctx.y.or(ctx.y_floor) {
        Some(y) => y,
        None => return Ok(()),
    };
    if y < 34 {
        return Ok(());
    }
    store.insert(
        "pr55",
        "c>3^(y-10)",
        format!("v_3(z) <= 5 in the z-window gives c > v1^2 >= 3^(y-10), y = {y}"),
        &[],
    );
    store.insert(
        "pr55",
        "c>2.1716^y",
        "3^(y(1-5/17)) > 2.1716^y".to_string(),
        &["c>3^(y-10)"],
    );
    store.insert(
        "pr55",
        "a>4.608b",
        "mu = b^2/c^r, mu^(y/2) < c^-2: a = b sqrt(1/mu - 1) > 4.608 b",
        &["c>2.1716^y"],
    );
    if let Some(z) = ctx.z {
        store.insert("pr55", "b>2.171^z", format!("b^y > (1 - 1e-20) c^z with z = {z}"), &["c>2.1716^y"]);
        // ladder: y <= 2z + 4 always; y <= 2z - 4 for y >= 34.
        if y >= 34 && y + 4 > 2 * z {
            store.insert(
                "pr55",
                format!("contradiction:pr55-ladder:{y}:{z}"),
                format!("y = {y} > 2z - 4 = {}", 2 * z - 4),
                &["b>2.171^z"],
            );
        }
    }
    if y > 634 {
        store.insert(
            "pr55",
            format!("contradiction:pr55-y-cap:{y}"),
            format!("y = {y} > 634"),
            &["a>4.608b"],
        );
    }
    Ok(())
}

/// External theorems consumed as axioms: the modular exclusion for 3 | z
/// with its y allow-list, the gcd(m, n) = 1 filter for r | z, and
/// gcd(y, z) <= 3. Each emitted fact is tagged as an external assumption.
pub fn rule_external_filters(ctx: &Context, store: &mut FactStore) -> Result<(), Error> {
    const CHEN_ALLOWED_Y: [u64; 29] = [
        6, 10, 14, 18, 30, 42, 50, 54, 62, 70, 90, 98, 126, 150, 162, 186, 210, 250, 270, 294,
        310, 350, 378, 434, 450, 486, 490, 558, 630,
    ];
    let (y, z) = match (ctx.y, ctx.z) {
        (Some(y), Some(z)) => (y, z),
        _ => return Ok(()),
    };
    if z % 3 == 0 && !CHEN_ALLOWED_Y.contains(&y) {
        store.insert(
            "external-chen",
            format!("contradiction:chen:{y}:{z}"),
            format!("3 | z and y = {y} outside the allow-list"),
            &["external:chen"],
        );
        store.insert(
            "external-chen",
            "external:chen",
            "A^2 + B^(2p) = C^3 has no coprime solutions for prime 7 < p < 1e7, p != 31 (external)",
            &[],
        );
    }
    if let Some(r) = ctx.r {
        if z % r == 0 && num_integer::gcd(y, z) > 1 && z % 3 == 0 {
            store.insert(
                "external-mp",
                format!("contradiction:mignotte-petho:{r}:{z}"),
                format!("r = {r} divides z = {z}: curve X^m - X = Y^n - Y needs gcd(m, n) = 1"),
                &["external:mignotte-petho"],
            );
            store.insert(
                "external-mp",
                "external:mignotte-petho",
                "points with both coordinates > 1 on X^m - X = Y^n - Y force gcd(m, n) = 1 (external)",
                &[],
            );
        }
    }
    if num_integer::gcd(y, z) > 3 {
        store.insert(
            "external-dm",
            format!("contradiction:darmon-merel:{y}:{z}"),
            format!("gcd(y, z) = {} > 3", num_integer::gcd(y, z)),
            &["external:darmon-merel"],
        );
        store.insert(
            "external-dm",
            "external:darmon-merel",
            "X^n + Y^n = Z^2 has no nonzero solutions for n >= 4 (external)",
            &[],
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{derive_all, derive_exclusion};
    use crate::repr::Representation;

    fn ctx_y_z(y: u64, z: u64) -> Context {
        Context { y: Some(y), z: Some(z), ..Default::default() }
    }

    #[test]
    fn le0_shape() {
        let s = derive_all(&ctx_y_z(6, 5), &default_rule_order()).unwrap();
        assert!(s.has("y-shape"));
        assert!(s.contradictions().is_empty());
        let s = derive_all(&ctx_y_z(8, 5), &default_rule_order()).unwrap();
        assert!(!s.contradictions().is_empty());
        let s = derive_all(&ctx_y_z(4, 5), &default_rule_order()).unwrap();
        assert!(!s.contradictions().is_empty());
    }

    #[test]
    fn le0bis_product() {
        let two_sqrt3 = 2.0 * 3.0f64.sqrt();
        let mut ctx = ctx_y_z(6, 13);
        ctx.r = Some(11);
        ctx.mu_claims = vec![
            crate::bounds::MuClaim { side: 'a', n: 13, mu: two_sqrt3 },
            crate::bounds::MuClaim { side: 'b', n: 11, mu: two_sqrt3 },
        ];
        let s = derive_all(&ctx, &default_rule_order()).unwrap();
        assert!(s.iter().any(|f| f.key.starts_with("contradiction:mutual-exclusion")));
        // boundary: product just above 2y emits nothing
        ctx.mu_claims[0].mu = 3.47;
        ctx.mu_claims[1].mu = 3.47;
        let s = derive_all(&ctx, &default_rule_order()).unwrap();
        assert!(!s.iter().any(|f| f.key.starts_with("contradiction:mutual-exclusion")));
    }

    #[test]
    fn le1_conditional_branch() {
        // (6,7), r = 3: (r+1)v = 28 > pi*6: only b >= v.
        let mut ctx = Context::default();
        ctx.rep = Some(Representation::new(BigInt::from(85), BigInt::from(6), BigInt::from(7)).unwrap());
        ctx.r = Some(3);
        let s = derive_all(&ctx, &default_rule_order()).unwrap();
        assert!(s.has("b>=v"));
        assert!(!s.has("b>=v*c^((r-1)/2)"));
        // u/v large: conditional branch fires
        let mut ctx = Context::default();
        ctx.rep = Some(Representation::new(BigInt::from(100 * 100 + 9), BigInt::from(100), BigInt::from(3)).unwrap());
        ctx.r = Some(3);
        let s = derive_all(&ctx, &default_rule_order()).unwrap();
        assert!(s.has("b>=v*c^((r-1)/2)"));
    }

    #[test]
    fn teunu_exclusion() {
        // u^2 = 4e10 scale with r = 769, y = 1778: u^2 >= r^2 y / 2.
        let u = BigInt::from(200_000u64);
        let c = &u * &u + 1u32;
        let mut ctx = Context::default();
        ctx.rep = Some(Representation::new(c, u, BigInt::one()).unwrap());
        ctx.r = Some(769);
        ctx.y = Some(1778);
        let s = derive_all(&ctx, &default_rule_order()).unwrap();
        assert!(s.iter().any(|f| f.key.starts_with("contradiction:teunu")));
    }

    #[test]
    fn teunu_congruence_witness() {
        // (u, v) = (2, 1), r = 3: a = 2, and 2 = -6 mod 8.
        let mut ctx = Context::default();
        ctx.rep = Some(Representation::new(BigInt::from(5), BigInt::from(2), BigInt::one()).unwrap());
        ctx.r = Some(3);
        ctx.y = Some(6);
        let s = derive_all(&ctx, &default_rule_order()).unwrap();
        let f = s.get("a-congruence").unwrap();
        assert!(f.detail.contains("holds"), "{}", f.detail);
    }

    #[test]
    fn le55c_parity() {
        // r=3, y=6, z=5: ry/2 = 9 = 5 + 4 -> t = 2.
        let mut ctx = ctx_y_z(6, 5);
        ctx.r = Some(3);
        let s = derive_all(&ctx, &default_rule_order()).unwrap();
        assert!(s.has("t-value:2"));
        // r=3, y=6, z=7: t = 1.
        let mut ctx = ctx_y_z(6, 7);
        ctx.r = Some(3);
        let s = derive_all(&ctx, &default_rule_order()).unwrap();
        assert!(s.has("t-eq-1"));
    }

    #[test]
    fn external_filters() {
        // z = 9, y = 22: 3 | z and 22 outside the list.
        let s = derive_all(&ctx_y_z(22, 9), &default_rule_order()).unwrap();
        assert!(s.iter().any(|f| f.key.starts_with("contradiction:chen")));
        // y = 12, z = 8 is shape-rejected anyway (y mod 4); use gcd check: y=12, z=9 -> gcd 3 fine
        let s = derive_all(&ctx_y_z(12, 9), &default_rule_order()).unwrap();
        assert!(!s.iter().any(|f| f.key.starts_with("contradiction:darmon-merel")));
        // gcd(y, z) = 5 > 3
        let s = derive_all(&ctx_y_z(10, 15), &default_rule_order()).unwrap();
        assert!(s.iter().any(|f| f.key.starts_with("contradiction:darmon-merel")));
    }

    #[test]
    fn exclusion_certificate_replays() {
        let ctx = ctx_y_z(8, 5);
        let cert = derive_exclusion(&ctx).unwrap().unwrap();
        assert!(cert.replay(&ctx).unwrap());
    }
}
