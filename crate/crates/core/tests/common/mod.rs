//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls the determinant formulae of the library: the elliptic
//! division polynomials come from the classical recursion and the group law
//! is the chord-and-tangent construction.

#![allow(dead_code)]

use std::sync::Arc;

use hyperdet::curve_series::CurveSpec;
use hyperdet::division::{CurveCtx, CurveFunction};
use hyperdet::exact::{q, Q, UPoly};
use num_traits::Zero;

/// `y² = x³ + a x + b`.
pub fn weierstrass(a: &Q, b: &Q) -> CurveSpec<Q> {
    CurveSpec::new(1, vec![q(0), a.clone(), b.clone()]).unwrap()
}

fn poly(ctx: &Arc<CurveCtx<Q>>, c: Vec<Q>) -> CurveFunction<Q> {
    CurveFunction::new(ctx, UPoly::new(c, q(0)), UPoly::zero(q(0)), 0, 0)
}

/// Classical division polynomials `ψ_0, ..., ψ_max` with `ψ_2 = 2y`, from
/// the explicit `ψ_3`, `ψ_4` and the doubling recursion.
pub fn classical_psi(a: &Q, b: &Q, max: usize) -> Vec<CurveFunction<Q>> {
    let c = weierstrass(a, b);
    let ctx = CurveCtx::new(&c);
    let y = CurveFunction::y(&ctx);
    let a2 = a * a;
    let mut psi = vec![
        CurveFunction::zero(&ctx),
        CurveFunction::one(&ctx),
        y.scale(&q(2)),
        poly(&ctx, vec![-a2.clone(), b * q(12), a * q(6), q(0), q(3)]),
        poly(
            &ctx,
            vec![
                -(b * b * q(8)) - &a2 * a,
                -(a * b * q(4)),
                -(&a2 * q(5)),
                b * q(20),
                a * q(5),
                q(0),
                q(1),
            ],
        )
        .mul(&y)
        .scale(&q(4)),
    ];
    // 1/(2y) = y / (2f)
    let inv_2y = CurveFunction::new(&ctx, UPoly::zero(q(0)), UPoly::constant(Q::new(1.into(), 2.into())), 0, 1);
    for n in 5..=max {
        let m = n / 2;
        let next = if n % 2 == 1 {
            psi[m + 2].mul(&psi[m].pow(3)).sub(&psi[m - 1].mul(&psi[m + 1].pow(3)))
        } else {
            let inner = psi[m + 2].mul(&psi[m - 1].pow(2)).sub(&psi[m - 2].mul(&psi[m + 1].pow(2)));
            psi[m].mul(&inner).mul(&inv_2y)
        };
        psi.push(next);
    }
    psi.truncate(max + 1);
    psi
}

/// A point of the twist `d w² = x³ + a x + b`, or `None` for the origin.
/// `(x, w)` stands for `(x, w √d)` on `y² = x³ + a x + b`.
pub type TwistPoint = Option<(Q, Q)>;

/// Chord-and-tangent addition on `d w² = x³ + a x + b`.
pub fn twist_add(a: &Q, d: &Q, p: &TwistPoint, r: &TwistPoint) -> TwistPoint {
    let (p, r) = match (p, r) {
        (None, _) => return r.clone(),
        (_, None) => return p.clone(),
        (Some(p), Some(r)) => (p, r),
    };
    let slope = if p.0 != r.0 {
        (&r.1 - &p.1) / (&r.0 - &p.0)
    } else if p.1 == -r.1.clone() {
        return None;
    } else {
        (&p.0 * &p.0 * q(3) + a) / (d * &p.1 * q(2))
    };
    let x = d * &slope * &slope - &p.0 - &r.0;
    let w = &slope * (&p.0 - &x) - &p.1;
    Some((x, w))
}

/// `[m] P` for `m = 0, ..., max`.
pub fn twist_multiples(a: &Q, d: &Q, p: &TwistPoint, max: usize) -> Vec<TwistPoint> {
    let mut out = vec![None];
    for _ in 0..max {
        let next = twist_add(a, d, out.last().unwrap(), p);
        out.push(next);
    }
    out
}

/// True iff `v` is the square of a rational.
pub fn is_rational_square(v: &Q) -> bool {
    if v.is_zero() {
        return true;
    }
    if *v < q(0) {
        return false;
    }
    let sq = |n: &num_bigint::BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    sq(v.numer()) && sq(v.denom())
}
