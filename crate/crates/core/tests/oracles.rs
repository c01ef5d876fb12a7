//! Library results against independent classical constructions.

mod common;

use hyperdet::curve_series::CurveSpec;
use hyperdet::division::{kiepert_det, torsion_scan, QuadraticPoint};
use hyperdet::exact::{q, qf};
use hyperdet::numeric::periods::CMat;
use hyperdet::numeric::sigma::SigmaEvaluator;
use hyperdet::numeric::theta::Theta;
use num_complex::Complex64 as C;

#[test]
fn elliptic_division_polynomials_follow_the_recursion() {
    for (a, b) in [(q(-2), q(1)), (qf(1, 3), q(-4)), (q(5), qf(-7, 2))] {
        let c = common::weierstrass(&a, &b);
        let classical = common::classical_psi(&a, &b, 6);
        for n in 2..=6 {
            let k = kiepert_det(&c, n, 1).unwrap();
            let sign = if n % 2 == 0 { q(-1) } else { q(1) };
            assert_eq!(k.constant_ratio(&classical[n]), Some(sign), "n={n}");
        }
    }
}

#[test]
fn torsion_orders_on_x3_plus_1() {
    let c = common::weierstrass(&q(0), &q(1));
    // (2,3) has order 6, (0,1) order 3, (-1,0) order 2
    for (x, y, order) in [(q(2), q(3), 6), (q(0), q(1), 3), (q(-1), q(0), 2)] {
        let p = QuadraticPoint::new(&c, x.clone(), Some(y.clone())).unwrap();
        let multiples = common::twist_multiples(&q(0), &q(1), &Some((x, y)), 6);
        for m in 1..=6 {
            let torsion = torsion_scan(&c, &p, m).unwrap().torsion;
            assert_eq!(torsion, multiples[m].is_none(), "m={m}");
            assert_eq!(torsion, m % order == 0, "m={m}");
        }
    }
}

#[test]
fn quadratic_point_is_not_torsion() {
    let c = common::weierstrass(&q(0), &q(1));
    let p = QuadraticPoint::new(&c, q(1), None).unwrap();
    assert!(p.y.is_none());
    let multiples = common::twist_multiples(&q(0), &q(2), &Some((q(1), q(1))), 6);
    for m in 1..=6 {
        assert!(!torsion_scan(&c, &p, m).unwrap().torsion);
        assert!(multiples[m].is_some());
    }
}

#[test]
fn theta_constant_at_imaginary_unit() {
    let z = CMat::from_element(1, 1, C::new(0.0, 1.0));
    let th = Theta::new(&z, &[0.0], &[0.0]).unwrap();
    let direct: f64 = (-20i32..=20).map(|n| (-std::f64::consts::PI * (n * n) as f64).exp()).sum();
    let v = th.value(&[C::new(0.0, 0.0)], 1e-15).unwrap();
    assert!((v - direct).norm() < 1e-14, "{v}");
    assert!((direct - 1.086_434_811_213_308).abs() < 1e-14);
}

/// `σ` from `℘ = u^{-2} + Σ c_k u^{2k-2}`, `c_2 = g2/20`, `c_3 = g3/28`.
fn weierstrass_sigma(g2: f64, g3: f64, u: C) -> C {
    let kmax = 40;
    let mut c = vec![0.0; kmax + 1];
    c[2] = g2 / 20.0;
    c[3] = g3 / 28.0;
    for k in 4..=kmax {
        let s: f64 = (2..=k - 2).map(|m| c[m] * c[k - m]).sum();
        c[k] = 3.0 * s / ((2 * k + 1) as f64 * (k - 3) as f64);
    }
    // log σ = log u - Σ c_k u^{2k} / ((2k-1) 2k)
    let tail: C = (2..=kmax).map(|k| u.powu(2 * k as u32) * (c[k] / ((2 * k - 1) * 2 * k) as f64)).sum();
    u * (-tail).exp()
}

#[test]
fn genus_one_sigma_matches_weierstrass() {
    // x³ - 7x - 6 = (x+2)(x+1)(x-3); with x = ℘, y = ℘'/2: g2 = 28, g3 = 24
    let c = CurveSpec::new(1, vec![q(0), q(-7), q(-6)]).unwrap();
    let ev = SigmaEvaluator::normalized(&c, 1e-15).unwrap();
    for u in [C::new(0.1, 0.05), C::new(-0.2, 0.1), C::new(0.05, -0.3), C::new(0.3, 0.0)] {
        let got = ev.sigma(&[u]).unwrap();
        let want = weierstrass_sigma(28.0, 24.0, u);
        assert!((got - want).norm() < 1e-10 * want.norm(), "u={u}: {got} vs {want}");
    }
}
