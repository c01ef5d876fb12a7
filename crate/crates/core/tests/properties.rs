//! Invariants checked on random inputs.

use hyperdet::curve_series::{expand_at_infinity, CurveSpec};
use hyperdet::division::{expected_pole_order, kiepert_det, pole_order_at_infinity};
use hyperdet::exact::{det_cofactor, det_fraction_free, det_q, q, Q, TruncSeries};
use hyperdet::numeric::sigma::SigmaEvaluator;
use hyperdet::schur::sw_poly;
use hyperdet::verifier::derivative_error;
use num_complex::Complex64 as C;
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Q> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn matrix(n: usize) -> impl Strategy<Value = Vec<Vec<Q>>> {
    prop::collection::vec(prop::collection::vec(rational(), n), n)
}

fn series(len: usize) -> impl Strategy<Value = TruncSeries<Q>> {
    prop::collection::vec(rational(), len).prop_map(move |mut c| {
        c[0] = q(1);
        TruncSeries::new("t", c, len, Q::zero())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn determinant_routes_agree(m in (1usize..=5).prop_flat_map(matrix)) {
        let a = det_cofactor(&m, &q(1)).unwrap();
        prop_assert_eq!(&a, &det_fraction_free(&m, &q(1)).unwrap());
        prop_assert_eq!(&a, &det_q(&m).unwrap());
    }

    #[test]
    fn determinant_is_alternating(m in matrix(4)) {
        let mut swapped = m.clone();
        swapped.swap(0, 2);
        prop_assert_eq!(det_q(&m).unwrap(), -det_q(&swapped).unwrap());
    }

    #[test]
    fn series_sqrt_squares_back(s in series(8)) {
        let r = s.sqrt().unwrap();
        prop_assert_eq!(r.mul(&r).unwrap(), s);
    }

    #[test]
    fn series_reciprocal_inverts(s in series(8)) {
        let r = s.reciprocal().unwrap();
        prop_assert_eq!(s.mul(&r).unwrap(), TruncSeries::new("t", vec![q(1)], 8, Q::zero()));
    }

    #[test]
    fn schur_parity(g in 1usize..=4, u in prop::collection::vec(rational(), 4)) {
        // every u_j has odd weight, so S has the parity of its weight
        let s = sw_poly(g).unwrap();
        let u = &u[..g];
        let neg: Vec<Q> = u.iter().map(|v| -v.clone()).collect();
        let sign = if (g * (g + 1) / 2) % 2 == 0 { q(1) } else { q(-1) };
        prop_assert_eq!(s.eval_u(&neg), sign * s.eval_u(u));
    }

    #[test]
    fn schur_weighted_homogeneity(g in 1usize..=4, u in prop::collection::vec(rational(), 4), k in 1i64..=3) {
        // S(k^{w_1} u_1, ..., k^{w_g} u_g) = k^{g(g+1)/2} S(u) with w_j = 2(g-j)+1
        let s = sw_poly(g).unwrap();
        let u = &u[..g];
        let scaled: Vec<Q> = u.iter().enumerate().map(|(j, v)| v * q(k.pow((2 * (g - j - 1) + 1) as u32))).collect();
        prop_assert_eq!(s.eval_u(&scaled), q(k.pow((g * (g + 1) / 2) as u32)) * s.eval_u(u));
    }

    #[test]
    fn expansions_satisfy_the_curve(g in 1usize..=3, lam in prop::collection::vec(rational(), 7)) {
        let c = CurveSpec::new(g, lam[..2 * g + 1].to_vec()).unwrap();
        let le = expand_at_infinity(&c, 4 * g + 6).unwrap();
        prop_assert!(le.curve_residual(&c).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn psi_pole_orders(g in 1usize..=2, n in 2usize..=5, lam in prop::collection::vec(rational(), 5)) {
        let c = CurveSpec::new(g, lam[..2 * g + 1].to_vec()).unwrap();
        let psi = kiepert_det(&c, n, 1).unwrap();
        prop_assert_eq!(pole_order_at_infinity(&psi).unwrap(), expected_pole_order(g, n));
    }

    #[test]
    fn sigma_derivatives_match_differences(re in prop::collection::vec(-0.4f64..0.4, 2), im in prop::collection::vec(-0.4f64..0.4, 2)) {
        let c = CurveSpec::from_roots(&[q(-2), q(0), q(1), q(3), q(4)]).unwrap();
        let ev = SigmaEvaluator::normalized(&c, 1e-15).unwrap();
        let u: Vec<C> = re.iter().zip(&im).map(|(&a, &b)| C::new(a, b)).collect();
        prop_assert!(derivative_error(&ev, &u).unwrap() < 1e-6);
    }

    #[test]
    fn sigma_parity(re in prop::collection::vec(-0.5f64..0.5, 2), im in prop::collection::vec(-0.5f64..0.5, 2)) {
        // g = 2: σ is odd
        let c = CurveSpec::from_roots(&[q(-2), q(0), q(1), q(3), q(4)]).unwrap();
        let ev = SigmaEvaluator::normalized(&c, 1e-15).unwrap();
        let u: Vec<C> = re.iter().zip(&im).map(|(&a, &b)| C::new(a, b)).collect();
        let neg: Vec<C> = u.iter().map(|v| -v).collect();
        let (a, b) = (ev.sigma(&u).unwrap(), ev.sigma(&neg).unwrap());
        prop_assert!((a + b).norm() <= 1e-12 * a.norm().max(1e-300));
    }
}
