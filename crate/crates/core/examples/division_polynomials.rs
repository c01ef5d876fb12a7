//! Division polynomials from the Wronskian and Hankel determinants, their
//! pole orders, and an exact torsion scan on `y² = x³ + 1`.

use hyperdet::curve_series::CurveSpec;
use hyperdet::division::{cantor_unsigned, expected_pole_order, kiepert_det, torsion_scan, QuadraticPoint};
use hyperdet::exact::q;

fn main() -> hyperdet::Result<()> {
    let c = CurveSpec::new(2, vec![q(0), q(1), q(-1), q(2), q(3)])?;
    for n in 2..=5 {
        let psi = kiepert_det(&c, n, 1)?;
        println!("g = 2, ψ_{n}: pole order {:?} (expected {})", psi.pole_order(), expected_pole_order(2, n));
        let ratio = psi.constant_ratio(&cantor_unsigned(&c, n)?);
        println!("  Wronskian / Hankel = {}", ratio.map_or("not constant".into(), |r| r.to_string()));
    }

    let e = CurveSpec::new(1, vec![q(0), q(0), q(1)])?;
    let psi3 = serde_json::to_string(&kiepert_det(&e, 3, 1)?.canonical()).unwrap();
    println!("ψ_3 on y² = x³ + 1: {psi3}");
    let p = QuadraticPoint::new(&e, q(2), Some(q(3)))?;
    for m in 1..=6 {
        println!("  ψ_{m}(2, 3) = 0: {}", torsion_scan(&e, &p, m)?.torsion);
    }
    Ok(())
}
