//! Expansions of `x`, `y` and the abelian coordinates `u_j` at infinity in
//! the local parameter `t = 1/√x`, and a numerical Abel map near infinity.

use hyperdet::curve_series::{expand_at_infinity, series_json, CurveSpec, PointSampler};
use hyperdet::exact::q;
use num_complex::Complex64;

fn main() -> hyperdet::Result<()> {
    let c = CurveSpec::new(2, vec![q(1), q(0), q(-2), q(0), q(3)])?;
    let le = expand_at_infinity(&c, 10)?;
    println!("x   = {}", series_json(&le.x));
    println!("y   = {}", series_json(&le.y));
    for (j, u) in le.u.iter().enumerate() {
        println!("u_{} = {}", j + 1, series_json(u));
    }
    println!("curve residual is zero: {}", le.curve_residual(&c)?.is_zero());

    let sampler = PointSampler::new(&c, 30)?;
    let p = sampler.point(Complex64::new(0.2, 0.05), 1e-13)?;
    println!("t = {}: x = {:.6}, y = {:.6}, u = {:.6?}", p.t, p.x, p.y, p.u);
    Ok(())
}
