//! Period matrices of a genus-two curve with real branch points, with the
//! symmetry and positivity checks of the normalized modulus.

use hyperdet::curve_series::CurveSpec;
use hyperdet::exact::q;
use hyperdet::numeric::periods::compute_periods;

fn main() -> hyperdet::Result<()> {
    let c = CurveSpec::from_roots(&[q(-2), q(0), q(1), q(3), q(4)])?;
    let p = compute_periods(&c)?;
    println!("branch points {:?}", p.branch_points);
    println!("ω' = {:.8}", p.omega1);
    println!("ω'' = {:.8}", p.omega2);
    println!("η' = {:.8}", p.eta1);
    println!("Z = {:.10}", p.z);
    println!("{:?}", p.diagnostics());
    Ok(())
}
