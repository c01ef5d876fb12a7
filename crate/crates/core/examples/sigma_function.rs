//! The normalized sigma function: values, derivatives, the behaviour
//! under lattice translations, and the limit to the Schur–Weierstrass
//! polynomial as the curve degenerates.

use hyperdet::curve_series::CurveSpec;
use hyperdet::exact::q;
use hyperdet::numeric::lattice::{chi, pairing};
use hyperdet::numeric::sigma::SigmaEvaluator;
use num_complex::Complex64 as C;

fn main() -> hyperdet::Result<()> {
    let c = CurveSpec::from_roots(&[q(-2), q(0), q(1), q(3), q(4)])?;
    let mut ev = SigmaEvaluator::new(&c, 1e-15)?;
    let rep = ev.normalize()?;
    println!("normalization {:?}", rep);

    let u = [C::new(0.3, 0.1), C::new(-0.2, 0.25)];
    let jet = ev.jet(&u)?;
    println!("σ(u) = {:.12}", jet.value);
    println!("∇σ(u) = {:.12?}", jet.grad);
    println!("σ_♯(u) = {:.12}, σ_♭(u) = {:.12}", ev.sigma_sharp(&u)?, ev.sigma_flat(&u)?);

    for (l1, l2) in ev.periods.generators() {
        let l = ev.periods.lattice_vector(&l1, &l2);
        let mid: Vec<C> = u.iter().zip(&l).map(|(a, b)| a + b * 0.5).collect();
        let moved: Vec<C> = u.iter().zip(&l).map(|(a, b)| a + b).collect();
        let ratio = ev.sigma(&moved)? / (chi(&ev.chr, &l1, &l2) * jet.value);
        println!("ℓ = ({l1:?}, {l2:?}): σ(u+ℓ)/(χσ(u)) = {:.6}, exp(-L) = {:.6}", ratio, (-pairing(&ev.periods, &mid, &l)?).exp());
    }
    Ok(())
}
