//! Schur–Weierstrass polynomials: the determinant in power sums, the form
//! in abelian coordinates, their lowest Hankel part and the vanishing on
//! sums of `g-1` curve points.

use hyperdet::schur::{hankel_ratio, stratum_vanishing_check, sw_natural_derivative, sw_poly};

fn main() -> hyperdet::Result<()> {
    for g in 1..=4 {
        let s = sw_poly(g)?;
        println!("g = {g}, weight {}", s.weight());
        println!("  S(u)    = {}", s.abelian);
        println!("  S_♯(u)  = {}", sw_natural_derivative(&s, 1)?);
        if let Some(k) = hankel_ratio(&s)? {
            println!("  lowest part = {k} · Hankel determinant");
        }
        println!("  vanishes on g-1 points: {}", stratum_vanishing_check(g, g - 1)?);
    }
    Ok(())
}
