//! Roots of real polynomials by Aberth–Ehrlich iteration.

use num_complex::Complex64;

use crate::error::{Error, Result};

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All complex roots of `c[0] + c[1] x + ... + c[d] x^d`, `c[d] != 0`.
pub fn poly_roots(c: &[f64]) -> Result<Vec<Complex64>> {
    let d = c.len().checked_sub(1).filter(|&d| d > 0 && c[d] != 0.0).ok_or_else(|| {
        Error::Domain("root finding needs a nonconstant polynomial".into())
    })?;
    // Cauchy bound for the initial circle
    let bound = 1.0 + c[..d].iter().map(|a| (a / c[d]).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(bound * 0.5, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64))
        .collect();
    let mut moved = f64::INFINITY;
    for _ in 0..500 {
        moved = 0.0;
        for i in 0..d {
            let (p, dp) = horner(c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-14 {
            return Ok(z);
        }
    }
    // rounding can keep the last correction just above the stopping rule
    if moved < 1e-10 {
        return Ok(z);
    }
    Err(Error::Precision("Aberth iteration did not converge".into()))
}

/// Real roots in increasing order, failing unless every root is real and simple.
pub fn real_simple_roots(c: &[f64]) -> Result<Vec<f64>> {
    let z = poly_roots(c)?;
    let scale = z.iter().map(|r| r.norm()).fold(1.0, f64::max);
    let mut r = Vec::with_capacity(z.len());
    for w in &z {
        if w.im.abs() > 1e-8 * scale {
            return Err(Error::Unsupported(format!("branch point {w} is not real")));
        }
        r.push(w.re);
    }
    r.sort_by(f64::total_cmp);
    if r.windows(2).any(|p| p[1] - p[0] < 1e-7 * scale) {
        return Err(Error::Unsupported("coincident branch points".into()));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quintic_with_integer_roots() {
        // x(x-1)(x-2)(x-3)(x-4)
        let c = [0.0, 24.0, -50.0, 35.0, -10.0, 1.0];
        let r = real_simple_roots(&c).unwrap();
        for (k, x) in r.iter().enumerate() {
            assert!((x - k as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_pair_is_rejected() {
        assert!(matches!(real_simple_roots(&[1.0, 0.0, 0.0, 1.0]), Err(Error::Unsupported(_))));
    }
}
