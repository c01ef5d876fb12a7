//! Lattice coordinates, the multiplier `χ`, the pairing `L` and the
//! Riemann form `E`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::periods::PeriodData;
use super::sigma::ThetaChar;
use crate::error::{Error, Result};

/// Real coordinates `(v', v'')` with `v = ω' v' + ω'' v''`.
pub fn real_coordinates(p: &PeriodData, v: &[Complex64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let g = p.genus;
    if v.len() != g {
        return Err(Error::Dimension("lattice coordinate vector".into()));
    }
    let mut m = DMatrix::<f64>::zeros(2 * g, 2 * g);
    let mut rhs = DVector::<f64>::zeros(2 * g);
    for j in 0..g {
        for i in 0..g {
            m[(j, i)] = p.omega1[(j, i)].re;
            m[(j, g + i)] = p.omega2[(j, i)].re;
            m[(g + j, i)] = p.omega1[(j, i)].im;
            m[(g + j, g + i)] = p.omega2[(j, i)].im;
        }
        rhs[j] = v[j].re;
        rhs[g + j] = v[j].im;
    }
    let sol = m
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Conditioning("period lattice is degenerate".into()))?;
    Ok(((0..g).map(|i| sol[i]).collect(), (0..g).map(|i| sol[g + i]).collect()))
}

/// Integer coordinates of a lattice vector; fails when `v` is farther than
/// `tol` from the lattice in coordinate space.
pub fn lattice_coordinates(p: &PeriodData, v: &[Complex64], tol: f64) -> Result<(Vec<i64>, Vec<i64>)> {
    let (a, b) = real_coordinates(p, v)?;
    let round = |x: &Vec<f64>| -> Result<Vec<i64>> {
        x.iter()
            .map(|t| {
                if (t - t.round()).abs() > tol {
                    Err(Error::Domain(format!("not a lattice vector (coordinate {t})")))
                } else {
                    Ok(t.round() as i64)
                }
            })
            .collect()
    };
    Ok((round(&a)?, round(&b)?))
}

/// `χ(ℓ) = exp 2πi(ℓ'·δ'' - ℓ''·δ') - πi ℓ'·ℓ''`.
pub fn chi(chr: &ThetaChar, l1: &[i64], l2: &[i64]) -> Complex64 {
    let mut s = 0.0;
    for i in 0..l1.len() {
        s += 2.0 * (l1[i] as f64 * chr.delta2[i] - l2[i] as f64 * chr.delta1[i]) - (l1[i] * l2[i]) as f64;
    }
    Complex64::new(0.0, std::f64::consts::PI * s).exp()
}

/// `L(u, v) = uᵗ(η' v' + η'' v'')`.
pub fn pairing(p: &PeriodData, u: &[Complex64], v: &[Complex64]) -> Result<Complex64> {
    let (v1, v2) = real_coordinates(p, v)?;
    let g = p.genus;
    let mut s = Complex64::new(0.0, 0.0);
    for j in 0..g {
        let mut w = Complex64::new(0.0, 0.0);
        for i in 0..g {
            w += p.eta1[(j, i)] * v1[i] + p.eta2[(j, i)] * v2[i];
        }
        s += u[j] * w;
    }
    Ok(s)
}

/// `E(u, v) = L(u, v) - L(v, u)`.
pub fn riemann_form(p: &PeriodData, u: &[Complex64], v: &[Complex64]) -> Result<Complex64> {
    Ok(pairing(p, u, v)? - pairing(p, v, u)?)
}

/// `E/2πi` on the generators, interleaved as `ω'_1, ω''_1, ω'_2, …`.
pub fn riemann_form_matrix(p: &PeriodData) -> Result<DMatrix<Complex64>> {
    let g = p.genus;
    let gens = p.generators();
    let order: Vec<usize> = (0..g).flat_map(|i| [i, g + i]).collect();
    let vecs: Vec<Vec<Complex64>> = order.iter().map(|&k| p.lattice_vector(&gens[k].0, &gens[k].1)).collect();
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let mut m = DMatrix::from_element(2 * g, 2 * g, Complex64::new(0.0, 0.0));
    for a in 0..2 * g {
        for b in 0..2 * g {
            m[(a, b)] = riemann_form(p, &vecs[a], &vecs[b])? / two_pi_i;
        }
    }
    Ok(m)
}

/// Pfaffian of an even-dimensional antisymmetric matrix, by expansion
/// along the first row.
pub fn pfaffian(m: &DMatrix<Complex64>) -> Complex64 {
    let idx: Vec<usize> = (0..m.nrows()).collect();
    pf_rec(m, &idx)
}

fn pf_rec(m: &DMatrix<Complex64>, idx: &[usize]) -> Complex64 {
    if idx.is_empty() {
        return Complex64::new(1.0, 0.0);
    }
    let mut s = Complex64::new(0.0, 0.0);
    for k in 1..idx.len() {
        let rest: Vec<usize> = idx[1..].iter().cloned().filter(|&t| t != idx[k]).collect();
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        s += m[(idx[0], idx[k])] * pf_rec(m, &rest) * sign;
    }
    s
}
