//! Period matrices of a curve whose `2g+1` branch points are real.
//!
//! With branch points `e_1 < ... < e_{2g+1}` the cycle `A_i` encircles the
//! cut `[e_{2i-1}, e_{2i}]` and `B_i` runs from that cut to the cut
//! `[e_{2g+1}, ∞]`. Both reduce to sums of integrals over the intervals
//! `(e_k, e_{k+1})`, taken with `y` continued from the upper half plane.
//! `B_i` returns on the second sheet below the axis, so the cuts it passes
//! cancel and only the gaps `(e_{2k}, e_{2k+1})`, `k ≥ i`, contribute.
//! The substitution `x = m + w cos θ` removes the endpoint singularities,
//! leaving a smooth periodic integrand for the midpoint rule.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::roots::real_simple_roots;
use crate::curve_series::CurveSpec;
use crate::error::{Error, Result};
use crate::exact::Q;

pub type CMat = DMatrix<Complex64>;

/// `ω'`, `ω''`, `η'`, `η''` (rows: differentials, columns: cycles) and
/// the modulus `Z = ω'^{-1} ω''`.
#[derive(Clone, Debug)]
pub struct PeriodData {
    pub genus: usize,
    pub branch_points: Vec<f64>,
    pub omega1: CMat,
    pub omega2: CMat,
    pub eta1: CMat,
    pub eta2: CMat,
    pub z: CMat,
    pub omega1_inv: CMat,
}

/// Validity diagnostics of a period computation.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodDiagnostics {
    /// `max |Z - Zᵗ|`.
    pub symmetry_error: f64,
    /// Smallest eigenvalue of `Im Z`.
    pub min_imag_eigenvalue: f64,
    /// `max |η' ω'^{-1} - (η' ω'^{-1})ᵗ|`.
    pub eta_symmetry_error: f64,
}

fn numerator_eta(lambda: &[f64], g: usize, j: usize) -> Vec<f64> {
    // η_j numerator Σ_{k=j}^{2g-j} (k+1-j) λ_{2g-k-j} x^k
    let lam = |i: usize| if i == 0 { 1.0 } else { lambda[i - 1] };
    let mut c = vec![0.0; 2 * g + 1];
    for k in j..=2 * g - j {
        c[k] = (k + 1 - j) as f64 * lam(2 * g - k - j);
    }
    c
}

fn eval_poly(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

/// `∫_{e_k}^{e_{k+1}} p(x) dx / √|f(x)|` for each numerator `p`.
fn interval_integrals(roots: &[f64], k: usize, numerators: &[Vec<f64>]) -> Result<Vec<f64>> {
    let (a, b) = (roots[k], roots[k + 1]);
    let (m, w) = ((a + b) / 2.0, (b - a) / 2.0);
    let eval = |n: usize| -> Vec<f64> {
        let mut acc = vec![0.0; numerators.len()];
        for i in 0..n {
            let th = std::f64::consts::PI * (i as f64 + 0.5) / n as f64;
            let x = m + w * th.cos();
            let rest: f64 = roots
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != k && l != k + 1)
                .map(|(_, e)| (x - e).abs())
                .product();
            let inv = 1.0 / rest.sqrt();
            for (s, p) in acc.iter_mut().zip(numerators) {
                *s += eval_poly(p, x) * inv;
            }
        }
        acc.iter().map(|s| s * std::f64::consts::PI / n as f64).collect()
    };
    let mut n = 16;
    let mut prev = eval(n);
    while n < 1 << 18 {
        n *= 3; // tripling keeps the old midpoints among the new ones
        let cur = eval(n);
        let scale = cur.iter().fold(1e-300f64, |m, v| m.max(v.abs()));
        let diff = cur.iter().zip(&prev).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
        // convergence is geometric, so a change at rounding level means done
        if diff <= 1e-13 * scale {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Precision("period quadrature did not converge".into()))
}

/// Smallest eigenvalue of a real symmetric matrix.
fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    let s = (m + m.transpose()) * 0.5;
    s.symmetric_eigen().eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Periods of `ω_j = x^{j-1} dx / 2y` and of `η_j`.
pub fn compute_periods(c: &CurveSpec<Q>) -> Result<PeriodData> {
    let g = c.genus();
    let lambda = c.lambda_f64();
    let roots = real_simple_roots(&c.f_f64())?;
    let mut numerators: Vec<Vec<f64>> = (1..=g)
        .map(|j| {
            let mut v = vec![0.0; j];
            v[j - 1] = 1.0;
            v
        })
        .collect();
    for j in 1..=g {
        numerators.push(numerator_eta(&lambda, g, j));
    }
    // interval k (0-based) lies between roots k and k+1; y(x + i0) = i^{2g-k} √|f|
    let mut ints: Vec<Vec<Complex64>> = Vec::with_capacity(2 * g);
    for k in 0..2 * g {
        let re = interval_integrals(&roots, k, &numerators)?;
        let phase = Complex64::i().powu((2 * g - k) as u32);
        ints.push(re.iter().map(|v| Complex64::new(*v, 0.0) / (phase * 2.0)).collect());
    }
    let cycles = |row: usize| -> (Vec<Complex64>, Vec<Complex64>) {
        let a: Vec<Complex64> = (0..g).map(|i| ints[2 * i][row] * 2.0).collect();
        let b: Vec<Complex64> = (0..g)
            .map(|i| (i..g).map(|k| ints[2 * k + 1][row]).sum::<Complex64>() * 2.0)
            .collect();
        (a, b)
    };
    let mut omega1 = CMat::zeros(g, g);
    let mut omega2 = CMat::zeros(g, g);
    let mut eta1 = CMat::zeros(g, g);
    let mut eta2 = CMat::zeros(g, g);
    for j in 0..g {
        let (a, b) = cycles(j);
        let (ea, eb) = cycles(g + j);
        for i in 0..g {
            omega1[(j, i)] = a[i];
            omega2[(j, i)] = b[i];
            eta1[(j, i)] = ea[i];
            eta2[(j, i)] = eb[i];
        }
    }
    let omega1_inv = omega1
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Conditioning("singular A-period matrix".into()))?;
    let mut z = &omega1_inv * &omega2;
    if min_eigenvalue(&z.map(|v| v.im)) <= 0.0 {
        // opposite orientation of the B-cycles
        omega2 = -omega2;
        eta2 = -eta2;
        z = -z;
    }
    let pd = PeriodData {
        genus: g,
        branch_points: roots,
        omega1,
        omega2,
        eta1,
        eta2,
        z,
        omega1_inv,
    };
    let d = pd.diagnostics();
    if d.min_imag_eigenvalue <= 0.0 {
        return Err(Error::Precision("Im Z is not positive definite".into()));
    }
    Ok(pd)
}

impl PeriodData {
    pub fn diagnostics(&self) -> PeriodDiagnostics {
        let zt = self.z.transpose();
        let symmetry_error = (&self.z - &zt).iter().fold(0.0f64, |m, v| m.max(v.norm()));
        let k = &self.eta1 * &self.omega1_inv;
        let eta_symmetry_error = (&k - k.transpose()).iter().fold(0.0f64, |m, v| m.max(v.norm()));
        PeriodDiagnostics {
            symmetry_error,
            min_imag_eigenvalue: min_eigenvalue(&self.z.map(|v| v.im)),
            eta_symmetry_error,
        }
    }

    /// Lattice vector `ω' m' + ω'' m''`.
    pub fn lattice_vector(&self, m1: &[i64], m2: &[i64]) -> Vec<Complex64> {
        (0..self.genus)
            .map(|j| {
                (0..self.genus)
                    .map(|i| self.omega1[(j, i)] * m1[i] as f64 + self.omega2[(j, i)] * m2[i] as f64)
                    .sum()
            })
            .collect()
    }

    /// The `2g` generators `ω'_1, ..., ω'_g, ω''_1, ..., ω''_g` with their
    /// integer coordinates.
    pub fn generators(&self) -> Vec<(Vec<i64>, Vec<i64>)> {
        let g = self.genus;
        let unit = |i: usize| (0..g).map(|k| (k == i) as i64).collect::<Vec<_>>();
        let zero = vec![0; g];
        (0..g)
            .map(|i| (unit(i), zero.clone()))
            .chain((0..g).map(|i| (zero.clone(), unit(i))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;

    #[test]
    fn genus_two_modulus() {
        let c = CurveSpec::from_roots(&[q(0), q(1), q(2), q(3), q(4)]).unwrap();
        let p = compute_periods(&c).unwrap();
        let d = p.diagnostics();
        assert!(d.symmetry_error < 1e-12, "{d:?}");
        assert!(d.min_imag_eigenvalue > 0.0);
    }

    #[test]
    fn lemniscatic_modulus_is_imaginary() {
        let c = CurveSpec::from_roots(&[q(-1), q(0), q(1)]).unwrap();
        let p = compute_periods(&c).unwrap();
        assert!(p.z[(0, 0)].re.abs() < 1e-13);
    }
}
