//! Riemann theta with characteristics, with gradient and Hessian.
//!
//! `θ[a;b](z; Z) = Σ_n exp 2πi(½ (n+a)ᵗ Z (n+a) + (n+a)ᵗ (z+b))`.
//! The sum runs over the lattice points inside an ellipsoid centred at the
//! dominant term; the radius is chosen from a Gaussian tail bound so that
//! the omitted terms stay below `tol` times the dominant term.
//!
//! For half-integer characteristics the terms of `m` and `-m` are summed
//! together as `2w cos(2πm·z)` or `2iw sin(2πm·z)`, with `cos` written as
//! `1 - 2 sin²`. Near `z = 0` this avoids the cancellation between
//! opposite terms, and when `θ[a;b](0) = 0` is known the constant part can
//! be dropped altogether.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::periods::CMat;
use crate::error::{Error, Result};

/// Most lattice points a single evaluation may visit.
pub const INDEX_BUDGET: usize = 4_000_000;

/// `θ`, `∂θ/∂z_i` and `∂²θ/∂z_i∂z_j` at one point.
#[derive(Clone, Debug)]
pub struct ThetaJet {
    pub value: Complex64,
    pub grad: Vec<Complex64>,
    pub hess: DMatrix<Complex64>,
    /// Number of lattice points summed.
    pub terms: usize,
}

/// A theta function with fixed modulus and characteristic.
#[derive(Clone, Debug)]
pub struct Theta {
    z: CMat,
    y: DMatrix<f64>,
    y_inv: DMatrix<f64>,
    lam_min: f64,
    a: Vec<f64>,
    b: Vec<f64>,
    /// `(-1)^{4a·b}` when `2a` and `2b` are integral: the term of `-m` is
    /// this sign times the mirror image of the term of `m`.
    mirror: Option<f64>,
    origin_zero: bool,
}

fn half_integral(v: &[f64]) -> bool {
    v.iter().all(|x| (2.0 * x - (2.0 * x).round()).abs() < 1e-12)
}

/// `m` is the representative of `{m, -m}`: its first nonzero entry is positive.
fn canonical(m: &[f64]) -> bool {
    m.iter().find(|v| v.abs() > 1e-9).map_or(true, |&v| v > 0.0)
}

impl Theta {
    pub fn new(z: &CMat, a: &[f64], b: &[f64]) -> Result<Self> {
        let g = z.nrows();
        if z.ncols() != g || a.len() != g || b.len() != g {
            return Err(Error::Dimension("theta modulus and characteristic".into()));
        }
        let y = z.map(|v| v.im);
        let y = (&y + y.transpose()) * 0.5;
        if y.clone().cholesky().is_none() {
            return Err(Error::Domain("Im Z is not positive definite".into()));
        }
        let y_inv = y.clone().try_inverse().ok_or_else(|| Error::Conditioning("Im Z".into()))?;
        let lam_min = y.clone().symmetric_eigen().eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        let mirror = (half_integral(a) && half_integral(b)).then(|| {
            let e: f64 = a.iter().zip(b).map(|(x, y)| 4.0 * x * y).sum();
            if (e.round() as i64) % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        });
        Ok(Theta {
            z: z.clone(),
            y,
            y_inv,
            lam_min,
            a: a.to_vec(),
            b: b.to_vec(),
            mirror,
            origin_zero: false,
        })
    }

    /// Declares `θ[a;b](0) = 0` for an even characteristic, after checking
    /// it numerically to `tol`; the constant part of the paired sum is then
    /// omitted. Returns `|θ(0)|` relative to the sum of the term moduli.
    pub fn assume_zero_at_origin(&mut self, tol: f64) -> Result<f64> {
        if self.mirror != Some(1.0) {
            return Err(Error::Unsupported("only even half-integer characteristics".into()));
        }
        let g = self.genus();
        let zero = vec![Complex64::new(0.0, 0.0); g];
        let (value, weight) = self.sum(&zero, tol, false)?;
        let rel = value.value.norm() / weight;
        if rel > 1e3 * tol.max(1e-16) {
            return Err(Error::Domain(format!("theta does not vanish at the origin ({rel:e})")));
        }
        self.origin_zero = true;
        Ok(rel)
    }

    pub fn genus(&self) -> usize {
        self.a.len()
    }

    /// Ellipsoid radius `R` with `Σ_{|m|_Y > R} |m|^2 e^{-π|m|_Y²} < tol`
    /// relative to the dominant term, using a crude lattice count.
    fn radius(&self, tol: f64) -> f64 {
        let g = self.genus() as f64;
        let lam_min = self.lam_min;
        // lattice points in a shell of Y-radius R ~ (R + c)^g / sqrt(det Y); polynomial
        // weight from the second derivatives ~ R^2 / lam_min
        let mut r = 1.0f64;
        loop {
            let count = (2.0 * (r + 1.0) / lam_min.sqrt()).powf(g) + 1.0;
            let weight = (r * r / lam_min).max(1.0) * 4.0 * std::f64::consts::PI.powi(2);
            if count * weight * (-std::f64::consts::PI * r * r).exp() < tol {
                return r;
            }
            r += 0.25;
        }
    }

    /// Value, gradient and Hessian at `z`, with relative truncation
    /// tolerance `tol`.
    pub fn jet(&self, z: &[Complex64], tol: f64) -> Result<ThetaJet> {
        Ok(self.sum(z, tol, self.origin_zero)?.0)
    }

    /// The jet and the sum of the moduli of the terms.
    fn sum(&self, z: &[Complex64], tol: f64, drop_constant: bool) -> Result<(ThetaJet, f64)> {
        let g = self.genus();
        if z.len() != g {
            return Err(Error::Dimension("theta argument".into()));
        }
        let im = DVector::from_iterator(g, z.iter().map(|v| v.im));
        // |term| = exp(-π (m+c)ᵗY(m+c) + π cᵗYc), m = n + a, c = Y^{-1} Im z
        let c = &self.y_inv * im;
        let center: Vec<f64> = (0..g).map(|i| -c[i] - self.a[i]).collect();
        let r = self.radius(tol);
        let half: Vec<i64> = (0..g).map(|i| (r * self.y_inv[(i, i)].sqrt()).ceil() as i64 + 1).collect();
        let lo: Vec<i64> = (0..g).map(|i| center[i].round() as i64 - half[i]).collect();
        let total: usize = half.iter().map(|h| (2 * h + 1) as usize).product();
        if total > INDEX_BUDGET {
            return Err(Error::Precision(format!(
                "theta truncation needs {total} lattice points, budget {INDEX_BUDGET}"
            )));
        }
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        let zb: Vec<Complex64> = (0..g).map(|i| z[i] + self.b[i]).collect();
        let mut value = Complex64::new(0.0, 0.0);
        let mut grad = vec![Complex64::new(0.0, 0.0); g];
        let mut hess = DMatrix::from_element(g, g, Complex64::new(0.0, 0.0));
        let mut terms = 0usize;
        let mut weight = 0.0f64;
        let mut constant = Complex64::new(0.0, 0.0);
        let mut n = lo.clone();
        let mut m = vec![0.0; g];
        let quad = |m: &[f64], sign: f64| -> f64 {
            let mut q = 0.0;
            for i in 0..g {
                for j in 0..g {
                    q += (sign * m[i] + c[i]) * self.y[(i, j)] * (sign * m[j] + c[j]);
                }
            }
            q
        };
        let two_pi = 2.0 * std::f64::consts::PI;
        loop {
            for i in 0..g {
                m[i] = n[i] as f64 + self.a[i];
            }
            let inside = quad(&m, 1.0) <= r * r;
            let is_zero = m.iter().all(|v| v.abs() < 1e-9);
            match self.mirror {
                Some(s) if !is_zero => {
                    // visit each pair once: from its representative, or from the
                    // other member when the representative lies outside
                    let rep = canonical(&m);
                    let take = inside && (rep || quad(&m, -1.0) > r * r);
                    if take {
                        // w = exp πi(mᵗZm + 2m·b); pair = w (e^{ix} + s e^{-ix}), x = 2πm·z
                        let mut e = Complex64::new(0.0, 0.0);
                        let mut x = Complex64::new(0.0, 0.0);
                        for i in 0..g {
                            let mut zm = Complex64::new(0.0, 0.0);
                            for j in 0..g {
                                zm += self.z[(i, j)] * m[j];
                            }
                            e += m[i] * (zm * 0.5 + self.b[i]);
                            x += z[i] * m[i];
                        }
                        let w = (two_pi_i * e).exp();
                        let x = x * two_pi;
                        weight += 2.0 * w.norm() * x.im.abs().exp();
                        let (v, d1, d2) = if s > 0.0 {
                            let half = (x * 0.5).sin();
                            constant += w * 2.0;
                            (w * (-4.0) * half * half, w * (-2.0) * x.sin(), w * (-2.0) * x.cos())
                        } else {
                            let i2 = Complex64::new(0.0, 2.0);
                            (w * i2 * x.sin(), w * i2 * x.cos(), -w * i2 * x.sin())
                        };
                        value += v;
                        for i in 0..g {
                            grad[i] += d1 * two_pi * m[i];
                            for j in 0..=i {
                                hess[(i, j)] += d2 * two_pi * two_pi * m[i] * m[j];
                            }
                        }
                        terms += 2;
                    }
                }
                _ if inside => {
                    let mut e = Complex64::new(0.0, 0.0);
                    for i in 0..g {
                        let mut zm = Complex64::new(0.0, 0.0);
                        for j in 0..g {
                            zm += self.z[(i, j)] * m[j];
                        }
                        e += m[i] * (zm * 0.5 + zb[i]);
                    }
                    let t = (two_pi_i * e).exp();
                    weight += t.norm();
                    value += t;
                    for i in 0..g {
                        let ti = t * two_pi_i * m[i];
                        grad[i] += ti;
                        for j in 0..=i {
                            hess[(i, j)] += ti * two_pi_i * m[j];
                        }
                    }
                    terms += 1;
                }
                _ => {}
            }
            // odometer over the box
            let mut k = 0;
            loop {
                if k == g {
                    for i in 0..g {
                        for j in 0..i {
                            hess[(j, i)] = hess[(i, j)];
                        }
                    }
                    if !drop_constant {
                        value += constant;
                    }
                    return Ok((ThetaJet { value, grad, hess, terms }, weight));
                }
                n[k] += 1;
                if n[k] <= lo[k] + 2 * half[k] {
                    break;
                }
                n[k] = lo[k];
                k += 1;
            }
        }
    }

    pub fn value(&self, z: &[Complex64], tol: f64) -> Result<Complex64> {
        Ok(self.jet(z, tol)?.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn genus_one_jacobi_identity() {
        // θ_3^4 = θ_2^4 + θ_4^4 at z = 0
        let z = CMat::from_element(1, 1, c(0.1, 1.3));
        let th = |a: f64, b: f64| Theta::new(&z, &[a], &[b]).unwrap().value(&[c(0.0, 0.0)], 1e-16).unwrap();
        let (t2, t3, t4) = (th(0.5, 0.0), th(0.0, 0.0), th(0.0, 0.5));
        assert!((t3.powi(4) - t2.powi(4) - t4.powi(4)).norm() < 1e-13);
    }

    #[test]
    fn quasi_periodicity_and_derivatives() {
        let z = CMat::from_row_slice(2, 2, &[c(0.2, 1.1), c(0.3, 0.4), c(0.3, 0.4), c(-0.1, 0.9)]);
        let th = Theta::new(&z, &[0.5, 0.5], &[1.0, 0.5]).unwrap();
        let p = [c(0.13, -0.07), c(0.21, 0.05)];
        let v = th.value(&p, 1e-16).unwrap();
        // shift by the first column of Z
        let shifted = [p[0] + z[(0, 0)], p[1] + z[(1, 0)]];
        let m = [1.0, 0.0];
        let factor = (c(0.0, 2.0 * std::f64::consts::PI)
            * (-(0.5 * m[0] * z[(0, 0)]) - p[0] - c(1.0, 0.0)))
            .exp();
        let w = th.value(&shifted, 1e-16).unwrap();
        assert!((w - v * factor).norm() < 1e-12 * v.norm().max(1.0));
        let jet = th.jet(&p, 1e-16).unwrap();
        let h = 1e-5;
        let fd = (th.value(&[p[0], p[1] + h], 1e-16).unwrap() - th.value(&[p[0], p[1] - h], 1e-16).unwrap())
            / (2.0 * h);
        assert!((fd - jet.grad[1]).norm() < 1e-7 * jet.grad[1].norm().max(1.0));
    }
}
