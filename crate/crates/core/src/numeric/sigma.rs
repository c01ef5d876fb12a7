//! The sigma function `σ(u) = c exp(-½ uᵗ η'ω'^{-1} u) θ[δ](ω'^{-1}u; Z)`.
//!
//! The constant `c` is fixed by the lowest Taylor part: it must equal the
//! Hankel determinant `det(u_{i+j-1})` of size `⌈g/2⌉`, whose diagonal
//! monomial is `u_1 u_3 ⋯ u_{2h-1}`. Indices of `u` are 1-based in the
//! public API, as in the index sets `♮^n`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::periods::{compute_periods, CMat, PeriodData};
use super::theta::Theta;
use crate::curve_series::CurveSpec;
use crate::error::{Error, Result};
use crate::exact::Q;
use crate::schur::natural_set;

/// The characteristic `δ = [δ''; δ']`, `δ'' = (½, …, ½)`,
/// `δ' = (g/2, (g-1)/2, …, ½)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaChar {
    pub delta1: Vec<f64>,
    pub delta2: Vec<f64>,
}

impl ThetaChar {
    pub fn for_genus(g: usize) -> Self {
        ThetaChar {
            delta1: (0..g).map(|i| (g - i) as f64 / 2.0).collect(),
            delta2: vec![0.5; g],
        }
    }

    /// Odd exactly when `(2δ')·(2δ'')` is odd.
    pub fn is_odd(&self) -> bool {
        let s: f64 = self.delta1.iter().zip(&self.delta2).map(|(a, b)| 4.0 * a * b).sum();
        (s.round() as i64) % 2 != 0
    }
}

/// `σ`, its gradient and Hessian at one point.
#[derive(Clone, Debug)]
pub struct SigmaJet {
    pub value: Complex64,
    pub grad: Vec<Complex64>,
    pub hess: DMatrix<Complex64>,
}

impl SigmaJet {
    /// Derivative along a multi-index of 1-based indices, order ≤ 2.
    pub fn derivative(&self, idx: &[usize]) -> Result<Complex64> {
        match idx {
            [] => Ok(self.value),
            [i] => Ok(self.grad[i - 1]),
            [i, j] => Ok(self.hess[(i - 1, j - 1)]),
            _ => Err(Error::Unsupported("sigma derivatives above order 2".into())),
        }
    }
}

/// How well the normalized σ matches the Hankel lowest part.
#[derive(Clone, Debug, Serialize)]
pub struct NormalizationReport {
    pub constant: [f64; 2],
    /// Largest Taylor coefficient at 0 of order ≤ h that should vanish,
    /// relative to the normalizing one.
    pub hankel_residual: f64,
}

/// Evaluates the normalized sigma function of a curve with real branch
/// points.
#[derive(Clone, Debug)]
pub struct SigmaEvaluator {
    pub curve: CurveSpec<Q>,
    pub periods: PeriodData,
    pub chr: ThetaChar,
    pub tol: f64,
    theta: Theta,
    quad: CMat,
    c: Option<Complex64>,
}

fn hankel_size(g: usize) -> usize {
    (g + 1) / 2
}

impl SigmaEvaluator {
    /// Periods and theta, not yet normalized.
    pub fn new(curve: &CurveSpec<Q>, tol: f64) -> Result<Self> {
        let periods = compute_periods(curve)?;
        let chr = ThetaChar::for_genus(curve.genus());
        let mut theta = Theta::new(&periods.z, &chr.delta2, &chr.delta1)?;
        if !chr.is_odd() {
            // δ is the Riemann constant, so θ[δ] vanishes at the origin
            theta.assume_zero_at_origin(tol)?;
        }
        let k = &periods.eta1 * &periods.omega1_inv;
        let quad = (&k + k.transpose()) * Complex64::new(0.5, 0.0);
        Ok(SigmaEvaluator {
            curve: curve.clone(),
            periods,
            chr,
            tol,
            theta,
            quad,
            c: None,
        })
    }

    /// Periods, theta and normalization in one step.
    pub fn normalized(curve: &CurveSpec<Q>, tol: f64) -> Result<Self> {
        let mut ev = Self::new(curve, tol)?;
        ev.normalize()?;
        Ok(ev)
    }

    pub fn genus(&self) -> usize {
        self.curve.genus()
    }

    pub fn constant(&self) -> Option<Complex64> {
        self.c
    }

    /// Unnormalized `σ̃` with gradient and Hessian.
    pub fn tilde_jet(&self, u: &[Complex64]) -> Result<SigmaJet> {
        let g = self.genus();
        if u.len() != g {
            return Err(Error::Dimension(format!("expected {g} coordinates")));
        }
        let m = &self.periods.omega1_inv;
        let z: Vec<Complex64> = (0..g).map(|a| (0..g).map(|i| m[(a, i)] * u[i]).sum()).collect();
        let th = self.theta.jet(&z, self.tol)?;
        // q = -½ uᵗKu, ∇q = -Ku, ∇²q = -K
        let ku: Vec<Complex64> = (0..g).map(|i| (0..g).map(|j| self.quad[(i, j)] * u[j]).sum()).collect();
        let qv: Complex64 = -(0..g).map(|i| u[i] * ku[i]).sum::<Complex64>() * 0.5;
        let dq: Vec<Complex64> = ku.iter().map(|v| -v).collect();
        let e = qv.exp();
        // derivatives of θ(Mu) in u
        let tg: Vec<Complex64> = (0..g).map(|i| (0..g).map(|a| m[(a, i)] * th.grad[a]).sum()).collect();
        let th_u = m.transpose() * &th.hess * m;
        let value = e * th.value;
        let grad: Vec<Complex64> = (0..g).map(|i| e * (dq[i] * th.value + tg[i])).collect();
        let mut hess = DMatrix::from_element(g, g, Complex64::new(0.0, 0.0));
        for i in 0..g {
            for j in 0..g {
                hess[(i, j)] = e
                    * ((dq[i] * dq[j] - self.quad[(i, j)]) * th.value
                        + dq[i] * tg[j]
                        + dq[j] * tg[i]
                        + th_u[(i, j)]);
            }
        }
        Ok(SigmaJet { value, grad, hess })
    }

    /// Fixes `c` so that the lowest Taylor part of `σ` is the Hankel
    /// determinant. Supports `g ≤ 4`, where that part has degree ≤ 2.
    pub fn normalize(&mut self) -> Result<NormalizationReport> {
        let g = self.genus();
        if g > 4 {
            return Err(Error::Unsupported("normalization needs derivatives above order 2".into()));
        }
        let zero = vec![Complex64::new(0.0, 0.0); g];
        let jet = self.tilde_jet(&zero)?;
        let h = hankel_size(g);
        let (lead, mut others): (Complex64, Vec<Complex64>) = if h == 1 {
            let others = std::iter::once(jet.value).chain(jet.grad.iter().skip(1).cloned()).collect();
            (jet.grad[0], others)
        } else {
            // u_1 u_3 - u_2² (g = 3, 4)
            let mut others = vec![jet.value];
            others.extend(jet.grad.iter().cloned());
            for i in 0..g {
                for j in i..g {
                    match (i, j) {
                        (0, 2) => {}
                        (1, 1) => others.push(jet.hess[(1, 1)] + jet.hess[(0, 2)] * 2.0),
                        _ => others.push(jet.hess[(i, j)]),
                    }
                }
            }
            (jet.hess[(0, 2)], others)
        };
        if lead.norm() == 0.0 {
            return Err(Error::Precision("normalizing derivative vanished".into()));
        }
        others.iter_mut().for_each(|v| *v /= lead);
        let hankel_residual = others.iter().fold(0.0f64, |m, v| m.max(v.norm()));
        let c = 1.0 / lead;
        self.c = Some(c);
        Ok(NormalizationReport {
            constant: [c.re, c.im],
            hankel_residual,
        })
    }

    fn scale(&self) -> Result<Complex64> {
        self.c.ok_or_else(|| Error::State("sigma evaluator is not normalized".into()))
    }

    /// `σ(u)` with gradient and Hessian.
    pub fn jet(&self, u: &[Complex64]) -> Result<SigmaJet> {
        let c = self.scale()?;
        let j = self.tilde_jet(u)?;
        Ok(SigmaJet {
            value: j.value * c,
            grad: j.grad.iter().map(|v| v * c).collect(),
            hess: j.hess * c,
        })
    }

    pub fn sigma(&self, u: &[Complex64]) -> Result<Complex64> {
        Ok(self.jet(u)?.value)
    }

    /// Derivative along 1-based indices, order ≤ 2.
    pub fn sigma_deriv(&self, u: &[Complex64], idx: &[usize]) -> Result<Complex64> {
        if idx.len() > 2 {
            return Err(Error::Unsupported("sigma derivatives above order 2".into()));
        }
        self.jet(u)?.derivative(idx)
    }

    /// `σ_{♮^n}(u)`.
    pub fn sigma_natural(&self, u: &[Complex64], n: usize) -> Result<Complex64> {
        let set = natural_set(n, self.genus());
        self.sigma_deriv(u, &set.indices)
    }

    pub fn sigma_sharp(&self, u: &[Complex64]) -> Result<Complex64> {
        self.sigma_natural(u, 1)
    }

    pub fn sigma_flat(&self, u: &[Complex64]) -> Result<Complex64> {
        self.sigma_natural(u, 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_parity() {
        let odd: Vec<bool> = (1..=8).map(|g| ThetaChar::for_genus(g).is_odd()).collect();
        assert_eq!(odd, vec![true, true, false, false, true, true, false, false]);
    }
}
