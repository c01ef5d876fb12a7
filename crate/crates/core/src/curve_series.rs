//! The curve `y² = x^{2g+1} + λ_1 x^{2g} + ... + λ_{2g+1}` near its point at
//! infinity.
//!
//! With the local parameter `t = 1/√x` one has `x = t^{-2}`,
//! `y = t^{-(2g+1)} √(1 + λ_1 t² + ... + λ_{2g+1} t^{2(2g+1)})` and
//! `u_j = ∫ x^{j-1} dx / 2y = -∫ t^{2g-2j} / √(...) dt`. The branch of the
//! square root is the one giving `u_g = -t + O(t³)` and
//! `y = -1/u_g^{2g+1} + ...`. The hyperelliptic involution is `t ↦ -t`.

use std::sync::Arc;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::rational::{q, to_f64};
use crate::exact::{MPoly, Ring, TruncSeries, UPoly, VarTable, Q};
use crate::numeric::roots::poly_roots;

/// Genus and coefficients `λ_1, ..., λ_{2g+1}` of a monic model; `λ_0 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSpec<R: Ring> {
    genus: usize,
    lambda: Vec<R>,
}

impl<R: Ring> CurveSpec<R> {
    pub fn new(genus: usize, lambda: Vec<R>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::Domain("genus must be at least 1".into()));
        }
        if lambda.len() != 2 * genus + 1 {
            return Err(Error::Dimension(format!(
                "genus {genus} needs {} coefficients, got {}",
                2 * genus + 1,
                lambda.len()
            )));
        }
        Ok(CurveSpec { genus, lambda })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// `λ_1, ..., λ_{2g+1}`.
    pub fn lambda(&self) -> &[R] {
        &self.lambda
    }

    /// `λ_j` for `0 ≤ j ≤ 2g+1`.
    pub fn lambda_at(&self, j: usize) -> R {
        if j == 0 {
            self.lambda[0].one_like()
        } else {
            self.lambda[j - 1].clone()
        }
    }

    pub fn zero(&self) -> R {
        self.lambda[0].zero_like()
    }

    /// `f(x)` with ascending coefficients.
    pub fn f(&self) -> UPoly<R> {
        let d = 2 * self.genus + 1;
        UPoly::new((0..=d).map(|k| self.lambda_at(d - k)).collect(), self.zero())
    }
}

impl CurveSpec<MPoly> {
    /// The curve with indeterminate coefficients `λ_j` of Sato weight `-2j`.
    pub fn symbolic(genus: usize) -> Result<Self> {
        let t = VarTable::lambdas(genus);
        Self::new(genus, (0..2 * genus + 1).map(|i| MPoly::var_at(&t, i)).collect())
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.lambda[0].table()
    }
}

impl CurveSpec<Q> {
    /// Monic curve `Π (x - e_k)` with the given rational roots.
    pub fn from_roots(roots: &[Q]) -> Result<Self> {
        if roots.len() % 2 == 0 {
            return Err(Error::Dimension("need an odd number of roots".into()));
        }
        let mut c = vec![q(1)];
        for e in roots {
            let mut next = vec![q(0); c.len() + 1];
            for (k, a) in c.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * e;
            }
            c = next;
        }
        // c is ascending; λ_j is the coefficient of x^{2g+1-j}
        let d = roots.len();
        Self::new(d / 2, (1..=d).map(|j| c[d - j].clone()).collect())
    }

    pub fn lambda_f64(&self) -> Vec<f64> {
        self.lambda.iter().map(to_f64).collect()
    }

    /// Ascending floating coefficients of `f`.
    pub fn f_f64(&self) -> Vec<f64> {
        self.f().coeffs().iter().map(to_f64).collect()
    }

    /// Exact squarefreeness test, `gcd(f, f') = 1`.
    pub fn is_smooth(&self) -> bool {
        let mut a = self.f();
        let mut b = a.derivative();
        while !b.is_zero() {
            let lead = b.leading().unwrap().clone();
            let monic = b.scale(&(q(1) / lead));
            let (_, r) = a.divrem_monic(&monic);
            a = b;
            b = r;
        }
        a.degree() == Some(0)
    }

    /// True iff `(x, y)` satisfies `y² = f(x)`.
    pub fn contains(&self, x: &Q, y: &Q) -> bool {
        y * y == self.f().eval(x)
    }

    /// Sampling radius `0.3 min_k |r_k|^{-1/2}` over the nonzero roots of `f`.
    pub fn series_radius(&self) -> Result<f64> {
        let roots = poly_roots(&self.f_f64())?;
        let big = roots.iter().map(|r| r.norm()).filter(|&m| m > 1e-12).fold(0.0, f64::max);
        Ok(if big == 0.0 { f64::INFINITY } else { 0.3 / big.sqrt() })
    }
}

/// Expansions at infinity in the local parameter `t`.
#[derive(Clone, Debug)]
pub struct LocalExpansions<R: Ring> {
    pub genus: usize,
    pub order: usize,
    /// `x(t) = t^{-2}`.
    pub x: TruncSeries<R>,
    /// `y(t)` as a Laurent series starting at `t^{-(2g+1)}`.
    pub y: TruncSeries<R>,
    /// `u_1(t), ..., u_g(t)`, each known modulo `t^order`.
    pub u: Vec<TruncSeries<R>>,
    /// Functional inverse `t(u_g)` in the variable `u_g`.
    pub t_of_ug: TruncSeries<R>,
}

fn radicand<R: Ring>(c: &CurveSpec<R>, n: usize) -> TruncSeries<R> {
    let zero = c.zero();
    let mut s = vec![zero.clone(); n];
    for (j, slot) in s.iter_mut().enumerate().step_by(2) {
        if j / 2 <= 2 * c.genus {
            *slot = c.lambda_at(j / 2);
        }
    }
    TruncSeries::new("t", s, n, zero)
}

/// `x`, `y` and `u_1, ..., u_g` without the reversion step.
fn abel_series<R: Ring>(c: &CurveSpec<R>, n: usize) -> Result<(TruncSeries<R>, TruncSeries<R>, Vec<TruncSeries<R>>)> {
    let g = c.genus;
    if n < 2 * g + 3 {
        return Err(Error::Truncation(format!("order {n} below 2g+3 = {}", 2 * g + 3)));
    }
    let zero = c.zero();
    let s = radicand(c, n).sqrt()?;
    let x = TruncSeries::laurent("t", -2, vec![zero.one_like()], n, zero);
    let y = s.shift(-(2 * g as i64 + 1));
    let rs = s.reciprocal()?;
    let u = (1..=g)
        .map(|j| Ok(rs.shift(2 * (g - j) as i64).integrate()?.neg().truncate(n as i64)))
        .collect::<Result<Vec<_>>>()?;
    Ok((x, y, u))
}

/// Laurent expansions of `x`, `y`, `u_j` at infinity to relative order `n`.
pub fn expand_at_infinity<R: Ring>(c: &CurveSpec<R>, n: usize) -> Result<LocalExpansions<R>> {
    let (x, y, u) = abel_series(c, n)?;
    let t_of_ug = u[c.genus - 1].reversion()?.rename("u_g");
    Ok(LocalExpansions {
        genus: c.genus,
        order: n,
        x,
        y,
        u,
        t_of_ug,
    })
}

impl<R: Ring> LocalExpansions<R> {
    /// `x`, `y`, `u_1, ..., u_g` re-expanded in `u_g`.
    pub fn in_ug(&self) -> Result<(TruncSeries<R>, TruncSeries<R>, Vec<TruncSeries<R>>)> {
        let t = &self.t_of_ug;
        let u = self.u.iter().map(|s| s.compose(t)).collect::<Result<Vec<_>>>()?;
        Ok((self.x.compose(t)?, self.y.compose(t)?, u))
    }

    /// `y(t)² - f(x(t))`, which must vanish to the known precision.
    pub fn curve_residual(&self, c: &CurveSpec<R>) -> Result<TruncSeries<R>> {
        // f(x(t)) = t^{-2(2g+1)} (1 + λ_1 t² + ... + λ_{2g+1} t^{2(2g+1)})
        let fx = radicand(c, self.order).shift(-2 * (2 * c.genus as i64 + 1));
        self.y.mul(&self.y)?.sub(&fx)
    }
}

/// A point of the curve near infinity together with its Abel coordinates.
#[derive(Clone, Debug)]
pub struct CurvePoint {
    pub t: Complex64,
    pub x: Complex64,
    pub y: Complex64,
    pub u: Vec<Complex64>,
}

/// Generates curve points from the series branch at infinity, with a
/// step-doubling estimate of the truncation error.
#[derive(Clone, Debug)]
pub struct PointSampler {
    pub curve: CurveSpec<Q>,
    pub order: usize,
    pub radius: f64,
    u: Vec<TruncSeries<Q>>,
}

impl PointSampler {
    /// Expands `u_j(t)` to order `2 order` so that evaluations at `order`
    /// and `2 order` can be compared.
    pub fn new(curve: &CurveSpec<Q>, order: usize) -> Result<Self> {
        let (_, _, u) = abel_series(curve, 2 * order)?;
        Ok(PointSampler {
            curve: curve.clone(),
            order,
            radius: curve.series_radius()?,
            u,
        })
    }

    /// Abel coordinates of the point with parameter `t0`.
    ///
    /// `t0 = 0` is the point at infinity, whose coordinates are zero.
    /// Fails when `|t0|` exceeds the radius or when doubling the order moves
    /// some `u_j` by more than `tol` relative to `|u_g|`.
    pub fn abel_coordinates(&self, t0: Complex64, tol: f64) -> Result<Vec<Complex64>> {
        if t0.is_zero() {
            return Ok(vec![Complex64::zero(); self.curve.genus()]);
        }
        if t0.norm() > self.radius {
            return Err(Error::Convergence(format!(
                "|t0| = {} exceeds the series radius {}",
                t0.norm(),
                self.radius
            )));
        }
        let mut out = Vec::with_capacity(self.u.len());
        let mut err = 0.0f64;
        for s in &self.u {
            let fine = s.eval_c(t0);
            let coarse = s.truncate(self.order as i64).eval_c(t0);
            err = err.max((fine - coarse).norm());
            out.push(fine);
        }
        let scale = out.last().map(|v| v.norm()).unwrap_or(1.0).max(f64::MIN_POSITIVE);
        if err > tol * scale {
            return Err(Error::Convergence(format!(
                "step-doubling error {:e} above tolerance at |t0| = {}",
                err / scale,
                t0.norm()
            )));
        }
        Ok(out)
    }

    /// The full point: `x = t^{-2}` and `y = t^{-(2g+1)} √(1 + Σ λ_j t^{2j})`
    /// on the principal branch, plus its Abel coordinates.
    pub fn point(&self, t0: Complex64, tol: f64) -> Result<CurvePoint> {
        if t0.is_zero() {
            return Err(Error::Domain("t = 0 is the point at infinity".into()));
        }
        let u = self.abel_coordinates(t0, tol)?;
        let (x, y) = point_xy(&self.curve, t0)?;
        Ok(CurvePoint {
            t: t0,
            x,
            y,
            u,
        })
    }
}

/// `x = t^{-2}` and `y = t^{-(2g+1)} √(1 + Σ λ_j t^{2j})` on the principal
/// branch, for `t ≠ 0`.
pub fn point_xy(curve: &CurveSpec<Q>, t0: Complex64) -> Result<(Complex64, Complex64)> {
    if t0.is_zero() {
        return Err(Error::Domain("t = 0 is the point at infinity".into()));
    }
    let t2 = t0 * t0;
    let mut rad = Complex64::new(0.0, 0.0);
    for l in curve.lambda_f64().iter().rev() {
        rad = (rad + l) * t2;
    }
    rad += 1.0;
    let g = curve.genus() as i32;
    Ok((1.0 / t2, rad.sqrt() / t0.powi(2 * g + 1)))
}

/// Coefficients of a rational series, as strings, for JSON output.
pub fn series_json(s: &TruncSeries<Q>) -> serde_json::Value {
    let coeffs: Vec<String> = s.coeffs().iter().map(crate::exact::rational::q_to_string).collect();
    serde_json::json!({ "variable": s.var(), "valuation": s.val(), "precision": s.precision(), "coefficients": coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::qf;

    #[test]
    fn leading_terms() {
        let c = CurveSpec::symbolic(2).unwrap();
        let le = expand_at_infinity(&c, 12).unwrap();
        let one = MPoly::one(c.table());
        assert_eq!(le.u[1].coeff(1).unwrap(), one.neg());
        assert!(le.u[1].coeff(2).unwrap().is_zero());
        assert_eq!(le.u[0].coeff(3).unwrap(), one.scale(&qf(-1, 3)));
        assert!(le.curve_residual(&c).unwrap().is_zero());
    }

    #[test]
    fn from_roots_and_smoothness() {
        let c = CurveSpec::from_roots(&[q(0), q(1), q(-1)]).unwrap();
        assert_eq!(c.lambda(), &[q(0), q(-1), q(0)]);
        assert!(c.is_smooth());
        assert!(!CurveSpec::new(1, vec![q(0), q(0), q(0)]).unwrap().is_smooth());
        assert!(c.contains(&q(1), &q(0)));
    }

    #[test]
    fn order_too_small() {
        let c = CurveSpec::symbolic(2).unwrap();
        assert!(matches!(expand_at_infinity(&c, 6), Err(Error::Truncation(_))));
    }
}
