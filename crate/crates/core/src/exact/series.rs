//! Truncated univariate power series with an optional Laurent shift.
//!
//! A [`TruncSeries`] stands for `t^val (c_0 + c_1 t + ... + c_{N-1} t^{N-1}) + O(t^{val+N})`.
//! `N` is the relative truncation order; `val + N` is the absolute precision.
//! Binary operations keep the smaller precision, so precision loss is always
//! visible in the result.

use num_complex::Complex64;
use num_traits::Zero;

use super::mpoly::MPoly;
use super::rational::{to_f64, Q};
use super::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct TruncSeries<R: Ring> {
    var: String,
    val: i64,
    coeffs: Vec<R>,
    zero: R,
}

/// Two series are equal when they share variable and precision and agree on
/// every known coefficient, whatever their internal shift.
impl<R: Ring> PartialEq for TruncSeries<R> {
    fn eq(&self, o: &Self) -> bool {
        if self.var != o.var || self.precision() != o.precision() {
            return false;
        }
        let lo = self.val.min(o.val);
        (lo..self.precision()).all(|e| self.coeff(e) == o.coeff(e))
    }
}

impl<R: Ring> TruncSeries<R> {
    /// Power series `Σ coeffs[k] t^k + O(t^order)`; missing coefficients are zero.
    pub fn new(var: &str, coeffs: Vec<R>, order: usize, zero: R) -> Self {
        Self::laurent(var, 0, coeffs, order, zero)
    }

    /// Laurent series `t^val Σ coeffs[k] t^k + O(t^{val+order})`.
    pub fn laurent(var: &str, val: i64, mut coeffs: Vec<R>, order: usize, zero: R) -> Self {
        coeffs.resize(order, zero.clone());
        TruncSeries {
            var: var.to_string(),
            val,
            coeffs,
            zero,
        }
    }

    /// The constant `c` known to `O(t^order)`.
    pub fn constant(var: &str, c: R, order: usize) -> Self {
        let zero = c.zero_like();
        Self::new(var, vec![c], order, zero)
    }

    /// The formal variable `t` known to `O(t^order)`.
    pub fn variable(var: &str, one: R, order: usize) -> Self {
        let zero = one.zero_like();
        Self::new(var, vec![zero.clone(), one], order, zero)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// Laurent shift.
    pub fn val(&self) -> i64 {
        self.val
    }

    /// Relative truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Absolute precision: the series is known modulo `t^precision`.
    pub fn precision(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    pub fn ring_zero(&self) -> &R {
        &self.zero
    }

    /// Stored coefficients, `coeffs()[k]` belongs to `t^{val+k}`.
    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `t^e`; zero below the shift, `None` beyond the precision.
    pub fn coeff(&self, e: i64) -> Option<R> {
        if e >= self.precision() {
            None
        } else if e < self.val {
            Some(self.zero.clone())
        } else {
            Some(self.coeffs[(e - self.val) as usize].clone())
        }
    }

    /// Exponent of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|k| self.val + k as i64)
    }

    /// True iff every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_var(&self, o: &Self) -> Result<()> {
        if self.var != o.var {
            Err(Error::IncompatibleVariables(self.var.clone(), o.var.clone()))
        } else {
            Ok(())
        }
    }

    /// Drops leading zero coefficients into the shift.
    pub fn normalized(&self) -> Self {
        let k = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len());
        TruncSeries {
            var: self.var.clone(),
            val: self.val + k as i64,
            coeffs: self.coeffs[k..].to_vec(),
            zero: self.zero.clone(),
        }
    }

    /// Re-expresses with shift `val`, which must not exceed the valuation.
    pub fn with_val(&self, val: i64) -> Self {
        let prec = self.precision();
        let n = (prec - val).max(0) as usize;
        let coeffs = (0..n)
            .map(|k| self.coeff(val + k as i64).unwrap())
            .collect();
        TruncSeries {
            var: self.var.clone(),
            val,
            coeffs,
            zero: self.zero.clone(),
        }
    }

    /// Lowers the absolute precision to `prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        let mut s = self.clone();
        let n = (prec - self.val).clamp(0, self.coeffs.len() as i64) as usize;
        s.coeffs.truncate(n);
        s
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_var(o)?;
        let val = self.val.min(o.val);
        let prec = self.precision().min(o.precision());
        let n = (prec - val).max(0) as usize;
        let coeffs = (0..n)
            .map(|k| {
                let e = val + k as i64;
                self.coeff(e).unwrap().add(&o.coeff(e).unwrap())
            })
            .collect();
        Ok(TruncSeries {
            var: self.var.clone(),
            val,
            coeffs,
            zero: self.zero.clone(),
        })
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        s.coeffs = s.coeffs.iter().map(|c| c.neg()).collect();
        s
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_var(o)?;
        if self.coeffs.first().is_some_and(|c| c.is_zero()) {
            return self.normalized().mul(o);
        }
        if o.coeffs.first().is_some_and(|c| c.is_zero()) {
            return self.mul(&o.normalized());
        }
        let n = self.order().min(o.order());
        let mut coeffs = vec![self.zero.clone(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Ok(TruncSeries {
            var: self.var.clone(),
            val: self.val + o.val,
            coeffs,
            zero: self.zero.clone(),
        })
    }

    /// Multiplies every coefficient by a ring element.
    pub fn mul_coeff(&self, c: &R) -> Self {
        let mut s = self.clone();
        s.coeffs = s.coeffs.iter().map(|a| a.mul(c)).collect();
        s
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut s = self.clone();
        s.coeffs = s.coeffs.iter().map(|a| a.scale(c)).collect();
        s
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut s = self.clone();
        s.val += k;
        s
    }

    /// `d/dt`.
    pub fn differentiate(&self) -> Self {
        let coeffs: Vec<R> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale(&Q::from_integer((self.val + k as i64).into())))
            .collect();
        let s = TruncSeries {
            var: self.var.clone(),
            val: self.val - 1,
            coeffs,
            zero: self.zero.clone(),
        };
        if self.val == 0 {
            s.with_val(0)
        } else {
            s
        }
    }

    /// Antiderivative without constant term. Fails on a `t^{-1}` term.
    pub fn integrate(&self) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = self.val + k as i64;
            if e == -1 {
                if !c.is_zero() {
                    return Err(Error::Domain("cannot integrate a t^-1 term".into()));
                }
                coeffs.push(self.zero.clone());
            } else {
                coeffs.push(c.scale(&Q::new(1.into(), (e + 1).into())));
            }
        }
        let s = TruncSeries {
            var: self.var.clone(),
            val: self.val + 1,
            coeffs,
            zero: self.zero.clone(),
        };
        Ok(if self.val == -1 { s.normalized() } else { s })
    }

    /// Multiplicative inverse. The first nonzero coefficient must be a unit.
    pub fn reciprocal(&self) -> Result<Self> {
        let s = self.normalized();
        if s.coeffs.is_empty() {
            return Err(Error::Domain("reciprocal of a series with no known nonzero term".into()));
        }
        let inv0 = s.coeffs[0]
            .inverse()
            .ok_or_else(|| Error::Domain("reciprocal needs a unit leading coefficient".into()))?;
        let n = s.coeffs.len();
        let mut b: Vec<R> = Vec::with_capacity(n);
        b.push(inv0.clone());
        for k in 1..n {
            let mut acc = self.zero.clone();
            for i in 1..=k {
                if !s.coeffs[i].is_zero() {
                    acc = acc.add(&s.coeffs[i].mul(&b[k - i]));
                }
            }
            b.push(acc.mul(&inv0).neg());
        }
        Ok(TruncSeries {
            var: self.var.clone(),
            val: -s.val,
            coeffs: b,
            zero: self.zero.clone(),
        })
    }

    /// Square root of a power series with constant term 1.
    pub fn sqrt(&self) -> Result<Self> {
        let s = if self.val > 0 { self.clone() } else { self.with_val(0) };
        let ok = self.val <= 0
            && s.coeffs.first().is_some_and(|c| c.is_one())
            && (self.val == 0 || self.coeffs[..(-self.val) as usize].iter().all(|c| c.is_zero()));
        if !ok {
            return Err(Error::Domain("series_sqrt needs constant term 1".into()));
        }
        let n = s.coeffs.len();
        let half = Q::new(1.into(), 2.into());
        let mut r: Vec<R> = Vec::with_capacity(n);
        r.push(s.coeffs[0].one_like());
        for k in 1..n {
            let mut acc = s.coeffs[k].clone();
            for i in 1..k {
                acc = acc.sub(&r[i].mul(&r[k - i]));
            }
            r.push(acc.scale(&half));
        }
        Ok(TruncSeries {
            var: self.var.clone(),
            val: 0,
            coeffs: r,
            zero: self.zero.clone(),
        })
    }

    /// Integer power, negative exponents through [`Self::reciprocal`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.reciprocal()? } else { self.normalized() };
        let mut e = e.unsigned_abs();
        let one = self.zero.one_like();
        let mut acc = TruncSeries::constant(&self.var, one, base.order());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// `self(inner(s))`. The inner series must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let g = inner.normalized();
        let m = g.val;
        if g.coeffs.is_empty() {
            return Err(Error::Domain("composition with an unknown inner series".into()));
        }
        if m < 1 {
            return Err(Error::Domain("composition needs an inner series with zero constant term".into()));
        }
        let f = self.normalized();
        if f.coeffs.is_empty() {
            return Ok(TruncSeries::laurent(&inner.var, f.val * m, vec![], 0, self.zero.clone()));
        }
        // f = t^v F(t), so f(g) = g^v F(g); F(g) is known to O(t^min(m N, prec g)).
        let p = (m * f.order() as i64).min(inner.precision()).max(1);
        let gq = g.with_val(0).truncate(p);
        let n = f.order();
        let mut acc = TruncSeries::constant(&inner.var, f.coeffs[n - 1].clone(), p as usize);
        for k in (0..n - 1).rev() {
            let c = TruncSeries::constant(&inner.var, f.coeffs[k].clone(), p as usize);
            acc = acc.mul(&gq)?.add(&c)?;
        }
        if f.val == 0 {
            Ok(acc)
        } else {
            acc.mul(&g.pow(f.val)?)
        }
    }

    /// Functional inverse of a series `a t + O(t^2)` with `a` a unit.
    pub fn reversion(&self) -> Result<Self> {
        let s = self.with_val(0);
        let n = s.order();
        if n < 2 || !s.coeffs[0].is_zero() {
            return Err(Error::Domain("reversion needs zero constant term".into()));
        }
        let a_inv = s.coeffs[1]
            .inverse()
            .ok_or_else(|| Error::Domain("reversion needs a unit linear coefficient".into()))?;
        let mut h = vec![self.zero.clone(); n];
        h[1] = a_inv.clone();
        for k in 2..n {
            let hs = TruncSeries::new(&self.var, h.clone(), k + 1, self.zero.clone());
            let c = s.truncate(k as i64 + 1).compose(&hs)?;
            let ck = c.coeff(k as i64).unwrap_or_else(|| self.zero.clone());
            h[k] = ck.mul(&a_inv).neg();
        }
        Ok(TruncSeries::new(&self.var, h, n, self.zero.clone()))
    }

    /// Keeps only the coefficients of even (`parity = 0`) or odd exponents.
    pub fn parity_part(&self, parity: i64) -> Self {
        let mut s = self.clone();
        for (k, c) in s.coeffs.iter_mut().enumerate() {
            if (self.val + k as i64).rem_euclid(2) != parity {
                *c = self.zero.clone();
            }
        }
        s
    }

    /// The same series in another formal variable.
    pub fn rename(&self, var: &str) -> Self {
        let mut s = self.clone();
        s.var = var.to_string();
        s
    }

    /// Applies `f` to every coefficient.
    pub fn map<S: Ring>(&self, zero: S, f: impl Fn(&R) -> S) -> TruncSeries<S> {
        TruncSeries {
            var: self.var.clone(),
            val: self.val,
            coeffs: self.coeffs.iter().map(f).collect(),
            zero,
        }
    }
}

impl TruncSeries<Q> {
    /// Floating evaluation of the truncated sum at a complex point.
    pub fn eval_c(&self, t: Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + Complex64::new(to_f64(c), 0.0);
        }
        acc * t.powi(self.val as i32)
    }

    /// Exact evaluation of the truncated sum at a rational point.
    pub fn eval_q(&self, t: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc * num_traits::pow::Pow::pow(t, self.val as i32)
    }
}

impl TruncSeries<MPoly> {
    /// True iff each coefficient of `t^e` is Sato-homogeneous of weight
    /// `w - e`, so the whole series has weight `w` with `t` of weight 1.
    pub fn check_sato_homogeneous(&self, w: i64) -> Result<bool> {
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = self.val + k as i64;
            if !c.check_sato_homogeneous(w - e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qf};

    fn s(v: &[Q], n: usize) -> TruncSeries<Q> {
        TruncSeries::new("t", v.to_vec(), n, Q::zero())
    }

    #[test]
    fn derivative_of_cube() {
        let a = s(&[q(0), q(0), q(0), qf(1, 3)], 6);
        assert_eq!(a.differentiate(), s(&[q(0), q(0), q(1)], 5));
    }

    #[test]
    fn geometric_series() {
        let a = s(&[q(1), q(-1)], 4);
        assert_eq!(a.reciprocal().unwrap(), s(&[q(1), q(1), q(1), q(1)], 4));
    }

    #[test]
    fn binomial_sqrt() {
        let a = s(&[q(1), q(0), q(3)], 5);
        let r = a.sqrt().unwrap();
        assert_eq!(r, s(&[q(1), q(0), qf(3, 2), q(0), qf(-9, 8)], 5));
        assert!(s(&[q(2)], 3).sqrt().is_err());
    }

    #[test]
    fn reversion_round_trip() {
        let a = s(&[q(0), q(-1), q(0), qf(2, 3), q(5)], 8);
        let h = a.reversion().unwrap();
        let id = a.compose(&h).unwrap();
        assert_eq!(id, s(&[q(0), q(1)], 8));
    }

    #[test]
    fn mismatched_variables() {
        let a = s(&[q(1)], 3);
        let b = TruncSeries::new("v", vec![q(1)], 3, Q::zero());
        assert!(matches!(a.add(&b), Err(Error::IncompatibleVariables(_, _))));
    }

    #[test]
    fn laurent_reciprocal() {
        let a = s(&[q(0), q(0), q(1), q(1)], 6);
        let r = a.reciprocal().unwrap();
        assert_eq!(r.val(), -2);
        assert_eq!(a.mul(&r).unwrap().with_val(0), s(&[q(1)], 4));
    }
}
