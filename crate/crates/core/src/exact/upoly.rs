//! Dense univariate polynomials over a [`Ring`].

use super::rational::Q;
use super::Ring;

/// `c[0] + c[1] x + ... + c[d] x^d` with no trailing zero coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<R: Ring> {
    coeffs: Vec<R>,
    zero: R,
}

impl<R: Ring> UPoly<R> {
    /// Builds a polynomial; `zero` fixes the ambient ring of the coefficients.
    pub fn new(coeffs: Vec<R>, zero: R) -> Self {
        let mut p = UPoly { coeffs, zero };
        p.trim();
        p
    }

    pub fn zero(zero: R) -> Self {
        UPoly { coeffs: vec![], zero }
    }

    pub fn constant(c: R) -> Self {
        let zero = c.zero_like();
        Self::new(vec![c], zero)
    }

    /// `c x^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let zero = c.zero_like();
        let mut v = vec![zero.clone(); k];
        v.push(c);
        Self::new(v, zero)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn ring_zero(&self) -> &R {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect();
        Self::new(v, self.zero.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|k| self.coeff(k).sub(&o.coeff(k))).collect();
        Self::new(v, self.zero.clone())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.neg()).collect(), self.zero.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.zero.clone());
        }
        let mut v = vec![self.zero.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(v, self.zero.clone())
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.scale(c)).collect(), self.zero.clone())
    }

    pub fn mul_coeff(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect(), self.zero.clone())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.zero.clone(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v, self.zero.clone())
    }

    /// Divides by `x^k`, assuming the low coefficients vanish.
    pub fn unshift(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).cloned().collect(), self.zero.clone())
    }

    /// Number of leading zero coefficients (the `x`-adic valuation).
    pub fn x_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Q::from_integer((k as i64).into())))
            .collect();
        Self::new(v, self.zero.clone())
    }

    /// Quotient and remainder by a monic divisor.
    pub fn divrem_monic(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        assert!(d.leading().unwrap().is_one(), "divisor must be monic");
        if self.coeffs.len() <= dd {
            return (Self::zero(self.zero.clone()), self.clone());
        }
        let mut r = self.coeffs.clone();
        let mut quo = vec![self.zero.clone(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = r[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                r[k + i] = r[k + i].sub(&c.mul(di));
            }
            quo[k] = c;
        }
        r.truncate(dd);
        (Self::new(quo, self.zero.clone()), Self::new(r, self.zero.clone()))
    }

    /// Exact quotient by a monic divisor, `None` if the remainder is nonzero.
    pub fn div_exact_monic(&self, d: &Self) -> Option<Self> {
        let (quo, r) = self.divrem_monic(d);
        r.is_zero().then_some(quo)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &R) -> R {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Applies `f` to each coefficient.
    pub fn map<S: Ring>(&self, zero: S, f: impl Fn(&R) -> S) -> UPoly<S> {
        UPoly::new(self.coeffs.iter().map(f).collect(), zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;
    use num_traits::Zero;

    fn p(v: &[i64]) -> UPoly<Q> {
        UPoly::new(v.iter().map(|&k| q(k)).collect(), Q::zero())
    }

    #[test]
    fn monic_division() {
        let d = p(&[1, 0, 1]);
        let a = p(&[3, -1, 2, 5]);
        let (quo, r) = a.mul(&d).add(&p(&[1, 1])).divrem_monic(&d);
        assert_eq!(quo, a);
        assert_eq!(r, p(&[1, 1]));
        assert!(p(&[1, 2]).div_exact_monic(&d).is_none());
    }

    #[test]
    fn derivative_and_eval() {
        let a = p(&[1, 2, 3]);
        assert_eq!(a.derivative(), p(&[2, 6]));
        assert_eq!(a.eval(&q(2)), q(17));
        assert_eq!(a.x_valuation(), Some(0));
        assert_eq!(a.shift(2).x_valuation(), Some(2));
    }
}
