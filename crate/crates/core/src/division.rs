//! Functions on the curve and its division polynomials.
//!
//! A [`CurveFunction`] is `(a(x) + b(x) y) / (x^k f(x)^m)` with `y² = f(x)`.
//! The denominator keeps derivatives closed: `d/dx` introduces powers of
//! `f` and `d/du_j = (2y / x^{j-1}) d/dx` introduces powers of `x`.
//!
//! `ψ_n` is defined by the Wronskian-type (Kiepert) determinant with
//! `j = 1`; the Hankel-type (Cantor) determinant and the triangular
//! operator identity are checked against it.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::constants;
use crate::curve_series::CurveSpec;
use crate::error::{Error, Result};
use crate::exact::rational::{factorial, q, q_to_string, to_f64};
use crate::exact::{det_cofactor, MPoly, Ring, UPoly, Q};

/// Curve data shared by all functions on one curve.
#[derive(Debug, PartialEq)]
pub struct CurveCtx<R: Ring> {
    pub genus: usize,
    pub f: UPoly<R>,
    pub df: UPoly<R>,
}

impl<R: Ring> CurveCtx<R> {
    pub fn new(c: &CurveSpec<R>) -> Arc<Self> {
        let f = c.f();
        let df = f.derivative();
        Arc::new(CurveCtx { genus: c.genus(), f, df })
    }

    fn zero(&self) -> R {
        self.f.ring_zero().clone()
    }
}

/// `(a(x) + b(x) y) / (x^xk f(x)^fm)` on the curve `y² = f(x)`.
#[derive(Clone)]
pub struct CurveFunction<R: Ring> {
    ctx: Arc<CurveCtx<R>>,
    a: UPoly<R>,
    b: UPoly<R>,
    xk: u32,
    fm: u32,
}

impl<R: Ring> fmt::Debug for CurveFunction<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + y {:?}) / (x^{} f^{})", self.a.coeffs(), self.b.coeffs(), self.xk, self.fm)
    }
}

fn upoly_pow<R: Ring>(p: &UPoly<R>, e: u32) -> UPoly<R> {
    let mut acc = UPoly::constant(p.ring_zero().one_like());
    for _ in 0..e {
        acc = acc.mul(p);
    }
    acc
}

impl<R: Ring> CurveFunction<R> {
    pub fn new(ctx: &Arc<CurveCtx<R>>, a: UPoly<R>, b: UPoly<R>, xk: u32, fm: u32) -> Self {
        CurveFunction { ctx: ctx.clone(), a, b, xk, fm }.normalized()
    }

    pub fn zero(ctx: &Arc<CurveCtx<R>>) -> Self {
        let z = ctx.zero();
        Self::new(ctx, UPoly::zero(z.clone()), UPoly::zero(z), 0, 0)
    }

    pub fn constant(ctx: &Arc<CurveCtx<R>>, c: R) -> Self {
        Self::new(ctx, UPoly::constant(c), UPoly::zero(ctx.zero()), 0, 0)
    }

    pub fn one(ctx: &Arc<CurveCtx<R>>) -> Self {
        Self::constant(ctx, ctx.zero().one_like())
    }

    /// `x^i y^j` with `j ∈ {0, 1}`.
    pub fn monomial(ctx: &Arc<CurveCtx<R>>, i: usize, j: usize) -> Self {
        let one = ctx.zero().one_like();
        let m = UPoly::monomial(one, i);
        let z = UPoly::zero(ctx.zero());
        if j == 0 {
            Self::new(ctx, m, z, 0, 0)
        } else {
            Self::new(ctx, z, m, 0, 0)
        }
    }

    pub fn x(ctx: &Arc<CurveCtx<R>>) -> Self {
        Self::monomial(ctx, 1, 0)
    }

    pub fn y(ctx: &Arc<CurveCtx<R>>) -> Self {
        Self::monomial(ctx, 0, 1)
    }

    pub fn ctx(&self) -> &Arc<CurveCtx<R>> {
        &self.ctx
    }

    /// Numerator parts `a`, `b` and denominator exponents `(k, m)`.
    pub fn parts(&self) -> (&UPoly<R>, &UPoly<R>, u32, u32) {
        (&self.a, &self.b, self.xk, self.fm)
    }

    /// True iff the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.xk == 0 && self.fm == 0
    }

    /// Cancels common powers of `x` and `f`.
    fn normalized(mut self) -> Self {
        if self.a.is_zero() && self.b.is_zero() {
            self.xk = 0;
            self.fm = 0;
            return self;
        }
        while self.xk > 0 && self.a.coeff(0).is_zero() && self.b.coeff(0).is_zero() {
            self.a = self.a.unshift(1);
            self.b = self.b.unshift(1);
            self.xk -= 1;
        }
        while self.fm > 0 {
            let (Some(qa), Some(qb)) = (self.a.div_exact_monic(&self.ctx.f), self.b.div_exact_monic(&self.ctx.f))
            else {
                break;
            };
            self.a = qa;
            self.b = qb;
            self.fm -= 1;
        }
        self
    }

    /// Numerator scaled to the denominator `x^k f^m` (with `k ≥ xk`, `m ≥ fm`).
    fn lifted(&self, k: u32, m: u32) -> (UPoly<R>, UPoly<R>) {
        let fpow = upoly_pow(&self.ctx.f, m - self.fm);
        let s = (k - self.xk) as usize;
        (self.a.mul(&fpow).shift(s), self.b.mul(&fpow).shift(s))
    }

    pub fn add(&self, o: &Self) -> Self {
        let (k, m) = (self.xk.max(o.xk), self.fm.max(o.fm));
        let (a1, b1) = self.lifted(k, m);
        let (a2, b2) = o.lifted(k, m);
        Self::new(&self.ctx, a1.add(&a2), b1.add(&b2), k, m)
    }

    pub fn neg(&self) -> Self {
        CurveFunction { a: self.a.neg(), b: self.b.neg(), ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = &self.ctx.f;
        let a = self.a.mul(&o.a).add(&self.b.mul(&o.b).mul(f));
        let b = self.a.mul(&o.b).add(&self.b.mul(&o.a));
        Self::new(&self.ctx, a, b, self.xk + o.xk, self.fm + o.fm)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(&self.ctx, self.a.scale(c), self.b.scale(c), self.xk, self.fm)
    }

    pub fn mul_coeff(&self, c: &R) -> Self {
        Self::new(&self.ctx, self.a.mul_coeff(c), self.b.mul_coeff(c), self.xk, self.fm)
    }

    /// Multiplication by `x^e`, `e` of either sign.
    pub fn mul_x_pow(&self, e: i64) -> Self {
        if e >= 0 {
            let s = e as usize;
            Self::new(&self.ctx, self.a.shift(s), self.b.shift(s), self.xk, self.fm)
        } else {
            Self::new(&self.ctx, self.a.clone(), self.b.clone(), self.xk + (-e) as u32, self.fm)
        }
    }

    pub fn mul_y(&self) -> Self {
        Self::new(&self.ctx, self.b.mul(&self.ctx.f), self.a.clone(), self.xk, self.fm)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `d/dx` with `dy/dx = f'(x) / 2y`.
    pub fn ddx(&self) -> Self {
        let (f, df) = (&self.ctx.f, &self.ctx.df);
        let half = Q::new(1.into(), 2.into());
        // f·N' = f a' + (f b' + f' b / 2) y
        let fa = f.mul(&self.a.derivative());
        let fb = f.mul(&self.b.derivative()).add(&df.mul(&self.b).scale(&half));
        // d/dx (N / (x^k f^m)) = (x f N' - k f N - m x f' N) / (x^{k+1} f^{m+1})
        let kq = q(self.xk as i64);
        let mq = q(self.fm as i64);
        let a = fa
            .shift(1)
            .sub(&f.mul(&self.a).scale(&kq))
            .sub(&df.mul(&self.a).shift(1).scale(&mq));
        let b = fb
            .shift(1)
            .sub(&f.mul(&self.b).scale(&kq))
            .sub(&df.mul(&self.b).shift(1).scale(&mq));
        Self::new(&self.ctx, a, b, self.xk + 1, self.fm + 1)
    }

    /// `d/du_j = (2y / x^{j-1}) d/dx` along the curve.
    pub fn ddu(&self, j: usize) -> Self {
        if j == 1 && self.is_polynomial() {
            // 2y (a' + b' y) + b f' = (2 f b' + f' b) + 2 a' y
            let two = q(2);
            let a = self.ctx.f.mul(&self.b.derivative()).scale(&two).add(&self.ctx.df.mul(&self.b));
            let b = self.a.derivative().scale(&two);
            return Self::new(&self.ctx, a, b, 0, 0);
        }
        self.ddx().mul_y().scale(&q(2)).mul_x_pow(1 - j as i64)
    }

    /// Pole order at infinity, `None` for the zero function.
    pub fn pole_order(&self) -> Option<i64> {
        let g = self.ctx.genus as i64;
        let pa = self.a.degree().map(|d| 2 * d as i64);
        let pb = self.b.degree().map(|d| 2 * d as i64 + 2 * g + 1);
        let top = pa.max(pb)?;
        Some(top - 2 * self.xk as i64 - (2 * g + 1) * 2 * self.fm as i64)
    }

    /// `k` with `self = k other`, if such a rational constant exists.
    pub fn constant_ratio(&self, other: &Self) -> Option<Q> {
        if other.is_zero() {
            return None;
        }
        let (k, m) = (self.xk.max(other.xk), self.fm.max(other.fm));
        let (a1, b1) = self.lifted(k, m);
        let (a2, b2) = other.lifted(k, m);
        let (p1, p2) = if b2.is_zero() { (&a1, &a2) } else { (&b1, &b2) };
        let d = p2.degree()?;
        let num = p1.coeff(d).leading_rational()?;
        let den = p2.coeff(d).leading_rational()?;
        let r = num / den;
        (*self == other.scale(&r)).then_some(r)
    }

    /// Replaces each coefficient through `f` on a new curve context.
    pub fn map<S: Ring>(&self, ctx: &Arc<CurveCtx<S>>, f: impl Fn(&R) -> S) -> CurveFunction<S> {
        let z = ctx.zero();
        CurveFunction::new(ctx, self.a.map(z.clone(), &f), self.b.map(z, &f), self.xk, self.fm)
    }
}

impl<R: Ring> PartialEq for CurveFunction<R> {
    fn eq(&self, o: &Self) -> bool {
        let (k, m) = (self.xk.max(o.xk), self.fm.max(o.fm));
        self.lifted(k, m) == o.lifted(k, m)
    }
}

impl<R: Ring> Ring for CurveFunction<R> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.ctx)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.ctx)
    }
    fn from_q_like(&self, c: &Q) -> Self {
        Self::constant(&self.ctx, self.ctx.zero().from_q_like(c))
    }
    fn add(&self, o: &Self) -> Self {
        CurveFunction::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        CurveFunction::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        CurveFunction::mul(self, o)
    }
    fn neg(&self) -> Self {
        CurveFunction::neg(self)
    }
    fn is_zero(&self) -> bool {
        CurveFunction::is_zero(self)
    }
    fn scale(&self, c: &Q) -> Self {
        CurveFunction::scale(self, c)
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_polynomial() && self.b.is_zero() && self.a.degree() == Some(0) {
            self.a.coeff(0).inverse().map(|c| Self::constant(&self.ctx, c))
        } else {
            None
        }
    }
    fn leading_rational(&self) -> Option<Q> {
        let p = if self.b.is_zero() { &self.a } else { &self.b };
        p.leading()?.leading_rational()
    }
}

impl CurveFunction<Q> {
    /// Value at `(x0, y0)` as the pair `(α, β)` with value `α + β y0`.
    /// Fails when the denominator vanishes.
    pub fn eval_parts(&self, x0: &Q) -> Result<(Q, Q)> {
        let den = num_traits::pow::Pow::pow(x0, self.xk) * num_traits::pow::Pow::pow(&self.ctx.f.eval(x0), self.fm);
        if num_traits::Zero::is_zero(&den) {
            return Err(Error::Domain("denominator vanishes at this point".into()));
        }
        Ok((self.a.eval(x0) / &den, self.b.eval(x0) / &den))
    }

    pub fn eval_q(&self, x0: &Q, y0: &Q) -> Result<Q> {
        let (a, b) = self.eval_parts(x0)?;
        Ok(a + b * y0)
    }

    pub fn eval_c(&self, x0: Complex64, y0: Complex64) -> Complex64 {
        let ev = |p: &UPoly<Q>| p.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x0 + to_f64(c));
        let num = ev(&self.a) + ev(&self.b) * y0;
        num / (x0.powu(self.xk) * ev(&self.ctx.f).powu(self.fm))
    }
}

impl CurveFunction<MPoly> {
    /// Substitutes rational values for the curve coefficients.
    pub fn specialize(&self, curve: &CurveSpec<Q>) -> CurveFunction<Q> {
        let ctx = CurveCtx::new(curve);
        let vals = curve.lambda().to_vec();
        self.map(&ctx, |c| c.eval_q(&vals))
    }
}

/// JSON form of a function: coefficient lists of `a` and `b` (ascending)
/// and the denominator exponents.
#[derive(Clone, Debug, Serialize)]
pub struct CanonicalFunction {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub x_power: u32,
    pub f_power: u32,
    pub pole_order: Option<i64>,
}

pub trait CoeffString {
    fn coeff_string(&self) -> String;
}

impl CoeffString for Q {
    fn coeff_string(&self) -> String {
        q_to_string(self)
    }
}

impl CoeffString for MPoly {
    fn coeff_string(&self) -> String {
        self.to_string()
    }
}

impl<R: Ring + CoeffString> CurveFunction<R> {
    pub fn canonical(&self) -> CanonicalFunction {
        CanonicalFunction {
            a: self.a.coeffs().iter().map(|c| c.coeff_string()).collect(),
            b: self.b.coeffs().iter().map(|c| c.coeff_string()).collect(),
            x_power: self.xk,
            f_power: self.fm,
            pole_order: self.pole_order(),
        }
    }
}

/// The first `count` monomials `x^i y^j ≠ 1` by increasing pole order:
/// `x, x², ..., x^g, y, x^{g+1}, xy, x^{g+2}, ...`.
pub fn monomial_sequence(g: usize, count: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(count);
    let mut p = 2;
    while out.len() < count {
        if p % 2 == 0 {
            out.push((p / 2, 0));
        } else if p >= 2 * g + 1 {
            out.push(((p - 2 * g - 1) / 2, 1));
        }
        p += 1;
    }
    out
}

/// `y^⟨k⟩ = (d/dx)^k y` for `k = 0..=K`, and the coefficients `a^{(m)}_j`
/// with `(d/du_1)^m = Σ_{j=1}^m a^{(m)}_j (d/dx)^j`.
pub struct DerivativeTable<R: Ring> {
    pub y: Vec<CurveFunction<R>>,
    /// `a[m-1][j-1] = a^{(m)}_j` for `1 ≤ j ≤ m ≤ K`.
    pub a: Vec<Vec<CurveFunction<R>>>,
}

impl<R: Ring> DerivativeTable<R> {
    pub fn new(ctx: &Arc<CurveCtx<R>>, k: usize) -> Self {
        let mut y = vec![CurveFunction::y(ctx)];
        for i in 0..k {
            let next = y[i].ddx();
            y.push(next);
        }
        let two_y = CurveFunction::y(ctx).scale(&q(2));
        let mut a: Vec<Vec<CurveFunction<R>>> = Vec::new();
        if k >= 1 {
            a.push(vec![two_y.clone()]);
        }
        for m in 1..k {
            let prev = &a[m - 1];
            let mut row = Vec::with_capacity(m + 1);
            for j in 1..=m + 1 {
                // a^{(m+1)}_j = 2y d/dx a^{(m)}_j + 2y a^{(m)}_{j-1}
                let mut e = CurveFunction::zero(ctx);
                if j <= m {
                    e = e.add(&two_y.mul(&prev[j - 1].ddx()));
                }
                if j >= 2 {
                    e = e.add(&two_y.mul(&prev[j - 2]));
                }
                row.push(e);
            }
            a.push(row);
        }
        DerivativeTable { y, a }
    }

    /// True iff `(d/du_1)^m μ = Σ_j a^{(m)}_j (d/dx)^j μ` for `1 ≤ m ≤ K`,
    /// and the diagonal is `(2y)^m`.
    pub fn check_triangular(&self, mu: &CurveFunction<R>) -> bool {
        let ctx = mu.ctx();
        let two_y = CurveFunction::y(ctx).scale(&q(2));
        let mut dx = vec![mu.clone()];
        for j in 0..self.a.len() {
            let next = dx[j].ddx();
            dx.push(next);
        }
        let mut du = mu.clone();
        for (m1, row) in self.a.iter().enumerate() {
            du = du.ddu(1);
            let rhs = row
                .iter()
                .enumerate()
                .fold(CurveFunction::zero(ctx), |acc, (j, c)| acc.add(&c.mul(&dx[j + 1])));
            if du != rhs || row[m1] != two_y.pow(m1 as u32 + 1) {
                return false;
            }
        }
        true
    }
}

/// The `(n-1) × (n-1)` Wronskian-type matrix `[(d/du_j)^i μ_k]`.
pub fn kiepert_matrix<R: Ring>(ctx: &Arc<CurveCtx<R>>, n: usize, j: usize) -> Vec<Vec<CurveFunction<R>>> {
    let mons = monomial_sequence(ctx.genus, n.saturating_sub(1));
    let mut cols: Vec<Vec<CurveFunction<R>>> = Vec::with_capacity(mons.len());
    for &(i, e) in &mons {
        let mut f = CurveFunction::monomial(ctx, i, e);
        let mut col = Vec::with_capacity(mons.len());
        for _ in 0..mons.len() {
            f = f.ddu(j);
            col.push(f.clone());
        }
        cols.push(col);
    }
    (0..mons.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

/// `ψ_n` from the Wronskian-type determinant:
/// `x^{(j-1)n(n-1)/2} det / (c'_n 1! 2! ⋯ (n-1)!)`.
pub fn kiepert_det<R: Ring>(c: &CurveSpec<R>, n: usize, j: usize) -> Result<CurveFunction<R>> {
    let g = c.genus();
    if n == 0 {
        return Err(Error::Domain("ψ_n needs n ≥ 1".into()));
    }
    if j == 0 || j > g {
        return Err(Error::Domain(format!("derivative index j={j} outside 1..={g}")));
    }
    let ctx = CurveCtx::new(c);
    let m = kiepert_matrix(&ctx, n, j);
    let d = det_cofactor(&m, &CurveFunction::one(&ctx))?;
    let norm = (1..n as u32).fold(q(constants::c_prime_n(g, n)), |acc, k| acc * factorial(k));
    let pre = ((j - 1) * n * (n - 1) / 2) as i64;
    Ok(d.mul_x_pow(pre).scale(&(q(1) / norm)))
}

/// The `s × s` Hankel-type determinant `|y^⟨a+i+k⟩ / (a+i+k)!|` times
/// `(2y)^{n(n-1)/2}`, without the sign `ε_n`.
///
/// `r = ⌊(n+g-1)/2⌋` is the number of pure `x`-powers among the first
/// `n-1` monomials, `s = n-1-r`, and the window starts at `a = 2r+3-n`
/// (`g+2` when `n ≢ g`, `g+1` when `n ≡ g` mod 2).
pub fn cantor_unsigned<R: Ring>(c: &CurveSpec<R>, n: usize) -> Result<CurveFunction<R>> {
    let g = c.genus();
    if n < g {
        return Err(Error::Unsupported(format!("Hankel form needs n ≥ g, got n={n}, g={g}")));
    }
    let (r, s) = constants::cantor_r_s(g, n);
    let a = 2 * r + 3 - n;
    let ctx = CurveCtx::new(c);
    let table = DerivativeTable::new(&ctx, n - 1);
    let h: Vec<Vec<CurveFunction<R>>> = (0..s)
        .map(|i| {
            (0..s)
                .map(|k| table.y[a + i + k].scale(&(q(1) / factorial((a + i + k) as u32))))
                .collect()
        })
        .collect();
    let d = det_cofactor(&h, &CurveFunction::one(&ctx))?;
    let two_y = CurveFunction::y(&ctx).scale(&q(2));
    Ok(two_y.pow((n * (n - 1) / 2) as u32).mul(&d))
}

/// `ψ_n` from the Hankel-type determinant with the tabulated sign `ε_n`.
pub fn cantor_psi<R: Ring>(c: &CurveSpec<R>, n: usize) -> Result<CurveFunction<R>> {
    let e = constants::epsilon_n(c.genus(), n);
    Ok(cantor_unsigned(c, n)?.scale(&q(e)))
}

/// Pole order at infinity, failing on the zero function.
pub fn pole_order_at_infinity<R: Ring>(f: &CurveFunction<R>) -> Result<i64> {
    f.pole_order().ok_or_else(|| Error::Domain("pole order of the zero function".into()))
}

/// The pole order predicted for `ψ_n`.
pub fn expected_pole_order(g: usize, n: usize) -> i64 {
    let (g, n) = (g as i64, n as i64);
    if n >= g {
        n * n * g - g * (g + 1) / 2
    } else {
        n * (n - 1) * (2 * g + 1) / 2
    }
}

/// A point `(x0, y0)` with `x0` rational and `y0² = f(x0)` rational, so
/// `y0` lies in `Q` or in a real quadratic extension.
#[derive(Clone, Debug)]
pub struct QuadraticPoint {
    pub x: Q,
    /// `y0²`.
    pub y_squared: Q,
    /// `y0` when it is rational.
    pub y: Option<Q>,
}

impl QuadraticPoint {
    pub fn new(curve: &CurveSpec<Q>, x: Q, y: Option<Q>) -> Result<Self> {
        let y_squared = curve.f().eval(&x);
        if let Some(y0) = &y {
            if !curve.contains(&x, y0) {
                return Err(Error::Domain("point is not on the curve".into()));
            }
        }
        let y = y.or_else(|| crate::exact::rational::q_sqrt(&y_squared));
        Ok(QuadraticPoint { x, y_squared, y })
    }
}

/// Result of a torsion scan.
#[derive(Clone, Debug, Serialize)]
pub struct TorsionReport {
    pub n: usize,
    /// `(m, ψ_m(P) = 0)` for `m = n-g+1, ..., n+g-1`.
    pub values: Vec<(usize, bool)>,
    pub torsion: bool,
}

/// Tests `ψ_m(P) = 0` for `m = n-g+1, ..., n+g-1`.
pub fn torsion_scan(curve: &CurveSpec<Q>, p: &QuadraticPoint, n: usize) -> Result<TorsionReport> {
    let g = curve.genus();
    if n < g {
        return Err(Error::Domain(format!("torsion scan needs n ≥ g, got n={n}")));
    }
    let mut values = Vec::new();
    for m in n + 1 - g..=n + g - 1 {
        let psi = kiepert_det(curve, m, 1)?;
        let (alpha, beta) = psi.eval_parts(&p.x)?;
        let zero = match &p.y {
            Some(y0) => num_traits::Zero::is_zero(&(alpha + beta * y0)),
            // y0 irrational: α + β y0 = 0 iff α = β = 0
            None => num_traits::Zero::is_zero(&alpha) && num_traits::Zero::is_zero(&beta),
        };
        values.push((m, zero));
    }
    let torsion = values.iter().all(|&(_, z)| z);
    Ok(TorsionReport { n, values, torsion })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elliptic(a: i64, b: i64) -> CurveSpec<Q> {
        CurveSpec::new(1, vec![q(0), q(a), q(b)]).unwrap()
    }

    #[test]
    fn basic_derivatives() {
        let c = elliptic(2, 3);
        let ctx = CurveCtx::new(&c);
        let x = CurveFunction::x(&ctx);
        assert_eq!(x.ddx(), CurveFunction::one(&ctx));
        assert_eq!(x.ddu(1), CurveFunction::y(&ctx).scale(&q(2)));
        let y = CurveFunction::y(&ctx);
        // y y' = f'/2
        let yy = y.mul(&y.ddx());
        let half_df = CurveFunction::new(&ctx, ctx.df.scale(&Q::new(1.into(), 2.into())), UPoly::zero(q(0)), 0, 0);
        assert_eq!(yy, half_df);
        assert!(CurveFunction::constant(&ctx, q(5)).ddu(1).is_zero());
    }

    #[test]
    fn sequence_order() {
        assert_eq!(monomial_sequence(2, 6), vec![(1, 0), (2, 0), (0, 1), (3, 0), (1, 1), (4, 0)]);
        assert_eq!(monomial_sequence(1, 3), vec![(1, 0), (0, 1), (2, 0)]);
    }

    #[test]
    fn psi_3_classical() {
        let c = elliptic(2, 3);
        let psi = kiepert_det(&c, 3, 1).unwrap();
        let ctx = CurveCtx::new(&c);
        let want = CurveFunction::new(&ctx, UPoly::new(vec![q(-4), q(36), q(12), q(0), q(3)], q(0)), UPoly::zero(q(0)), 0, 0);
        assert!(psi == want || psi == want.neg());
        assert_eq!(psi.pole_order(), Some(8));
    }
}
