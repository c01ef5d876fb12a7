//! Schur–Weierstrass polynomials and their natural-set derivatives.
//!
//! `S` is the determinant `|U_{g-2i+j+1}|` of signed complete symmetric
//! functions `U_k = (-1)^k h_k` of `g` point variables. It is first built in
//! the power sums `p_1..p_{2g-1}`, where only odd power sums survive, and then
//! rewritten in `u_1..u_g` through `p_{2m+1} = (2m+1) u_{g-m}`, i.e. each
//! point contributes `u_j = ξ^{2(g-j)+1} / (2(g-j)+1)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::rational::{factorial, q, Q};
use crate::exact::{det_fraction_free, MPoly, Ring, Var, VarTable};

/// The index set `♮^n = { i : n+1 ≤ i ≤ g, i ≡ n+1 (mod 2) }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalSet {
    pub n: usize,
    pub g: usize,
    pub indices: Vec<usize>,
}

/// Builds `♮^n` for genus `g`; empty when `n ≥ g`.
pub fn natural_set(n: usize, g: usize) -> NaturalSet {
    let indices = (n + 1..=g).filter(|i| (i + n + 1) % 2 == 0).collect();
    NaturalSet { n, g, indices }
}

/// `U_k = (-1)^k h_k` in every variable of `table`.
pub fn complete_symmetric(k: usize, table: &Arc<VarTable>) -> MPoly {
    let n = table.len();
    let sign = if k % 2 == 0 { q(1) } else { -q(1) };
    let mut terms = Vec::new();
    let mut e = vec![0u32; n];
    compositions(k as u32, 0, &mut e, &mut |e| terms.push((e.to_vec(), sign.clone())));
    MPoly::from_terms(table, terms)
}

fn compositions(rest: u32, i: usize, e: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if i + 1 == e.len() {
        e[i] = rest;
        f(e);
        return;
    }
    if e.is_empty() {
        if rest == 0 {
            f(e);
        }
        return;
    }
    for a in 0..=rest {
        e[i] = a;
        compositions(rest - a, i + 1, e, f);
    }
    e[i] = 0;
}

/// `U_k` in the point variables `u_g^{(1)}..u_g^{(n)}`.
pub fn complete_symmetric_points(k: usize, n: usize, g: usize) -> MPoly {
    complete_symmetric(k, &VarTable::points(g, n))
}

/// The signed complete symmetric functions `U_0..U_{2g-1}` of `n` points.
#[derive(Clone, Debug)]
pub struct SymFunTable {
    pub genus: usize,
    pub n: usize,
    pub u: Vec<MPoly>,
}

impl SymFunTable {
    pub fn new(genus: usize, n: usize) -> Self {
        let t = VarTable::points(genus, n);
        let u = (0..2 * genus).map(|k| complete_symmetric(k, &t)).collect();
        SymFunTable { genus, n, u }
    }
}

/// `U_k` as a polynomial in `p_1..p_k` of `table`, via
/// `U_k = (1/k!) det` of the lower Hessenberg matrix with `-p` below the
/// diagonal and `1, 2, ..., k-1` on the superdiagonal.
pub fn u_k_from_power_sums(k: usize, table: &Arc<VarTable>) -> Result<MPoly> {
    if k == 0 {
        return Ok(MPoly::one(table));
    }
    let p: Vec<MPoly> = (1..=k).map(|i| MPoly::var(table, &Var::P(i))).collect::<Result<_>>()?;
    let zero = MPoly::zero(table);
    let m: Vec<Vec<MPoly>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if j == i + 1 {
                        MPoly::constant(table, q(j as i64))
                    } else if j <= i {
                        p[i - j].neg()
                    } else {
                        zero.clone()
                    }
                })
                .collect()
        })
        .collect();
    let d = det_fraction_free(&m, &MPoly::one(table))?;
    Ok(d.scale(&factorial(k as u32).recip()))
}

/// Entry index `g - 2i + j + 1` (1-based `i`, `j`) of the defining matrix.
fn schur_index(g: usize, i: usize, j: usize) -> i64 {
    g as i64 - 2 * i as i64 + j as i64 + 1
}

/// `|U_{g-2i+j+1}|` with entries supplied by `entry(k)` (`k < 0` gives zero).
fn schur_matrix<R: Ring>(g: usize, entry: impl Fn(i64) -> R) -> Vec<Vec<R>> {
    (1..=g)
        .map(|i| (1..=g).map(|j| entry(schur_index(g, i, j))).collect())
        .collect()
}

/// Schur–Weierstrass polynomial in power sums and in abelian coordinates.
#[derive(Clone, Debug)]
pub struct SWPoly {
    pub genus: usize,
    /// `S` in `p_1..p_{2g-1}`.
    pub power_sums: MPoly,
    /// `S` in `u_1..u_g`.
    pub abelian: MPoly,
}

impl SWPoly {
    /// Sato weight `g(g+1)/2`.
    pub fn weight(&self) -> i64 {
        (self.genus * (self.genus + 1) / 2) as i64
    }

    /// `S` in the point variables `u_g^{(1)}..u_g^{(n)}`, obtained by
    /// substituting `p_k = Σ_i (u_g^{(i)})^k`.
    pub fn point_form(&self, n: usize) -> Result<MPoly> {
        let pts = VarTable::points(self.genus, n);
        power_sums_to_points(&self.power_sums, &pts)
    }

    /// Exact value at `n` point coordinates through the power-sum form.
    pub fn eval_points(&self, xi: &[Q]) -> Q {
        let vals: Vec<Q> = (1..=self.power_sums.table().len())
            .map(|k| xi.iter().map(|x| num_traits::pow(x.clone(), k)).sum())
            .collect();
        self.power_sums.eval_q(&vals)
    }

    /// Exact value at `u = (u_1, ..., u_g)`.
    pub fn eval_u(&self, u: &[Q]) -> Q {
        self.abelian.eval_q(u)
    }
}

/// Substitutes `p_k = Σ_i x_i^k` over every variable of `pts`.
pub fn power_sums_to_points(p: &MPoly, pts: &Arc<VarTable>) -> Result<MPoly> {
    let images: Vec<MPoly> = p
        .table()
        .vars()
        .iter()
        .map(|v| match v {
            Var::P(k) => Ok((0..pts.len()).fold(MPoly::zero(pts), |acc, i| {
                acc.add(&MPoly::var_at(pts, i).pow(*k as u32))
            })),
            other => Err(Error::Configuration(format!("expected a power sum, found {other:?}"))),
        })
        .collect::<Result<_>>()?;
    p.compose(&images, pts)
}

/// Image of a single curve point in `u_1..u_g`: `u_j = s ξ^{2(g-j)+1}/(2(g-j)+1)`
/// with `ξ` the `var`-th variable of `table` and `s` a rational scale.
pub fn curve_point(g: usize, table: &Arc<VarTable>, var: usize, s: &Q) -> Vec<MPoly> {
    let xi = MPoly::var_at(table, var);
    (1..=g)
        .map(|j| {
            let e = 2 * (g - j) + 1;
            xi.pow(e as u32).scale(&(s / q(e as i64)))
        })
        .collect()
}

/// Builds `S` for genus `g`.
pub fn sw_poly(g: usize) -> Result<SWPoly> {
    if g == 0 || g > 8 {
        return Err(Error::Unsupported(format!("sw_poly supports 1 ≤ g ≤ 8, got {g}")));
    }
    let pt = VarTable::power_sums(g, 2 * g - 1);
    let u: Vec<MPoly> = (0..2 * g).map(|k| u_k_from_power_sums(k, &pt)).collect::<Result<_>>()?;
    let zero = MPoly::zero(&pt);
    let m = schur_matrix(g, |k| if k < 0 { zero.clone() } else { u[k as usize].clone() });
    let s = det_fraction_free(&m, &MPoly::one(&pt))?;
    for (i, v) in pt.vars().iter().enumerate() {
        if let Var::P(k) = v {
            if k % 2 == 0 && s.degree_in(i).unwrap_or(0) > 0 {
                return Err(Error::Domain(format!("S depends on the even power sum p{k}")));
            }
        }
    }
    let ut = VarTable::abelian(g);
    let images: Vec<MPoly> = (1..2 * g)
        .map(|k| {
            if k % 2 == 1 {
                let j = (2 * g + 1 - k) / 2;
                MPoly::var_at(&ut, j - 1).scale(&q(k as i64))
            } else {
                MPoly::zero(&ut)
            }
        })
        .collect();
    let abelian = s.compose(&images, &ut)?;
    Ok(SWPoly {
        genus: g,
        power_sums: s,
        abelian,
    })
}

/// `Π_{i ∈ idx} ∂/∂u_i S`.
pub fn sw_derivative(s: &SWPoly, idx: &[usize]) -> Result<MPoly> {
    let mut p = s.abelian.clone();
    for &i in idx {
        if i == 0 || i > s.genus {
            return Err(Error::Domain(format!("derivative index {i} outside 1..={}", s.genus)));
        }
        p = p.derivative(i - 1);
    }
    Ok(p)
}

/// `S_{♮^n}`.
pub fn sw_natural_derivative(s: &SWPoly, n: usize) -> Result<MPoly> {
    sw_derivative(s, &natural_set(n, s.genus).indices)
}

/// The Hankel determinant `|u_{i+j-1}|` of size `⌈g/2⌉` (odd `g`) or `g/2`
/// (even `g`), in `u_1..u_g`.
pub fn hankel(g: usize) -> Result<MPoly> {
    let t = VarTable::abelian(g);
    let m = g.div_ceil(2);
    let mat: Vec<Vec<MPoly>> = (0..m)
        .map(|i| (0..m).map(|j| MPoly::var_at(&t, i + j)).collect())
        .collect();
    det_fraction_free(&mat, &MPoly::one(&t))
}

/// Constant `κ` with lowest-degree part of `S` equal to `κ` times the Hankel
/// determinant, or `None` if they are not proportional.
pub fn hankel_ratio(s: &SWPoly) -> Result<Option<Q>> {
    let low = s.abelian.homogeneous_part(s.abelian.min_total_degree().unwrap_or(0));
    let h = hankel(s.genus)?;
    let Some((e, c)) = h.terms().next() else {
        return Ok(None);
    };
    let k = low
        .terms()
        .find(|(f, _)| *f == e)
        .map(|(_, d)| d / c)
        .unwrap_or_else(|| q(0));
    Ok((!k.is_zero() && low == h.scale(&k)).then_some(k))
}

/// Both sides of `k ∂/∂p_k = (-1)^k Σ_{r≥0} U_r ∂/∂U_{k+r}` applied to `S`,
/// returned as polynomials in the power sums.
pub fn power_sum_derivative_sides(g: usize, k: usize) -> Result<(MPoly, MPoly)> {
    if k == 0 || k > 2 * g - 1 {
        return Err(Error::Domain(format!("k must lie in 1..={}", 2 * g - 1)));
    }
    let s = sw_poly(g)?;
    let pt = s.power_sums.table().clone();
    let lhs = s.power_sums.derivative(k - 1).scale(&q(k as i64));
    let st = VarTable::new(g, (1..2 * g).map(Var::Sym).collect())?;
    let sym = |i: i64| -> MPoly {
        if i < 0 {
            MPoly::zero(&st)
        } else if i == 0 {
            MPoly::one(&st)
        } else {
            MPoly::var_at(&st, i as usize - 1)
        }
    };
    let s_sym = det_fraction_free(&schur_matrix(g, sym), &MPoly::one(&st))?;
    let mut rhs = MPoly::zero(&st);
    for r in 0..2 * g - k {
        let d = s_sym.derivative(k + r - 1);
        rhs = rhs.add(&sym(r as i64).mul(&d));
    }
    if k % 2 == 1 {
        rhs = rhs.neg();
    }
    let images: Vec<MPoly> = (1..2 * g).map(|i| u_k_from_power_sums(i, &pt)).collect::<Result<_>>()?;
    let rhs = rhs.compose(&images, &pt)?;
    Ok((lhs, rhs))
}

/// True iff the power-sum derivative identity holds for `S` at index `k`.
pub fn power_sum_derivative_check(g: usize, k: usize) -> Result<bool> {
    let (l, r) = power_sum_derivative_sides(g, k)?;
    Ok(l == r)
}

/// A matrix whose rows are windows of `m+1` successive terms of
/// `..., 0, 0, 1, ρ_1(ξ), ρ_2(ξ), ...` with `ρ_k = (-1)^k h_k(ξ)`.
#[derive(Clone, Debug)]
pub struct FundamentalMatrix {
    pub xi: Vec<Q>,
    pub rows: Vec<Vec<Q>>,
}

impl FundamentalMatrix {
    /// Row `r` starts at sequence position `starts[r]`, where position 0
    /// holds the `1`. The window starting at `-m` is the forbidden simple row.
    pub fn new(xi: &[Q], starts: &[i64]) -> Result<Self> {
        let m = xi.len() as i64;
        let rho = |k: i64| -> Q {
            if k < 0 {
                q(0)
            } else {
                let sign = if k % 2 == 0 { q(1) } else { -q(1) };
                sign * h_eval(k as usize, xi)
            }
        };
        let mut rows = Vec::new();
        for &s in starts {
            if s == -m {
                return Err(Error::Domain("fundamental matrix may not contain the simple row (0,…,0,1)".into()));
            }
            rows.push((0..=m).map(|i| rho(s + i)).collect());
        }
        Ok(FundamentalMatrix { xi: xi.to_vec(), rows })
    }

    /// Builds a matrix from explicit rows, rejecting the simple row.
    pub fn from_rows(xi: &[Q], rows: Vec<Vec<Q>>) -> Result<Self> {
        let m = xi.len();
        for r in &rows {
            if r.len() != m + 1 {
                return Err(Error::Dimension(format!("rows must have {} entries", m + 1)));
            }
            if r[m].is_one() && r[..m].iter().all(|c| c.is_zero()) {
                return Err(Error::Domain("fundamental matrix may not contain the simple row (0,…,0,1)".into()));
            }
        }
        Ok(FundamentalMatrix { xi: xi.to_vec(), rows })
    }

    /// True iff `M (e_m, e_{m-1}, ..., e_1, 1)^t = 0` exactly.
    pub fn kernel_check(&self) -> bool {
        let m = self.xi.len();
        let e: Vec<Q> = (0..=m).map(|j| e_eval(m - j, &self.xi)).collect();
        self.rows
            .iter()
            .all(|r| r.iter().zip(&e).map(|(a, b)| a * b).sum::<Q>().is_zero())
    }
}

/// `h_k(ξ)` by the recursion over the number of variables.
fn h_eval(k: usize, xi: &[Q]) -> Q {
    let mut h = vec![q(0); k + 1];
    h[0] = q(1);
    for x in xi {
        for d in 1..=k {
            let prev = h[d - 1].clone();
            h[d] += x * prev;
        }
    }
    h[k].clone()
}

/// `e_k(ξ)`.
fn e_eval(k: usize, xi: &[Q]) -> Q {
    let mut e = vec![q(0); xi.len() + 1];
    e[0] = q(1);
    for (n, x) in xi.iter().enumerate() {
        for d in (1..=n + 1).rev() {
            let prev = e[d - 1].clone();
            e[d] += x * prev;
        }
    }
    e.get(k).cloned().unwrap_or_else(|| q(0))
}

/// True iff `S(u^{(1)} + ... + u^{(n)})` vanishes identically in the
/// point variables.
pub fn stratum_vanishing_check(g: usize, n: usize) -> Result<bool> {
    let s = sw_poly(g)?;
    Ok(s.point_form(n)?.is_zero())
}

/// `S_♯(v)` at the curve-limit point `v = (v^{2g-1}/(2g-1), ..., v^3/3, v)`.
pub fn sharp_at_curve_limit(s: &SWPoly) -> Result<MPoly> {
    let vt = VarTable::new(s.genus, vec![Var::V])?;
    let d = sw_natural_derivative(s, 1)?;
    d.compose(&curve_point(s.genus, &vt, 0, &q(1)), &vt)
}

/// `S_♭(2v)`.
pub fn flat_at_double(s: &SWPoly) -> Result<MPoly> {
    let vt = VarTable::new(s.genus, vec![Var::V])?;
    let d = sw_natural_derivative(s, 2)?;
    d.compose(&curve_point(s.genus, &vt, 0, &q(2)), &vt)
}

/// Outcome of the leading-term recursion for `S_{♮^{n+1}}`.
#[derive(Clone, Debug)]
pub struct RecursionCheck {
    pub g: usize,
    pub n: usize,
    /// All `v`-degrees below `g - n` vanish.
    pub lower_vanish: bool,
    /// Smallest `v`-degree above `g - n` with a nonzero coefficient.
    pub remainder_degree: Option<u32>,
    /// `c` with coefficient of `v^{g-n}` equal to `c S_{♮^n}(u^{(1)}+...+u^{(n)})`.
    pub sign: Option<Q>,
}

/// Expands `S_{♮^{n+1}}(u^{(1)}+...+u^{(n)}+v)` in `v`.
pub fn leading_term_recursion(s: &SWPoly, n: usize) -> Result<RecursionCheck> {
    let g = s.genus;
    if n == 0 || n >= g {
        return Err(Error::Domain(format!("recursion needs 1 ≤ n ≤ g-1, got n={n}")));
    }
    let mut vars: Vec<Var> = (1..=n).map(Var::Point).collect();
    vars.push(Var::V);
    let t = VarTable::new(g, vars)?;
    let sum_points = |with_v: bool| -> Vec<MPoly> {
        let mut acc = vec![MPoly::zero(&t); g];
        let last = if with_v { n + 1 } else { n };
        for i in 0..last {
            for (a, b) in acc.iter_mut().zip(curve_point(g, &t, i, &q(1))) {
                *a = a.add(&b);
            }
        }
        acc
    };
    let upper = sw_natural_derivative(s, n + 1)?.compose(&sum_points(true), &t)?;
    let lower = sw_natural_derivative(s, n)?.compose(&sum_points(false), &t)?;
    let vi = n;
    let lead = (g - n) as u32;
    let lower_vanish = (0..lead).all(|k| upper.coefficient_in(vi, k).is_zero());
    let top = upper.degree_in(vi).unwrap_or(0);
    let remainder_degree = (lead + 1..=top).find(|&k| !upper.coefficient_in(vi, k).is_zero());
    let c = upper.coefficient_in(vi, lead);
    let sign = match lower.terms().next() {
        Some((e, a)) => {
            let b = c.terms().find(|(f, _)| *f == e).map(|(_, b)| b.clone()).unwrap_or_else(|| q(0));
            let k = b / a;
            (!k.is_zero() && c == lower.scale(&k)).then_some(k)
        }
        None => None,
    };
    Ok(RecursionCheck {
        g,
        n,
        lower_vanish,
        remainder_degree,
        sign,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::qf;

    #[test]
    fn natural_sets() {
        assert_eq!(natural_set(1, 4).indices, vec![2, 4]);
        assert_eq!(natural_set(2, 5).indices, vec![3, 5]);
        assert!(natural_set(3, 3).indices.is_empty());
    }

    #[test]
    fn small_symmetric_functions() {
        assert!(complete_symmetric_points(0, 3, 3).is_one());
        let t = VarTable::points(2, 2);
        let (a, b) = (MPoly::var_at(&t, 0), MPoly::var_at(&t, 1));
        assert_eq!(complete_symmetric(1, &t), a.add(&b).neg());
        assert_eq!(complete_symmetric(2, &t), a.mul(&a).add(&a.mul(&b)).add(&b.mul(&b)));
    }

    #[test]
    fn low_genus_forms() {
        let s1 = sw_poly(1).unwrap();
        let t = VarTable::abelian(1);
        assert_eq!(s1.abelian, MPoly::var_at(&t, 0).neg());
        let s2 = sw_poly(2).unwrap();
        let t = VarTable::abelian(2);
        let (u1, u2) = (MPoly::var_at(&t, 0), MPoly::var_at(&t, 1));
        assert_eq!(s2.abelian, u1.sub(&u2.pow(3).scale(&qf(1, 3))));
    }

    #[test]
    fn u2_from_power_sums() {
        let t = VarTable::power_sums(2, 3);
        let p1 = MPoly::var(&t, &Var::P(1)).unwrap();
        let p2 = MPoly::var(&t, &Var::P(2)).unwrap();
        let want = p1.mul(&p1).add(&p2).scale(&qf(1, 2));
        assert_eq!(u_k_from_power_sums(2, &t).unwrap(), want);
    }

    #[test]
    fn simple_row_is_rejected() {
        let xi = [q(2), q(3)];
        assert!(FundamentalMatrix::new(&xi, &[-2]).is_err());
        assert!(FundamentalMatrix::from_rows(&xi, vec![vec![q(0), q(0), q(1)]]).is_err());
        assert!(FundamentalMatrix::new(&xi, &[-1, 0, 3]).unwrap().kernel_check());
    }
}
