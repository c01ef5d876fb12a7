//! Sparse multivariate polynomials over [`Q`] with a shared variable table.
//!
//! Each computation builds one [`VarTable`] and every polynomial it creates
//! points at it through an `Arc`. Terms live in a `BTreeMap` keyed by the
//! exponent vector, so iteration order (and any serialization) is canonical
//! and no zero coefficient is ever stored.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use super::rational::{q_to_string, to_f64, Q};
use super::{ExactDiv, Ring};
use crate::error::{Error, Result};

/// A named indeterminate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Curve coefficient `λ_j`, `1 ≤ j ≤ 2g+1`.
    Lambda(usize),
    /// Abelian coordinate `u_j`, `1 ≤ j ≤ g`.
    U(usize),
    /// Point variable `u_g^{(i)}`.
    Point(usize),
    /// Power sum `p_k`.
    P(usize),
    /// Formal symbol `U_k` for the `k`-th signed complete symmetric function.
    Sym(usize),
    /// The coordinate `x` of the curve.
    X,
    /// The coordinate `y` of the curve.
    Y,
    /// Local parameter `t = 1/√x` at infinity.
    T,
    /// The curve-limit coordinate `v_g`.
    V,
    /// An unweighted auxiliary variable.
    Other(String),
}

/// Ordered list of variables plus the genus that fixes their Sato weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    genus: usize,
    vars: Vec<Var>,
}

impl VarTable {
    /// Builds a table. Duplicate variables are rejected.
    pub fn new(genus: usize, vars: Vec<Var>) -> Result<Arc<Self>> {
        let set: BTreeSet<&Var> = vars.iter().collect();
        if set.len() != vars.len() {
            return Err(Error::Configuration("duplicate variable in table".into()));
        }
        Ok(Arc::new(VarTable { genus, vars }))
    }

    /// Table holding `λ_1..λ_{2g+1}`.
    pub fn lambdas(genus: usize) -> Arc<Self> {
        Arc::new(VarTable {
            genus,
            vars: (1..=2 * genus + 1).map(Var::Lambda).collect(),
        })
    }

    /// Table holding `u_1..u_g`.
    pub fn abelian(genus: usize) -> Arc<Self> {
        Arc::new(VarTable {
            genus,
            vars: (1..=genus).map(Var::U).collect(),
        })
    }

    /// Table holding the point variables `u_g^{(1)}..u_g^{(n)}`.
    pub fn points(genus: usize, n: usize) -> Arc<Self> {
        Arc::new(VarTable {
            genus,
            vars: (1..=n).map(Var::Point).collect(),
        })
    }

    /// Table holding `p_1..p_k`.
    pub fn power_sums(genus: usize, k: usize) -> Arc<Self> {
        Arc::new(VarTable {
            genus,
            vars: (1..=k).map(Var::P).collect(),
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn index(&self, v: &Var) -> Option<usize> {
        self.vars.iter().position(|w| w == v)
    }

    /// Sato weight of the `i`-th variable, `None` when unweighted.
    pub fn weight(&self, i: usize) -> Option<i64> {
        let g = self.genus as i64;
        Some(match &self.vars[i] {
            Var::Lambda(j) => -2 * *j as i64,
            Var::U(j) => 2 * (g - *j as i64) + 1,
            Var::Point(_) | Var::T | Var::V => 1,
            Var::P(k) | Var::Sym(k) => *k as i64,
            Var::X => -2,
            Var::Y => -(2 * g + 1),
            Var::Other(_) => return None,
        })
    }

    /// Printable name of the `i`-th variable.
    pub fn name(&self, i: usize) -> String {
        let g = self.genus;
        match &self.vars[i] {
            Var::Lambda(j) => format!("l{j}"),
            Var::U(j) => format!("u{j}"),
            Var::Point(k) => format!("u{g}({k})"),
            Var::P(k) => format!("p{k}"),
            Var::Sym(k) => format!("U{k}"),
            Var::X => "x".into(),
            Var::Y => "y".into(),
            Var::T => "t".into(),
            Var::V => format!("v{g}"),
            Var::Other(s) => s.clone(),
        }
    }
}

/// Exponent vector, one entry per table variable.
pub type Exponents = Vec<u32>;

/// Sparse polynomial in the variables of a [`VarTable`].
#[derive(Clone)]
pub struct MPoly {
    table: Arc<VarTable>,
    terms: BTreeMap<Exponents, Q>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.table, &other.table) || self.table == other.table)
            && self.terms == other.terms
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c < &Q::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.table.name(i)
                    } else {
                        format!("{}^{}", self.table.name(i), k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", q_to_string(&a))?;
            } else if One::is_one(&a) {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", q_to_string(&a), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Canonical JSON form: variable names, a common positive denominator and
/// integer-string numerators keyed by sorted exponent vectors.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CanonicalPoly {
    pub variables: Vec<String>,
    pub denominator: String,
    pub terms: Vec<CanonicalTerm>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CanonicalTerm {
    pub exponents: Vec<u32>,
    pub coefficient: String,
}

impl MPoly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        MPoly {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, Q::one())
    }

    pub fn constant(table: &Arc<VarTable>, c: Q) -> Self {
        let mut p = Self::zero(table);
        if !Zero::is_zero(&c) {
            p.terms.insert(vec![0; table.len()], c);
        }
        p
    }

    /// The variable `v`, which must belong to the table.
    pub fn var(table: &Arc<VarTable>, v: &Var) -> Result<Self> {
        let i = table
            .index(v)
            .ok_or_else(|| Error::Configuration(format!("variable {v:?} not in table")))?;
        Ok(Self::var_at(table, i))
    }

    /// The `i`-th variable of the table.
    pub fn var_at(table: &Arc<VarTable>, i: usize) -> Self {
        let mut e = vec![0; table.len()];
        e[i] = 1;
        Self::monomial(table, e, Q::one())
    }

    pub fn monomial(table: &Arc<VarTable>, e: Exponents, c: Q) -> Self {
        assert_eq!(e.len(), table.len(), "exponent arity must match the table");
        let mut p = Self::zero(table);
        if !Zero::is_zero(&c) {
            p.terms.insert(e, c);
        }
        p
    }

    /// Builds a polynomial from raw terms, merging duplicates and dropping zeros.
    pub fn from_terms(table: &Arc<VarTable>, terms: impl IntoIterator<Item = (Exponents, Q)>) -> Self {
        let mut p = Self::zero(table);
        for (e, c) in terms {
            assert_eq!(e.len(), table.len(), "exponent arity must match the table");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: Q) {
        if Zero::is_zero(&c) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if Zero::is_zero(o.get()) {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn constant_term(&self) -> Q {
        self.terms
            .get(&vec![0; self.table.len()])
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lowest total degree, `None` for the zero polynomial.
    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    /// Part of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        MPoly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn min_degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).min()
    }

    /// Coefficient of `var_i^k`, as a polynomial with that variable removed.
    pub fn coefficient_in(&self, i: usize, k: u32) -> Self {
        let mut out = Self::zero(&self.table);
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut e2 = e.clone();
                e2[i] = 0;
                out.terms.insert(e2, c.clone());
            }
        }
        out
    }

    /// Indices of variables that actually occur.
    pub fn support(&self) -> BTreeSet<usize> {
        let mut s = BTreeSet::new();
        for e in self.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    s.insert(i);
                }
            }
        }
        s
    }

    /// Partial derivative with respect to the `i`-th variable.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.table);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                let k = e2[i];
                e2[i] -= 1;
                out.terms.insert(e2, c * Q::from_integer(k.into()));
            }
        }
        out
    }

    /// Partial derivative with respect to the named variable.
    pub fn derivative_var(&self, v: &Var) -> Result<Self> {
        let i = self
            .table
            .index(v)
            .ok_or_else(|| Error::Configuration(format!("variable {v:?} not in table")))?;
        Ok(self.derivative(i))
    }

    /// Substitutes `images[i]` for the `i`-th variable. All images must share
    /// the target table.
    pub fn compose(&self, images: &[MPoly], target: &Arc<VarTable>) -> Result<Self> {
        if images.len() != self.table.len() {
            return Err(Error::Dimension(format!(
                "compose needs {} images, got {}",
                self.table.len(),
                images.len()
            )));
        }
        if images.iter().any(|p| p.table != *target) {
            return Err(Error::Configuration("compose images use a different table".into()));
        }
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::one(target), p.clone()]).collect();
        for e in self.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
            }
        }
        let mut acc: HashMap<Exponents, Q> = HashMap::new();
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&powers[i][k as usize]);
                }
            }
            for (e2, c2) in term.terms {
                *acc.entry(e2).or_insert_with(Q::zero) += c2;
            }
        }
        Ok(MPoly::from_terms(target, acc))
    }

    /// Replaces one variable by a polynomial over the same table.
    pub fn substitute(&self, i: usize, value: &MPoly) -> Result<Self> {
        let images: Vec<MPoly> = (0..self.table.len())
            .map(|j| if j == i { value.clone() } else { MPoly::var_at(&self.table, j) })
            .collect();
        self.compose(&images, &self.table.clone())
    }

    /// Re-expresses the polynomial over a table that contains all of its
    /// variables.
    pub fn lift(&self, target: &Arc<VarTable>) -> Result<Self> {
        let map: Vec<usize> = self
            .table
            .vars()
            .iter()
            .map(|v| {
                target
                    .index(v)
                    .ok_or_else(|| Error::Configuration(format!("variable {v:?} missing from target table")))
            })
            .collect::<Result<_>>()?;
        let mut out = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] = k;
            }
            out.terms.insert(e2, c.clone());
        }
        Ok(out)
    }

    /// Exact evaluation at rational values, one per variable.
    pub fn eval_q(&self, values: &[Q]) -> Q {
        assert_eq!(values.len(), self.table.len());
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= num_traits::pow(values[i].clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Floating evaluation at complex values, one per variable.
    pub fn eval_c(&self, values: &[Complex64]) -> Complex64 {
        assert_eq!(values.len(), self.table.len());
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = Complex64::new(to_f64(c), 0.0);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= values[i].powu(k);
                }
            }
            acc += t;
        }
        acc
    }

    /// Set of Sato weights carried by the terms.
    pub fn sato_weights(&self) -> Result<BTreeSet<i64>> {
        let mut w = BTreeSet::new();
        for e in self.terms.keys() {
            let mut s = 0i64;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let wi = self.table.weight(i).ok_or_else(|| {
                        Error::Configuration(format!("variable `{}` has no Sato weight", self.table.name(i)))
                    })?;
                    s += wi * k as i64;
                }
            }
            w.insert(s);
        }
        Ok(w)
    }

    /// True iff every term has Sato weight `w`. The zero polynomial is
    /// homogeneous of every weight.
    pub fn check_sato_homogeneous(&self, w: i64) -> Result<bool> {
        Ok(self.sato_weights()?.iter().all(|&x| x == w))
    }

    /// Canonical serialisable form.
    pub fn canonical(&self) -> CanonicalPoly {
        use num_integer::Integer;
        let mut den = num_bigint::BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| CanonicalTerm {
                exponents: e.clone(),
                coefficient: (c * Q::from_integer(den.clone())).numer().to_string(),
            })
            .collect();
        CanonicalPoly {
            variables: (0..self.table.len()).map(|i| self.table.name(i)).collect(),
            denominator: den.to_string(),
            terms,
        }
    }

    /// Leading term under lexicographic order.
    fn leading(&self) -> Option<(&Exponents, &Q)> {
        self.terms.iter().next_back()
    }
}

impl Ring for MPoly {
    fn zero_like(&self) -> Self {
        MPoly::zero(&self.table)
    }
    fn one_like(&self) -> Self {
        MPoly::one(&self.table)
    }
    fn from_q_like(&self, c: &Q) -> Self {
        MPoly::constant(&self.table, c.clone())
    }
    fn add(&self, other: &Self) -> Self {
        debug_assert!(self.table == other.table);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        debug_assert!(self.table == other.table);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        debug_assert!(self.table == other.table);
        if self.terms.is_empty() || other.terms.is_empty() {
            return self.zero_like();
        }
        let mut acc: HashMap<Exponents, Q> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        MPoly {
            table: self.table.clone(),
            terms: acc.into_iter().filter(|(_, c)| !Zero::is_zero(c)).collect(),
        }
    }
    fn neg(&self) -> Self {
        MPoly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn scale(&self, c: &Q) -> Self {
        if Zero::is_zero(c) {
            return self.zero_like();
        }
        MPoly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(e, d)| (e.clone(), d * c)).collect(),
        }
    }
    fn leading_rational(&self) -> Option<Q> {
        self.leading().map(|(_, c)| c.clone())
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_constant() && !self.terms.is_empty() {
            Some(MPoly::constant(&self.table, self.constant_term().recip()))
        } else {
            None
        }
    }
}

impl ExactDiv for MPoly {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dl_e, dl_c) = d.leading()?;
        let dl_e = dl_e.clone();
        let dl_c = dl_c.clone();
        let mut r = self.clone();
        let mut quo = MPoly::zero(&self.table);
        while let Some((re, rc)) = r.leading() {
            if re.iter().zip(&dl_e).any(|(a, b)| a < b) {
                return None;
            }
            let te: Exponents = re.iter().zip(&dl_e).map(|(a, b)| a - b).collect();
            let tc = rc / &dl_c;
            for (e, c) in &d.terms {
                let e2: Exponents = e.iter().zip(&te).map(|(a, b)| a + b).collect();
                r.add_term(e2, -(c * &tc));
            }
            quo.terms.insert(te, tc);
        }
        Some(quo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qf};

    fn uvars(g: usize) -> (Arc<VarTable>, Vec<MPoly>) {
        let t = VarTable::abelian(g);
        let v = (0..g).map(|i| MPoly::var_at(&t, i)).collect();
        (t, v)
    }

    #[test]
    fn hankel_weight() {
        let (_, u) = uvars(3);
        let h = u[0].mul(&u[2]).sub(&u[1].mul(&u[1]));
        assert!(h.check_sato_homogeneous(6).unwrap());
        let (_, u) = uvars(2);
        assert!(!u[0].add(&u[1]).check_sato_homogeneous(3).unwrap());
    }

    #[test]
    fn unweighted_variable_is_a_configuration_error() {
        let t = VarTable::new(1, vec![Var::Other("z".into())]).unwrap();
        let z = MPoly::var_at(&t, 0);
        assert!(matches!(z.check_sato_homogeneous(1), Err(Error::Configuration(_))));
    }

    #[test]
    fn exact_division_round_trip() {
        let (_, u) = uvars(3);
        let a = u[0].mul(&u[1]).add(&u[2].scale(&qf(3, 2))).sub(&u[0].constant_like(q(5)));
        let b = u[1].mul(&u[1]).add(&u[0]).add(&u[2].constant_like(q(1)));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&b).unwrap(), a);
        assert!(p.add(&u[0]).div_exact(&b).is_none());
    }

    #[test]
    fn compose_and_lift() {
        let (t, u) = uvars(2);
        let p = u[0].mul(&u[0]).add(&u[1]);
        let img = vec![u[1].clone(), u[0].add(&u[1])];
        let c = p.compose(&img, &t).unwrap();
        assert_eq!(c, u[1].mul(&u[1]).add(&u[0]).add(&u[1]));
        let big = VarTable::new(3, vec![Var::X, Var::U(1), Var::U(2)]).unwrap();
        assert_eq!(p.lift(&big).unwrap().num_terms(), 2);
    }

    impl MPoly {
        fn constant_like(&self, c: Q) -> MPoly {
            MPoly::constant(&self.table, c)
        }
    }
}
