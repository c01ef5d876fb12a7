//! Determinants over exact rings.
//!
//! [`det_fraction_free`] runs Bareiss elimination, whose intermediate
//! divisions are exact in any integral domain, and falls back to cofactor
//! expansion for matrices of size at most 4. [`det_cofactor`] needs no
//! division at all and also serves rings without exact division.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::rational::Q;
use super::{ExactDiv, Ring};
use crate::error::{Error, Result};

fn check_square<R>(m: &[Vec<R>]) -> Result<usize> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Dimension(format!(
                "row {i} has {} entries in a {n}-row matrix",
                row.len()
            )));
        }
    }
    Ok(n)
}

/// Determinant by Laplace expansion along rows with memoised minors.
///
/// Costs `O(n 2^n)` ring operations. `one` supplies the value of the empty
/// determinant.
pub fn det_cofactor<R: Ring>(m: &[Vec<R>], one: &R) -> Result<R> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(one.clone());
    }
    if n > 24 {
        return Err(Error::Dimension("cofactor expansion limited to size 24".into()));
    }
    // minors[mask] = det of the last popcount(mask) rows restricted to columns in mask
    let mut minors: HashMap<u32, R> = HashMap::new();
    minors.insert(0, one.clone());
    for k in 1..=n {
        let row = &m[n - k];
        let mut next: HashMap<u32, R> = HashMap::new();
        for (&mask, sub) in &minors {
            if sub.is_zero() {
                continue;
            }
            for (c, entry) in row.iter().enumerate() {
                if mask & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                // sign from the position of column c among the columns of mask | c
                let before = (mask & ((1u32 << c) - 1)).count_ones();
                let term = entry.mul(sub);
                let term = if before % 2 == 1 { term.neg() } else { term };
                let key = mask | (1 << c);
                match next.get_mut(&key) {
                    Some(v) => *v = v.add(&term),
                    None => {
                        next.insert(key, term);
                    }
                }
            }
        }
        minors = next;
    }
    Ok(minors
        .remove(&((1u32 << n) - 1))
        .unwrap_or_else(|| one.zero_like()))
}

/// Fraction-free (Bareiss) determinant.
pub fn det_fraction_free<R: ExactDiv>(m: &[Vec<R>], one: &R) -> Result<R> {
    let n = check_square(m)?;
    if n <= 4 {
        return det_cofactor(m, one);
    }
    let mut a: Vec<Vec<R>> = m.to_vec();
    let mut sign = false;
    let mut prev = one.clone();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return Ok(one.zero_like()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num
                    .div_exact(&prev)
                    .ok_or_else(|| Error::Domain("inexact Bareiss division".into()))?;
            }
            a[i][k] = one.zero_like();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { d.neg() } else { d })
}

/// Determinant of a rational matrix by Gaussian elimination.
pub fn det_q(m: &[Vec<Q>]) -> Result<Q> {
    let n = check_square(m)?;
    let mut a = m.to_vec();
    let mut d = Q::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !Zero::is_zero(&a[i][k])) else {
            return Ok(Q::zero());
        };
        if p != k {
            a.swap(p, k);
            d = -d;
        }
        let piv = a[k][k].clone();
        d *= &piv;
        for i in k + 1..n {
            if Zero::is_zero(&a[i][k]) {
                continue;
            }
            let f = &a[i][k] / &piv;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::mpoly::{MPoly, VarTable};
    use crate::exact::rational::q;

    fn qm(v: &[&[i64]]) -> Vec<Vec<Q>> {
        v.iter().map(|r| r.iter().map(|&k| q(k)).collect()).collect()
    }

    #[test]
    fn small_cases() {
        let one = Q::one();
        let id = qm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(det_fraction_free(&id, &one).unwrap(), q(1));
        assert_eq!(det_fraction_free(&qm(&[&[0, 1], &[1, 0]]), &one).unwrap(), q(-1));
        assert!(matches!(
            det_fraction_free(&qm(&[&[1, 2]]), &one),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn hankel_2x2() {
        let t = VarTable::abelian(3);
        let u: Vec<MPoly> = (0..3).map(|i| MPoly::var_at(&t, i)).collect();
        let m = vec![vec![u[0].clone(), u[1].clone()], vec![u[1].clone(), u[2].clone()]];
        let d = det_fraction_free(&m, &MPoly::one(&t)).unwrap();
        assert_eq!(d, u[0].mul(&u[2]).sub(&u[1].mul(&u[1])));
    }

    #[test]
    fn bareiss_matches_gauss() {
        let m = qm(&[
            &[2, -1, 0, 3, 1, 4],
            &[1, 1, 5, -2, 0, 1],
            &[0, 3, 1, 1, -1, 2],
            &[4, 0, -2, 1, 1, 1],
            &[1, 2, 3, 4, 5, 6],
            &[-3, 1, 0, 2, 2, -1],
        ]);
        let one = Q::one();
        let b = det_fraction_free(&m, &one).unwrap();
        assert_eq!(b, det_q(&m).unwrap());
        assert_eq!(b, det_cofactor(&m, &one).unwrap());
    }
}
