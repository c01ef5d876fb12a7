//! Brill–Noether matrices of divisors `P_1 + ... + P_n + m·∞`.
//!
//! Rows are the differentials `ω_1, ..., ω_g`. A finite ordinary point
//! contributes the column `x^{i-1}/2y` (local parameter `x - x(P)`). The
//! point at infinity contributes Taylor coefficients of `u_i(t)`,
//! `t = 1/√x`. Two conventions are available for that block:
//! [`InfinityBlock::Definition`] takes the derivatives of orders
//! `1, ..., m` (the definition of `δ^ℓ`), while [`InfinityBlock::Displayed`]
//! takes orders `0, ..., m-1`, which reproduces the staircase of the
//! displayed matrix, leading zero row included.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::curve_series::{expand_at_infinity, point_xy, CurveSpec};
use crate::error::{Error, Result};
use crate::exact::rational::{factorial, to_f64};
use crate::exact::Q;

/// Relative singular-value threshold below which a value counts as zero.
pub const RANK_THRESHOLD: f64 = 1e-8;
/// Singular values in `[RANK_THRESHOLD, AMBIGUOUS_BAND)·σ_max` make the rank
/// ill-conditioned.
pub const AMBIGUOUS_BAND: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InfinityBlock {
    Definition,
    Displayed,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub singular_values: Vec<f64>,
    pub columns: usize,
    /// `deg D + 1 - rank`.
    pub dimension: i64,
}

/// The matrix for `P_1 + ... + P_n + m·∞`, points given by their
/// `t`-parameters.
pub fn brill_noether_matrix(
    c: &CurveSpec<Q>,
    points: &[Complex64],
    m: usize,
    block: InfinityBlock,
) -> Result<DMatrix<Complex64>> {
    let g = c.genus();
    let cols = points.len() + m;
    let mut b = DMatrix::from_element(g, cols, Complex64::new(0.0, 0.0));
    let xs: Vec<Complex64> = points
        .iter()
        .map(|&t| point_xy(c, t).map(|p| p.0))
        .collect::<Result<Vec<_>>>()?;
    for (k, &t) in points.iter().enumerate() {
        let (x, y) = point_xy(c, t)?;
        if y.norm() < 1e-12 {
            return Err(Error::Domain("branch points need the local parameter y".into()));
        }
        if xs[..k].iter().any(|&x2| (x - x2).norm() < 1e-6 * x.norm().max(1.0)) {
            return Err(Error::Conditioning("points too close together".into()));
        }
        for i in 0..g {
            b[(i, k)] = x.powu(i as u32) / (y * 2.0);
        }
    }
    if m > 0 {
        let shift = if block == InfinityBlock::Definition { 1 } else { 0 };
        let le = expand_at_infinity(c, (m + shift + 2).max(2 * g + 3))?;
        for l in 0..m {
            let d = l + shift;
            for i in 0..g {
                let coeff = le.u[i].coeff(d as i64).unwrap_or_else(|| Q::from_integer(0.into()));
                b[(i, points.len() + l)] = Complex64::new(to_f64(&(coeff * factorial(d as u32))), 0.0);
            }
        }
    }
    Ok(b)
}

/// Rescales rows and columns to unit norm; the rank is unchanged.
fn equilibrate(b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let mut m = b.clone();
    for _ in 0..3 {
        for mut c in m.column_iter_mut() {
            let n = c.norm();
            if n > 0.0 {
                c /= Complex64::new(n, 0.0);
            }
        }
        for mut r in m.row_iter_mut() {
            let n = r.norm();
            if n > 0.0 {
                r /= Complex64::new(n, 0.0);
            }
        }
    }
    m
}

/// Numerical rank by singular values relative to the largest one, after
/// row and column equilibration.
pub fn numerical_rank(b: &DMatrix<Complex64>) -> Result<(usize, Vec<f64>)> {
    let mut sv: Vec<f64> = equilibrate(b).svd(false, false).singular_values.iter().cloned().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let top = sv.first().cloned().unwrap_or(0.0);
    if top == 0.0 {
        return Ok((0, sv));
    }
    if sv.iter().any(|&s| s >= RANK_THRESHOLD * top && s < AMBIGUOUS_BAND * top) {
        return Err(Error::Conditioning(format!("singular values {sv:?} leave the rank ambiguous")));
    }
    Ok((sv.iter().filter(|&&s| s >= RANK_THRESHOLD * top).count(), sv))
}

/// Rank of `B(D)` for `D = P_1 + ... + P_n + m·∞`.
pub fn rank_report(c: &CurveSpec<Q>, points: &[Complex64], m: usize, block: InfinityBlock) -> Result<RankReport> {
    let b = brill_noether_matrix(c, points, m, block)?;
    let (rank, singular_values) = numerical_rank(&b)?;
    let deg = (points.len() + m) as i64;
    Ok(RankReport {
        rank,
        singular_values,
        columns: b.ncols(),
        dimension: deg + 1 - rank as i64,
    })
}

/// Rank of the displayed `g × g` matrix for `D = P_1 + ... + P_n + (g-n)·∞`.
pub fn brill_noether_rank(c: &CurveSpec<Q>, points: &[Complex64], n: usize) -> Result<usize> {
    let g = c.genus();
    if points.len() != n || n > g {
        return Err(Error::Dimension(format!("need n = {n} ≤ g points")));
    }
    Ok(rank_report(c, points, g - n, InfinityBlock::Displayed)?.rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;

    fn ts(k: usize) -> Vec<Complex64> {
        (0..k).map(|i| Complex64::new(0.11 + 0.07 * i as f64, 0.03 * i as f64)).collect()
    }

    #[test]
    fn ranks() {
        let c = CurveSpec::from_roots(&[q(-3), q(-2), q(-1), q(0), q(1), q(2), q(4)]).unwrap();
        assert_eq!(brill_noether_rank(&c, &ts(3), 3).unwrap(), 3);
        assert_eq!(brill_noether_rank(&c, &ts(1), 1).unwrap(), 2);
        // degree g-1 divisor P + ∞ by the definition: one function, rank 2
        let r = rank_report(&c, &ts(1), 1, InfinityBlock::Definition).unwrap();
        assert_eq!((r.rank, r.dimension), (2, 1));
    }
}
