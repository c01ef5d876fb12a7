//! Exact arithmetic: rationals, sparse multivariate polynomials, univariate
//! polynomials, truncated power series and determinants.
//!
//! Every algebraic container in the crate is generic over [`Ring`], which is
//! implemented for [`Q`] and [`MPoly`]. Operations are pure; values are
//! immutable once built and can be shared between threads.

pub mod det;
pub mod mpoly;
pub mod rational;
pub mod series;
pub mod upoly;

pub use det::{det_cofactor, det_fraction_free, det_q};
pub use mpoly::{MPoly, Var, VarTable};
pub use rational::{q, qf, Q};
pub use series::TruncSeries;
pub use upoly::UPoly;

use std::fmt::Debug;

/// Commutative ring with unit, as used by the generic containers.
///
/// `zero_like` and `one_like` build constants in the same ambient structure
/// as `self` (for [`MPoly`] this means the same variable table).
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_q_like(&self, c: &Q) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn scale(&self, c: &Q) -> Self;
    /// Multiplicative inverse when `self` is a unit.
    fn inverse(&self) -> Option<Self>;

    /// A rational coefficient that scales with `self`: if `b = k a` for a
    /// rational `k`, then `b.leading_rational() = k a.leading_rational()`.
    fn leading_rational(&self) -> Option<Q>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Rings with exact division: `a.div_exact(b)` is `Some(c)` iff `a = b c`.
pub trait ExactDiv: Ring {
    fn div_exact(&self, d: &Self) -> Option<Self>;
}
