//! Numeric engine: branch points, periods, Riemann theta and the sigma
//! function of a curve with real branch points.

pub mod brill_noether;
pub mod lattice;
pub mod periods;
pub mod roots;
pub mod sigma;
pub mod theta;
