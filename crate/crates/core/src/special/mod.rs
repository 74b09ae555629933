//! Scalar special functions used throughout the solvers.

pub mod bessel;
pub mod cubic;
pub mod gamma;
pub mod mittag_leffler;

pub use bessel::{bessel_j, bessel_k};
pub use cubic::{solve_depressed_cubic, CubicRoots};
pub use gamma::{gamma, ln_gamma, rgamma};
pub use mittag_leffler::{
    mittag_leffler, mittag_leffler_detailed, mittag_leffler_regime, ml, MLParams, MLRegime, MLValue,
};
