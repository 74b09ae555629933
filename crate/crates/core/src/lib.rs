//! Simulation and analytic solution of multi-term space-time fractional
//! Cauchy problems driven by weighted and iterated stable subordinators.

// Coefficient tables keep their published digits; `!(x > 0.0)` also rejects NaN.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod ddouble;
pub mod error;
pub mod laplace;
pub mod quadrature;
pub mod sampling;
pub mod special;
pub mod spectral;
pub mod subordinator;
pub mod verify;

pub use error::{Error, Result};
