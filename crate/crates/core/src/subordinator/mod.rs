//! Weighted sums of independent stable subordinators, their first-passage
//! (inverse) processes, and r-fold iterated versions.
//!
//! A spec `{(lambda_j, nu_j)}` describes
//! `H(t) = sum_j lambda_j^(1/nu_j) H_j(t)`, where `H_j` is the unit-rate
//! `nu_j`-stable subordinator (`E exp(-mu H_j(t)) = exp(-t mu^nu_j)`).

pub mod bridge;
pub mod iterated;
pub mod passage;
pub mod path;
pub mod spec;

pub use iterated::{sample_iterated_h, sample_iterated_l};
pub use passage::{sample_l, sample_l_levels, PassagePath, DEFAULT_REFINE_TOL};
pub use path::{sample_h, simulate_h_path, MonotonePath};
pub use spec::{principal_pow, IterationDepth, SubordinatorSpec};
