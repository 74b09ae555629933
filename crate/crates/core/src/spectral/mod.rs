//! Analytic and semi-analytic solutions of the space-time fractional Cauchy
//! problem `sum_j lambda_j D_t^(nu_j) w = -c^2 (-Delta)^beta w`, `w(x, 0) = delta`.
//!
//! The Fourier–Laplace transform of the solution is
//! `sum_j lambda_j mu^(nu_j - 1) / (sum_j lambda_j mu^(nu_j) + c^2 |xi|^(2 beta))`;
//! everything here evaluates, inverts or tabulates it.

pub mod density;
pub mod model;
pub mod radial;
pub mod telegraph;
pub mod transform;

pub use density::{density_1d, DensityGrid, DensityMethod, FftOptions};
pub use model::{ModelParams, SpectralArg, SpectralQuery};
pub use radial::{density_radial, limit_density, limit_density_radial, sphere_area, wynn_epsilon, RadialMode};
pub use telegraph::{cf_telegraph_k2, cf_telegraph_k3, cf_telegraph_k3_variant, telegraph_process_cf, K3Variant};
pub use transform::{
    cf_iterated_laplace, cf_laplace, cf_limit, cf_time, cf_time_certified, cf_time_stehfest, CertifiedCf, CfTimeTable,
};
