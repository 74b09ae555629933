//! Random variate generation: one-sided stable laws, isotropic stable
//! vectors, and the reproducible streams that feed them.

pub mod density;
pub mod rng;
pub mod stable;

pub use density::{stable_density, StableDensity};
pub use rng::RngStream;
pub use stable::{sample_isotropic_stable_vector, sample_positive_stable, unit_stable, StableIndex};
