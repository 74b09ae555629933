use super::spec::SubordinatorSpec;
use crate::error::{ensure_positive, Error, Result};
use crate::sampling::unit_stable;
use rand::Rng;

/// Sample path on a time grid: `values[i] = H(times[i])`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonePath {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

/// Unweighted increment of each unit-rate component over a step `dt`.
pub(crate) fn component_increments<R: Rng + ?Sized>(spec: &SubordinatorSpec, dt: f64, rng: &mut R) -> Vec<f64> {
    spec.terms()
        .map(|(_, nu)| if nu == 1.0 { dt } else { dt.powf(1.0 / nu) * unit_stable(nu, rng) })
        .collect()
}

fn weighted<R: Rng + ?Sized>(spec: &SubordinatorSpec, w: &[f64], dt: f64, rng: &mut R) -> f64 {
    component_increments(spec, dt, rng).iter().zip(w).map(|(h, w)| h * w).sum()
}

/// One draw of `H(t)`.
pub fn sample_h<R: Rng + ?Sized>(spec: &SubordinatorSpec, t: f64, rng: &mut R) -> Result<f64> {
    ensure_positive("t", t)?;
    Ok(weighted(spec, &spec.weights(), t, rng))
}

/// `H` on `grid`, which must start at 0 and increase strictly.
pub fn simulate_h_path<R: Rng + ?Sized>(spec: &SubordinatorSpec, grid: &[f64], rng: &mut R) -> Result<MonotonePath> {
    if grid.first() != Some(&0.0) {
        return Err(Error::invalid("time grid must start at 0"));
    }
    if grid.windows(2).any(|p| !(p[1] > p[0]) || !p[1].is_finite()) {
        return Err(Error::invalid("time grid must be strictly increasing"));
    }
    let w = spec.weights();
    let mut values = Vec::with_capacity(grid.len());
    let mut acc = 0.0;
    values.push(acc);
    for p in grid.windows(2) {
        acc += weighted(spec, &w, p[1] - p[0], rng);
        values.push(acc);
    }
    Ok(MonotonePath { times: grid.to_vec(), values })
}
