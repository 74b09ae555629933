//! Exact samplers for one-sided stable laws and isotropic stable vectors.
//!
//! The unit one-sided law with `E exp(-mu X) = exp(-mu^nu)` is drawn with
//! Kanter's representation
//!
//! `X = (A(U) / W)^((1 - nu)/nu)`, `U ~ U(0, pi)`, `W ~ Exp(1)`,
//! `A(u) = sin(nu u)^(nu/(1-nu)) sin((1-nu) u) / sin(u)^(1/(1-nu))`,
//!
//! evaluated in log space.

use crate::error::{ensure_positive, Error, Result};
use rand::distr::{Distribution, Open01};
use rand::Rng;
use rand_distr::StandardNormal;
use std::f64::consts::PI;

/// Stability index `nu` in `(0, 1]`; `nu = 1` is the deterministic drift.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct StableIndex(f64);

impl StableIndex {
    pub fn new(nu: f64) -> Result<Self> {
        if nu > 0.0 && nu <= 1.0 {
            Ok(StableIndex(nu))
        } else {
            Err(Error::invalid(format!("stable index must lie in (0, 1], got {nu}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_drift(self) -> bool {
        self.0 == 1.0
    }
}

/// `log A(u)` of Kanter's representation, for `0 < nu < 1`, `0 < u < pi`.
pub fn kanter_log_a(nu: f64, u: f64) -> f64 {
    let k = nu / (1.0 - nu);
    k * (nu * u).sin().ln() + ((1.0 - nu) * u).sin().ln() - u.sin().ln() / (1.0 - nu)
}

pub(crate) fn open01<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    Open01.sample(rng)
}

pub(crate) fn exp1<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    -open01(rng).ln()
}

/// One draw of the unit-time law `E exp(-mu X) = exp(-mu^nu)`, `0 < nu < 1`.
pub fn unit_stable<R: Rng + ?Sized>(nu: f64, rng: &mut R) -> f64 {
    let u = PI * open01(rng);
    let w = exp1(rng);
    let x = ((1.0 - nu) / nu * (kanter_log_a(nu, u) - w.ln())).exp();
    x.max(f64::MIN_POSITIVE)
}

/// One draw of `H^nu(t)`: `t^(1/nu)` times a unit draw, or exactly `t` when
/// `nu = 1`.
pub fn sample_positive_stable<R: Rng + ?Sized>(nu: StableIndex, t: f64, rng: &mut R) -> Result<f64> {
    ensure_positive("t", t)?;
    if nu.is_drift() {
        return Ok(t);
    }
    Ok(t.powf(1.0 / nu.0) * unit_stable(nu.0, rng))
}

/// One draw of the isotropic `n`-dimensional vector with characteristic
/// function `exp(-t |xi|^(2 beta))`: a standard Gaussian vector scaled by
/// `sqrt(2 H^beta(t))`.
pub fn sample_isotropic_stable_vector<R: Rng + ?Sized>(n: usize, beta: f64, t: f64, rng: &mut R) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    let beta = StableIndex::new(beta)?;
    ensure_positive("t", t)?;
    let h = sample_positive_stable(beta, t, rng)?;
    let scale = (2.0 * h).sqrt();
    Ok((0..n)
        .map(|_| {
            let g: f64 = StandardNormal.sample(rng);
            scale * g
        })
        .collect())
}
