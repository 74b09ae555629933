//! r-fold iterated subordinators `H_j(H_j'(... H_j''(t)))`.

use super::passage::sample_l;
use super::spec::{IterationDepth, SubordinatorSpec};
use crate::error::{ensure_positive, Result};
use crate::sampling::{unit_stable, RngStream};
use rand::Rng;

/// One draw of `sum_j lambda_j^(1/nu_j^r) H_j^(1)(H_j^(2)(... H_j^(r)(t)))`
/// with independent unit-rate `nu_j`-stable subordinators at every level.
///
/// The composition is `nu_j^r`-stable, so the weights make the Laplace
/// exponent `sum_j lambda_j mu^(nu_j^r)`. Each (level, branch) pair draws
/// from its own substream.
pub fn sample_iterated_h<R: Rng + ?Sized>(spec: &SubordinatorSpec, depth: IterationDepth, t: f64, rng: &mut R) -> Result<f64> {
    ensure_positive("t", t)?;
    let base = RngStream::new(rng.random(), 0);
    let r = depth.get();
    let mut acc = 0.0;
    for (j, (lambda, nu)) in spec.terms().enumerate() {
        let mut x = t;
        if nu < 1.0 {
            for level in 0..r {
                let mut g = base.substream(&[level as u64, j as u64]).generator();
                x = x.powf(1.0 / nu) * unit_stable(nu, &mut g);
            }
        }
        acc += lambda.powf(1.0 / nu.powi(r as i32)) * x;
    }
    Ok(acc)
}

/// First passage of the iterated process above level `t`.
///
/// The iterated process is a Lévy process equal in law to the weighted
/// subordinator with terms `(lambda_j, nu_j^r)`, so its hitting time is drawn
/// as that subordinator's.
pub fn sample_iterated_l<R: Rng + ?Sized>(
    spec: &SubordinatorSpec,
    depth: IterationDepth,
    t: f64,
    refine_tol: f64,
    rng: &mut R,
) -> Result<f64> {
    sample_l(&spec.iterated(depth), t, refine_tol, rng)
}
