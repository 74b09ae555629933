//! First passage `L(t) = inf{s : H(s) >= t}` by forward simulation of `H`
//! and bisection of the crossing interval.
//!
//! `H` is stepped forward from 0 with steps `0.1 t, 0.2 t, 0.4 t, ...`
//! until it reaches the level. The crossing interval is then halved
//! repeatedly: each component's increment over the interval is split between
//! the two halves by drawing from its exact conditional law given the sum
//! (see [`super::bridge`]). Once the interval is no wider than `refine_tol`
//! its left endpoint is returned, so the draw is biased low by at most
//! `refine_tol`.
//!
//! All simulated nodes are kept, so querying several levels on one
//! [`PassagePath`] yields first passages of a single path of `H`.

use super::bridge::split_increment;
use super::path::component_increments;
use super::spec::SubordinatorSpec;
use crate::error::{ensure_positive, Error, Result};
use crate::sampling::{stable_density, StableDensity};
use rand::Rng;
use std::sync::Arc;

/// Default refinement width relative to the level, `1e-6 t`.
pub const DEFAULT_REFINE_TOL: f64 = 1e-6;

const MAX_DOUBLINGS: usize = 2000;

/// A lazily refined path of `H`.
#[derive(Debug, Clone)]
pub struct PassagePath {
    spec: SubordinatorSpec,
    weights: Vec<f64>,
    densities: Vec<Option<Arc<StableDensity>>>,
    times: Vec<f64>,
    /// Cumulative unweighted value of every component at each node.
    comps: Vec<Vec<f64>>,
    totals: Vec<f64>,
    next_step: f64,
}

impl PassagePath {
    /// Path starting at `H(0) = 0` whose first forward step is `first_step`.
    pub fn new(spec: &SubordinatorSpec, first_step: f64) -> Result<Self> {
        ensure_positive("first step", first_step)?;
        let densities = spec.terms().map(|(_, nu)| (nu < 1.0).then(|| stable_density(nu))).collect();
        Ok(PassagePath {
            spec: spec.clone(),
            weights: spec.weights(),
            densities,
            times: vec![0.0],
            comps: vec![vec![0.0; spec.len()]],
            totals: vec![0.0],
            next_step: first_step,
        })
    }

    /// Simulated nodes `(s, H(s))` so far.
    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.times.iter().copied().zip(self.totals.iter().copied())
    }

    fn total(&self, c: &[f64]) -> f64 {
        c.iter().zip(&self.weights).map(|(h, w)| h * w).sum()
    }

    fn extend<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let dt = self.next_step;
        self.next_step *= 2.0;
        let inc = component_increments(&self.spec, dt, rng);
        let last = self.comps.last().unwrap();
        let c: Vec<f64> = last.iter().zip(&inc).map(|(a, b)| a + b).collect();
        let total = self.total(&c).max(*self.totals.last().unwrap());
        self.times.push(self.times.last().unwrap() + dt);
        self.comps.push(c);
        self.totals.push(total);
    }

    /// Insert the midpoint of nodes `i` and `i + 1`; returns false when the
    /// interval cannot be split in floating point.
    fn bisect<R: Rng + ?Sized>(&mut self, i: usize, rng: &mut R) -> bool {
        let (s0, s1) = (self.times[i], self.times[i + 1]);
        let mid = 0.5 * (s0 + s1);
        if !(mid > s0 && mid < s1) {
            return false;
        }
        let half = mid - s0;
        let c: Vec<f64> = (0..self.weights.len())
            .map(|j| {
                let (lo, hi) = (self.comps[i][j], self.comps[i + 1][j]);
                let (left, _) = split_increment(self.densities[j].as_deref(), hi - lo, half, rng);
                (lo + left).clamp(lo, hi)
            })
            .collect();
        let total = self.total(&c).clamp(self.totals[i], self.totals[i + 1]);
        self.times.insert(i + 1, mid);
        self.comps.insert(i + 1, c);
        self.totals.insert(i + 1, total);
        true
    }

    /// Left endpoint of a crossing interval of `level` no wider than `tol`.
    pub fn first_passage<R: Rng + ?Sized>(&mut self, level: f64, tol: f64, rng: &mut R) -> Result<f64> {
        ensure_positive("level", level)?;
        ensure_positive("refine_tol", tol)?;
        let mut steps = 0;
        while *self.totals.last().unwrap() < level {
            steps += 1;
            if steps > MAX_DOUBLINGS {
                return Err(Error::invalid("subordinator path failed to reach the level"));
            }
            self.extend(rng);
        }
        // totals[i] < level <= totals[i + 1]
        let mut i = self.totals.partition_point(|&v| v < level) - 1;
        while self.times[i + 1] - self.times[i] > tol {
            if !self.bisect(i, rng) {
                break;
            }
            if self.totals[i + 1] < level {
                i += 1;
            }
        }
        Ok(self.times[i])
    }
}

/// One draw of `L(t)`, refined to `refine_tol`.
pub fn sample_l<R: Rng + ?Sized>(spec: &SubordinatorSpec, t: f64, refine_tol: f64, rng: &mut R) -> Result<f64> {
    ensure_positive("t", t)?;
    ensure_positive("refine_tol", refine_tol)?;
    PassagePath::new(spec, 0.1 * t)?.first_passage(t, refine_tol, rng)
}

/// First passages of one path of `H` over several levels, returned in the
/// order given. The draws are nondecreasing in the level.
pub fn sample_l_levels<R: Rng + ?Sized>(spec: &SubordinatorSpec, levels: &[f64], refine_tol: f64, rng: &mut R) -> Result<Vec<f64>> {
    let lowest = levels.iter().copied().fold(f64::INFINITY, f64::min);
    ensure_positive("t", lowest)?;
    let mut path = PassagePath::new(spec, 0.1 * lowest)?;
    levels.iter().map(|&t| path.first_passage(t, refine_tol, rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_of_drift() {
        let spec = SubordinatorSpec::new(&[(4.0, 1.0)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let l = sample_l(&spec, 8.0, 1e-12, &mut rng).unwrap();
        assert!((l - 2.0).abs() <= 1e-12, "{l}");
    }

    #[test]
    fn nodes_stay_monotone_and_bracket_the_level() {
        let spec = SubordinatorSpec::new(&[(1.0, 0.4), (0.5, 0.9)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..50 {
            let mut p = PassagePath::new(&spec, 0.1).unwrap();
            let l = p.first_passage(1.0, 1e-7, &mut rng).unwrap();
            let nodes: Vec<_> = p.nodes().collect();
            assert!(nodes.windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 >= w[0].1));
            let k = nodes.iter().position(|n| n.0 == l).unwrap();
            assert!(nodes[k].1 < 1.0 && nodes[k + 1].1 >= 1.0);
            assert!(nodes[k + 1].0 - l <= 1e-7);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let spec = SubordinatorSpec::stable(0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(sample_l(&spec, 0.0, 1e-6, &mut rng).is_err());
        assert!(sample_l(&spec, 1.0, 0.0, &mut rng).is_err());
    }
}
