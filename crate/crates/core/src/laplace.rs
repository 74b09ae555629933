//! Numerical inversion of Laplace transforms.
//!
//! * Talbot's method on the Weideman–Trefethen contour
//!   `z(theta) = (N/t)(0.5017 theta cot(0.6407 theta) - 0.6122 + 0.2645 i theta)`,
//!   midpoint rule in `theta`. Needs the transform off the negative real axis.
//! * Gaver–Stehfest in double-double arithmetic. Needs the transform on the
//!   positive real axis only; its alternating weights cost about
//!   `0.3 N` digits, which double-double absorbs.

use crate::ddouble::DD;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Default number of Talbot nodes (even).
pub const TALBOT_NODES: usize = 48;

/// Node count of the second Talbot pass that supplies the error estimate.
pub const TALBOT_CHECK_NODES: usize = 64;

/// Default number of Stehfest terms (must be even).
pub const STEHFEST_TERMS: usize = 32;

/// Nodes and weights of the fixed Talbot contour for one time `t`, so that
/// `f(t) ~ Re sum_k w_k F(z_k)`. Reusable across transforms that share `t`.
#[derive(Debug, Clone)]
pub struct TalbotRule {
    pub nodes: Vec<Complex64>,
    pub weights: Vec<Complex64>,
}

impl TalbotRule {
    /// Midpoint rule with `n` nodes in `theta`.
    pub fn new(t: f64, n: usize) -> Self {
        assert!(n >= 2 && n.is_multiple_of(2), "Talbot needs an even number of nodes");
        let nf = n as f64;
        let scale = nf / t;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for k in 0..n {
            let th = -PI + (k as f64 + 0.5) * 2.0 * PI / nf;
            let a = 0.6407 * th;
            // theta cot(a theta) and its derivative; n even keeps theta off 0
            let cot = a.cos() / a.sin();
            let g = th * cot;
            let dg = cot - th * 0.6407 / a.sin().powi(2);
            let z = Complex64::new(scale * (0.5017 * g - 0.6122), scale * 0.2645 * th);
            let dz = Complex64::new(scale * 0.5017 * dg, scale * 0.2645);
            // f(t) = (1/2 pi i) int e^{zt} F(z) dz, with d theta = 2 pi / n
            nodes.push(z);
            weights.push((z * t).exp() * dz / Complex64::new(0.0, nf));
        }
        TalbotRule { nodes, weights }
    }

    pub fn apply<F: Fn(Complex64) -> Complex64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(z, w)| (w * f(*z)).re).sum()
    }
}

/// Real part of the inverse transform at `t > 0` by the fixed Talbot contour
/// with `n` midpoint nodes.
pub fn talbot<F: Fn(Complex64) -> Complex64>(f: F, t: f64, n: usize) -> f64 {
    TalbotRule::new(t, n).apply(f)
}

fn stehfest_weights(n: usize) -> Vec<DD> {
    assert!(n.is_multiple_of(2) && n >= 2, "Stehfest needs an even number of terms");
    let half = n / 2;
    let mut fact = vec![DD::ONE; n + 1];
    for i in 1..=n {
        fact[i] = fact[i - 1] * DD::new(i as f64);
    }
    (1..=n)
        .map(|k| {
            let mut v = DD::ZERO;
            for j in k.div_ceil(2)..=k.min(half) {
                let num = DD::new(j as f64).powf(half as f64) * fact[2 * j];
                let den = fact[half - j] * fact[j] * fact[j - 1] * fact[k - j] * fact[2 * j - k];
                v = v + num / den;
            }
            if (k + half) % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect()
}

/// Gaver–Stehfest inversion with `n` terms; the transform is evaluated in
/// double-double precision on the positive real axis.
pub fn stehfest<F: Fn(DD) -> DD>(f: F, t: f64, n: usize) -> f64 {
    let a = DD::ln2() / DD::new(t);
    let weights = stehfest_weights(n);
    let mut acc = DD::ZERO;
    for (i, w) in weights.iter().enumerate() {
        acc = acc + *w * f(a * DD::new((i + 1) as f64));
    }
    (acc * a).to_f64()
}

/// Talbot inversion with an error estimate from a second, finer node count.
/// Fails when the two disagree by more than `tol`.
pub fn talbot_checked<F: Fn(Complex64) -> Complex64>(f: F, t: f64, tol: f64) -> Result<(f64, f64)> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::invalid(format!("inversion time must be positive, got {t}")));
    }
    let coarse = talbot(&f, t, TALBOT_NODES);
    let fine = talbot(&f, t, TALBOT_CHECK_NODES);
    let err = (fine - coarse).abs();
    if !fine.is_finite() || err > tol {
        return Err(Error::accuracy("Talbot inversion", fine, err));
    }
    Ok((fine, err))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn talbot_exponential() {
        for t in [0.1, 1.0, 5.0] {
            let v = talbot(|s| (s + 1.0).inv(), t, TALBOT_NODES);
            assert!((v - (-t).exp()).abs() < 1e-11, "t={t}: {v}");
        }
    }

    #[test]
    fn talbot_branch_cut_transform() {
        // 1/sqrt(s) <-> 1/sqrt(pi t)
        let v = talbot(|s| s.sqrt().inv(), 2.0, TALBOT_NODES);
        assert!((v - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-11, "{v}");
    }

    #[test]
    fn odd_node_count_is_rejected() {
        assert!(std::panic::catch_unwind(|| TalbotRule::new(1.0, 7)).is_err());
    }

    #[test]
    fn stehfest_in_double_double() {
        let v = stehfest(|s| DD::ONE / (s + DD::ONE), 1.0, STEHFEST_TERMS);
        assert!((v - (-1f64).exp()).abs() < 1e-11, "{v}");
        let w = stehfest(|s| DD::ONE / (s * s), 3.0, STEHFEST_TERMS);
        assert!((w - 3.0).abs() < 1e-12, "{w}");
    }

    #[test]
    fn stehfest_weights_sum_to_zero() {
        // sum of weights annihilates constants' transform residue: sum V_k = 0
        let w = stehfest_weights(16);
        let s = w.iter().fold(DD::ZERO, |a, b| a + *b);
        assert!(s.to_f64().abs() < 1e-20);
    }
}
