//! The Fourier–Laplace transform and its inversion in time.

use super::model::{ModelParams, SpectralQuery};
use crate::ddouble::DD;
use crate::error::{ensure_positive, Error, Result};
use crate::laplace::{stehfest, TalbotRule, STEHFEST_TERMS, TALBOT_CHECK_NODES, TALBOT_NODES};
use crate::subordinator::{IterationDepth, SubordinatorSpec};
use num_complex::Complex64;

/// `sum lambda mu^(nu-1) / (sum lambda mu^nu + q)`, written as
/// `(1/mu) S / (S + q)` with `S = sum lambda mu^nu`.
pub(crate) fn kernel(spec: &SubordinatorSpec, q: f64, mu: Complex64) -> Complex64 {
    if q == 0.0 {
        return mu.inv();
    }
    let s = spec.laplace_exponent(mu);
    mu.inv() * s / (s + q)
}

fn off_cut(mu: Complex64) -> Result<()> {
    if !mu.re.is_finite() || !mu.im.is_finite() || (mu.im == 0.0 && mu.re <= 0.0) {
        return Err(Error::invalid(format!("mu = {mu} lies on the branch cut")));
    }
    Ok(())
}

/// Fourier–Laplace transform of the solution at `(|xi|, mu)`, principal
/// branch.
pub fn cf_laplace(params: &ModelParams, q: &SpectralQuery) -> Result<Complex64> {
    let mu = q.mu()?;
    off_cut(mu)?;
    Ok(kernel(&params.spec, params.space_symbol(q.xi()?), mu))
}

/// Transform of the r-fold iterated problem: exponents `nu_j^r`.
pub fn cf_iterated_laplace(spec: &SubordinatorSpec, depth: IterationDepth, beta: f64, c: f64, q: &SpectralQuery) -> Result<Complex64> {
    let params = ModelParams::new(spec.iterated(depth), beta, c, 1)?;
    cf_laplace(&params, q)
}

/// Time-independent limit `sum lambda / (sum lambda + c^2 |xi|^(2 beta))` of
/// the iterated characteristic function.
pub fn cf_limit(lambda_sum: f64, c: f64, beta: f64, xi_norm: f64) -> f64 {
    lambda_sum / (lambda_sum + c * c * xi_norm.powf(2.0 * beta))
}

/// Talbot inversion at one time `t` for many frequencies. The contour values
/// of `sum lambda mu^nu` do not depend on `xi` and are computed once.
#[derive(Debug, Clone)]
pub struct CfTimeTable {
    params: ModelParams,
    t: f64,
    drift_rate: Option<f64>,
    /// `(w_k / z_k, S(z_k))` for the primary and the check rule.
    coarse: Vec<(Complex64, Complex64)>,
    fine: Vec<(Complex64, Complex64)>,
}

impl CfTimeTable {
    pub fn new(params: &ModelParams, t: f64) -> Result<Self> {
        ensure_positive("t", t)?;
        let spec = &params.spec;
        let drift_rate = spec.terms().all(|(_, nu)| nu == 1.0).then(|| spec.lambda_sum());
        let table = |n| {
            let rule = TalbotRule::new(t, n);
            rule.nodes.iter().zip(&rule.weights).map(|(z, w)| (w / z, spec.laplace_exponent(*z))).collect()
        };
        let (coarse, fine) = if drift_rate.is_some() { (Vec::new(), Vec::new()) } else { (table(TALBOT_NODES), table(TALBOT_CHECK_NODES)) };
        Ok(CfTimeTable { params: params.clone(), t, drift_rate, coarse, fine })
    }

    /// Value at `|xi|` and the difference between the two node counts.
    pub fn eval(&self, xi_norm: f64) -> (f64, f64) {
        let q = self.params.space_symbol(xi_norm);
        if q == 0.0 {
            return (1.0, 0.0);
        }
        if let Some(rate) = self.drift_rate {
            // L(t) = t / sum lambda is deterministic
            return ((-q * self.t / rate).exp(), 0.0);
        }
        let sum = |tab: &[(Complex64, Complex64)]| tab.iter().map(|(w, s)| (w * s / (s + q)).re).sum::<f64>();
        let coarse = sum(&self.coarse);
        let fine = sum(&self.fine);
        (fine, (fine - coarse).abs())
    }
}

/// Characteristic function `E exp(i xi . S(c^2 L(t)))` by Talbot inversion,
/// with absolute error at most `tol`.
pub fn cf_time(params: &ModelParams, q: &SpectralQuery, tol: f64) -> Result<f64> {
    ensure_positive("tol", tol)?;
    let t = q.t()?;
    let (v, err) = CfTimeTable::new(params, t)?.eval(q.xi()?);
    if !v.is_finite() || err > tol {
        return Err(Error::accuracy("Talbot inversion of the characteristic function", v, err));
    }
    Ok(v)
}

/// Gaver–Stehfest inversion of the same transform in double-double
/// arithmetic, used as an independent cross-check of [`cf_time`].
pub fn cf_time_stehfest(params: &ModelParams, q: &SpectralQuery) -> Result<f64> {
    let t = q.t()?;
    let qv = DD::new(params.space_symbol(q.xi()?));
    let terms: Vec<(f64, f64)> = params.spec.terms().collect();
    let f = |mu: DD| {
        let s = terms.iter().fold(DD::ZERO, |acc, &(l, nu)| acc + DD::new(l) * mu.powf(nu));
        s / (mu * (s + qv))
    };
    Ok(stehfest(f, t, STEHFEST_TERMS))
}

/// A Talbot value together with its Stehfest cross-check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifiedCf {
    pub value: f64,
    pub stehfest: f64,
    /// `|value - stehfest|`.
    pub disagreement: f64,
}

/// [`cf_time`] to `tol`, failing unless the Stehfest value agrees to `agree`.
pub fn cf_time_certified(params: &ModelParams, q: &SpectralQuery, tol: f64, agree: f64) -> Result<CertifiedCf> {
    let value = cf_time(params, q, tol)?;
    let st = cf_time_stehfest(params, q)?;
    let disagreement = (value - st).abs();
    if !(disagreement <= agree) {
        return Err(Error::accuracy("Talbot/Stehfest cross-check", value, disagreement));
    }
    Ok(CertifiedCf { value, stehfest: st, disagreement })
}
