//! Two-parameter Mittag-Leffler function `E_{psi,theta}(z) = sum_k z^k / Gamma(psi k + theta)`.
//!
//! Three representations cover the plane:
//!
//! * the Taylor series for `|z| <= 1`;
//! * a Hankel-type loop integral with rays at `arg s = +-phi`, plus the
//!   residues of the poles of `s^(psi - theta) e^s / (s^psi - z)` that lie to
//!   the right of the rays;
//! * the asymptotic expansion (principal-sheet residues minus the algebraic
//!   tail `sum z^-k / Gamma(theta - psi k)`) once `rho = |z|^(1/psi) >= 40`.
//!
//! Powers of complex numbers are always formed in polar form so that the
//! branch of `s^a` is the principal one on both rays.

use super::gamma::rgamma;
use crate::error::{ensure_finite, Error, Result};
use crate::quadrature::{integrate_complex, QuadOptions};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Beyond this value of `|z|^(1/psi)` the asymptotic expansion is used.
pub const ASYMPTOTIC_RHO: f64 = 40.0;

/// Relative error above which an evaluation is reported as an accuracy failure.
const FAIL_REL: f64 = 1e-8;

/// Arguments of `E_{psi,theta}(z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    pub psi: f64,
    pub theta: f64,
    pub z: Complex64,
}

impl MLParams {
    pub fn new(psi: f64, theta: f64, z: impl Into<Complex64>) -> Self {
        MLParams { psi, theta, z: z.into() }
    }
}

/// Internal representations, exposed so callers can cross-check them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MLRegime {
    Series,
    Contour,
    Asymptotic,
}

/// A value together with its estimated absolute error.
#[derive(Debug, Clone, Copy)]
pub struct MLValue {
    pub value: Complex64,
    pub error: f64,
    pub regime: MLRegime,
}

fn validate(p: &MLParams) -> Result<()> {
    ensure_finite("psi", p.psi)?;
    ensure_finite("theta", p.theta)?;
    ensure_finite("Re z", p.z.re)?;
    ensure_finite("Im z", p.z.im)?;
    if p.psi <= 0.0 {
        return Err(Error::invalid(format!("psi must be positive, got {}", p.psi)));
    }
    Ok(())
}

/// Regime the automatic dispatcher picks for these arguments.
pub fn default_regime(p: &MLParams) -> MLRegime {
    let r = p.z.norm();
    if r <= 1.0 {
        MLRegime::Series
    } else if r.powf(1.0 / p.psi) >= ASYMPTOTIC_RHO {
        MLRegime::Asymptotic
    } else {
        MLRegime::Contour
    }
}

/// Evaluate `E_{psi,theta}(z)`.
///
/// Results that overflow `f64` come back as infinities rather than errors.
pub fn mittag_leffler(p: MLParams) -> Result<Complex64> {
    Ok(mittag_leffler_detailed(p)?.value)
}

/// Shorthand for [`mittag_leffler`].
pub fn ml(psi: f64, theta: f64, z: impl Into<Complex64>) -> Result<Complex64> {
    mittag_leffler(MLParams::new(psi, theta, z))
}

/// Evaluate with the default regime and report the error estimate.
pub fn mittag_leffler_detailed(p: MLParams) -> Result<MLValue> {
    validate(&p)?;
    if let Some(v) = closed_form(&p) {
        return Ok(MLValue { value: v, error: 0.0, regime: MLRegime::Series });
    }
    let out = evaluate_regime(&p, default_regime(&p));
    let scale = out.value.norm();
    if !out.value.re.is_finite() || !out.value.im.is_finite() {
        return Ok(out);
    }
    if out.error > FAIL_REL * scale && out.error > 1e-300 {
        return Err(Error::accuracy(
            format!("mittag_leffler(psi={}, theta={}, z={})", p.psi, p.theta, p.z),
            out.value,
            out.error,
        ));
    }
    Ok(out)
}

/// Evaluate with an explicitly chosen representation, regardless of whether
/// it is the one the dispatcher would use.
pub fn mittag_leffler_regime(p: MLParams, regime: MLRegime) -> Result<MLValue> {
    validate(&p)?;
    Ok(evaluate_regime(&p, regime))
}

fn evaluate_regime(p: &MLParams, regime: MLRegime) -> MLValue {
    let (value, error) = match regime {
        MLRegime::Series => series(p),
        MLRegime::Contour => contour(p),
        MLRegime::Asymptotic => asymptotic(p),
    };
    MLValue { value, error, regime }
}

fn closed_form(p: &MLParams) -> Option<Complex64> {
    if p.z == Complex64::new(0.0, 0.0) {
        return Some(Complex64::new(rgamma(p.theta), 0.0));
    }
    if p.psi == 1.0 && p.theta == 1.0 {
        return Some(p.z.exp());
    }
    None
}

fn series(p: &MLParams) -> (Complex64, f64) {
    let z = p.z;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut zk = Complex64::new(1.0, 0.0);
    let mut quiet = 0;
    let mut k = 0usize;
    loop {
        let term = zk * rgamma(p.psi * k as f64 + p.theta);
        sum += term;
        let a = term.norm();
        abs_sum += a;
        let past_peak = p.psi * k as f64 + p.theta > 2.0;
        if past_peak && a <= 1e-17 * sum.norm().max(1e-300) {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        if k > 20_000 || (past_peak && a == 0.0 && zk.norm() == 0.0) {
            break;
        }
        zk *= z;
        k += 1;
    }
    (sum, 4.0 * f64::EPSILON * abs_sum)
}

/// Angles `theta_k = (arg z + 2 pi k)/psi` of the poles with `|theta_k| < limit`.
fn pole_angles(p: &MLParams, limit: f64) -> Vec<f64> {
    let argz = p.z.arg();
    let kmin = ((-limit * p.psi - argz) / (2.0 * PI)).floor() as i64;
    let kmax = ((limit * p.psi - argz) / (2.0 * PI)).ceil() as i64;
    (kmin..=kmax)
        .map(|k| (argz + 2.0 * PI * k as f64) / p.psi)
        .filter(|t| t.abs() < limit)
        .collect()
}

/// Sum of `(1/psi) s_k^(1 - theta) e^(s_k)` over poles with `|theta_k| < limit`.
fn residues(p: &MLParams, rho: f64, limit: f64) -> Complex64 {
    let mut out = Complex64::new(0.0, 0.0);
    for th in pole_angles(p, limit) {
        let mag = (1.0 - p.theta) * rho.ln() + rho * th.cos();
        let phase = (1.0 - p.theta) * th + rho * th.sin();
        out += Complex64::from_polar(mag.exp(), phase) / p.psi;
    }
    out
}

/// Ray angle in `[0.55 pi, pi]` kept as far as possible from every pole.
fn ray_angle(p: &MLParams) -> f64 {
    let poles = pole_angles(p, 1.25 * PI);
    let steps = 180;
    let mut best = (f64::NEG_INFINITY, PI);
    for i in 0..=steps {
        let phi = 0.55 * PI + 0.45 * PI * i as f64 / steps as f64;
        let gap = poles
            .iter()
            .map(|t| (t.abs() - phi).abs())
            .fold(0.25 * PI, f64::min);
        // ties go to the larger angle, whose rays decay faster
        if gap >= best.0 - 1e-12 {
            best = (gap, phi);
        }
    }
    best.1
}

fn contour(p: &MLParams) -> (Complex64, f64) {
    let rho = p.z.norm().powf(1.0 / p.psi);
    let phi = ray_angle(p);
    let eps = (0.5 * rho).min(1.0);
    let res = residues(p, rho, phi);

    let (psi, theta, z) = (p.psi, p.theta, p.z);
    // e^s s^(psi - theta) / (s^psi - z) with s = r e^(i a)
    let g = move |r: f64, a: f64| -> Complex64 {
        let s = Complex64::from_polar(r, a);
        let num = s.exp() * Complex64::from_polar(r.powf(psi - theta), a * (psi - theta));
        let den = Complex64::from_polar(r.powf(psi), a * psi) - z;
        num / den
    };
    let (up, down) = (Complex64::from_polar(1.0, phi), Complex64::from_polar(1.0, -phi));
    let rays = |r: f64| g(r, phi) * up - g(r, -phi) * down;
    let arc = |a: f64| g(eps, a) * Complex64::new(0.0, eps) * Complex64::from_polar(1.0, a);

    let decay = -phi.cos();
    let r_end = 2.0 * rho + eps + 45.0 / decay;
    let mut breaks = vec![eps];
    for b in [0.5 * rho, rho, 2.0 * rho, 2.0 * rho + 10.0 / decay] {
        if b > *breaks.last().unwrap() && b < r_end {
            breaks.push(b);
        }
    }
    breaks.push(r_end);

    let opts = QuadOptions {
        abs_tol: 1e-17 * res.norm().max(1e-300),
        rel_tol: 1e-14,
        max_intervals: 2000,
    };
    let qr = integrate_complex(rays, &breaks, opts);
    let qa = integrate_complex(arc, &[-phi, 0.0, phi], opts);
    let integral = (qr.value + qa.value) / Complex64::new(0.0, 2.0 * PI);
    let mut err = (qr.error + qa.error) / (2.0 * PI);
    if !(qr.converged && qa.converged) {
        err = err.max(1e-6 * integral.norm());
    }
    (res + integral, err + 4.0 * f64::EPSILON * res.norm())
}

fn asymptotic(p: &MLParams) -> (Complex64, f64) {
    let r = p.z.norm();
    let rho = r.powf(1.0 / p.psi);
    let res = residues(p, rho, PI);
    let zinv = p.z.inv();
    let lnr = r.ln();
    let mut tail = Complex64::new(0.0, 0.0);
    let mut zk = Complex64::new(1.0, 0.0);
    let mut last_env = f64::INFINITY;
    let mut err = f64::INFINITY;
    for k in 1..5000 {
        zk *= zinv;
        let a = p.theta - p.psi * k as f64;
        // |1/Gamma(a)| <= Gamma(1 - a)/pi gives a smooth envelope once Gamma(1 - a)
        // is increasing; the terms themselves dip near the zeros of 1/Gamma
        let growing = a < -1.0;
        let env = if growing {
            (crate::special::gamma::ln_gamma(1.0 - a) - k as f64 * lnr).exp() / PI
        } else {
            zk.norm() * rgamma(a).abs().max(1.0)
        };
        if growing && env > last_env {
            // the expansion is asymptotic: stop at the smallest envelope
            err = last_env;
            break;
        }
        tail += zk * rgamma(a);
        last_env = env;
        if env <= 1e-17 * (tail.norm() + res.norm()) {
            err = env;
            break;
        }
    }
    // poles just outside the principal sheet are exponentially small
    let stokes = (p.theta - 1.0).abs() * rho.ln() - rho;
    let value = res - tail;
    (value, err + stokes.exp() / p.psi + 4.0 * f64::EPSILON * (res.norm() + tail.norm()))
}
