//! Closed forms for two time derivatives of orders `k nu` and `nu`:
//! `(D^(k nu) + 2 lambda D^nu) w = -c^2 (-Delta)^beta w`, `k = 2, 3`.
//!
//! With `x = mu^nu` the transform is `mu^(nu-1) (x^(k-1) + 2 lambda) / P(x)`,
//! `P(x) = x^k + 2 lambda x + q`. Partial fractions over the roots of `P` and
//! the pair `t^(b-1) E_{nu,b}(R t^nu) <-> mu^(nu-b) / (mu^nu - R)` give the
//! Mittag-Leffler forms below.

use crate::error::{ensure_positive, Error, Result};
use crate::special::{ml, solve_depressed_cubic};
use num_complex::Complex64;

/// Relative distance to the double root at which the k = 2 formula switches
/// to its confluent limit.
const CONFLUENT_REL: f64 = 1e-8;

/// Imaginary residue tolerated before a complex intermediate is declared
/// non-real.
const IMAG_TOL: f64 = 1e-9;

/// Roots closer than this (relative) are treated as coincident.
const ROOT_SEPARATION: f64 = 1e-10;

fn check_real(v: Complex64, what: &str) -> Result<f64> {
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::accuracy(what, v, f64::INFINITY));
    }
    if v.im.abs() > IMAG_TOL * v.re.abs().max(1.0) {
        return Err(Error::accuracy(format!("{what}: imaginary residue"), v, v.im.abs()));
    }
    Ok(v.re)
}

/// Characteristic function of the fractional telegraph equation
/// (`k = 2`, one dimension, `beta = 1`):
///
/// `1/2 [(1 + lambda/s) E_{nu,1}(-eta_1 t^nu) + (1 - lambda/s) E_{nu,1}(-eta_2 t^nu)]`,
/// `s = sqrt(lambda^2 - c^2 xi^2)`, `eta_{1,2} = lambda -+ s`.
///
/// At `lambda^2 = c^2 xi^2` the confluent limit
/// `E_{nu,1}(-lambda t^nu) + (lambda t^nu / nu) E_{nu,nu}(-lambda t^nu)` is used.
/// Orders up to `nu = 1` are accepted; `nu = 1` is the telegraph process.
pub fn cf_telegraph_k2(lambda: f64, c: f64, nu: f64, xi: f64, t: f64) -> Result<f64> {
    ensure_positive("lambda", lambda)?;
    ensure_positive("c", c)?;
    ensure_positive("t", t)?;
    if !(nu > 0.0 && nu <= 1.0) {
        return Err(Error::invalid(format!("nu must lie in (0, 1], got {nu}")));
    }
    if !xi.is_finite() {
        return Err(Error::invalid("xi must be finite"));
    }
    if xi == 0.0 {
        // eta_1 = 0 carries the whole weight and E_{nu,1}(0) = 1
        return Ok(1.0);
    }
    let tn = t.powf(nu);
    let d = lambda * lambda - c * c * xi * xi;
    if d.abs() <= CONFLUENT_REL * lambda * lambda {
        let z = -lambda * tn;
        let v = ml(nu, 1.0, z)? + ml(nu, nu, z)? * (lambda * tn / nu);
        return check_real(v, "confluent telegraph form");
    }
    let s = Complex64::new(d, 0.0).sqrt();
    let eta1 = -s + lambda;
    let eta2 = s + lambda;
    let w = s.inv() * lambda;
    let v = (w + 1.0) * ml(nu, 1.0, -eta1 * tn)? * 0.5 + (-w + 1.0) * ml(nu, 1.0, -eta2 * tn)? * 0.5;
    check_real(v, "telegraph closed form")
}

/// Characteristic function of the telegraph process with switching rate
/// `lambda` and speed `c`, from its damped hyperbolic form
/// `e^(-lambda t) [cosh(s t) + (lambda/s) sinh(s t)]`.
pub fn telegraph_process_cf(lambda: f64, c: f64, xi: f64, t: f64) -> f64 {
    let d = lambda * lambda - c * c * xi * xi;
    let damp = (-lambda * t).exp();
    if d > 0.0 {
        let s = d.sqrt();
        // stable for large s t: both exponentials combined with the damping
        let plus = ((s - lambda) * t).exp();
        let minus = (-(s + lambda) * t).exp();
        0.5 * (plus + minus) + 0.5 * lambda / s * (plus - minus)
    } else if d < 0.0 {
        let w = (-d).sqrt();
        damp * ((w * t).cos() + lambda / w * (w * t).sin())
    } else {
        damp * (1.0 + lambda * t)
    }
}

/// How the middle term of the k = 3 formula is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum K3Variant {
    /// All three terms use `t^(-2 nu) E_{nu, 1-2nu}`, as the transform pair requires.
    Corrected,
    /// The middle term uses `E_{nu, 1-nu}`, as printed, with `B` the real root.
    Printed,
}

/// Characteristic function for `k = 3`,
/// `sum_R [t^(-2nu) E_{nu,1-2nu}(R t^nu) + 2 lambda E_{nu,1}(R t^nu)] / P'(R)`
/// over the roots `R` of `x^3 + 2 lambda x + c^2 |xi|^(2 beta)`.
pub fn cf_telegraph_k3(lambda: f64, c: f64, beta: f64, nu: f64, xi_norm: f64, t: f64) -> Result<f64> {
    cf_telegraph_k3_variant(lambda, c, beta, nu, xi_norm, t, K3Variant::Corrected)
}

/// [`cf_telegraph_k3`] with an explicit reading of the middle term.
pub fn cf_telegraph_k3_variant(lambda: f64, c: f64, beta: f64, nu: f64, xi_norm: f64, t: f64, variant: K3Variant) -> Result<f64> {
    ensure_positive("lambda", lambda)?;
    ensure_positive("c", c)?;
    ensure_positive("t", t)?;
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::invalid(format!("beta must lie in (0, 1], got {beta}")));
    }
    if !(nu > 0.0 && nu <= 1.0 / 3.0 + 1e-15) {
        return Err(Error::invalid(format!("nu must lie in (0, 1/3], got {nu}")));
    }
    if !(xi_norm >= 0.0) || !xi_norm.is_finite() {
        return Err(Error::invalid("|xi| must be finite and nonnegative"));
    }
    let q = c * c * xi_norm.powf(2.0 * beta);
    let roots = solve_depressed_cubic(2.0 * lambda, q)?.roots;
    for i in 0..3 {
        for j in i + 1..3 {
            let scale = roots[i].norm().max(roots[j].norm()).max(1.0);
            if (roots[i] - roots[j]).norm() <= ROOT_SEPARATION * scale {
                return Err(Error::DegenerateRoots(format!("{} and {} coincide", roots[i], roots[j])));
            }
        }
    }
    let tn = t.powf(nu);
    let t2 = t.powf(-2.0 * nu);
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &r) in roots.iter().enumerate() {
        let dp = roots.iter().enumerate().filter(|(j, _)| *j != i).fold(Complex64::new(1.0, 0.0), |a, (_, &o)| a * (r - o));
        // the labelling of A, B, C is free; B is taken to be the real root
        // (stored first) so that the printed reading stays real
        let b = if variant == K3Variant::Printed && i == 0 { 1.0 - nu } else { 1.0 - 2.0 * nu };
        let z = r * tn;
        acc += (ml(nu, b, z)? * t2 + ml(nu, 1.0, z)? * (2.0 * lambda)) / dp;
    }
    check_real(acc, "k = 3 closed form")
}
