//! Radial densities in `n` dimensions and the Gauss–Laplace limit law.
//!
//! For an isotropic characteristic function `phi(|xi|)`,
//!
//! `w(r) = (2 pi)^(-n/2) r^(-(n-2)/2) int_0^inf rho^(n/2) phi(rho) J_{(n-2)/2}(rho r) d rho`.
//!
//! The integral is split at the asymptotic zeros of the Bessel factor and the
//! partial sums are accelerated with Wynn's epsilon algorithm, which also
//! sums the slowly decaying alternating tails of the limit law.

use super::density::{trapezoid, DensityGrid, DensityMethod};
use super::model::ModelParams;
use super::transform::{cf_limit, CfTimeTable};
use crate::error::{ensure_positive, Error, Result};
use crate::quadrature::{integrate, QuadOptions};
use crate::special::{bessel_j, bessel_k, gamma};
use std::f64::consts::PI;

const MAX_PANELS: usize = 4000;
const WYNN_WINDOW: usize = 24;

/// Which characteristic function to invert.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialMode {
    /// The solution at time `t`.
    Time(f64),
    /// The `r -> infinity` limit `sum lambda / (sum lambda + c^2 rho^(2 beta))`.
    Limit,
}

/// Limit of a sequence from its partial sums by Wynn's epsilon algorithm;
/// returns the estimate and the gap between the last two even-column entries.
pub fn wynn_epsilon(s: &[f64]) -> (f64, f64) {
    let n = s.len();
    if n < 3 {
        let last = s.last().copied().unwrap_or(0.0);
        return (last, f64::INFINITY);
    }
    let mut best = s[n - 1];
    let mut best_err = (s[n - 1] - s[n - 2]).abs();
    let mut prev = vec![0.0; n + 1];
    let mut cur = s.to_vec();
    let mut col = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for k in 0..cur.len() - 1 {
            let d = cur[k + 1] - cur[k];
            if d == 0.0 {
                // converged exactly in this column
                return if col % 2 == 0 { (cur[k + 1], 0.0) } else { (best, best_err) };
            }
            next.push(prev[k + 1] + 1.0 / d);
        }
        col += 1;
        prev = cur;
        cur = next;
        if col % 2 == 0 && cur.len() >= 2 {
            let l = cur.len();
            let err = (cur[l - 1] - cur[l - 2]).abs();
            if cur[l - 1].is_finite() && err < best_err {
                best = cur[l - 1];
                best_err = err;
            }
        }
    }
    (best, best_err)
}

/// `int_0^inf rho^(n/2) phi(rho) J_{(n-2)/2}(rho r) d rho` with an error estimate.
fn hankel_integral<F: Fn(f64) -> f64>(phi: F, n: usize, r: f64) -> Result<(f64, f64)> {
    let order = 0.5 * (n as f64 - 2.0);
    let integrand = |rho: f64| {
        if rho == 0.0 {
            // rho^(1/2) J_{-1/2}(rho r) -> sqrt(2 / (pi r)) for n = 1
            return if n == 1 { phi(0.0) * (2.0 / (PI * r)).sqrt() } else { 0.0 };
        }
        let j = bessel_j(order, rho * r).unwrap_or(f64::NAN);
        rho.powf(0.5 * n as f64) * phi(rho) * j
    };
    let opts = QuadOptions { abs_tol: 1e-18, rel_tol: 1e-13, max_intervals: 200 };
    // asymptotic zeros of J_order: (k + order/2 + 3/4) pi
    let edge = |k: usize| (k as f64 + 0.5 * order + 0.75) * PI / r;
    let mut sums: Vec<f64> = Vec::new();
    let mut acc = 0.0;
    let mut quad_err = 0.0;
    let mut left = 0.0;
    let mut stable = 0;
    let mut last = (f64::NAN, f64::INFINITY);
    for k in 0..MAX_PANELS {
        let right = edge(k);
        let q = integrate(integrand, &[left, right], opts);
        if !q.value.is_finite() {
            return Err(Error::accuracy("radial quadrature panel", q.value, f64::INFINITY));
        }
        acc += q.value;
        quad_err += q.error;
        sums.push(acc);
        left = right;
        // the envelope has died out: no acceleration needed
        let envelope = right.powf(0.5 * n as f64) * phi(right).abs() * (2.0 / (PI * right * r)).sqrt();
        if envelope < 1e-15 * acc.abs().max(1e-300) {
            return Ok((acc, quad_err + envelope));
        }
        if k >= 8 {
            let from = sums.len().saturating_sub(WYNN_WINDOW);
            let (est, err) = wynn_epsilon(&sums[from..]);
            let tol = 1e-13 * est.abs();
            if err <= tol && (est - last.0).abs() <= 10.0 * tol {
                stable += 1;
                if stable >= 2 {
                    return Ok((est, err + quad_err));
                }
            } else {
                stable = 0;
            }
            last = (est, err);
        }
    }
    Err(Error::accuracy("radial quadrature", last.0, last.1))
}

/// Radial density at each `r > 0` of `r_values` (increasing).
///
/// `mass` is the probability of the shell covered by the grid,
/// `area(S^(n-1)) int r^(n-1) w(r) dr` by the trapezoid rule.
pub fn density_radial(params: &ModelParams, mode: RadialMode, r_values: &[f64]) -> Result<DensityGrid> {
    if r_values.is_empty() || r_values.windows(2).any(|w| !(w[1] > w[0])) || !(r_values[0] > 0.0) {
        return Err(Error::invalid("radii must be positive and increasing"));
    }
    let n = params.n;
    let table = match mode {
        RadialMode::Time(t) => Some(CfTimeTable::new(params, t)?),
        RadialMode::Limit => None,
    };
    let lambda_sum = params.spec.lambda_sum();
    let inv_err = std::cell::Cell::new(0.0f64);
    let phi = |rho: f64| match &table {
        Some(tab) => {
            let (v, e) = tab.eval(rho);
            inv_err.set(inv_err.get().max(e));
            v
        }
        None => cf_limit(lambda_sum, params.c, params.beta, rho),
    };
    let pref = (2.0 * PI).powf(-0.5 * n as f64);
    let mut values = Vec::with_capacity(r_values.len());
    let mut err_est: f64 = 0.0;
    for &r in r_values {
        let (v, e) = hankel_integral(phi, n, r)?;
        let s = pref * r.powf(-0.5 * (n as f64 - 2.0));
        values.push(s * v);
        err_est = err_est.max(s * e);
    }
    err_est += inv_err.get();
    let area = sphere_area(n);
    let shell: Vec<f64> = r_values.iter().zip(&values).map(|(r, v)| area * r.powi(n as i32 - 1) * v).collect();
    let mass = trapezoid(r_values, &shell);
    Ok(DensityGrid { abscissae: r_values.to_vec(), values, mass, method: DensityMethod::HankelInverted, err_est })
}

/// Surface area of the unit sphere in `R^n` (2 for `n = 1`).
pub fn sphere_area(n: usize) -> f64 {
    2.0 * PI.powf(0.5 * n as f64) / gamma(0.5 * n as f64)
}

/// Limit law as a function of `r = |x|`:
/// `(2 pi)^(-n/2) b^((n+2)/2) r^(-(n-2)/2) K_{(n-2)/2}(b r)`, `b = sqrt(sum lambda)/c`.
///
/// At `r = 0` the value is `b/2` for `n = 1` and `+inf` otherwise.
pub fn limit_density_radial(lambda_sum: f64, c: f64, n: usize, r: f64) -> Result<f64> {
    ensure_positive("sum of lambdas", lambda_sum)?;
    ensure_positive("c", c)?;
    if n == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    if !(r >= 0.0) {
        return Err(Error::invalid(format!("|x| must be nonnegative, got {r}")));
    }
    let b = lambda_sum.sqrt() / c;
    if n == 1 {
        // K_{-1/2}(z) = sqrt(pi/(2z)) e^(-z)
        return Ok(0.5 * b * (-b * r).exp());
    }
    if r == 0.0 {
        return Ok(f64::INFINITY);
    }
    if r.is_infinite() {
        return Ok(0.0);
    }
    let order = 0.5 * (n as f64 - 2.0);
    let k = bessel_k(order, b * r)?;
    Ok((2.0 * PI).powf(-0.5 * n as f64) * b.powf(0.5 * (n as f64 + 2.0)) * r.powf(-order) * k)
}

/// Limit law at the point `x` of `R^n`, `n = x.len()`.
pub fn limit_density(lambdas: &[f64], c: f64, x: &[f64]) -> Result<f64> {
    if lambdas.is_empty() || lambdas.iter().any(|l| !(*l > 0.0)) {
        return Err(Error::invalid("lambda must be positive"));
    }
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    limit_density_radial(lambdas.iter().sum(), c, x.len(), r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wynn_sums_alternating_series() {
        // log 2 = 1 - 1/2 + 1/3 - ...
        let mut s = Vec::new();
        let mut acc = 0.0;
        for k in 1..=20 {
            acc += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
            s.push(acc);
        }
        let (v, _) = wynn_epsilon(&s);
        assert!((v - 2f64.ln()).abs() < 1e-12, "{v}");
    }

    #[test]
    fn closed_forms() {
        assert_eq!(limit_density(&[1.0], 1.0, &[0.0]).unwrap(), 0.5);
        let v = limit_density(&[1.0], 1.0, &[1.0, 0.0, 0.0]).unwrap();
        assert!((v - (-1f64).exp() / (4.0 * PI)).abs() < 1e-15);
        assert_eq!(limit_density(&[0.5, 0.5], 1.0, &[0.0, 0.0]).unwrap(), f64::INFINITY);
        assert!(limit_density(&[-1.0], 1.0, &[1.0]).is_err());
    }

    #[test]
    fn sphere_areas() {
        assert!((sphere_area(1) - 2.0).abs() < 1e-15);
        assert!((sphere_area(2) - 2.0 * PI).abs() < 1e-14);
        assert!((sphere_area(3) - 4.0 * PI).abs() < 1e-14);
    }
}
