//! Tabulated density of the unit one-sided stable law, used to condition
//! stable increments on their sum.
//!
//! With Kanter's representation `X = exp(Z / k)`, `k = nu/(1-nu)`,
//! `Z = log A(U) - log W`, the log-variable has density
//!
//! `p_Z(z) = (1/pi) int_0^pi exp(a(u) - z - e^(a(u) - z)) du`, `a = log A`.
//!
//! `log p_Z` is tabulated on a uniform grid after removing the
//! double-exponential left tail `-e^(a0 - z)` (`a0 = a(0+)`), which leaves a
//! smooth function for four-point Lagrange interpolation. Far left the
//! Laplace-method asymptote takes over; far right the convergent power series
//! `f(x) = (1/pi) sum (-1)^(k+1) Gamma(k nu + 1)/k! sin(k pi nu) x^(-k nu - 1)`
//! is used directly.

use super::stable::kanter_log_a;
use crate::quadrature::{integrate, QuadOptions};
use crate::special::gamma::ln_gamma;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

const STEP: f64 = 0.02;
const LEFT_SPAN: f64 = 12.0;
/// The series is used once `x^-nu` drops below this.
const SERIES_START: f64 = 0.05;

/// Density of the unit law `E exp(-mu X) = exp(-mu^nu)` for `0 < nu < 1`.
#[derive(Debug)]
pub struct StableDensity {
    nu: f64,
    k: f64,
    a0: f64,
    z_lo: f64,
    z_hi: f64,
    /// `log p_Z(z) + e^(a0 - z)` at `z_lo + i STEP`.
    resid: Vec<f64>,
    /// Second derivative of `a` at the origin (for the left asymptote).
    a2: f64,
    /// Shift that makes the left asymptote continuous with the table.
    left_shift: f64,
    series: Vec<(f64, f64)>,
}

fn log_pz_quadrature(nu: f64, a0: f64, z: f64) -> f64 {
    let a = |u: f64| kanter_log_a(nu, u);
    // peak of the integrand sits where a(u) = z (a is increasing)
    let mut peak = 0.0;
    let mut phi_max = a0 - z - (a0 - z).exp();
    if z > a0 {
        let (mut lo, mut hi) = (0.0, PI);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if a(mid) < z {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        peak = 0.5 * (lo + hi);
        phi_max = -1.0;
    }
    let integrand = |u: f64| {
        let d = a(u) - z;
        let v = d - d.exp() - phi_max;
        if v.is_finite() {
            v.exp()
        } else {
            0.0
        }
    };
    let mut breaks = vec![0.0];
    if peak > 0.0 && peak < PI {
        for b in [0.5 * peak, peak, 0.5 * (peak + PI)] {
            if b > *breaks.last().unwrap() && b < PI {
                breaks.push(b);
            }
        }
    }
    breaks.push(PI);
    let opts = QuadOptions { abs_tol: 1e-300, rel_tol: 1e-11, max_intervals: 2000 };
    let q = integrate(integrand, &breaks, opts);
    phi_max + (q.value / PI).ln()
}

/// `(log |Gamma(j nu + 1)/j!|, (-1)^(j+1) sin(j pi nu))` for the tail series.
fn series_coefficients(nu: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for j in 1..400 {
        let jf = j as f64;
        let mag = ln_gamma(jf * nu + 1.0) - ln_gamma(jf + 1.0);
        let s = (jf * PI * nu).sin();
        out.push((mag, if j % 2 == 1 { s } else { -s }));
        if mag < -800.0 {
            break;
        }
    }
    out
}

fn ln_series(nu: f64, coef: &[(f64, f64)], lx: f64) -> f64 {
    let mut sum = 0.0;
    for (j, &(mag, sign)) in coef.iter().enumerate() {
        let m = (mag - ((j + 1) as f64 * nu + 1.0) * lx).exp();
        sum += sign * m;
        if m < 1e-17 * sum.abs() {
            break;
        }
    }
    (sum / PI).ln()
}

impl StableDensity {
    pub fn new(nu: f64) -> Self {
        assert!(nu > 0.0 && nu < 1.0, "stable density needs 0 < nu < 1");
        let k = nu / (1.0 - nu);
        let a0 = k * nu.ln() + (1.0 - nu).ln();
        let z_lo = a0 - LEFT_SPAN;
        let z_hi = (1.0 / SERIES_START).ln() / (1.0 - nu) + 4.0 * STEP;
        let n = ((z_hi - z_lo) / STEP).ceil() as usize + 1;
        let resid = (0..n)
            .map(|i| {
                let z = z_lo + i as f64 * STEP;
                log_pz_quadrature(nu, a0, z) + (a0 - z).exp()
            })
            .collect::<Vec<_>>();
        let a2 = -(k * nu * nu + (1.0 - nu).powi(2) - 1.0 / (1.0 - nu)) / 3.0;
        let mut d = StableDensity { nu, k, a0, z_lo, z_hi, resid, a2, left_shift: 0.0, series: series_coefficients(nu) };
        d.left_shift = d.resid[0] - d.left_asymptote(z_lo);
        d
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    fn left_asymptote(&self, z: f64) -> f64 {
        // Laplace's method at u = 0, minus the removed -e^(a0 - z)
        let e = (self.a0 - z).exp();
        self.a0 - z + (0.5 * (2.0 * PI / (self.a2 * e)).sqrt()).ln() - PI.ln()
    }

    fn resid_at(&self, z: f64) -> f64 {
        if z <= self.z_lo {
            return self.left_asymptote(z) + self.left_shift;
        }
        let pos = (z - self.z_lo) / STEP;
        let n = self.resid.len();
        let i = (pos.floor() as isize - 1).clamp(0, n as isize - 4) as usize;
        let x = pos - i as f64;
        // Lagrange weights on nodes 0, 1, 2, 3
        let w0 = -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0;
        let w1 = x * (x - 2.0) * (x - 3.0) / 2.0;
        let w2 = -x * (x - 1.0) * (x - 3.0) / 2.0;
        let w3 = x * (x - 1.0) * (x - 2.0) / 6.0;
        w0 * self.resid[i] + w1 * self.resid[i + 1] + w2 * self.resid[i + 2] + w3 * self.resid[i + 3]
    }

    /// `log p_Z(z)` for `Z = k log X`.
    pub fn ln_pdf_log(&self, z: f64) -> f64 {
        if z >= self.z_hi - 2.0 * STEP {
            let lx = z / self.k;
            return ln_series(self.nu, &self.series, lx) + lx - self.k.ln();
        }
        self.resid_at(z) - (self.a0 - z).exp()
    }

    /// Log-density of the unit law at `x > 0`.
    pub fn ln_pdf(&self, x: f64) -> f64 {
        if !(x > 0.0) || x == f64::INFINITY {
            return f64::NEG_INFINITY;
        }
        let z = self.k * x.ln();
        if z >= self.z_hi - 2.0 * STEP {
            return ln_series(self.nu, &self.series, x.ln());
        }
        self.ln_pdf_log(z) + self.k.ln() - x.ln()
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.ln_pdf(x).exp()
    }
}

/// Shared table for `nu`, built on first use. Tables are immutable once
/// built, so sharing them across threads is safe.
pub fn stable_density(nu: f64) -> Arc<StableDensity> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<StableDensity>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().unwrap().get(&nu.to_bits()) {
        return d.clone();
    }
    let d = Arc::new(StableDensity::new(nu));
    cache.lock().unwrap().entry(nu.to_bits()).or_insert(d).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levy_closed_form_at_one_half() {
        // E exp(-mu X) = exp(-sqrt(mu)) has density x^(-3/2) exp(-1/(4x)) / (2 sqrt(pi))
        let d = StableDensity::new(0.5);
        for x in [0.004, 0.02, 0.1, 0.5, 1.0, 3.0, 40.0, 399.0, 401.0, 1e5, 1e9] {
            let exact = -1.5 * f64::ln(x) - 0.25 / x - (2.0 * PI.sqrt()).ln();
            let got = d.ln_pdf(x);
            assert!((got - exact).abs() < 1e-8, "x={x}: {got} vs {exact}");
        }
    }

    #[test]
    fn far_left_tail_follows_closed_form() {
        let d = StableDensity::new(0.5);
        // z far below the table: relative accuracy of the log-density
        for x in [1e-4, 1e-5] {
            let exact = -1.5 * f64::ln(x) - 0.25 / x - (2.0 * PI.sqrt()).ln();
            let got = d.ln_pdf(x);
            assert!(((got - exact) / exact).abs() < 1e-6, "x={x}: {got} vs {exact}");
        }
    }

    #[test]
    fn normalised_with_correct_laplace_transform() {
        for nu in [0.3, 0.7, 0.9] {
            let d = StableDensity::new(nu);
            // integrate over z = k log x to cover the heavy tail
            let k = nu / (1.0 - nu);
            let pz = |z: f64| d.ln_pdf_log(z).exp();
            let lt = |z: f64| (d.ln_pdf_log(z) - (z / k).exp()).exp();
            let opts = QuadOptions { abs_tol: 1e-13, rel_tol: 1e-11, max_intervals: 4000 };
            let lo = d.a0 - 12.0;
            let breaks: Vec<f64> = (0..=220).map(|i| lo + i as f64).collect();
            let mass = integrate(pz, &breaks, opts).value;
            // the tail beyond the last break: P(X > x) ~ x^-nu / Gamma(1 - nu)
            let x_end = (breaks[220] / k).exp();
            let tail = x_end.powf(-nu) * crate::special::rgamma(1.0 - nu);
            assert!((mass + tail - 1.0).abs() < 1e-7, "nu={nu}: mass {}", mass + tail);
            let l = integrate(lt, &breaks, opts).value;
            assert!((l - (-1f64).exp()).abs() < 1e-8, "nu={nu}: {l}");
        }
    }
}
