//! One-dimensional densities by FFT inversion of the characteristic function.

use super::model::ModelParams;
use super::transform::CfTimeTable;
use crate::error::{ensure_positive, Error, Result};
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

/// How a tabulated density was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityMethod {
    ClosedForm,
    FftInverted,
    HankelInverted,
    Empirical,
}

impl DensityMethod {
    pub fn tag(self) -> &'static str {
        match self {
            DensityMethod::ClosedForm => "closed-form",
            DensityMethod::FftInverted => "fft-inverted",
            DensityMethod::HankelInverted => "hankel-inverted",
            DensityMethod::Empirical => "empirical",
        }
    }
}

/// A tabulated density with its accuracy metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    pub abscissae: Vec<f64>,
    pub values: Vec<f64>,
    /// Trapezoid mass of `values` over `abscissae`.
    pub mass: f64,
    pub method: DensityMethod,
    /// Estimated absolute error of the values.
    pub err_est: f64,
}

impl DensityGrid {
    /// Linear interpolation inside the grid, zero outside.
    pub fn interpolate(&self, x: f64) -> f64 {
        let xs = &self.abscissae;
        if xs.is_empty() || x < xs[0] || x > xs[xs.len() - 1] {
            return 0.0;
        }
        let i = xs.partition_point(|&a| a <= x).clamp(1, xs.len() - 1);
        let w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
        self.values[i - 1] + w * (self.values[i] - self.values[i - 1])
    }

    /// Distribution function of the piecewise-linear density, normalised by
    /// the grid mass and clamped to `[0, 1]`.
    pub fn cdf(&self) -> impl Fn(f64) -> f64 + '_ {
        let mut cum = vec![0.0; self.abscissae.len()];
        for i in 1..cum.len() {
            let h = self.abscissae[i] - self.abscissae[i - 1];
            cum[i] = cum[i - 1] + 0.5 * h * (self.values[i - 1] + self.values[i]);
        }
        let total = cum.last().copied().unwrap_or(1.0);
        move |x| {
            let xs = &self.abscissae;
            if xs.is_empty() || x <= xs[0] {
                return 0.0;
            }
            if x >= xs[xs.len() - 1] {
                return 1.0;
            }
            let i = xs.partition_point(|&a| a <= x).clamp(1, xs.len() - 1);
            let h = x - xs[i - 1];
            let slope = (self.values[i] - self.values[i - 1]) / (xs[i] - xs[i - 1]);
            let part = h * (self.values[i - 1] + 0.5 * slope * h);
            ((cum[i - 1] + part) / total).clamp(0.0, 1.0)
        }
    }
}

pub(crate) fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    xs.windows(2).zip(ys.windows(2)).map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1])).sum()
}

/// FFT grid settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FftOptions {
    /// Number of FFT points (a power of two is fastest).
    pub points: usize,
    /// Half-width of the spatial grid; chosen from the decay of the
    /// characteristic function when `None`.
    pub half_width: Option<f64>,
    /// Largest acceptable `err_est`.
    pub max_error: f64,
}

impl Default for FftOptions {
    fn default() -> Self {
        FftOptions { points: 1 << 16, half_width: None, max_error: 1e-3 }
    }
}

/// Frequency at which the characteristic function falls to 1/2.
fn half_decay(cf: &dyn Fn(f64) -> f64) -> f64 {
    let mut hi = 1.0;
    while cf(hi) > 0.5 && hi < 1e12 {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if cf(mid) > 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Density of `S(c^2 L(t))` in one dimension on a symmetric uniform grid,
/// by FFT of the characteristic function.
///
/// `err_est` adds a truncation bound for the frequency cut-off and an
/// aliasing bound read off the density near the grid edges.
pub fn density_1d(params: &ModelParams, t: f64, opts: FftOptions) -> Result<DensityGrid> {
    if params.n != 1 {
        return Err(Error::invalid("density_1d needs n = 1"));
    }
    ensure_positive("t", t)?;
    let n = opts.points;
    if n < 16 || !n.is_multiple_of(2) {
        return Err(Error::invalid("FFT size must be an even number of at least 16"));
    }
    let table = CfTimeTable::new(params, t)?;
    let cf = |xi: f64| table.eval(xi).0;
    let half = match opts.half_width {
        Some(h) => {
            ensure_positive("half_width", h)?;
            h
        }
        None => {
            let scale = 1.0 / half_decay(&cf);
            scale * if params.beta == 1.0 { 40.0 } else { 400.0 }
        }
    };
    let dxi = PI / half;
    let dx = 2.0 * PI / (n as f64 * dxi);
    let m = n / 2;
    let mut inv_err: f64 = 0.0;
    let phi: Vec<f64> = (0..=m)
        .map(|j| {
            let (v, e) = table.eval(j as f64 * dxi);
            inv_err = inv_err.max(e);
            v
        })
        .collect();
    if phi.iter().any(|v| !v.is_finite()) {
        return Err(Error::accuracy("characteristic function on the FFT grid", f64::NAN, f64::INFINITY));
    }
    let mut buf: Vec<Complex64> = (0..n).map(|j| Complex64::new(phi[if j <= m { j } else { n - j }], 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = dxi / (2.0 * PI);
    // output index k holds x = k dx (k < m) or (k - n) dx; symmetrise exactly
    let raw = |k: usize| buf[k].re * scale;
    let mut abscissae = Vec::with_capacity(n + 1);
    let mut values = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let k = i as isize - m as isize;
        let a = raw(k.rem_euclid(n as isize) as usize);
        let b = raw((-k).rem_euclid(n as isize) as usize);
        abscissae.push(k as f64 * dx);
        values.push(0.5 * (a + b));
    }
    let xi_max = m as f64 * dxi;
    let tail = phi[m].abs() * xi_max / PI * if params.beta > 0.55 { 1.0 / (2.0 * params.beta - 1.0) } else { 10.0 };
    let edge = n / 20;
    let alias = 2.0 * values[..edge].iter().chain(&values[n + 1 - edge..]).fold(0.0f64, |a, v| a.max(v.abs()));
    let err_est = tail + alias + inv_err * xi_max / PI;
    let mass = trapezoid(&abscissae, &values);
    if err_est > opts.max_error {
        return Err(Error::accuracy("FFT density inversion", mass, err_est));
    }
    Ok(DensityGrid { abscissae, values, mass, method: DensityMethod::FftInverted, err_est })
}
