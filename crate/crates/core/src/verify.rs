//! Statistical checks that tie Monte Carlo output to analytic answers:
//! empirical characteristic functions with standard errors, one- and
//! two-sample Kolmogorov–Smirnov tests and normalization by quadrature.

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadOptions};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Width of the Monte Carlo acceptance band, in standard errors.
pub const SE_BAND: f64 = 3.0;

/// Significance level of the KS tests.
pub const KS_LEVEL: f64 = 0.01;

/// Smallest sample for which the asymptotic Kolmogorov p-value is reported.
pub const KS_MIN_FOR_P_VALUE: usize = 35;

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: usize,
}

impl MeanEstimate {
    /// Whether `target` lies within `k` standard errors.
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.mean - target).abs() <= k * self.std_error + 1e-15 * target.abs().max(1.0)
    }

    /// Distance to `target` in standard errors.
    pub fn z_score(&self, target: f64) -> f64 {
        (self.mean - target) / self.std_error
    }
}

/// Mean and standard error of `values` (Welford's recurrence).
pub fn sample_mean(values: &[f64]) -> Result<MeanEstimate> {
    if values.len() < 2 {
        return Err(Error::invalid("need at least two samples"));
    }
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (i, &x) in values.iter().enumerate() {
        let d = x - mean;
        mean += d / (i + 1) as f64;
        m2 += d * (x - mean);
    }
    let n = values.len() as f64;
    Ok(MeanEstimate { mean, std_error: (m2 / (n - 1.0) / n).sqrt(), n_samples: values.len() })
}

/// Empirical characteristic function `mean exp(i xi . X)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCF {
    pub xi: Vec<f64>,
    pub estimate: Complex64,
    /// Larger of the real- and imaginary-part standard errors.
    pub std_error: f64,
    pub std_error_re: f64,
    pub std_error_im: f64,
    pub n_samples: usize,
}

impl EmpiricalCF {
    /// Whether both parts of `target` lie within `k` of their standard errors.
    pub fn within(&self, target: Complex64, k: f64) -> bool {
        let slack = 1e-15;
        (self.estimate.re - target.re).abs() <= k * self.std_error_re + slack
            && (self.estimate.im - target.im).abs() <= k * self.std_error_im + slack
    }
}

fn cf_from_phases(xi: Vec<f64>, phases: impl Iterator<Item = f64>) -> Result<EmpiricalCF> {
    let (mut re, mut im): (Vec<f64>, Vec<f64>) = phases.map(|p| (p.cos(), p.sin())).unzip();
    let n = re.len();
    if n == 0 {
        return Err(Error::invalid("empirical characteristic function of an empty sample"));
    }
    if n == 1 {
        // a single sample has no spread to estimate
        re.push(re[0]);
        im.push(im[0]);
    }
    let r = sample_mean(&re)?;
    let i = sample_mean(&im)?;
    Ok(EmpiricalCF {
        xi,
        estimate: Complex64::new(r.mean, i.mean),
        std_error: r.std_error.max(i.std_error),
        std_error_re: r.std_error,
        std_error_im: i.std_error,
        n_samples: n,
    })
}

/// Empirical characteristic function of scalar samples at `xi`.
pub fn empirical_cf(samples: &[f64], xi: f64) -> Result<EmpiricalCF> {
    cf_from_phases(vec![xi], samples.iter().map(|x| xi * x))
}

/// Empirical characteristic function of vector samples at the vector `xi`.
pub fn empirical_cf_vec(samples: &[Vec<f64>], xi: &[f64]) -> Result<EmpiricalCF> {
    if samples.iter().any(|s| s.len() != xi.len()) {
        return Err(Error::invalid("sample and frequency dimensions differ"));
    }
    cf_from_phases(xi.to_vec(), samples.iter().map(|x| x.iter().zip(xi).map(|(a, b)| a * b).sum()))
}

/// Outcome of a Kolmogorov–Smirnov test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsOutcome {
    pub statistic: f64,
    /// Asymptotic p-value; `None` below [`KS_MIN_FOR_P_VALUE`] (effective) samples.
    pub p_value: Option<f64>,
    /// Effective sample size `n` (one sample) or `nm/(n+m)` (two samples).
    pub n_effective: f64,
}

impl KsOutcome {
    /// Critical value of the statistic at level `alpha`.
    pub fn critical_value(&self, alpha: f64) -> f64 {
        (-0.5 * (alpha / 2.0).ln()).sqrt() / self.n_effective.sqrt()
    }

    /// True when the test does not reject at level `alpha`.
    pub fn passes(&self, alpha: f64) -> bool {
        match self.p_value {
            Some(p) => p > alpha,
            None => self.statistic <= self.critical_value(alpha),
        }
    }
}

/// Survival function of the Kolmogorov distribution, `P(K > x)`.
pub fn kolmogorov_survival(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x < 1.0 {
        // theta-function form converges fast for small x
        let mut s = 0.0;
        for k in 1..=20 {
            let j = (2 * k - 1) as f64;
            s += (-j * j * PI * PI / (8.0 * x * x)).exp();
        }
        return (1.0 - (2.0 * PI).sqrt() / x * s).clamp(0.0, 1.0);
    }
    let mut s = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * x * x).exp();
        s += if k % 2 == 1 { term } else { -term };
        if term < 1e-300 {
            break;
        }
    }
    (2.0 * s).clamp(0.0, 1.0)
}

fn ks_p_value(d: f64, n: f64) -> Option<f64> {
    if n < KS_MIN_FOR_P_VALUE as f64 {
        return None;
    }
    let sn = n.sqrt();
    Some(kolmogorov_survival((sn + 0.12 + 0.11 / sn) * d))
}

/// One-sample KS test of `samples` against the distribution function `cdf`.
///
/// Fails when fewer than 10 samples are given, or when `cdf` leaves `[0, 1]`
/// or decreases across the sorted sample.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<KsOutcome> {
    if samples.len() < 10 {
        return Err(Error::invalid("KS test needs at least 10 samples"));
    }
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.total_cmp(b));
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    let mut prev = f64::NEG_INFINITY;
    for (i, &x) in xs.iter().enumerate() {
        let c = cdf(x);
        if !(0.0..=1.0).contains(&c) {
            return Err(Error::invalid(format!("distribution function returned {c} at {x}")));
        }
        if c < prev - 1e-12 {
            return Err(Error::invalid(format!("distribution function decreases near {x}")));
        }
        prev = prev.max(c);
        d = d.max(c - i as f64 / n).max((i + 1) as f64 / n - c);
    }
    Ok(KsOutcome { statistic: d, p_value: ks_p_value(d, n), n_effective: n })
}

/// Two-sample KS test.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsOutcome> {
    if a.len() < 10 || b.len() < 10 {
        return Err(Error::invalid("KS test needs at least 10 samples in each set"));
    }
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(|p, q| p.total_cmp(q));
    y.sort_by(|p, q| p.total_cmp(q));
    let (n, m) = (x.len() as f64, y.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < x.len() && j < y.len() {
        let v = x[i].min(y[j]);
        while i < x.len() && x[i] <= v {
            i += 1;
        }
        while j < y.len() && y[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    let ne = n * m / (n + m);
    Ok(KsOutcome { statistic: d, p_value: ks_p_value(d, ne), n_effective: ne })
}

/// Mass of a density over `domain`, given as ordered breakpoints whose ends
/// may be infinite. Passes when `|mass - 1| <= tol`.
pub fn check_normalization<F: Fn(f64) -> f64>(density: F, domain: &[f64], tol: f64) -> Result<(f64, bool)> {
    if domain.len() < 2 || domain.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid("domain must be an increasing list of at least two points"));
    }
    let opts = QuadOptions { abs_tol: 0.1 * tol, rel_tol: 1e-13, max_intervals: 20_000 };
    let mut mass = 0.0;
    let mut err = 0.0;
    let mut ok = true;
    for w in domain.windows(2) {
        let (a, b) = (w[0], w[1]);
        let q = match (a.is_finite(), b.is_finite()) {
            (true, true) => integrate(&density, &[a, b], opts),
            // x = a + u/(1 - u)
            (true, false) => integrate(|u| { let v = 1.0 - u; density(a + u / v) / (v * v) }, &[0.0, 1.0], opts),
            // x = b - u/(1 - u)
            (false, true) => integrate(|u| { let v = 1.0 - u; density(b - u / v) / (v * v) }, &[0.0, 1.0], opts),
            (false, false) => integrate(|u| { let v = 1.0 - u * u; density(u / v) * (1.0 + u * u) / (v * v) }, &[-1.0, 0.0, 1.0], opts),
        };
        mass += q.value;
        err += q.error;
        ok &= q.converged;
    }
    if !ok || !mass.is_finite() {
        return Err(Error::accuracy("normalization quadrature", mass, err));
    }
    Ok((mass, (mass - 1.0).abs() <= tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Normal, Uniform};

    #[test]
    fn degenerate_samples() {
        let cf = empirical_cf(&[0.0; 50], 2.0).unwrap();
        assert_eq!(cf.estimate, Complex64::new(1.0, 0.0));
        assert_eq!(cf.std_error, 0.0);
        let cf = empirical_cf(&[0.7; 5], 2.0).unwrap();
        assert!((cf.estimate - Complex64::from_polar(1.0, 1.4)).norm() < 1e-15);
        assert!(empirical_cf(&[], 1.0).is_err());
    }

    #[test]
    fn gaussian_cf() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let g = Normal::new(0.0, 2f64.sqrt()).unwrap();
        let xs: Vec<f64> = (0..100_000).map(|_| g.sample(&mut rng)).collect();
        let cf = empirical_cf(&xs, 1.0).unwrap();
        assert!(cf.within(Complex64::new((-1f64).exp(), 0.0), SE_BAND), "{cf:?}");
    }

    #[test]
    fn ks_on_quantile_grid() {
        let n = 200;
        let xs: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let ks = ks_statistic(&xs, |x| x.clamp(0.0, 1.0)).unwrap();
        assert!(ks.statistic <= 1.0 / n as f64);
    }

    #[test]
    fn ks_calibration_over_seeds() {
        let u = Uniform::new(0.0, 1.0).unwrap();
        let mut passes = 0;
        for seed in 0..100 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let xs: Vec<f64> = (0..10_000).map(|_| u.sample(&mut rng)).collect();
            let ks = ks_statistic(&xs, |x| x.clamp(0.0, 1.0)).unwrap();
            if ks.p_value.unwrap() > 0.01 {
                passes += 1;
            }
        }
        assert!(passes >= 99 - 2, "{passes}");
    }

    #[test]
    fn ks_detects_shift_and_bad_cdf() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = Uniform::new(0.5, 1.5).unwrap();
        let xs: Vec<f64> = (0..1000).map(|_| u.sample(&mut rng)).collect();
        let ks = ks_statistic(&xs, |x| x.clamp(0.0, 1.0)).unwrap();
        assert!(ks.p_value.unwrap() < 1e-6);
        assert!(ks_statistic(&xs, |x| (1.0 - x).clamp(0.0, 1.0)).is_err());
        assert!(ks_statistic(&xs[..5], |x| x).is_err());
        assert!(ks_statistic(&xs[..20], |x| x.clamp(0.0, 1.0)).unwrap().p_value.is_none());
    }

    #[test]
    fn kolmogorov_tail_values() {
        // classical critical values: P(K > 1.3581) = 0.05, P(K > 1.6276) = 0.01
        assert!((kolmogorov_survival(1.3581) - 0.05).abs() < 1e-4);
        assert!((kolmogorov_survival(1.6276) - 0.01).abs() < 1e-4);
        // both series agree where they meet
        let lo = kolmogorov_survival(1.0 - 1e-12);
        let hi = kolmogorov_survival(1.0);
        assert!((lo - hi).abs() < 1e-10);
    }

    #[test]
    fn normalization_checks() {
        let phi = |x: f64| (-0.5 * x * x).exp() / (2.0 * PI).sqrt();
        let (m, ok) = check_normalization(phi, &[-10.0, 10.0], 1e-10).unwrap();
        assert!(ok && (m - 1.0).abs() < 1e-10);
        let (m, ok) = check_normalization(|x| 0.5 * phi(x), &[-10.0, 10.0], 1e-10).unwrap();
        assert!(!ok && (m - 0.5).abs() < 1e-10);
        let (m, ok) = check_normalization(|x| (-x).exp(), &[0.0, f64::INFINITY], 1e-10).unwrap();
        assert!(ok, "{m}");
        let (m, ok) = check_normalization(phi, &[f64::NEG_INFINITY, f64::INFINITY], 1e-10).unwrap();
        assert!(ok, "{m}");
    }

    #[test]
    fn standard_error_scales_as_root_n() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = Normal::new(0.0, 1.0).unwrap();
        let se: Vec<f64> = [1_000, 10_000, 100_000]
            .iter()
            .map(|&n| {
                let xs: Vec<f64> = (0..n).map(|_| g.sample(&mut rng)).collect();
                empirical_cf(&xs, 1.0).unwrap().std_error_re
            })
            .collect();
        for w in se.windows(2) {
            let ratio = w[0] / w[1];
            assert!((ratio / 10f64.sqrt() - 1.0).abs() < 0.2, "{ratio}");
        }
    }
}
