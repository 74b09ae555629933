//! Conditional splitting of a stable increment.
//!
//! Given `X1 + X2 = d` for independent unit one-sided stable `X1, X2`, draw
//! `X1` from the density proportional to `f(y) f(d - y)` on `(0, d)`.
//!
//! Proposal: `y` from `f` truncated to `(0, d)` (exact, by conditioning
//! Kanter's representation), mirrored to `d - y` with probability 1/2. The
//! proposal density is `(f(y) + f(d - y)) / (2 F(d))`, so a draw is kept with
//! probability `h(y)/M`, `h = f(y) f(d-y) / (f(y) + f(d-y))`, `M >= sup h`.
//! When the truncation or the rejection step stalls (tiny `d`, where the
//! target is a narrow spike at `d/2`) an inverse-CDF draw on an adapted grid
//! takes over.

use crate::sampling::stable::{exp1, kanter_log_a, open01};
use crate::sampling::StableDensity;
use rand::Rng;
use std::f64::consts::PI;

const MAX_TRUNCATION_TRIES: usize = 200;
const MAX_REJECTIONS: usize = 200;
const ENVELOPE_POINTS: usize = 12;

fn log_add(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// Draw `y` from `f` truncated to `(0, d)`; returns `(y, d - y)` with both
/// pieces computed without cancellation. `None` if the truncation keeps failing.
fn truncated<R: Rng + ?Sized>(nu: f64, d: f64, rng: &mut R) -> Option<(f64, f64)> {
    let k = nu / (1.0 - nu);
    let kd = k * d.ln();
    for _ in 0..MAX_TRUNCATION_TRIES {
        let u = PI * open01(rng);
        let la = kanter_log_a(nu, u);
        // P(X < d | U = u) = exp(-A(u) d^-k)
        if open01(rng).ln() > -(la - kd).exp() {
            continue;
        }
        // W | X < d is A d^-k plus a fresh exponential; y = d (1 + eps)^(-1/k)
        let eps = (exp1(rng).ln() + kd - la).exp();
        let l = -eps.ln_1p() / k;
        let y = d * l.exp();
        let rest = -d * l.exp_m1();
        return Some((y, rest));
    }
    None
}

fn log_h(dens: &StableDensity, a: f64, b: f64) -> f64 {
    let fa = dens.ln_pdf(a);
    let fb = dens.ln_pdf(b);
    fa + fb - log_add(fa, fb)
}

/// Split `d` into `(X1, X2)` with `X1 + X2 = d`, for unit-time components.
pub fn split_unit<R: Rng + ?Sized>(dens: &StableDensity, d: f64, rng: &mut R) -> (f64, f64) {
    if !(d > 0.0) {
        return (0.0, 0.0);
    }
    if d.is_infinite() {
        return (f64::INFINITY, f64::INFINITY);
    }
    let nu = dens.nu();
    let mut log_m = f64::NEG_INFINITY;
    for i in 1..=ENVELOPE_POINTS {
        let y = 0.5 * d * i as f64 / ENVELOPE_POINTS as f64;
        log_m = log_m.max(log_h(dens, y, d - y));
    }
    log_m += 0.1;
    if log_m.is_finite() {
        for _ in 0..MAX_REJECTIONS {
            let Some((y, rest)) = truncated(nu, d, rng) else { break };
            let lh = log_h(dens, y, rest);
            if lh > log_m {
                // envelope missed a peak; widen it and keep going
                log_m = lh + 0.1;
            }
            if open01(rng).ln() <= lh - log_m {
                return if rng.random::<bool>() { (y, rest) } else { (rest, y) };
            }
        }
    }
    grid_split(dens, d, rng)
}

/// Inverse-CDF draw from `f(y) f(d - y)` tabulated on a grid that is zoomed
/// onto the region holding the mass.
fn grid_split<R: Rng + ?Sized>(dens: &StableDensity, d: f64, rng: &mut R) -> (f64, f64) {
    const N: usize = 512;
    let logg = |y: f64| dens.ln_pdf(y) + dens.ln_pdf(d - y);
    // the target is symmetric about d/2; find the support on the left half
    let coarse: Vec<f64> = (1..N).map(|i| 0.5 * d * i as f64 / N as f64).collect();
    let vals: Vec<f64> = coarse.iter().map(|&y| logg(y)).collect();
    let peak = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !peak.is_finite() {
        let half = 0.5 * d;
        return (half, d - half);
    }
    let first = vals.iter().position(|&v| v > peak - 40.0).unwrap_or(0);
    let lo = if first == 0 { 0.0 } else { coarse[first - 1] };
    // nodes on [lo, d/2], then mirrored
    let nodes: Vec<f64> = (0..=N).map(|i| lo + (0.5 * d - lo) * i as f64 / N as f64).collect();
    let logs: Vec<f64> = nodes.iter().map(|&y| if y > 0.0 { logg(y) } else { f64::NEG_INFINITY }).collect();
    let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut cum = vec![0.0; N + 1];
    for i in 1..=N {
        let a = (logs[i - 1] - top).exp();
        let b = (logs[i] - top).exp();
        cum[i] = cum[i - 1] + 0.5 * (a + b) * (nodes[i] - nodes[i - 1]);
    }
    let target = open01(rng) * cum[N];
    let i = cum.partition_point(|&c| c < target).clamp(1, N);
    let frac = (target - cum[i - 1]) / (cum[i] - cum[i - 1]).max(f64::MIN_POSITIVE);
    let y = nodes[i - 1] + frac.clamp(0.0, 1.0) * (nodes[i] - nodes[i - 1]);
    let rest = d - y;
    if rng.random::<bool>() {
        (y, rest)
    } else {
        (rest, y)
    }
}

/// Split an increment `d` of a `nu`-stable subordinator over an interval of
/// length `2 half` into its two halves. `nu = 1` splits exactly in two.
pub fn split_increment<R: Rng + ?Sized>(dens: Option<&StableDensity>, d: f64, half: f64, rng: &mut R) -> (f64, f64) {
    let Some(dens) = dens else {
        let a = 0.5 * d;
        return (a, d - a);
    };
    let scale = half.powf(1.0 / dens.nu());
    if !(scale > 0.0) || !(d > 0.0) {
        let a = 0.5 * d;
        return (a, d - a);
    }
    let (a, b) = split_unit(dens, d / scale, rng);
    let a = a * scale;
    let b = b * scale;
    // keep the pair summing to d, resolving rounding on the larger piece
    if a <= b {
        (a, d - a)
    } else {
        (d - b, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{stable_density, unit_stable};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// For nu = 1/2, X1 given X1 + X2 = d has an explicit density
    /// proportional to (y (d - y))^(-3/2) exp(-1/(4y) - 1/(4(d - y))).
    fn levy_bridge_cdf(d: f64, x: f64) -> f64 {
        let g = |y: f64| (-1.5 * (y * (d - y)).ln() - 0.25 / y - 0.25 / (d - y)).exp();
        let n = 20_000;
        let mut tot = 0.0;
        let mut part = 0.0;
        for i in 0..n {
            let y = d * (i as f64 + 0.5) / n as f64;
            let v = g(y);
            tot += v;
            if y < x {
                part += v;
            }
        }
        part / tot
    }

    #[test]
    fn levy_bridge_law() {
        let dens = stable_density(0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in [0.05, 0.6, 5.0, 300.0] {
            let n = 4000;
            let mut xs: Vec<f64> = (0..n).map(|_| split_unit(&dens, d, &mut rng).0).collect();
            xs.sort_by(|a, b| a.total_cmp(b));
            let mut ks: f64 = 0.0;
            for (i, x) in xs.iter().enumerate() {
                let c = levy_bridge_cdf(d, *x);
                ks = ks.max((c - i as f64 / n as f64).abs()).max((c - (i + 1) as f64 / n as f64).abs());
            }
            // 1% critical value 1.628/sqrt(n), plus the grid error of the reference
            assert!(ks < 1.628 / (n as f64).sqrt() + 1e-3, "d={d}: KS {ks}");
        }
    }

    #[test]
    fn split_pieces_add_up() {
        let dens = stable_density(0.7);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in [1e-12, 1e-3, 1.0, 1e8] {
            for _ in 0..50 {
                let (a, b) = split_increment(Some(&dens), d, 0.3, &mut rng);
                assert!(a >= 0.0 && b >= 0.0);
                assert_eq!(a + b, d);
            }
        }
    }

    #[test]
    fn splitting_two_independent_halves_is_consistent() {
        // sum of two half-time draws, then split: the first piece must be
        // distributed as a half-time draw
        let nu = 0.6;
        let dens = stable_density(nu);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = 6000;
        let s = 0.5f64.powf(1.0 / nu);
        let direct: Vec<f64> = (0..n).map(|_| s * unit_stable(nu, &mut rng)).collect();
        let bridged: Vec<f64> = (0..n)
            .map(|_| {
                let d = unit_stable(nu, &mut rng);
                split_increment(Some(&dens), d, 0.5, &mut rng).0
            })
            .collect();
        let ks = crate::verify::ks_two_sample(&direct, &bridged).unwrap();
        assert!(ks.passes(0.01), "{ks:?}");
    }
}
