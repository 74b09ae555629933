//! Roots of the depressed cubic `z^3 + p z + q = 0` with real coefficients.

use crate::error::{ensure_finite, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// The three roots of a depressed cubic and the largest polynomial residual
/// over them. Real roots come first; a complex pair is stored as exact
/// conjugates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicRoots {
    pub roots: [Complex64; 3],
    pub residual: f64,
}

fn eval(p: f64, q: f64, z: Complex64) -> Complex64 {
    z * z * z + z * p + q
}

fn polish(p: f64, q: f64, z: Complex64) -> Complex64 {
    let d = z * z * 3.0 + p;
    if d.norm() == 0.0 {
        return z;
    }
    let cand = z - eval(p, q, z) / d;
    if eval(p, q, cand).norm() <= eval(p, q, z).norm() {
        cand
    } else {
        z
    }
}

fn polish_real(p: f64, q: f64, x: f64) -> f64 {
    polish(p, q, Complex64::new(x, 0.0)).re
}

/// Solve `z^3 + p z + q = 0`: trigonometric form when all three roots are
/// real, Cardano radicals otherwise, then one Newton step per root.
pub fn solve_depressed_cubic(p: f64, q: f64) -> Result<CubicRoots> {
    ensure_finite("p", p)?;
    ensure_finite("q", q)?;
    let roots = if p == 0.0 && q == 0.0 {
        [Complex64::new(0.0, 0.0); 3]
    } else {
        let disc = (0.5 * q).powi(2) + (p / 3.0).powi(3);
        if disc < 0.0 {
            // p < 0 here, three distinct real roots
            let m = 2.0 * (-p / 3.0).sqrt();
            let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
            let phi = arg.acos() / 3.0;
            let mut r = [0.0; 3];
            for (k, slot) in r.iter_mut().enumerate() {
                *slot = polish_real(p, q, m * (phi - 2.0 * PI * k as f64 / 3.0).cos());
            }
            r.sort_by(|a, b| b.total_cmp(a));
            r.map(|x| Complex64::new(x, 0.0))
        } else {
            // one real root and a conjugate pair (or a repeated real root)
            let s = disc.sqrt();
            let a = -(q.signum()) * (0.5 * q.abs() + s).cbrt();
            let b = if a != 0.0 { -p / (3.0 * a) } else { 0.0 };
            let real = polish_real(p, q, a + b);
            let half = -0.5 * (a + b);
            let im = 0.5 * 3f64.sqrt() * (a - b);
            let c = polish(p, q, Complex64::new(half, im.abs()));
            if c.im == 0.0 {
                [Complex64::new(real, 0.0), c, c]
            } else {
                [Complex64::new(real, 0.0), c, c.conj()]
            }
        }
    };
    let residual = roots.iter().map(|z| eval(p, q, *z).norm()).fold(0.0, f64::max);
    Ok(CubicRoots { roots, residual })
}
