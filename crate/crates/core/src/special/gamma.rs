//! Real gamma function via a Lanczos approximation (g = 7, nine terms) with
//! reflection for arguments below one half. Relative accuracy is close to
//! 1e-15 wherever the result is representable.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `sin(pi x)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let mut r = x % 2.0;
    if r > 1.0 {
        r -= 2.0;
    } else if r < -1.0 {
        r += 2.0;
    }
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        (PI * (-1.0 - r)).sin()
    } else {
        (PI * r).sin()
    }
}

fn lanczos_sum(xm1: f64) -> f64 {
    let mut a = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (xm1 + i as f64);
    }
    a
}

/// Gamma function on the real line. Poles (non-positive integers) give NaN.
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 && x == x.floor() {
        return f64::NAN;
    }
    if x < 0.5 {
        return PI / (sin_pi(x) * gamma(1.0 - x));
    }
    if x > 171.7 {
        return f64::INFINITY;
    }
    let xm1 = x - 1.0;
    let t = xm1 + LANCZOS_G + 0.5;
    let half = t.powf(0.5 * (xm1 + 0.5));
    (2.0 * PI).sqrt() * lanczos_sum(xm1) * (half * (-t).exp()) * half
}

/// Natural log of `|Gamma(x)|` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        // ln Gamma(x) = ln pi - ln sin(pi x) - ln Gamma(1 - x)
        return PI.ln() - sin_pi(x).abs().ln() - ln_gamma(1.0 - x);
    }
    let xm1 = x - 1.0;
    let t = xm1 + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (xm1 + 0.5) * t.ln() - t + lanczos_sum(xm1).ln()
}

/// Reciprocal gamma `1/Gamma(x)`; entire, so the poles map to exact zeros.
pub fn rgamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if x >= 0.5 {
        if x > 170.0 {
            return (-ln_gamma(x)).exp();
        }
        return 1.0 / gamma(x);
    }
    // 1/Gamma(x) = Gamma(1 - x) sin(pi x) / pi
    let y = 1.0 - x;
    let s = sin_pi(x);
    if y > 170.0 {
        let mag = ln_gamma(y) + s.abs().ln() - PI.ln();
        return s.signum() * mag.exp();
    }
    gamma(y) * s / PI
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn integer_and_half_integer_values() {
        let mut fact = 1.0;
        for n in 1..30 {
            assert!(rel(gamma(n as f64), fact) < 1e-14, "n={n}");
            fact *= n as f64;
        }
        assert!(rel(gamma(0.5), PI.sqrt()) < 1e-14);
        assert!(rel(gamma(1.5), 0.5 * PI.sqrt()) < 1e-14);
        assert!(rel(gamma(-0.5), -2.0 * PI.sqrt()) < 1e-14);
        assert!(rel(gamma(-1.5), 4.0 / 3.0 * PI.sqrt()) < 1e-14);
    }

    #[test]
    fn reference_values() {
        // mpmath.gamma at 30 digits
        let cases = [
            (0.1, 9.513_507_698_668_730_58),
            (0.37, 2.403_550_020_078_653_48),
            (2.71, 1.557_077_572_191_480_69),
            (-2.3, -1.447_107_394_255_918_06),
            (17.25, 4.224_986_665_692_703_9e13),
            (150.5, 4.661_072_627_097_378_24e261),
        ];
        for (x, g) in cases {
            assert!(rel(gamma(x), g) < 1e-13, "x={x}: {} vs {g}", gamma(x));
        }
    }

    const RG_M170_5: f64 = -3.018_649_650_835_053_76e307;
    const RG_M165_25: f64 = 4.379_547_941_882_868_4e295;

    #[test]
    fn reciprocal_gamma_has_exact_zeros() {
        for n in 0..20 {
            assert_eq!(rgamma(-(n as f64)), 0.0);
        }
        assert!(rel(rgamma(-0.5), -0.5 / PI.sqrt()) < 1e-14);
        assert!(rgamma(500.0) >= 0.0 && rgamma(500.0) < 1e-300);
        // 1 - x > 170 goes through the log path; mpmath.rgamma values
        assert!(rel(rgamma(-170.5), RG_M170_5) < 1e-12);
        assert!(rel(rgamma(-165.25), RG_M165_25) < 1e-12);
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        for &x in &[0.3, 1.0, 4.5, 30.0, 120.0] {
            assert!((ln_gamma(x) - gamma(x).ln()).abs() < 1e-12 * ln_gamma(x).abs().max(1.0));
        }
        // mpmath.loggamma(1000.5)
        assert!(rel(ln_gamma(1000.5), 5_908.674_175_848_677_81) < 1e-14);
    }

    #[test]
    fn sin_pi_is_exact_at_integers() {
        for n in -10..10 {
            assert_eq!(sin_pi(n as f64), 0.0);
        }
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-16);
        assert!((sin_pi(-1.5) - 1.0).abs() < 1e-16);
    }
}
