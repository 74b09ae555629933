//! Bessel functions: the modified function of the second kind `K_nu(x)` for
//! real order, and `J_nu(x)` for the integer and half-integer orders that
//! appear in radial Fourier inversion.
//!
//! `K_nu` follows Temme's method: the order is split as `nu = mu + n` with
//! `|mu| <= 1/2`, `K_mu` and `K_(mu+1)` come from Temme's series (x < 2) or
//! Steed's continued fraction (x >= 2), and forward recurrence in the order
//! finishes the job. Forward recurrence is stable for `K` at every `x`.

use crate::error::{ensure_finite, Error, Result};
use std::f64::consts::PI;

/// Taylor coefficients of `1/Gamma(1 + x)` shifted by one, i.e. the
/// coefficients `c_k` of `1/Gamma(z) = sum_k c_k z^k` for k = 1..=26.
const RGAMMA_TAYLOR: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_860_61,
    -0.655_878_071_520_253_881_08,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_748,
    -0.009_621_971_527_876_973_562_1,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_1,
    -0.000_215_241_674_114_950_972_82,
    0.000_128_050_282_388_116_186_15,
    -0.000_020_134_854_780_788_238_656,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
    -5.348_122_539_423_017_982_4e-15,
    1.226_778_628_238_260_790_2e-15,
    -1.181_259_301_697_458_769_5e-16,
];

/// Returns `(gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu))` for `|mu| <= 1/2`,
/// where `gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)` and
/// `gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2`.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    // 1/Gamma(1+mu) = sum c_k mu^(k-1) and 1/Gamma(1-mu) = sum c_k (-mu)^(k-1):
    // odd k feed gam2, even k feed gam1
    let m2 = mu * mu;
    let mut gam1 = 0.0;
    let mut gam2 = 0.0;
    let mut pw = 1.0;
    for pair in RGAMMA_TAYLOR.chunks(2) {
        gam2 += pair[0] * pw;
        gam1 -= pair[1] * pw;
        pw *= m2;
    }
    let gampl = gam2 - mu * gam1;
    let gammi = gam2 + mu * gam1;
    (gam1, gam2, gampl, gammi)
}

fn k_pair(mu: f64, x: f64) -> (f64, f64) {
    let xi = 1.0 / x;
    if x < 2.0 {
        let x2 = 0.5 * x;
        let pimu = PI * mu;
        let fact = if pimu.abs() < 1e-16 { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = mu * d;
        let fact2 = if e.abs() < 1e-16 { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut c = 1.0;
        let dd = x2 * x2;
        let mut sum1 = p;
        for i in 1..500 {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - mu * mu);
            c *= dd / fi;
            p /= fi - mu;
            q /= fi + mu;
            let del = c * ff;
            sum += del;
            sum1 += c * (p - fi * ff);
            if del.abs() < sum.abs() * 1e-17 {
                break;
            }
        }
        (sum, sum1 * 2.0 * xi)
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - mu * mu;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        for i in 2..100_000 {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < 1e-17 {
                break;
            }
        }
        let h = a1 * h;
        let kmu = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
        let k1 = kmu * (mu + x + 0.5 - h) * xi;
        (kmu, k1)
    }
}

/// Modified Bessel function of the second kind `K_order(x)` for `x > 0`.
/// Symmetric in the sign of the order.
pub fn bessel_k(order: f64, x: f64) -> Result<f64> {
    ensure_finite("order", order)?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::invalid(format!("bessel_k requires x > 0, got {x}")));
    }
    let nu = order.abs();
    let nl = (nu + 0.5).floor();
    let mu = nu - nl;
    let (mut km, mut k1) = k_pair(mu, x);
    let two_over_x = 2.0 / x;
    for i in 1..=(nl as usize) {
        let next = (mu + i as f64) * two_over_x * k1 + km;
        km = k1;
        k1 = next;
    }
    Ok(km)
}

/// Bessel function of the first kind for integer or half-integer order
/// `>= -1/2`, as needed by radial inversion in `n` dimensions where the
/// order is `(n - 2)/2`.
pub fn bessel_j(order: f64, x: f64) -> Result<f64> {
    ensure_finite("x", x)?;
    let twice = 2.0 * order;
    if order < -0.5 || twice != twice.round() {
        return Err(Error::invalid(format!(
            "bessel_j supports integer and half-integer orders >= -1/2, got {order}"
        )));
    }
    if x < 0.0 {
        // J_nu(-x) = (-1)^nu J_nu(x) only makes sense for integer orders
        if order.fract() != 0.0 {
            return Err(Error::invalid("bessel_j of half-integer order needs x >= 0"));
        }
        let v = bessel_j(order, -x)?;
        return Ok(if (order as i64) % 2 == 0 { v } else { -v });
    }
    if x == 0.0 {
        return Ok(match order {
            0.0 => 1.0,
            o if o < 0.0 => f64::INFINITY,
            _ => 0.0,
        });
    }
    if x >= 25.0 + order * order {
        return Ok(j_hankel(order, x));
    }
    if x <= 1.0 || x < order {
        return Ok(j_series(order, x));
    }
    if order.fract() == 0.0 {
        Ok(j_integer_trapezoid(order as i64, x))
    } else {
        Ok(j_half_recurrence(order, x))
    }
}

fn j_series(nu: f64, x: f64) -> f64 {
    let h = 0.5 * x;
    let mut term = h.powf(nu) * super::gamma::rgamma(nu + 1.0);
    let mut sum = term;
    let h2 = h * h;
    for m in 1..400 {
        let fm = m as f64;
        term *= -h2 / (fm * (fm + nu));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn j_integer_trapezoid(n: i64, x: f64) -> f64 {
    // J_n(x) = (1/2pi) int_0^2pi cos(n tau - x sin tau) dtau; the trapezoid
    // rule is spectrally accurate for this periodic integrand
    let m = (x.ceil() as usize + n.unsigned_abs() as usize + 64).next_power_of_two();
    let nf = n as f64;
    let mut s = 0.0;
    for k in 0..m {
        let tau = 2.0 * PI * k as f64 / m as f64;
        s += (nf * tau - x * tau.sin()).cos();
    }
    s / m as f64
}

fn j_half_recurrence(nu: f64, x: f64) -> f64 {
    let c = (2.0 / (PI * x)).sqrt();
    let mut jm = c * x.cos(); // J_{-1/2}
    let mut j = c * x.sin(); // J_{1/2}
    if nu == -0.5 {
        return jm;
    }
    let mut order = 0.5;
    while order < nu {
        let next = 2.0 * order / x * j - jm;
        jm = j;
        j = next;
        order += 1.0;
    }
    j
}

fn j_hankel(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut p = 0.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..60 {
        let term = a / x.powi(k);
        if term.abs() > last && k > 2 {
            break;
        }
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if term == 0.0 || term.abs() < 1e-17 {
            break;
        }
        last = term.abs();
        let odd = (2 * k + 1) as f64;
        a *= (mu - odd * odd) / ((k + 1) as f64 * 8.0);
    }
    let w = x - (0.5 * nu + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * w.cos() - q * w.sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn half_order_closed_form() {
        let k = bessel_k(0.5, 1.0).unwrap();
        assert!(rel(k, (PI / 2.0).sqrt() * (-1f64).exp()) < 1e-14);
        assert!(rel(bessel_k(-0.5, 1.0).unwrap(), k) < 1e-15);
        for x in [1e-6, 0.3, 1.9, 2.0, 7.5, 60.0] {
            let exact = (PI / (2.0 * x)).sqrt() * (-x).exp();
            assert!(rel(bessel_k(0.5, x).unwrap(), exact) < 1e-13, "x={x}");
        }
    }

    #[test]
    fn quadrature_reference_value() {
        // adaptive quadrature of int_0^inf exp(-3 cosh t) dt
        assert!(rel(bessel_k(0.0, 3.0).unwrap(), 0.034_739_504_386_279_25) < 1e-13);
    }

    #[test]
    fn recurrence_residual() {
        let (nu, x) = (1.5, 2.0);
        let kp = bessel_k(nu + 1.0, x).unwrap();
        let km = bessel_k(nu - 1.0, x).unwrap();
        let k = bessel_k(nu, x).unwrap();
        assert!((kp - km - 2.0 * nu / x * k).abs() <= 1e-9 * kp);
    }

    #[test]
    fn rejects_nonpositive_argument() {
        assert!(bessel_k(1.0, 0.0).is_err());
        assert!(bessel_k(1.0, -2.0).is_err());
    }

    #[test]
    fn temme_gammas_match_reciprocal_gamma() {
        use crate::special::gamma::rgamma;
        for mu in [-0.5, -0.2, 0.0, 0.1, 0.37, 0.5] {
            let (_, _, gp, gm) = temme_gammas(mu);
            assert!((gp - rgamma(1.0 + mu)).abs() < 1e-15);
            assert!((gm - rgamma(1.0 - mu)).abs() < 1e-15);
        }
    }

    #[test]
    fn j_half_orders_closed_forms() {
        for x in [0.2, 1.0, 3.3, 17.0, 80.0] {
            let c = (2.0 / (PI * x)).sqrt();
            assert!((bessel_j(-0.5, x).unwrap() - c * x.cos()).abs() < 1e-14);
            assert!((bessel_j(0.5, x).unwrap() - c * x.sin()).abs() < 1e-14);
            let j32 = c * (x.sin() / x - x.cos());
            assert!((bessel_j(1.5, x).unwrap() - j32).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn j_integer_orders_agree_across_methods() {
        // J_0(2.404825557695773) is the first zero
        assert!(bessel_j(0.0, 2.404_825_557_695_773).unwrap().abs() < 1e-15);
        for n in [0.0, 1.0, 2.0] {
            for x in [0.5, 1.5, 6.0] {
                let a = j_series(n, x);
                let b = j_integer_trapezoid(n as i64, x);
                assert!((a - b).abs() < 1e-13, "n={n} x={x}");
            }
            let x = 30.0 + n * n;
            assert!((j_hankel(n, x) - j_integer_trapezoid(n as i64, x)).abs() < 1e-14);
        }
    }
}
