//! Double-double arithmetic (about 32 significant digits).
//!
//! Only what the Gaver–Stehfest inversion needs: the four operations, `exp`,
//! `ln` and real powers. Error-free transformations use `f64::mul_add`.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// An unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct DD {
    pub hi: f64,
    pub lo: f64,
}

const LN2: DD = DD { hi: std::f64::consts::LN_2, lo: 2.319_046_813_846_299_558e-17 };

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DD {
    pub const ZERO: DD = DD { hi: 0.0, lo: 0.0 };
    pub const ONE: DD = DD { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> DD {
        DD { hi: x, lo: 0.0 }
    }

    pub fn ln2() -> DD {
        LN2
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> DD {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    fn mul_f64(self, b: f64) -> DD {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        DD { hi, lo }
    }

    fn ldexp(self, k: i32) -> DD {
        let s = 2f64.powi(k);
        DD { hi: self.hi * s, lo: self.lo * s }
    }

    pub fn exp(self) -> DD {
        if self.hi > 709.0 {
            return DD::new(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return DD::ZERO;
        }
        // x = k ln2 + r, then exp(r) = (exp(r / 2^10))^(2^10)
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2.mul_f64(k)).ldexp(-10);
        let mut term = DD::ONE;
        let mut sum = DD::ONE;
        for i in 1..=14 {
            term = term * r / DD::new(i as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-34 {
                break;
            }
        }
        for _ in 0..10 {
            sum = sum * sum;
        }
        sum.ldexp(k as i32)
    }

    /// Natural logarithm of a positive number.
    pub fn ln(self) -> DD {
        debug_assert!(self.hi > 0.0);
        // one Newton step on exp(y) = x doubles the digits of the f64 guess
        let y = DD::new(self.hi.ln());
        y + self * (-y).exp() - DD::ONE
    }

    /// `self^a` for positive `self`.
    pub fn powf(self, a: f64) -> DD {
        if a == 0.0 {
            return DD::ONE;
        }
        if a == 1.0 {
            return self;
        }
        (self.ln().mul_f64(a)).exp()
    }
}

impl From<f64> for DD {
    fn from(x: f64) -> DD {
        DD::new(x)
    }
}

impl Neg for DD {
    type Output = DD;
    fn neg(self) -> DD {
        DD { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for DD {
    type Output = DD;
    fn add(self, b: DD) -> DD {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DD { hi, lo }
    }
}

impl Sub for DD {
    type Output = DD;
    fn sub(self, b: DD) -> DD {
        self + (-b)
    }
}

impl Mul for DD {
    type Output = DD;
    fn mul(self, b: DD) -> DD {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DD { hi, lo }
    }
}

impl Div for DD {
    type Output = DD;
    fn div(self, b: DD) -> DD {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DD { hi, lo } + DD::new(q3)
    }
}
