use crate::error::{Error, Result};
use crate::sampling::StableIndex;
use num_complex::Complex64;

/// Parameters `{(lambda_j, nu_j)}` of the weighted subordinator
/// `H(t) = sum_j lambda_j^(1/nu_j) H_j^(nu_j)(t)`, whose Laplace exponent is
/// `sum_j lambda_j mu^(nu_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubordinatorSpec {
    terms: Vec<(f64, StableIndex)>,
}

impl SubordinatorSpec {
    pub fn new(terms: &[(f64, f64)]) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::invalid("a subordinator needs at least one term"));
        }
        let mut out = Vec::with_capacity(terms.len());
        for &(lambda, nu) in terms {
            if !(lambda > 0.0) || !lambda.is_finite() {
                return Err(Error::invalid("lambda must be positive"));
            }
            out.push((lambda, StableIndex::new(nu)?));
        }
        Ok(SubordinatorSpec { terms: out })
    }

    /// Single stable subordinator with unit weight.
    pub fn stable(nu: f64) -> Result<Self> {
        Self::new(&[(1.0, nu)])
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(lambda_j, nu_j)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.terms.iter().map(|(l, n)| (*l, n.value()))
    }

    pub fn lambda_sum(&self) -> f64 {
        self.terms.iter().map(|t| t.0).sum()
    }

    /// Multiplier `lambda_j^(1/nu_j)` of each unit-rate stable component.
    pub fn weights(&self) -> Vec<f64> {
        self.terms().map(|(l, n)| l.powf(1.0 / n)).collect()
    }

    /// `sum_j lambda_j mu^(nu_j)` on the principal branch.
    pub fn laplace_exponent(&self, mu: Complex64) -> Complex64 {
        self.terms().map(|(l, n)| principal_pow(mu, n) * l).sum()
    }

    /// Real-argument exponent, `mu >= 0`.
    pub fn laplace_exponent_real(&self, mu: f64) -> f64 {
        self.terms().map(|(l, n)| l * mu.powf(n)).sum()
    }

    /// The spec `{(lambda_j, nu_j^r)}`: the r-fold iterated process has the
    /// same law as the weighted subordinator with these terms.
    pub fn iterated(&self, depth: IterationDepth) -> SubordinatorSpec {
        SubordinatorSpec {
            terms: self
                .terms
                .iter()
                .map(|(l, n)| (*l, StableIndex::new(n.value().powi(depth.0 as i32)).expect("nu^r stays in (0, 1]")))
                .collect(),
        }
    }
}

/// `z^a` with the branch cut on the negative real axis, formed in polar form.
pub fn principal_pow(z: Complex64, a: f64) -> Complex64 {
    if a == 1.0 {
        return z;
    }
    if z.re == 0.0 && z.im == 0.0 {
        return Complex64::new(if a > 0.0 { 0.0 } else { f64::INFINITY }, 0.0);
    }
    Complex64::from_polar(z.norm().powf(a), z.arg() * a)
}

/// Number of nested compositions `r >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IterationDepth(u32);

impl IterationDepth {
    pub fn new(r: u32) -> Result<Self> {
        if r >= 1 {
            Ok(IterationDepth(r))
        } else {
            Err(Error::invalid("iteration depth must be at least 1"))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_messages() {
        let e = SubordinatorSpec::new(&[(-1.0, 0.5)]).unwrap_err();
        assert!(e.to_string().contains("lambda must be positive"));
        assert!(SubordinatorSpec::new(&[]).is_err());
        assert!(SubordinatorSpec::new(&[(1.0, 1.2)]).is_err());
        assert!(SubordinatorSpec::new(&[(1.0, 0.0)]).is_err());
        assert!(IterationDepth::new(0).is_err());
    }

    #[test]
    fn exponent_at_one_is_lambda_sum() {
        let s = SubordinatorSpec::new(&[(1.0, 0.5), (2.0, 0.8)]).unwrap();
        assert_eq!(s.laplace_exponent_real(1.0), 3.0);
        let z = s.laplace_exponent(Complex64::new(1.0, 0.0));
        assert!((z - 3.0).norm() < 1e-15);
    }
}
