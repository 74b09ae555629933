use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::subordinator::SubordinatorSpec;
use num_complex::Complex64;

/// Coefficients of the Cauchy problem: the time-derivative terms, the space
/// order `beta`, the diffusivity `c` and the dimension `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub spec: SubordinatorSpec,
    pub beta: f64,
    pub c: f64,
    pub n: usize,
}

impl ModelParams {
    pub fn new(spec: SubordinatorSpec, beta: f64, c: f64, n: usize) -> Result<Self> {
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::invalid(format!("beta must lie in (0, 1], got {beta}")));
        }
        ensure_positive("c", c)?;
        if n == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        Ok(ModelParams { spec, beta, c, n })
    }

    /// `c^2 |xi|^(2 beta)`.
    pub fn space_symbol(&self, xi_norm: f64) -> f64 {
        self.c * self.c * xi_norm.powf(2.0 * self.beta)
    }
}

/// Time or Laplace variable of a query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralArg {
    Time(f64),
    Laplace(Complex64),
}

/// A point `(|xi|, t)` or `(|xi|, mu)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralQuery {
    pub xi_norm: f64,
    pub arg: SpectralArg,
}

impl SpectralQuery {
    pub fn time(xi_norm: f64, t: f64) -> Self {
        SpectralQuery { xi_norm, arg: SpectralArg::Time(t) }
    }

    pub fn laplace(xi_norm: f64, mu: impl Into<Complex64>) -> Self {
        SpectralQuery { xi_norm, arg: SpectralArg::Laplace(mu.into()) }
    }

    pub(crate) fn xi(&self) -> Result<f64> {
        ensure_finite("|xi|", self.xi_norm)?;
        if self.xi_norm < 0.0 {
            return Err(Error::invalid("|xi| must be nonnegative"));
        }
        Ok(self.xi_norm)
    }

    pub(crate) fn t(&self) -> Result<f64> {
        match self.arg {
            SpectralArg::Time(t) => {
                ensure_positive("t", t)?;
                Ok(t)
            }
            SpectralArg::Laplace(_) => Err(Error::invalid("query carries a Laplace variable, expected a time")),
        }
    }

    pub(crate) fn mu(&self) -> Result<Complex64> {
        match self.arg {
            SpectralArg::Laplace(mu) => Ok(mu),
            SpectralArg::Time(_) => Err(Error::invalid("query carries a time, expected a Laplace variable")),
        }
    }
}
