//! Position/momentum bounds for Gaussian precision limits.

use crate::error::{Error, Result};

/// Precision scales of a position measurement (`sigma_q`) and of the
/// momentum reference (`sigma_p`), with `c = 2 sigma_q sigma_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianParams {
    sigma_q: f64,
    sigma_p: f64,
}

impl GaussianParams {
    pub fn new(sigma_q: f64, sigma_p: f64) -> Result<Self> {
        if !(sigma_q > 0.0 && sigma_p > 0.0 && sigma_q.is_finite() && sigma_p.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "precisions must be positive and finite, got sigma_q={sigma_q}, sigma_p={sigma_p}"
            )));
        }
        Ok(Self { sigma_q, sigma_p })
    }

    /// Parameters with the given `c`, taking `sigma_p = 1`.
    pub fn from_c(c: f64) -> Result<Self> {
        Self::new(c / 2.0, 1.0)
    }

    pub fn sigma_q(&self) -> f64 {
        self.sigma_q
    }

    pub fn sigma_p(&self) -> f64 {
        self.sigma_p
    }

    pub fn c(&self) -> f64 {
        2.0 * self.sigma_q * self.sigma_p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaussianKind {
    Measurement,
    Preparation,
}

fn measurement_bound_of_c(c: f64) -> f64 {
    if c >= 1.0 {
        return 0.0;
    }
    let c23 = c.powf(2.0 / 3.0);
    (1.0 - c * c) / (1.0 + c23 + c23 * c23).powf(1.5)
}

fn preparation_bound_of_c(c: f64) -> f64 {
    let s = 1.0 + c * c;
    let c23 = c.powf(2.0 / 3.0);
    s.sqrt() / (s + c23 * s.powf(2.0 / 3.0) + c23 * c23 * s.powf(1.0 / 3.0)).powf(1.5)
}

/// Lower bound on the error/disturbance combination for position error and
/// momentum disturbance. The measurement bound is clamped at 0 for `c >= 1`.
pub fn gaussian_bound(p: &GaussianParams, kind: GaussianKind) -> f64 {
    match kind {
        GaussianKind::Measurement => measurement_bound_of_c(p.c()),
        GaussianKind::Preparation => preparation_bound_of_c(p.c()),
    }
}

/// Test-function width maximizing [`uglydiff`] at `sigma_psi = 0`.
pub fn optimal_sigma_f(p: &GaussianParams) -> Result<f64> {
    let c = p.c();
    if c >= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "no positive bound for c = {c} >= 1"
        )));
    }
    let c23 = c.powf(2.0 / 3.0);
    Ok((p.sigma_p * p.sigma_p / (c23 * (1.0 + c23))).sqrt())
}

/// Expectation of the Gaussian test function of width `sigma_f` after a
/// measurement with Gaussian noise `sigma_noise`, on a Gaussian state of
/// width `sigma_psi`.
pub fn gaussian_overlap(sigma_psi: f64, sigma_noise: f64, sigma_f: f64) -> f64 {
    sigma_f / (sigma_f * sigma_f + sigma_noise * sigma_noise + sigma_psi * sigma_psi).sqrt()
}

/// Difference of overlaps for the reference noise `sigma_p` and the smallest
/// noise `1 / (2 sigma_q)` compatible with a position resolution `sigma_q`.
///
/// The closed-form optimum of [`optimal_sigma_f`] is exact only for
/// `sigma_psi = 0`.
pub fn uglydiff(p: &GaussianParams, sigma_f: f64, sigma_psi: f64) -> f64 {
    let hat = 1.0 / (2.0 * p.sigma_q);
    gaussian_overlap(sigma_psi, p.sigma_p, sigma_f) - gaussian_overlap(sigma_psi, hat, sigma_f)
}
