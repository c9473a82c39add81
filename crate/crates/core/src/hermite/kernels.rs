//! Angular kernels that turn the indicator {G ≤ x} into a tail probability of
//! the exponential variable W.
//!
//! For α ≠ 1 and γ > γ₀ the CMS draw satisfies `G^{α/(1-α)} = a(γ) / W`; for
//! α = 1 and β₂ ≠ 0 it satisfies `G = β₂ ln(a₁(γ) / W)`. Both kernels are
//! evaluated through their logarithms because they overflow near the ends of
//! the angle interval.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// ln a(γ) for α ≠ 1, γ ∈ (γ₀, π/2). No domain checks; may return ±∞ at the
/// interval ends.
#[inline]
pub(crate) fn ln_a(gamma: f64, alpha: f64, gamma0: f64) -> f64 {
    let ln_cos = gamma.cos().ln();
    let ln_sin = (alpha * (gamma - gamma0)).sin().ln();
    let ln_cos_shift = ((1.0 - alpha) * gamma + alpha * gamma0).cos().ln();
    let power = alpha / (1.0 - alpha);
    power * (ln_sin - ln_cos) + ln_cos_shift - ln_cos
}

/// ln a₁(γ) for β₂ ≠ 0, γ ∈ (-π/2, π/2).
#[inline]
pub(crate) fn ln_a1(gamma: f64, beta2: f64) -> f64 {
    let lead = FRAC_PI_2 + beta2 * gamma;
    lead.ln() - gamma.cos().ln() + lead * gamma.tan() / beta2
}

/// a(γ) = (sin α(γ-γ₀) / cos γ)^{α/(1-α)} · cos(γ - α(γ-γ₀)) / cos γ.
pub fn a_gamma(gamma: f64, alpha: f64, gamma0: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) || alpha == 1.0 {
        return Err(Error::Domain {
            function: "a_gamma",
            detail: format!("alpha = {alpha} must lie in (0,1) ∪ (1,2)"),
        });
    }
    if !(gamma > gamma0 && gamma < FRAC_PI_2) {
        return Err(Error::Domain {
            function: "a_gamma",
            detail: format!("gamma = {gamma} outside ({gamma0}, π/2)"),
        });
    }
    Ok(ln_a(gamma, alpha, gamma0).exp())
}

/// a₁(γ) = (π/2 + β₂γ) / cos γ · exp{(π/2 + β₂γ) tan γ / β₂}.
pub fn a1_gamma(gamma: f64, beta2: f64) -> Result<f64> {
    if beta2 == 0.0 || !(-1.0..=1.0).contains(&beta2) {
        return Err(Error::Domain {
            function: "a1_gamma",
            detail: format!("beta2 = {beta2} must be nonzero in [-1, 1]"),
        });
    }
    if !(gamma.abs() < FRAC_PI_2) {
        return Err(Error::Domain {
            function: "a1_gamma",
            detail: format!("gamma = {gamma} outside (-π/2, π/2)"),
        });
    }
    Ok(ln_a1(gamma, beta2).exp())
}
