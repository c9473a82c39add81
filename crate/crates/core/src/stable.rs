//! Stable laws: the two characteristic-function parameterizations, the
//! Chambers–Mallows–Stuck transforms driven by a pair of Gaussians, and the
//! distribution function of `S_α(β₂, 1, 0)` in the analytic (B) form.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::hermite::kernels::{ln_a, ln_a1};
use crate::normal;
use crate::quadrature::{integrate, Integral};

/// Default absolute tolerance for [`StableLaw::cdf`].
pub const CDF_TOL: f64 = 1e-10;
/// Error estimate above which a CDF evaluation is reported as a failure.
pub const CDF_FAIL_TOL: f64 = 1e-6;
const CDF_MAX_PANELS: usize = 400;

/// Parameters in the standard form: `ln ψ(z) = iμz - σ^α|z|^α[1 - iβ sign(z) tan(πα/2)]`
/// (with the logarithmic α = 1 variant).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StableParamsA {
    pub alpha: f64,
    pub beta: f64,
    pub sigma: f64,
    pub mu: f64,
}

/// Parameters in the analytic form used by the CMS transforms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StableParamsB {
    pub alpha: f64,
    pub beta2: f64,
    pub sigma2: f64,
    pub mu: f64,
}

impl StableParamsA {
    pub fn new(alpha: f64, beta: f64, sigma: f64, mu: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(invalid(format!("alpha = {alpha} outside (0, 2]")));
        }
        check_common(beta, sigma, mu)?;
        Ok(StableParamsA {
            alpha,
            beta,
            sigma,
            mu,
        })
    }
}

impl StableParamsB {
    pub fn new(alpha: f64, beta2: f64, sigma2: f64, mu: f64) -> Result<Self> {
        check_alpha(alpha)?;
        check_common(beta2, sigma2, mu)?;
        Ok(StableParamsB {
            alpha,
            beta2,
            sigma2,
            mu,
        })
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 2.0 {
        Ok(())
    } else {
        Err(invalid(format!("alpha = {alpha} outside (0, 2)")))
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&beta) {
        Ok(())
    } else {
        Err(invalid(format!("asymmetry {beta} outside [-1, 1]")))
    }
}

fn check_common(beta: f64, scale: f64, mu: f64) -> Result<()> {
    check_beta(beta)?;
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(invalid(format!("scale {scale} must be positive")));
    }
    if !mu.is_finite() {
        return Err(invalid("location must be finite"));
    }
    Ok(())
}

/// K(α) = α - 1 + sign(1 - α). Jumps from 1 to -1 across α = 1.
pub fn k_alpha(alpha: f64) -> f64 {
    let sign = if alpha < 1.0 {
        1.0
    } else if alpha > 1.0 {
        -1.0
    } else {
        0.0
    };
    alpha - 1.0 + sign
}

/// γ₀ = -β₂ π K(α) / (2α).
pub fn gamma0(alpha: f64, beta2: f64) -> f64 {
    -beta2 * PI * k_alpha(alpha) / (2.0 * alpha)
}

/// Convert representation A to B.
pub fn convert_a_to_b(p: StableParamsA) -> Result<StableParamsB> {
    check_alpha(p.alpha)?;
    if p.alpha == 1.0 {
        return StableParamsB::new(1.0, p.beta, 2.0 * p.sigma / PI, p.mu);
    }
    let t = (PI * p.alpha / 2.0).tan();
    // tan(β₂πK/2) = β tan(πα/2); the atan branch is the right one because
    // |β tan(πα/2)| ≤ tan(π|K|/2) on both sides of α = 1.
    let beta2 = (2.0 * (p.beta * t).atan() / (PI * k_alpha(p.alpha))).clamp(-1.0, 1.0);
    let sigma2 = p.sigma * (1.0 + p.beta * p.beta * t * t).powf(1.0 / (2.0 * p.alpha));
    StableParamsB::new(p.alpha, beta2, sigma2, p.mu)
}

/// Convert representation B to A.
pub fn convert_b_to_a(p: StableParamsB) -> Result<StableParamsA> {
    check_alpha(p.alpha)?;
    if p.alpha == 1.0 {
        return StableParamsA::new(1.0, p.beta2, PI * p.sigma2 / 2.0, p.mu);
    }
    let t = (PI * p.alpha / 2.0).tan();
    let beta = ((p.beta2 * PI * k_alpha(p.alpha) / 2.0).tan() / t).clamp(-1.0, 1.0);
    let sigma = p.sigma2 / (1.0 + beta * beta * t * t).powf(1.0 / (2.0 * p.alpha));
    StableParamsA::new(p.alpha, beta, sigma, p.mu)
}

/// The uniform angle γ, exponential W and shift γ₀ for one Gaussian pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmsAuxiliaries {
    pub gamma: f64,
    pub w: f64,
    pub gamma0: f64,
    /// cos γ computed from the smaller tail of Φ(z₁); keeps relative accuracy
    /// as γ approaches ±π/2.
    pub cos_gamma: f64,
    pub ln_w: f64,
}

impl CmsAuxiliaries {
    pub fn new(z1: f64, z2: f64, gamma0: f64) -> Self {
        let (gamma, cos_gamma) = angle_and_cos(z1);
        let w = w_of(z2);
        CmsAuxiliaries {
            gamma,
            w,
            gamma0,
            cos_gamma,
            ln_w: ln_w_of(z2, w),
        }
    }
}

fn angle_and_cos(z: f64) -> (f64, f64) {
    if z <= 0.0 {
        let lo = normal::cdf(z);
        (PI * lo - FRAC_PI_2, (PI * lo).sin())
    } else {
        let hi = normal::sf(z);
        (FRAC_PI_2 - PI * hi, (PI * hi).sin())
    }
}

/// γ(z) = πΦ(z) - π/2.
pub fn gamma_of(z: f64) -> f64 {
    angle_and_cos(z).0
}

/// W(z) = -ln(1 - Φ(z)), without cancellation in either tail.
pub fn w_of(z: f64) -> f64 {
    if z < 0.0 {
        -(-normal::cdf(z)).ln_1p()
    } else {
        -normal::ln_sf(z)
    }
}

// ln W stays finite where W itself underflows (W ≈ Φ(z) for z ≪ 0).
fn ln_w_of(z: f64, w: f64) -> f64 {
    if z < -8.0 {
        normal::ln_cdf(z) + 0.5 * normal::cdf(z)
    } else {
        w.ln()
    }
}

/// Chambers–Mallows–Stuck map for α ≠ 1. Overflow yields ±∞.
pub fn cms_g0(z1: f64, z2: f64, alpha: f64, beta2: f64) -> f64 {
    let aux = CmsAuxiliaries::new(z1, z2, gamma0(alpha, beta2));
    g0_from_aux(&aux, alpha)
}

pub(crate) fn g0_from_aux(aux: &CmsAuxiliaries, alpha: f64) -> f64 {
    let s = (alpha * (aux.gamma - aux.gamma0)).sin();
    if s == 0.0 {
        return 0.0;
    }
    let shifted = (aux.gamma - alpha * (aux.gamma - aux.gamma0)).cos();
    let ln_abs = s.abs().ln() - aux.cos_gamma.ln() / alpha
        + (1.0 - alpha) / alpha * (shifted.ln() - aux.ln_w);
    s.signum() * ln_abs.exp()
}

/// Chambers–Mallows–Stuck map for α = 1.
pub fn cms_g1(z1: f64, z2: f64, beta2: f64) -> f64 {
    let aux = CmsAuxiliaries::new(z1, z2, 0.0);
    g1_from_aux(&aux, beta2)
}

pub(crate) fn g1_from_aux(aux: &CmsAuxiliaries, beta2: f64) -> f64 {
    let lead = FRAC_PI_2 + beta2 * aux.gamma;
    let tan = aux.gamma.sin() / aux.cos_gamma;
    if beta2 == 0.0 {
        return lead * tan;
    }
    lead * tan - beta2 * (aux.ln_w + aux.cos_gamma.ln() - lead.ln())
}

/// Map an `S_α(β, 1, 0)` draw to `S_α(β, σ, μ)`.
pub fn affine_map(x: f64, target: StableParamsA) -> f64 {
    if target.alpha == 1.0 {
        target.sigma * x + 2.0 / PI * target.beta * target.sigma * target.sigma.ln() + target.mu
    } else {
        target.sigma * x + target.mu
    }
}

/// Which CMS branch and integral representation applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// 0 < α < 1
    Below1,
    /// α = 1
    Unit,
    /// 1 < α < 2
    Above1,
}

/// `S_α(β₂, 1, 0)` in representation B with precomputed constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableLaw {
    alpha: f64,
    beta2: f64,
    gamma0: f64,
    regime: Regime,
}

impl StableLaw {
    pub fn new(alpha: f64, beta2: f64) -> Result<Self> {
        check_alpha(alpha)?;
        check_beta(beta2)?;
        let regime = if alpha < 1.0 {
            Regime::Below1
        } else if alpha > 1.0 {
            Regime::Above1
        } else {
            Regime::Unit
        };
        Ok(StableLaw {
            alpha,
            beta2,
            gamma0: gamma0(alpha, beta2),
            regime,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta2(&self) -> f64 {
        self.beta2
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Same α, asymmetry negated.
    pub fn mirrored(&self) -> StableLaw {
        StableLaw {
            beta2: -self.beta2,
            gamma0: -self.gamma0,
            ..*self
        }
    }

    /// G₀ or G₁ applied to a Gaussian pair.
    #[inline]
    pub fn transform(&self, z1: f64, z2: f64) -> f64 {
        let aux = CmsAuxiliaries::new(z1, z2, self.gamma0);
        match self.regime {
            Regime::Unit => g1_from_aux(&aux, self.beta2),
            _ => g0_from_aux(&aux, self.alpha),
        }
    }

    /// Apply the transform pointwise to two equal-length Gaussian paths.
    pub fn transform_paths(&self, z1: &[f64], z2: &[f64]) -> Vec<f64> {
        z1.iter()
            .zip(z2)
            .map(|(&a, &b)| self.transform(a, b))
            .collect()
    }

    /// F(x) with absolute tolerance [`CDF_TOL`].
    pub fn cdf(&self, x: f64) -> Result<f64> {
        let r = self.cdf_integral(x, CDF_TOL)?;
        Ok(r.value)
    }

    /// F(x) together with the quadrature error estimate. Fails when the
    /// estimate exceeds [`CDF_FAIL_TOL`].
    pub fn cdf_integral(&self, x: f64, tol: f64) -> Result<Integral> {
        if x.is_nan() {
            return Err(invalid("cdf evaluated at NaN"));
        }
        if x == f64::INFINITY {
            return Ok(exact(1.0));
        }
        if x == f64::NEG_INFINITY {
            return Ok(exact(0.0));
        }
        let r = match self.regime {
            Regime::Unit => self.cdf_unit(x, tol),
            _ => self.cdf_general(x, tol),
        };
        if r.abs_error > CDF_FAIL_TOL.max(tol) {
            return Err(Error::QuadratureFailure {
                estimate: r.abs_error,
                tolerance: CDF_FAIL_TOL,
            });
        }
        Ok(Integral {
            value: r.value.clamp(0.0, 1.0),
            ..r
        })
    }

    fn cdf_general(&self, x: f64, tol: f64) -> Integral {
        if x < 0.0 {
            let upper = self.mirrored().cdf_general(-x, tol);
            return Integral {
                value: 1.0 - upper.value,
                ..upper
            };
        }
        let atom = (self.gamma0 + FRAC_PI_2) / PI;
        if x == 0.0 {
            return exact(atom);
        }
        let tail = self.exceedance_integral(x, tol);
        match self.regime {
            Regime::Below1 => Integral {
                value: atom + tail.value,
                ..tail
            },
            _ => Integral {
                value: 1.0 - tail.value,
                ..tail
            },
        }
    }

    /// (1/π) ∫_{γ₀}^{π/2} exp{-x^{α/(α-1)} a(γ)} dγ for x > 0.
    fn exceedance_integral(&self, x: f64, tol: f64) -> Integral {
        let ln_t = self.ln_scale(x);
        let (alpha, g0) = (self.alpha, self.gamma0);
        let r = integrate(
            |g| (-(ln_t + ln_a(g, alpha, g0)).exp()).exp(),
            g0,
            FRAC_PI_2,
            tol * PI,
            CDF_MAX_PANELS,
        );
        scale(r, 1.0 / PI)
    }

    fn cdf_unit(&self, x: f64, tol: f64) -> Integral {
        if self.beta2 == 0.0 {
            return exact(0.5 + (2.0 * x / PI).atan() / PI);
        }
        if self.beta2 < 0.0 {
            let upper = self.mirrored().cdf_unit(-x, tol);
            return Integral {
                value: 1.0 - upper.value,
                ..upper
            };
        }
        let shift = -x / self.beta2;
        let b = self.beta2;
        let r = integrate(
            |g| (-(shift + ln_a1(g, b)).exp()).exp(),
            -FRAC_PI_2,
            FRAC_PI_2,
            tol * PI,
            CDF_MAX_PANELS,
        );
        scale(r, 1.0 / PI)
    }

    /// ln x^{α/(α-1)} for x > 0.
    #[inline]
    pub(crate) fn ln_scale(&self, x: f64) -> f64 {
        self.alpha / (self.alpha - 1.0) * x.ln()
    }
}

fn exact(value: f64) -> Integral {
    Integral {
        value,
        abs_error: 0.0,
        evaluations: 0,
    }
}

fn scale(r: Integral, factor: f64) -> Integral {
    Integral {
        value: r.value * factor,
        abs_error: r.abs_error * factor,
        evaluations: r.evaluations,
    }
}

/// F(x, α, β₂) for `S_α(β₂, 1, 0)` in representation B.
pub fn stable_cdf(x: f64, alpha: f64, beta2: f64) -> Result<f64> {
    StableLaw::new(alpha, beta2)?.cdf(x)
}
