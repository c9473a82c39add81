//! First-order Hermite coefficients J₁,₀ and J₀,₁ as integrals over the
//! uniform angle.
//!
//! With γ = πΦ(z₁) - π/2 and W = -ln(1 - Φ(z₂)), conditioning on γ turns the
//! indicator into a tail probability of the unit exponential W. For x > 0
//! and t = x^{α/(α-1)}:
//!
//! ```text
//! E1(x) = (1/π) ∫_{γ₀}^{π/2} exp{-t a(γ)} Φ⁻¹((γ + π/2)/π) dγ
//! E2(x) = (1/π) ∫_{γ₀}^{π/2} φ(Φ⁻¹(1 - exp{-t a(γ)})) dγ
//!
//! 0 < α < 1:  J₁,₀ = E1 - φ(Φ⁻¹((γ₀ + π/2)/π)),   J₀,₁ =  E2
//! 1 < α < 2:  J₁,₀ = -E1,                          J₀,₁ = -E2
//! ```
//!
//! For α = 1 and β₂ > 0 the same integrals run over (-π/2, π/2) with
//! `exp{-x/β₂} a₁(γ)` in place of `t a(γ)` and no sign change. Negative x (or
//! negative β₂ when α = 1) is reduced through
//! `J₁,₀(x, β₂) = J₁,₀(-x, -β₂)` and `J₀,₁(x, β₂) = -J₀,₁(-x, -β₂)`.
//!
//! Signs: for 0 < α < 1 the constant term is `-φ(·)`, because
//! `∫_{-∞}^{c} z φ(z) dz = -φ(c)`; for 1 < α < 2 the J₀,₁ integral carries a
//! leading minus because large W pushes X above x. Both signs are confirmed
//! against the two-dimensional oracle in the tests below.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::kernels::{ln_a, ln_a1};
use crate::error::{invalid, Error, Result};
use crate::normal;
use crate::par::{map_indexed, Execution};
use crate::quadrature::{integrate, Integral};
use crate::stable::{Regime, StableLaw};

/// Default absolute tolerance for coefficient integrals.
pub const J_TOL: f64 = 1e-9;
const J_MAX_PANELS: usize = 4000;

/// A coefficient value and its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub value: f64,
    pub abs_error: f64,
}

impl Coefficient {
    fn exact(value: f64) -> Self {
        Coefficient {
            value,
            abs_error: 0.0,
        }
    }

    fn negate(self) -> Self {
        Coefficient {
            value: -self.value,
            ..self
        }
    }
}

#[derive(Clone, Copy)]
enum Which {
    J10,
    J01,
}

/// J₁,₀(x, β₂) = E[Z₁ 1{X ≤ x}].
pub fn j10(x: f64, alpha: f64, beta2: f64, tol: f64) -> Result<Coefficient> {
    j10_for(&StableLaw::new(alpha, beta2)?, x, tol)
}

/// J₀,₁(x, β₂) = E[Z₂ 1{X ≤ x}].
pub fn j01(x: f64, alpha: f64, beta2: f64, tol: f64) -> Result<Coefficient> {
    j01_for(&StableLaw::new(alpha, beta2)?, x, tol)
}

pub fn j10_for(law: &StableLaw, x: f64, tol: f64) -> Result<Coefficient> {
    first_order(law, x, tol, Which::J10)
}

pub fn j01_for(law: &StableLaw, x: f64, tol: f64) -> Result<Coefficient> {
    first_order(law, x, tol, Which::J01)
}

fn first_order(law: &StableLaw, x: f64, tol: f64, which: Which) -> Result<Coefficient> {
    if !(tol > 0.0) {
        return Err(invalid(format!("tolerance {tol} must be positive")));
    }
    if x.is_nan() {
        return Err(invalid("coefficient requested at NaN"));
    }
    if x.is_infinite() {
        return Ok(Coefficient::exact(0.0));
    }
    let c = match law.regime() {
        Regime::Unit => unit_case(law, x, tol, which)?,
        _ => general_case(law, x, tol, which)?,
    };
    if c.abs_error > tol {
        return Err(Error::QuadratureFailure {
            estimate: c.abs_error,
            tolerance: tol,
        });
    }
    Ok(c)
}

/// Mirror step shared by every regime: (x, β₂) → (-x, -β₂).
fn reflect(law: &StableLaw, x: f64, tol: f64, which: Which) -> Result<Coefficient> {
    let mirrored = first_order_unchecked(&law.mirrored(), -x, tol, which)?;
    Ok(match which {
        Which::J10 => mirrored,
        Which::J01 => mirrored.negate(),
    })
}

fn first_order_unchecked(law: &StableLaw, x: f64, tol: f64, which: Which) -> Result<Coefficient> {
    match law.regime() {
        Regime::Unit => unit_case(law, x, tol, which),
        _ => general_case(law, x, tol, which),
    }
}

fn general_case(law: &StableLaw, x: f64, tol: f64, which: Which) -> Result<Coefficient> {
    if x < 0.0 {
        return reflect(law, x, tol, which);
    }
    let g0 = law.gamma0();
    let atom_density = normal::pdf_at_quantile((g0 + FRAC_PI_2) / PI);
    if x == 0.0 {
        return Ok(match which {
            Which::J10 => Coefficient::exact(-atom_density),
            Which::J01 => Coefficient::exact(0.0),
        });
    }
    let ln_t = law.ln_scale(x);
    let alpha = law.alpha();
    let ln_exponent = |g: f64| ln_t + ln_a(g, alpha, g0);
    let r = angle_integral(ln_exponent, g0, FRAC_PI_2, tol, which);
    Ok(match (law.regime(), which) {
        (Regime::Below1, Which::J10) => Coefficient {
            value: r.value - atom_density,
            abs_error: r.abs_error,
        },
        (Regime::Below1, Which::J01) => to_coefficient(r),
        (_, _) => to_coefficient(r).negate(),
    })
}

fn unit_case(law: &StableLaw, x: f64, tol: f64, which: Which) -> Result<Coefficient> {
    let beta2 = law.beta2();
    if beta2 == 0.0 {
        return Ok(match which {
            Which::J10 => Coefficient::exact(-normal::pdf_at_quantile(
                ((2.0 * x / PI).atan() + FRAC_PI_2) / PI,
            )),
            Which::J01 => Coefficient::exact(0.0),
        });
    }
    if beta2 < 0.0 {
        return reflect(law, x, tol, which);
    }
    let shift = -x / beta2;
    let r = angle_integral(
        |g| shift + ln_a1(g, beta2),
        -FRAC_PI_2,
        FRAC_PI_2,
        tol,
        which,
    );
    Ok(to_coefficient(r))
}

fn to_coefficient(r: Integral) -> Coefficient {
    Coefficient {
        value: r.value,
        abs_error: r.abs_error,
    }
}

/// (1/π) ∫ of the E1 or E2 integrand, where `ln_s(γ)` is the log of the
/// exponential threshold s(γ) so that P(W ≥ s) = exp(-s).
fn angle_integral<L: Fn(f64) -> f64>(
    ln_s: L,
    lo: f64,
    hi: f64,
    tol: f64,
    which: Which,
) -> Integral {
    let r = match which {
        Which::J10 => integrate(
            |g| {
                let survive = (-ln_s(g).exp()).exp();
                if survive == 0.0 {
                    0.0
                } else {
                    survive * angle_quantile(g)
                }
            },
            lo,
            hi,
            tol * PI,
            J_MAX_PANELS,
        ),
        Which::J01 => integrate(
            |g| density_at_exceedance(ln_s(g)),
            lo,
            hi,
            tol * PI,
            J_MAX_PANELS,
        ),
    };
    Integral {
        value: r.value / PI,
        abs_error: r.abs_error / PI,
        evaluations: r.evaluations,
    }
}

/// Φ⁻¹((γ + π/2)/π), using the nearer endpoint for accuracy.
#[inline]
fn angle_quantile(g: f64) -> f64 {
    if g <= 0.0 {
        normal::quantile((g + FRAC_PI_2) / PI)
    } else {
        normal::quantile_upper((FRAC_PI_2 - g) / PI)
    }
}

/// φ(Φ⁻¹(1 - e^{-s})) given ln s. φ∘Φ⁻¹ is symmetric about 1/2, so the
/// smaller of e^{-s} and 1 - e^{-s} is used.
#[inline]
fn density_at_exceedance(ln_s: f64) -> f64 {
    let s = ln_s.exp();
    let upper = (-s).exp();
    let lower = -(-s).exp_m1();
    normal::pdf_at_quantile(upper.min(lower))
}

/// Coefficient values on a grid of x.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffTable {
    pub alpha: f64,
    pub beta2: f64,
    pub tol: f64,
    pub xs: Vec<f64>,
    pub j10: Vec<f64>,
    pub j01: Vec<f64>,
    pub err10: Vec<f64>,
    pub err01: Vec<f64>,
}

impl CoeffTable {
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// sqrt(J₁,₀² + J₀,₁²) at each grid point.
    pub fn norms(&self) -> Vec<f64> {
        self.j10
            .iter()
            .zip(&self.j01)
            .map(|(a, b)| a.hypot(*b))
            .collect()
    }
}

/// Evaluate both coefficients on `xs` (strictly increasing).
pub fn coeff_table(
    alpha: f64,
    beta2: f64,
    xs: &[f64],
    tol: f64,
    exec: Execution,
) -> Result<CoeffTable> {
    if xs.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(invalid("coefficient grid must be strictly increasing"));
    }
    let law = StableLaw::new(alpha, beta2)?;
    let rows = map_indexed(xs.len(), exec, |i| -> Result<(Coefficient, Coefficient)> {
        Ok((j10_for(&law, xs[i], tol)?, j01_for(&law, xs[i], tol)?))
    });
    let mut table = CoeffTable {
        alpha,
        beta2,
        tol,
        xs: xs.to_vec(),
        j10: Vec::with_capacity(xs.len()),
        j01: Vec::with_capacity(xs.len()),
        err10: Vec::with_capacity(xs.len()),
        err01: Vec::with_capacity(xs.len()),
    };
    for row in rows {
        let (a, b) = row?;
        table.j10.push(a.value);
        table.err10.push(a.abs_error);
        table.j01.push(b.value);
        table.err01.push(b.abs_error);
    }
    Ok(table)
}
