//! Brute-force evaluation of `J_{m₁,m₂}(x) = E[1{G(Z₁,Z₂) ≤ x} He_{m₁}(Z₁) He_{m₂}(Z₂)]`.
//!
//! Uses nothing but the CMS map itself. For fixed z₁ the map is monotone in
//! z₂ (through W), so `{z₂ : G(z₁, z₂) ≤ x}` is a half-line whose endpoint is
//! found by bisection on the indicator. The inner Gaussian integral over a
//! half-line is then exact:
//!
//! ```text
//! ∫_b^∞ He_m(z) φ(z) dz = He_{m-1}(b) φ(b)   (m ≥ 1),   1 - Φ(b)   (m = 0)
//! ```
//!
//! The outer integral over z₁ ∈ [-10, 10] is adaptive Gauss–Kronrod started
//! from a uniform partition with `nodes` Kronrod points. It is repeated with
//! twice as many starting nodes; disagreement beyond `tol` is an error.

use serde::{Deserialize, Serialize};

use super::{coefficients::Coefficient, hermite_poly};
use crate::error::{invalid, Error, Result};
use crate::normal;
use crate::quadrature::integrate_with_breaks;
use crate::stable::StableLaw;

const Z_RANGE: f64 = 10.0;
const BISECTION_STEPS: usize = 64;
const MAX_PANELS: usize = 20_000;

/// Oracle resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleSettings {
    /// Kronrod points in the initial outer partition (≥ 64).
    pub nodes: usize,
    /// Adaptive target and doubling-agreement tolerance.
    pub tol: f64,
}

impl Default for OracleSettings {
    fn default() -> Self {
        OracleSettings {
            nodes: 512,
            tol: 1e-8,
        }
    }
}

/// Brute-force `J_{m₁,m₂}(x)` for `S_α(β₂, 1, 0)`.
pub fn j_oracle(
    m1: usize,
    m2: usize,
    x: f64,
    alpha: f64,
    beta2: f64,
    settings: OracleSettings,
) -> Result<Coefficient> {
    if settings.nodes < 64 {
        return Err(invalid(format!(
            "oracle needs at least 64 nodes, got {}",
            settings.nodes
        )));
    }
    if !(settings.tol > 0.0) {
        return Err(invalid("oracle tolerance must be positive"));
    }
    if x.is_nan() {
        return Err(invalid("oracle requested at NaN"));
    }
    let law = StableLaw::new(alpha, beta2)?;
    let coarse = outer_integral(&law, m1, m2, x, settings.nodes, settings.tol);
    let fine = outer_integral(&law, m1, m2, x, 2 * settings.nodes, settings.tol);
    if (coarse.0 - fine.0).abs() > settings.tol {
        return Err(Error::NonConvergence {
            coarse: coarse.0,
            fine: fine.0,
            tolerance: settings.tol,
        });
    }
    Ok(Coefficient {
        value: fine.0,
        abs_error: fine.1.max((coarse.0 - fine.0).abs()),
    })
}

fn outer_integral(
    law: &StableLaw,
    m1: usize,
    m2: usize,
    x: f64,
    nodes: usize,
    tol: f64,
) -> (f64, f64) {
    let panels = (nodes / 15).max(4);
    let breaks: Vec<f64> = (0..=panels)
        .map(|i| -Z_RANGE + 2.0 * Z_RANGE * i as f64 / panels as f64)
        .collect();
    let mut integrand =
        |z1: f64| hermite_poly(m1, z1) * normal::pdf(z1) * inner_integral(law, m2, x, z1);
    let r = integrate_with_breaks(&mut integrand, &breaks, 0.25 * tol, MAX_PANELS);
    (r.value, r.abs_error)
}

/// ∫ 1{G(z₁, z₂) ≤ x} He_m(z₂) φ(z₂) dz₂.
fn inner_integral(law: &StableLaw, m: usize, x: f64, z1: f64) -> f64 {
    let below = |z2: f64| law.transform(z1, z2) <= x;
    let lo_in = below(-Z_RANGE);
    let hi_in = below(Z_RANGE);
    match (lo_in, hi_in) {
        (true, true) => full_line(m),
        (false, false) => 0.0,
        _ => {
            // bracket [lo, hi] with below(lo) == lo_in, below(hi) == hi_in
            let (mut lo, mut hi) = (-Z_RANGE, Z_RANGE);
            for _ in 0..BISECTION_STEPS {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if below(mid) == lo_in {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let b = 0.5 * (lo + hi);
            if hi_in {
                upper_half_line(m, b)
            } else {
                full_line(m) - upper_half_line(m, b)
            }
        }
    }
}

fn full_line(m: usize) -> f64 {
    if m == 0 {
        1.0
    } else {
        0.0
    }
}

fn upper_half_line(m: usize, b: f64) -> f64 {
    if m == 0 {
        normal::sf(b)
    } else {
        hermite_poly(m - 1, b) * normal::pdf(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeroth_order_is_the_cdf() {
        for &(a, b) in &[(0.5, 0.5), (1.0, 0.0), (1.0, 0.5), (1.5, 0.8)] {
            let law = StableLaw::new(a, b).unwrap();
            for x in [-2.0, 0.0, 1.5] {
                let f = law.cdf(x).unwrap();
                let o = j_oracle(0, 0, x, a, b, OracleSettings::default())
                    .unwrap()
                    .value;
                assert!((f - o).abs() < 1e-4, "a={a} b={b} x={x}: {f} vs {o}");
            }
        }
    }

    #[test]
    fn far_left_coefficient_vanishes() {
        let o = j_oracle(1, 0, -1e12, 1.5, 0.8, OracleSettings::default()).unwrap();
        assert!(o.value.abs() < 1e-6);
    }

    #[test]
    fn second_order_is_finite_and_converges() {
        let o = j_oracle(2, 0, 0.0, 1.0, 0.0, OracleSettings::default()).unwrap();
        assert!(o.value.is_finite());
        // G₁ = (π/2)tan γ(z₁) with β₂ = 0: the indicator is 1{z₁ ≤ 0} and
        // ∫_{-∞}^0 (z² - 1) φ(z) dz = 0.
        assert!(o.value.abs() < 1e-8);
    }

    #[test]
    fn settings_validated() {
        let s = OracleSettings {
            nodes: 32,
            tol: 1e-6,
        };
        assert!(j_oracle(1, 0, 0.0, 0.5, 0.5, s).is_err());
    }
}
