//! c₀ = sup_x sqrt(J₁,₀(x)² + J₀,₁(x)²).
//!
//! Stable tails are heavy, so the search window starts at `x_max` and doubles
//! until both coefficients are below `boundary_tol` at ±x_max. The grid is
//! uniform in asinh(x), dense near the origin and sparse in the tails; the
//! best grid point is refined by golden-section search between its
//! neighbours.

use serde::{Deserialize, Serialize};

use super::coefficients::{j01_for, j10_for};
use crate::error::{invalid, Result};
use crate::optimize::golden_max;
use crate::par::{map_indexed, Execution};
use crate::stable::StableLaw;

const X_MAX_CEILING: f64 = 1e16;

/// Search-grid specification for [`c0`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct C0Grid {
    /// Initial half-width of the window.
    pub x_max: f64,
    /// Grid points (made odd so that x = 0 is included).
    pub points: usize,
    /// Both coefficients must be below this at ±x_max.
    pub boundary_tol: f64,
}

impl Default for C0Grid {
    fn default() -> Self {
        C0Grid {
            x_max: 50.0,
            points: 801,
            boundary_tol: 1e-6,
        }
    }
}

impl C0Grid {
    pub fn doubled(&self) -> Self {
        C0Grid {
            points: 2 * self.points - 1,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct C0Result {
    pub alpha: f64,
    pub beta2: f64,
    pub value: f64,
    pub argmax: f64,
    pub j10_at_max: f64,
    pub j01_at_max: f64,
    /// Window half-width actually used.
    pub x_max: f64,
}

/// Compute c₀ for `S_α(β₂, 1, 0)`.
pub fn c0(alpha: f64, beta2: f64, grid: &C0Grid, tol: f64, exec: Execution) -> Result<C0Result> {
    if grid.points < 3 || !(grid.x_max > 0.0) || !(grid.boundary_tol > 0.0) {
        return Err(invalid(
            "c0 grid needs ≥ 3 points, positive x_max and boundary tolerance",
        ));
    }
    let law = StableLaw::new(alpha, beta2)?;
    let pair = |x: f64| -> Result<(f64, f64)> {
        Ok((j10_for(&law, x, tol)?.value, j01_for(&law, x, tol)?.value))
    };

    let mut x_max = grid.x_max;
    loop {
        let (a, b) = pair(x_max)?;
        let (c, d) = pair(-x_max)?;
        let edge = a.abs().max(b.abs()).max(c.abs()).max(d.abs());
        if edge < grid.boundary_tol || x_max >= X_MAX_CEILING {
            break;
        }
        x_max *= 2.0;
    }

    let points = grid.points | 1;
    let s_max = x_max.asinh();
    let step = 2.0 * s_max / (points - 1) as f64;
    let s_at = |i: usize| -s_max + step * i as f64;
    let norms = map_indexed(points, exec, |i| -> Result<f64> {
        let (a, b) = pair(s_at(i).sinh())?;
        Ok(a.hypot(b))
    });
    let norms = norms.into_iter().collect::<Result<Vec<f64>>>()?;
    let (best, &best_norm) = norms
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("grid is non-empty");

    let lo = s_at(best.saturating_sub(1));
    let hi = s_at((best + 1).min(points - 1));
    let (s_star, refined) = golden_max(
        |s| {
            pair(s.sinh())
                .map(|(a, b)| a.hypot(b))
                .unwrap_or(f64::NEG_INFINITY)
        },
        lo,
        hi,
        1e-9,
    );
    let (argmax, value) = if refined > best_norm {
        (s_star.sinh(), refined)
    } else {
        (s_at(best).sinh(), best_norm)
    };
    let (j10_at_max, j01_at_max) = pair(argmax)?;
    Ok(C0Result {
        alpha,
        beta2,
        value,
        argmax,
        j10_at_max,
        j01_at_max,
        x_max,
    })
}
