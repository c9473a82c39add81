//! Hermite expansion of the indicator `1{G(Z₁, Z₂) ≤ x}`.
//!
//! The first-order coefficients `J₁,₀(x) = E[Z₁ 1{X ≤ x}]` and
//! `J₀,₁(x) = E[Z₂ 1{X ≤ x}]` reduce to one-dimensional integrals over the
//! uniform angle γ (see [`coefficients`]). A brute-force two-dimensional
//! evaluation of any `J_{m₁,m₂}` ([`oracle`]) checks them. [`normalization`]
//! holds the long-memory variance constants, and [`c0`] the supremum constant
//! used by the Kolmogorov–Smirnov limit.

pub mod c0;
pub mod cache;
pub mod coefficients;
pub mod kernels;
pub mod normalization;
pub mod oracle;
pub mod rank;

pub use c0::{c0, C0Grid, C0Result};
pub use cache::CoeffCache;
pub use coefficients::{coeff_table, j01, j10, CoeffTable, Coefficient, J_TOL};
pub use kernels::{a1_gamma, a_gamma};
pub use normalization::{c_md, d_nm, sigma2_nq, LrdNormalization};
pub use oracle::{j_oracle, OracleSettings};
pub use rank::hermite_rank;

use serde::{Deserialize, Serialize};

/// Bivariate Hermite index (m₁, m₂).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HermiteIndex {
    pub m1: usize,
    pub m2: usize,
}

impl HermiteIndex {
    pub fn new(m1: usize, m2: usize) -> Self {
        HermiteIndex { m1, m2 }
    }

    pub fn order(&self) -> usize {
        self.m1 + self.m2
    }

    /// All indices with m₁ + m₂ = q, m₁ descending.
    pub fn of_order(q: usize) -> impl Iterator<Item = HermiteIndex> {
        (0..=q).rev().map(move |m1| HermiteIndex::new(m1, q - m1))
    }
}

/// Probabilists' Hermite polynomial Heₘ(u) by the three-term recurrence.
pub fn hermite_poly(m: usize, u: f64) -> f64 {
    match m {
        0 => 1.0,
        1 => u,
        _ => {
            let (mut prev, mut cur) = (1.0, u);
            for k in 1..m {
                let next = u * cur - k as f64 * prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}
