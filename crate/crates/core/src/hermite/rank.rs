use super::coefficients::{j01_for, j10_for};
use super::oracle::{j_oracle, OracleSettings};
use super::HermiteIndex;
use crate::error::{invalid, Error, Result};
use crate::stable::StableLaw;

/// Highest order searched by [`hermite_rank`].
pub const MAX_RANK_ORDER: usize = 3;

/// Smallest q ≥ 1 for which some |J_{m₁,m₂}(x)| with m₁ + m₂ = q exceeds `tol`.
/// Order 1 uses the angle integrals, orders 2 and 3 the brute-force oracle.
pub fn hermite_rank(x: f64, alpha: f64, beta2: f64, tol: f64) -> Result<usize> {
    if !(tol > 0.0) {
        return Err(invalid("rank tolerance must be positive"));
    }
    let law = StableLaw::new(alpha, beta2)?;
    let coef_tol = (0.1 * tol).min(super::J_TOL);
    if j10_for(&law, x, coef_tol)?.value.abs() > tol
        || j01_for(&law, x, coef_tol)?.value.abs() > tol
    {
        return Ok(1);
    }
    let settings = OracleSettings {
        nodes: 64,
        tol: 0.1 * tol,
    };
    for q in 2..=MAX_RANK_ORDER {
        for idx in HermiteIndex::of_order(q) {
            if j_oracle(idx.m1, idx.m2, x, alpha, beta2, settings)?
                .value
                .abs()
                > tol
            {
                return Ok(q);
            }
        }
    }
    Err(Error::RankUndetermined {
        max_order: MAX_RANK_ORDER,
        tolerance: tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_at_center() {
        assert_eq!(hermite_rank(0.0, 1.0, 0.0, 1e-6).unwrap(), 1);
        assert_eq!(hermite_rank(0.0, 0.5, 0.5, 1e-6).unwrap(), 1);
    }

    #[test]
    fn undetermined_when_everything_vanishes() {
        // at the far tail every coefficient is below a coarse tolerance
        let r = hermite_rank(f64::INFINITY, 1.0, 0.0, 1e-3);
        assert!(matches!(r, Err(Error::RankUndetermined { .. })), "{r:?}");
    }
}
