//! Variance of the rank-m Hermite sum under long memory.
//!
//! `σ²_{n,q} = n⁻² Σᵢ Σⱼ r^q(|i-j|)` behaves like `c(m,D) L^m(n) n^{-mD}` for
//! 0 < mD < 1, which defines the normalization `d_{n,m}`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::lrd_gaussian::LrdModel;

/// c(m, D) = 2 / ((1 - mD)(2 - mD)).
pub fn c_md(m: usize, d: f64) -> Result<f64> {
    let md = m as f64 * d;
    if m == 0 || !(d > 0.0) || md >= 1.0 {
        return Err(Error::Domain {
            function: "c_md",
            detail: format!("need m ≥ 1 and 0 < mD < 1, got m = {m}, D = {d}"),
        });
    }
    Ok(2.0 / ((1.0 - md) * (2.0 - md)))
}

/// Exact σ²_{n,q} via `n⁻² [n + 2 Σ_{k=1}^{n-1} (n-k) r^q(k)]`.
pub fn sigma2_nq(model: &LrdModel, n: usize, q: u32) -> Result<f64> {
    if n == 0 || q == 0 {
        return Err(invalid("sigma2_nq needs n ≥ 1 and q ≥ 1"));
    }
    let nf = n as f64;
    let off_diagonal: f64 = (1..n)
        .map(|k| (n - k) as f64 * model.autocovariance_pow(k, q))
        .sum();
    Ok((nf + 2.0 * off_diagonal) / (nf * nf))
}

/// d_{n,m} = sqrt(c(m,D) n^{-mD} L(n)^m).
pub fn d_nm(m: usize, d: f64, n: usize, l_at_n: f64) -> Result<f64> {
    let c = c_md(m, d)?;
    if n == 0 || !(l_at_n > 0.0) {
        return Err(invalid("d_nm needs n ≥ 1 and L(n) > 0"));
    }
    let m_f = m as f64;
    Ok((c * (n as f64).powf(-m_f * d) * l_at_n.powf(m_f)).sqrt())
}

/// All normalization quantities for one (model, m, n).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LrdNormalization {
    pub m: usize,
    pub d: f64,
    pub n: usize,
    pub c_md: f64,
    pub slowly_varying: f64,
    pub d_nm: f64,
    pub sigma2_exact: Option<f64>,
}

impl LrdNormalization {
    /// `with_exact` also computes the O(n) exact variance σ²_{n,m}.
    pub fn new(model: &LrdModel, m: usize, n: usize, with_exact: bool) -> Result<Self> {
        let d = model.d();
        let l = model.slowly_varying(n as f64);
        let sigma2_exact = if with_exact {
            Some(sigma2_nq(model, n, m as u32)?)
        } else {
            None
        };
        Ok(LrdNormalization {
            m,
            d,
            n,
            c_md: c_md(m, d)?,
            slowly_varying: l,
            d_nm: d_nm(m, d, n, l)?,
            sigma2_exact,
        })
    }

    /// σ²_{n,m} / d²_{n,m}, when the exact variance was computed.
    pub fn variance_ratio(&self) -> Option<f64> {
        self.sigma2_exact.map(|s| s / (self.d_nm * self.d_nm))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_md_values() {
        assert!((c_md(1, 0.5).unwrap() - 8.0 / 3.0).abs() < 1e-15);
        assert!((c_md(1, 1e-12).unwrap() - 1.0).abs() < 1e-11);
        assert!(c_md(2, 0.6).is_err());
        assert!(c_md(1, 1.0).is_err());
    }

    #[test]
    fn sigma2_small_cases() {
        let m = LrdModel::new(0.5).unwrap();
        for q in 1..4 {
            assert_eq!(sigma2_nq(&m, 1, q).unwrap(), 1.0);
        }
        let expected = (2.0 + 2.0 * 2f64.powf(-0.25)) / 4.0;
        assert!((sigma2_nq(&m, 2, 1).unwrap() - expected).abs() < 1e-15);
        assert!((sigma2_nq(&m, 2, 1).unwrap() - 0.920_448).abs() < 1e-6);
    }

    #[test]
    fn sigma2_matches_double_sum() {
        let m = LrdModel::new(0.3).unwrap();
        let n = 37;
        let brute: f64 = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i as i64 - j as i64).unsigned_abs() as usize))
            .map(|k| m.autocovariance(k).powi(2))
            .sum::<f64>()
            / (n * n) as f64;
        assert!((sigma2_nq(&m, n, 2).unwrap() - brute).abs() < 1e-14);
    }

    #[test]
    fn d_nm_values() {
        let l = 2f64.powf(-0.25);
        let v = d_nm(1, 0.5, 1, l).unwrap();
        assert!((v - (8.0 / 3.0 * 0.840_896_415_253_714_5f64).sqrt()).abs() < 1e-12);
        let model = LrdModel::new(0.5).unwrap();
        assert!((model.slowly_varying(1.0) - l).abs() < 1e-15);
        // L(n) → 1
        let big = LrdNormalization::new(&model, 1, 1 << 20, false).unwrap();
        let limit = (8.0 / 3.0 * (big.n as f64).powf(-0.5)).sqrt();
        assert!((big.d_nm / limit - 1.0).abs() < 1e-9);
    }

    #[test]
    fn variance_ratio_approaches_one() {
        for d in [0.2, 0.5, 0.8] {
            let model = LrdModel::new(d).unwrap();
            let mut prev_gap = f64::INFINITY;
            for p in 7..=14 {
                let norm = LrdNormalization::new(&model, 1, 1 << p, true).unwrap();
                let gap = (norm.variance_ratio().unwrap() - 1.0).abs();
                assert!(
                    gap < prev_gap,
                    "D={d} n=2^{p}: gap {gap} not below {prev_gap}"
                );
                prev_gap = gap;
            }
        }
    }
}
