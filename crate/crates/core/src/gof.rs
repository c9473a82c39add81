//! Goodness-of-fit decisions calibrated by the half-normal limit of the
//! normalized KS statistic.

use serde::{Deserialize, Serialize};

use crate::empirical::{normalized_ks, NormalizedKs, Sample};
use crate::error::{invalid, Error, Result};
use crate::normal;

/// Φ⁻¹((1 + γ)/2), the γ-quantile of |Z|.
pub fn half_normal_quantile(gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(invalid(format!(
            "coverage level must lie in (0, 1), got {gamma}"
        )));
    }
    Ok(normal::quantile_upper(0.5 * (1.0 - gamma)))
}

/// P(|Z| ≤ k) = 2Φ(k) − 1.
pub fn half_normal_cdf(k: f64) -> f64 {
    if k <= 0.0 {
        return 0.0;
    }
    1.0 - 2.0 * normal::sf(k)
}

/// Result of one KS test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsReport {
    pub kn: f64,
    pub dn: f64,
    pub c0: f64,
    pub kstar: f64,
    pub p_value: f64,
    pub reject: bool,
    pub level: f64,
}

impl KsReport {
    pub fn from_statistic(stat: NormalizedKs, level: f64) -> Result<Self> {
        if !(level > 0.0 && level < 1.0) {
            return Err(invalid(format!(
                "significance level must lie in (0, 1), got {level}"
            )));
        }
        let p_value = (1.0 - half_normal_cdf(stat.kstar)).clamp(0.0, 1.0);
        Ok(KsReport {
            kn: stat.kn,
            dn: stat.dn,
            c0: stat.c0,
            kstar: stat.kstar,
            p_value,
            reject: p_value < level,
            level,
        })
    }
}

/// Test H₀: the sample is LRD-subordinated `S_α(β₂, 1, 0)` with memory `d`.
pub fn ks_test(sample: &Sample, alpha: f64, beta2: f64, d: f64, level: f64) -> Result<KsReport> {
    KsReport::from_statistic(normalized_ks(sample, alpha, beta2, d)?, level)
}

/// Map replicated K* values affinely onto the first two moments of |Z|,
/// using the sample mean and the sample sd with denominator N − 1.
pub fn standardize_ksd(kstars: &[f64]) -> Result<Vec<f64>> {
    if kstars.len() < 2 {
        return Err(Error::DegenerateSample(format!(
            "standardization needs at least 2 replications, got {}",
            kstars.len()
        )));
    }
    let (mean, sd) = mean_sd(kstars);
    if !(sd > 0.0) {
        return Err(Error::DegenerateSample(
            "replications have zero spread".into(),
        ));
    }
    let scale = normal::half_normal_sd() / sd;
    let shift = normal::half_normal_mean();
    Ok(kstars.iter().map(|k| (k - mean) * scale + shift).collect())
}

/// Sample mean and sd (denominator N − 1; 0 for a single value).
pub fn mean_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    (mean, (ss / (n - 1.0)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_percentiles() {
        let expected = [(0.8, 1.2816), (0.9, 1.6449), (0.95, 1.96)];
        for (g, z) in expected {
            assert!((half_normal_quantile(g).unwrap() - z).abs() < 5e-4);
        }
        assert!((half_normal_quantile(0.95).unwrap() - 1.959_963_984_540_054).abs() < 1e-9);
        assert!(half_normal_quantile(1.0).is_err());
        assert_eq!(half_normal_cdf(0.0), 0.0);
    }

    #[test]
    fn quantile_cdf_round_trip() {
        for g in [0.5, 0.8, 0.9, 0.95, 0.99] {
            let q = half_normal_quantile(g).unwrap();
            assert!((half_normal_cdf(q) - g).abs() < 1e-10);
        }
    }

    fn stat(kstar: f64) -> NormalizedKs {
        NormalizedKs {
            kn: kstar,
            dn: 1.0,
            c0: 1.0,
            kstar,
        }
    }

    #[test]
    fn report_p_values() {
        let r = KsReport::from_statistic(stat(0.0), 0.05).unwrap();
        assert_eq!(r.p_value, 1.0);
        assert!(!r.reject);
        let r = KsReport::from_statistic(stat(1.959_963_984_540_054), 0.05).unwrap();
        assert!((r.p_value - 0.05).abs() < 1e-10);
        let r = KsReport::from_statistic(stat(2.5), 0.05).unwrap();
        assert!(r.reject);
        assert!(KsReport::from_statistic(stat(1.0), 0.0).is_err());
    }

    #[test]
    fn decision_is_monotone() {
        let mut rejected = false;
        for i in 0..400 {
            let r = KsReport::from_statistic(stat(i as f64 * 0.01), 0.1).unwrap();
            assert!(r.reject || !rejected);
            rejected = r.reject;
        }
        assert!(rejected);
    }

    #[test]
    fn standardization_hits_target_moments() {
        let ks = [0.3, 1.2, 0.7, 2.4, 0.9, 1.1];
        let out = standardize_ksd(&ks).unwrap();
        let (m, s) = mean_sd(&out);
        assert!((m - (2.0 / std::f64::consts::PI).sqrt()).abs() < 1e-14);
        assert!((s - ((std::f64::consts::PI - 2.0) / std::f64::consts::PI).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn degenerate_input() {
        assert!(matches!(
            standardize_ksd(&[1.0, 1.0, 1.0]),
            Err(Error::DegenerateSample(_))
        ));
        assert!(standardize_ksd(&[1.0]).is_err());
    }
}
