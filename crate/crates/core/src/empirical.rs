//! Empirical distribution function and the Kolmogorov–Smirnov distance to a
//! continuous null CDF.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermite::{d_nm, C0Grid, CoeffCache, J_TOL};
use crate::lrd_gaussian::LrdModel;
use crate::par::Execution;
use crate::stable::StableLaw;

/// Where a sample came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub d: f64,
    pub seed: u64,
}

/// A non-empty sample of finite reals, kept together with its sorted copy.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    sorted: Vec<f64>,
    provenance: Option<Provenance>,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSample("sample is empty".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSample(format!(
                "value {} at index {i} is not finite",
                values[i]
            )));
        }
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        Ok(Sample {
            values,
            sorted,
            provenance: None,
        })
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    pub fn provenance(&self) -> Option<Provenance> {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// F_n(x) = #{i : xᵢ ≤ x} / n.
pub fn edf(sample: &Sample, x: f64) -> f64 {
    let count = sample.sorted.partition_point(|&v| v <= x);
    count as f64 / sample.len() as f64
}

/// sup_x |F_n(x) − F(x)|, evaluated exactly at the order statistics.
pub fn ks_statistic<F>(sample: &Sample, mut null_cdf: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let n = sample.len() as f64;
    let mut sup = 0.0f64;
    for (i, &x) in sample.sorted.iter().enumerate() {
        let f = null_cdf(x)?;
        let above = (i + 1) as f64 / n - f;
        let below = f - i as f64 / n;
        sup = sup.max(above.abs()).max(below.abs());
    }
    Ok(sup)
}

/// Pieces of the normalized KS statistic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedKs {
    pub kn: f64,
    pub dn: f64,
    pub c0: f64,
    pub kstar: f64,
}

/// K_n / (d_{n,1} c₀) against `S_α(β₂, 1, 0)` under memory exponent `d`.
/// c₀ comes from the process-wide cache.
pub fn normalized_ks(sample: &Sample, alpha: f64, beta2: f64, d: f64) -> Result<NormalizedKs> {
    let c0 = CoeffCache::global()
        .c0(
            alpha,
            beta2,
            &C0Grid::default(),
            J_TOL,
            Execution::default(),
        )?
        .value;
    normalized_ks_with(sample, &StableLaw::new(alpha, beta2)?, d, c0)
}

/// As [`normalized_ks`] with a known c₀.
pub fn normalized_ks_with(
    sample: &Sample,
    law: &StableLaw,
    d: f64,
    c0: f64,
) -> Result<NormalizedKs> {
    let model = LrdModel::new(d)?;
    let n = sample.len();
    let dn = d_nm(1, d, n, model.slowly_varying(n as f64))?;
    let kn = ks_statistic(sample, |x| law.cdf(x))?;
    Ok(NormalizedKs {
        kn,
        dn,
        c0,
        kstar: kn / (dn * c0),
    })
}
