//! Monte Carlo coverage study of the normalized KS statistic.
//!
//! Each replication simulates two independent LRD Gaussian paths, maps them
//! through the CMS transform, and records K* against the null law. A cell
//! (D, n) summarizes the replications by the mean and sd of K* and by the
//! empirical coverage P(K ≤ z) at the half-normal quantiles, both for K* and
//! for its standardized version.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::empirical::{normalized_ks_with, Sample};
use crate::error::{invalid, Error, Result};
use crate::gof::{half_normal_quantile, mean_sd, standardize_ksd};
use crate::hermite::{C0Grid, C0Result, CoeffCache, J_TOL};
use crate::lrd_gaussian::{LrdModel, PathSampler};
use crate::par::{map_indexed, Execution};
use crate::seeds::replication_seed;
use crate::stable::StableLaw;

/// Coverage levels used when none are given.
pub const DEFAULT_GAMMAS: [f64; 3] = [0.8, 0.9, 0.95];

/// Maximum tolerated fraction of failed replications in a cell.
pub const MAX_FAILURE_FRACTION: f64 = 1e-3;

fn default_gammas() -> Vec<f64> {
    DEFAULT_GAMMAS.to_vec()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub alpha: f64,
    pub beta2: f64,
    pub ds: Vec<f64>,
    pub ns: Vec<usize>,
    pub reps: usize,
    pub master_seed: u64,
    #[serde(default = "default_gammas")]
    pub gammas: Vec<f64>,
    /// Worker threads; `None` lets rayon decide, 1 runs sequentially.
    #[serde(default)]
    pub workers: Option<usize>,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        StableLaw::new(self.alpha, self.beta2)?;
        if self.reps < 2 {
            return Err(invalid(format!(
                "need at least 2 replications, got {}",
                self.reps
            )));
        }
        if let Some(d) = self.ds.iter().find(|d| !(**d > 0.0 && **d < 1.0)) {
            return Err(invalid(format!(
                "memory exponent must lie in (0, 1), got {d}"
            )));
        }
        if let Some(n) = self.ns.iter().find(|n| **n < 2) {
            return Err(invalid(format!("sample size must be at least 2, got {n}")));
        }
        if self.gammas.is_empty() {
            return Err(invalid("at least one coverage level is required"));
        }
        for &g in &self.gammas {
            half_normal_quantile(g)?;
        }
        if self.workers == Some(0) {
            return Err(invalid("worker count must be positive"));
        }
        Ok(())
    }

    pub fn execution(&self) -> Execution {
        Execution::from_workers(self.workers)
    }
}

/// Summary of one (D, n) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub d: f64,
    pub n: usize,
    /// Replications that produced a statistic.
    pub reps: usize,
    pub failed: usize,
    pub mean: f64,
    pub sd: f64,
    pub gammas: Vec<f64>,
    /// P(K* ≤ z_γ) for each γ.
    pub kstar_coverage: Vec<f64>,
    /// P(K^sd ≤ z_γ) for each γ.
    pub ksd_coverage: Vec<f64>,
    /// Binomial standard error of each K* coverage estimate.
    pub kstar_coverage_se: Vec<f64>,
    /// Binomial standard error of each K^sd coverage estimate.
    pub ksd_coverage_se: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub spec: ExperimentSpec,
    pub c0: C0Result,
    /// Upper bound √(0.25/N) on every coverage standard error.
    pub coverage_se_bound: f64,
    pub seed_scheme: String,
    pub rows: Vec<TableRow>,
    /// Wall-clock time; not serialized so that outputs are reproducible.
    #[serde(skip)]
    pub runtime: Duration,
}

/// K* for every replication of one cell, in replication order.
pub fn replicate_kstar(
    law: &StableLaw,
    d: f64,
    n: usize,
    reps: usize,
    master_seed: u64,
    c0: f64,
    exec: Execution,
) -> Result<Vec<Result<f64>>> {
    let sampler = PathSampler::new(LrdModel::new(d)?, n)?;
    Ok(map_indexed(reps, exec, |i| {
        let pair = sampler.sample_pair(replication_seed(master_seed, d, n, i as u64));
        let sample = Sample::new(law.transform_paths(&pair.z1, &pair.z2))?;
        Ok(normalized_ks_with(&sample, law, d, c0)?.kstar)
    }))
}

/// One cell, with c₀ taken from the process-wide cache.
pub fn run_cell(spec: &ExperimentSpec, d: f64, n: usize) -> Result<TableRow> {
    spec.validate()?;
    let c0 = global_c0(spec)?;
    run_cell_with_c0(spec, d, n, c0.value)
}

pub fn run_cell_with_c0(spec: &ExperimentSpec, d: f64, n: usize, c0: f64) -> Result<TableRow> {
    let law = StableLaw::new(spec.alpha, spec.beta2)?;
    let outcomes = replicate_kstar(
        &law,
        d,
        n,
        spec.reps,
        spec.master_seed,
        c0,
        spec.execution(),
    )?;

    let mut kstars = Vec::with_capacity(outcomes.len());
    let mut failed = 0;
    let mut first_error = None;
    for outcome in outcomes {
        match outcome {
            Ok(k) => kstars.push(k),
            Err(e) => {
                failed += 1;
                first_error.get_or_insert_with(|| e.to_string());
            }
        }
    }
    if failed as f64 > MAX_FAILURE_FRACTION * spec.reps as f64 || kstars.len() < 2 {
        return Err(Error::CellAborted {
            d,
            n,
            failed,
            reps: spec.reps,
            first: first_error.unwrap_or_else(|| "too few replications".into()),
        });
    }

    let (mean, sd) = mean_sd(&kstars);
    let ksd = standardize_ksd(&kstars)?;
    let quantiles = spec
        .gammas
        .iter()
        .map(|&g| half_normal_quantile(g))
        .collect::<Result<Vec<_>>>()?;
    let reps = kstars.len();
    let coverage = |values: &[f64]| -> Vec<f64> {
        quantiles
            .iter()
            .map(|&z| values.iter().filter(|&&k| k <= z).count() as f64 / reps as f64)
            .collect()
    };
    let se = |ps: &[f64]| -> Vec<f64> {
        ps.iter()
            .map(|p| (p * (1.0 - p) / reps as f64).sqrt())
            .collect()
    };
    let kstar_coverage = coverage(&kstars);
    let ksd_coverage = coverage(&ksd);
    Ok(TableRow {
        d,
        n,
        reps,
        failed,
        mean,
        sd,
        gammas: spec.gammas.clone(),
        kstar_coverage_se: se(&kstar_coverage),
        ksd_coverage_se: se(&ksd_coverage),
        kstar_coverage,
        ksd_coverage,
    })
}

/// Every cell of `ds × ns` (D outermost), deterministic in the master seed.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    spec.validate()?;
    let start = Instant::now();
    let c0 = global_c0(spec)?;
    let mut rows = Vec::with_capacity(spec.ds.len() * spec.ns.len());
    for &d in &spec.ds {
        for &n in &spec.ns {
            rows.push(run_cell_with_c0(spec, d, n, c0.value)?);
        }
    }
    Ok(ExperimentResult {
        spec: spec.clone(),
        c0,
        coverage_se_bound: (0.25 / spec.reps as f64).sqrt(),
        seed_scheme: "replication i of cell (D, n) uses splitmix(master, D bits, n, i); \
                      the two Gaussian paths use child tags 1 and 2"
            .into(),
        rows,
        runtime: start.elapsed(),
    })
}

fn global_c0(spec: &ExperimentSpec) -> Result<C0Result> {
    CoeffCache::global().c0(
        spec.alpha,
        spec.beta2,
        &C0Grid::default(),
        J_TOL,
        spec.execution(),
    )
}
