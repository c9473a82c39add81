//! Stationary standard Gaussian sequences with long-range dependent
//! autocovariance, simulated exactly by circulant embedding.
//!
//! The n×n Toeplitz covariance is embedded in a symmetric circulant of size
//! m ≥ 2(n-1) (a power of two). Its eigenvalues are the real DFT of the first
//! row; if none is meaningfully negative, the real part of
//! `FFT(sqrt(λ/m) ξ)` with complex white noise ξ has exactly the target
//! covariance. Small or pathological cases fall back to a Cholesky factor.

use std::sync::Arc;

use rand::Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::seeds::{derive_seed, rng_from_seed, PAIR_FIRST, PAIR_SECOND};

/// Negative eigenvalue mass (relative to the total) that is clipped silently.
pub const NEGATIVE_MASS_TOL: f64 = 1e-12;
/// Largest n for which the dense Cholesky fallback is attempted.
pub const CHOLESKY_MAX_N: usize = 4096;
const MAX_EMBEDDING_DOUBLINGS: u32 = 4;

/// Autocovariance family of an LRD model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum CovarianceFamily {
    /// r(k) = (1 + k²)^(-D/2)
    #[default]
    PowerLaw,
}

/// Long-memory model: exponent D ∈ (0, 1) and covariance family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LrdModel {
    d: f64,
    family: CovarianceFamily,
}

impl LrdModel {
    pub fn new(d: f64) -> Result<Self> {
        Self::with_family(d, CovarianceFamily::PowerLaw)
    }

    pub fn with_family(d: f64, family: CovarianceFamily) -> Result<Self> {
        if !(d > 0.0 && d < 1.0) {
            return Err(invalid(format!("memory exponent D = {d} outside (0, 1)")));
        }
        Ok(LrdModel { d, family })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn family(&self) -> CovarianceFamily {
        self.family
    }

    /// r(k).
    pub fn autocovariance(&self, k: usize) -> f64 {
        match self.family {
            CovarianceFamily::PowerLaw => {
                let k = k as f64;
                (1.0 + k * k).powf(-0.5 * self.d)
            }
        }
    }

    /// r(k)^q, computed in one power.
    pub fn autocovariance_pow(&self, k: usize, q: u32) -> f64 {
        match self.family {
            CovarianceFamily::PowerLaw => {
                let k = k as f64;
                (1.0 + k * k).powf(-0.5 * self.d * q as f64)
            }
        }
    }

    /// L(k) = k^D r(k), the slowly varying factor; tends to 1.
    pub fn slowly_varying(&self, k: f64) -> f64 {
        match self.family {
            // k^D (1 + k²)^(-D/2) = (1 + k⁻²)^(-D/2)
            CovarianceFamily::PowerLaw => (1.0 + 1.0 / (k * k)).powf(-0.5 * self.d),
        }
    }
}

/// r(k) for the model.
pub fn autocovariance(model: &LrdModel, k: usize) -> f64 {
    model.autocovariance(k)
}

/// Two independent LRD Gaussian paths of equal length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianPairPath {
    pub z1: Vec<f64>,
    pub z2: Vec<f64>,
    pub model: LrdModel,
    pub seed: u64,
}

#[derive(Clone)]
enum Method {
    Circulant {
        m: usize,
        sqrt_eig: Vec<f64>,
        fft: Arc<dyn Fft<f64>>,
    },
    Cholesky {
        // row-major lower triangle, row i holds i+1 entries
        lower: Vec<f64>,
    },
}

/// Reusable sampler for paths of fixed length under one model.
#[derive(Clone)]
pub struct PathSampler {
    model: LrdModel,
    n: usize,
    method: Method,
}

impl std::fmt::Debug for PathSampler {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let method = match &self.method {
            Method::Circulant { m, .. } => format!("circulant(m={m})"),
            Method::Cholesky { .. } => "cholesky".to_string(),
        };
        f.debug_struct("PathSampler")
            .field("model", &self.model)
            .field("n", &self.n)
            .field("method", &method)
            .finish()
    }
}

impl PathSampler {
    pub fn new(model: LrdModel, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("path length must be at least 1"));
        }
        let base = (2 * (n - 1)).next_power_of_two().max(2);
        let mut worst = 0.0;
        for doubling in 0..=MAX_EMBEDDING_DOUBLINGS {
            let m = base << doubling;
            match circulant_sqrt_eigenvalues(&model, m) {
                Ok(sqrt_eig) => {
                    let fft = FftPlanner::new().plan_fft_forward(m);
                    return Ok(PathSampler {
                        model,
                        n,
                        method: Method::Circulant { m, sqrt_eig, fft },
                    });
                }
                Err(mass) => worst = mass,
            }
        }
        if n <= CHOLESKY_MAX_N {
            let lower = toeplitz_cholesky(&model, n)?;
            return Ok(PathSampler {
                model,
                n,
                method: Method::Cholesky { lower },
            });
        }
        Err(Error::EmbeddingFailure {
            negative_mass: worst,
        })
    }

    /// Force the dense Cholesky method (n ≤ [`CHOLESKY_MAX_N`]).
    pub fn cholesky(model: LrdModel, n: usize) -> Result<Self> {
        if n == 0 || n > CHOLESKY_MAX_N {
            return Err(invalid(format!(
                "Cholesky sampler needs 1 ≤ n ≤ {CHOLESKY_MAX_N}"
            )));
        }
        Ok(PathSampler {
            model,
            n,
            method: Method::Cholesky {
                lower: toeplitz_cholesky(&model, n)?,
            },
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn model(&self) -> &LrdModel {
        &self.model
    }

    pub fn is_circulant(&self) -> bool {
        matches!(self.method, Method::Circulant { .. })
    }

    /// Draw one path.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        match &self.method {
            Method::Circulant { m, sqrt_eig, fft } => {
                let mut buf: Vec<Complex<f64>> = sqrt_eig
                    .iter()
                    .map(|&s| {
                        let re: f64 = rng.sample(StandardNormal);
                        let im: f64 = rng.sample(StandardNormal);
                        Complex::new(s * re, s * im)
                    })
                    .collect();
                debug_assert_eq!(buf.len(), *m);
                fft.process(&mut buf);
                buf.truncate(self.n);
                buf.into_iter().map(|c| c.re).collect()
            }
            Method::Cholesky { lower } => {
                let xi: Vec<f64> = (0..self.n).map(|_| rng.sample(StandardNormal)).collect();
                let mut out = Vec::with_capacity(self.n);
                let mut offset = 0;
                for i in 0..self.n {
                    let row = &lower[offset..offset + i + 1];
                    out.push(row.iter().zip(&xi).map(|(l, x)| l * x).sum());
                    offset += i + 1;
                }
                out
            }
        }
    }

    /// Path deterministically derived from `seed`.
    pub fn sample_seeded(&self, seed: u64) -> Vec<f64> {
        self.sample(&mut rng_from_seed(seed))
    }

    /// Independent pair using the two standard substreams of `seed`.
    pub fn sample_pair(&self, seed: u64) -> GaussianPairPath {
        GaussianPairPath {
            z1: self.sample_seeded(derive_seed(seed, &[PAIR_FIRST])),
            z2: self.sample_seeded(derive_seed(seed, &[PAIR_SECOND])),
            model: self.model,
            seed,
        }
    }
}

/// `sqrt(λ_k / m)` for the circulant of size `m`, or the relative negative
/// eigenvalue mass when it exceeds [`NEGATIVE_MASS_TOL`].
fn circulant_sqrt_eigenvalues(model: &LrdModel, m: usize) -> std::result::Result<Vec<f64>, f64> {
    let mut row: Vec<Complex<f64>> = (0..m)
        .map(|j| Complex::new(model.autocovariance(j.min(m - j)), 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut row);
    let total: f64 = row.iter().map(|c| c.re.abs()).sum();
    let negative: f64 = row.iter().filter(|c| c.re < 0.0).map(|c| -c.re).sum();
    let relative = if total > 0.0 { negative / total } else { 1.0 };
    if relative > NEGATIVE_MASS_TOL {
        return Err(relative);
    }
    let mf = m as f64;
    Ok(row.iter().map(|c| (c.re.max(0.0) / mf).sqrt()).collect())
}

fn toeplitz_cholesky(model: &LrdModel, n: usize) -> Result<Vec<f64>> {
    let r: Vec<f64> = (0..n).map(|k| model.autocovariance(k)).collect();
    let row_start = |i: usize| i * (i + 1) / 2;
    let mut lower = vec![0.0; n * (n + 1) / 2];
    for i in 0..n {
        for j in 0..=i {
            let (ri, rj) = (row_start(i), row_start(j));
            let dot: f64 = (0..j).map(|k| lower[ri + k] * lower[rj + k]).sum();
            let a = r[i - j] - dot;
            if i == j {
                if a <= 1e-14 {
                    return Err(Error::NonPositiveDefinite { pivot: i, value: a });
                }
                lower[ri + i] = a.sqrt();
            } else {
                lower[ri + j] = a / lower[rj + j];
            }
        }
    }
    Ok(lower)
}

/// One exact LRD Gaussian path of length `n`.
pub fn simulate_lrd_path(model: &LrdModel, n: usize, seed: u64) -> Result<Vec<f64>> {
    Ok(PathSampler::new(*model, n)?.sample_seeded(seed))
}

/// Two independent LRD Gaussian paths of length `n`.
pub fn simulate_lrd_pair(model: &LrdModel, n: usize, seed: u64) -> Result<GaussianPairPath> {
    Ok(PathSampler::new(*model, n)?.sample_pair(seed))
}
