//! Long-range dependent α-stable sequences and a Kolmogorov–Smirnov test
//! calibrated by the Hermite expansion of their empirical process.
//!
//! The pipeline is:
//!
//! * [`lrd_gaussian`] simulates stationary Gaussian sequences with
//!   autocovariance `(1 + k²)^{-D/2}`;
//! * [`stable`] maps a pair of them through the Chambers–Mallows–Stuck
//!   transform and evaluates the stable CDF;
//! * [`hermite`] computes the first-order Hermite coefficients of the
//!   indicator `1{G(Z₁, Z₂) ≤ x}`, the constant c₀ and the LRD normalization;
//! * [`empirical`] and [`gof`] build the KS statistic and its half-normal
//!   calibration;
//! * [`harness`] runs coverage experiments over grids of (D, n).
//!
//! Parallel work goes through [`par::map_indexed`], which uses rayon when the
//! `parallel` feature is on and a plain loop otherwise.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod empirical;
pub mod error;
pub mod gof;
pub mod harness;
pub mod hermite;
pub mod lrd_gaussian;
pub mod normal;
pub mod optimize;
pub mod par;
pub mod quadrature;
pub mod seeds;
pub mod stable;

pub use empirical::{edf, ks_statistic, normalized_ks, NormalizedKs, Sample};
pub use error::{Error, Result};
pub use gof::{half_normal_cdf, half_normal_quantile, ks_test, standardize_ksd, KsReport};
pub use harness::{run_cell, run_experiment, ExperimentResult, ExperimentSpec, TableRow};
pub use hermite::{c0, hermite_rank, j01, j10, j_oracle, C0Grid, CoeffCache};
pub use lrd_gaussian::{simulate_lrd_pair, simulate_lrd_path, LrdModel, PathSampler};
pub use par::Execution;
pub use stable::{stable_cdf, StableLaw};
