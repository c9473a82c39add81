//! Memoization of c₀ results and coefficient tables, optionally persisted as
//! JSON files in a directory.
//!
//! Keys are built from the exact bit patterns of (α, β₂, grid, tol). Disk
//! writes go through a temporary file and a rename, so concurrent readers
//! never observe a partial entry; the in-memory map is behind a mutex.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Mutex, OnceLock};

use serde::de::DeserializeOwned;
use serde::Serialize;

use super::c0::{c0, C0Grid, C0Result};
use super::coefficients::{coeff_table, CoeffTable};
use crate::error::Result;
use crate::par::Execution;

/// Environment variable naming the directory used by [`CoeffCache::global`].
pub const CACHE_DIR_ENV: &str = "LRDSTABLE_CACHE_DIR";

#[derive(Debug, Default)]
pub struct CoeffCache {
    dir: Option<PathBuf>,
    c0: Mutex<HashMap<String, C0Result>>,
    tables: Mutex<HashMap<String, CoeffTable>>,
}

impl CoeffCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(CoeffCache {
            dir: Some(dir),
            ..Self::default()
        })
    }

    /// Process-wide cache, persisted to `$LRDSTABLE_CACHE_DIR` when set.
    pub fn global() -> &'static CoeffCache {
        static GLOBAL: OnceLock<CoeffCache> = OnceLock::new();
        GLOBAL.get_or_init(|| match std::env::var_os(CACHE_DIR_ENV) {
            Some(dir) => CoeffCache::with_dir(dir).unwrap_or_default(),
            None => CoeffCache::in_memory(),
        })
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn c0(
        &self,
        alpha: f64,
        beta2: f64,
        grid: &C0Grid,
        tol: f64,
        exec: Execution,
    ) -> Result<C0Result> {
        let key = format!(
            "c0-{}",
            key_of(&[
                alpha,
                beta2,
                grid.x_max,
                grid.points as f64,
                grid.boundary_tol,
                tol
            ])
        );
        self.lookup(&self.c0, &key, || c0(alpha, beta2, grid, tol, exec))
    }

    pub fn table(
        &self,
        alpha: f64,
        beta2: f64,
        xs: &[f64],
        tol: f64,
        exec: Execution,
    ) -> Result<CoeffTable> {
        let mut parts = vec![alpha, beta2, tol];
        parts.extend_from_slice(xs);
        let key = format!("table-{}", key_of(&parts));
        self.lookup(&self.tables, &key, || {
            coeff_table(alpha, beta2, xs, tol, exec)
        })
    }

    fn lookup<T, F>(&self, map: &Mutex<HashMap<String, T>>, key: &str, compute: F) -> Result<T>
    where
        T: Clone + Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        if let Some(v) = map.lock().expect("cache mutex poisoned").get(key) {
            return Ok(v.clone());
        }
        if let Some(v) = self.read::<T>(key)? {
            map.lock()
                .expect("cache mutex poisoned")
                .insert(key.to_owned(), v.clone());
            return Ok(v);
        }
        let v = compute()?;
        self.write(key, &v)?;
        map.lock()
            .expect("cache mutex poisoned")
            .insert(key.to_owned(), v.clone());
        Ok(v)
    }

    fn read<T: DeserializeOwned>(&self, key: &str) -> Result<Option<T>> {
        let Some(dir) = &self.dir else {
            return Ok(None);
        };
        let path = dir.join(format!("{key}.json"));
        match fs::read(&path) {
            Ok(bytes) => Ok(Some(serde_json::from_slice(&bytes)?)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    fn write<T: Serialize>(&self, key: &str, value: &T) -> Result<()> {
        let Some(dir) = &self.dir else {
            return Ok(());
        };
        let tmp = dir.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_vec_pretty(value)?)?;
        fs::rename(&tmp, dir.join(format!("{key}.json")))?;
        Ok(())
    }
}

/// FNV-1a over the bit patterns, rendered as hex.
fn key_of(values: &[f64]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for v in values {
        for byte in v.to_bits().to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    format!("{h:016x}")
}
