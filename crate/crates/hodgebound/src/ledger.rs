//! Persistent cache of character sums: an append-only JSON-lines file of
//! records `{spec_hash, k, sum}` keyed by (spec hash, k).

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use hodgebound_core::character::{analyze_points, euler_poincare_degree, CharacterSpec, RamificationDatum};
use hodgebound_core::cyclotomic::CycloInt;
use hodgebound_core::lfunction::{character_sums, l_polynomial_from_sums, sum_ring, LPolynomial, GUARD};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::specfile::spec_hash;
use crate::{AppError, AppResult};

/// Names the cache directory; unset means no persistent cache.
pub const CACHE_ENV: &str = "HODGEBOUND_CACHE";
pub const LEDGER_FILE: &str = "sums.jsonl";

#[derive(Serialize, Deserialize)]
struct Record {
    spec_hash: String,
    k: usize,
    sum: Vec<i64>,
}

#[derive(Default)]
struct Inner {
    sums: HashMap<(String, usize), Vec<i64>>,
    file: Option<File>,
    hits: u64,
    misses: u64,
}

/// Shared by all workers; lookups and appends go through one lock, so the
/// file has a single writer.
pub struct SumLedger {
    path: Option<PathBuf>,
    inner: Mutex<Inner>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
}

impl SumLedger {
    /// An in-memory cache that persists nothing.
    pub fn in_memory() -> Self {
        SumLedger {
            path: None,
            inner: Mutex::new(Inner::default()),
        }
    }

    /// Opens (creating if needed) the ledger in `dir`.
    pub fn open(dir: &Path) -> AppResult<Self> {
        std::fs::create_dir_all(dir).map_err(|e| AppError::io(dir, e))?;
        let path = dir.join(LEDGER_FILE);
        let mut sums = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(&path).map_err(|e| AppError::io(&path, e))?);
            for (lineno, line) in reader.lines().enumerate() {
                let line = line.map_err(|e| AppError::io(&path, e))?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: Record = serde_json::from_str(&line).map_err(|e| AppError::Ledger {
                    path: path.clone(),
                    msg: format!("line {}: {e}", lineno + 1),
                })?;
                sums.insert((rec.spec_hash, rec.k), rec.sum);
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| AppError::io(&path, e))?;
        Ok(SumLedger {
            path: Some(path),
            inner: Mutex::new(Inner {
                sums,
                file: Some(file),
                ..Inner::default()
            }),
        })
    }

    /// The ledger named by `HODGEBOUND_CACHE`, else an in-memory one.
    pub fn from_env() -> AppResult<Self> {
        match std::env::var_os(CACHE_ENV) {
            Some(dir) if !dir.is_empty() => Self::open(Path::new(&dir)),
            _ => Ok(Self::in_memory()),
        }
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn stats(&self) -> CacheStats {
        let inner = self.inner.lock().expect("ledger lock");
        CacheStats {
            hits: inner.hits,
            misses: inner.misses,
        }
    }

    /// S_1, …, S_kmax, from the cache when every one is present.
    pub fn sums(&self, spec: &CharacterSpec, kmax: usize, budget: u128) -> AppResult<Vec<CycloInt>> {
        let hash = spec_hash(spec);
        let ring = sum_ring(spec)?;
        let cached: Option<Vec<Vec<i64>>> = {
            let mut inner = self.inner.lock().expect("ledger lock");
            let found: Option<Vec<Vec<i64>>> = (1..=kmax).map(|k| inner.sums.get(&(hash.clone(), k)).cloned()).collect();
            if found.is_some() {
                inner.hits += 1;
            } else {
                inner.misses += 1;
            }
            found
        };
        if let Some(rows) = cached {
            return rows
                .into_iter()
                .map(|row| Ok(ring.from_coeffs(row.into_iter().map(BigInt::from).collect())?))
                .collect();
        }
        let sums = character_sums(spec, kmax, budget)?;
        let mut inner = self.inner.lock().expect("ledger lock");
        for (i, s) in sums.iter().enumerate() {
            let Some(row) = ring.to_i64_coeffs(s) else { continue };
            let key = (hash.clone(), i + 1);
            if inner.sums.contains_key(&key) {
                continue;
            }
            if let Some(file) = inner.file.as_mut() {
                let rec = Record {
                    spec_hash: hash.clone(),
                    k: i + 1,
                    sum: row.clone(),
                };
                let line = serde_json::to_string(&rec).expect("records serialize");
                let path = self.path.as_deref().unwrap_or(Path::new(LEDGER_FILE));
                writeln!(file, "{line}").map_err(|e| AppError::io(path, e))?;
            }
            inner.sums.insert(key, row);
        }
        Ok(sums)
    }

    /// L(ρ, s) from cached or freshly enumerated sums.
    pub fn l_polynomial(&self, spec: &CharacterSpec, budget: u128) -> AppResult<LPolynomial> {
        let data: Vec<RamificationDatum> = analyze_points(spec)?.into_iter().map(|a| a.datum).collect();
        let degree = euler_poincare_degree(spec.genus(), &data)? as usize;
        let sums = self.sums(spec, degree + GUARD, budget)?;
        Ok(l_polynomial_from_sums(spec, &sums)?)
    }
}
