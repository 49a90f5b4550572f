//! Exact computation of `Δ[C_n]`, interval `Δ[n]` and `δ_k[C_m]` by
//! iterative-deepening branch and bound.
//!
//! Searches deepen from the counting lower bound; at each size an
//! exhaustive DFS places residues in increasing order, pruning on coverage
//! capacity and on canonical form under the configured symmetry group.
//! Results are deterministic for a fixed configuration regardless of thread
//! count: tasks are ordered lexicographically and the solution from the
//! least task index wins.

mod cyclic;
mod deltak;
mod interval;

pub use cyclic::exact_delta_cyclic;
pub use deltak::{delta_k, verify_delta0_lower_bound, DeltaKOutcome};
pub use interval::exact_delta_interval;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::zmod::{self, Certificate, Target};

/// How much symmetry the searcher may quotient out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryLevel {
    /// No canonical-form pruning (oracle-comparison mode).
    None,
    /// Prune prefixes that are not lexicographically minimal among their
    /// translates containing 0.
    Translation,
    /// Additionally quotient by the maps `x ↦ u(x − p)` for units `u`.
    FullAffine,
}

#[derive(Clone)]
pub struct SearchConfig {
    /// Wall-clock budget; `None` runs to completion.
    pub time_budget: Option<Duration>,
    /// Worker threads; 0 uses the machine parallelism.
    pub threads: usize,
    pub symmetry: SymmetryLevel,
    pub cache: Option<Arc<dyn ResultCache>>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            time_budget: None,
            threads: 0,
            symmetry: SymmetryLevel::FullAffine,
            cache: None,
        }
    }
}

impl SearchConfig {
    pub(crate) fn resolved_threads(&self) -> usize {
        if self.threads == 0 {
            std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
        } else {
            self.threads
        }
    }

    pub(crate) fn deadline(&self) -> Option<Instant> {
        self.time_budget.map(|b| Instant::now() + b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub wall: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchValue {
    Exact(u64),
    /// Best certified bracket when the budget ran out.
    Bounds { lower: u64, upper: u64 },
}

impl SearchValue {
    pub fn exact(&self) -> Option<u64> {
        match *self {
            SearchValue::Exact(v) => Some(v),
            SearchValue::Bounds { .. } => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub value: SearchValue,
    pub certificate: Option<Certificate>,
    pub stats: SearchStats,
    pub exhaustive: bool,
    /// Served from the result cache without searching.
    pub cached: bool,
}

/// A set witnessing `δ_k[C_m] ≥ d`: a minimum-size difference basis of
/// `Z_m` lifted into `[0, m]` (residue 0 may take the representative `m`)
/// with at most `k` elements below `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaKWitness {
    pub m: u64,
    pub k: u64,
    /// The attained prefix gap. `d = m` only at the terminal `k = Δ[C_m]−1`,
    /// matching the published tables, where the strict `d < m` constraint
    /// is relaxed to `d ≤ m`.
    pub d: u64,
    /// Sorted subset of `[0, m]`.
    pub elements: Vec<i64>,
}

impl DeltaKWitness {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::Domain("modulus must be >= 1".into()));
        }
        if self.d > self.m {
            return Err(Error::Domain("witness gap exceeds the modulus".into()));
        }
        let m = self.m as i64;
        if self.elements.is_empty()
            || self.elements.windows(2).any(|w| w[0] >= w[1])
            || self.elements.iter().any(|&e| e < 0 || e > m)
        {
            return Err(Error::InvalidCertificate(
                "witness elements must be sorted, distinct and within [0, m]".into(),
            ));
        }
        let below = self.elements.iter().filter(|&&e| e < self.d as i64).count();
        if below as u64 > self.k {
            return Err(Error::InvalidCertificate(format!(
                "{below} elements below d={} exceeds k={}",
                self.d, self.k
            )));
        }
        let residues: Vec<i64> = self.elements.iter().map(|&e| e % m).collect();
        let cert = Certificate::new(Target::cyclic(self.m)?, residues, "witness")?;
        if zmod::first_uncovered(&cert)?.is_some() {
            return Err(Error::InvalidCertificate(
                "witness residues do not form a difference basis".into(),
            ));
        }
        Ok(())
    }
}

/// Key space of the result cache.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CacheKind {
    Cyclic,
    Interval,
    DeltaK,
}

#[derive(Debug, Clone)]
pub struct CachedResult {
    pub value: u64,
    pub exhaustive: bool,
    /// Certificate elements (for δ_k: the lifted witness).
    pub elements: Vec<i64>,
    pub method: String,
    pub wall_time_s: f64,
}

/// Abstract handle the searchers read and write through; the CLI persists
/// one as JSON.
pub trait ResultCache: Send + Sync {
    fn get(&self, kind: CacheKind, n: u64, k: Option<u64>) -> Option<CachedResult>;
    fn put(&self, kind: CacheKind, n: u64, k: Option<u64>, result: CachedResult);
}

/// In-process cache.
#[derive(Default)]
pub struct MemoryCache {
    inner: Mutex<HashMap<(CacheKind, u64, Option<u64>), CachedResult>>,
}

impl MemoryCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> Vec<((CacheKind, u64, Option<u64>), CachedResult)> {
        self.inner
            .lock()
            .unwrap()
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect()
    }
}

impl ResultCache for MemoryCache {
    fn get(&self, kind: CacheKind, n: u64, k: Option<u64>) -> Option<CachedResult> {
        self.inner.lock().unwrap().get(&(kind, n, k)).cloned()
    }

    fn put(&self, kind: CacheKind, n: u64, k: Option<u64>, result: CachedResult) {
        self.inner.lock().unwrap().insert((kind, n, k), result);
    }
}

pub(crate) fn cache_lookup(
    cfg: &SearchConfig,
    kind: CacheKind,
    n: u64,
    k: Option<u64>,
) -> Option<CachedResult> {
    cfg.cache
        .as_ref()
        .and_then(|c| c.get(kind, n, k))
        .filter(|r| r.exhaustive)
}

pub(crate) fn cache_store(
    cfg: &SearchConfig,
    kind: CacheKind,
    n: u64,
    k: Option<u64>,
    result: CachedResult,
) {
    if let Some(c) = cfg.cache.as_ref() {
        c.put(kind, n, k, result);
    }
}
