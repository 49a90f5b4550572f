//! Prefix-gap numbers `δ_k[C_m]` and their witnesses.
//!
//! `δ_k[C_m]` is the largest `d` such that some minimum-size difference
//! basis `B ⊂ [0, m]` of `Z_m` (the residue 0 may take the representative
//! `m`) has at most `k` elements below `d`. Viewing a basis through its
//! cyclic gap sequence, the best `d` a basis can reach for a given `k` is
//! the maximum sum of `k+1` consecutive gaps: translate the basis so the
//! window starts at 0 and lift the residue 0 to `m`. Maximizing over all
//! minimum bases therefore needs one enumeration per modulus, which yields
//! every `k` at once.
//!
//! Gap windows are invariant under translation (and reversal), so the
//! enumeration quotients by translations only — multiplier images change
//! the gap structure and must be visited.

use std::time::Instant;

use crate::error::{Error, Result};

use super::cyclic::{run_tasks, Engine, Sink};
use super::{
    cache_lookup, cache_store, CacheKind, CachedResult, DeltaKWitness, SearchConfig,
    SearchStats, SymmetryLevel,
};

#[derive(Debug, Clone)]
pub struct DeltaKOutcome {
    pub witness: DeltaKWitness,
    pub delta_cm: u64,
    pub exhaustive: bool,
    pub stats: SearchStats,
    pub cached: bool,
}

/// Per-`k` best `(d, lifted witness)` across the bases one task visits.
struct WindowAgg {
    m: usize,
    s: usize,
    best: Vec<Option<(u64, Vec<i64>)>>,
    gaps: Vec<usize>,
}

impl WindowAgg {
    fn new(m: usize, s: usize) -> Self {
        WindowAgg { m, s, best: vec![None; s], gaps: Vec::with_capacity(s) }
    }

    fn offer(&mut self, k: usize, d: u64, witness: Vec<i64>) {
        match &self.best[k] {
            Some((bd, bw)) if *bd > d || (*bd == d && *bw <= witness) => {}
            _ => self.best[k] = Some((d, witness)),
        }
    }

    fn merge(&mut self, other: WindowAgg) {
        for (k, slot) in other.best.into_iter().enumerate() {
            if let Some((d, w)) = slot {
                self.offer(k, d, w);
            }
        }
    }

    /// Translate so the window starting at `sol[j]` begins at 0; residue 0
    /// lifts to `m` so it never pays the prefix cost.
    fn lifted(&self, sol: &[usize], j: usize) -> Vec<i64> {
        let m = self.m as i64;
        let base = sol[j] as i64;
        let mut out: Vec<i64> = sol
            .iter()
            .map(|&e| {
                let t = (e as i64 - base).rem_euclid(m);
                if t == 0 {
                    m
                } else {
                    t
                }
            })
            .collect();
        out.sort_unstable();
        out
    }
}

impl Sink for WindowAgg {
    fn visit(&mut self, sol: &[usize]) -> bool {
        let s = self.s;
        self.gaps.clear();
        for w in sol.windows(2) {
            self.gaps.push(w[1] - w[0]);
        }
        self.gaps.push(self.m - sol[s - 1]);
        let gaps = std::mem::take(&mut self.gaps);
        for k in 0..s {
            // Max sum of k+1 consecutive cyclic gaps, earliest start wins.
            let mut best_sum = 0usize;
            let mut best_j = 0usize;
            for j in 0..s {
                let sum: usize = (0..=k).map(|i| gaps[(j + i) % s]).sum();
                if sum > best_sum {
                    best_sum = sum;
                    best_j = j;
                }
            }
            let d = best_sum as u64;
            let improves = match &self.best[k] {
                Some((bd, _)) => *bd <= d,
                None => true,
            };
            if improves {
                let w = self.lifted(sol, best_j);
                self.offer(k, d, w);
            }
        }
        self.gaps = gaps;
        false
    }
}

/// Compute `δ_k[C_m]` and a witness attaining it.
///
/// All `k' < Δ[C_m]` are derived from the same enumeration and cached
/// together. The published tables relax `d < m` to `d ≤ m` at the terminal
/// `k = Δ[C_m] − 1` (where the whole gap cycle sums to `m`); this follows
/// that convention.
pub fn delta_k(m: u64, k: u64, cfg: &SearchConfig) -> Result<DeltaKOutcome> {
    if m == 0 {
        return Err(Error::Domain("modulus must be >= 1".into()));
    }
    let started = Instant::now();
    if let Some(hit) = cache_lookup(cfg, CacheKind::DeltaK, m, Some(k)) {
        let witness = DeltaKWitness { m, k, d: hit.value, elements: hit.elements.clone() };
        if witness.validate().is_ok() {
            let delta_cm = witness.elements.len() as u64;
            return Ok(DeltaKOutcome {
                witness,
                delta_cm,
                exhaustive: true,
                stats: SearchStats { nodes: 0, wall: started.elapsed() },
                cached: true,
            });
        }
    }
    let dc = super::exact_delta_cyclic(m, cfg)?;
    let s = dc.value.exact().ok_or_else(|| {
        Error::Domain(format!("budget exhausted before Δ[C_{m}] was settled"))
    })?;
    if k >= s {
        return Err(Error::Domain(format!(
            "k = {k} out of range: the definition needs k < Δ[C_m] = {s}"
        )));
    }
    // Enumerate every minimum basis up to translation; multiplier images
    // carry distinct gap profiles, so symmetry stays at translation level.
    let symmetry = match cfg.symmetry {
        SymmetryLevel::None => SymmetryLevel::None,
        _ => SymmetryLevel::Translation,
    };
    let deadline = cfg.deadline();
    let eng = Engine::new(m as usize, s as usize, symmetry, deadline);
    let sinks = run_tasks(&eng, cfg.resolved_threads(), false, || {
        WindowAgg::new(m as usize, s as usize)
    });
    let mut agg = WindowAgg::new(m as usize, s as usize);
    for sink in sinks {
        agg.merge(sink);
    }
    let exhaustive = !eng.budget_was_hit();
    let nodes = eng.nodes.load(std::sync::atomic::Ordering::Relaxed);
    if agg.best.iter().any(|b| b.is_none()) {
        return Err(Error::Domain(format!(
            "budget exhausted before any δ witness for C_{m} was found"
        )));
    }
    let mut requested = None;
    for (kk, slot) in agg.best.iter().enumerate() {
        let (d, elements) = slot.as_ref().expect("checked above");
        let witness = DeltaKWitness {
            m,
            k: kk as u64,
            d: *d,
            elements: elements.clone(),
        };
        witness.validate().map_err(|e| {
            Error::Internal(format!("enumerated witness failed validation: {e}"))
        })?;
        if exhaustive {
            cache_store(
                cfg,
                CacheKind::DeltaK,
                m,
                Some(kk as u64),
                CachedResult {
                    value: *d,
                    exhaustive,
                    elements: elements.clone(),
                    method: "exact".into(),
                    wall_time_s: started.elapsed().as_secs_f64(),
                },
            );
        }
        if kk as u64 == k {
            requested = Some(witness);
        }
    }
    Ok(DeltaKOutcome {
        witness: requested.expect("k < s"),
        delta_cm: s,
        exhaustive,
        stats: SearchStats { nodes, wall: started.elapsed() },
        cached: false,
    })
}

/// Check the two lower bounds on `δ_0[C_m]`: `⌊m/Δ[C_m]⌋` always, and
/// `q + 2` at Singer orders `m = q² + q + 1`. Degenerate `m < 3` passes
/// vacuously.
pub fn verify_delta0_lower_bound(m: u64, delta_cm: u64, delta0: u64) -> bool {
    if m < 3 {
        return true;
    }
    if delta_cm == 0 || delta0 < m / delta_cm {
        return false;
    }
    if let Some(q) = crate::bounds::singer_order(m) {
        if delta0 < q + 2 {
            return false;
        }
    }
    true
}
