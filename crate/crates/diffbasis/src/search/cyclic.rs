//! DFS engine over residue subsets of `Z_n` and the `Δ[C_n]` driver.
//!
//! Candidates are ascending subsets containing 0. Two prunes apply at every
//! node:
//!
//! * coverage capacity — with `t` residues placed and `r` to go, at most
//!   `2rt + r(r−1)` new differences can appear, so a prefix leaving more
//!   residues uncovered is dead;
//! * canonical form — a prefix is expanded only if no checked affine image
//!   `u(P − p)` (with `p ∈ P`, so the image still contains 0) is
//!   lexicographically smaller. Affine images of difference bases are
//!   difference bases, and prefixes of the orbit-minimal basis pass every
//!   such check, so pruning loses no orbit.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::zmod::{self, Certificate, Target, Verified};

use super::{
    cache_lookup, cache_store, CacheKind, CachedResult, SearchConfig, SearchOutcome,
    SearchStats, SearchValue, SymmetryLevel,
};

/// Depth up to which the full unit-multiplier canonical check runs; beyond
/// it only translation images are tested (still sound, just weaker).
const AFFINE_CHECK_DEPTH: usize = 8;

/// Deadline / cancellation poll cadence in nodes.
const TICK_MASK: u64 = 0xFFF;

pub(crate) struct Engine {
    pub n: usize,
    pub s: usize,
    symmetry: SymmetryLevel,
    units: Vec<usize>,
    deadline: Option<Instant>,
    pub nodes: AtomicU64,
    budget_hit: AtomicBool,
    early_stop: AtomicUsize,
}

impl Engine {
    pub fn new(n: usize, s: usize, symmetry: SymmetryLevel, deadline: Option<Instant>) -> Self {
        let units = if symmetry == SymmetryLevel::FullAffine {
            (2..n.max(2))
                .filter(|&u| zmod::gcd(u as u64, n as u64) == 1)
                .collect()
        } else {
            Vec::new()
        };
        Engine {
            n,
            s,
            symmetry,
            units,
            deadline,
            nodes: AtomicU64::new(0),
            budget_hit: AtomicBool::new(false),
            early_stop: AtomicUsize::new(usize::MAX),
        }
    }

    pub fn budget_was_hit(&self) -> bool {
        self.budget_hit.load(Ordering::Relaxed)
    }
}

/// Receives complete solutions; `true` stops the current task.
pub(crate) trait Sink {
    fn visit(&mut self, solution: &[usize]) -> bool;
}

pub(crate) struct FirstSolution {
    pub found: Option<Vec<usize>>,
}

impl Sink for FirstSolution {
    fn visit(&mut self, solution: &[usize]) -> bool {
        self.found = Some(solution.to_vec());
        true
    }
}

pub(crate) struct State<'e> {
    eng: &'e Engine,
    task_index: usize,
    decide: bool,
    elements: Vec<usize>,
    counts: Vec<u16>,
    covered: usize,
    local_nodes: u64,
    scratch: Vec<usize>,
    pub aborted: bool,
    canceled: bool,
}

impl<'e> State<'e> {
    pub fn new(eng: &'e Engine, task_index: usize, decide: bool) -> Self {
        let mut st = State {
            eng,
            task_index,
            decide,
            elements: Vec::with_capacity(eng.s),
            counts: vec![0u16; eng.n],
            covered: 0,
            local_nodes: 0,
            scratch: Vec::with_capacity(eng.s),
            aborted: false,
            canceled: false,
        };
        st.elements.push(0);
        st
    }

    fn place(&mut self, x: usize) {
        let n = self.eng.n;
        for &y in &self.elements {
            let d = (x + n - y) % n;
            for r in [d, n - d] {
                self.counts[r] += 1;
                if self.counts[r] == 1 {
                    self.covered += 1;
                }
            }
        }
        self.elements.push(x);
    }

    fn unplace(&mut self) {
        let x = self.elements.pop().expect("non-empty prefix");
        let n = self.eng.n;
        for &y in &self.elements {
            let d = (x + n - y) % n;
            for r in [d, n - d] {
                self.counts[r] -= 1;
                if self.counts[r] == 0 {
                    self.covered -= 1;
                }
            }
        }
    }

    /// Lexicographic test: is `sorted(u·(P − p))` strictly below `P`?
    ///
    /// Both sides start with 0, so the smallest nonzero image value against
    /// `P[1]` settles almost every call; ties fall back to a full sort.
    fn image_less(&mut self, u: usize, p: usize) -> bool {
        let n = self.eng.n;
        let b1 = self.elements[1];
        let mut min_nz = usize::MAX;
        for &x in &self.elements {
            if x == p {
                continue;
            }
            let v = (x + n - p) % n * u % n;
            if v < min_nz {
                min_nz = v;
            }
        }
        if min_nz != b1 {
            return min_nz < b1;
        }
        self.scratch.clear();
        for &x in &self.elements {
            self.scratch.push((x + n - p) % n * u % n);
        }
        self.scratch.sort_unstable();
        for i in 1..self.elements.len() {
            if self.scratch[i] != self.elements[i] {
                return self.scratch[i] < self.elements[i];
            }
        }
        false
    }

    fn canonical_ok(&mut self) -> bool {
        match self.eng.symmetry {
            SymmetryLevel::None => true,
            SymmetryLevel::Translation | SymmetryLevel::FullAffine => {
                for i in 1..self.elements.len() {
                    let p = self.elements[i];
                    if self.image_less(1, p) {
                        return false;
                    }
                }
                if self.eng.symmetry == SymmetryLevel::FullAffine
                    && self.elements.len() <= AFFINE_CHECK_DEPTH
                {
                    for ui in 0..self.eng.units.len() {
                        let u = self.eng.units[ui];
                        for i in 0..self.elements.len() {
                            let p = self.elements[i];
                            if self.image_less(u, p) {
                                return false;
                            }
                        }
                    }
                }
                true
            }
        }
    }

    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        if self.local_nodes & TICK_MASK == 0 {
            if let Some(d) = self.eng.deadline {
                if Instant::now() > d {
                    self.aborted = true;
                    self.eng.budget_hit.store(true, Ordering::Relaxed);
                }
            }
            if self.decide
                && self.eng.early_stop.load(Ordering::Relaxed) < self.task_index
            {
                self.canceled = true;
            }
        }
        self.aborted || self.canceled
    }

    /// Extend the prefix by one residue and recurse; returns true to stop.
    pub fn dfs<S: Sink>(&mut self, sink: &mut S) -> bool {
        let n = self.eng.n;
        let s = self.eng.s;
        let t = self.elements.len();
        if t == s {
            if self.covered == n - 1 {
                return sink.visit(&self.elements);
            }
            return false;
        }
        let r = s - t;
        let last = *self.elements.last().expect("prefix contains 0");
        // Any x > n − b₁ loses to its own translation image (the value
        // n − x lands below b₁), so the branch range ends there.
        let hi = if t >= 2 && self.eng.symmetry != SymmetryLevel::None {
            (n - r).min(n - self.elements[1])
        } else {
            n - r
        };
        for x in (last + 1)..=hi {
            if self.tick() {
                return true;
            }
            self.place(x);
            let t2 = t + 1;
            let r2 = s - t2;
            let uncovered = (n - 1) - self.covered;
            let capacity = 2 * r2 * t2 + r2 * r2.saturating_sub(1);
            if uncovered <= capacity && self.canonical_ok() && self.dfs(sink) {
                self.unplace();
                return true;
            }
            self.unplace();
        }
        false
    }

    fn flush_nodes(&mut self) {
        self.eng.nodes.fetch_add(self.local_nodes, Ordering::Relaxed);
        self.local_nodes = 0;
    }
}

/// Run the size-`s` search, splitting at depth 2 across threads. Sinks come
/// back in task order; in decide mode tasks above the least solution index
/// are canceled cooperatively.
pub(crate) fn run_tasks<S, F>(
    eng: &Engine,
    threads: usize,
    decide: bool,
    make_sink: F,
) -> Vec<S>
where
    S: Sink + Send,
    F: Fn() -> S + Sync,
{
    let sequential = threads <= 1 || eng.s <= 3 || eng.n < 32;
    if sequential {
        let mut st = State::new(eng, 0, false);
        let mut sink = make_sink();
        st.dfs(&mut sink);
        st.flush_nodes();
        return vec![sink];
    }

    // Depth-2 prefixes [0, b1, b2], filtered by the same prunes the DFS
    // applies, become the parallel work units.
    let mut tasks: Vec<(usize, usize)> = Vec::new();
    {
        let mut st = State::new(eng, 0, false);
        let n = eng.n;
        let s = eng.s;
        for b1 in 1..=(n - (s - 1)) {
            st.place(b1);
            if st.canonical_ok() {
                for b2 in (b1 + 1)..=(n - (s - 2)) {
                    st.place(b2);
                    let r2 = s - 3;
                    let uncovered = (n - 1) - st.covered;
                    if uncovered <= 2 * r2 * 3 + r2 * r2.saturating_sub(1)
                        && st.canonical_ok()
                    {
                        tasks.push((b1, b2));
                    }
                    st.unplace();
                }
            }
            st.unplace();
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool construction");
    pool.install(|| {
        tasks
            .par_iter()
            .enumerate()
            .map(|(index, &(b1, b2))| {
                let mut sink = make_sink();
                if decide && eng.early_stop.load(Ordering::Relaxed) < index {
                    return sink;
                }
                let mut st = State::new(eng, index, decide);
                st.place(b1);
                st.place(b2);
                let stopped = st.dfs(&mut sink);
                st.flush_nodes();
                if decide && stopped && !st.aborted && !st.canceled {
                    // A solution: cancel strictly larger task indices.
                    eng.early_stop.fetch_min(index, Ordering::Relaxed);
                }
                sink
            })
            .collect()
    })
}

/// Existence of a difference basis of size `s` in `Z_n`; returns the first
/// surviving solution in task/lexicographic order.
pub(crate) fn decide_size(
    n: usize,
    s: usize,
    cfg: &SearchConfig,
    deadline: Option<Instant>,
) -> (Option<Vec<usize>>, bool, u64) {
    if s == 0 {
        return (None, false, 0);
    }
    if s == 1 {
        return ((n == 1).then(|| vec![0]), false, 1);
    }
    let eng = Engine::new(n, s, cfg.symmetry, deadline);
    let sinks = run_tasks(&eng, cfg.resolved_threads(), true, || FirstSolution {
        found: None,
    });
    let found = sinks.into_iter().find_map(|s| s.found);
    (found, eng.budget_was_hit(), eng.nodes.load(Ordering::Relaxed))
}

/// Iterative-deepening exact `Δ[C_n]`.
///
/// Deepens `s` from the counting lower bound; the first size admitting a
/// verified basis is exact since any superset of a difference basis is one.
/// On budget exhaustion the outcome carries the certified bracket instead.
pub fn exact_delta_cyclic(n: u64, cfg: &SearchConfig) -> Result<SearchOutcome> {
    if n == 0 {
        return Err(Error::Domain("cyclic order must be >= 1".into()));
    }
    let started = Instant::now();
    if let Some(hit) = cache_lookup(cfg, CacheKind::Cyclic, n, None) {
        let cert = zmod::verify(&Certificate::new(
            Target::cyclic(n)?,
            hit.elements.clone(),
            &hit.method,
        )?)?;
        if cert.verified() == Verified::Pass && cert.size() as u64 == hit.value {
            return Ok(SearchOutcome {
                value: SearchValue::Exact(hit.value),
                certificate: Some(cert),
                stats: SearchStats { nodes: 0, wall: started.elapsed() },
                exhaustive: true,
                cached: true,
            });
        }
    }
    let lb = zmod::lower_bound(n)?;
    let trivial = zmod::trivial_basis(n)?;
    let deadline = cfg.deadline();
    let mut nodes = 0u64;
    for s in lb..=(trivial.size() as u64) {
        let (found, budget_hit, n_nodes) = decide_size(n as usize, s as usize, cfg, deadline);
        nodes += n_nodes;
        if let Some(sol) = found {
            let elements: Vec<i64> = sol.iter().map(|&x| x as i64).collect();
            let cert = zmod::verify(&Certificate::new(Target::cyclic(n)?, elements, "exact")?)?;
            if cert.verified() != Verified::Pass || cert.size() as u64 != s {
                return Err(Error::Internal("search emitted a non-basis".into()));
            }
            let wall = started.elapsed();
            cache_store(
                cfg,
                CacheKind::Cyclic,
                n,
                None,
                CachedResult {
                    value: s,
                    exhaustive: true,
                    elements: cert.elements().to_vec(),
                    method: "exact".into(),
                    wall_time_s: wall.as_secs_f64(),
                },
            );
            return Ok(SearchOutcome {
                value: SearchValue::Exact(s),
                certificate: Some(cert),
                stats: SearchStats { nodes, wall },
                exhaustive: true,
                cached: false,
            });
        }
        if budget_hit {
            return Ok(SearchOutcome {
                value: SearchValue::Bounds { lower: s, upper: trivial.size() as u64 },
                certificate: Some(trivial),
                stats: SearchStats { nodes, wall: started.elapsed() },
                exhaustive: false,
                cached: false,
            });
        }
    }
    Err(Error::Internal(
        "deepening passed the trivial size without finding a basis".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables;

    fn cfg(symmetry: SymmetryLevel) -> SearchConfig {
        SearchConfig { symmetry, ..Default::default() }
    }

    #[test]
    fn tiny_orders() {
        let out = exact_delta_cyclic(1, &cfg(SymmetryLevel::FullAffine)).unwrap();
        assert_eq!(out.value, SearchValue::Exact(1));
        assert_eq!(out.certificate.unwrap().elements(), &[0]);
        let out = exact_delta_cyclic(2, &cfg(SymmetryLevel::FullAffine)).unwrap();
        assert_eq!(out.value, SearchValue::Exact(2));
    }

    #[test]
    fn problem_refutation_at_twenty() {
        // Δ[C_20] = 6 strictly above the counting bound 5.
        let out = exact_delta_cyclic(20, &cfg(SymmetryLevel::FullAffine)).unwrap();
        assert_eq!(out.value, SearchValue::Exact(6));
        assert!(out.exhaustive);
        assert_eq!(zmod::lower_bound(20).unwrap(), 5);
    }

    #[test]
    fn matches_published_values_small() {
        for n in 1..=32u64 {
            let out = exact_delta_cyclic(n, &cfg(SymmetryLevel::FullAffine)).unwrap();
            assert_eq!(
                out.value.exact(),
                tables::cyclic_delta_expected(n),
                "n={n}"
            );
            let cert = out.certificate.unwrap();
            assert_eq!(cert.verified(), Verified::Pass);
        }
    }

    #[test]
    fn symmetry_levels_agree_on_value() {
        for n in [13u64, 20, 24, 29] {
            let full = exact_delta_cyclic(n, &cfg(SymmetryLevel::FullAffine)).unwrap();
            let trans = exact_delta_cyclic(n, &cfg(SymmetryLevel::Translation)).unwrap();
            let none = exact_delta_cyclic(n, &cfg(SymmetryLevel::None)).unwrap();
            assert_eq!(full.value, trans.value, "n={n}");
            assert_eq!(full.value, none.value, "n={n}");
        }
    }

    #[test]
    fn zero_budget_yields_bounds() {
        let c = SearchConfig {
            time_budget: Some(std::time::Duration::ZERO),
            ..Default::default()
        };
        let out = exact_delta_cyclic(95, &c).unwrap();
        assert!(!out.exhaustive);
        match out.value {
            SearchValue::Bounds { lower, upper } => {
                assert!(lower >= zmod::lower_bound(95).unwrap());
                assert_eq!(upper, 48); // ⌈96/2⌉, the trivial basis
            }
            SearchValue::Exact(_) => panic!("expected bounds"),
        }
        assert_eq!(out.certificate.unwrap().size(), 48);
    }

    #[test]
    fn cache_round_trip() {
        use std::sync::Arc;
        let cache = Arc::new(super::super::MemoryCache::new());
        let c = SearchConfig {
            cache: Some(cache.clone()),
            ..Default::default()
        };
        let first = exact_delta_cyclic(20, &c).unwrap();
        assert!(!first.cached);
        let second = exact_delta_cyclic(20, &c).unwrap();
        assert!(second.cached);
        assert_eq!(first.value, second.value);
        assert_eq!(
            first.certificate.unwrap().elements(),
            second.certificate.unwrap().elements()
        );
    }
}
