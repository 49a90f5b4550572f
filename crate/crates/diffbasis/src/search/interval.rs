//! Exact interval sizes `Δ[n]`: minimal difference bases for `[0, n]`.
//!
//! Candidates are ascending integer sets with min 0, *not* confined to
//! `[0, n]`: from length 18 on, optimal bases may overshoot the interval
//! (the 7-mark basis `{0,2,7,13,16,17,25}` covers `[−18,18]`, while no
//! 7-mark subset of `[0,18]` does). The space stays finite because any
//! basis converts to an equal-size one whose consecutive gaps are at most
//! `n`: differences across a wider gap all exceed `n` and cover nothing,
//! so the upper block can slide down until the gap closes. Pairs whose
//! difference exceeds `n` are dead weight, which the coverage-capacity
//! prune charges exactly.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::zmod::{self, Certificate, Target, Verified};

use super::{
    cache_lookup, cache_store, CacheKind, CachedResult, SearchConfig, SearchOutcome,
    SearchStats, SearchValue,
};

struct IntervalState {
    n: usize,
    s: usize,
    deadline: Option<Instant>,
    elements: Vec<usize>,
    counts: Vec<u16>,
    covered: usize,
    nodes: u64,
    aborted: bool,
    found: Option<Vec<usize>>,
}

impl IntervalState {
    fn new(n: usize, s: usize, deadline: Option<Instant>) -> Self {
        let mut st = IntervalState {
            n,
            s,
            deadline,
            elements: Vec::with_capacity(s),
            counts: vec![0u16; n + 1],
            covered: 0,
            nodes: 0,
            aborted: false,
            found: None,
        };
        st.elements.push(0);
        st
    }

    fn place(&mut self, x: usize) {
        for &y in &self.elements {
            let d = x - y;
            if d <= self.n {
                self.counts[d] += 1;
                if self.counts[d] == 1 {
                    self.covered += 1;
                }
            }
        }
        self.elements.push(x);
    }

    fn unplace(&mut self) {
        let x = self.elements.pop().expect("non-empty");
        for &y in &self.elements {
            let d = x - y;
            if d <= self.n {
                self.counts[d] -= 1;
                if self.counts[d] == 0 {
                    self.covered -= 1;
                }
            }
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes & 0xFFF == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.aborted = true;
                }
            }
        }
        self.aborted
    }

    fn dfs(&mut self) -> bool {
        let t = self.elements.len();
        if t == self.s {
            if self.covered == self.n {
                self.found = Some(self.elements.clone());
                return true;
            }
            return false;
        }
        let r = self.s - t;
        let last = *self.elements.last().expect("contains 0");
        // Gaps beyond n are compressible away, so last + n caps the branch.
        for x in (last + 1)..=(last + self.n) {
            if self.tick() {
                return true;
            }
            self.place(x);
            let t2 = t + 1;
            let r2 = self.s - t2;
            let uncovered = self.n - self.covered;
            let capacity = r2 * t2 + r2 * r2.saturating_sub(1) / 2;
            if uncovered <= capacity && self.dfs() {
                self.unplace();
                return true;
            }
            self.unplace();
        }
        false
    }
}

/// Iterative-deepening exact `Δ[n]` for the interval `[0, n]`.
///
/// Runs sequentially: interval exhausts are tight (the pair budget
/// `s(s−1)/2` barely exceeds `n` at the sizes that need proof).
pub fn exact_delta_interval(n: u64, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let started = Instant::now();
    if let Some(hit) = cache_lookup(cfg, CacheKind::Interval, n, None) {
        let cert = zmod::verify(&Certificate::new(
            Target::interval(n)?,
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
    if n == 0 {
        let cert = zmod::verify(&Certificate::new(Target::interval(0)?, vec![0], "exact")?)?;
        return Ok(SearchOutcome {
            value: SearchValue::Exact(1),
            certificate: Some(cert),
            stats: SearchStats { nodes: 0, wall: started.elapsed() },
            exhaustive: true,
            cached: false,
        });
    }
    // s(s−1)/2 unordered pairs must cover the n positive lengths.
    let mut lb = 2u64;
    while lb * (lb - 1) < 2 * n {
        lb += 1;
    }
    let deadline = cfg.deadline();
    let mut nodes = 0u64;
    for s in lb..=(n + 1) {
        let mut st = IntervalState::new(n as usize, s as usize, deadline);
        st.dfs();
        nodes += st.nodes;
        if let Some(sol) = st.found {
            let elements: Vec<i64> = sol.iter().map(|&x| x as i64).collect();
            let cert =
                zmod::verify(&Certificate::new(Target::interval(n)?, elements, "exact")?)?;
            if cert.verified() != Verified::Pass || cert.size() as u64 != s {
                return Err(Error::Internal("interval search emitted a non-ruler".into()));
            }
            let wall = started.elapsed();
            cache_store(
                cfg,
                CacheKind::Interval,
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
        if st.aborted {
            let trivial = zmod::verify(&Certificate::new(
                Target::interval(n)?,
                (0..=n as i64).collect(),
                "trivial",
            )?)?;
            return Ok(SearchOutcome {
                value: SearchValue::Bounds { lower: s, upper: n + 1 },
                certificate: Some(trivial),
                stats: SearchStats { nodes, wall: started.elapsed() },
                exhaustive: false,
                cached: false,
            });
        }
    }
    Err(Error::Internal("interval deepening exceeded the full ruler".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables;

    #[test]
    fn published_values_small() {
        let cfg = SearchConfig::default();
        for n in 0..=20u64 {
            let out = exact_delta_interval(n, &cfg).unwrap();
            assert_eq!(out.value.exact(), tables::interval_delta_expected(n), "n={n}");
        }
    }

    #[test]
    fn classic_ruler_for_six() {
        let out = exact_delta_interval(6, &SearchConfig::default()).unwrap();
        assert_eq!(out.value, SearchValue::Exact(4));
        // The lexicographically least optimal basis.
        assert_eq!(out.certificate.unwrap().elements(), &[0, 1, 4, 6]);
    }

    #[test]
    fn length_18_needs_an_overshooting_basis() {
        // No 7-mark subset of [0,18] covers [0,18], but an unrestricted
        // basis does; the searcher must find size 7.
        let out = exact_delta_interval(18, &SearchConfig::default()).unwrap();
        assert_eq!(out.value, SearchValue::Exact(7));
        let cert = out.certificate.unwrap();
        assert!(*cert.elements().last().unwrap() > 18);
    }

    #[test]
    fn zero_length_interval() {
        let out = exact_delta_interval(0, &SearchConfig::default()).unwrap();
        assert_eq!(out.value, SearchValue::Exact(1));
        assert_eq!(out.certificate.unwrap().elements(), &[0]);
    }
}
