//! Published reference values, embedded as fixtures.
//!
//! Table commands and the acceptance suite compare computed results against
//! these; any mismatch is an error, never silently accepted. Entries for
//! large parameters that this crate does not recompute locally are kept
//! separate so they can be tagged as externally sourced when seeded into a
//! bound registry.

/// Cyclic difference sizes for `n ≤ 100`: `(n, lb, Δ[C_n])` where
/// `lb = ⌈(1 + √(4n−3))/2⌉`.
pub const CYCLIC_DELTA: [(u64, u64, u64); 100] = [
    (1, 1, 1),
    (2, 2, 2),
    (3, 2, 2),
    (4, 3, 3),
    (5, 3, 3),
    (6, 3, 3),
    (7, 3, 3),
    (8, 4, 4),
    (9, 4, 4),
    (10, 4, 4),
    (11, 4, 4),
    (12, 4, 4),
    (13, 4, 4),
    (14, 5, 5),
    (15, 5, 5),
    (16, 5, 5),
    (17, 5, 5),
    (18, 5, 5),
    (19, 5, 5),
    (20, 5, 6),
    (21, 5, 5),
    (22, 6, 6),
    (23, 6, 6),
    (24, 6, 6),
    (25, 6, 6),
    (26, 6, 6),
    (27, 6, 6),
    (28, 6, 6),
    (29, 6, 7),
    (30, 6, 7),
    (31, 6, 6),
    (32, 7, 7),
    (33, 7, 7),
    (34, 7, 7),
    (35, 7, 7),
    (36, 7, 7),
    (37, 7, 7),
    (38, 7, 8),
    (39, 7, 7),
    (40, 7, 8),
    (41, 7, 8),
    (42, 7, 8),
    (43, 7, 8),
    (44, 8, 8),
    (45, 8, 8),
    (46, 8, 8),
    (47, 8, 8),
    (48, 8, 8),
    (49, 8, 8),
    (50, 8, 8),
    (51, 8, 8),
    (52, 8, 9),
    (53, 8, 9),
    (54, 8, 9),
    (55, 8, 9),
    (56, 8, 9),
    (57, 8, 8),
    (58, 9, 9),
    (59, 9, 9),
    (60, 9, 9),
    (61, 9, 9),
    (62, 9, 9),
    (63, 9, 9),
    (64, 9, 9),
    (65, 9, 9),
    (66, 9, 10),
    (67, 9, 10),
    (68, 9, 10),
    (69, 9, 10),
    (70, 9, 10),
    (71, 9, 10),
    (72, 9, 10),
    (73, 9, 9),
    (74, 10, 10),
    (75, 10, 10),
    (76, 10, 10),
    (77, 10, 10),
    (78, 10, 10),
    (79, 10, 10),
    (80, 10, 11),
    (81, 10, 11),
    (82, 10, 11),
    (83, 10, 11),
    (84, 10, 11),
    (85, 10, 11),
    (86, 10, 11),
    (87, 10, 11),
    (88, 10, 11),
    (89, 10, 11),
    (90, 10, 11),
    (91, 10, 10),
    (92, 11, 11),
    (93, 11, 12),
    (94, 11, 12),
    (95, 11, 12),
    (96, 11, 12),
    (97, 11, 12),
    (98, 11, 12),
    (99, 11, 12),
    (100, 11, 12),
];

/// Shape-based upper bounds `ub[C_n]` for the `n ≤ 100` that have one of
/// the three special forms `q²+q+1`, `q²−1`, `p²−p`.
pub const CYCLIC_UB: [(u64, u64); 18] = [
    (2, 2),
    (3, 2),
    (6, 4),
    (7, 3),
    (8, 4),
    (13, 4),
    (15, 5),
    (20, 8),
    (21, 5),
    (24, 7),
    (31, 6),
    (42, 10),
    (48, 9),
    (57, 8),
    (63, 10),
    (73, 9),
    (80, 12),
    (91, 10),
];

/// Interval difference sizes as jump points: `Δ[n] = v` and
/// `Δ[n+1] = v + 1`. Together with `Δ[0] = 1` these determine `Δ[n]` for
/// all `n ≤ 61`.
pub const INTERVAL_JUMPS: [(u64, u64); 12] = [
    (1, 2),
    (3, 3),
    (6, 4),
    (9, 5),
    (13, 6),
    (18, 7),
    (24, 8),
    (29, 9),
    (37, 10),
    (45, 11),
    (51, 12),
    (61, 13),
];

/// `Δ[n]` for `0 ≤ n ≤ 61`, expanded from [`INTERVAL_JUMPS`]:
/// the value at `n` is the jump value of the smallest jump point `≥ n`.
pub fn interval_delta_expected(n: u64) -> Option<u64> {
    if n == 0 {
        return Some(1);
    }
    INTERVAL_JUMPS
        .iter()
        .find(|&&(jump_n, _)| n <= jump_n)
        .map(|&(_, v)| v)
}

/// `δ_0[C_m]` for Singer orders `m = q² + q + 1`: `(q, m, δ_0)`.
pub const DELTA0_SINGER: [(u64, u64, u64); 18] = [
    (2, 7, 4),
    (3, 13, 7),
    (4, 21, 10),
    (5, 31, 14),
    (7, 57, 22),
    (8, 73, 28),
    (9, 91, 36),
    (11, 133, 48),
    (13, 183, 56),
    (16, 273, 72),
    (17, 307, 91),
    (19, 381, 98),
    (23, 553, 128),
    (25, 651, 159),
    (27, 757, 172),
    (29, 871, 191),
    (31, 993, 209),
    (32, 1057, 198),
];

/// `δ_k[C_m]` rows: `(m, [δ_0, δ_1, …])`. For most rows the final entry is
/// the terminal `k = Δ[C_m] − 1`, where the published value equals `m`
/// itself; the `m = 307` row stops at `k = 16`.
pub const DELTA_K: [(u64, &[u64]); 12] = [
    (7, &[4, 6, 7]),
    (13, &[7, 10, 12, 13]),
    (21, &[10, 13, 17, 20, 21]),
    (31, &[14, 19, 25, 28, 30, 31]),
    (39, &[18, 23, 29, 35, 37, 38, 39]),
    (57, &[22, 29, 38, 43, 50, 54, 56, 57]),
    (73, &[28, 38, 41, 52, 58, 66, 70, 72, 73]),
    (91, &[36, 46, 51, 62, 71, 74, 84, 88, 90, 91]),
    (133, &[48, 61, 68, 79, 94, 102, 114, 120, 125, 130, 132, 133]),
    (
        183,
        &[56, 69, 92, 98, 109, 128, 139, 153, 158, 168, 175, 180, 182, 183],
    ),
    (
        273,
        &[
            72, 92, 110, 130, 145, 152, 175, 184, 202, 218, 226, 242, 258, 266, 270,
            272, 273,
        ],
    ),
    (
        307,
        &[
            91, 106, 128, 152, 160, 171, 199, 214, 232, 245, 261, 276, 284, 292, 300,
            304, 306,
        ],
    ),
];

/// Published interval upper bounds `Δ[n] ≤ v` derived by splicing cyclic
/// bases into rulers.
pub const INTERVAL_UB: [(u64, u64); 32] = [
    (72, 15),
    (84, 16),
    (87, 17),
    (105, 18),
    (109, 19),
    (135, 20),
    (138, 21),
    (142, 22),
    (145, 23),
    (200, 24),
    (204, 25),
    (208, 26),
    (211, 27),
    (251, 28),
    (256, 29),
    (262, 30),
    (268, 31),
    (363, 32),
    (465, 36),
    (581, 40),
    (684, 45),
    (845, 48),
    (1153, 56),
    (1389, 64),
    (1709, 68),
    (1932, 72),
    (2383, 80),
    (3445, 96),
    (4064, 104),
    (4713, 112),
    (5416, 120),
    (6166, 128),
];

pub fn cyclic_delta_expected(n: u64) -> Option<u64> {
    CYCLIC_DELTA
        .get((n as usize).checked_sub(1)?)
        .map(|&(_, _, d)| d)
}

pub fn cyclic_lb_expected(n: u64) -> Option<u64> {
    CYCLIC_DELTA
        .get((n as usize).checked_sub(1)?)
        .map(|&(_, lb, _)| lb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::lower_bound;

    #[test]
    fn fixture_rows_are_indexed_by_n() {
        for (i, &(n, _, _)) in CYCLIC_DELTA.iter().enumerate() {
            assert_eq!(n as usize, i + 1);
        }
    }

    #[test]
    fn tabulated_lb_matches_formula() {
        for &(n, lb, delta) in &CYCLIC_DELTA {
            assert_eq!(lower_bound(n).unwrap(), lb, "lb mismatch at n={n}");
            assert!(lb <= delta);
        }
    }

    #[test]
    fn cyclic_delta_steps_by_at_most_one() {
        for w in CYCLIC_DELTA.windows(2) {
            let (d0, d1) = (w[0].2 as i64, w[1].2 as i64);
            assert!((d1 - d0).abs() <= 1, "jump at n={}", w[1].0);
        }
    }

    #[test]
    fn interval_expansion() {
        assert_eq!(interval_delta_expected(0), Some(1));
        assert_eq!(interval_delta_expected(1), Some(2));
        assert_eq!(interval_delta_expected(2), Some(3));
        assert_eq!(interval_delta_expected(6), Some(4));
        assert_eq!(interval_delta_expected(7), Some(5));
        assert_eq!(interval_delta_expected(13), Some(6));
        assert_eq!(interval_delta_expected(61), Some(13));
        assert_eq!(interval_delta_expected(62), None);
    }

    #[test]
    fn delta_k_rows_are_monotone_in_k() {
        for &(m, row) in &DELTA_K {
            for w in row.windows(2) {
                assert!(w[0] <= w[1], "δ_k not monotone at m={m}");
            }
            assert!(*row.last().unwrap() <= m);
        }
    }

    #[test]
    fn delta0_tables_are_consistent() {
        // Rows present in both δ tables must agree at k = 0.
        for &(_, m, d0) in &DELTA0_SINGER {
            if let Some(&(_, row)) = DELTA_K.iter().find(|&&(mm, _)| mm == m) {
                assert_eq!(row[0], d0, "δ_0 mismatch at m={m}");
            }
        }
    }
}
