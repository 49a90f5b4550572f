//! Difference bases of finite cyclic groups and integer intervals.
//!
//! A set `B` is a *difference basis* for a set `A` inside a group `G` when
//! every `a ∈ A` can be written as `a = x - y` with `x, y ∈ B`. The smallest
//! cardinality of such a `B` is the *difference size* `Δ[A]`, and
//! `ð[A] = Δ[A] / √|A|` is the *difference characteristic*.
//!
//! The crate computes, constructs, bounds and certifies difference bases:
//!
//! * [`zmod`] — residue arithmetic, the verification oracle, the integer
//!   lower bound `⌈(1 + √(4n−3))/2⌉` and the generic basis combiners.
//! * [`field`] — arithmetic in `GF(p^k)` with explicit modulus, primitive
//!   elements and dense discrete-log tables.
//! * [`constructions`] — Singer difference sets, Bose–Chowla Sidon sets,
//!   Ruzsa diagonal bases, and the interval splicing construction.
//! * [`search`] — branch-and-bound exact computation of `Δ[C_n]`, interval
//!   `Δ[n]`, and the prefix-gap numbers `δ_k[C_m]`.
//! * [`bounds`] — best certified upper bounds by dynamic programming over
//!   all constructions, plus closed-form corollary bounds.
//! * [`tables`] — published reference values used as test fixtures and
//!   report baselines.

pub mod bounds;
pub mod constructions;
mod error;
pub mod field;
pub mod search;
pub mod tables;
pub mod zmod;

pub use error::{Error, Result};
pub use zmod::{Certificate, Characteristic, Target, Verified};
