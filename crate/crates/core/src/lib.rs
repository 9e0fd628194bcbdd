//! Computation engine and verification harness for elliptic hypergeometric
//! series.
//!
//! The library evaluates theta functions `θ(a;p)`, elliptic shifted
//! factorials `(a;q,p)_n`, and terminating sums whose terms are ratios of
//! such factorials (possibly in several bases at once), and it ships a
//! registry of summation and transformation identities for those series
//! together with a seeded, reproducible numerical verifier.
//!
//! Provided modules:
//!
//! * [`numerics`] — precision tiers (double and double-double), complex
//!   arithmetic over either tier, residual metrics, and deterministic
//!   parameter sampling.
//! * [`theta`] — `θ(a;p)`, `(a;q,p)_n`, multi-parameter products, and the
//!   Pochhammer-level rewriting identities (quasi-periodicity, base
//!   doubling, quadruple ratios).
//! * [`series`] — the universal terminating-series engine driven by factor
//!   groups, plus convenience evaluators for very-well-poised elliptic
//!   series, basic hypergeometric series, and very-well-poised basic series.
//! * [`identities`] — the identity registry, randomized verification,
//!   double-sum replays, and singular-limit checks.
//! * [`limits`] — `p → 0` degeneration checks pairing each elliptic identity
//!   with its basic limit.
//! * [`report`] — JSON report construction for machine-readable suite runs.
//!
//! All evaluation is pure: results are functions of the inputs, the seed,
//! and the precision context only, so suites can fan out across threads
//! without losing reproducibility.

pub mod error;
pub mod identities;
pub mod limits;
pub mod numerics;
pub mod report;
pub mod series;
pub mod theta;

pub use error::{EvalError, Result};
