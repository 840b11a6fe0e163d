//! Exact exponent-pair bound calculus for smooth numbers in short intervals,
//! with sieve-based verification engines.
//!
//! The crate has two halves:
//!
//! * **Bound calculus** ([`pairs`], [`bounds`], [`constants`], [`rational`]):
//!   exponent pairs under the van der Corput A/B processes, the linear bound
//!   b(a, k, l) = (l + a(k − l))/(k + 1), its exact lower envelope over
//!   a ∈ [1/2, 1], the interval exponent β(k, l) = (5k + l + 2)/(6(k + 1)),
//!   and the analytic constants ν and μ₀. Everything is exact rational
//!   arithmetic except the analytic constants.
//!
//! * **Sieve engines** ([`sieve`], [`sums`], [`sets`], [`scan`]): segmented
//!   largest-prime-factor sieving, smooth-number counts Ψ(x, y) globally and
//!   in short windows, sawtooth/divisor sums, membership machinery for the
//!   dense set A and the practical numbers, and desk-scale interval scans
//!   with constructive witnesses.
//!
//! [`verify`] aggregates both halves into named pass/fail check batteries;
//! [`calibration`] pins empirical sum ratios for regression margins.

pub mod bounds;
pub mod calibration;
pub mod constants;
pub mod error;
pub mod pairs;
pub mod rational;
pub mod scan;
pub mod sets;
pub mod sieve;
pub mod sums;
pub mod verify;

pub use bounds::{
    b_exponent, best_bound, beta_exponent, crossover_a, curve_table, envelope, pair_line,
    special_b, verify_margin, BoundSource, LinearBound, PiecewiseBound,
};
pub use constants::{analytic_constants, margin_curve, minimize_nu, mu0, AnalyticConstants};
pub use error::{Error, Result};
pub use pairs::{build_catalog, CatalogOptions, Derivation, ExponentPair, Symbol};
pub use rational::{
    checked_div, decimal_prefix_matches, decimal_string, f64_prefix_matches, floor_u64,
    format_rational, parse_rational, rat, rat_int, rat_u64, to_f64, Rational,
};

/// Default flat cap θ = 517/1648 for the sawtooth sum.
pub fn default_theta() -> Rational {
    rat(517, 1648)
}

/// The earlier record θ = 131/416, kept as a selectable alternative.
pub fn huxley_theta() -> Rational {
    rat(131, 416)
}
