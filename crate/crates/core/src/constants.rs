//! Analytic constants of the interval machinery.
//!
//! The logarithmic losses in the interval counts are governed by two derived
//! constants: ν, the minimum of g(u) = (2^u − 1)/(u − 1) over u > 1, and
//! μ₀ = 2ν + 2 + C·ln 2 with C = (1 − e^{−γ})^{−1}. Everything here is plain
//! double precision; exact rational code paths never consume these values.

use std::sync::OnceLock;

use crate::rational::{rat, Rational};

/// Euler–Mascheroni constant γ to full double precision.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Objective whose minimum over u > 1 defines ν: g(u) = (2^u − 1)/(u − 1).
pub fn nu_objective(u: f64) -> f64 {
    (2f64.powf(u) - 1.0) / (u - 1.0)
}

/// Golden-section search for the minimum of a strictly convex function.
fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let u = 0.5 * (lo + hi);
    (u, f(u))
}

/// Computes (ν, u*): the minimum value of g(u) = (2^u − 1)/(u − 1) on (1, ∞)
/// and its minimizer, to well below 1e−8 absolute tolerance on u.
///
/// g is strictly convex on (1, ∞) and blows up at both ends of [1.0001, 16],
/// so the bracket is safe.
pub fn minimize_nu() -> (f64, f64) {
    let (u_star, nu) = golden_min(nu_objective, 1.0001, 16.0, 1e-12);
    (nu, u_star)
}

/// The derived constants, computed once and cached.
#[derive(Debug, Clone, Copy)]
pub struct AnalyticConstants {
    /// ν = min_{u>1} (2^u − 1)/(u − 1) ≈ 2.9882
    pub nu: f64,
    /// minimizer u* ≈ 2.1080
    pub u_star: f64,
    /// Euler's γ ≈ 0.5772
    pub euler_gamma: f64,
    /// C = (1 − e^{−γ})^{−1} ≈ 2.280
    pub c_const: f64,
    /// μ₀ = 2ν + 2 + C·ln 2 ≈ 9.5569
    pub mu0: f64,
}

impl AnalyticConstants {
    fn compute() -> Self {
        let (nu, u_star) = minimize_nu();
        let c_const = 1.0 / (1.0 - (-EULER_GAMMA).exp());
        let mu0 = 2.0 * nu + 2.0 + c_const * std::f64::consts::LN_2;
        AnalyticConstants {
            nu,
            u_star,
            euler_gamma: EULER_GAMMA,
            c_const,
            mu0,
        }
    }
}

pub fn analytic_constants() -> &'static AnalyticConstants {
    static CACHE: OnceLock<AnalyticConstants> = OnceLock::new();
    CACHE.get_or_init(AnalyticConstants::compute)
}

/// μ₀ = 2ν + 2 + C·ln 2, composed from the cached constants.
pub fn mu0() -> f64 {
    analytic_constants().mu0
}

/// Exact concave comparison curve 1 − a − a(1−a)³ − (108/25)·a(1−a)⁵.
///
/// The decimal coefficient 4.32 is carried as the exact rational 108/25 so
/// that envelope comparisons against this curve stay in exact arithmetic.
pub fn margin_curve(a: &Rational) -> Rational {
    let one = rat(1, 1);
    let w = &one - a; // 1 − a
    let w3 = &w * &w * &w;
    let w5 = &w3 * &w * &w;
    &w - a * &w3 - rat(108, 25) * a * &w5
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{f64_prefix_matches, rat_int};
    use proptest::prelude::*;

    #[test]
    fn objective_at_two_is_three() {
        assert_eq!(nu_objective(2.0), 3.0);
    }

    #[test]
    fn nu_and_minimizer_match_known_prefixes() {
        let c = analytic_constants();
        assert!(f64_prefix_matches(c.nu, "2.9882"), "nu = {}", c.nu);
        assert!(f64_prefix_matches(c.u_star, "2.1080"), "u* = {}", c.u_star);
    }

    #[test]
    fn local_minimum_in_both_directions() {
        let c = analytic_constants();
        assert!(nu_objective(c.u_star + 1e-3) > c.nu);
        assert!(nu_objective(c.u_star - 1e-3) > c.nu);
    }

    #[test]
    fn mu0_and_c_match_known_prefixes() {
        let c = analytic_constants();
        assert!(f64_prefix_matches(c.c_const, "2.280"), "C = {}", c.c_const);
        assert!(f64_prefix_matches(c.mu0, "9.5569"), "mu0 = {}", c.mu0);
    }

    #[test]
    fn mu0_is_composed_exactly_from_the_stored_fields() {
        let c = analytic_constants();
        assert_eq!(c.mu0, 2.0 * c.nu + 2.0 + c.c_const * std::f64::consts::LN_2);
        assert_eq!(mu0(), c.mu0);
    }

    #[test]
    fn mu0_sensitivity_to_nu() {
        // regression guard: substituting ν = 3 moves the total to ≈ 9.5805
        let c = analytic_constants();
        let perturbed = 2.0 * 3.0 + 2.0 + c.c_const * std::f64::consts::LN_2;
        assert!(f64_prefix_matches(perturbed, "9.5805"), "{perturbed}");
    }

    #[test]
    fn margin_curve_endpoints() {
        assert_eq!(margin_curve(&rat_int(1)), rat_int(0));
        // 1/2 − 1/16 − (108/25)/64 = 592/1600 = 37/100, evaluated exactly
        let by_hand = rat(1, 2) - rat(1, 16) - rat(108, 25) * rat(1, 64);
        assert_eq!(by_hand, rat(37, 100));
        assert_eq!(margin_curve(&rat(1, 2)), rat(37, 100));
    }

    #[test]
    fn margin_curve_is_discretely_concave_on_upper_half() {
        // second differences on a step-1/1000 grid over (1/2, 1) are ≤ 0
        let step = rat(1, 1000);
        let mut a = rat(1, 2);
        let mut values = Vec::new();
        while a <= rat_int(1) {
            values.push(margin_curve(&a));
            a += step.clone();
        }
        for w in values.windows(3) {
            let second = &w[2] - rat_int(2) * &w[1] + &w[0];
            assert!(second <= rat_int(0), "second difference positive");
        }
    }

    proptest! {
        // every sampled u > 1 sits above the computed minimum
        #[test]
        fn sampled_objective_dominates_nu(u in 1.000_001f64..50.0) {
            let c = analytic_constants();
            prop_assert!(nu_objective(u) >= c.nu - 1e-8);
        }
    }
}
