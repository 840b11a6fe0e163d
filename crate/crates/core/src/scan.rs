//! Desk-scale interval scans.
//!
//! * [`density_scan`]: for each integer x in a range, count the members of
//!   the set A inside the window [x − x^e, x] and compare with the threshold
//!   x^e·(ln x)^{−w}. The window's lower endpoint is computed in floating
//!   point and then pinned by an exact big-integer power comparison whenever
//!   it lands near an integer, so a half-ulp error can never flip a result.
//!
//! * [`crossing_scan`]: the same test at the real-valued points where the
//!   window's lower endpoint crosses an integer (the only places between
//!   integer x where the count can drop).
//!
//! * [`product_witnesses`]: the constructive two-range product family — for
//!   A-members n in (2x^{1/3}, 3x^{1/3}] and smooth m in [x/n − z/n, x/n],
//!   every product mn lands in [x − z, x] and stays in A.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{rat_u64, Rational};
use crate::sets::{factorize, in_set_a, in_set_a_factored, SetACounter};
use crate::sieve::SieveSegment;

/// Absolute distance from an integer below which a float boundary is
/// re-decided exactly.
const BOUNDARY_GUARD: f64 = 1e-6;

/// Parameters of the density scan: window exponent e (exact and float) and
/// logarithm power w.
#[derive(Debug, Clone)]
pub struct ScanParams {
    /// exact window exponent (numerator/denominator of e)
    pub exponent: Rational,
    pub exponent_f: f64,
    pub log_power: f64,
}

impl ScanParams {
    pub fn new(exponent: Rational, log_power: f64) -> ScanParams {
        let exponent_f = crate::rational::to_f64(&exponent);
        ScanParams {
            exponent,
            exponent_f,
            log_power,
        }
    }

    /// e = 0.4872, w = 9.557.
    pub fn standard() -> ScanParams {
        ScanParams::new(Rational::new(4872.into(), 10000.into()), 9.557)
    }

    /// Exact test of n ≥ x − x^e, i.e. (x − n)^q ≤ x^p for e = p/q.
    fn in_window_exact(&self, x: u64, n: u64) -> bool {
        if n > x {
            return false;
        }
        let p = self
            .exponent
            .numer()
            .to_u32()
            .expect("exponent numerator fits u32");
        let q = self
            .exponent
            .denom()
            .to_u32()
            .expect("exponent denominator fits u32");
        BigUint::from(x - n).pow(q) <= BigUint::from(x).pow(p)
    }

    /// Smallest integer n with n ≥ x − x^e, together with the real lower
    /// endpoint for reporting.
    pub fn window_lo(&self, x: u64) -> (u64, f64) {
        let b = x as f64 - (x as f64).powf(self.exponent_f);
        if b <= 1.0 {
            return (1, b);
        }
        let mut lo = b.ceil() as u64;
        if (b - b.round()).abs() < BOUNDARY_GUARD {
            // boundary sits next to an integer: decide exactly
            while lo > 1 && self.in_window_exact(x, lo - 1) {
                lo -= 1;
            }
            while !self.in_window_exact(x, lo) {
                lo += 1;
            }
        }
        (lo, b)
    }

    /// Threshold x^e·(ln x)^{−w} and the required count max(1, ⌈threshold⌉).
    pub fn threshold(&self, x: f64) -> (f64, u64) {
        let t = x.powf(self.exponent_f) * x.ln().powf(-self.log_power);
        let required = if (t - t.round()).abs() < 1e-9 {
            t.round() as u64
        } else {
            t.ceil() as u64
        };
        (t, required.max(1))
    }
}

/// Per-x record of the density scan.
#[derive(Debug, Clone, Copy)]
pub struct ScanReport {
    pub x: u64,
    pub interval_lo: f64,
    pub count_a: u64,
    pub threshold: f64,
    pub pass: bool,
}

/// Aggregate over a scanned range.
#[derive(Debug, Clone, Default)]
pub struct ScanSummary {
    pub lo: u64,
    pub hi: u64,
    pub checked: u64,
    pub failures: Vec<u64>,
}

impl ScanSummary {
    pub fn largest_failure(&self) -> Option<u64> {
        self.failures.last().copied()
    }
}

/// Block width for scan parallelism.
const SCAN_BLOCK: u64 = 1 << 19;

/// Scans integer x in [lo, hi]; the sink sees every per-x report in order.
pub fn density_scan_with(
    lo: u64,
    hi: u64,
    params: &ScanParams,
    mut sink: impl FnMut(&ScanReport),
) -> Result<ScanSummary> {
    if lo < 3 || lo > hi {
        return Err(Error::OutOfRange(format!(
            "density scan requires 3 <= lo <= hi, got [{lo}, {hi}]"
        )));
    }
    let blocks: Vec<(u64, u64)> = (lo..=hi)
        .step_by(SCAN_BLOCK as usize)
        .map(|b| (b, (b + SCAN_BLOCK - 1).min(hi)))
        .collect();

    // per block: one membership table covering every window in the block
    let block_reports: Vec<Vec<ScanReport>> = blocks
        .par_iter()
        .map(|&(blo, bhi)| {
            let (span_lo, _) = params.window_lo(blo);
            let counter = SetACounter::build(span_lo.min(blo), bhi);
            (blo..=bhi)
                .map(|x| {
                    let (win_lo, interval_lo) = params.window_lo(x);
                    let count_a = counter.count(win_lo, x);
                    let (threshold, required) = params.threshold(x as f64);
                    ScanReport {
                        x,
                        interval_lo,
                        count_a,
                        threshold,
                        pass: count_a >= required,
                    }
                })
                .collect()
        })
        .collect();

    let mut summary = ScanSummary {
        lo,
        hi,
        ..Default::default()
    };
    for reports in &block_reports {
        for report in reports {
            summary.checked += 1;
            if !report.pass {
                summary.failures.push(report.x);
            }
            sink(report);
        }
    }
    Ok(summary)
}

/// Scans integer x in [lo, hi] and returns the failing x values.
pub fn density_scan(lo: u64, hi: u64, params: &ScanParams) -> Result<ScanSummary> {
    density_scan_with(lo, hi, params, |_| {})
}

/// Runs the density test at every boundary-crossing point inside (lo, hi].
///
/// Between consecutive integers the count only changes where ⌈x − x^e⌉
/// increments (one member drops out of the window); immediately after such a
/// crossing the count is minimal and the threshold keeps growing, so these
/// points decide the real-x variant of the scan.
pub fn crossing_scan(lo: u64, hi: u64, params: &ScanParams) -> Result<ScanSummary> {
    if lo < 3 || lo > hi {
        return Err(Error::OutOfRange(format!(
            "crossing scan requires 3 <= lo <= hi, got [{lo}, {hi}]"
        )));
    }
    let (span_lo, _) = params.window_lo(lo);
    let counter = SetACounter::build(span_lo.min(lo), hi);
    let mut summary = ScanSummary {
        lo,
        hi,
        ..Default::default()
    };
    for x0 in (lo + 1)..=hi {
        let (l_prev, _) = params.window_lo(x0 - 1);
        let (l_cur, _) = params.window_lo(x0);
        for dropped in l_prev..l_cur {
            // solve x − x^e = dropped inside (x0 − 1, x0] by bisection
            let target = dropped as f64;
            let f = |x: f64| x - x.powf(params.exponent_f) - target;
            let (mut a, mut b) = ((x0 - 1) as f64, x0 as f64);
            if f(a) > 0.0 || f(b) < 0.0 {
                continue; // crossing resolved to a neighbor by rounding
            }
            for _ in 0..80 {
                let mid = 0.5 * (a + b);
                if f(mid) < 0.0 {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            let x_star = 0.5 * (a + b);
            // just after the crossing the window is [dropped + 1, ⌊x⌋]
            let count_a = counter.count(dropped + 1, x0 - 1);
            let (_, required) = params.threshold(x_star);
            summary.checked += 1;
            if count_a < required {
                summary.failures.push(x0);
            }
        }
    }
    summary.failures.dedup();
    Ok(summary)
}

/// One witness pair and its verified product.
#[derive(Debug, Clone, Copy)]
pub struct WitnessPair {
    pub n: u64,
    pub m: u64,
    pub product: u64,
}

/// Outcome of the constructive product family at (x, z).
#[derive(Debug, Clone)]
pub struct ProductWitnesses {
    pub x: u64,
    pub z: Rational,
    pub pairs: Vec<WitnessPair>,
    pub distinct_products: u64,
    /// largest τ(mn) over the batch
    pub max_tau: u64,
    /// largest number of (n, m) pairs sharing one product
    pub max_multiplicity: u64,
    /// pairs handled by the small-P(m) closure step vs the split m = p·r
    pub case_small_p: u64,
    pub case_large_p: u64,
    /// every inequality of the two-step closure argument held numerically
    pub chain_ok: bool,
}

/// Enumerates A-members n in (2x^{1/3}, 3x^{1/3}] and, for each, the
/// (x/n)^{3/4}-smooth m in [x/n − z/n, x/n]; verifies every product mn lands
/// in [x − z, x] and in A. Errors if any product escapes A (that would
/// contradict the closure property and means a bug).
pub fn product_witnesses(x: u64, z: &Rational) -> Result<ProductWitnesses> {
    if x < 1000 {
        return Err(Error::OutOfRange(format!(
            "product witnesses require x >= 1000, got {x}"
        )));
    }
    if *z <= rat_u64(0) || z * rat_u64(2) > rat_u64(x) {
        return Err(Error::OutOfRange(format!(
            "product witnesses require 0 < z <= x/2, got z={z}"
        )));
    }

    // n-range: 8x < n³ ≤ 27x, exactly
    let cube = |n: u64| (n as u128).pow(3);
    let mut n_lo = (8.0 * x as f64).cbrt() as u64;
    while cube(n_lo) <= 8 * x as u128 {
        n_lo += 1;
    }
    while n_lo > 1 && cube(n_lo - 1) > 8 * x as u128 {
        n_lo -= 1;
    }
    let mut n_hi = (27.0 * x as f64).cbrt() as u64 + 1;
    while cube(n_hi) > 27 * x as u128 {
        n_hi -= 1;
    }

    let m_table_hi = x / n_lo.max(1);
    let m_table = SieveSegment::build(1, m_table_hi.max(2));
    let x_rat = rat_u64(x);
    let window_lo_rat = &x_rat - z; // x − z, exact

    let mut pairs = Vec::new();
    let mut chain_ok = true;
    let mut case_small_p = 0u64;
    let mut case_large_p = 0u64;

    for n in n_lo..=n_hi {
        if !in_set_a(n) {
            continue;
        }
        let m_hi = x / n;
        // smallest m with m·n ≥ x − z
        let m_lo_rat = (&window_lo_rat / rat_u64(n)).ceil();
        let m_lo = m_lo_rat.to_integer().to_u64().unwrap_or(1).max(1);
        for m in m_lo..=m_hi {
            // P(m)^4 · n^3 ≤ x^3 is the exact (x/n)^{3/4}-smoothness test
            let p = m_table.lpf(m);
            if (p as u128).pow(4) * cube(n) > cube(x) {
                continue;
            }
            let product = m * n;
            debug_assert!(product <= x);
            if rat_u64(product) < window_lo_rat {
                continue; // defensive; m_lo already enforces this
            }
            let fact = factorize(n).merge(&factorize(m));
            if !in_set_a_factored(&fact) {
                return Err(Error::OutOfRange(format!(
                    "closure violated: {m}·{n} = {product} escaped the set"
                )));
            }
            // replay the closure argument's case split on p = P(m)
            if (p as u128).pow(3) <= x as u128 {
                case_small_p += 1;
                chain_ok &= p <= n;
            } else {
                case_large_p += 1;
                let r = m / p;
                chain_ok &= (r as u128).pow(3) < x as u128;
                chain_ok &= in_set_a_factored(&factorize(r).merge(&factorize(n)));
                // p² ≤ x·2^{−3/2} ⟺ 8p⁴ ≤ x², and then p < rn
                chain_ok &= 8 * (p as u128).pow(4) <= (x as u128).pow(2);
                chain_ok &= (p as u128) < (r as u128) * (n as u128);
            }
            pairs.push(WitnessPair { n, m, product });
        }
    }

    let mut products: Vec<u64> = pairs.iter().map(|p| p.product).collect();
    products.sort_unstable();
    let mut distinct = 0u64;
    let mut max_multiplicity = 0u64;
    let mut max_tau = 0u64;
    let mut i = 0;
    while i < products.len() {
        let j = products[i..].partition_point(|&v| v == products[i]) + i;
        distinct += 1;
        max_multiplicity = max_multiplicity.max((j - i) as u64);
        let (_, tau) = crate::sets::omega_tau(products[i]);
        max_tau = max_tau.max(tau);
        i = j;
    }

    Ok(ProductWitnesses {
        x,
        z: z.clone(),
        pairs,
        distinct_products: distinct,
        max_tau,
        max_multiplicity,
        case_small_p,
        case_large_p,
        chain_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn window_lo_small_values() {
        let params = ScanParams::standard();
        // x = 3: 3 − 3^0.4872 ≈ 1.292, so the window starts at 2
        assert_eq!(params.window_lo(3).0, 2);
        // x = 1e6: the window width 10⁶ᵉ is ≈ 837.9
        let (lo, b) = params.window_lo(1_000_000);
        assert_eq!(lo, 999_163);
        assert!((b - 999_162.08).abs() < 0.1);
    }

    #[test]
    fn exact_window_membership_agrees_with_float_far_from_boundaries() {
        let params = ScanParams::standard();
        for x in [10u64, 504, 1000, 99_991] {
            let (lo, b) = params.window_lo(x);
            assert!(params.in_window_exact(x, lo));
            if lo > 1 {
                assert!(!params.in_window_exact(x, lo - 1));
            }
            assert!(lo as f64 >= b);
        }
    }

    #[test]
    fn threshold_required_floor_is_one() {
        let params = ScanParams::standard();
        let (t, required) = params.threshold(3.0);
        assert!(t < 1.0);
        assert_eq!(required, 1);
    }

    #[test]
    fn scan_small_range_has_early_failures_only() {
        let params = ScanParams::standard();
        let summary = density_scan(3, 5000, &params).unwrap();
        assert_eq!(summary.checked, 4998);
        assert!(!summary.failures.is_empty());
        assert!(summary.largest_failure().unwrap() < 504);
    }

    #[test]
    fn scan_reports_are_consistent() {
        let params = ScanParams::standard();
        let mut rows = Vec::new();
        let summary = density_scan_with(3, 2000, &params, |r| rows.push(*r)).unwrap();
        assert_eq!(rows.len() as u64, summary.checked);
        for r in &rows {
            let (_, required) = params.threshold(r.x as f64);
            assert_eq!(r.pass, r.count_a >= required);
            // monotone window: if the lower endpoint kept its ceiling, the
            // count changes by at most one from the previous x
        }
        for w in rows.windows(2) {
            let (prev, cur) = (&w[0], &w[1]);
            let (lo_prev, _) = params.window_lo(prev.x);
            let (lo_cur, _) = params.window_lo(cur.x);
            if lo_prev == lo_cur {
                assert!(cur.count_a >= prev.count_a);
                assert!(cur.count_a - prev.count_a <= 1);
            }
        }
    }

    #[test]
    fn scan_is_reproducible_across_block_partitions() {
        let params = ScanParams::standard();
        let one = density_scan(3, 3000, &params).unwrap();
        // a different route: per-x pointwise counting
        let counter = SetACounter::build(1, 3000);
        let mut failures = Vec::new();
        for x in 3..=3000u64 {
            let (lo, _) = params.window_lo(x);
            let count = counter.count(lo, x);
            let (_, required) = params.threshold(x as f64);
            if count < required {
                failures.push(x);
            }
        }
        assert_eq!(one.failures, failures);
    }

    #[test]
    fn crossing_scan_runs_clean_above_504() {
        let params = ScanParams::standard();
        let summary = crossing_scan(504, 20_000, &params).unwrap();
        assert!(summary.checked > 0);
        assert!(
            summary.failures.is_empty(),
            "failures: {:?}",
            summary.failures
        );
    }

    #[test]
    fn product_witnesses_at_desk_scale() {
        let w = product_witnesses(100_000, &rat_u64(1000)).unwrap();
        assert!(!w.pairs.is_empty());
        assert!(w.chain_ok);
        assert!(w.distinct_products >= 1);
        // every product verified against the window exactly
        let x = 100_000u64;
        for pair in &w.pairs {
            assert!(pair.product <= x);
            assert!(pair.product >= x - 1000);
            assert_eq!(pair.product, pair.n * pair.m);
            assert!(in_set_a(pair.product));
        }
        // pigeonhole: distinct ≥ pairs / max τ(mn)
        assert!(w.distinct_products >= w.pairs.len() as u64 / w.max_tau.max(1));
        assert!(w.max_multiplicity <= w.max_tau);
        assert!(w.case_small_p + w.case_large_p == w.pairs.len() as u64);
    }

    #[test]
    fn product_witness_preconditions() {
        assert!(product_witnesses(100, &rat_u64(10)).is_err());
        assert!(product_witnesses(100_000, &rat_u64(60_000)).is_err());
        assert!(product_witnesses(100_000, &rat(0, 1)).is_err());
    }
}
