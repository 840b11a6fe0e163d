//! Sawtooth sums, the divisor double-counting identity, and divisor moments
//! over short windows.
//!
//! The sawtooth sum Σ ψ(x/n) over n in [N, 2N] is evaluated in exact rational
//! arithmetic: each term is (x mod n)/n − 1/2, combined over the common
//! denominator lcm(N..2N). Only the reported ratios against x^θ and the
//! exponent-pair bound are floating point.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::pairs::ExponentPair;
use crate::rational::{rat, to_f64, Rational};
use crate::sieve::SieveSegment;

/// ψ(t) = {t} − 1/2 for t ≥ 0, in [−1/2, 1/2).
pub fn sawtooth(t: f64) -> f64 {
    debug_assert!(t >= 0.0);
    t.fract() - 0.5
}

/// Exact ψ(x/n) = (x mod n)/n − 1/2.
pub fn sawtooth_of_quotient(x: u64, n: u64) -> Rational {
    rat((x % n) as i64, n as i64) - rat(1, 2)
}

/// lcm of the integers in [lo, hi].
fn range_lcm(lo: u64, hi: u64) -> BigUint {
    let mut acc = BigUint::one();
    for n in lo..=hi {
        let n_big = BigUint::from(n);
        let g = (&acc % &n_big)
            .to_u64()
            .map_or_else(|| acc.gcd(&n_big), |r| BigUint::from(gcd_u64(r, n)));
        acc = acc / g * n_big;
    }
    acc
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if a == 0 {
        b
    } else {
        gcd_u64(b % a, a)
    }
}

/// Exact value of Σ_{N ≤ n ≤ 2N} ψ(x/n), requiring 1 ≤ N and N² ≤ x.
pub fn psi_sum(x: u64, n_start: u64) -> Result<Rational> {
    if n_start < 1 {
        return Err(Error::OutOfRange("psi sum requires N >= 1".into()));
    }
    if n_start.checked_mul(n_start).map_or(true, |sq| sq > x) {
        return Err(Error::OutOfRange(format!(
            "psi sum requires N <= sqrt(x); N={n_start}, x={x}"
        )));
    }
    let lo = n_start;
    let hi = 2 * n_start;
    let denom = range_lcm(lo, hi);
    // Σ (x mod n)/n = (Σ (x mod n)·(D/n)) / D over the common denominator D
    let mut numer = BigUint::zero();
    for n in lo..=hi {
        numer += BigUint::from(x % n) * (&denom / BigUint::from(n));
    }
    let fractional = Rational::new(BigInt::from(numer), BigInt::from(denom));
    let count = BigInt::from(hi - lo + 1);
    Ok(fractional - Rational::new(count, BigInt::from(2u32)))
}

/// The ψ-sum with its comparison against min(x^θ, x^{k/(k+1)} N^{(l−k)/(k+1)})
/// for a supplied exponent pair.
#[derive(Debug, Clone)]
pub struct PsiSumReport {
    pub x: u64,
    pub n_start: u64,
    pub sum: Rational,
    pub sum_f64: f64,
    pub theta_bound: f64,
    pub pair_bound: f64,
    /// |sum| / min(theta_bound, pair_bound)
    pub ratio: f64,
}

pub fn psi_sum_report(
    x: u64,
    n_start: u64,
    pair: &ExponentPair,
    theta: &Rational,
) -> Result<PsiSumReport> {
    let sum = psi_sum(x, n_start)?;
    let xf = x as f64;
    let nf = n_start as f64;
    let theta_bound = xf.powf(to_f64(theta));
    let k = to_f64(pair.k());
    let l = to_f64(pair.l());
    let pair_bound = xf.powf(k / (k + 1.0)) * nf.powf((l - k) / (k + 1.0));
    let sum_f64 = to_f64(&sum);
    let ratio = sum_f64.abs() / theta_bound.min(pair_bound);
    Ok(PsiSumReport {
        x,
        n_start,
        sum,
        sum_f64,
        theta_bound,
        pair_bound,
        ratio,
    })
}

/// The double-counted divisor sum over d in [x/y, 2x/y] and its window
/// comparison against z/4.
#[derive(Debug, Clone)]
pub struct DivisorWindowSum {
    pub x: u64,
    pub d_lo: u64,
    pub d_hi: u64,
    /// multiples of d in (x − z, x], counted by enumeration
    pub direct: u64,
    /// the same count via Σ (⌊x/d⌋ − ⌊(x−z)/d⌋)
    pub floor_form: u64,
    pub z_over_4: Rational,
    pub meets_quarter_z: bool,
}

/// Computes S = Σ_{x/y ≤ d ≤ 2x/y} #{n ≡ 0 mod d, x − z < n ≤ x} by both
/// routes (enumeration of the window and the floor-difference formula) and
/// compares S with z/4. Requires √(2x) ≤ y ≤ x and 0 < z ≤ x; y and z are
/// exact rationals so the d-range and the window are exact.
pub fn divisor_window_sum(x: u64, y: &Rational, z: &Rational) -> Result<DivisorWindowSum> {
    let xr = crate::rational::rat_u64(x);
    if y * y < rat(2, 1) * &xr || *y > xr {
        return Err(Error::OutOfRange(format!(
            "divisor sum requires sqrt(2x) <= y <= x, got y={y}, x={x}"
        )));
    }
    if *z <= rat(0, 1) || *z > xr {
        return Err(Error::OutOfRange(format!(
            "divisor sum requires 0 < z <= x, got z={z}"
        )));
    }
    // d-range: ceil(x/y) .. floor(2x/y)
    let d_lo = (&xr / y).ceil().to_integer().to_u64().unwrap_or(1).max(1);
    let d_hi = (rat(2, 1) * &xr / y)
        .floor()
        .to_integer()
        .to_u64()
        .unwrap_or(0);

    // window (x − z, x] holds the integers window_lo ..= x
    let cut = &xr - z; // x − z, exact
    let window_lo: u64 = if cut < rat(0, 1) {
        1
    } else {
        (cut.floor().to_integer() + BigInt::one()).to_u64().unwrap()
    };
    let window_lo = window_lo.max(1);

    let mut direct = 0u64;
    let mut floor_form = 0u64;
    for d in d_lo..=d_hi {
        for n in (window_lo..=x).filter(|n| n % d == 0) {
            debug_assert!(n >= window_lo && n <= x);
            direct += 1;
        }
        let hi_quot = x / d;
        let lo_quot = if cut < rat(0, 1) {
            0
        } else {
            ((&cut / crate::rational::rat_u64(d)).floor().to_integer())
                .to_u64()
                .unwrap()
        };
        floor_form += hi_quot - lo_quot;
    }
    let z_over_4 = z / rat(4, 1);
    let meets_quarter_z = crate::rational::rat_u64(direct) >= z_over_4;
    Ok(DivisorWindowSum {
        x,
        d_lo,
        d_hi,
        direct,
        floor_form,
        z_over_4,
        meets_quarter_z,
    })
}

/// Divisor-moment sum over the inclusive window [x − z, x].
#[derive(Debug, Clone, Copy)]
pub struct TauMomentReport {
    pub x: u64,
    pub z: u64,
    pub u: f64,
    pub sum: f64,
    /// z·(ln x)^{2^u − 1}
    pub bound: f64,
    pub ratio: f64,
}

/// Σ_{x−z ≤ n ≤ x} τ(n)^u with τ from the window sieve, and the ratio of the
/// sum against z·(ln x)^{2^u − 1}.
pub fn tau_moment(x: u64, z: u64, u: f64) -> Result<TauMomentReport> {
    if z < 2 || z > x {
        return Err(Error::OutOfRange(format!(
            "tau moment requires 2 <= z <= x, got z={z}, x={x}"
        )));
    }
    let lo = x - z;
    let lo = lo.max(1);
    let seg = SieveSegment::build(lo, x);
    let mut sum = 0.0;
    for n in lo..=x {
        sum += (seg.tau(n) as f64).powf(u);
    }
    let bound = z as f64 * (x as f64).ln().powf(2f64.powf(u) - 1.0);
    Ok(TauMomentReport {
        x,
        z,
        u,
        sum,
        bound,
        ratio: sum / bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat_int, rat_u64};
    use proptest::prelude::*;

    #[test]
    fn sawtooth_values() {
        assert_eq!(sawtooth(1.5), 0.0);
        assert_eq!(sawtooth(3.0), -0.5);
        assert_eq!(sawtooth(0.75), 0.25);
        assert_eq!(sawtooth_of_quotient(3, 2), rat(0, 1));
        assert_eq!(sawtooth_of_quotient(4, 2), rat(-1, 2));
    }

    #[test]
    fn psi_sum_tiny_case() {
        // N = 1, x = 4: ψ(4) + ψ(2) = −1
        assert_eq!(psi_sum(4, 1).unwrap(), rat_int(-1));
    }

    #[test]
    fn psi_sum_matches_termwise_rational_sum() {
        for (x, n) in [(100u64, 7u64), (1000, 13), (12345, 55), (99991, 300)] {
            let direct: Rational = (n..=2 * n)
                .map(|m| sawtooth_of_quotient(x, m))
                .fold(rat_int(0), |acc, t| acc + t);
            assert_eq!(psi_sum(x, n).unwrap(), direct, "x={x}, N={n}");
        }
    }

    #[test]
    fn psi_sum_reversal_invariance() {
        let x = 54321u64;
        let n = 100u64;
        let forward: Rational = (n..=2 * n)
            .map(|m| sawtooth_of_quotient(x, m))
            .fold(rat_int(0), |acc, t| acc + t);
        let backward: Rational = (n..=2 * n)
            .rev()
            .map(|m| sawtooth_of_quotient(x, m))
            .fold(rat_int(0), |acc, t| acc + t);
        assert_eq!(forward, backward);
        assert_eq!(psi_sum(x, n).unwrap(), forward);
    }

    #[test]
    fn psi_sum_rejects_large_n() {
        assert!(psi_sum(100, 11).is_err());
        assert!(psi_sum(100, 10).is_ok());
        assert!(psi_sum(100, 0).is_err());
    }

    #[test]
    fn psi_sum_report_ratio() {
        let pair = ExponentPair::bourgain();
        let theta = crate::default_theta();
        let report = psi_sum_report(10_000, 50, &pair, &theta).unwrap();
        assert!(report.ratio >= 0.0);
        assert!(report.theta_bound > 0.0 && report.pair_bound > 0.0);
        assert_eq!(report.sum_f64, to_f64(&report.sum));
    }

    #[test]
    fn divisor_sum_identity_and_quarter_z() {
        let y = rat_u64(142); // ≥ √(2·10⁴) = 141.42...
        let z = rat_u64(1000);
        let s = divisor_window_sum(10_000, &y, &z).unwrap();
        assert_eq!(s.direct, s.floor_form);
        assert!(s.meets_quarter_z);
        assert!(rat_u64(s.direct) >= s.z_over_4);
    }

    #[test]
    fn divisor_sum_full_window() {
        // z = x: the window is (0, x], so the count is Σ ⌊x/d⌋
        let x = 5000u64;
        let y = rat_u64(120);
        let s = divisor_window_sum(x, &y, &rat_u64(x)).unwrap();
        let expected: u64 = (s.d_lo..=s.d_hi).map(|d| x / d).sum();
        assert_eq!(s.direct, expected);
        assert_eq!(s.floor_form, expected);
    }

    #[test]
    fn divisor_sum_preconditions() {
        assert!(divisor_window_sum(10_000, &rat_u64(100), &rat_u64(10)).is_err()); // y < √(2x)
        assert!(divisor_window_sum(10_000, &rat_u64(20_000), &rat_u64(10)).is_err()); // y > x
        assert!(divisor_window_sum(10_000, &rat_u64(150), &rat_int(0)).is_err());
        // z = 0
    }

    #[test]
    fn tau_moment_u0_counts_the_window() {
        let r = tau_moment(10_000, 100, 0.0).unwrap();
        assert_eq!(r.sum, 101.0); // z + 1 integers in [x − z, x]
    }

    #[test]
    fn tau_moment_u1_matches_direct_tau_sum() {
        let x = 50_000u64;
        let z = 500u64;
        let seg = SieveSegment::build(x - z, x);
        let direct: u64 = (x - z..=x).map(|n| seg.tau(n) as u64).sum();
        let r = tau_moment(x, z, 1.0).unwrap();
        assert_eq!(r.sum, direct as f64);
        assert!(r.ratio > 0.0 && r.ratio < 5.0);
    }

    proptest! {
        // the two routes of the divisor window sum always agree
        #[test]
        fn divisor_sum_routes_agree(x in 200u64..30_000, ynum in 0u64..500, z in 1u64..2000) {
            let y_min = crate::sieve::ceil_sqrt(2 * x);
            let y = rat_u64((y_min + ynum).min(x));
            let z = rat_u64(z.min(x));
            let s = divisor_window_sum(x, &y, &z).unwrap();
            prop_assert_eq!(s.direct, s.floor_form);
        }

        #[test]
        fn exact_sawtooth_matches_float(x in 1u64..100_000, n in 1u64..1000) {
            let exact = to_f64(&sawtooth_of_quotient(x, n));
            let float = sawtooth(x as f64 / n as f64);
            prop_assert!((exact - float).abs() < 1e-9);
        }
    }
}
