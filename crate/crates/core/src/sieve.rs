//! Segmented largest-prime-factor sieving and smooth-number counts.
//!
//! A window [lo, hi] is factored by dividing out every base prime up to
//! √hi from each element; whatever remains is either 1 or a single prime
//! cofactor above √hi. That yields exact P(n), τ(n), ω(n) and Ω(n) for every
//! n in the window without ever factoring integers one by one.
//!
//! Smoothness cutoffs are integers: a real cutoff y ≥ 1 classifies n as
//! smooth iff P(n) ≤ ⌊y⌋. Callers evaluate their real thresholds (√x, x^a,
//! √(2x), ...) with the exact helpers in this module where possible.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Maximum window width a single segment may hold.
pub const MAX_SEGMENT: u64 = 1 << 26;

/// Default segment width for chunked counting.
pub const DEFAULT_SEGMENT: u64 = 1 << 20;

/// Simple sieve of Eratosthenes; returns all primes ≤ limit.
pub fn base_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

/// Integer square root: largest r with r² ≤ n.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).map_or(true, |sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Smallest r with r² ≥ n.
pub fn ceil_sqrt(n: u64) -> u64 {
    let r = isqrt(n);
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// Largest r with r⁴ ≤ n (exact ⌊n^{1/4}⌋).
pub fn floor_fourth_root(n: u64) -> u64 {
    isqrt(isqrt(n))
}

/// Exact ⌊x^(p/q)⌋ for a rational exponent p/q in (0, 1]: a float estimate
/// fixed by the big-integer comparison t^q ≤ x^p.
pub fn floor_pow(x: u64, exponent: &crate::rational::Rational) -> u64 {
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;
    if x == 0 {
        return 0;
    }
    let p = exponent
        .numer()
        .to_u32()
        .expect("exponent numerator fits u32");
    let q = exponent
        .denom()
        .to_u32()
        .expect("exponent denominator fits u32");
    assert!(p >= 1 && p <= q, "exponent must lie in (0, 1]");
    let xp = BigUint::from(x).pow(p);
    let mut t = (x as f64).powf(p as f64 / q as f64).floor().max(0.0) as u64;
    while BigUint::from(t + 1).pow(q) <= xp {
        t += 1;
    }
    while t > 0 && BigUint::from(t).pow(q) > xp {
        t -= 1;
    }
    t
}

/// Largest prime factor by trial division; P(1) = 1 by convention.
pub fn largest_prime_factor(n: u64) -> u64 {
    assert!(n >= 1, "P(n) needs n >= 1");
    let mut n = n;
    let mut largest = 1;
    while n % 2 == 0 {
        largest = 2;
        n /= 2;
    }
    let mut d = 3;
    while d * d <= n {
        while n % d == 0 {
            largest = d;
            n /= d;
        }
        d += 2;
    }
    if n > 1 {
        largest = n;
    }
    largest
}

/// Exact multiplicative data for every integer of a window [lo, hi].
#[derive(Debug, Clone)]
pub struct SieveSegment {
    lo: u64,
    lpf: Vec<u64>,
    tau: Vec<u32>,
    omega: Vec<u32>,
    big_omega: Vec<u32>,
}

impl SieveSegment {
    /// Factors the whole window; `hi − lo` must stay below [`MAX_SEGMENT`].
    pub fn build(lo: u64, hi: u64) -> SieveSegment {
        assert!(lo >= 1 && lo <= hi, "invalid window [{lo}, {hi}]");
        assert!(hi - lo < MAX_SEGMENT, "window wider than MAX_SEGMENT");
        let len = (hi - lo + 1) as usize;
        let mut rem: Vec<u64> = (lo..=hi).collect();
        let mut lpf = vec![1u64; len];
        let mut tau = vec![1u32; len];
        let mut omega = vec![0u32; len];
        let mut big_omega = vec![0u32; len];
        for p in base_primes(isqrt(hi)) {
            let start = lo.div_ceil(p) * p;
            let mut n = start;
            while n <= hi {
                let i = (n - lo) as usize;
                let mut e = 0u32;
                while rem[i] % p == 0 {
                    rem[i] /= p;
                    e += 1;
                }
                debug_assert!(e > 0);
                lpf[i] = p;
                tau[i] *= e + 1;
                omega[i] += 1;
                big_omega[i] += e;
                n += p;
            }
        }
        for i in 0..len {
            if rem[i] > 1 {
                // single prime cofactor above sqrt(hi)
                lpf[i] = rem[i];
                tau[i] *= 2;
                omega[i] += 1;
                big_omega[i] += 1;
            }
        }
        SieveSegment {
            lo,
            lpf,
            tau,
            omega,
            big_omega,
        }
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.lo + self.lpf.len() as u64 - 1
    }

    fn idx(&self, n: u64) -> usize {
        debug_assert!(n >= self.lo && n <= self.hi(), "n={n} outside segment");
        (n - self.lo) as usize
    }

    /// Largest prime factor of n (1 for n = 1).
    pub fn lpf(&self, n: u64) -> u64 {
        self.lpf[self.idx(n)]
    }

    pub fn tau(&self, n: u64) -> u32 {
        self.tau[self.idx(n)]
    }

    pub fn omega(&self, n: u64) -> u32 {
        self.omega[self.idx(n)]
    }

    pub fn big_omega(&self, n: u64) -> u32 {
        self.big_omega[self.idx(n)]
    }
}

/// Count of y-smooth integers in [lo, hi] for an integer cutoff.
///
/// When the cutoff is below √hi the window is cleared of its small prime
/// factors and an element is smooth iff nothing remains; otherwise the
/// largest-prime-factor route is used.
pub fn count_smooth(lo: u64, hi: u64, ycut: u64) -> u64 {
    assert!(lo >= 1 && lo <= hi);
    if ycut == 0 {
        return 0;
    }
    let root = isqrt(hi);
    if ycut >= root {
        let seg = SieveSegment::build(lo, hi);
        (lo..=hi).filter(|&n| seg.lpf(n) <= ycut).count() as u64
    } else {
        let len = (hi - lo + 1) as usize;
        let mut rem: Vec<u64> = (lo..=hi).collect();
        for p in base_primes(ycut) {
            let mut n = lo.div_ceil(p) * p;
            while n <= hi {
                let i = (n - lo) as usize;
                while rem[i] % p == 0 {
                    rem[i] /= p;
                }
                n += p;
            }
        }
        (0..len).filter(|&i| rem[i] == 1).count() as u64
    }
}

/// The count Ψ(x, y) of y-smooth integers up to x.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmoothCount {
    pub x: u64,
    /// integer smoothness cutoff ⌊y⌋
    pub ycut: u64,
    pub count: u64,
}

/// Ψ(x, y) for an integer cutoff ycut = ⌊y⌋, by parallel segmented sieving.
pub fn psi_count(x: u64, ycut: u64) -> Result<SmoothCount> {
    psi_count_with_segment(x, ycut, DEFAULT_SEGMENT)
}

/// Ψ(x, y) with an explicit segment width (the partition never changes the
/// count; segments merge by plain addition).
pub fn psi_count_with_segment(x: u64, ycut: u64, segment: u64) -> Result<SmoothCount> {
    if x < 1 {
        return Err(Error::OutOfRange("psi requires x >= 1".into()));
    }
    if ycut < 1 {
        return Err(Error::OutOfRange("psi requires y >= 1".into()));
    }
    let segment = segment.clamp(1, MAX_SEGMENT - 1);
    let ranges: Vec<(u64, u64)> = (1..=x)
        .step_by(segment as usize)
        .map(|lo| (lo, (lo + segment - 1).min(x)))
        .collect();
    let count = ranges
        .into_par_iter()
        .map(|(lo, hi)| count_smooth(lo, hi, ycut))
        .sum();
    Ok(SmoothCount { x, ycut, count })
}

/// Count of y-smooth integers in the window (x − z, x], sieving only that
/// window. Real-valued z: the window holds the integers ⌊x − z⌋ + 1 ..= x.
pub fn interval_smooth_count(x: u64, z: f64, ycut: u64) -> Result<u64> {
    if x < 1 {
        return Err(Error::OutOfRange("interval count requires x >= 1".into()));
    }
    if !(z > 0.0) || z > x as f64 {
        return Err(Error::OutOfRange(format!(
            "interval count requires 0 < z <= x, got z={z}"
        )));
    }
    if ycut < 1 {
        return Err(Error::OutOfRange("interval count requires y >= 1".into()));
    }
    let lo = (x as f64 - z).floor().max(0.0) as u64 + 1;
    let mut total = 0;
    let mut cur = lo;
    while cur <= x {
        let hi = (cur + DEFAULT_SEGMENT - 1).min(x);
        total += count_smooth(cur, hi, ycut);
        cur = hi + 1;
    }
    Ok(total)
}

/// A smooth number found in the window (x − 3x^{1/4}, x].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareGapWitness {
    /// value m² − h² with m = ⌈√x⌉ and the smallest admissible h
    DifferenceOfSquares { m: u64, h: u64, value: u64 },
    /// found by directly sieving the window (small x where the difference
    /// of squares misses)
    WindowScan { value: u64 },
}

impl SquareGapWitness {
    pub fn value(&self) -> u64 {
        match *self {
            SquareGapWitness::DifferenceOfSquares { value, .. } => value,
            SquareGapWitness::WindowScan { value } => value,
        }
    }
}

/// Membership test for the window (x − 3x^{1/4}, x], exact:
/// v ≤ x and (x − v)⁴ < 81x.
pub fn in_square_gap_window(x: u64, v: u64) -> bool {
    if v > x || v < 1 {
        return false;
    }
    let d = (x - v) as u128;
    d * d * d * d < 81 * x as u128
}

/// Exact √(2x)-smoothness test: P(v)² ≤ 2x.
pub fn is_sqrt2x_smooth(x: u64, v: u64, lpf_of: impl Fn(u64) -> u64) -> bool {
    let p = lpf_of(v) as u128;
    p * p <= 2 * x as u128
}

/// Finds a √(2x)-smooth number in (x − 3x^{1/4}, x].
///
/// First tries values m² − h² with m = ⌈√x⌉ and h = 0, 1, 2, ...; if none of
/// them lands in the window with P(m² − h²) ≤ √(2x) (which happens for some
/// small x), falls back to sieving the window directly. An error means the
/// window genuinely contains no such number.
pub fn square_gap_witness(x: u64) -> Result<SquareGapWitness> {
    assert!(x >= 1);
    let m = ceil_sqrt(x);
    // h must satisfy m² − h² ≤ x, i.e. h² ≥ m² − x
    let h0 = ceil_sqrt(m * m - x);
    let mut h = h0;
    while h < m {
        let value = m * m - h * h;
        if !in_square_gap_window(x, value) {
            break; // values decrease with h; once below the window, stop
        }
        if is_sqrt2x_smooth(x, value, largest_prime_factor) {
            return Ok(SquareGapWitness::DifferenceOfSquares { m, h, value });
        }
        h += 1;
    }
    // direct window scan
    let lo = (1..=x)
        .rev()
        .take_while(|&v| in_square_gap_window(x, v))
        .last()
        .unwrap_or(x);
    let seg = SieveSegment::build(lo, x);
    for v in (lo..=x).rev() {
        if is_sqrt2x_smooth(x, v, |n| seg.lpf(n)) {
            return Ok(SquareGapWitness::WindowScan { value: v });
        }
    }
    Err(Error::NoWitness(x))
}

/// Independent re-verification of a witness: window membership, smoothness
/// and (for the constructive form) the difference-of-squares shape.
pub fn verify_square_gap_witness(x: u64, w: &SquareGapWitness) -> bool {
    let v = w.value();
    if !in_square_gap_window(x, v) {
        return false;
    }
    if !is_sqrt2x_smooth(x, v, largest_prime_factor) {
        return false;
    }
    match *w {
        SquareGapWitness::DifferenceOfSquares { m, h, value } => {
            m == ceil_sqrt(x) && h < m && m * m - h * h == value
        }
        SquareGapWitness::WindowScan { .. } => true,
    }
}

/// Scan result over a range of x values.
#[derive(Debug, Clone, Default)]
pub struct SquareGapScan {
    pub checked: u64,
    pub construction_hits: u64,
    pub window_scan_hits: u64,
    /// largest x that needed the window fallback, if any
    pub largest_fallback: Option<u64>,
    pub failures: Vec<u64>,
}

/// Runs [`square_gap_witness`] for every x in [lo, hi], verifying each
/// witness independently of the search loop.
pub fn square_gap_scan(lo: u64, hi: u64) -> SquareGapScan {
    assert!(lo >= 1 && lo <= hi);
    // shared largest-prime-factor table for all candidate factors m ± h
    let table_hi = 2 * ceil_sqrt(hi) + 2;
    let seg = SieveSegment::build(1, table_hi);

    let blocks: Vec<(u64, u64)> = (lo..=hi)
        .step_by(DEFAULT_SEGMENT as usize)
        .map(|b| (b, (b + DEFAULT_SEGMENT - 1).min(hi)))
        .collect();

    let partials: Vec<SquareGapScan> = blocks
        .into_par_iter()
        .map(|(blo, bhi)| {
            let mut part = SquareGapScan::default();
            for x in blo..=bhi {
                part.checked += 1;
                match square_gap_witness_with_table(x, &seg) {
                    Ok(w @ SquareGapWitness::DifferenceOfSquares { .. })
                        if verify_square_gap_witness(x, &w) =>
                    {
                        part.construction_hits += 1;
                    }
                    Ok(w @ SquareGapWitness::WindowScan { .. })
                        if verify_square_gap_witness(x, &w) =>
                    {
                        part.window_scan_hits += 1;
                        part.largest_fallback = Some(x);
                    }
                    _ => part.failures.push(x),
                }
            }
            part
        })
        .collect();

    let mut total = SquareGapScan::default();
    for part in partials {
        total.checked += part.checked;
        total.construction_hits += part.construction_hits;
        total.window_scan_hits += part.window_scan_hits;
        total.largest_fallback = total.largest_fallback.max(part.largest_fallback);
        total.failures.extend(part.failures);
    }
    total.failures.sort_unstable();
    total
}

/// [`square_gap_witness`] against a prebuilt factor table covering m + h.
fn square_gap_witness_with_table(x: u64, seg: &SieveSegment) -> Result<SquareGapWitness> {
    let m = ceil_sqrt(x);
    let h0 = ceil_sqrt(m * m - x);
    let mut h = h0;
    while h < m {
        let value = m * m - h * h;
        if !in_square_gap_window(x, value) {
            break;
        }
        // P(m² − h²) = max(P(m − h), P(m + h))
        let p = seg.lpf(m - h).max(seg.lpf(m + h));
        if (p as u128) * (p as u128) <= 2 * x as u128 {
            return Ok(SquareGapWitness::DifferenceOfSquares { m, h, value });
        }
        h += 1;
    }
    let mut lo = x;
    while lo > 1 && in_square_gap_window(x, lo - 1) {
        lo -= 1;
    }
    for v in (lo..=x).rev() {
        let p = if v <= seg.hi() {
            seg.lpf(v)
        } else {
            largest_prime_factor(v)
        };
        if (p as u128) * (p as u128) <= 2 * x as u128 {
            return Ok(SquareGapWitness::WindowScan { value: v });
        }
    }
    Err(Error::NoWitness(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_lpf(n: u64) -> u64 {
        // independent trial-division oracle
        let mut best = 1;
        let mut n = n;
        let mut d = 2;
        while d * d <= n {
            while n % d == 0 {
                best = d;
                n /= d;
            }
            d += 1;
        }
        if n > 1 {
            best = n;
        }
        best
    }

    #[test]
    fn lpf_examples() {
        assert_eq!(largest_prime_factor(1), 1);
        assert_eq!(largest_prime_factor(100), 5);
        assert_eq!(largest_prime_factor(97), 97);
    }

    #[test]
    fn isqrt_and_fourth_root_are_exact() {
        for n in 0..2000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
        assert_eq!(isqrt(u64::MAX), (1u64 << 32) - 1);
        assert_eq!(ceil_sqrt(16), 4);
        assert_eq!(ceil_sqrt(17), 5);
        assert_eq!(floor_fourth_root(81), 3);
        assert_eq!(floor_fourth_root(80), 2);
    }

    #[test]
    fn segment_matches_naive_factorization() {
        let seg = SieveSegment::build(1, 3000);
        for n in 1..=3000u64 {
            assert_eq!(seg.lpf(n), naive_lpf(n), "lpf({n})");
        }
        // a window away from 1
        let seg = SieveSegment::build(999_950, 1_000_050);
        for n in 999_950..=1_000_050u64 {
            assert_eq!(seg.lpf(n), naive_lpf(n), "lpf({n})");
        }
    }

    #[test]
    fn segment_lpf_divides_and_detects_primes() {
        let seg = SieveSegment::build(2, 5000);
        for n in 2..=5000u64 {
            let p = seg.lpf(n);
            assert_eq!(n % p, 0);
            assert_eq!(naive_lpf(p), p, "lpf must be prime");
            assert_eq!(
                p == n,
                naive_lpf(n) == n && n > 1,
                "primality via lpf at {n}"
            );
        }
    }

    #[test]
    fn segment_tau_and_omega() {
        let seg = SieveSegment::build(1, 1000);
        assert_eq!(seg.tau(1), 1);
        assert_eq!(seg.omega(1), 0);
        assert_eq!(seg.big_omega(1), 0);
        assert_eq!(seg.tau(12), 6);
        assert_eq!(seg.big_omega(12), 3);
        assert_eq!(seg.omega(12), 2);
        for p in [2u64, 3, 5, 97, 991] {
            assert_eq!(seg.tau(p), 2, "tau of prime {p}");
        }
    }

    #[test]
    fn psi_trivial_cases() {
        assert_eq!(psi_count(100, 100).unwrap().count, 100);
        assert_eq!(psi_count(100, 1).unwrap().count, 1);
        assert!(psi_count(100, 0).is_err());
        assert!(psi_count(0, 5).is_err());
    }

    #[test]
    fn psi_against_naive_oracle() {
        let naive = |x: u64, y: u64| (1..=x).filter(|&n| naive_lpf(n) <= y).count() as u64;
        assert_eq!(psi_count(100, 10).unwrap().count, naive(100, 10));
        assert_eq!(psi_count(1000, 7).unwrap().count, naive(1000, 7));
        assert_eq!(psi_count(5000, 31).unwrap().count, naive(5000, 31));
    }

    #[test]
    fn psi_independent_of_segmentation() {
        for segment in [7, 64, 1000, 4096] {
            assert_eq!(
                psi_count_with_segment(20_000, 13, segment).unwrap().count,
                psi_count(20_000, 13).unwrap().count
            );
        }
    }

    #[test]
    fn powers_of_two_are_the_only_2_smooth_numbers() {
        for x in [1u64, 2, 3, 16, 100, 65_536] {
            let expected = 64 - x.leading_zeros() as u64; // ⌊log2 x⌋ + 1
            assert_eq!(psi_count(x, 2).unwrap().count, expected, "x={x}");
        }
    }

    #[test]
    fn interval_count_agrees_with_difference_of_globals() {
        let x = 100_000u64;
        let z = 1234.0;
        let y = 97;
        let window = interval_smooth_count(x, z, y).unwrap();
        let hi = psi_count(x, y).unwrap().count;
        let lo = psi_count((x as f64 - z).floor() as u64, y).unwrap().count;
        assert_eq!(window, hi - lo);
        // full interval is the global count
        assert_eq!(
            interval_smooth_count(1000, 1000.0, 13).unwrap(),
            psi_count(1000, 13).unwrap().count
        );
    }

    #[test]
    fn explicit_short_window_at_100() {
        // (100 − 9.49, 100] contains a √200-smooth number
        let y = isqrt(200);
        assert!(interval_smooth_count(100, 9.49, y).unwrap() >= 1);
    }

    #[test]
    fn square_gap_witness_at_100() {
        let w = square_gap_witness(100).unwrap();
        assert_eq!(
            w,
            SquareGapWitness::DifferenceOfSquares {
                m: 10,
                h: 0,
                value: 100
            }
        );
        assert!(verify_square_gap_witness(100, &w));
    }

    #[test]
    fn square_gap_small_x_need_the_fallback() {
        // at x = 2 the construction yields {4, 3, 0}, none admissible, but the
        // window (2 − 3·2^{1/4}, 2] still holds the smooth numbers 1 and 2
        let w = square_gap_witness(2).unwrap();
        assert!(matches!(w, SquareGapWitness::WindowScan { .. }));
        assert!(verify_square_gap_witness(2, &w));
        for x in 1..=2000 {
            let w = square_gap_witness(x).unwrap();
            assert!(verify_square_gap_witness(x, &w), "witness fails at x={x}");
        }
    }

    #[test]
    fn square_gap_scan_small_range() {
        let scan = square_gap_scan(1, 5000);
        assert_eq!(scan.checked, 5000);
        assert!(scan.failures.is_empty());
        assert_eq!(scan.construction_hits + scan.window_scan_hits, 5000);
        assert!(scan.window_scan_hits > 0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn psi_is_monotone(x in 1u64..3000, y in 1u64..100) {
            let base = psi_count(x, y).unwrap().count;
            prop_assert!(psi_count(x + 1, y).unwrap().count >= base);
            prop_assert!(psi_count(x, y + 1).unwrap().count >= base);
        }

        #[test]
        fn window_equals_global_difference(x in 100u64..20_000, z in 1u64..5_000, y in 2u64..200) {
            let z = z.min(x) as f64;
            let window = interval_smooth_count(x, z, y).unwrap();
            let hi = psi_count(x, y).unwrap().count;
            let lo_x = (x as f64 - z).floor() as u64;
            let lo = if lo_x >= 1 { psi_count(lo_x, y).unwrap().count } else { 0 };
            prop_assert_eq!(window, hi - lo);
        }
    }
}
