//! Named pass/fail check batteries.
//!
//! Four suites (constants, calculus, sieve, sets) plus the calibrated
//! regression margins. Every check carries an id, the expected and observed
//! values as strings, and a pass flag; the CLI renders them one per line and
//! maps any failure to a non-zero exit.

use std::fmt::Display;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{
    b_exponent, best_bound, beta_exponent, crossover_a, envelope, pair_line, special_b,
    verify_margin,
};
use crate::calibration;
use crate::constants::{analytic_constants, margin_curve, nu_objective};
use crate::pairs::{build_catalog, CatalogOptions, ExponentPair};
use crate::rational::{decimal_prefix_matches, f64_prefix_matches, rat, rat_int, rat_u64};
use crate::scan::{crossing_scan, density_scan, product_witnesses, ScanParams};
use crate::sets::{
    closure_trials, in_set_a, is_practical, omega_tau, practical_superset_check, set_a_flags,
};
use crate::sieve::{interval_smooth_count, isqrt, psi_count, square_gap_scan, SieveSegment};
use crate::sums::{divisor_window_sum, psi_sum, tau_moment};

/// One verification check.
#[derive(Debug, Clone)]
pub struct Check {
    pub suite: &'static str,
    pub id: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

fn check(
    suite: &'static str,
    id: impl Into<String>,
    expected: impl Display,
    actual: impl Display,
    pass: bool,
) -> Check {
    Check {
        suite,
        id: id.into(),
        expected: expected.to_string(),
        actual: actual.to_string(),
        pass,
    }
}

/// Scale knobs for the batteries. Defaults are the full desk-scale runs.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub psi_oracle_limit: u64,
    pub pow2_limit: u64,
    pub square_gap_limit: u64,
    pub superset_limit: u64,
    pub subset_sum_limit: u64,
    pub ml_trials: u64,
    pub ml_limit: u64,
    pub density_hi: u64,
    pub crossing_hi: u64,
    pub margin_m_max: u32,
    pub random_triples: u64,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            psi_oracle_limit: 100_000,
            pow2_limit: 1 << 16,
            square_gap_limit: 1_000_000,
            superset_limit: 1_000_000,
            subset_sum_limit: 10_000,
            ml_trials: 10_000,
            ml_limit: 1_000_000,
            density_hi: 1_000_000,
            crossing_hi: 100_000,
            margin_m_max: 10_000,
            random_triples: 100,
            seed: 0x5e3d_0f1a,
        }
    }
}

impl VerifyOptions {
    /// Reduced limits for quick smoke runs.
    pub fn quick() -> Self {
        VerifyOptions {
            psi_oracle_limit: 5_000,
            pow2_limit: 1 << 10,
            square_gap_limit: 20_000,
            superset_limit: 50_000,
            subset_sum_limit: 2_000,
            ml_trials: 500,
            ml_limit: 100_000,
            density_hi: 20_000,
            crossing_hi: 20_000,
            margin_m_max: 200,
            random_triples: 25,
            ..VerifyOptions::default()
        }
    }
}

// ---------------------------------------------------------------------------
// constants suite

pub fn constants_checks() -> Vec<Check> {
    const S: &str = "constants";
    let c = analytic_constants();
    let mut out = vec![
        check(
            S,
            "nu-prefix",
            "2.9882",
            c.nu,
            f64_prefix_matches(c.nu, "2.9882"),
        ),
        check(
            S,
            "u-star-prefix",
            "2.1080",
            c.u_star,
            f64_prefix_matches(c.u_star, "2.1080"),
        ),
        check(
            S,
            "c-const-prefix",
            "2.280",
            c.c_const,
            f64_prefix_matches(c.c_const, "2.280"),
        ),
        check(
            S,
            "mu0-prefix",
            "9.5569",
            c.mu0,
            f64_prefix_matches(c.mu0, "9.5569"),
        ),
    ];
    let composed = 2.0 * c.nu + 2.0 + c.c_const * std::f64::consts::LN_2;
    out.push(check(
        S,
        "mu0-composition",
        composed,
        c.mu0,
        composed == c.mu0,
    ));
    out.push(check(
        S,
        "objective-at-2",
        3.0,
        nu_objective(2.0),
        nu_objective(2.0) == 3.0,
    ));
    let local = nu_objective(c.u_star + 1e-3).min(nu_objective(c.u_star - 1e-3));
    out.push(check(
        S,
        "local-minimum",
        format!("> {}", c.nu),
        local,
        local > c.nu,
    ));
    let perturbed = 8.0 + c.c_const * std::f64::consts::LN_2;
    out.push(check(
        S,
        "mu0-sensitivity-nu-3",
        "9.5805",
        perturbed,
        f64_prefix_matches(perturbed, "9.5805"),
    ));
    // deterministic sample of the objective stays above the minimum
    let mut worst = f64::INFINITY;
    for i in 0..100 {
        let u = 1.01 + 48.99 * (i as f64 / 99.0);
        worst = worst.min(nu_objective(u) - c.nu);
    }
    out.push(check(
        S,
        "objective-dominates-minimum",
        ">= -1e-8",
        worst,
        worst >= -1e-8,
    ));
    out
}

// ---------------------------------------------------------------------------
// calculus suite

/// The exact five leading envelope lines with their sources.
pub const EXPECTED_LEAD_SEGMENTS: [(&str, &str); 5] = [
    ("517/1648", "theta"),
    ("(110 - 55a)/249", "BA(bourgain)"),
    ("(55 - 42a)/97", "bourgain"),
    ("(152 - 139a)/207", "A(bourgain)"),
    ("(359 - 346a)/427", "AA(bourgain)"),
];

/// The exact breakpoints separating the five leading lines, as (num, den),
/// with their truncated 3-digit expansions.
pub const EXPECTED_LEAD_BREAKPOINTS: [(i64, i64, &str); 5] = [
    (52547, 90640, "0.579"),
    (3025, 5123, "0.590"),
    (3359, 4789, "0.701"),
    (9409, 12269, "0.766"),
    (6143, 7713, "0.796"),
];

pub fn calculus_checks() -> Vec<Check> {
    const S: &str = "calculus";
    let mut out = Vec::new();
    let catalog = build_catalog(&CatalogOptions::default());
    let theta = crate::default_theta();
    let env = envelope(&catalog, &theta).expect("default catalog is non-empty");

    // leading segments: exact line forms and sources
    let lead: Vec<(String, String)> = env
        .pieces()
        .iter()
        .take(5)
        .map(|p| (p.canonical_form(), p.source.to_string()))
        .collect();
    let expected: Vec<(String, String)> = EXPECTED_LEAD_SEGMENTS
        .iter()
        .map(|&(f, s)| (f.to_string(), s.to_string()))
        .collect();
    out.push(check(
        S,
        "envelope-lead-lines",
        format!("{expected:?}"),
        format!("{lead:?}"),
        lead == expected,
    ));

    // breakpoints of the leading lines, exact and by decimal prefix
    let mut bps_ok = env.breakpoints().len() >= 5;
    let mut bps_render = Vec::new();
    for (i, &(num, den, prefix)) in EXPECTED_LEAD_BREAKPOINTS.iter().enumerate() {
        if let Some(bp) = env.breakpoints().get(i) {
            bps_render.push(format!("{bp}"));
            bps_ok &= *bp == rat(num, den) && decimal_prefix_matches(bp, prefix);
        }
    }
    out.push(check(
        S,
        "envelope-lead-breakpoints",
        format!("{EXPECTED_LEAD_BREAKPOINTS:?}"),
        format!("{bps_render:?}"),
        bps_ok,
    ));

    // after the lead: one segment per HB(m), handed off exactly at a_m,
    // then the trivial line to a = 1
    let sources: Vec<String> = env.pieces().iter().map(|p| p.source.to_string()).collect();
    let mut expected_tail: Vec<String> = (5..=64).map(|m| format!("hb({m})")).collect();
    expected_tail.push("trivial".to_string());
    let tail_ok = sources.len() == 5 + expected_tail.len()
        && sources[5..] == expected_tail[..]
        && (5..=63).enumerate().all(|(i, m)| {
            env.breakpoints()
                .get(5 + i)
                .map(|bp| *bp == crossover_a(m).unwrap())
                == Some(true)
        })
        && env.breakpoints().last() == Some(&rat(6049, 6113));
    out.push(check(
        S,
        "envelope-tail-handoffs",
        "hb(5)..hb(64) at a_m, then trivial at 6049/6113",
        format!("{} segments, tail ok: {tail_ok}", sources.len()),
        tail_ok,
    ));

    // envelope matches the pointwise minimum on a grid
    let mut grid_ok = true;
    for i in 0..=400i64 {
        let a = rat(1, 2) + rat(i, 800);
        let (best, _) = best_bound(&a, &catalog, &theta).expect("non-empty catalog");
        grid_ok &= env.eval(&a) == best;
    }
    out.push(check(
        S,
        "envelope-is-pointwise-min",
        "exact on 401-point grid",
        grid_ok,
        grid_ok,
    ));

    // deeper words never improve the envelope
    let shallow = envelope(
        &build_catalog(&CatalogOptions {
            max_word_len: 2,
            ..CatalogOptions::default()
        }),
        &theta,
    )
    .unwrap();
    out.push(check(
        S,
        "word-depth-stability",
        "depth-2 and depth-3 envelopes identical",
        shallow.same_function(&env),
        shallow.same_function(&env),
    ));

    // interval exponents of the named pairs
    let beta_a = beta_exponent(&ExponentPair::bourgain().a_process());
    out.push(check(
        S,
        "beta-of-a-bourgain",
        "605/1242",
        &beta_a,
        beta_a == rat(605, 1242),
    ));
    let beta_conj = beta_exponent(&ExponentPair::conjectural());
    out.push(check(
        S,
        "beta-conjectural",
        "5/12",
        &beta_conj,
        beta_conj == rat(5, 12),
    ));
    let identity_ok = catalog
        .iter()
        .all(|p| beta_exponent(p) == rat(1, 3) + rat(2, 3) * b_exponent(&rat(3, 4), p));
    out.push(check(
        S,
        "beta-affine-identity",
        "beta = 1/3 + (2/3) b(3/4) on the catalog",
        identity_ok,
        identity_ok,
    ));

    // special values b(1 − 1/m, HB(m)) match their closed form
    let special_ok = (3..=1000).all(|m| special_b(m).is_ok());
    out.push(check(
        S,
        "special-b-closed-form",
        "exact for m = 3..1000",
        special_ok,
        special_ok,
    ));
    out.push(check(
        S,
        "special-b-at-3",
        "29/99",
        special_b(3).unwrap(),
        special_b(3).unwrap() == rat(29, 99),
    ));

    // crossovers are the HB line intersections
    let crossover_ok = (3..=50).all(|m| {
        let a = crossover_a(m).unwrap();
        let now = ExponentPair::heath_brown(m).unwrap();
        let next = ExponentPair::heath_brown(m + 1).unwrap();
        b_exponent(&a, &now) == b_exponent(&a, &next)
    });
    out.push(check(
        S,
        "crossover-identity",
        "b(a_m, HB(m)) = b(a_m, HB(m+1)) for m = 3..50",
        crossover_ok,
        crossover_ok,
    ));

    // margin curve dominance at the crossover endpoints
    let report = verify_margin(10_000);
    out.push(check(
        S,
        "margin-endpoint-positivity",
        "all gaps > 0 for m <= 10000",
        format!("failures: {:?}", report.failures),
        report.all_positive(),
    ));
    let at_35 = env.eval(&rat(3, 5));
    out.push(check(
        S,
        "margin-above-envelope-at-3/5",
        format!("margin({}) > {}", rat(3, 5), at_35),
        margin_curve(&rat(3, 5)).to_string(),
        margin_curve(&rat(3, 5)) > at_35,
    ));

    // the pinned HB(5) line form
    let hb5 = pair_line(&ExponentPair::heath_brown(5).unwrap()).canonical_form();
    out.push(check(
        S,
        "hb5-line-form",
        "(254 - 249a)/285",
        &hb5,
        hb5 == "(254 - 249a)/285",
    ));

    out
}

// ---------------------------------------------------------------------------
// sieve suite

/// Independent trial-division largest prime factor (the naive oracle).
fn naive_lpf(n: u64) -> u64 {
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

/// Per-x smooth counts for all x ≤ limit under the four cutoff families
/// y ∈ {2, 10, √x, x}, derived from a largest-prime-factor table.
fn count_families(lpf: &[u64]) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let limit = lpf.len() as u64;
    let mut by_gpf: Vec<Vec<u64>> = vec![Vec::new(); limit as usize + 1];
    for (i, &g) in lpf.iter().enumerate() {
        by_gpf[g as usize].push(i as u64 + 1);
    }
    let mut c2 = Vec::with_capacity(lpf.len());
    let mut c10 = Vec::with_capacity(lpf.len());
    let mut csqrt = Vec::with_capacity(lpf.len());
    let (mut n2, mut n10) = (0u64, 0u64);
    let mut nsqrt = 0u64;
    let mut threshold = 0u64;
    let mut bucket_pos: Vec<usize> = vec![0; limit as usize + 1];
    for x in 1..=limit {
        let g = lpf[(x - 1) as usize];
        if g <= 2 {
            n2 += 1;
        }
        if g <= 10 {
            n10 += 1;
        }
        // threshold ⌊√x⌋ grows by at most one per step
        let t = isqrt(x);
        while threshold < t {
            threshold += 1;
            // pull in earlier n whose largest factor just became admissible
            let bucket = &by_gpf[threshold as usize];
            let pos = &mut bucket_pos[threshold as usize];
            while *pos < bucket.len() && bucket[*pos] < x {
                nsqrt += 1;
                *pos += 1;
            }
        }
        if g <= t {
            nsqrt += 1;
            // keep the bucket pointer past x so future threshold bumps skip it
            let bucket = &by_gpf[g as usize];
            let pos = &mut bucket_pos[g as usize];
            while *pos < bucket.len() && bucket[*pos] <= x {
                *pos += 1;
            }
        }
        c2.push(n2);
        c10.push(n10);
        csqrt.push(nsqrt);
    }
    (c2, c10, csqrt)
}

pub fn sieve_checks(opts: &VerifyOptions) -> Vec<Check> {
    const S: &str = "sieve";
    let mut out = Vec::new();
    let limit = opts.psi_oracle_limit;

    // segmented factor table vs naive factorization, exhaustively
    let mut segmented = Vec::with_capacity(limit as usize);
    let mut lo = 1u64;
    while lo <= limit {
        let hi = (lo + (1 << 16) - 1).min(limit);
        let seg = SieveSegment::build(lo, hi);
        for n in lo..=hi {
            segmented.push(seg.lpf(n));
        }
        lo = hi + 1;
    }
    let naive: Vec<u64> = (1..=limit).map(naive_lpf).collect();
    let tables_equal = segmented == naive;
    out.push(check(
        S,
        "segmented-lpf-vs-naive",
        format!("identical tables on [1, {limit}]"),
        tables_equal,
        tables_equal,
    ));

    // per-x counts for y in {2, 10, sqrt(x), x} from both tables
    let from_seg = count_families(&segmented);
    let from_naive = count_families(&naive);
    let counts_equal = from_seg == from_naive;
    out.push(check(
        S,
        "psi-all-x-four-cutoffs",
        format!("counts agree for all x <= {limit}, y in {{2, 10, sqrt(x), x}}"),
        counts_equal,
        counts_equal,
    ));

    // spot checks through the public op against a fully naive loop
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut spots_ok = true;
    for _ in 0..20 {
        let x = rng.gen_range(1..=limit);
        let y = rng.gen_range(1..=x);
        let fast = psi_count(x, y).unwrap().count;
        let slow = (1..=x).filter(|&n| naive_lpf(n) <= y).count() as u64;
        spots_ok &= fast == slow;
    }
    out.push(check(
        S,
        "psi-spot-oracle",
        "20 random (x, y) agree",
        spots_ok,
        spots_ok,
    ));

    // 2-smooth counts are ⌊log2 x⌋ + 1
    let mut pow2_ok = true;
    let mut running = 0u64;
    for x in 1..=opts.pow2_limit {
        if x.is_power_of_two() {
            running += 1;
        }
        let expected = 64 - x.leading_zeros() as u64;
        pow2_ok &= running == expected;
        if x <= limit {
            pow2_ok &= from_seg.0[(x - 1) as usize] == expected;
        }
    }
    out.push(check(
        S,
        "psi-base-2-closed-form",
        format!("floor(log2 x) + 1 for x <= {}", opts.pow2_limit),
        pow2_ok,
        pow2_ok,
    ));

    // window counts equal global differences on random triples
    let mut window_ok = true;
    for _ in 0..opts.random_triples.min(1000) {
        let x = rng.gen_range(100..=limit);
        let z = rng.gen_range(1..=x.min(5000)) as f64;
        let y = rng.gen_range(2..=isqrt(x).max(2));
        let window = interval_smooth_count(x, z, y).unwrap();
        let hi = psi_count(x, y).unwrap().count;
        let lo_x = (x as f64 - z).floor() as u64;
        let lo = if lo_x >= 1 {
            psi_count(lo_x, y).unwrap().count
        } else {
            0
        };
        window_ok &= window == hi - lo;
    }
    out.push(check(
        S,
        "interval-vs-global-difference",
        "window sieve equals difference of global counts",
        window_ok,
        window_ok,
    ));

    // explicit short window at x = 100
    let short = interval_smooth_count(100, 9.49, isqrt(200)).unwrap();
    out.push(check(S, "short-window-at-100", ">= 1", short, short >= 1));

    // divisor-window double counting on random admissible triples
    let mut identity_ok = true;
    let mut quarter_seen = false;
    for _ in 0..opts.random_triples {
        let x = rng.gen_range(200..=limit);
        let y_min = crate::sieve::ceil_sqrt(2 * x);
        let y = rat_u64(rng.gen_range(y_min..=x.max(y_min)));
        let z = rat_u64(rng.gen_range(1..=x.min(2000)));
        let s = divisor_window_sum(x, &y, &z).unwrap();
        identity_ok &= s.direct == s.floor_form;
        quarter_seen |= s.meets_quarter_z;
    }
    out.push(check(
        S,
        "divisor-sum-double-counting",
        format!(
            "direct = floor form on {} random triples",
            opts.random_triples
        ),
        identity_ok,
        identity_ok,
    ));
    let hypoth = divisor_window_sum(10_000, &rat_u64(142), &rat_u64(1000)).unwrap();
    out.push(check(
        S,
        "divisor-sum-quarter-z",
        format!("S >= z/4 at (10000, 142, 1000); seen elsewhere: {quarter_seen}"),
        hypoth.meets_quarter_z,
        hypoth.meets_quarter_z,
    ));

    // exact sawtooth sum values
    let tiny = psi_sum(4, 1).unwrap();
    out.push(check(S, "psi-sum-tiny", "-1", &tiny, tiny == rat_int(-1)));

    // tau moment at u = 0 counts the window
    let t0 = tau_moment(50_000, 120, 0.0).unwrap();
    out.push(check(S, "tau-moment-u0", 121.0, t0.sum, t0.sum == 121.0));

    // a smooth witness below every x, constructively or by window scan
    let scan = square_gap_scan(1, opts.square_gap_limit);
    out.push(check(
        S,
        "square-gap-witness-scan",
        format!("0 failures on [1, {}]", opts.square_gap_limit),
        format!(
            "failures: {}, construction: {}, window: {}, largest fallback: {:?}",
            scan.failures.len(),
            scan.construction_hits,
            scan.window_scan_hits,
            scan.largest_fallback
        ),
        scan.failures.is_empty() && scan.checked == opts.square_gap_limit,
    ));

    out
}

// ---------------------------------------------------------------------------
// sets suite

/// Literal subset-sum practicality: every m ≤ n is a sum of distinct
/// divisors. Exponential-style reference, only run at small limits.
pub fn subset_sum_practical(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let n_usize = n as usize;
    let mut reachable = vec![false; n_usize + 1];
    reachable[0] = true;
    for &d in &divisors {
        let d = d as usize;
        for target in (d..=n_usize).rev() {
            if reachable[target - d] {
                reachable[target] = true;
            }
        }
    }
    reachable.iter().all(|&r| r)
}

pub fn sets_checks(opts: &VerifyOptions) -> Vec<Check> {
    const S: &str = "sets";
    let mut out = Vec::new();

    // A is a subset of the practical numbers
    let superset = practical_superset_check(opts.superset_limit);
    out.push(check(
        S,
        "a-subset-of-practical",
        format!("no violations up to {}", opts.superset_limit),
        match superset {
            Ok(count) => format!("{count} members, all practical"),
            Err(n) => format!("violation at {n}"),
        },
        superset.is_ok(),
    ));
    let strict = is_practical(6) && !in_set_a(6);
    out.push(check(
        S,
        "inclusion-strict-at-6",
        "6 practical but not in A",
        strict,
        strict,
    ));

    // divisor-sum criterion vs the subset-sum definition
    let mut criterion_ok = true;
    for n in 1..=opts.subset_sum_limit {
        if is_practical(n) != subset_sum_practical(n) {
            criterion_ok = false;
            break;
        }
    }
    out.push(check(
        S,
        "practical-criterion-vs-subset-sum",
        format!("equivalent for n <= {}", opts.subset_sum_limit),
        criterion_ok,
        criterion_ok,
    ));

    // closure under multiplication by smooth factors
    let closure = closure_trials(opts.ml_trials, opts.ml_limit, opts.seed);
    out.push(check(
        S,
        "closure-random-trials",
        format!("{} trials, 0 counterexamples", opts.ml_trials),
        format!("{} counterexamples", closure.counterexamples.len()),
        closure.clean(),
    ));

    // structural facts: members above 1 are even; powers of two are members
    let flags = set_a_flags(1, opts.ml_limit.min(1_000_000));
    let even_ok = flags
        .iter()
        .enumerate()
        .all(|(i, &f)| !f || i == 0 || (i as u64 + 1) % 2 == 0);
    out.push(check(S, "members-above-one-even", true, even_ok, even_ok));
    let mut pow2_ok = true;
    let mut p = 1u64;
    while p <= 1_000_000_000 {
        pow2_ok &= in_set_a(p);
        p *= 2;
    }
    out.push(check(S, "powers-of-two-in-a", true, pow2_ok, pow2_ok));

    // ω/τ bound
    let tau_ok = (1..=100_000u64).all(|n| {
        let (omega, tau) = omega_tau(n);
        tau <= 1u64 << omega
    });
    out.push(check(
        S,
        "tau-below-2-pow-omega",
        "tau(n) <= 2^Omega(n) for n <= 1e5",
        tau_ok,
        tau_ok,
    ));

    // the density scan: failures exist but all sit below 504
    let params = ScanParams::standard();
    let scan = density_scan(3, opts.density_hi, &params).expect("valid scan range");
    let largest = scan.largest_failure();
    out.push(check(
        S,
        "density-scan-failures-below-504",
        format!("some failures, all < 504, on [3, {}]", opts.density_hi),
        format!("{} failures, largest {:?}", scan.failures.len(), largest),
        !scan.failures.is_empty() && largest.is_some_and(|x| x < 504),
    ));

    // the real-valued boundary crossings stay clean from 504 up
    let crossings = crossing_scan(504, opts.crossing_hi, &params).expect("valid range");
    out.push(check(
        S,
        "density-crossings-clean",
        format!("0 failures on [504, {}]", opts.crossing_hi),
        format!(
            "{} failures over {} crossings",
            crossings.failures.len(),
            crossings.checked
        ),
        crossings.failures.is_empty(),
    ));

    // constructive product witnesses at (1e5, 1e3)
    match product_witnesses(100_000, &rat_u64(1000)) {
        Ok(w) => {
            let window_ok = w
                .pairs
                .iter()
                .all(|p| p.product >= 99_000 && p.product <= 100_000);
            let pigeon = w.distinct_products >= w.pairs.len() as u64 / w.max_tau.max(1);
            out.push(check(
                S,
                "product-witnesses",
                ">= 1 pair, products in window, all in A, chain holds",
                format!(
                    "{} pairs, {} distinct, window {window_ok}, chain {}",
                    w.pairs.len(),
                    w.distinct_products,
                    w.chain_ok
                ),
                !w.pairs.is_empty() && window_ok && w.chain_ok && pigeon,
            ));
        }
        Err(e) => out.push(check(S, "product-witnesses", "closure holds", e, false)),
    }

    out
}

// ---------------------------------------------------------------------------
// calibrated regressions

/// Loads the recorded calibration (recording it first if absent) and checks
/// the fresh ratios against it with a 10x margin.
pub fn regression_checks(path: &Path) -> Vec<Check> {
    const S: &str = "regression";
    let observed = calibration::compute_current();
    match calibration::load(path) {
        Some(recorded) => calibration::margin_checks(&recorded, &observed)
            .into_iter()
            .map(|m| {
                check(
                    S,
                    m.label,
                    format!("<= 10x recorded {:.6}", m.recorded),
                    format!("{:.6}", m.observed),
                    m.pass,
                )
            })
            .collect(),
        None => {
            let saved = calibration::save(path, &observed).is_ok();
            vec![check(
                S,
                "calibration-recorded",
                format!("first run: ratios recorded at {}", path.display()),
                format!(
                    "{} psi-sum points, {} tau points, saved: {saved}",
                    observed.psi_sum.len(),
                    observed.tau_moment.len()
                ),
                saved,
            )]
        }
    }
}

/// Which battery to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Constants,
    Calculus,
    Sieve,
    Sets,
    All,
}

/// Runs the selected battery at the given scale.
pub fn run_suite(suite: Suite, opts: &VerifyOptions, calibration_path: &Path) -> Vec<Check> {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Constants | Suite::All) {
        checks.extend(constants_checks());
    }
    if matches!(suite, Suite::Calculus | Suite::All) {
        checks.extend(calculus_checks());
    }
    if matches!(suite, Suite::Sieve | Suite::All) {
        checks.extend(sieve_checks(opts));
        checks.extend(regression_checks(calibration_path));
    }
    if matches!(suite, Suite::Sets | Suite::All) {
        checks.extend(sets_checks(opts));
    }
    checks
}
