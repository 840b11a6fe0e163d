//! Membership machinery for the dense set A and the practical numbers.
//!
//! The set A holds n = 1 and every n ≥ 2 whose ordered prime factorization
//! n = p₁^{α₁} ··· p_k^{α_k} (p₁ < ... < p_k) satisfies p₁ = 2 and
//! p_i ≤ p₁^{α₁} ··· p_{i−1}^{α_{i−1}} for i ≥ 2. A is closed under
//! multiplication by anything with no prime factor above the A-member, and is
//! a strict subset of the practical numbers, which this module tests with the
//! classical divisor-sum criterion: n practical iff n = 1, or p₁ = 2 and
//! p_i ≤ 1 + σ(p₁^{α₁} ··· p_{i−1}^{α_{i−1}}) for i ≥ 2. The literal
//! subset-sum definition is kept in the test suite as an independent oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sieve::{base_primes, isqrt, SieveSegment};

/// Ordered prime factorization: (prime, exponent) with strictly increasing
/// primes and exponents ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    /// Trial division; n = 1 gives the empty list.
    pub fn of(n: u64) -> Factorization {
        assert!(n >= 1, "factorization needs n >= 1");
        let mut factors = Vec::new();
        let mut n = n;
        let mut push = |p: u64, e: u32| {
            if e > 0 {
                factors.push((p, e));
            }
        };
        let mut e = 0;
        while n % 2 == 0 {
            n /= 2;
            e += 1;
        }
        push(2, e);
        let mut d = 3;
        while d * d <= n {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            push(d, e);
            d += 2;
        }
        if n > 1 {
            push(n, 1);
        }
        Factorization(factors)
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.0
    }

    /// Product of the prime powers; u128 to survive merged products.
    pub fn value(&self) -> u128 {
        self.0.iter().map(|&(p, e)| (p as u128).pow(e)).product()
    }

    /// Largest prime factor (1 for the empty factorization).
    pub fn largest_prime(&self) -> u64 {
        self.0.last().map_or(1, |&(p, _)| p)
    }

    /// Merges two factorizations: the factorization of the product.
    pub fn merge(&self, other: &Factorization) -> Factorization {
        let mut merged = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (p1, e1) = self.0[i];
            let (p2, e2) = other.0[j];
            match p1.cmp(&p2) {
                std::cmp::Ordering::Less => {
                    merged.push((p1, e1));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    merged.push((p2, e2));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    merged.push((p1, e1 + e2));
                    i += 1;
                    j += 1;
                }
            }
        }
        merged.extend_from_slice(&self.0[i..]);
        merged.extend_from_slice(&other.0[j..]);
        Factorization(merged)
    }
}

pub fn factorize(n: u64) -> Factorization {
    Factorization::of(n)
}

/// (Ω(n), τ(n)): prime multiplicity and divisor count.
pub fn omega_tau(n: u64) -> (u32, u64) {
    let f = Factorization::of(n);
    let omega = f.factors().iter().map(|&(_, e)| e).sum();
    let tau = f.factors().iter().map(|&(_, e)| e as u64 + 1).product();
    (omega, tau)
}

/// Membership in A from a factorization.
pub fn in_set_a_factored(f: &Factorization) -> bool {
    let factors = f.factors();
    if factors.is_empty() {
        return true; // n = 1
    }
    if factors[0].0 != 2 {
        return false;
    }
    // primes are strictly increasing, so p = 2 only ever occurs first and
    // carries no condition; every later prime must not exceed the product
    // of all earlier prime powers
    let mut prefix: u128 = 1;
    for &(p, e) in factors {
        if p != 2 && (p as u128) > prefix {
            return false;
        }
        prefix = prefix.saturating_mul((p as u128).pow(e));
    }
    true
}

/// n ∈ A: n = 1, or p₁ = 2 and every later prime is at most the product of
/// all earlier prime powers.
pub fn in_set_a(n: u64) -> bool {
    in_set_a_factored(&Factorization::of(n))
}

/// Practicality from a factorization, by the divisor-sum criterion.
pub fn is_practical_factored(f: &Factorization) -> bool {
    let factors = f.factors();
    if factors.is_empty() {
        return true; // n = 1
    }
    if factors[0].0 != 2 {
        return false;
    }
    let mut sigma_prefix: u128 = 1;
    for &(p, e) in factors {
        if p != 2 && (p as u128) > sigma_prefix + 1 {
            return false;
        }
        // σ(prefix · p^e) = σ(prefix) · (p^{e+1} − 1)/(p − 1)
        let pe = (p as u128).pow(e + 1);
        sigma_prefix = sigma_prefix.saturating_mul((pe - 1) / (p as u128 - 1));
    }
    true
}

/// n practical: every m ≤ n is a sum of distinct divisors of n.
pub fn is_practical(n: u64) -> bool {
    is_practical_factored(&Factorization::of(n))
}

/// A-membership flags for the whole window [lo, hi], computed during the
/// divide-out sieve so each element sees its primes in increasing order.
pub fn set_a_flags(lo: u64, hi: u64) -> Vec<bool> {
    membership_flags(lo, hi, MembershipRule::SetA)
}

/// Practicality flags for the whole window [lo, hi] (divisor-sum criterion).
pub fn practical_flags(lo: u64, hi: u64) -> Vec<bool> {
    membership_flags(lo, hi, MembershipRule::Practical)
}

#[derive(Clone, Copy)]
enum MembershipRule {
    SetA,
    Practical,
}

fn membership_flags(lo: u64, hi: u64, rule: MembershipRule) -> Vec<bool> {
    assert!(lo >= 1 && lo <= hi);
    let len = (hi - lo + 1) as usize;
    let mut rem: Vec<u64> = (lo..=hi).collect();
    let mut alive = vec![true; len];
    // running product of prime powers (SetA) or its divisor sum (Practical)
    let mut prefix: Vec<u64> = vec![1; len];
    let mut first_prime_seen = vec![false; len];

    let advance = |i: usize,
                   p: u64,
                   rem: &mut [u64],
                   alive: &mut [bool],
                   prefix: &mut [u64],
                   first: &mut [bool]| {
        let mut e = 0u32;
        while rem[i] % p == 0 {
            rem[i] /= p;
            e += 1;
        }
        if e == 0 || !alive[i] {
            return;
        }
        if !first[i] {
            first[i] = true;
            if p != 2 {
                alive[i] = false;
                return;
            }
        } else {
            let ok = match rule {
                MembershipRule::SetA => p <= prefix[i],
                MembershipRule::Practical => p <= prefix[i] + 1,
            };
            if !ok {
                alive[i] = false;
                return;
            }
        }
        let pe = p.saturating_pow(e);
        prefix[i] = match rule {
            MembershipRule::SetA => prefix[i].saturating_mul(pe),
            MembershipRule::Practical => {
                // σ(prefix·p^e) = σ(prefix)·(p^{e+1} − 1)/(p − 1)
                let geom = (pe.saturating_mul(p) - 1) / (p - 1);
                prefix[i].saturating_mul(geom)
            }
        };
    };

    for p in base_primes(isqrt(hi)) {
        let mut n = lo.div_ceil(p) * p;
        while n <= hi {
            let i = (n - lo) as usize;
            advance(
                i,
                p,
                &mut rem,
                &mut alive,
                &mut prefix,
                &mut first_prime_seen,
            );
            n += p;
        }
    }
    for i in 0..len {
        if rem[i] > 1 {
            // final prime cofactor above sqrt(hi)
            let p = rem[i];
            rem[i] = 1;
            if !alive[i] {
                continue;
            }
            if !first_prime_seen[i] {
                // n is 1, a prime, or a prime power of a single large prime
                alive[i] = p == 2;
                continue;
            }
            let ok = match rule {
                MembershipRule::SetA => p <= prefix[i],
                MembershipRule::Practical => p <= prefix[i] + 1,
            };
            if !ok {
                alive[i] = false;
            }
        }
    }
    alive
}

/// Outcome of the randomized closure trials: n ∈ A and P(m) ≤ n imply
/// m·n ∈ A.
#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub trials: u64,
    pub counterexamples: Vec<(u64, u64)>,
}

impl ClosureReport {
    pub fn clean(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Samples `trials` random pairs (n, m) with n ∈ A ∩ [1, limit] and m ≤ limit,
/// P(m) ≤ n, and checks m·n ∈ A via the merged factorization. Any
/// counterexample contradicts a proved closure property, i.e. flags an
/// implementation bug.
pub fn closure_trials(trials: u64, limit: u64, seed: u64) -> ClosureReport {
    assert!(limit >= 2);
    // n = 1 would force m = 1 (P(m) ≤ 1) and stall the rejection sampler;
    // that case is trivially closed, so sample members ≥ 2
    let members: Vec<u64> = set_a_flags(1, limit)
        .iter()
        .enumerate()
        .filter_map(|(i, &flag)| (flag && i > 0).then_some(i as u64 + 1))
        .collect();
    // largest-prime-factor table for fast rejection sampling of m
    let seg = SieveSegment::build(1, limit);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexamples = Vec::new();
    for _ in 0..trials {
        let n = members[rng.gen_range(0..members.len())];
        let m = loop {
            let m = rng.gen_range(1..=limit);
            if seg.lpf(m) <= n {
                break m;
            }
        };
        let product = Factorization::of(n).merge(&Factorization::of(m));
        debug_assert_eq!(product.value(), n as u128 * m as u128);
        if !in_set_a_factored(&product) {
            counterexamples.push((n, m));
        }
    }
    ClosureReport {
        trials,
        counterexamples,
    }
}

/// Exhaustively verifies A ⊆ practical on [1, limit]; returns the first
/// violation if any exists (none should).
pub fn practical_superset_check(limit: u64) -> std::result::Result<u64, u64> {
    let mut checked = 0;
    let block = 1u64 << 20;
    let mut lo = 1;
    while lo <= limit {
        let hi = (lo + block - 1).min(limit);
        let a = set_a_flags(lo, hi);
        let pr = practical_flags(lo, hi);
        for i in 0..a.len() {
            if a[i] {
                checked += 1;
                if !pr[i] {
                    return Err(lo + i as u64);
                }
            }
        }
        lo = hi + 1;
    }
    Ok(checked)
}

/// Smallest window-table variant used by scans: A-membership for [lo, hi]
/// plus a prefix-count lookup.
pub struct SetACounter {
    lo: u64,
    prefix: Vec<u64>,
}

impl SetACounter {
    pub fn build(lo: u64, hi: u64) -> SetACounter {
        let flags = set_a_flags(lo, hi);
        let mut prefix = Vec::with_capacity(flags.len() + 1);
        prefix.push(0);
        let mut acc = 0u64;
        for f in flags {
            acc += u64::from(f);
            prefix.push(acc);
        }
        SetACounter { lo, prefix }
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.lo + self.prefix.len() as u64 - 2
    }

    /// Count of A-members in [a, b] ∩ [lo, hi].
    pub fn count(&self, a: u64, b: u64) -> u64 {
        let a = a.max(self.lo);
        let b = b.min(self.hi());
        if a > b {
            return 0;
        }
        let ai = (a - self.lo) as usize;
        let bi = (b - self.lo) as usize;
        self.prefix[bi + 1] - self.prefix[ai]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_examples() {
        assert_eq!(Factorization::of(1).factors(), &[]);
        assert_eq!(Factorization::of(12).factors(), &[(2, 2), (3, 1)]);
        assert_eq!(Factorization::of(960).factors(), &[(2, 6), (3, 1), (5, 1)]);
        assert_eq!(Factorization::of(960).value(), 960);
        assert_eq!(Factorization::of(97).factors(), &[(97, 1)]);
    }

    #[test]
    fn merge_matches_direct_factorization() {
        for (a, b) in [(12u64, 18u64), (960, 97), (1, 5), (100, 100), (2310, 4620)] {
            let merged = Factorization::of(a).merge(&Factorization::of(b));
            assert_eq!(merged, Factorization::of(a * b), "{a} * {b}");
        }
    }

    #[test]
    fn omega_tau_examples() {
        assert_eq!(omega_tau(1), (0, 1));
        assert_eq!(omega_tau(12), (3, 6));
        for n in 1..=100_000u64 {
            let (omega, tau) = omega_tau(n);
            assert!(tau <= 1u64 << omega, "tau(n) <= 2^Omega(n) fails at {n}");
        }
    }

    #[test]
    fn set_a_examples() {
        assert!(in_set_a(1));
        assert!(!in_set_a(6)); // 2·3: 3 > 2
        assert!(in_set_a(12)); // 2²·3: 3 ≤ 4
        assert!(in_set_a(2));
        assert!(!in_set_a(3));
        assert!(in_set_a(4));
        assert!(!in_set_a(100)); // 2²·5²: 5 > 4
        assert!(in_set_a(108)); // 2²·3³
    }

    #[test]
    fn practical_examples() {
        assert!(is_practical(1));
        assert!(is_practical(6));
        assert!(!is_practical(10)); // 4 is not a sum of distinct divisors
        assert!(is_practical(2));
        assert!(!is_practical(3));
    }

    #[test]
    fn window_flags_match_pointwise_tests() {
        let lo = 1u64;
        let hi = 20_000u64;
        let a = set_a_flags(lo, hi);
        let pr = practical_flags(lo, hi);
        for n in lo..=hi {
            let i = (n - lo) as usize;
            assert_eq!(a[i], in_set_a(n), "A flag at {n}");
            assert_eq!(pr[i], is_practical(n), "practical flag at {n}");
        }
        // and for a window away from 1
        let lo = 500_000u64;
        let hi = 510_000u64;
        let a = set_a_flags(lo, hi);
        for n in lo..=hi {
            assert_eq!(a[(n - lo) as usize], in_set_a(n), "A flag at {n}");
        }
    }

    #[test]
    fn inclusion_is_strict() {
        assert!(is_practical(6) && !in_set_a(6));
    }

    #[test]
    fn every_member_above_one_is_even() {
        let flags = set_a_flags(1, 100_000);
        for (i, &f) in flags.iter().enumerate() {
            let n = i as u64 + 1;
            if f && n > 1 {
                assert_eq!(n % 2, 0, "odd member {n}");
            }
        }
    }

    #[test]
    fn powers_of_two_are_members() {
        let mut p = 1u64;
        while p <= 1_000_000_000 {
            assert!(in_set_a(p), "2^k member fails at {p}");
            p *= 2;
        }
    }

    #[test]
    fn closure_examples() {
        assert!(in_set_a(2 * 2));
        assert!(in_set_a(12 * 9)); // n = 12 ∈ A, P(9) = 3 ≤ 12
        let report = closure_trials(2000, 100_000, 42);
        assert!(
            report.clean(),
            "counterexamples: {:?}",
            report.counterexamples
        );
    }

    #[test]
    fn superset_check_small() {
        assert!(practical_superset_check(100_000).is_ok());
    }

    #[test]
    fn counter_prefix_sums() {
        let counter = SetACounter::build(1, 1000);
        let flags = set_a_flags(1, 1000);
        let direct = |a: u64, b: u64| (a..=b).filter(|&n| flags[(n - 1) as usize]).count() as u64;
        assert_eq!(counter.count(1, 1000), direct(1, 1000));
        assert_eq!(counter.count(10, 20), direct(10, 20));
        assert_eq!(counter.count(999, 1000), direct(999, 1000));
        assert_eq!(counter.count(1001, 2000), 0);
    }
}
