//! The bound calculus: b(a, k, l), β(k, l), crossovers, and the exact lower
//! envelope over a ∈ [1/2, 1].
//!
//! For an exponent pair (k, l) the admissible interval exponent is the linear
//! function
//!
//! ```text
//!   b(a, k, l) = (l + a(k − l)) / (k + 1)
//! ```
//!
//! of a, with slope (k − l)/(k + 1) ≤ 0. A catalog of pairs plus the flat cap
//! θ yields a piecewise-linear lower envelope whose breakpoints are exact
//! rational line intersections. The envelope is the best admissible b as a
//! function of a.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::constants::margin_curve;
use crate::error::{Error, Result};
use crate::pairs::ExponentPair;
use crate::rational::{rat, rat_int, Rational};

/// b(a, k, l) = (l + a(k − l))/(k + 1), exactly.
pub fn b_exponent(a: &Rational, pair: &ExponentPair) -> Rational {
    debug_assert!(*a >= rat_int(0) && *a <= rat_int(1));
    (pair.l() + a * (pair.k() - pair.l())) / (pair.k() + rat_int(1))
}

/// β(k, l) = (5k + l + 2)/(6(k + 1)), exactly. Algebraically identical to
/// 1/3 + (2/3)·b(3/4, k, l).
pub fn beta_exponent(pair: &ExponentPair) -> Rational {
    (rat_int(5) * pair.k() + pair.l() + rat_int(2)) / (rat_int(6) * (pair.k() + rat_int(1)))
}

/// The crossover abscissa a_m = 1 − 1/m + (2 − 1/m)/(m³ + m² + 2m − 1), the
/// point where the HB(m) and HB(m+1) bound lines intersect (m ≥ 3).
pub fn crossover_a(m: u32) -> Result<Rational> {
    if m < 2 {
        return Err(Error::OutOfRange(format!(
            "crossover index m must be >= 2, got {m}"
        )));
    }
    let m = i64::from(m);
    Ok(rat_int(1) - rat(1, m) + (rat_int(2) - rat(1, m)) / rat_int(m * m * m + m * m + 2 * m - 1))
}

/// b(1 − 1/m, k_m, l_m) for the Heath-Brown pair HB(m), m ≥ 3, together with
/// an exact-equality assertion against the closed form
/// (m − 1)(m³ + m² − 3m + 2) / (m²(m³ − 3m + 4)).
pub fn special_b(m: u32) -> Result<Rational> {
    let pair = ExponentPair::heath_brown(m)?;
    let a = rat_int(1) - rat(1, i64::from(m));
    let value = b_exponent(&a, &pair);
    let m = i64::from(m);
    let closed = rat_int(m - 1) * rat_int(m * m * m + m * m - 3 * m + 2)
        / (rat_int(m * m) * rat_int(m * m * m - 3 * m + 4));
    assert_eq!(value, closed, "closed form mismatch at m={m}");
    Ok(value)
}

/// Source of a linear bound: the flat cap θ or a catalog pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundSource {
    Theta,
    Pair(ExponentPair),
}

impl BoundSource {
    /// Deterministic tie-break rank: θ first, then pairs by derivation word
    /// (shortest, then lexicographic).
    fn rank(&self) -> (usize, Vec<crate::pairs::Symbol>) {
        match self {
            BoundSource::Theta => (0, Vec::new()),
            BoundSource::Pair(p) => (p.derivation().len(), p.derivation().0.clone()),
        }
    }

    pub fn needs_eps(&self) -> bool {
        match self {
            // both known θ records hold only with +ε
            BoundSource::Theta => true,
            BoundSource::Pair(p) => p.needs_eps(),
        }
    }
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundSource::Theta => write!(f, "theta"),
            BoundSource::Pair(p) => write!(f, "{}", p.derivation()),
        }
    }
}

/// A line b(a) = intercept + slope·a with its source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearBound {
    pub slope: Rational,
    pub intercept: Rational,
    pub source: BoundSource,
}

impl LinearBound {
    pub fn eval(&self, a: &Rational) -> Rational {
        &self.intercept + &self.slope * a
    }

    /// Canonical integer rendering `(p - q a)/r` with r > 0 and
    /// gcd(p, q, r) = 1; constants render as plain fractions.
    /// Examples: `(55 - 42a)/97`, `517/1648`.
    pub fn canonical_form(&self) -> String {
        if self.slope.is_zero() {
            return crate::rational::format_rational(&self.intercept);
        }
        let r = self.intercept.denom().lcm(self.slope.denom());
        let p = (&self.intercept * Rational::from_integer(r.clone())).to_integer();
        let q = (&self.slope * Rational::from_integer(r.clone())).to_integer();
        let g = p.gcd(&q).gcd(&r);
        let (p, q, r) = (&p / &g, &q / &g, &r / &g);
        let a_term = if q.is_negative() {
            format!(" - {}a", -&q)
        } else {
            format!(" + {q}a")
        };
        if r == BigInt::one() {
            format!("{p}{a_term}")
        } else {
            format!("({p}{a_term})/{r}")
        }
    }
}

/// The bound line of a pair: slope (k − l)/(k + 1), intercept l/(k + 1).
pub fn pair_line(pair: &ExponentPair) -> LinearBound {
    let denom = pair.k() + rat_int(1);
    LinearBound {
        slope: (pair.k() - pair.l()) / &denom,
        intercept: pair.l() / &denom,
        source: BoundSource::Pair(pair.clone()),
    }
}

fn theta_line(theta: &Rational) -> LinearBound {
    LinearBound {
        slope: rat_int(0),
        intercept: theta.clone(),
        source: BoundSource::Theta,
    }
}

/// min(θ, min over the catalog of b(a, k, l)) with the achieving source.
/// Ties resolve to θ first, then the shortest (then lexicographically first)
/// derivation word.
pub fn best_bound(
    a: &Rational,
    catalog: &[ExponentPair],
    theta: &Rational,
) -> Result<(Rational, BoundSource)> {
    if catalog.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    let mut best = (theta.clone(), BoundSource::Theta);
    for pair in catalog {
        let value = b_exponent(a, pair);
        if value < best.0 {
            best = (value, BoundSource::Pair(pair.clone()));
        } else if value == best.0 {
            let candidate = BoundSource::Pair(pair.clone());
            if candidate.rank() < best.1.rank() {
                best.1 = candidate;
            }
        }
    }
    Ok(best)
}

/// Exact lower envelope over a ∈ [1/2, 1] of the constant θ and the bound
/// lines of a pair catalog.
#[derive(Debug, Clone)]
pub struct PiecewiseBound {
    /// segment boundaries; first is 1/2, last is 1, length = pieces + 1
    boundaries: Vec<Rational>,
    pieces: Vec<LinearBound>,
    theta: Rational,
}

impl PiecewiseBound {
    pub fn boundaries(&self) -> &[Rational] {
        &self.boundaries
    }

    /// Interior breakpoints (boundaries without the endpoints 1/2 and 1).
    pub fn breakpoints(&self) -> &[Rational] {
        &self.boundaries[1..self.boundaries.len() - 1]
    }

    pub fn pieces(&self) -> &[LinearBound] {
        &self.pieces
    }

    pub fn theta(&self) -> &Rational {
        &self.theta
    }

    /// Segments as (a_lo, a_hi, line) triples.
    pub fn segments(&self) -> impl Iterator<Item = (&Rational, &Rational, &LinearBound)> {
        self.pieces
            .iter()
            .enumerate()
            .map(|(i, line)| (&self.boundaries[i], &self.boundaries[i + 1], line))
    }

    /// Envelope value at a ∈ [1/2, 1].
    pub fn eval(&self, a: &Rational) -> Rational {
        debug_assert!(*a >= rat(1, 2) && *a <= rat_int(1));
        // at a shared boundary both neighbors agree, so either piece works
        let idx = match self.boundaries.binary_search(a) {
            Ok(i) => i.saturating_sub(1),
            Err(i) => i - 1,
        };
        let idx = idx.min(self.pieces.len() - 1);
        self.pieces[idx].eval(a)
    }

    /// Piecewise-equality: same boundaries and same lines.
    pub fn same_function(&self, other: &PiecewiseBound) -> bool {
        self.boundaries == other.boundaries
            && self.pieces.len() == other.pieces.len()
            && self
                .pieces
                .iter()
                .zip(&other.pieces)
                .all(|(a, b)| a.slope == b.slope && a.intercept == b.intercept)
    }
}

/// Computes the exact lower envelope of θ and all catalog lines on [1/2, 1].
///
/// Sweep construction: start from the minimal line at a = 1/2 and repeatedly
/// take the earliest intersection with a strictly steeper line. The pointwise
/// minimum of lines is concave, so active slopes strictly decrease and the
/// sweep terminates after at most one segment per line.
pub fn envelope(catalog: &[ExponentPair], theta: &Rational) -> Result<PiecewiseBound> {
    if catalog.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    let mut lines: Vec<LinearBound> = Vec::with_capacity(catalog.len() + 1);
    lines.push(theta_line(theta));
    lines.extend(catalog.iter().map(pair_line));

    // per slope keep only the lowest intercept (ties: best source rank)
    lines.sort_by(|x, y| {
        (&x.slope, &x.intercept)
            .cmp(&(&y.slope, &y.intercept))
            .then_with(|| x.source.rank().cmp(&y.source.rank()))
    });
    lines.dedup_by(|next, prev| next.slope == prev.slope);

    let a_lo = rat(1, 2);
    let a_hi = rat_int(1);

    let start = lines
        .iter()
        .min_by(|x, y| {
            (x.eval(&a_lo), &x.slope, x.source.rank()).cmp(&(
                y.eval(&a_lo),
                &y.slope,
                y.source.rank(),
            ))
        })
        .expect("lines is non-empty")
        .clone();

    let mut boundaries = vec![a_lo.clone()];
    let mut pieces = Vec::new();
    let mut active = start;
    let mut pos = a_lo;

    loop {
        // earliest overtaking intersection within (pos, 1]
        let mut next: Option<(Rational, LinearBound)> = None;
        for line in &lines {
            if line.slope >= active.slope {
                continue;
            }
            let cross = (&line.intercept - &active.intercept) / (&active.slope - &line.slope);
            // a crossing exactly at the right endpoint adds no segment
            if cross <= pos || cross >= a_hi {
                continue;
            }
            let replace = match &next {
                None => true,
                Some((best_cross, best_line)) => {
                    cross < *best_cross || (cross == *best_cross && line.slope < best_line.slope)
                }
            };
            if replace {
                next = Some((cross, line.clone()));
            }
        }
        match next {
            Some((cross, line)) => {
                boundaries.push(cross.clone());
                pieces.push(active);
                active = line;
                pos = cross;
            }
            None => {
                boundaries.push(a_hi);
                pieces.push(active);
                break;
            }
        }
    }

    Ok(PiecewiseBound {
        boundaries,
        pieces,
        theta: theta.clone(),
    })
}

/// Outcome of the exact margin verification for one crossover index.
#[derive(Debug, Clone)]
pub struct MarginCheck {
    pub m: u32,
    /// margin_curve(a_{m−1}) − b(a_{m−1}, HB(m)) and the same at a_m
    pub left_gap: Rational,
    pub right_gap: Rational,
}

impl MarginCheck {
    pub fn positive(&self) -> bool {
        self.left_gap > rat_int(0) && self.right_gap > rat_int(0)
    }
}

/// Report of [`verify_margin`].
#[derive(Debug, Clone)]
pub struct MarginReport {
    pub checks: Vec<MarginCheck>,
    pub failures: Vec<u32>,
    /// smallest gap encountered, for display
    pub min_gap: Option<Rational>,
}

impl MarginReport {
    pub fn all_positive(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verifies, in exact arithmetic, that the Heath-Brown bound lines stay
/// strictly below the concave margin curve at both endpoints of their active
/// intervals: for every m in 3..=m_max,
/// b(a, HB(m)) < margin_curve(a) at a = a_{m−1} and a = a_m.
///
/// Since the margin curve is concave and each bound line is linear, endpoint
/// positivity implies positivity on the whole interval [a_{m−1}, a_m]; the
/// m = 3 left endpoint a_2 = 3/5 also settles the hand-off from the flat
/// region (checked separately against the envelope).
pub fn verify_margin(m_max: u32) -> MarginReport {
    let mut checks = Vec::new();
    let mut failures = Vec::new();
    let mut min_gap: Option<Rational> = None;
    let mut a_prev = crossover_a(2).expect("m = 2 is valid"); // 3/5
    for m in 3..=m_max.max(3) {
        let pair = ExponentPair::heath_brown(m).expect("m >= 3");
        let a_m = crossover_a(m).expect("m >= 2");
        let left_gap = margin_curve(&a_prev) - b_exponent(&a_prev, &pair);
        let right_gap = margin_curve(&a_m) - b_exponent(&a_m, &pair);
        for gap in [&left_gap, &right_gap] {
            if min_gap.as_ref().is_none_or(|g| gap < g) {
                min_gap = Some(gap.clone());
            }
        }
        let check = MarginCheck {
            m,
            left_gap,
            right_gap,
        };
        if !check.positive() {
            failures.push(m);
        }
        checks.push(check);
        a_prev = a_m;
    }
    MarginReport {
        checks,
        failures,
        min_gap,
    }
}

/// One row of the four-curve table: the envelope, the margin curve, and the
/// two reference lines 1 − a and (1 − a)/2.
#[derive(Debug, Clone)]
pub struct CurveRow {
    pub a: Rational,
    pub envelope: Rational,
    pub margin: Rational,
    pub one_minus_a: Rational,
    pub half_one_minus_a: Rational,
}

/// Evaluates the four curves on the grid a = 1/2, 1/2 + step, ... within
/// [1/2, 1].
pub fn curve_table(env: &PiecewiseBound, step: &Rational) -> Result<Vec<CurveRow>> {
    if *step <= rat_int(0) {
        return Err(Error::OutOfRange(format!(
            "grid step must be > 0, got {step}"
        )));
    }
    let mut rows = Vec::new();
    let mut a = rat(1, 2);
    while a <= rat_int(1) {
        let one_minus_a = rat_int(1) - &a;
        rows.push(CurveRow {
            envelope: env.eval(&a),
            margin: margin_curve(&a),
            half_one_minus_a: &one_minus_a / rat_int(2),
            one_minus_a,
            a: a.clone(),
        });
        a = &a + step;
    }
    Ok(rows)
}
