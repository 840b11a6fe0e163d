//! Exact rational arithmetic.
//!
//! All bound-calculus quantities (exponent pairs, linear bounds, envelope
//! breakpoints) live in `Rational`: an arbitrary-precision fraction kept in
//! canonical form (positive denominator, gcd(|num|, den) = 1). The type is
//! backed by [`num_rational::BigRational`], which normalizes after every
//! operation; this module adds the construction, parsing and decimal-rendering
//! helpers the rest of the crate needs.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary-precision fraction in canonical form.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor from machine integers.
///
/// Panics if `den == 0`; use [`checked_div`] for fallible division.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Whole number as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_u64(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Division with an explicit error instead of a panic when `b = 0`.
pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational, Error> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

/// Parses a rational literal: `p/q`, a plain integer, or a decimal string.
///
/// Decimals convert exactly as written (`0.4872` becomes `4872/10000`, then
/// reduces), never through floating point.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_digits: BigInt = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            int_part.parse().map_err(|_| bad())?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let frac_digits: BigInt = frac_part.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mut value = Rational::new(int_digits.abs() * &scale + frac_digits, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Renders `r` as `p/q` (or just `p` when integral).
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// ⌊r⌋ clamped into u64 (0 for negatives).
pub fn floor_u64(r: &Rational) -> u64 {
    r.floor().to_integer().to_u64().unwrap_or(0)
}

/// Truncated decimal expansion of `r` with `digits` places after the point.
///
/// Truncation (not rounding) toward zero, matching "the expansion begins
/// with..." comparisons: `decimal_string(4777/8240, 3) == "0.579"`.
pub fn decimal_string(r: &Rational, digits: usize) -> String {
    let negative = r.is_negative();
    let abs = r.abs();
    let scale = BigUint::from(10u32).pow(digits as u32);
    let scaled: BigInt = (abs * Rational::from_integer(BigInt::from(scale.clone())))
        .floor()
        .to_integer();
    let scaled = scaled.to_biguint().expect("absolute value is non-negative");
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>width$}", width = digits)
    }
}

/// True when the truncated decimal expansion of `r` starts with `prefix`
/// (e.g. `"2.9882"`). The number of fractional digits is taken from `prefix`.
pub fn decimal_prefix_matches(r: &Rational, prefix: &str) -> bool {
    let digits = prefix.split_once('.').map_or(0, |(_, f)| f.len());
    decimal_string(r, digits) == prefix
}

/// Same prefix test for floating-point values (constants like ν and μ₀).
pub fn f64_prefix_matches(v: f64, prefix: &str) -> bool {
    if parse_rational(prefix).is_err() {
        return false;
    }
    let digits = prefix.split_once('.').map_or(0, |(_, f)| f.len());
    let scale = 10f64.powi(digits as i32);
    let truncated = (v.abs() * scale).floor() / scale;
    let sign = if v < 0.0 { "-" } else { "" };
    format!("{sign}{truncated:.digits$}") == prefix
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{FromPrimitive, One};
    use proptest::prelude::*;
    use std::cmp::Ordering;

    #[test]
    fn same_denominator_addition_reduces() {
        assert_eq!(rat(13, 84) + rat(55, 84), rat(17, 21));
    }

    #[test]
    fn zero_is_absorbing_for_mul() {
        assert_eq!(rat(1, 2) * rat(0, 1), rat(0, 1));
    }

    #[test]
    fn cross_multiplied_comparison() {
        // 517·416 = 215072 < 131·1648 = 215888, so 517/1648 < 131/416.
        assert_eq!(517 * 416, 215_072);
        assert_eq!(131 * 1648, 215_888);
        assert_eq!(rat(517, 1648).cmp(&rat(131, 416)), Ordering::Less);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(
            checked_div(&rat(1, 2), &rat(0, 1)),
            Err(Error::DivisionByZero)
        ));
        assert_eq!(checked_div(&rat(1, 2), &rat(1, 4)).unwrap(), rat(2, 1));
    }

    #[test]
    fn parses_fraction_integer_and_decimal_forms() {
        assert_eq!(parse_rational("517/1648").unwrap(), rat(517, 1648));
        assert_eq!(parse_rational("-3/5").unwrap(), rat(-3, 5));
        assert_eq!(parse_rational("42").unwrap(), rat_int(42));
        assert_eq!(parse_rational("0.4872").unwrap(), rat(4872, 10000));
        assert_eq!(parse_rational("0.4872").unwrap(), rat(609, 1250));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("9.557").unwrap(), rat(9557, 1000));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a.b").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn decimal_rendering_truncates() {
        assert_eq!(decimal_string(&rat(4777, 8240), 3), "0.579");
        assert_eq!(decimal_string(&rat(3025, 5123), 3), "0.590");
        assert_eq!(decimal_string(&rat(2, 3), 4), "0.6666");
        assert_eq!(decimal_string(&rat(-1, 3), 2), "-0.33");
        assert_eq!(decimal_string(&rat_int(7), 0), "7");
        assert!(decimal_prefix_matches(&rat(605, 1242), "0.4871"));
        assert!(!decimal_prefix_matches(&rat(605, 1242), "0.4872"));
    }

    #[test]
    fn f64_prefix_truncation() {
        assert!(f64_prefix_matches(2.98820958, "2.9882"));
        assert!(f64_prefix_matches(9.55698, "9.5569"));
        assert!(!f64_prefix_matches(9.55698, "9.5570"));
        assert!(f64_prefix_matches(2.2802767, "2.280"));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (any::<i32>(), 1..10_000i32).prop_map(|(n, d)| rat(n as i64, d as i64))
    }

    fn canonical(r: &Rational) -> bool {
        use num_integer::Integer;
        r.denom().is_positive() && r.numer().gcd(r.denom()) == BigInt::one()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2500))]

        // Canonical form is closed under all four operations.
        #[test]
        fn operations_stay_canonical(a in arb_rational(), b in arb_rational()) {
            prop_assert!(canonical(&(&a + &b)));
            prop_assert!(canonical(&(&a - &b)));
            prop_assert!(canonical(&(&a * &b)));
            if !b.is_zero() {
                prop_assert!(canonical(&(&a / &b)));
            }
        }

        #[test]
        fn comparison_is_a_total_order(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            // antisymmetry
            if a <= b && b <= a {
                prop_assert_eq!(&a, &b);
            }
            // transitivity
            let (x, y, z) = {
                let mut v = [a.clone(), b.clone(), c.clone()];
                v.sort();
                let [x, y, z] = v;
                (x, y, z)
            };
            prop_assert!(x <= y && y <= z && x <= z);
        }

        #[test]
        fn decimal_string_round_trips_as_prefix(a in arb_rational()) {
            let s = decimal_string(&a, 6);
            let parsed = parse_rational(&s).unwrap();
            // truncation error stays below one unit in the last place
            let err = (&a - &parsed).abs();
            prop_assert!(err < rat(1, 1_000_000));
            if !a.is_negative() {
                prop_assert!(parsed <= a);
            }
        }

        #[test]
        fn f64_round_trip_is_close(n in any::<i32>(), d in 1..10_000i32) {
            let r = rat(n as i64, d as i64);
            let f = to_f64(&r);
            let back = Rational::from_f64(f).unwrap();
            // relative error within a few ulps
            let err = (&r - &back).abs();
            let scale = r.abs() + rat_int(1);
            prop_assert!(err <= scale * rat(1, 1_000_000_000_000));
        }
    }
}
