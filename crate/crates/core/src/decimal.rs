//! Decimal rendering of exact rationals, and matching against printed
//! reference values.
//!
//! Rationals are the source of truth everywhere; this module is the
//! output boundary. A value "matches" a printed decimal when writing
//! it at the same precision reproduces the printed digits under either
//! rounding convention (round-half-even or truncation) — published
//! tables are not consistent about which they used.

use crate::{Int, Rational};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

fn pow10(e: u32) -> Int {
    Int::from(10).pow(e)
}

/// Nearest integer, ties to even.
pub fn round_half_even(x: &Rational) -> Int {
    let floor = x.floor().to_integer();
    let frac = x - Rational::from_integer(floor.clone());
    let half = Rational::new(Int::from(1), Int::from(2));
    if frac < half {
        floor
    } else if frac > half {
        floor + 1
    } else if floor.is_even() {
        floor
    } else {
        floor + 1
    }
}

/// Fixed-point rendering with `decimals` fractional digits,
/// round-half-even.
pub fn dec(x: &Rational, decimals: usize) -> String {
    let unit = pow10(decimals as u32);
    let scaled = round_half_even(&(x * Rational::from_integer(unit)));
    let sign = if scaled.is_negative() { "-" } else { "" };
    let digits = scaled.abs().to_string();
    if decimals == 0 {
        return format!("{sign}{digits}");
    }
    let digits = if digits.len() <= decimals {
        format!("{}{}", "0".repeat(decimals + 1 - digits.len()), digits)
    } else {
        digits
    };
    let split = digits.len() - decimals;
    format!("{sign}{}.{}", &digits[..split], &digits[split..])
}

/// Scientific rendering with `sig` significant digits, e.g.
/// `1.9980e-3`.
pub fn sci(x: &Rational, sig: usize) -> String {
    assert!(sig >= 1);
    if x.is_zero() {
        return format!("{}e0", dec(&Rational::zero(), sig - 1));
    }
    let mut exp = 0i32;
    let abs = x.abs();
    let one = Rational::from_integer(Int::from(1));
    let ten = Rational::from_integer(Int::from(10));
    let mut m = abs.clone();
    while m >= ten {
        m /= ten.clone();
        exp += 1;
    }
    while m < one {
        m *= ten.clone();
        exp -= 1;
    }
    let mut rendered = dec(&m, sig - 1);
    // Rounding the mantissa can carry it to 10.0...
    if rendered.starts_with("10") {
        exp += 1;
        rendered = dec(&(m / ten), sig - 1);
    }
    let sign = if x.is_negative() { "-" } else { "" };
    format!("{sign}{rendered}e{exp}")
}

/// A parsed printed decimal: its exact value and the place value of
/// its last digit.
#[derive(Clone, Debug, PartialEq)]
pub struct Printed {
    pub value: Rational,
    pub unit: Rational,
}

/// Parses `"0.194"`, `"2"`, `"1.9980e-3"` style decimals.
pub fn parse_printed(text: &str) -> Option<Printed> {
    let text = text.trim();
    let (mantissa, exp) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (mantissa, neg) = match mantissa.strip_prefix('-') {
        Some(rest) => (rest, true),
        None => (mantissa, false),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits: Int = format!("{int_part}{frac_part}").parse().ok()?;
    let place = exp - frac_part.len() as i32;
    let unit = if place >= 0 {
        Rational::from_integer(pow10(place as u32))
    } else {
        Rational::new(Int::from(1), pow10(-place as u32))
    };
    let mut value = Rational::from_integer(digits) * unit.clone();
    if neg {
        value = -value;
    }
    Some(Printed { value, unit })
}

/// True when `x` written at the printed precision reproduces
/// `printed`, under round-half-even or truncation.
pub fn matches_printed(x: &Rational, printed: &str) -> bool {
    let Some(p) = parse_printed(printed) else {
        return false;
    };
    let target = &p.value / &p.unit; // integer by construction
    let scaled = x / &p.unit;
    let trunc = scaled.trunc().to_integer();
    let rhe = round_half_even(&scaled);
    let target = target.to_integer();
    target == trunc || target == rhe
}

/// Digits after the decimal point of a printed value (0 when none).
pub fn printed_decimals(printed: &str) -> usize {
    let mantissa = printed.split(['e', 'E']).next().unwrap_or(printed);
    mantissa.split_once('.').map_or(0, |(_, f)| f.len())
}

/// Convenience: f64 view of a rational, for display only.
pub fn approx(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn fixed_point_rendering() {
        assert_eq!(dec(&rat(2, 3), 3), "0.667");
        assert_eq!(dec(&rat(1, 8), 2), "0.12"); // ties to even
        assert_eq!(dec(&rat(3, 8), 2), "0.38");
        assert_eq!(dec(&rat(-2, 3), 3), "-0.667");
        assert_eq!(dec(&rat(5, 1), 0), "5");
        assert_eq!(dec(&rat(4, 3), 1), "1.3");
    }

    #[test]
    fn scientific_rendering() {
        assert_eq!(sci(&rat(5, 210), 5), "2.3810e-2");
        assert_eq!(sci(&rat(6, 3003), 5), "1.9980e-3");
        assert_eq!(sci(&rat(1, 5), 5), "2.0000e-1");
        assert_eq!(sci(&rat(9999999, 1000), 3), "1.00e4");
    }

    #[test]
    fn printed_matching_accepts_round_or_trunc() {
        // 21/14406 = 0.001457726...: truncates to 0.001457, rounds to
        // 0.001458; both count as a match at 6 decimals.
        let v = rat(21, 14406);
        assert!(matches_printed(&v, "0.001457"));
        assert!(matches_printed(&v, "0.001458"));
        assert!(!matches_printed(&v, "0.001456"));
        assert!(matches_printed(&v, "0.00146")); // correct 5-decimal rounding
        assert!(!matches_printed(&v, "0.00147"));

        assert!(matches_printed(&rat(4, 3), "1.333"));
        assert!(matches_printed(&rat(2, 1), "2"));
        assert!(matches_printed(&rat(5, 210), "2.3810e-2"));
        assert!(!matches_printed(&rat(5, 210), "2.3811e-2"));
    }

    #[test]
    fn printed_parsing() {
        let p = parse_printed("1.9980e-3").unwrap();
        assert_eq!(p.value, rat(19980, 10_000_000));
        assert_eq!(p.unit, rat(1, 10_000_000));
        assert_eq!(printed_decimals("1.9980e-3"), 4);
        assert_eq!(printed_decimals("2"), 0);
        assert!(parse_printed("x").is_none());
        assert!(parse_printed("").is_none());
    }
}
