//! Exact scalar arithmetic: arbitrary-precision rationals and the
//! combinatorial primitives (factorials, binomials, integer powers) that
//! every sum in this crate is built from.
//!
//! All arithmetic is exact; there is no floating point anywhere in this
//! module. Values are kept in canonical form (positive denominator, coprime
//! numerator/denominator) by `num_rational::BigRational` itself.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The universal exact scalar. Canonical form (reduced, positive
/// denominator) is maintained by every `Ratio` operation.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor from machine integers. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer-valued rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse a rational literal: `"a/b"`, `"a"`, with optional leading sign.
/// Accepts what [`format_rational`] produces.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num_s
        .parse()
        .map_err(|_| Error::parse(format!("invalid rational numerator `{num_s}`")))?;
    let den: BigInt = den_s
        .parse()
        .map_err(|_| Error::parse(format!("invalid rational denominator `{den_s}`")))?;
    if den.is_zero() {
        return Err(Error::parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// Render as `"num/den"`, omitting the denominator when it is 1.
/// This is the wire format used in all reports.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// n! as an unbounded integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Binomial coefficient C(n, k); returns 0 when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        // Exact at every step: i consecutive integers contain a multiple of i.
        acc = acc * (n - k + i) / i;
    }
    acc
}

/// Exact integer power `q^e` with the empty-product convention `q^0 = 1`
/// (including `0^0 = 1`). Negative exponents of zero are a domain error.
pub fn rational_pow(q: &Rational, e: i64) -> Result<Rational> {
    if e == 0 {
        return Ok(Rational::one());
    }
    if e < 0 && q.is_zero() {
        return Err(Error::domain(format!("0^{e} is undefined")));
    }
    let mag = e.unsigned_abs();
    debug_assert!(mag <= u32::MAX as u64, "exponent out of supported range");
    let num = q.numer().pow(mag as u32);
    let den = q.denom().pow(mag as u32);
    Ok(if e > 0 {
        // numer/denom are coprime and denom > 0, so powers stay canonical.
        Rational::new_raw(num, den)
    } else if num.is_negative() {
        Rational::new_raw(-den, -num)
    } else {
        Rational::new_raw(den, num)
    })
}

/// Powers `q^0, q^1, ..., q^max` by running multiplication.
pub fn power_table(q: &Rational, max: usize) -> Vec<Rational> {
    let mut table = Vec::with_capacity(max + 1);
    table.push(Rational::one());
    for i in 1..=max {
        table.push(&table[i - 1] * q);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(7, 0), BigInt::from(1));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(1000, 2), BigInt::from(499500));
    }

    #[test]
    fn binomial_pascal() {
        for n in 1u64..=64 {
            for k in 1..=n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn pow_basics() {
        assert_eq!(rational_pow(&rat(1, 2), 3).unwrap(), rat(1, 8));
        assert_eq!(rational_pow(&rat(7, 5), 0).unwrap(), rat_int(1));
        assert_eq!(rational_pow(&rat_int(0), 0).unwrap(), rat_int(1));
        assert_eq!(rational_pow(&rat(2, 3), -2).unwrap(), rat(9, 4));
        assert!(rational_pow(&rat_int(0), -1).is_err());
    }

    #[test]
    fn pow_negative_base_negative_exp() {
        assert_eq!(rational_pow(&rat(-2, 3), -2).unwrap(), rat(9, 4));
        assert_eq!(rational_pow(&rat(-2, 3), -3).unwrap(), rat(-27, 8));
    }

    #[test]
    fn format_and_parse_round_trip() {
        for q in [rat(22, 7), rat_int(-3), rat(0, 5), rat(-9, 12)] {
            assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
        assert_eq!(parse_rational("5").unwrap(), rat_int(5));
        assert_eq!(parse_rational("-10/4").unwrap(), rat(-5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(20), BigInt::from(2432902008176640000u64));
    }
}
