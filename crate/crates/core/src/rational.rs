//! Exact rational helpers shared by every crate in the workspace.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational as Rational;

use crate::error::CoreError;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn big(value: impl Into<BigInt>) -> Rational {
    Rational::from_integer(value.into())
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `a`, `-a` or `a/b`.
pub fn parse_rational(text: &str) -> Result<Rational, CoreError> {
    let bad = || CoreError::BadNumber(text.to_string());
    let text = text.trim();
    match text.split_once('/') {
        Some((numer, denom)) => {
            let numer: BigInt = numer.trim().parse().map_err(|_| bad())?;
            let denom: BigInt = denom.trim().parse().map_err(|_| bad())?;
            if denom.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(numer, denom))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// Formats as `a` when integral and `a/b` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn ceil_to_int(value: &Rational) -> BigInt {
    value.ceil().to_integer()
}

pub fn floor_to_int(value: &Rational) -> BigInt {
    value.floor().to_integer()
}

/// Smallest integer `k` with `k * divisor >= value`; `divisor` must be positive.
pub fn ceil_div(value: &Rational, divisor: &Rational) -> BigInt {
    ceil_to_int(&(value / divisor))
}

/// Least common multiple of all denominators, so that scaling by it makes
/// every value integral.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn to_u64(value: &BigInt) -> Option<u64> {
    if value.is_negative() {
        None
    } else {
        value.to_u64()
    }
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

pub fn max_of<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<Rational> {
    values.into_iter().max().cloned()
}

pub fn sum_of<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, v| acc + v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for text in ["3", "7/2", "-5/3", "0"] {
            assert_eq!(format_rational(&parse_rational(text).unwrap()), text);
        }
        assert_eq!(parse_rational("4/2").unwrap(), int(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn ceil_div_rounds_up() {
        assert_eq!(ceil_div(&int(7), &int(2)), BigInt::from(4));
        assert_eq!(ceil_div(&int(6), &int(2)), BigInt::from(3));
        assert_eq!(ceil_div(&ratio(1, 3), &ratio(1, 6)), BigInt::from(2));
    }

    #[test]
    fn common_denominator_clears_fractions() {
        let values = [ratio(1, 4), ratio(5, 6), int(3)];
        let scale = Rational::from_integer(common_denominator(values.iter()));
        assert_eq!(scale, int(12));
        assert!(values.iter().all(|v| (v * &scale).is_integer()));
    }
}
