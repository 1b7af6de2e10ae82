//! Exact rational scalars and the few integer helpers used throughout.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = BigRational;

/// Shorthand for a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Parses "p/q" or "p" with optional sign. No decimal notation.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// Floor of an exact rational as a BigInt.
pub fn floor_int(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil_int(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Exact arithmetic on rationals with division-by-zero as an error value.
pub fn rational_arith(a: &Rational, b: &Rational, op: char) -> Result<Rational, Error> {
    match op {
        '+' => Ok(a + b),
        '-' => Ok(a - b),
        '*' | 'x' => Ok(a * b),
        '/' => {
            if b.is_zero() {
                Err(Error::DivisionByZero)
            } else {
                Ok(a / b)
            }
        }
        _ => Err(Error::Parse(format!("unknown operator {op:?}"))),
    }
}

/// Renders `q` as "p/q" or "p".
pub fn format_rational(q: &Rational) -> String {
    if is_integer(q) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn is_positive_integer(q: &Rational) -> bool {
    is_integer(q) && q.is_positive()
}
