//! Exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Canonical text form: `n` for integers, `n/d` otherwise, ASCII minus.
pub fn format_q(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parses `[-]digits[/digits]`. On failure returns the byte offset of the
/// offending character together with a message.
pub fn parse_q(s: &str) -> Result<Q, (usize, String)> {
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err((0, "empty coefficient".into()));
    }
    let mut pos = 0;
    let negative = bytes[0] == b'-';
    if negative {
        pos = 1;
    }
    let num_start = pos;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == num_start {
        return Err((pos, unexpected(s, pos)));
    }
    let numer: BigInt = s[num_start..pos].parse().map_err(|_| (num_start, "bad numerator".to_string()))?;
    let mut denom = BigInt::one();
    if pos < bytes.len() {
        if bytes[pos] != b'/' {
            return Err((pos, unexpected(s, pos)));
        }
        pos += 1;
        let den_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == den_start {
            return Err((pos, unexpected(s, pos)));
        }
        if pos < bytes.len() {
            return Err((pos, unexpected(s, pos)));
        }
        denom = s[den_start..pos].parse().map_err(|_| (den_start, "bad denominator".to_string()))?;
        if denom.is_zero() {
            return Err((den_start, "zero denominator".into()));
        }
    }
    let numer = if negative { -numer } else { numer };
    Ok(Q::new(numer, denom))
}

fn unexpected(s: &str, pos: usize) -> String {
    match s[pos..].chars().next() {
        Some(c) => format!("unexpected character {c:?}"),
        None => "unexpected end of coefficient".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("-3/2").unwrap(), qf(-3, 2));
        assert_eq!(parse_q("6/4").unwrap(), qf(3, 2));
        assert_eq!(format_q(&qf(-6, 4)), "-3/2");
        assert_eq!(format_q(&q(7)), "7");
    }

    #[test]
    fn rejects_unicode_minus() {
        let err = parse_q("\u{2212}3/2").unwrap_err();
        assert_eq!(err.0, 0);
        assert!(parse_q("3/").is_err());
        assert!(parse_q("3/0").is_err());
        assert_eq!(parse_q("1.5").unwrap_err().0, 1);
    }
}
