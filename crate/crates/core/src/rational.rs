//! Exact rationals and the `p/q` text format used in every output.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Coefficient field of every vector in the crate.
pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {0:?} as an exact fraction p/q")]
pub struct ParseRationalError(pub String);

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `n/d`, reduced.
///
/// # Panics
/// If `d == 0`.
pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// `(-1)^k` as a rational.
pub fn sign(negative: bool) -> Q {
    if negative {
        -Q::one()
    } else {
        Q::one()
    }
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse(s: &str) -> Result<Q, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Q::new(n, d))
}

/// Canonical `p/q` text; integers print without a denominator.
pub fn fmt(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Splits the printed form of a linear combination, `{(x): c, (y): d}`,
/// into its `(x, c)` pairs. Keys may not contain parentheses.
pub fn parse_combination(s: &str) -> Result<Vec<(&str, Q)>, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let body = s.trim().strip_prefix('{').and_then(|t| t.strip_suffix('}')).ok_or_else(err)?;
    let mut out = Vec::new();
    let mut rest = body.trim();
    while !rest.is_empty() {
        let inner = rest.strip_prefix('(').ok_or_else(err)?;
        let (key, after) = inner.split_once(')').ok_or_else(err)?;
        let after = after.trim_start().strip_prefix(':').ok_or_else(err)?;
        let (coeff, tail) = after.split_once(',').unwrap_or((after, ""));
        out.push((key.trim(), parse(coeff).map_err(|_| err())?));
        rest = tail.trim();
    }
    Ok(out)
}

pub fn is_unit(q: &Q) -> bool {
    q.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse("1/2").unwrap(), frac(1, 2));
        assert_eq!(parse("-4/8").unwrap(), frac(-1, 2));
        let terms = parse_combination("{(0:[1,1]): -1/2, (0:[2]): 1/2}").unwrap();
        assert_eq!(terms, vec![("0:[1,1]", frac(-1, 2)), ("0:[2]", frac(1, 2))]);
        assert_eq!(parse_combination("{}").unwrap(), vec![]);
        assert!(parse_combination("{(0:[1]) 1}").is_err());
        assert_eq!(parse(" 3 ").unwrap(), int(3));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert_eq!(fmt(&frac(-3, 6)), "-1/2");
        assert_eq!(fmt(&int(7)), "7");
    }
}
