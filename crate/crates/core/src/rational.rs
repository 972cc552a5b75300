//! Rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact coefficient type used everywhere in the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical `p/q` form with a positive denominator, always showing the denominator.
pub fn to_fraction_string(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Short form: `p` for integers, `p/q` otherwise.
pub fn to_short_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `-p` or `p/q` (q > 0).
pub fn parse_rational(text: &str) -> Result<Q> {
    let text = text.trim();
    let bad = || Error::Parse {
        offset: 0,
        message: format!("invalid rational `{text}`"),
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => {
            if d.starts_with(['-', '+']) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if den.is_zero() || den.is_negative() {
        return Err(bad());
    }
    Ok(Q::new(num, den))
}
