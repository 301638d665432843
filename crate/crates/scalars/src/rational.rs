//! Arbitrary-precision rationals and their `"p/q"` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Always `p/q` with `q > 0`, including integers (`3/1`).
pub fn to_pq(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational `{0}`")]
pub struct ParseRationalError(pub String);

/// Accepts `p/q`, `p` and `-p/q`; the denominator must be nonzero.
pub fn parse_q(s: &str) -> Result<Q, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| err())?;
    let d = BigInt::from_str(d).map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(n, d))
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Height of a rational: max(|p|, q).
pub fn height(x: &Q) -> BigInt {
    let p = x.numer().abs();
    if &p > x.denom() {
        p
    } else {
        x.denom().clone()
    }
}

pub mod serde_q {
    //! `#[serde(with = "serde_q")]` for `Q` fields.
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_pq(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pq_roundtrip() {
        for x in [q(3, 4), q(-6, 8), qi(0), qi(7), q(5, -10)] {
            assert_eq!(parse_q(&to_pq(&x)).unwrap(), x);
        }
        assert_eq!(to_pq(&q(-6, 8)), "-3/4");
        assert_eq!(to_pq(&qi(0)), "0/1");
        assert_eq!(to_pq(&q(5, -10)), "-1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
        assert!(parse_q("1/2/3").is_err());
        assert_eq!(parse_q(" 4 ").unwrap(), qi(4));
    }

    #[test]
    fn integer_test() {
        assert!(is_integer(&q(6, 3)));
        assert!(!is_integer(&q(5, 2)));
        assert_eq!(height(&q(-7, 3)), BigInt::from(7));
    }
}
