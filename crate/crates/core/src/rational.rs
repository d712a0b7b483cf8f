//! Exact rationals and the `"p/q"` text form used on every external surface.

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{invalid, Result};

pub type Rational = Ratio<i128>;

pub fn int(v: i128) -> Rational {
    Rational::from_integer(v)
}

pub fn ratio(p: i128, q: i128) -> Rational {
    Rational::new(p, q)
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: i128 = p.parse().map_err(|_| invalid(format!("bad rational numerator in {s:?}")))?;
    let q: i128 = q.parse().map_err(|_| invalid(format!("bad rational denominator in {s:?}")))?;
    if q.is_zero() {
        return Err(invalid(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(p, q))
}

pub fn ceil_int(r: &Rational) -> i128 {
    r.ceil().to_integer()
}

pub fn floor_int(r: &Rational) -> i128 {
    r.floor().to_integer()
}

/// Returns the value as an integer if it is one.
pub fn as_integer(r: &Rational) -> Option<i128> {
    r.is_integer().then(|| r.to_integer())
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn non_negative(r: &Rational) -> bool {
    !r.is_negative()
}

/// Serde adapter storing a rational as a `"p/q"` string.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for s in ["3/5", "-7/4", "2", "0"] {
            assert_eq!(format(&parse(s).unwrap()), s);
        }
        assert_eq!(format(&parse("6/4").unwrap()), "3/2");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn rounding() {
        assert_eq!(ceil_int(&ratio(81, 2)), 41);
        assert_eq!(floor_int(&ratio(81, 2)), 40);
        assert_eq!(ceil_int(&ratio(-1, 2)), 0);
        assert_eq!(as_integer(&ratio(6, 3)), Some(2));
        assert_eq!(as_integer(&ratio(7, 3)), None);
    }
}
