//! Exact rationals and their canonical text form.
//!
//! The text form is `num/den` in lowest terms with a positive denominator,
//! or a bare integer when the denominator is one. Parsing accepts both.

use num_rational::Ratio;
use serde::{de, Deserialize, Deserializer, Serializer};

pub type Rational = Ratio<i64>;

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|e| format!("invalid rational `{s}`: {e}"))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d) = (parse_int(n)?, parse_int(d)?);
            if d == 0 {
                return Err(format!("invalid rational `{s}`: zero denominator"));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Serde adapter: a rational as a `"num/den"` string. Deserialization also
/// accepts a JSON integer.
pub mod as_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        RationalRepr::deserialize(d).map(|r| r.0)
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod vec_as_string {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<RationalRepr>::deserialize(d)?;
        Ok(v.into_iter().map(|r| r.0).collect())
    }
}

pub(crate) struct RationalRepr(pub Rational);

impl<'de> Deserialize<'de> for RationalRepr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = RationalRepr;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a rational as \"num/den\" or an integer")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<Self::Value, E> {
                parse_rational(s).map(RationalRepr).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                Ok(RationalRepr(Rational::from_integer(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                i64::try_from(v)
                    .map(|v| RationalRepr(Rational::from_integer(v)))
                    .map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}
