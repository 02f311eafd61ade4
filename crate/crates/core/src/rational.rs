//! Exact rational numbers used for every weight and LP value.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact rational arithmetic on 128-bit integers.
pub type Rational = num_rational::Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p/q`, a plain integer, or a finite decimal such as `0.5`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let malformed = || ParseRationalError::Malformed(text.to_string());
    if let Some((num, den)) = text.split_once('/') {
        let num = i128::from_str(num.trim()).map_err(|_| malformed())?;
        let den = i128::from_str(den.trim()).map_err(|_| malformed())?;
        if den == 0 {
            return Err(ParseRationalError::ZeroDenominator(text.to_string()));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 30 {
            return Err(malformed());
        }
        let negative = int.trim_start().starts_with('-');
        let int_part = if int.is_empty() || int == "-" {
            0
        } else {
            i128::from_str(int).map_err(|_| malformed())?
        };
        let scale = 10i128.pow(frac.len() as u32);
        let frac_part = i128::from_str(frac).map_err(|_| malformed())?;
        let magnitude = int_part.abs() * scale + frac_part;
        let num = if negative { -magnitude } else { magnitude };
        return Ok(Rational::new(num, scale));
    }
    i128::from_str(text).map(Rational::from_integer).map_err(|_| malformed())
}

/// Canonical text form: `p` for integers, `p/q` otherwise (always reduced).
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Newtype giving a [`Rational`] the fraction-string JSON encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Frac(pub Rational);

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl From<Rational> for Frac {
    fn from(value: Rational) -> Self {
        Frac(value)
    }
}

impl Serialize for Frac {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Frac {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Int(i64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(text) => parse_rational(&text)
                .map(Frac)
                .map_err(serde::de::Error::custom),
            Repr::Int(v) => Ok(Frac(Rational::from_integer(v as i128))),
        }
    }
}

/// Serde adapter for `Rational` fields (`#[serde(with = "crate::rational::serde_frac")]`).
pub mod serde_frac {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        Frac(*value).serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        Frac::deserialize(deserializer).map(|f| f.0)
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_frac_vec {
    use super::*;

    pub fn serialize<S: Serializer>(values: &[Rational], serializer: S) -> Result<S::Ok, S::Error> {
        let wrapped: Vec<Frac> = values.iter().copied().map(Frac).collect();
        wrapped.serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<Frac>::deserialize(deserializer).map(|v| v.into_iter().map(|f| f.0).collect())
    }
}

/// Integer images of a family of rationals under a common denominator.
///
/// Hot loops (walk search, min-cost flow) run on these scaled integers and
/// convert back with [`ScaledWeights::unscale`].
#[derive(Debug, Clone)]
pub struct ScaledWeights {
    pub denominator: i128,
    pub values: Vec<i128>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("weights need a common denominator beyond 128-bit range")]
pub struct ScaleOverflow;

impl ScaledWeights {
    pub fn new<'a, I>(weights: I) -> Result<Self, ScaleOverflow>
    where
        I: IntoIterator<Item = &'a Rational>,
        I::IntoIter: Clone,
    {
        let iter = weights.into_iter();
        let mut denominator: i128 = 1;
        for w in iter.clone() {
            let d = *w.denom();
            let g = denominator.gcd(&d);
            denominator = (denominator / g).checked_mul(d).ok_or(ScaleOverflow)?;
        }
        let values = iter
            .map(|w| {
                w.numer()
                    .checked_mul(denominator / w.denom())
                    .ok_or(ScaleOverflow)
            })
            .collect::<Result<Vec<_>, _>>()?;
        // Leave headroom: walk gains sum up to a few hundred terms.
        let bound = values.iter().map(|v| v.abs()).max().unwrap_or(0);
        if bound > i128::MAX >> 24 {
            return Err(ScaleOverflow);
        }
        Ok(ScaledWeights {
            denominator,
            values,
        })
    }

    pub fn unscale(&self, value: i128) -> Rational {
        Rational::new(value, self.denominator)
    }
}
