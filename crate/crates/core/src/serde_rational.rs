//! JSON form of rationals: integers as numbers, everything else as "p/q" strings.

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::field::{format_rational, int, parse_rational, Rational};

pub struct Wrap<'a>(pub &'a Rational);

impl Serialize for Wrap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Ok(n) = i64::try_from(self.0.numer()) {
                return s.serialize_i64(n);
            }
        }
        s.serialize_str(&format_rational(self.0))
    }
}

pub struct Owned(pub Rational);

impl<'de> Deserialize<'de> for Owned {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Owned;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                write!(f, "an integer or a \"p/q\" string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Owned, E> {
                Ok(Owned(int(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Owned, E> {
                i64::try_from(v).map(|n| Owned(int(n))).map_err(|_| E::custom("integer too large"))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Owned, E> {
                parse_rational(v).map(Owned).ok_or_else(|| E::custom(format!("malformed rational '{v}'")))
            }
        }
        d.deserialize_any(V)
    }
}

pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    Wrap(q).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    Owned::deserialize(d).map(|o| o.0)
}

/// Optional frame seed as null or a three-element array.
pub mod seed {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Option<[Rational; 3]>, s: S) -> Result<S::Ok, S::Error> {
        q.as_ref().map(|[a, b, c]| [Wrap(a), Wrap(b), Wrap(c)]).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<[Rational; 3]>, D::Error> {
        let v: Option<[Owned; 3]> = Deserialize::deserialize(d)?;
        Ok(v.map(|[a, b, c]| [a.0, b.0, c.0]))
    }
}
