//! Numerical classes (rank, c1, ch2) and the operations on them.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{format_rational, int, parse_rational, Field, Rational};
use crate::lattice::Divisor;
use crate::serde_rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChernError {
    #[error("not a (-1)-curve: self-intersection is {0}")]
    NotMinusOneCurve(String),
    #[error("slope undefined: rank 0 and c1.h = 0")]
    UndefinedSlope,
    #[error("HN profile must be nonempty with positive ranks and strictly decreasing slopes")]
    MalformedProfile,
    #[error("malformed Chern character '{0}': {1}")]
    Parse(String, String),
}

/// ch = (rank, c1, ch2). The rank is a field element so symbolic ranks can be carried;
/// parsers only produce integer ranks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChernCharacter<T = Rational> {
    pub rank: T,
    pub c1: Divisor<T>,
    pub ch2: T,
}

impl<T: Field> ChernCharacter<T> {
    pub fn new(rank: T, c1: Divisor<T>, ch2: T) -> Self {
        ChernCharacter { rank, c1, ch2 }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        ChernCharacter::new(self.rank.clone() + o.rank.clone(), self.c1.add_ref(&o.c1), self.ch2.clone() + o.ch2.clone())
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        ChernCharacter::new(self.rank.clone() - o.rank.clone(), self.c1.sub_ref(&o.c1), self.ch2.clone() - o.ch2.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        ChernCharacter::new(k.clone() * self.rank.clone(), self.c1.scale(k), k.clone() * self.ch2.clone())
    }

    /// c1^2 - 2 r ch2.
    pub fn discriminant(&self) -> T {
        self.c1.self_intersection() - T::from_i64(2) * self.rank.clone() * self.ch2.clone()
    }
}

pub fn ch_line_bundle<T: Field>(d: &Divisor<T>) -> ChernCharacter<T> {
    ChernCharacter::new(T::one(), d.clone(), T::half() * d.self_intersection())
}

pub fn ch_structure_sheaf<T: Field>() -> ChernCharacter<T> {
    ch_line_bundle(&Divisor::zero())
}

/// ch(O(e)) - ch(O) = (0, e, -1/2) for a (-1)-curve e.
pub fn ch_restriction(e: &Divisor<Rational>) -> Result<ChernCharacter<Rational>, ChernError> {
    let sq = e.self_intersection();
    if sq != int(-1) {
        return Err(ChernError::NotMinusOneCurve(format_rational(&sq)));
    }
    Ok(ch_line_bundle(e).sub_ref(&ch_structure_sheaf()))
}

/// ch(I_Z(-C)) for a zero-dimensional Z of the given length.
pub fn ch_ideal_twist<T: Field>(length: u64, c: &Divisor<T>) -> ChernCharacter<T> {
    ChernCharacter::new(T::one(), c.neg_ref(), T::half() * c.self_intersection() - T::from_i64(length as i64))
}

/// v * ch(O(d)).
pub fn twist<T: Field>(v: &ChernCharacter<T>, d: &Divisor<T>) -> ChernCharacter<T> {
    let c1 = v.c1.add_ref(&d.scale(&v.rank));
    let ch2 = v.ch2.clone() + v.c1.dot(d) + v.rank.clone() * T::half() * d.self_intersection();
    ChernCharacter::new(v.rank.clone(), c1, ch2)
}

/// Numerical dual (r, -c1, ch2); with it Z at -D of the dual is the conjugate of Z at D.
pub fn dual<T: Field>(v: &ChernCharacter<T>) -> ChernCharacter<T> {
    ChernCharacter::new(v.rank.clone(), v.c1.neg_ref(), v.ch2.clone())
}

/// Slope with +infinity for torsion classes of positive degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtRational {
    Finite(Rational),
    PlusInfinity,
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
            (ExtRational::Finite(_), ExtRational::PlusInfinity) => Ordering::Less,
            (ExtRational::PlusInfinity, ExtRational::Finite(_)) => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }
}

pub fn mu_slope(v: &ChernCharacter<Rational>, h: &Divisor<Rational>) -> Result<ExtRational, ChernError> {
    let deg = v.c1.dot(h);
    if v.rank.is_zero() {
        if deg.is_positive() {
            Ok(ExtRational::PlusInfinity)
        } else {
            Err(ChernError::UndefinedSlope)
        }
    } else {
        Ok(ExtRational::Finite(deg / &v.rank))
    }
}

/// Floating slope against a real ample class (used with normalized frames).
pub fn mu_slope_f64(v: &ChernCharacter<f64>, h: &Divisor<f64>) -> f64 {
    let deg = v.c1.dot(h);
    if v.rank == 0.0 {
        if deg > 0.0 {
            f64::INFINITY
        } else {
            f64::NAN
        }
    } else {
        deg / v.rank
    }
}

pub fn bogomolov_holds(v: &ChernCharacter<Rational>) -> bool {
    !v.discriminant().is_negative()
}

impl ChernCharacter<Rational> {
    pub fn lift<T: Field>(&self) -> ChernCharacter<T> {
        ChernCharacter::new(T::from_rational(&self.rank), self.c1.lift(), T::from_rational(&self.ch2))
    }

    pub fn to_f64(&self) -> ChernCharacter<f64> {
        self.lift()
    }

    /// Parses "r,(p,q,r),ch2" with rational components and an integer rank.
    pub fn parse(s: &str) -> Result<Self, ChernError> {
        let err = |m: &str| ChernError::Parse(s.to_string(), m.to_string());
        let open = s.find('(').ok_or_else(|| err("missing '('"))?;
        let close = s.find(')').ok_or_else(|| err("missing ')'"))?;
        if close < open {
            return Err(err("mismatched parentheses"));
        }
        let head = s[..open].trim().trim_end_matches(',').trim();
        let inner = &s[open + 1..close];
        let tail = s[close + 1..].trim().trim_start_matches(',').trim();
        let rank = parse_rational(head).ok_or_else(|| err(&format!("bad rank '{head}'")))?;
        if !rank.is_integer() {
            return Err(err("rank must be an integer"));
        }
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 3 {
            return Err(err("c1 needs three components"));
        }
        let mut c = Vec::new();
        for p in parts {
            c.push(parse_rational(p).ok_or_else(|| err(&format!("bad rational '{}'", p.trim())))?);
        }
        let ch2 = parse_rational(tail).ok_or_else(|| err(&format!("bad ch2 '{tail}'")))?;
        Ok(ChernCharacter::new(rank, Divisor::new(c[0].clone(), c[1].clone(), c[2].clone()), ch2))
    }
}

impl fmt::Display for ChernCharacter<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.c1;
        write!(
            f,
            "{},({},{},{}),{}",
            format_rational(&self.rank),
            format_rational(&c.p),
            format_rational(&c.q),
            format_rational(&c.r),
            format_rational(&self.ch2)
        )
    }
}

#[derive(Serialize, Deserialize)]
struct ChernJson {
    #[serde(with = "serde_rational")]
    rank: Rational,
    c1: Divisor<Rational>,
    #[serde(with = "serde_rational")]
    ch2: Rational,
}

impl Serialize for ChernCharacter<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ChernJson { rank: self.rank.clone(), c1: self.c1.clone(), ch2: self.ch2.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChernCharacter<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = ChernJson::deserialize(d)?;
        if !j.rank.is_integer() {
            return Err(serde::de::Error::custom("rank must be an integer"));
        }
        Ok(ChernCharacter::new(j.rank, j.c1, j.ch2))
    }
}

/// Harder-Narasimhan factors as (rank, slope), slopes strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HNProfile {
    factors: Vec<(u32, Rational)>,
}

impl HNProfile {
    pub fn new(factors: Vec<(u32, Rational)>) -> Result<HNProfile, ChernError> {
        if factors.iter().any(|(r, _)| *r == 0) {
            return Err(ChernError::MalformedProfile);
        }
        if factors.windows(2).any(|w| w[0].1 <= w[1].1) {
            return Err(ChernError::MalformedProfile);
        }
        Ok(HNProfile { factors })
    }

    pub fn empty() -> HNProfile {
        HNProfile { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[(u32, Rational)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn first_slope(&self) -> Option<&Rational> {
        self.factors.first().map(|f| &f.1)
    }

    pub fn last_slope(&self) -> Option<&Rational> {
        self.factors.last().map(|f| &f.1)
    }

    pub fn total_rank(&self) -> u32 {
        self.factors.iter().map(|f| f.0).sum()
    }
}
