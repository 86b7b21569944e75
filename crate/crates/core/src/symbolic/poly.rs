use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::field::{format_rational, int, rat_to_f64, Rational};

/// Polynomial variables. The first seven are the proof variables of the rank-1 walls;
/// the rest carry slice coordinates and generic classes for charge-level identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    A,
    B,
    C,
    X,
    Y,
    Z,
    S0,
    S,
    U1,
    U2,
    T,
    R,
    Al,
    Be,
    Ga,
    Ch,
    P1,
    P2,
    P3,
    L,
    Lam,
}

pub const NVARS: usize = 21;

pub const ALL_VARS: [Var; NVARS] = [
    Var::A,
    Var::B,
    Var::C,
    Var::X,
    Var::Y,
    Var::Z,
    Var::S0,
    Var::S,
    Var::U1,
    Var::U2,
    Var::T,
    Var::R,
    Var::Al,
    Var::Be,
    Var::Ga,
    Var::Ch,
    Var::P1,
    Var::P2,
    Var::P3,
    Var::L,
    Var::Lam,
];

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::A => "a",
            Var::B => "b",
            Var::C => "c",
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::S0 => "s0",
            Var::S => "s",
            Var::U1 => "u1",
            Var::U2 => "u2",
            Var::T => "t",
            Var::R => "r",
            Var::Al => "al",
            Var::Be => "be",
            Var::Ga => "ga",
            Var::Ch => "ch",
            Var::P1 => "p1",
            Var::P2 => "p2",
            Var::P3 => "p3",
            Var::L => "l",
            Var::Lam => "lam",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        ALL_VARS.iter().copied().find(|v| v.name() == s)
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

pub const W1: u8 = 1;
pub const W2: u8 = 2;

/// Exponent vector plus the radical bits (bit 0 for w1, bit 1 for w2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mono {
    pub exps: [u8; NVARS],
    pub rad: u8,
}

impl Mono {
    pub fn one() -> Mono {
        Mono { exps: [0; NVARS], rad: 0 }
    }

    pub fn var(v: Var) -> Mono {
        let mut m = Mono::one();
        m.exps[v.index()] = 1;
        m
    }

    fn var_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn degree(&self) -> u32 {
        self.var_degree() + self.rad.count_ones()
    }

    pub fn is_constant(&self) -> bool {
        self.exps.iter().all(|&e| e == 0) && self.rad == 0
    }

    fn mul_vars(&self, other: &Mono) -> [u8; NVARS] {
        let mut e = self.exps;
        for (k, x) in other.exps.iter().enumerate() {
            e[k] += x;
        }
        e
    }

    fn divides(&self, other: &Mono) -> bool {
        (self.rad & !other.rad) == 0 && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    fn quotient(&self, by: &Mono) -> Mono {
        let mut e = self.exps;
        for (k, x) in by.exps.iter().enumerate() {
            e[k] -= x;
        }
        Mono { exps: e, rad: self.rad & !by.rad }
    }
}

// Graded lexicographic, radicals compared last. Radicals count towards the grading so that
// the order is multiplicative on radical-free divisors.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
            .then_with(|| self.rad.cmp(&other.rad))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial over Q in `Var` with adjoined w1 = sqrt(2ab), w2 = sqrt(2ab - c^2).
/// Always stored in normal form: each monomial has w1- and w2-degree at most one.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RadPoly {
    terms: BTreeMap<Mono, Rational>,
}

impl RadPoly {
    pub fn zero() -> RadPoly {
        RadPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> RadPoly {
        RadPoly::constant(int(1))
    }

    pub fn constant(q: Rational) -> RadPoly {
        let mut p = RadPoly::zero();
        p.add_term(Mono::one(), q);
        p
    }

    pub fn var(v: Var) -> RadPoly {
        let mut p = RadPoly::zero();
        p.add_term(Mono::var(v), int(1));
        p
    }

    pub fn w1() -> RadPoly {
        let mut p = RadPoly::zero();
        p.add_term(Mono { exps: [0; NVARS], rad: W1 }, int(1));
        p
    }

    pub fn w2() -> RadPoly {
        let mut p = RadPoly::zero();
        p.add_term(Mono { exps: [0; NVARS], rad: W2 }, int(1));
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, Rational)>) -> RadPoly {
        let mut p = RadPoly::zero();
        for (m, c) in terms {
            p.push_reduced(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn equals_zero(&self) -> bool {
        self.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_constant())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(int(0));
        }
        if self.is_constant() {
            self.terms.get(&Mono::one()).cloned()
        } else {
            None
        }
    }

    pub fn has_radicals(&self) -> bool {
        self.terms.keys().any(|m| m.rad != 0)
    }

    pub fn has_rad(&self, bit: u8) -> bool {
        self.terms.keys().any(|m| m.rad & bit != 0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exps[v.index()] > 0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exps[v.index()] as u32).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Mono, &Rational)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Adds c * m where m may carry w1^2 or w2^2 (encoded by `sq` bits), applying the rewrite rules.
    fn push_product(&mut self, exps: [u8; NVARS], rad: u8, sq: u8, c: Rational) {
        let a = Var::A.index();
        let b = Var::B.index();
        let cc = Var::C.index();
        // w1^2 -> 2ab
        let mut parts: Vec<([u8; NVARS], Rational)> = vec![(exps, c)];
        if sq & W1 != 0 {
            for p in parts.iter_mut() {
                p.0[a] += 1;
                p.0[b] += 1;
                p.1 *= int(2);
            }
        }
        // w2^2 -> 2ab - c^2
        if sq & W2 != 0 {
            let mut next = Vec::with_capacity(parts.len() * 2);
            for (e, k) in parts {
                let mut e1 = e;
                e1[a] += 1;
                e1[b] += 1;
                next.push((e1, k.clone() * int(2)));
                let mut e2 = e;
                e2[cc] += 2;
                next.push((e2, -k));
            }
            parts = next;
        }
        for (e, k) in parts {
            self.add_term(Mono { exps: e, rad }, k);
        }
    }

    fn push_reduced(&mut self, m: Mono, c: Rational) {
        self.push_product(m.exps, m.rad, 0, c);
    }

    pub fn scale(&self, q: &Rational) -> RadPoly {
        if q.is_zero() {
            return RadPoly::zero();
        }
        RadPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect() }
    }

    pub fn neg_ref(&self) -> RadPoly {
        self.scale(&int(-1))
    }

    pub fn mul_ref(&self, other: &RadPoly) -> RadPoly {
        let mut out = RadPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let exps = m1.mul_vars(m2);
                let sq = m1.rad & m2.rad;
                let rad = m1.rad ^ m2.rad;
                out.push_product(exps, rad, sq, c1 * c2);
            }
        }
        out
    }

    pub fn add_ref(&self, other: &RadPoly) -> RadPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &RadPoly) -> RadPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> RadPoly {
        let mut acc = RadPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Re-applies the rewrite rules. Values are kept normal at all times, so this is the identity;
    /// it exists so the idempotence property can be stated.
    pub fn normalize(&self) -> RadPoly {
        RadPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Galois conjugation: negate every monomial carrying one of the given radical bits an odd number of times.
    pub fn conjugate(&self, bits: u8) -> RadPoly {
        RadPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    if (m.rad & bits).count_ones() % 2 == 1 {
                        (m.clone(), -c.clone())
                    } else {
                        (m.clone(), c.clone())
                    }
                })
                .collect(),
        }
    }

    /// Splits into the coefficients of 1, w1, w2, w1w2.
    pub fn radical_parts(&self) -> [RadPoly; 4] {
        let mut parts = [RadPoly::zero(), RadPoly::zero(), RadPoly::zero(), RadPoly::zero()];
        for (m, c) in &self.terms {
            let k = m.rad as usize;
            parts[k].add_term(Mono { exps: m.exps, rad: 0 }, c.clone());
        }
        parts
    }

    /// Exact division by a radical-free polynomial. Returns None when `d` does not divide `self`.
    /// Since {d} is a Groebner basis of (d) the first non-divisible leading term proves non-divisibility.
    pub fn div_exact(&self, d: &RadPoly) -> Option<RadPoly> {
        if d.has_radicals() {
            return None;
        }
        let (lm, lc) = d.leading()?;
        let lm = lm.clone();
        let lc = lc.clone();
        let mut rem = self.clone();
        let mut quot = RadPoly::zero();
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = m.quotient(&lm);
            let qc = c / &lc;
            for (dm, dc) in &d.terms {
                let exps = dm.mul_vars(&qm);
                rem.add_term(Mono { exps, rad: qm.rad }, -(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Content and sign normalization: returns (k, p) with self = k * p and p having leading coefficient 1.
    pub fn monic(&self) -> (Rational, RadPoly) {
        match self.leading() {
            None => (int(0), RadPoly::zero()),
            Some((_, lc)) => {
                let lc = lc.clone();
                let inv = Rational::one() / &lc;
                (lc, self.scale(&inv))
            }
        }
    }

    /// Substitutes a polynomial for a variable.
    pub fn substitute_var(&self, v: Var, by: &RadPoly) -> RadPoly {
        let deg = self.degree_in(v) as usize;
        if deg == 0 {
            return self.clone();
        }
        let mut powers = vec![RadPoly::one()];
        for k in 1..=deg {
            let next = powers[k - 1].mul_ref(by);
            powers.push(next);
        }
        let mut out = RadPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exps[v.index()] as usize;
            let mut rest = m.clone();
            rest.exps[v.index()] = 0;
            let mono = RadPoly { terms: BTreeMap::from([(rest, c.clone())]) };
            out = out.add_ref(&mono.mul_ref(&powers[e]));
        }
        out
    }

    /// Floating evaluation with an explicit value per variable and per radical.
    pub fn eval_f64(&self, vals: &[f64; NVARS], w1: f64, w2: f64) -> f64 {
        let mut sum = 0.0;
        for (m, c) in &self.terms {
            let mut t = rat_to_f64(c);
            for (k, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    t *= vals[k].powi(e as i32);
                }
            }
            if m.rad & W1 != 0 {
                t *= w1;
            }
            if m.rad & W2 != 0 {
                t *= w2;
            }
            sum += t;
        }
        sum
    }

    /// Largest absolute monomial value at a point; used to make residuals relative.
    pub fn magnitude_f64(&self, vals: &[f64; NVARS], w1: f64, w2: f64) -> f64 {
        let mut best: f64 = 0.0;
        for (m, c) in &self.terms {
            let mut t = rat_to_f64(c).abs();
            for (k, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    t *= vals[k].abs().powi(e as i32);
                }
            }
            if m.rad & W1 != 0 {
                t *= w1.abs();
            }
            if m.rad & W2 != 0 {
                t *= w2.abs();
            }
            best = best.max(t);
        }
        best
    }

    /// Exact evaluation of a radical-free polynomial at rational values; radicals must be absent.
    pub fn eval_rational(&self, vals: &[Rational; NVARS]) -> Option<Rational> {
        let mut sum = int(0);
        for (m, c) in &self.terms {
            if m.rad != 0 {
                return None;
            }
            let mut t = c.clone();
            for (k, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    t *= &vals[k];
                }
            }
            sum += t;
        }
        Some(sum)
    }
}

impl fmt::Display for RadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            for v in ALL_VARS {
                let e = m.exps[v.index()];
                match e {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    _ => factors.push(format!("{}^{}", v.name(), e)),
                }
            }
            if m.rad & W1 != 0 {
                factors.push("w1".into());
            }
            if m.rad & W2 != 0 {
                factors.push("w2".into());
            }
            if factors.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadPoly({})", self)
    }
}

impl Add for RadPoly {
    type Output = RadPoly;
    fn add(self, rhs: RadPoly) -> RadPoly {
        self.add_ref(&rhs)
    }
}

impl Sub for RadPoly {
    type Output = RadPoly;
    fn sub(self, rhs: RadPoly) -> RadPoly {
        self.sub_ref(&rhs)
    }
}

impl Mul for RadPoly {
    type Output = RadPoly;
    fn mul(self, rhs: RadPoly) -> RadPoly {
        self.mul_ref(&rhs)
    }
}

impl Neg for RadPoly {
    type Output = RadPoly;
    fn neg(self) -> RadPoly {
        self.scale(&int(-1))
    }
}

impl<'a> Add<&'a RadPoly> for &'a RadPoly {
    type Output = RadPoly;
    fn add(self, rhs: &RadPoly) -> RadPoly {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a RadPoly> for &'a RadPoly {
    type Output = RadPoly;
    fn sub(self, rhs: &RadPoly) -> RadPoly {
        self.sub_ref(rhs)
    }
}

impl<'a> Mul<&'a RadPoly> for &'a RadPoly {
    type Output = RadPoly;
    fn mul(self, rhs: &RadPoly) -> RadPoly {
        self.mul_ref(rhs)
    }
}
