//! Picard lattice of the blow-up of P2 at two points, in the basis (C1, C2, E).
//!
//! Gram matrix: C1.C2 = 1, E^2 = -1, all other products zero.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{int, rat_to_f64, Field, Rational};
use crate::serde_rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("invalid frame seed (a, b, c) = ({0}, {1}, {2}): need a+c > 0, b+c > 0, c < 0")]
    InvalidFrame(String, String, String),
}

/// pC1 + qC2 + rE.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Divisor<T = Rational> {
    pub p: T,
    pub q: T,
    pub r: T,
}

impl<T: Field> Divisor<T> {
    pub fn new(p: T, q: T, r: T) -> Self {
        Divisor { p, q, r }
    }

    pub fn zero() -> Self {
        Divisor::new(T::zero(), T::zero(), T::zero())
    }

    pub fn c1() -> Self {
        Divisor::new(T::one(), T::zero(), T::zero())
    }

    pub fn c2() -> Self {
        Divisor::new(T::zero(), T::one(), T::zero())
    }

    pub fn e() -> Self {
        Divisor::new(T::zero(), T::zero(), T::one())
    }

    pub fn scale(&self, k: &T) -> Self {
        Divisor::new(k.clone() * self.p.clone(), k.clone() * self.q.clone(), k.clone() * self.r.clone())
    }

    pub fn dot(&self, o: &Self) -> T {
        self.p.clone() * o.q.clone() + self.q.clone() * o.p.clone() - self.r.clone() * o.r.clone()
    }

    pub fn self_intersection(&self) -> T {
        self.dot(self)
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        Divisor::new(self.p.clone() + o.p.clone(), self.q.clone() + o.q.clone(), self.r.clone() + o.r.clone())
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        Divisor::new(self.p.clone() - o.p.clone(), self.q.clone() - o.q.clone(), self.r.clone() - o.r.clone())
    }

    pub fn neg_ref(&self) -> Self {
        Divisor::new(-self.p.clone(), -self.q.clone(), -self.r.clone())
    }
}

impl Divisor<Rational> {
    pub fn ints(p: i64, q: i64, r: i64) -> Self {
        Divisor::new(int(p), int(q), int(r))
    }

    pub fn lift<T: Field>(&self) -> Divisor<T> {
        Divisor::new(T::from_rational(&self.p), T::from_rational(&self.q), T::from_rational(&self.r))
    }

    pub fn to_f64(&self) -> Divisor<f64> {
        Divisor::new(rat_to_f64(&self.p), rat_to_f64(&self.q), rat_to_f64(&self.r))
    }

    pub fn is_integral(&self) -> bool {
        self.p.is_integer() && self.q.is_integer() && self.r.is_integer()
    }
}

impl<T: Field> Add for Divisor<T> {
    type Output = Divisor<T>;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}

impl<T: Field> Sub for Divisor<T> {
    type Output = Divisor<T>;
    fn sub(self, o: Self) -> Self {
        self.sub_ref(&o)
    }
}

impl<T: Field> Neg for Divisor<T> {
    type Output = Divisor<T>;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

impl fmt::Display for Divisor<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::field::format_rational as fr;
        write!(f, "[{}, {}, {}]", fr(&self.p), fr(&self.q), fr(&self.r))
    }
}

impl Serialize for Divisor<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = s.serialize_tuple(3)?;
        t.serialize_element(&serde_rational::Wrap(&self.p))?;
        t.serialize_element(&serde_rational::Wrap(&self.q))?;
        t.serialize_element(&serde_rational::Wrap(&self.r))?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Divisor<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: [serde_rational::Owned; 3] = Deserialize::deserialize(d)?;
        let [p, q, r] = v;
        Ok(Divisor::new(p.0, q.0, r.0))
    }
}

/// (p+1)(q+1) - r(r-1)/2.
pub fn euler_characteristic<T: Field>(d: &Divisor<T>) -> T {
    (d.p.clone() + T::one()) * (d.q.clone() + T::one()) - T::half() * d.r.clone() * (d.r.clone() - T::one())
}

/// p+r > 0, q+r > 0, r < 0. The variant without r < 0 would accept C1 + C2, which meets E in 0.
pub fn is_ample(d: &Divisor<Rational>) -> bool {
    (&d.p + &d.r).is_positive() && (&d.q + &d.r).is_positive() && d.r.is_negative()
}

/// Effective with negative self-intersection: p, q >= 0, p+q+r >= 0 and r^2 > 2pq.
/// Non-integral input is rejected.
pub fn is_negative_effective_curve(d: &Divisor<Rational>) -> bool {
    if !d.is_integral() {
        return false;
    }
    let zero = Rational::zero();
    d.p >= zero
        && d.q >= zero
        && (&d.p + &d.q + &d.r) >= zero
        && &d.r * &d.r > int(2) * &d.p * &d.q
}

/// [E1, E2, E] = [C2 - E, C1 - E, E].
pub fn minus_one_curves() -> Vec<Divisor<Rational>> {
    vec![Divisor::ints(0, 1, -1), Divisor::ints(1, 0, -1), Divisor::ints(0, 0, 1)]
}

/// Orthonormal frame H, G1, G2 with H^2 = 1 and G1^2 = G2^2 = -1.
#[derive(Clone, Debug)]
pub struct Frame<T = f64> {
    pub seed: Option<[Rational; 3]>,
    pub h: Divisor<T>,
    pub g1: Divisor<T>,
    pub g2: Divisor<T>,
}

impl<T: Field> Frame<T> {
    /// Builds the frame from seed values and the radicals w1 = sqrt(2ab), w2 = sqrt(2ab - c^2).
    /// The caller supplies the radicals, which is what lets the same code build symbolic frames.
    pub fn from_radicals(a: T, b: T, c: T, w1: T, w2: T) -> Frame<T> {
        let h = Divisor::new(a.clone() / w2.clone(), b.clone() / w2.clone(), c.clone() / w2.clone());
        let g1 = Divisor::new(a.clone() / w1.clone(), -(b.clone() / w1.clone()), T::zero());
        let n = w1 * w2;
        let two_ab = T::from_i64(2) * a.clone() * b.clone();
        let g2 = Divisor::new(a * c.clone() / n.clone(), b * c / n.clone(), two_ab / n);
        Frame { seed: None, h, g1, g2 }
    }

    /// (d.H, -d.G1, -d.G2), so that d = h H + g1 G1 + g2 G2.
    pub fn coords(&self, d: &Divisor<T>) -> (T, T, T) {
        (d.dot(&self.h), -d.dot(&self.g1), -d.dot(&self.g2))
    }

    pub fn reconstruct(&self, h: &T, g1: &T, g2: &T) -> Divisor<T> {
        self.h.scale(h).add_ref(&self.g1.scale(g1)).add_ref(&self.g2.scale(g2))
    }

    /// sH + u1 G1 + u2 G2.
    pub fn point(&self, s: &T, u1: &T, u2: &T) -> Divisor<T> {
        self.reconstruct(s, u1, u2)
    }

    /// The six Gram products H^2, G1^2, G2^2, H.G1, H.G2, G1.G2.
    pub fn gram(&self) -> [T; 6] {
        [
            self.h.self_intersection(),
            self.g1.self_intersection(),
            self.g2.self_intersection(),
            self.h.dot(&self.g1),
            self.h.dot(&self.g2),
            self.g1.dot(&self.g2),
        ]
    }
}

pub fn validate_seed(a: &Rational, b: &Rational, c: &Rational) -> Result<(), LatticeError> {
    let zero = Rational::zero();
    if (a + c) > zero && (b + c) > zero && *c < zero {
        Ok(())
    } else {
        use crate::field::format_rational as fr;
        Err(LatticeError::InvalidFrame(fr(a), fr(b), fr(c)))
    }
}

/// Floating frame from an exact seed.
pub fn build_frame(a: &Rational, b: &Rational, c: &Rational) -> Result<Frame<f64>, LatticeError> {
    validate_seed(a, b, c)?;
    let (af, bf, cf) = (rat_to_f64(a), rat_to_f64(b), rat_to_f64(c));
    let w1 = (2.0 * af * bf).sqrt();
    let w2 = (2.0 * af * bf - cf * cf).sqrt();
    let mut f = Frame::from_radicals(af, bf, cf, w1, w2);
    f.seed = Some([a.clone(), b.clone(), c.clone()]);
    Ok(f)
}

pub fn coords_in_frame<T: Field>(d: &Divisor<T>, f: &Frame<T>) -> (T, T, T) {
    f.coords(d)
}

/// Seed of the frame used for the maximal walls: (4/15, 2/15, -1/15).
pub fn reference_seed() -> [Rational; 3] {
    use crate::field::rat;
    [rat(4, 15), rat(2, 15), rat(-1, 15)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn d(p: i64, q: i64, r: i64) -> Divisor {
        Divisor::ints(p, q, r)
    }

    #[test]
    fn intersection_table() {
        assert_eq!(d(1, 0, 0).dot(&d(0, 1, 0)), int(1));
        assert_eq!(d(0, 0, 1).dot(&d(0, 0, 1)), int(-1));
        assert_eq!(d(1, 0, 0).self_intersection(), int(0));
        assert_eq!(d(1, 1, -1).self_intersection(), int(1));
        assert_eq!(d(0, 1, -1).dot(&d(0, 0, 1)), int(1));
        let curves = minus_one_curves();
        assert_eq!(curves[0].dot(&curves[1]), int(0));
    }

    #[test]
    fn euler_values() {
        assert_eq!(euler_characteristic(&d(0, 0, 0)), int(1));
        assert_eq!(euler_characteristic(&d(1, 1, 1)), int(4));
        assert_eq!(euler_characteristic(&d(0, -1, 1)), int(0));
    }

    #[test]
    fn ampleness() {
        assert!(!is_ample(&d(1, 1, -1)));
        assert!(is_ample(&Divisor::new(rat(4, 15), rat(2, 15), rat(-1, 15))));
        assert!(is_ample(&d(2, 2, -1)));
        assert!(!is_ample(&d(1, 1, 0)));
    }

    #[test]
    fn negative_curves() {
        assert!(is_negative_effective_curve(&d(0, 0, 1)));
        assert!(is_negative_effective_curve(&d(0, 1, -1)));
        assert!(!is_negative_effective_curve(&d(1, 1, -1)));
        assert!(!is_negative_effective_curve(&Divisor::new(rat(1, 2), int(0), int(0))));
        for c in minus_one_curves() {
            assert_eq!(c.self_intersection(), int(-1));
            assert!(is_negative_effective_curve(&c));
        }
    }

    #[test]
    fn reference_frame_values() {
        let [a, b, c] = reference_seed();
        let f = build_frame(&a, &b, &c).unwrap();
        let r15 = 15f64.sqrt();
        let close = |x: f64, y: f64| (x - y).abs() < 1e-12;
        assert!(close(f.h.p, 4.0 / r15) && close(f.h.q, 2.0 / r15) && close(f.h.r, -1.0 / r15));
        assert!(close(f.g1.p, 1.0) && close(f.g1.q, -0.5) && close(f.g1.r, 0.0));
        assert!(close(f.g2.p, -1.0 / r15) && close(f.g2.q, -0.5 / r15) && close(f.g2.r, 4.0 / r15));
        let (h, g1, g2) = f.coords(&d(0, 0, -1).to_f64());
        assert!(close(h, -1.0 / r15) && close(g1, 0.0) && close(g2, -4.0 / r15));
        let (h, g1, g2) = f.coords(&d(0, -1, 1).to_f64());
        assert!(close(h, -3.0 / r15) && close(g1, 1.0) && close(g2, 3.0 / r15));
    }

    #[test]
    fn invalid_frames() {
        assert!(build_frame(&int(1), &int(1), &int(0)).is_err());
        assert!(build_frame(&int(1), &int(1), &int(-1)).is_err());
        let f = build_frame(&int(1), &int(1), &rat(-1, 2)).unwrap();
        let g = f.gram();
        let expect = [1.0, -1.0, -1.0, 0.0, 0.0, 0.0];
        for k in 0..6 {
            assert!((g[k] - expect[k]).abs() < 1e-12);
        }
    }
}
