//! Central charge Z_{D,tH}, Bridgeland slope and the heart-membership windows.

use serde::{Deserialize, Serialize};

use crate::chern::{dual, twist, ChernCharacter, ChernError, HNProfile};
use crate::field::{rat_to_f64, Field, Rational};
use crate::lattice::{Divisor, Frame};

/// sH + u1 G1 + u2 G2 with scale t > 0, over a frame.
#[derive(Clone, Debug)]
pub struct StabilityPoint<T = f64> {
    pub frame: Frame<T>,
    pub s: T,
    pub u1: T,
    pub u2: T,
    pub t: T,
}

impl<T: Field> StabilityPoint<T> {
    pub fn new(frame: Frame<T>, s: T, u1: T, u2: T, t: T) -> Self {
        StabilityPoint { frame, s, u1, u2, t }
    }

    pub fn d(&self) -> Divisor<T> {
        self.frame.point(&self.s, &self.u1, &self.u2)
    }

    /// (-s, -u1, -u2, t).
    pub fn mirrored(&self) -> Self {
        StabilityPoint::new(self.frame.clone(), -self.s.clone(), -self.u1.clone(), -self.u2.clone(), self.t.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Charge<T = f64> {
    pub re: T,
    pub im: T,
}

impl<T: Field> Charge<T> {
    pub fn conj(&self) -> Charge<T> {
        Charge { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn add_ref(&self, o: &Charge<T>) -> Charge<T> {
        Charge { re: self.re.clone() + o.re.clone(), im: self.im.clone() + o.im.clone() }
    }

    pub fn sub_ref(&self, o: &Charge<T>) -> Charge<T> {
        Charge { re: self.re.clone() - o.re.clone(), im: self.im.clone() - o.im.clone() }
    }
}

/// Z = -ch2 + c1.D - (r/2)(D^2 - t^2 H^2) + i t (c1.H - r D.H), for any D and H.
pub fn central_charge_at<T: Field>(v: &ChernCharacter<T>, d: &Divisor<T>, h: &Divisor<T>, t: &T) -> Charge<T> {
    let t2h2 = t.clone() * t.clone() * h.self_intersection();
    let re = -v.ch2.clone() + v.c1.dot(d) - v.rank.clone() * T::half() * (d.self_intersection() - t2h2);
    let im = t.clone() * (v.c1.dot(h) - v.rank.clone() * d.dot(h));
    Charge { re, im }
}

pub fn central_charge<T: Field>(v: &ChernCharacter<T>, p: &StabilityPoint<T>) -> Charge<T> {
    central_charge_at(v, &p.d(), &p.frame.h, &p.t)
}

/// -Re/Im, with +infinity on Im = 0.
pub fn slope_of(z: &Charge<f64>) -> f64 {
    if z.im == 0.0 {
        f64::INFINITY
    } else {
        -z.re / z.im
    }
}

pub fn bridgeland_slope(v: &ChernCharacter<f64>, p: &StabilityPoint<f64>) -> f64 {
    slope_of(&central_charge(v, p))
}

/// Half-open window [lower, upper) of s = D.H for which F lies in the tilted heart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeartWindow {
    pub lower: Option<Rational>,
    pub upper: Rational,
}

impl HeartWindow {
    pub fn contains(&self, s: f64) -> bool {
        let lo_ok = match &self.lower {
            None => true,
            Some(l) => rat_to_f64(l) <= s,
        };
        lo_ok && s < rat_to_f64(&self.upper)
    }

    pub fn contains_exact(&self, s: &Rational) -> bool {
        let lo_ok = match &self.lower {
            None => true,
            Some(l) => l <= s,
        };
        lo_ok && s < &self.upper
    }
}

/// [first slope of H^-1(Q), last slope of F). The lower end is -infinity for an empty quotient profile.
pub fn heart_window(sub: &HNProfile, quot_h_minus1: &HNProfile) -> Result<HeartWindow, ChernError> {
    let upper = sub.last_slope().ok_or(ChernError::MalformedProfile)?.clone();
    Ok(HeartWindow { lower: quot_h_minus1.first_slope().cloned(), upper })
}

/// (Z_{D,tH}(v), Z_{D-D',tH}(v(-D'))); equal by multiplicativity of the Chern character.
pub fn transport_check<T: Field>(v: &ChernCharacter<T>, p: &StabilityPoint<T>, dprime: &Divisor<T>) -> (Charge<T>, Charge<T>) {
    let d = p.d();
    let z1 = central_charge_at(v, &d, &p.frame.h, &p.t);
    let z2 = central_charge_at(&twist(v, &dprime.neg_ref()), &d.sub_ref(dprime), &p.frame.h, &p.t);
    (z1, z2)
}

/// (Z at p of v, Z at the mirrored point of dual(v)); the second is the conjugate of the first.
pub fn dual_transport_check<T: Field>(v: &ChernCharacter<T>, p: &StabilityPoint<T>) -> (Charge<T>, Charge<T>) {
    (central_charge(v, p), central_charge(&dual(v), &p.mirrored()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::{ch_line_bundle, ch_structure_sheaf};
    use crate::field::{int, rat};
    use crate::lattice::build_frame;

    fn frame() -> Frame<f64> {
        build_frame(&int(1), &int(1), &rat(-1, 2)).unwrap()
    }

    #[test]
    fn skyscraper_and_structure_sheaf() {
        let p = StabilityPoint::new(frame(), -0.3, 0.2, 0.7, 1.3);
        let sky = ChernCharacter::new(0.0, Divisor::zero(), 1.0);
        let z = central_charge(&sky, &p);
        assert_eq!(z, Charge { re: -1.0, im: 0.0 });
        assert_eq!(bridgeland_slope(&sky, &p), f64::INFINITY);
        let p0 = StabilityPoint::new(frame(), 0.0, 0.0, 0.0, 1.0);
        let z = central_charge(&ch_structure_sheaf::<f64>(), &p0);
        assert!((z.re - 0.5).abs() < 1e-15 && z.im == 0.0);
    }

    #[test]
    fn unnormalized_expansion() {
        // O(C1) at D = 0, t = 1, H' = (a, b, c): Re = (2ab - c^2)/2, Im = b.
        let (a, b, c) = (rat(3, 2), rat(5, 7), rat(-1, 3));
        let h = Divisor::new(a.clone(), b.clone(), c.clone());
        let v = ch_line_bundle(&Divisor::ints(1, 0, 0));
        let z = central_charge_at(&v, &Divisor::zero(), &h, &int(1));
        assert_eq!(z.re, (int(2) * &a * &b - &c * &c) / int(2));
        assert_eq!(z.im, b);
    }

    #[test]
    fn slope_shift_by_points() {
        let p = StabilityPoint::new(frame(), -0.4, 0.1, -0.2, 0.9);
        let q = ChernCharacter::new(0.0, Divisor::new(0.0, 0.0, 1.0), -0.5);
        let q3 = ChernCharacter::new(0.0, Divisor::new(0.0, 0.0, 1.0), -3.5);
        let z = central_charge(&q, &p);
        let gap = bridgeland_slope(&q, &p) - bridgeland_slope(&q3, &p);
        assert!((gap - 3.0 / z.im).abs() < 1e-12);
        let unit = Charge { re: -1.0, im: 1.0 };
        assert_eq!(slope_of(&unit), 1.0);
    }

    #[test]
    fn windows() {
        let w = heart_window(&HNProfile::new(vec![(1, int(5))]).unwrap(), &HNProfile::empty()).unwrap();
        assert_eq!(w, HeartWindow { lower: None, upper: int(5) });
        let w = heart_window(
            &HNProfile::new(vec![(1, int(3)), (1, int(1))]).unwrap(),
            &HNProfile::new(vec![(2, int(-2))]).unwrap(),
        )
        .unwrap();
        assert_eq!(w, HeartWindow { lower: Some(int(-2)), upper: int(1) });
        assert!(w.contains(-2.0) && w.contains(0.99) && !w.contains(1.0));
        assert!(heart_window(&HNProfile::empty(), &HNProfile::empty()).is_err());
    }

    #[test]
    fn transports() {
        let p = StabilityPoint::new(frame(), -0.3, 0.8, -1.1, 0.6);
        let v = ch_line_bundle(&Divisor::new(0.0, 0.0, 1.0));
        let (z1, z2) = transport_check(&v, &p, &Divisor::new(0.0, 0.0, 1.0));
        assert!((z1.re - z2.re).abs() < 1e-12 && (z1.im - z2.im).abs() < 1e-12);
        let (z1, z2) = transport_check(&v, &p, &Divisor::zero());
        assert_eq!(z1, z2);
        let v = ch_line_bundle(&Divisor::new(0.0, 0.0, -1.0));
        let (z1, z2) = dual_transport_check(&v, &p);
        assert!((z1.re - z2.re).abs() < 1e-12 && (z1.im + z2.im).abs() < 1e-12);
    }
}
