use serde::{Deserialize, Serialize};

use super::{wall_equation, SlicePoly, WallError, T, U1, U2};
use crate::chern::ChernCharacter;
use crate::field::Field;
use crate::lattice::Frame;

/// The half-plane u = u0 in the slice spanned by H and G = d1 G1 + d2 G2, with (d1, d2) a unit vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Plane {
    pub u0: f64,
    pub dir: (f64, f64),
}

impl Plane {
    pub fn new(u0: f64, dir: (f64, f64)) -> Result<Plane, WallError> {
        let n = dir.0.hypot(dir.1);
        if !(n > 0.0) || !n.is_finite() {
            return Err(WallError::Invalid("zero direction".into()));
        }
        Ok(Plane { u0, dir: (dir.0 / n, dir.1 / n) })
    }

    pub fn u1(&self) -> f64 {
        self.u0 * self.dir.0
    }

    pub fn u2(&self) -> f64 {
        self.u0 * self.dir.1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Semicircle {
    pub center: f64,
    pub radius: f64,
}

impl Semicircle {
    pub fn lo(&self) -> f64 {
        self.center - self.radius
    }

    pub fn hi(&self) -> f64 {
        self.center + self.radius
    }

    pub fn t_at(&self, s: f64) -> Option<f64> {
        let h = self.radius * self.radius - (s - self.center).powi(2);
        (h > 0.0).then(|| h.sqrt())
    }
}

/// (A, B, C) with wall / t = A (s^2 + t^2) + B s + C on the plane, or an error when it has another shape.
pub fn plane_restriction<F: Field>(full: &SlicePoly<F>, u1: &F, u2: &F) -> Result<(F, F, F), WallError> {
    let p = full.substitute(U1, &SlicePoly::constant(u1.clone())).substitute(U2, &SlicePoly::constant(u2.clone()));
    if p.is_zero() {
        return Err(WallError::DegenerateWall);
    }
    if p.min_degree_in(T) < 1 {
        return Err(WallError::Invalid("wall polynomial without a factor t".into()));
    }
    let a = p.coeff([2, 0, 0, 1]);
    let at = p.coeff([0, 0, 0, 3]);
    let b = p.coeff([1, 0, 0, 1]);
    let c = p.coeff([0, 0, 0, 1]);
    let rest = p
        .sub(&SlicePoly::monomial([2, 0, 0, 1], a.clone()))
        .sub(&SlicePoly::monomial([0, 0, 0, 3], at.clone()))
        .sub(&SlicePoly::monomial([1, 0, 0, 1], b.clone()))
        .sub(&SlicePoly::monomial([0, 0, 0, 1], c.clone()));
    if !rest.is_zero() || !(a.clone() - at).is_zero() {
        return Err(WallError::Invalid("restriction is not of semicircle form".into()));
    }
    Ok((a, b, c))
}

fn restriction_f64(full: &SlicePoly<f64>, plane: &Plane) -> Result<(f64, f64, f64), WallError> {
    let p = full.substitute(U1, &SlicePoly::constant(plane.u1())).substitute(U2, &SlicePoly::constant(plane.u2()));
    let scale = p.terms().map(|(_, c)| c.abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(WallError::DegenerateWall);
    }
    let tol = 1e-12 * scale;
    let a = p.coeff([2, 0, 0, 1]);
    let at = p.coeff([0, 0, 0, 3]);
    let b = p.coeff([1, 0, 0, 1]);
    let c = p.coeff([0, 0, 0, 1]);
    for (e, v) in p.terms() {
        let known = matches!(e, [2, 0, 0, 1] | [0, 0, 0, 3] | [1, 0, 0, 1] | [0, 0, 0, 1]);
        if !known && v.abs() > tol {
            return Err(WallError::Invalid("restriction is not of semicircle form".into()));
        }
    }
    if (a - at).abs() > tol {
        return Err(WallError::Invalid("restriction is not of semicircle form".into()));
    }
    if a.abs() <= tol {
        return Err(WallError::DegenerateWall);
    }
    Ok((a, b, c))
}

/// Completes the square in the wall restricted to the plane. `Ok(None)` is the empty case.
pub fn semicircle_in_pi(
    sub: &ChernCharacter<f64>,
    quot: &ChernCharacter<f64>,
    frame: &Frame<f64>,
    plane: &Plane,
) -> Result<Option<Semicircle>, WallError> {
    let w = wall_equation(sub, quot, frame);
    let (a, b, c) = restriction_f64(&w.full, plane)?;
    let center = -b / (2.0 * a);
    let r2 = center * center - c / a;
    if r2 <= 0.0 {
        return Ok(None);
    }
    Ok(Some(Semicircle { center, radius: r2.sqrt() }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NestOrder {
    Equal,
    /// The first lies inside the second.
    Inside,
    Outside,
    /// Separated or touching from outside.
    Disjoint,
    Crossing,
}

/// Compares the s-intervals of two semicircles in the same plane, with a relative tolerance.
pub fn nest_order(w1: &Semicircle, w2: &Semicircle, tol: f64) -> NestOrder {
    let scale = [w1.lo(), w1.hi(), w2.lo(), w2.hi()].iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let eps = tol * scale;
    let close = |x: f64, y: f64| (x - y).abs() <= eps;
    if close(w1.lo(), w2.lo()) && close(w1.hi(), w2.hi()) {
        return NestOrder::Equal;
    }
    if w1.hi() <= w2.lo() + eps || w2.hi() <= w1.lo() + eps {
        return NestOrder::Disjoint;
    }
    if w1.lo() >= w2.lo() - eps && w1.hi() <= w2.hi() + eps {
        return NestOrder::Inside;
    }
    if w2.lo() >= w1.lo() - eps && w2.hi() <= w1.hi() + eps {
        return NestOrder::Outside;
    }
    NestOrder::Crossing
}

/// Whether the wall's semicircle in the plane reaches the vertical line s = s_star at some t > 0.
pub fn meets_vertical(
    sub: &ChernCharacter<f64>,
    quot: &ChernCharacter<f64>,
    frame: &Frame<f64>,
    plane: &Plane,
    s_star: f64,
) -> Result<bool, WallError> {
    Ok(match semicircle_in_pi(sub, quot, frame, plane)? {
        None => false,
        Some(sc) => (s_star - sc.center).abs() < sc.radius,
    })
}
