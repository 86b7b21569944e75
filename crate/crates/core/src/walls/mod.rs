//! Walls in the slice space (s, u1, u2, t) and their t -> 0 limits.

mod bertram;
mod conic;
mod quadric;
mod semicircle;
mod slicepoly;

use thiserror::Error;

pub use bertram::{bertram_split, BertramSplit};
pub use conic::{classify_conic, conic_apex, conic_discriminant, ConicType};
pub use quadric::{
    char_poly, classify_quadric, det3, phi_quadric, quadratic_part, quadric_signature, torsion_wall_matrix,
    torsion_wall_matrix_with, Mat3, QuadricShape, Signature,
};
pub use semicircle::{meets_vertical, nest_order, plane_restriction, semicircle_in_pi, NestOrder, Plane, Semicircle};
pub use slicepoly::{SlicePoly, S, T, U1, U2};

use crate::chern::ChernCharacter;
use crate::field::Field;
use crate::lattice::Frame;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WallError {
    #[error("degenerate direction: d_h = 0")]
    DegenerateDirection,
    #[error("null class: c1^2 = 0")]
    NullClass,
    #[error("degenerate wall: the restriction is identically zero or linear")]
    DegenerateWall,
    #[error("conic outside the classification table")]
    Unclassified,
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// Re Z and Im Z of a class as polynomials in (s, u1, u2, t), built from the frame's Gram products.
pub fn charge_poly<F: Field>(v: &ChernCharacter<F>, frame: &Frame<F>) -> (SlicePoly<F>, SlicePoly<F>) {
    let basis = [&frame.h, &frame.g1, &frame.g2];
    let mut c1_d = SlicePoly::zero();
    let mut d_h = SlicePoly::zero();
    let mut d_sq = SlicePoly::zero();
    for i in 0..3 {
        let xi = SlicePoly::var(i);
        c1_d = c1_d.add(&xi.scale(&v.c1.dot(basis[i])));
        d_h = d_h.add(&xi.scale(&basis[i].dot(&frame.h)));
        for j in 0..3 {
            let g = basis[i].dot(basis[j]);
            d_sq = d_sq.add(&xi.mul(&SlicePoly::var(j)).scale(&g));
        }
    }
    let t = SlicePoly::var(T);
    let t2h2 = t.mul(&t).scale(&frame.h.self_intersection());
    let half_r = F::half() * v.rank.clone();
    let re = SlicePoly::constant(-v.ch2.clone()).add(&c1_d).sub(&d_sq.sub(&t2h2).scale(&half_r));
    let im = t.mul(&SlicePoly::constant(v.c1.dot(&frame.h)).sub(&d_h.scale(&v.rank)));
    (re, im)
}

/// The wall polynomial -Re Z(F) Im Z(F') + Re Z(F') Im Z(F), and its t -> 0 reduction.
#[derive(Clone, Debug)]
pub struct WallQuadric<F> {
    pub full: SlicePoly<F>,
    pub reduced: SlicePoly<F>,
}

impl<F: Field> WallQuadric<F> {
    /// Coefficient of s^i u1^j u2^k in the reduced form.
    pub fn reduced_coeff(&self, i: u8, j: u8, k: u8) -> F {
        self.reduced.coeff([i, j, k, 0])
    }
}

impl WallQuadric<f64> {
    pub fn eval(&self, s: f64, u1: f64, u2: f64, t: f64) -> f64 {
        self.full.eval_f64(s, u1, u2, t)
    }

    pub fn eval_reduced(&self, s: f64, u1: f64, u2: f64) -> f64 {
        self.reduced.eval_f64(s, u1, u2, 0.0)
    }

    /// Interior: the wall expression is positive.
    pub fn is_interior(&self, s: f64, u1: f64, u2: f64, t: f64) -> bool {
        self.eval(s, u1, u2, t) > 0.0
    }

    /// Coefficients (s^2 + u1^2 + u2^2, s u1, s u2, s) when the reduced form has that shape.
    pub fn rank_one_shape(&self) -> [f64; 4] {
        [self.reduced_coeff(2, 0, 0), self.reduced_coeff(1, 1, 0), self.reduced_coeff(1, 0, 1), self.reduced_coeff(1, 0, 0)]
    }
}

pub fn wall_equation<F: Field>(sub: &ChernCharacter<F>, quot: &ChernCharacter<F>, frame: &Frame<F>) -> WallQuadric<F> {
    let (re_f, im_f) = charge_poly(sub, frame);
    let (re_q, im_q) = charge_poly(quot, frame);
    let full = re_q.mul(&im_f).sub(&re_f.mul(&im_q));
    let reduced = full.t_reduced();
    WallQuadric { full, reduced }
}

/// Frame coordinates of a class: d_h = c1.H, d_g1 = -c1.G1, d_g2 = -c1.G2, plus ch2 and c1^2.
#[derive(Clone, Debug)]
pub struct RankOneData<F> {
    pub dh: F,
    pub dg1: F,
    pub dg2: F,
    pub ch2: F,
    pub c1_sq: F,
}

impl<F: Field> RankOneData<F> {
    pub fn new(v: &ChernCharacter<F>, frame: &Frame<F>) -> Self {
        let (dh, dg1, dg2) = frame.coords(&v.c1);
        RankOneData { dh, dg1, dg2, ch2: v.ch2.clone(), c1_sq: v.c1.self_intersection() }
    }
}

/// d_h (s^2 + u1^2 + u2^2) - 2s (d_g1 u1 + d_g2 u2) - 2 ch2 s.
pub fn phi_with<F: Field>(d: &RankOneData<F>, s: &F, u1: &F, u2: &F) -> F {
    let two = F::from_i64(2);
    let norm = s.square() + u1.square() + u2.square();
    d.dh.clone() * norm
        - two.clone() * s.clone() * (d.dg1.clone() * u1.clone() + d.dg2.clone() * u2.clone())
        - two * d.ch2.clone() * s.clone()
}

pub fn phi<F: Field>(sub: &ChernCharacter<F>, frame: &Frame<F>, point: (&F, &F, &F)) -> F {
    phi_with(&RankOneData::new(sub, frame), point.0, point.1, point.2)
}

/// Center (s0, (d_g1/d_h) s0, (d_g2/d_h) s0) and squared radius of the slice s = s0 of Phi = 0.
#[derive(Clone, Debug)]
pub struct SliceCircle<F> {
    pub center: (F, F, F),
    pub radius_sq: F,
}

pub fn slice_circle_with<F: Field>(d: &RankOneData<F>, s0: &F) -> Result<SliceCircle<F>, WallError> {
    if d.dh.is_zero() {
        return Err(WallError::DegenerateDirection);
    }
    let y1 = d.dg1.clone() / d.dh.clone() * s0.clone();
    let y2 = d.dg2.clone() / d.dh.clone() * s0.clone();
    let two = F::from_i64(2);
    let radius_sq = two * d.ch2.clone() / d.dh.clone() * s0.clone() - d.c1_sq.clone() / d.dh.square() * s0.square();
    Ok(SliceCircle { center: (s0.clone(), y1, y2), radius_sq })
}

pub fn slice_circle<F: Field>(sub: &ChernCharacter<F>, frame: &Frame<F>, s0: &F) -> Result<SliceCircle<F>, WallError> {
    slice_circle_with(&RankOneData::new(sub, frame), s0)
}

/// The linear form n1 u1 + n2 u2 + k with Phi_F/d_h(F) - Phi_F'/d_h(F') = -2s (n1 u1 + n2 u2 + k).
#[derive(Clone, Debug)]
pub struct RadicalPlane<F> {
    pub n1: F,
    pub n2: F,
    pub k: F,
}

impl<F: Field> RadicalPlane<F> {
    pub fn eval(&self, u1: &F, u2: &F) -> F {
        self.n1.clone() * u1.clone() + self.n2.clone() * u2.clone() + self.k.clone()
    }

    /// The difference of normalized wall equations itself.
    pub fn psi(&self, s: &F, u1: &F, u2: &F) -> F {
        -(F::from_i64(2) * s.clone() * self.eval(u1, u2))
    }

    pub fn is_zero(&self) -> bool {
        self.n1.is_zero() && self.n2.is_zero() && self.k.is_zero()
    }
}

pub fn radical_plane_with<F: Field>(d1: &RankOneData<F>, d2: &RankOneData<F>) -> Result<RadicalPlane<F>, WallError> {
    if d1.dh.is_zero() || d2.dh.is_zero() {
        return Err(WallError::DegenerateDirection);
    }
    let r = |a: &F, b: &F| a.clone() / d1.dh.clone() - b.clone() / d2.dh.clone();
    Ok(RadicalPlane { n1: r(&d1.dg1, &d2.dg1), n2: r(&d1.dg2, &d2.dg2), k: r(&d1.ch2, &d2.ch2) })
}

pub fn radical_plane<F: Field>(
    sub1: &ChernCharacter<F>,
    sub2: &ChernCharacter<F>,
    frame: &Frame<F>,
) -> Result<RadicalPlane<F>, WallError> {
    radical_plane_with(&RankOneData::new(sub1, frame), &RankOneData::new(sub2, frame))
}

/// P_F = (2 ch2 / c1^2)(d_h, d_g1, d_g2): the second point of the wall on the line through the origin.
pub fn apex_with<F: Field>(d: &RankOneData<F>) -> Result<(F, F, F), WallError> {
    if d.c1_sq.is_zero() {
        return Err(WallError::NullClass);
    }
    let k = F::from_i64(2) * d.ch2.clone() / d.c1_sq.clone();
    Ok((k.clone() * d.dh.clone(), k.clone() * d.dg1.clone(), k * d.dg2.clone()))
}

pub fn apex_point<F: Field>(sub: &ChernCharacter<F>, frame: &Frame<F>) -> Result<(F, F, F), WallError> {
    apex_with(&RankOneData::new(sub, frame))
}
