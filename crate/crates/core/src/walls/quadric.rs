use nalgebra::{Matrix3, SymmetricEigen, Vector3};
use serde::{Deserialize, Serialize};

use super::{RankOneData, SlicePoly};
use crate::chern::ChernCharacter;
use crate::field::{rat_to_f64, Field, Rational};

pub type Mat3<F> = [[F; 3]; 3];

/// Symmetric matrix of the degree-2 part of a polynomial in (s, u1, u2) at t = 0.
pub fn quadratic_part<F: Field>(p: &SlicePoly<F>) -> Mat3<F> {
    let mut m: Mat3<F> = std::array::from_fn(|_| std::array::from_fn(|_| F::zero()));
    for (e, c) in p.terms() {
        if e[3] != 0 || e[0] + e[1] + e[2] != 2 {
            continue;
        }
        let idx: Vec<usize> = (0..3).flat_map(|k| std::iter::repeat(k).take(e[k] as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[i][i] = m[i][i].clone() + c.clone();
        } else {
            let h = F::half() * c.clone();
            m[i][j] = m[i][j].clone() + h.clone();
            m[j][i] = m[j][i].clone() + h;
        }
    }
    m
}

/// Diagonal abc r (2ab - c^2), corner (1,3) entry ab r (2ab - c^2) w1, zeros elsewhere.
pub fn torsion_wall_matrix_with<F: Field>(r: &F, a: &F, b: &F, c: &F, w1: &F) -> Mat3<F> {
    let k = F::from_i64(2) * a.clone() * b.clone() - c.square();
    let ab = a.clone() * b.clone();
    let d = ab.clone() * c.clone() * r.clone() * k.clone();
    let o = ab * r.clone() * k * w1.clone();
    let z = F::zero();
    [[d.clone(), z.clone(), o.clone()], [z.clone(), d.clone(), z.clone()], [o, z, d]]
}

pub fn torsion_wall_matrix(sub: &ChernCharacter<Rational>, a: &Rational, b: &Rational, c: &Rational) -> Mat3<f64> {
    let (af, bf, cf) = (rat_to_f64(a), rat_to_f64(b), rat_to_f64(c));
    let w1 = (2.0 * af * bf).sqrt();
    torsion_wall_matrix_with(&rat_to_f64(&sub.rank), &af, &bf, &cf, &w1)
}

pub fn det3<F: Field>(m: &Mat3<F>) -> F {
    let c = |i: usize, j: usize| m[i][j].clone();
    c(0, 0) * (c(1, 1) * c(2, 2) - c(1, 2) * c(2, 1)) - c(0, 1) * (c(1, 0) * c(2, 2) - c(1, 2) * c(2, 0))
        + c(0, 2) * (c(1, 0) * c(2, 1) - c(1, 1) * c(2, 0))
}

/// [k0, k1, k2] with det(M - t I) = -t^3 + k2 t^2 + k1 t + k0.
pub fn char_poly<F: Field>(m: &Mat3<F>) -> [F; 3] {
    let c = |i: usize, j: usize| m[i][j].clone();
    let trace = c(0, 0) + c(1, 1) + c(2, 2);
    let minors = c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0) + c(0, 0) * c(2, 2) - c(0, 2) * c(2, 0) + c(1, 1) * c(2, 2)
        - c(1, 2) * c(2, 1);
    [det3(m), -minors, trace]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

fn to_matrix(m: &Mat3<f64>) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| m[i][j])
}

fn eigenvalues(m: &Mat3<f64>) -> [f64; 3] {
    let e = SymmetricEigen::new(to_matrix(m)).eigenvalues;
    [e[0], e[1], e[2]]
}

/// Eigenvalue sign counts, with |lambda| <= 1e-10 max(1, max |lambda|) counted as zero.
pub fn quadric_signature(m: &Mat3<f64>) -> Signature {
    let ev = eigenvalues(m);
    let thr = 1e-10 * ev.iter().fold(1.0f64, |a, x| a.max(x.abs()));
    let mut s = Signature { pos: 0, neg: 0, zero: 0 };
    for l in ev {
        if l > thr {
            s.pos += 1;
        } else if l < -thr {
            s.neg += 1;
        } else {
            s.zero += 1;
        }
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadricShape {
    Ellipsoid,
    Point,
    Empty,
    OneSheetHyperboloid,
    TwoSheetHyperboloid,
    Cone,
    Degenerate,
}

/// Shape of x^T Q x + 2 b.x + k = 0 for a symmetric Q.
pub fn classify_quadric(q: &Mat3<f64>, b: &[f64; 3], k: f64) -> QuadricShape {
    let sig = quadric_signature(q);
    if sig.zero > 0 {
        return QuadricShape::Degenerate;
    }
    let qm = to_matrix(q);
    let bv = Vector3::new(b[0], b[1], b[2]);
    let Some(inv) = qm.try_inverse() else {
        return QuadricShape::Degenerate;
    };
    // (x + Q^-1 b)^T Q (x + Q^-1 b) = kappa.
    let kappa = bv.dot(&(inv * bv)) - k;
    let scale = bv.norm_squared() * inv.norm() + k.abs();
    let kappa = if kappa.abs() <= 1e-12 * scale.max(1e-300) { 0.0 } else { kappa };
    if sig.pos == 3 || sig.neg == 3 {
        let definite = if sig.pos == 3 { 1.0 } else { -1.0 };
        return if kappa == 0.0 {
            QuadricShape::Point
        } else if kappa * definite > 0.0 {
            QuadricShape::Ellipsoid
        } else {
            QuadricShape::Empty
        };
    }
    if kappa == 0.0 {
        return QuadricShape::Cone;
    }
    let lone = if sig.pos == 1 { 1.0 } else { -1.0 };
    if kappa * lone > 0.0 {
        QuadricShape::TwoSheetHyperboloid
    } else {
        QuadricShape::OneSheetHyperboloid
    }
}

/// Phi_F as x^T Q x + 2 b.x in (s, u1, u2).
pub fn phi_quadric(d: &RankOneData<f64>) -> (Mat3<f64>, [f64; 3]) {
    let q = [[d.dh, -d.dg1, -d.dg2], [-d.dg1, d.dh, 0.0], [-d.dg2, 0.0, d.dh]];
    (q, [-d.ch2, 0.0, 0.0])
}
