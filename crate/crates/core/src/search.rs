//! Candidate destabilizers of O, maximal walls among the (-1)-curves, and containment scans.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charge::{bridgeland_slope, central_charge, StabilityPoint};
use crate::chern::{ch_line_bundle, ch_restriction, ch_structure_sheaf, ChernCharacter};
use crate::field::{int, rat, Field, Rational};
use crate::lattice::{is_negative_effective_curve, minus_one_curves, Divisor, Frame};
use crate::walls::{phi_with, RankOneData};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("no (-1)-curve E_i has O(-E_i) in the heart at s = {0}")]
    NoCandidateInHeart(f64),
    #[error("point outside the domain: {0}")]
    OutsideDomain(String),
}

/// Negative effective integral curves with all coefficients in [-bound, bound], ordered by (p, q, r).
pub fn enumerate_candidates(bound: u32) -> Vec<Divisor<Rational>> {
    let b = bound as i64;
    let mut out = Vec::new();
    for p in -b..=b {
        for q in -b..=b {
            for r in -b..=b {
                let d = Divisor::ints(p, q, r);
                if is_negative_effective_curve(&d) {
                    out.push(d);
                }
            }
        }
    }
    out
}

/// ch(O(-C)) in floating point.
fn sub_class(c: &Divisor<Rational>) -> ChernCharacter<f64> {
    ch_line_bundle(&c.neg_ref()).to_f64()
}

fn sub_data(c: &Divisor<Rational>, frame: &Frame<f64>) -> RankOneData<f64> {
    RankOneData::new(&sub_class(c), frame)
}

/// O(-C) lies in the heart at s iff s < mu_H(O(-C)) = -C.H.
fn in_heart(c: &Divisor<Rational>, point: &StabilityPoint<f64>) -> bool {
    point.s < -c.to_f64().dot(&point.frame.h)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaximalDestabilizer {
    /// The (-1)-curve E_i with the largest beta(O(-E_i)) among those admitted by the heart window.
    pub curve: Divisor<Rational>,
    /// beta(O(-E_i)) - beta(O(-C)).
    pub beta_gap: f64,
    /// O(-C) is in the heart and beta(O(-C)) >= beta(O): the candidate weakly destabilizes O.
    pub candidate_weakly_destabilizes: bool,
    /// Some admitted O(-E_i) has beta >= beta(O).
    pub curve_weakly_destabilizes: bool,
    /// beta_gap >= -1e-9: the curve is dominant among the candidate and the (-1)-curves.
    pub dominant: bool,
}

pub const GAP_TOL: f64 = 1e-9;

pub fn maximal_destabilizer(
    point: &StabilityPoint<f64>,
    candidate: &Divisor<Rational>,
) -> Result<MaximalDestabilizer, SearchError> {
    if !(point.s < 0.0) || !(point.t > 0.0) {
        return Err(SearchError::OutsideDomain(format!("need s < 0 and t > 0, got s = {}, t = {}", point.s, point.t)));
    }
    let beta_o = bridgeland_slope(&ch_structure_sheaf(), point);
    let beta_c = bridgeland_slope(&sub_class(candidate), point);
    let mut best: Option<(Divisor<Rational>, f64)> = None;
    for e in minus_one_curves() {
        if !in_heart(&e, point) {
            continue;
        }
        let b = bridgeland_slope(&sub_class(&e), point);
        if best.as_ref().map_or(true, |(_, bb)| b > *bb) {
            best = Some((e, b));
        }
    }
    let (curve, beta_e) = best.ok_or(SearchError::NoCandidateInHeart(point.s))?;
    let beta_gap = beta_e - beta_c;
    Ok(MaximalDestabilizer {
        curve,
        beta_gap,
        candidate_weakly_destabilizes: in_heart(candidate, point) && beta_c >= beta_o,
        curve_weakly_destabilizes: beta_e >= beta_o - GAP_TOL,
        dominant: beta_gap >= -GAP_TOL,
    })
}

/// beta(Q) - beta(Q - (0, 0, length)) for Q = O_E(-1); equals length / (t E.H).
pub fn torsion_rank0_gap<T: Field>(length: u64, point: &StabilityPoint<T>) -> T {
    let q: ChernCharacter<T> = ch_restriction(&Divisor::e()).expect("E is a (-1)-curve").lift();
    let shifted = q.sub_ref(&ChernCharacter::new(T::zero(), Divisor::zero(), T::from_i64(length as i64)));
    let beta = |v: &ChernCharacter<T>| {
        let z = central_charge(v, point);
        -(z.re / z.im)
    };
    beta(&q) - beta(&shifted)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftedWitness {
    pub curve: Divisor<Rational>,
    /// ch(O(E_i)|_{E_i}) = (0, E_i, -1/2).
    pub witness: ChernCharacter<Rational>,
    pub dominant: bool,
}

/// The O[1] problem at s >= 0, solved through the O problem at the mirrored point.
/// None on the boundary s = 0 and when no (-1)-curve is admitted.
pub fn shifted_case(point: &StabilityPoint<f64>, candidate: &Divisor<Rational>) -> Option<ShiftedWitness> {
    if !(point.s >= 0.0) {
        return None;
    }
    let m = maximal_destabilizer(&point.mirrored(), candidate).ok()?;
    let witness = ch_restriction(&m.curve).ok()?;
    Some(ShiftedWitness { curve: m.curve, witness, dominant: m.dominant })
}

fn small_positive(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(1..=6), rng.gen_range(1..=6))
}

/// Valid frame seeds (a + c > 0, b + c > 0, c < 0) with small denominators.
pub fn random_frame_seeds(count: usize, seed: u64) -> Vec<[Rational; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let c = -small_positive(&mut rng);
            let a = small_positive(&mut rng) - &c;
            let b = small_positive(&mut rng) - &c;
            [a, b, c]
        })
        .collect()
}

/// Sampling plan for containment scans.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub points: usize,
    pub s_min: f64,
    pub s_max: f64,
    /// Minimum of Phi_C / |d_h| at accepted points, i.e. r^2 - dist^2 in the slice.
    pub margin: f64,
    pub seed: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { points: 1000, s_min: -4.0, s_max: -1e-3, margin: 1e-7, seed: 42 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplePoint {
    pub s: f64,
    pub u1: f64,
    pub u2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub point: SamplePoint,
    /// Depth of the point inside the candidate wall.
    pub margin: f64,
    /// Best normalized value of the prescribed containing walls; not positive here.
    pub target: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
}

/// Which walls must contain the candidate's interior.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContainmentCase {
    /// E-coefficient of C positive: the wall of O(-E).
    SingleE,
    /// Otherwise: the union of the walls of O(-E1) and O(-E2).
    UnionE1E2,
}

pub fn containment_case(c: &Divisor<Rational>) -> ContainmentCase {
    if c.r > int(0) {
        ContainmentCase::SingleE
    } else {
        ContainmentCase::UnionE1E2
    }
}

fn prescribed_walls(case: ContainmentCase) -> Vec<Divisor<Rational>> {
    let [e1, e2, e] = <[Divisor<Rational>; 3]>::try_from(minus_one_curves()).unwrap();
    match case {
        ContainmentCase::SingleE => vec![e],
        ContainmentCase::UnionE1E2 => vec![e1, e2],
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContainmentReport {
    pub curve: Divisor<Rational>,
    #[serde(with = "crate::serde_rational::seed")]
    pub seed: Option<[Rational; 3]>,
    pub grid: GridSpec,
    pub case: ContainmentCase,
    pub sampled: usize,
    pub violations: Vec<Violation>,
    pub verdict: Verdict,
}

/// Normalized wall value Phi / |d_h|: positive inside, equal to r^2 - dist^2 in the slice.
fn depth(d: &RankOneData<f64>, p: &SamplePoint) -> f64 {
    phi_with(d, &p.s, &p.u1, &p.u2) / d.dh.abs()
}

/// Interior point of the t = 0 wall of O(-C) against O, or None if the slice at the drawn s is too thin.
/// s is uniform on [s_min, min(s_max, P1)], or on [P1 - 4, P1] when the apex P1 = d_h lies below s_min;
/// (u1, u2) is uniform in the slice disc shrunk by the margin.
fn draw_interior(d: &RankOneData<f64>, grid: &GridSpec, rng: &mut ChaCha8Rng) -> Option<SamplePoint> {
    let apex = d.dh;
    let (lo, hi) = if apex < grid.s_min { (apex - 4.0, apex) } else { (grid.s_min, grid.s_max.min(apex)) };
    if !(lo < hi) {
        return None;
    }
    let s = rng.gen_range(lo..hi);
    let (cx, cy) = (d.dg1 / d.dh * s, d.dg2 / d.dh * s);
    let radius_sq = 2.0 * d.ch2 / d.dh * s - d.c1_sq / (d.dh * d.dh) * s * s;
    let room = radius_sq - grid.margin;
    if !(room > 0.0) {
        return None;
    }
    let rho = (rng.gen::<f64>() * room).sqrt();
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    let p = SamplePoint { s, u1: cx + rho * theta.cos(), u2: cy + rho * theta.sin() };
    (depth(d, &p) >= grid.margin).then_some(p)
}

const DRAW_ATTEMPTS: usize = 64;

/// Points are drawn from independent streams, one per index, then merged in index order.
pub fn sample_interior(c: &Divisor<Rational>, frame: &Frame<f64>, grid: &GridSpec) -> Vec<SamplePoint> {
    let d = sub_data(c, frame);
    (0..grid.points)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
            rng.set_stream(i as u64);
            (0..DRAW_ATTEMPTS).find_map(|_| draw_interior(&d, grid, &mut rng))
        })
        .collect()
}

pub fn check_containment(candidate: &Divisor<Rational>, frame: &Frame<f64>, grid: &GridSpec) -> ContainmentReport {
    let case = containment_case(candidate);
    let own = sub_data(candidate, frame);
    let targets: Vec<RankOneData<f64>> = prescribed_walls(case).iter().map(|e| sub_data(e, frame)).collect();
    let points = sample_interior(candidate, frame, grid);
    let violations: Vec<Violation> = points
        .par_iter()
        .filter_map(|p| {
            let target = targets.iter().map(|t| depth(t, p)).fold(f64::NEG_INFINITY, f64::max);
            (target <= 0.0).then(|| Violation { point: *p, margin: depth(&own, p), target })
        })
        .collect();
    let verdict = if violations.is_empty() { Verdict::Pass } else { Verdict::Fail };
    ContainmentReport {
        curve: candidate.clone(),
        seed: frame.seed.clone(),
        grid: grid.clone(),
        case,
        sampled: points.len(),
        violations,
        verdict,
    }
}

/// Outcome of maximal_destabilizer over destabilizing points of a candidate with s < 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DestabilizerScan {
    pub curve: Divisor<Rational>,
    pub sampled: usize,
    /// Points where no admitted (-1)-curve weakly destabilizes O.
    pub weak_failures: usize,
    /// Points where the best (-1)-curve has smaller beta than the candidate.
    pub not_dominant: usize,
    pub min_gap: f64,
}

/// Draws (s, u1, u2) inside the t = 0 wall, then t uniform in (0, sqrt(depth)), which keeps the point
/// inside the wall at height t.
pub fn scan_destabilizers(candidate: &Divisor<Rational>, frame: &Frame<f64>, grid: &GridSpec) -> DestabilizerScan {
    let d = sub_data(candidate, frame);
    let points = sample_interior(candidate, frame, grid);
    let outcomes: Vec<MaximalDestabilizer> = points
        .par_iter()
        .enumerate()
        .filter_map(|(i, p)| {
            let mut rng = ChaCha8Rng::seed_from_u64(grid.seed ^ 0x7);
            rng.set_stream(i as u64);
            let t = depth(&d, p).sqrt() * rng.gen_range(0.01..1.0);
            let sp = StabilityPoint::new(frame.clone(), p.s, p.u1, p.u2, t);
            maximal_destabilizer(&sp, candidate).ok().filter(|m| m.candidate_weakly_destabilizes)
        })
        .collect();
    DestabilizerScan {
        curve: candidate.clone(),
        sampled: outcomes.len(),
        weak_failures: outcomes.iter().filter(|m| !m.curve_weakly_destabilizes).count(),
        not_dominant: outcomes.iter().filter(|m| !m.dominant).count(),
        min_gap: outcomes.iter().map(|m| m.beta_gap).fold(f64::INFINITY, f64::min),
    }
}
