//! Exact re-verification of the polynomial identities behind the rank-1 and torsion wall arguments.

mod registry;

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use registry::{derive_wall_from_charge, registry, symbolic_frame};

use crate::field::{format_rational, Rational};
use crate::symbolic::{dense_values, principal_radicals, Assignment, RadFrac, RadPoly, Var, ALL_VARS};

/// One claimed equality lhs = rhs.
#[derive(Clone, Debug)]
pub struct Equation {
    pub label: String,
    pub lhs: RadFrac,
    pub rhs: RadFrac,
}

impl Equation {
    pub fn new(label: impl Into<String>, lhs: RadFrac, rhs: RadFrac) -> Equation {
        Equation { label: label.into(), lhs, rhs }
    }

    pub fn holds(&self) -> bool {
        self.lhs.sub_ref(&self.rhs).is_zero()
    }

    fn side_conditions(&self) -> Vec<RadPoly> {
        let mut out = self.lhs.side_conditions();
        out.extend(self.rhs.side_conditions());
        out
    }
}

/// A way of reading a printed display: the literal text, or a corrected variant.
#[derive(Clone, Debug)]
pub struct Reading {
    pub name: String,
    pub note: String,
    pub equations: Vec<Equation>,
}

impl Reading {
    pub fn new(name: &str, note: &str, equations: Vec<Equation>) -> Reading {
        Reading { name: name.into(), note: note.into(), equations }
    }
}

/// A registry entry. The first reading is the printed form.
#[derive(Clone)]
pub struct Identity {
    pub id: &'static str,
    pub description: &'static str,
    /// Flagged entries report findings but never fail the suite.
    pub flagged: bool,
    pub build: fn() -> Vec<Reading>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Holds,
    /// The printed form fails and the named corrected reading holds.
    HoldsCorrected(String),
    Fails,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub assignment: BTreeMap<String, String>,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquationResult {
    pub label: String,
    pub holds: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReadingResult {
    pub name: String,
    pub note: String,
    pub holds: bool,
    pub equations: Vec<EquationResult>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub description: String,
    pub flagged: bool,
    pub status: Status,
    pub readings: Vec<ReadingResult>,
    pub side_conditions: Vec<String>,
    /// Whether 20 random rational points agree with every symbolic verdict.
    pub spot_check_agrees: bool,
    pub millis: u128,
}

impl IdentityReport {
    pub fn counts_as_failure(&self) -> bool {
        !self.flagged && self.status == Status::Fails
    }

    /// Structured finding text, if the printed form did not hold as written.
    pub fn finding(&self) -> Option<String> {
        let printed = self.readings.first()?;
        if printed.holds {
            return None;
        }
        let failed: Vec<&str> =
            printed.equations.iter().filter(|e| !e.holds).map(|e| e.label.as_str()).collect();
        let holding: Vec<&str> = self.readings[1..].iter().filter(|r| r.holds).map(|r| r.name.as_str()).collect();
        Some(if holding.is_empty() {
            format!("printed form fails at [{}]; no listed reading holds", failed.join(", "))
        } else {
            format!("printed form fails at [{}]; holds under [{}]", failed.join(", "), holding.join(", "))
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub entries: Vec<IdentityReport>,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.entries.iter().filter(|e| e.counts_as_failure()).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failures() == 0
    }
}

const SPOT_POINTS: usize = 20;

fn random_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    loop {
        let den = rng.gen_range(1..=4);
        let num = rng.gen_range(lo * den..=hi * den);
        if num != 0 {
            return Rational::new(num.into(), den.into());
        }
    }
}

/// A random point with an ample seed (a + c > 0, b + c > 0, c < 0) and nonzero other variables.
pub fn random_assignment(rng: &mut ChaCha8Rng) -> Assignment {
    let mut asg = Assignment::new();
    let c = -random_rational(rng, 1, 3).abs_rat();
    let a = -c.clone() + random_rational(rng, 1, 3).abs_rat();
    let b = -c.clone() + random_rational(rng, 1, 3).abs_rat();
    asg.insert(Var::A, a);
    asg.insert(Var::B, b);
    asg.insert(Var::C, c);
    for v in ALL_VARS {
        if !matches!(v, Var::A | Var::B | Var::C) {
            asg.insert(v, random_rational(rng, -4, 4));
        }
    }
    asg
}

trait AbsRat {
    fn abs_rat(self) -> Rational;
}

impl AbsRat for Rational {
    fn abs_rat(self) -> Rational {
        if self < Rational::from_integer(0.into()) {
            -self
        } else {
            self
        }
    }
}

fn witness_of(asg: &Assignment, residual: f64) -> Witness {
    let assignment = asg.iter().map(|(v, q)| (v.name().to_string(), format_rational(q))).collect();
    Witness { assignment, residual }
}

/// Relative residual of an equation at a point, or None if a side condition vanishes there.
fn residual(eq: &Equation, conds: &[RadPoly], asg: &Assignment) -> Option<f64> {
    let vals = dense_values(asg);
    let (w1, w2) = principal_radicals(asg);
    for c in conds {
        let v = c.eval_f64(&vals, w1, w2);
        if !(v.abs() > 1e-9 * c.magnitude_f64(&vals, w1, w2).max(1e-300)) {
            return None;
        }
    }
    let l = eq.lhs.eval_f64(&vals, w1, w2);
    let r = eq.rhs.eval_f64(&vals, w1, w2);
    if !l.is_finite() || !r.is_finite() {
        return None;
    }
    Some((l - r).abs() / (1.0 + l.abs().max(r.abs())))
}

fn sample_points(conds: &[RadPoly], seed: u64) -> Vec<Assignment> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < SPOT_POINTS && tries < 50 * SPOT_POINTS {
        tries += 1;
        let asg = random_assignment(&mut rng);
        let vals = dense_values(&asg);
        let (w1, w2) = principal_radicals(&asg);
        let ok = conds.iter().all(|c| c.eval_f64(&vals, w1, w2).abs() > 1e-9 * c.magnitude_f64(&vals, w1, w2));
        if ok {
            out.push(asg);
        }
    }
    out
}

const AGREE_TOL: f64 = 1e-8;

pub fn verify(identity: &Identity) -> IdentityReport {
    let start = Instant::now();
    let readings = (identity.build)();
    let mut conds: Vec<RadPoly> = Vec::new();
    for r in &readings {
        for e in &r.equations {
            for c in e.side_conditions() {
                if !conds.contains(&c) {
                    conds.push(c);
                }
            }
        }
    }
    let points = sample_points(&conds, 0x5eed ^ identity.id.len() as u64);
    let mut agrees = true;
    let mut results = Vec::new();
    for r in &readings {
        let mut eqs = Vec::new();
        for e in &r.equations {
            let holds = e.holds();
            let mut worst: Option<(f64, &Assignment)> = None;
            for p in &points {
                if let Some(res) = residual(e, &conds, p) {
                    if worst.map_or(true, |(w, _)| res > w) {
                        worst = Some((res, p));
                    }
                }
            }
            let numeric_zero = worst.map_or(true, |(w, _)| w <= AGREE_TOL);
            if holds != numeric_zero {
                agrees = false;
            }
            let witness = if holds { None } else { worst.map(|(w, p)| witness_of(p, w)) };
            eqs.push(EquationResult { label: e.label.clone(), holds, witness });
        }
        let holds = eqs.iter().all(|e| e.holds);
        results.push(ReadingResult { name: r.name.clone(), note: r.note.clone(), holds, equations: eqs });
    }
    let status = if results.first().map_or(false, |r| r.holds) {
        Status::Holds
    } else if let Some(r) = results.iter().skip(1).find(|r| r.holds) {
        Status::HoldsCorrected(r.name.clone())
    } else {
        Status::Fails
    };
    IdentityReport {
        id: identity.id.to_string(),
        description: identity.description.to_string(),
        flagged: identity.flagged,
        status,
        readings: results,
        side_conditions: conds.iter().map(|c| c.to_string()).collect(),
        spot_check_agrees: agrees,
        millis: start.elapsed().as_millis(),
    }
}

pub fn run_identities(entries: &[Identity]) -> SuiteReport {
    SuiteReport { entries: entries.par_iter().map(verify).collect() }
}

pub fn run_suite() -> SuiteReport {
    run_identities(&registry())
}

pub fn find(id: &str) -> Option<Identity> {
    registry().into_iter().find(|e| e.id == id)
}

pub fn run_one(id: &str) -> Option<IdentityReport> {
    find(id).map(|e| verify(&e))
}
