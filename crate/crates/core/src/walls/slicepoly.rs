use std::collections::BTreeMap;

use crate::field::Field;

/// Variables of the slice space in order (s, u1, u2, t).
pub const S: usize = 0;
pub const U1: usize = 1;
pub const U2: usize = 2;
pub const T: usize = 3;

/// Sparse polynomial in (s, u1, u2, t) with coefficients in a field.
#[derive(Clone, Debug)]
pub struct SlicePoly<F> {
    terms: BTreeMap<[u8; 4], F>,
}

impl<F: Field> SlicePoly<F> {
    pub fn zero() -> Self {
        SlicePoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: F) -> Self {
        let mut p = SlicePoly::zero();
        p.add_term([0; 4], c);
        p
    }

    pub fn var(k: usize) -> Self {
        let mut e = [0u8; 4];
        e[k] = 1;
        let mut p = SlicePoly::zero();
        p.add_term(e, F::one());
        p
    }

    pub fn monomial(e: [u8; 4], c: F) -> Self {
        let mut p = SlicePoly::zero();
        p.add_term(e, c);
        p
    }

    fn add_term(&mut self, e: [u8; 4], c: F) {
        if c.is_zero() {
            return;
        }
        let next = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !next.is_zero() {
            self.terms.insert(e, next);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8; 4], &F)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: [u8; 4]) -> F {
        self.terms.get(&e).cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }

    pub fn scale(&self, k: &F) -> Self {
        let mut out = SlicePoly::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, k.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = SlicePoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn eval(&self, x: &[F; 4]) -> F {
        let mut sum = F::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for k in 0..4 {
                for _ in 0..e[k] {
                    t = t * x[k].clone();
                }
            }
            sum = sum + t;
        }
        sum
    }

    /// Smallest exponent of the given variable over all terms.
    pub fn min_degree_in(&self, k: usize) -> u8 {
        self.terms.keys().map(|e| e[k]).min().unwrap_or(0)
    }

    /// Divides by t and sets t = 0: keeps the terms linear in t.
    pub fn t_reduced(&self) -> Self {
        let mut out = SlicePoly::zero();
        for (e, c) in &self.terms {
            if e[T] == 1 {
                out.add_term([e[0], e[1], e[2], 0], c.clone());
            }
        }
        out
    }

    /// Substitutes variable k by a polynomial.
    pub fn substitute(&self, k: usize, by: &Self) -> Self {
        let mut out = SlicePoly::zero();
        for (e, c) in &self.terms {
            let mut rest = *e;
            rest[k] = 0;
            let mut term = SlicePoly::monomial(rest, c.clone());
            for _ in 0..e[k] {
                term = term.mul(by);
            }
            out = out.add(&term);
        }
        out
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SlicePoly<G> {
        let mut out = SlicePoly::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }
}

impl SlicePoly<f64> {
    pub fn eval_f64(&self, s: f64, u1: f64, u2: f64, t: f64) -> f64 {
        self.eval(&[s, u1, u2, t])
    }

    /// Largest |coefficient * monomial| at a point, for relative on-wall tests.
    pub fn magnitude(&self, s: f64, u1: f64, u2: f64, t: f64) -> f64 {
        let x = [s, u1, u2, t];
        let mut best: f64 = 0.0;
        for (e, c) in &self.terms {
            let mut v = c.abs();
            for k in 0..4 {
                v *= x[k].abs().powi(e[k] as i32);
            }
            best = best.max(v);
        }
        best
    }
}
