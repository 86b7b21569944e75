use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};


use super::poly::{RadPoly, Var, NVARS, W1, W2};
use crate::field::{int, Field, Rational};

/// Quotient of a RadPoly numerator by a product of monic radical-free factors.
/// Denominators stay factored so that sums over shared denominators do not swell.
#[derive(Clone)]
pub struct RadFrac {
    num: RadPoly,
    den: Vec<(RadPoly, u32)>,
}

fn hint_factors() -> Vec<RadPoly> {
    let a = RadPoly::var(Var::A);
    let b = RadPoly::var(Var::B);
    let c = RadPoly::var(Var::C);
    let q = a.mul_ref(&b).scale(&int(2)).sub_ref(&c.pow(2));
    vec![a.clone(), b.clone(), c.clone(), q.monic().1, a.add_ref(&c), b.add_ref(&c)]
}

impl RadFrac {
    pub fn from_poly(p: RadPoly) -> RadFrac {
        RadFrac { num: p, den: Vec::new() }
    }

    pub fn var(v: Var) -> RadFrac {
        RadFrac::from_poly(RadPoly::var(v))
    }

    pub fn w1() -> RadFrac {
        RadFrac::from_poly(RadPoly::w1())
    }

    pub fn w2() -> RadFrac {
        RadFrac::from_poly(RadPoly::w2())
    }

    pub fn constant(q: Rational) -> RadFrac {
        RadFrac::from_poly(RadPoly::constant(q))
    }

    pub fn numerator(&self) -> &RadPoly {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[(RadPoly, u32)] {
        &self.den
    }

    pub fn denominator(&self) -> RadPoly {
        let mut d = RadPoly::one();
        for (f, e) in &self.den {
            d = d.mul_ref(&f.pow(*e));
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Moves a new radical-free factor into a factor list, splitting off known factors first.
    fn push_factor(den: &mut Vec<(RadPoly, u32)>, num: &mut RadPoly, f: RadPoly, e: u32) {
        if e == 0 {
            return;
        }
        let (k, mut f) = f.monic();
        if k.is_zero() {
            panic!("division by zero polynomial");
        }
        *num = num.scale(&(Rational::one() / k.pow(e as i32)));
        if f.is_constant() {
            return;
        }
        let mut known: Vec<RadPoly> = den.iter().map(|(g, _)| g.clone()).collect();
        for h in hint_factors() {
            if !known.contains(&h) {
                known.push(h);
            }
        }
        for g in known {
            if g == f {
                break;
            }
            let mut mult = 0;
            while let Some(q) = f.div_exact(&g) {
                if q.is_constant() && q.constant_value() == Some(int(1)) {
                    break;
                }
                f = q;
                mult += 1;
            }
            if mult > 0 {
                let (k2, f2) = f.monic();
                *num = num.scale(&(Rational::one() / k2.pow(e as i32)));
                f = f2;
                Self::bump(den, g, mult * e);
            }
            if f.is_constant() {
                return;
            }
        }
        Self::bump(den, f, e);
    }

    fn bump(den: &mut Vec<(RadPoly, u32)>, f: RadPoly, e: u32) {
        for entry in den.iter_mut() {
            if entry.0 == f {
                entry.1 += e;
                return;
            }
        }
        den.push((f, e));
    }

    /// Removes common factors between numerator and denominator.
    fn cancel(mut self) -> RadFrac {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        for entry in self.den.iter_mut() {
            while entry.1 > 0 {
                match self.num.div_exact(&entry.0) {
                    Some(q) => {
                        self.num = q;
                        entry.1 -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, e)| *e > 0);
        self
    }

    fn cofactor(den: &[(RadPoly, u32)], lcm: &[(RadPoly, u32)]) -> RadPoly {
        let mut out = RadPoly::one();
        for (f, e) in lcm {
            let have = den.iter().find(|(g, _)| g == f).map(|(_, k)| *k).unwrap_or(0);
            if *e > have {
                out = out.mul_ref(&f.pow(e - have));
            }
        }
        out
    }

    pub fn add_ref(&self, other: &RadFrac) -> RadFrac {
        if other.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return other.clone();
        }
        let mut lcm = self.den.clone();
        for (f, e) in &other.den {
            match lcm.iter_mut().find(|(g, _)| g == f) {
                Some(entry) => entry.1 = entry.1.max(*e),
                None => lcm.push((f.clone(), *e)),
            }
        }
        let n1 = self.num.mul_ref(&Self::cofactor(&self.den, &lcm));
        let n2 = other.num.mul_ref(&Self::cofactor(&other.den, &lcm));
        RadFrac { num: n1.add_ref(&n2), den: lcm }.cancel()
    }

    pub fn neg_ref(&self) -> RadFrac {
        RadFrac { num: self.num.neg_ref(), den: self.den.clone() }
    }

    pub fn sub_ref(&self, other: &RadFrac) -> RadFrac {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &RadFrac) -> RadFrac {
        if self.num.is_zero() || other.num.is_zero() {
            return RadFrac::from_poly(RadPoly::zero());
        }
        let mut den = self.den.clone();
        for (f, e) in &other.den {
            Self::bump(&mut den, f.clone(), *e);
        }
        RadFrac { num: self.num.mul_ref(&other.num), den }.cancel()
    }

    /// Multiplicative inverse. Radicals in the numerator are cleared with the Galois conjugates.
    pub fn inv(&self) -> RadFrac {
        assert!(!self.num.is_zero(), "inverse of zero");
        let n = &self.num;
        let mut conj = RadPoly::one();
        let mut norm = n.clone();
        if norm.has_rad(W1) {
            let c1 = norm.conjugate(W1);
            conj = conj.mul_ref(&c1);
            norm = norm.mul_ref(&c1);
        }
        if norm.has_rad(W2) {
            let c2 = norm.conjugate(W2);
            conj = conj.mul_ref(&c2);
            norm = norm.mul_ref(&c2);
        }
        debug_assert!(!norm.has_radicals());
        let mut num = conj.mul_ref(&self.denominator());
        let mut den = Vec::new();
        Self::push_factor(&mut den, &mut num, norm, 1);
        RadFrac { num, den }.cancel()
    }

    pub fn div_ref(&self, other: &RadFrac) -> RadFrac {
        self.mul_ref(&other.inv())
    }

    pub fn pow(&self, n: u32) -> RadFrac {
        let mut acc = RadFrac::from_poly(RadPoly::one());
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> RadFrac {
        RadFrac { num: self.num.scale(q), den: self.den.clone() }.cancel()
    }

    pub fn conjugate(&self, bits: u8) -> RadFrac {
        RadFrac { num: self.num.conjugate(bits), den: self.den.clone() }
    }

    pub fn substitute_var(&self, v: Var, by: &RadFrac) -> RadFrac {
        let deg_num = self.num.degree_in(v);
        if deg_num == 0 && self.den.iter().all(|(f, _)| !f.contains_var(v)) {
            return self.clone();
        }
        let num = subst_frac(&self.num, v, by);
        let mut out = num;
        for (f, e) in &self.den {
            let fs = subst_frac(f, v, by);
            out = out.div_ref(&fs.pow(*e));
        }
        out
    }

    /// Evaluation at a numeric point. Returns NaN if a denominator vanishes.
    pub fn eval_f64(&self, vals: &[f64; NVARS], w1: f64, w2: f64) -> f64 {
        let mut d = 1.0;
        for (f, e) in &self.den {
            d *= f.eval_f64(vals, w1, w2).powi(*e as i32);
        }
        self.num.eval_f64(vals, w1, w2) / d
    }

    /// Every distinct denominator factor: the non-vanishing side conditions of any identity built from this value.
    pub fn side_conditions(&self) -> Vec<RadPoly> {
        self.den.iter().map(|(f, _)| f.clone()).collect()
    }

    pub fn is_radical_free(&self) -> bool {
        !self.num.has_radicals()
    }
}

fn subst_frac(p: &RadPoly, v: Var, by: &RadFrac) -> RadFrac {
    let deg = p.degree_in(v);
    if deg == 0 {
        return RadFrac::from_poly(p.clone());
    }
    // Horner in v over the coefficient polynomials.
    let mut coeffs: Vec<RadPoly> = vec![RadPoly::zero(); deg as usize + 1];
    for (m, c) in p.terms() {
        let e = m.exps[v.index()] as usize;
        let mut rest = m.clone();
        rest.exps[v.index()] = 0;
        coeffs[e] = coeffs[e].add_ref(&RadPoly::from_terms([(rest, c.clone())]));
    }
    let mut acc = RadFrac::from_poly(coeffs[deg as usize].clone());
    for k in (0..deg as usize).rev() {
        acc = acc.mul_ref(by).add_ref(&RadFrac::from_poly(coeffs[k].clone()));
    }
    acc
}

impl PartialEq for RadFrac {
    fn eq(&self, other: &Self) -> bool {
        self.sub_ref(other).is_zero()
    }
}

impl fmt::Display for RadFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for (k, (g, e)) in self.den.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "({})", g)?;
            } else {
                write!(f, "({})^{}", g, e)?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RadFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadFrac({})", self)
    }
}

impl Add for RadFrac {
    type Output = RadFrac;
    fn add(self, rhs: RadFrac) -> RadFrac {
        self.add_ref(&rhs)
    }
}

impl Sub for RadFrac {
    type Output = RadFrac;
    fn sub(self, rhs: RadFrac) -> RadFrac {
        self.sub_ref(&rhs)
    }
}

impl Mul for RadFrac {
    type Output = RadFrac;
    fn mul(self, rhs: RadFrac) -> RadFrac {
        self.mul_ref(&rhs)
    }
}

impl Div for RadFrac {
    type Output = RadFrac;
    fn div(self, rhs: RadFrac) -> RadFrac {
        self.div_ref(&rhs)
    }
}

impl Neg for RadFrac {
    type Output = RadFrac;
    fn neg(self) -> RadFrac {
        self.neg_ref()
    }
}

impl Field for RadFrac {
    fn zero() -> Self {
        RadFrac::from_poly(RadPoly::zero())
    }
    fn one() -> Self {
        RadFrac::from_poly(RadPoly::one())
    }
    fn from_rational(q: &Rational) -> Self {
        RadFrac::constant(q.clone())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}
