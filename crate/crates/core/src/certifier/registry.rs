use super::{Equation, Identity, Reading};
use crate::charge::{central_charge, central_charge_at, transport_check, StabilityPoint};
use crate::chern::{ch_line_bundle, ch_restriction, dual, ChernCharacter};
use crate::field::Field;
use crate::lattice::{Divisor, Frame};
use crate::symbolic::{parse, RadFrac, Var};
use crate::walls::{
    apex_with, char_poly, phi_with, quadratic_part, radical_plane_with, slice_circle_with, torsion_wall_matrix_with,
    wall_equation, RadicalPlane, RankOneData, SlicePoly,
};

fn v(x: Var) -> RadFrac {
    RadFrac::var(x)
}

fn k(n: i64) -> RadFrac {
    RadFrac::from_i64(n)
}

fn p(src: &str) -> RadFrac {
    parse(src).unwrap_or_else(|e| panic!("registry formula {src:?}: {e}"))
}

fn eq(label: &str, lhs: RadFrac, rhs: RadFrac) -> Equation {
    Equation::new(label, lhs, rhs)
}

/// The frame over Q(a, b, c)[w1, w2].
pub fn symbolic_frame() -> Frame<RadFrac> {
    Frame::from_radicals(v(Var::A), v(Var::B), v(Var::C), RadFrac::w1(), RadFrac::w2())
}

fn line(p: RadFrac, q: RadFrac, r: RadFrac) -> ChernCharacter<RadFrac> {
    ch_line_bundle(&Divisor::new(p, q, r))
}

fn data(c: &ChernCharacter<RadFrac>) -> RankOneData<RadFrac> {
    RankOneData::new(c, &symbolic_frame())
}

/// O(-C) for C = -x C1 - y C2 - z E.
fn f_xyz() -> ChernCharacter<RadFrac> {
    line(v(Var::X), v(Var::Y), v(Var::Z))
}

fn o_e() -> ChernCharacter<RadFrac> {
    line(k(0), k(0), k(-1))
}

fn o_e1() -> ChernCharacter<RadFrac> {
    line(k(0), k(-1), k(1))
}

fn o_e2() -> ChernCharacter<RadFrac> {
    line(k(-1), k(0), k(1))
}

/// The twist F(C1 + C2 - E).
fn f_twisted() -> ChernCharacter<RadFrac> {
    line(v(Var::X) + k(1), v(Var::Y) + k(1), v(Var::Z) - k(1))
}

fn center(d: &RankOneData<RadFrac>, s0: &RadFrac) -> (RadFrac, RadFrac, RadFrac) {
    slice_circle_with(d, s0).expect("d_h is a nonzero symbol").center
}

/// The center as printed, with d_g1/d_h in both transverse coordinates.
fn printed_center(d: &RankOneData<RadFrac>, s0: &RadFrac) -> (RadFrac, RadFrac, RadFrac) {
    let y = d.dg1.clone() / d.dh.clone() * s0.clone();
    (s0.clone(), y.clone(), y)
}

fn phi_at(d: &RankOneData<RadFrac>, pt: &(RadFrac, RadFrac, RadFrac)) -> RadFrac {
    phi_with(d, &pt.0, &pt.1, &pt.2)
}

fn plane(d1: &RankOneData<RadFrac>, d2: &RankOneData<RadFrac>) -> RadicalPlane<RadFrac> {
    radical_plane_with(d1, d2).expect("d_h is a nonzero symbol")
}

/// Squared distance in the slice s = s0 from the circle center of `d` to the line L = 0.
fn dist_sq(d: &RankOneData<RadFrac>, l: &RadicalPlane<RadFrac>, s0: &RadFrac) -> RadFrac {
    let c = center(d, s0);
    l.eval(&c.1, &c.2).square() / (l.n1.square() + l.n2.square())
}

fn radius_sq(d: &RankOneData<RadFrac>, s0: &RadFrac) -> RadFrac {
    slice_circle_with(d, s0).expect("d_h is a nonzero symbol").radius_sq
}

/// (c0, c1, c2) of a quadratic in `x`, read off from values at 0 and +-1.
fn quadratic_coeffs(q: &RadFrac, x: Var) -> (RadFrac, RadFrac, RadFrac) {
    let at = |n: i64| q.substitute_var(x, &k(n));
    let (q0, qp, qm) = (at(0), at(1), at(-1));
    let half = RadFrac::half();
    let c2 = half.clone() * (qp.clone() + qm.clone()) - q0.clone();
    let c1 = half * (qp - qm);
    (q0, c1, c2)
}

fn discriminant(q: &RadFrac, x: Var) -> RadFrac {
    let (c0, c1, c2) = quadratic_coeffs(q, x);
    c1.square() - k(4) * c2 * c0
}

fn slice_to_frac(p: &SlicePoly<RadFrac>) -> RadFrac {
    let vars = [v(Var::S), v(Var::U1), v(Var::U2), v(Var::T)];
    let mut out = k(0);
    for (e, c) in p.terms() {
        let mut term = c.clone();
        for i in 0..4 {
            term = term * vars[i].pow(e[i] as u32);
        }
        out = out + term;
    }
    out
}

/// Wall of v against O: the charge expression divided by t at t = 0, as a polynomial in s, u1, u2.
pub fn derive_wall_from_charge(v: &ChernCharacter<RadFrac>) -> RadFrac {
    let o = ChernCharacter::new(k(1), Divisor::zero(), k(0));
    slice_to_frac(&wall_equation(v, &o, &symbolic_frame()).reduced)
}

fn z_expand() -> Vec<Reading> {
    let f = line(v(Var::Al), v(Var::Be), v(Var::Ga));
    let d = Divisor::new(v(Var::X), v(Var::Y), v(Var::Z));
    let h = Divisor::new(v(Var::A), v(Var::B), v(Var::C));
    let z = central_charge_at(&f, &d, &h, &v(Var::T));
    vec![Reading::new(
        "printed",
        "",
        vec![
            eq("Re", z.re, p("(-al*be + ga^2/2 + al*y + be*x - ga*z) - (2*x*y - z^2 - t^2*(2*a*b - c^2))/2")),
            eq("Im", z.im, p("t*((b*al + a*be - c*ga) + (-b*x - a*y + c*z))")),
        ],
    )]
}

fn transport() -> Vec<Reading> {
    let vc = ChernCharacter::new(v(Var::R), Divisor::new(v(Var::Al), v(Var::Be), v(Var::Ga)), v(Var::Ch));
    let pt = StabilityPoint::new(symbolic_frame(), v(Var::S), v(Var::U1), v(Var::U2), v(Var::T));
    let dp = Divisor::new(v(Var::P1), v(Var::P2), v(Var::P3));
    let (z1, z2) = transport_check(&vc, &pt, &dp);
    let zd = central_charge(&dual(&vc), &pt.mirrored());
    let z0 = central_charge(&vc, &pt);
    vec![Reading::new(
        "printed",
        "",
        vec![
            eq("Re twist", z1.re, z2.re),
            eq("Im twist", z1.im, z2.im),
            eq("Re dual", zd.re, z0.re.clone()),
            eq("Im dual", zd.im, -z0.im),
        ],
    )]
}

fn pf1() -> Vec<Reading> {
    let apex = apex_with(&data(&f_xyz())).expect("c1^2 is a nonzero symbol");
    vec![Reading::new(
        "printed",
        "",
        vec![
            eq("P_F,1", apex.0, p("(a*y + b*x - c*z)/w2")),
            eq("sign split", p("a*y + b*x - c*z"), p("(a+c)*y + (b+c)*x - c*(x+y+z)")),
        ],
    )]
}

fn phi_e_pf() -> Vec<Reading> {
    let apex = apex_with(&data(&f_xyz())).unwrap();
    vec![Reading::new(
        "printed",
        "",
        vec![eq("Phi_O(-E)(P_F)", phi_at(&data(&o_e()), &apex), p("((1+2*z)*(y*a+x*b) - (2*x*y+z+z^2)*c)/w2"))],
    )]
}

fn phi_e_center() -> Vec<Reading> {
    let s0 = v(Var::S0);
    let df = data(&f_xyz());
    let de = data(&o_e());
    vec![
        Reading::new(
            "printed",
            "",
            vec![eq(
                "Phi_O(-E)(c_F(s0))",
                phi_at(&de, &printed_center(&df, &s0)),
                p("s0*(((2*z*(y*a+x*b) - c^2*(2*x*y+z^2))*w2)/(b*x+a*y-c*z)^2*s0 + 1)"),
            )],
        ),
        Reading::new(
            "corrected",
            "c in place of c^2; third center coordinate uses d_g2",
            vec![eq(
                "Phi_O(-E)(c_F(s0))",
                phi_at(&de, &center(&df, &s0)),
                p("s0*(((2*z*(y*a+x*b) - c*(2*x*y+z^2))*w2)/(b*x+a*y-c*z)^2*s0 + 1)"),
            )],
        ),
    ]
}

const D2R2_QUADRATIC: &str =
    "8*x*y*(2*a*b-c^2)*s0^2 + w2*(-4*(2*x*y-z*(z+1))*(y*a+x*b) - 8*x*y*c)*s0 + (x*b - z*(1+z)*c + y*(a+2*x*c))^2";

fn d2r2_value() -> RadFrac {
    let s0 = v(Var::S0);
    let de = data(&o_e());
    let l = plane(&de, &data(&f_xyz()));
    dist_sq(&de, &l, &s0) - radius_sq(&de, &s0)
}

fn d2r2() -> Vec<Reading> {
    let q = d2r2_value();
    vec![
        Reading::new("printed", "", vec![eq("d^2 - r^2", q.clone(), p(D2R2_QUADRATIC))]),
        Reading::new(
            "cleared",
            "display is d^2 - r^2 times 4((bx+ay)^2 - 2c^2xy)",
            vec![eq("4((bx+ay)^2 - 2c^2xy)(d^2 - r^2)", q * p("4*((b*x+a*y)^2 - 2*c^2*x*y)"), p(D2R2_QUADRATIC))],
        ),
    ]
}

fn disc() -> Vec<Reading> {
    let derived = d2r2_value() * p("4*((b*x+a*y)^2 - 2*c^2*x*y)");
    let rhs = p("16*(2*a*b-c^2)*(2*x*y-z^2)*(2*x*y-(z+1)^2)*((b*x+a*y)^2 - 2*c^2*x*y)");
    vec![Reading::new(
        "printed",
        "",
        vec![
            eq("disc of displayed quadratic", discriminant(&p(D2R2_QUADRATIC), Var::S0), rhs.clone()),
            eq("disc of derived quadratic", discriminant(&derived, Var::S0), rhs),
        ],
    )]
}

const STEP1_N: &str = "2*(b*x^2*(1+y) + y*(-c*x + a*(1+x)*y)) + 2*(b*x + a*y - c*(x+y+x*y))*z + (a+b-c-b*x-a*y)*z^2 + c*z^3";

fn step1() -> Vec<Reading> {
    let s0 = v(Var::S0);
    let lhs = phi_at(&data(&f_twisted()), &center(&data(&f_xyz()), &s0));
    let disp = |s0_on_square: bool| {
        let sq = if s0_on_square { "s0*(-1+z)^2" } else { "(-1+z)^2" };
        p(&format!("-2*s0*(1+x)*(1+y) + {sq} + s0^2*w2/(b*x+a*y-c*z)^2*({STEP1_N})"))
    };
    let split = |f: &str| {
        p(&format!("(2*x*y-z^2)*({f}) - c*(x+y+z)^2 + a*(y+z)^2 + b*(x+z)^2 + y^2*(a+c) + x^2*(b+c)"))
    };
    vec![
        Reading::new(
            "printed",
            "",
            vec![eq("Phi_F'(c_F(s0))", lhs.clone(), disp(false)), eq("bracket split", p(STEP1_N), split("y*z+x*b-z*c"))],
        ),
        Reading::new(
            "ya",
            "factor (ya+xb-zc) in the split; display as printed",
            vec![eq("Phi_F'(c_F(s0))", lhs.clone(), disp(false)), eq("bracket split", p(STEP1_N), split("y*a+x*b-z*c"))],
        ),
        Reading::new(
            "ya+s0",
            "factor (ya+xb-zc) in the split; s0 multiplies (z-1)^2 in the display",
            vec![eq("Phi_F'(c_F(s0))", lhs, disp(true)), eq("bracket split", p(STEP1_N), split("y*a+x*b-z*c"))],
        ),
    ]
}

fn pf_twist() -> Vec<Reading> {
    let apex = apex_with(&data(&f_xyz())).unwrap();
    let num = "-b*x - a*y - 2*(a+b+c)*x*y + c*z + (a+b+c)*z^2";
    vec![Reading::new(
        "printed",
        "",
        vec![
            eq("Phi_F'(P_F)", phi_at(&data(&f_twisted()), &apex), p(&format!("({num})/w2"))),
            eq("numerator split", p(num), p("-(y*a+x*b-z*c) + (z^2-2*x*y)*(a+b+c)")),
        ],
    )]
}

const DELTA1: &str = "4*(a^2*(y+z)^2 + (x+z)*(2*b*c*(x-y) + b^2*(x+z) - 2*c^2*(y+z)) + 2*a*(-c*(x-y)*(y+z) + b*(x^2 - x*y + y^2 + (x+y)*z + z^2)))";

fn delta2() -> RadFrac {
    p(DELTA1) - p("(z^2 - 2*x*y)*(a+c)*(b+c)")
}

fn delta_rec() -> Vec<Reading> {
    let d = delta2();
    let shifted = d
        .substitute_var(Var::X, &(v(Var::X) + k(1)))
        .substitute_var(Var::Y, &(v(Var::Y) + k(1)))
        .substitute_var(Var::Z, &(v(Var::Z) - k(1)));
    vec![Reading::new(
        "printed",
        "",
        vec![eq("delta2 step", d - shifted, p("-(1+2*x+2*y+2*z)*(a+c)*(b+c)"))],
    )]
}

fn delta_base_equations(d: RadFrac) -> Vec<Equation> {
    let neg_xy = -(v(Var::X) + v(Var::Y));
    vec![
        eq(
            "y = 0",
            d.substitute_var(Var::Y, &k(0)),
            p("(x+z)^2*(b*(a+b) + (-a+b)*c - c^2) + (a+c)*(b+c)*x^2 + (a^2 - 2*c*(b+c))*z^2"),
        ),
        eq(
            "x = 0",
            d.substitute_var(Var::X, &k(0)),
            p("(y+z)^2*(a^2 + a*(b+c) - c*(b+c)) + (a+c)*(b+c)*y^2 + (b^2 - 2*c*(a+c))*z^2"),
        ),
        eq(
            "z = -x-y",
            d.substitute_var(Var::Z, &neg_xy),
            p("(a+c)*(b+c)*(x-y)^2 + (a^2 - 2*c*(b+c))*x^2 + (b^2 - 2*c*(a+c))*y^2"),
        ),
    ]
}

fn delta_base() -> Vec<Reading> {
    let quarter = p(DELTA1_BRACKET) - p("(z^2 - 2*x*y)*(a+c)*(b+c)");
    vec![
        Reading::new("printed", "", delta_base_equations(delta2())),
        Reading::new("quarter", "delta2 built from delta1/4; the step identity holds for both", delta_base_equations(quarter)),
    ]
}

const GAMMA: &str = "4*(2*a*b-c^2)*((x+z)^2+(y+z)^2)*s0^2 - 4*w2*(c*(-2*x*y*(1+x+y) - (x+y)*(1+2*x+2*y)*z - 3*(x+y)*z^2 - 2*z^3) + b*(x*(x+2*x^2-y) + x*(1+4*x+2*y)*z + (1+4*x+y)*z^2 + z^3) + a*(y*(-x+y+2*y^2) + y*(1+2*x+4*y)*z + (1+x+4*y)*z^2 + z^3))*s0 + (b*(x+2*x^2+2*x*z+z^2) + a*(y+2*y^2+2*y*z+z^2) - c*(2*x*y+z+2*(x+y)*z+z^2))^2";

const DELTA1_BRACKET: &str = "(a^2*(y+z)^2 + (x+z)*(2*b*c*(x-y) + b^2*(x+z) - 2*c^2*(y+z)) + 2*a*(-c*(x-y)*(y+z) + b*(x^2 - x*y + y^2 + (x+y)*z + z^2)))";

fn gamma_disc() -> Vec<Reading> {
    let dg = discriminant(&p(GAMMA), Var::S0);
    let s0 = v(Var::S0);
    let dt = data(&f_twisted());
    let l = plane(&dt, &data(&f_xyz()));
    let d2r2 = dist_sq(&dt, &l, &s0) - radius_sq(&dt, &s0);
    vec![
        Reading::new(
            "printed",
            "",
            vec![eq(
                "disc(gamma)",
                dg.clone(),
                p(&format!("16*(2*a*b-c^2)*(z^2-2*x*y)*(2*(x+y+z)+(2*x*y-z^2))*{DELTA1_BRACKET}")),
            )],
        ),
        Reading::new(
            "plus-one",
            "third factor 1 + 2(x+y+z) + (2xy - z^2); gamma/delta1 is d^2 - r^2",
            vec![
                eq(
                    "disc(gamma)",
                    dg,
                    p(&format!("16*(2*a*b-c^2)*(z^2-2*x*y)*(1+2*(x+y+z)+(2*x*y-z^2))*{DELTA1_BRACKET}")),
                ),
                eq("last factor", p(&format!("4*{DELTA1_BRACKET}")), p(DELTA1)),
                eq("d^2 - r^2 = gamma/delta1", d2r2, p(GAMMA) / p(DELTA1)),
            ],
        ),
    ]
}

fn f_x0() -> ChernCharacter<RadFrac> {
    line(k(0), v(Var::Y), v(Var::Z))
}

fn x0_center() -> Vec<Reading> {
    let s0 = v(Var::S0);
    let df = data(&f_x0());
    let de1 = data(&o_e1());
    vec![
        Reading::new(
            "printed",
            "",
            vec![eq(
                "Phi_O(-E1)(c_F(s0))",
                phi_at(&de1, &printed_center(&df, &s0)),
                p("(s0^2*(-2*a*y*z - a*z^2 + c*z^2) + s0*(a^2*y^2 - 2*a*c*y*z + c^2*z^2))/(a*y-c*z)^2*w2"),
            )],
        ),
        Reading::new(
            "corrected",
            "w2 multiplies the s0^2 term only; third center coordinate uses d_g2",
            vec![eq(
                "Phi_O(-E1)(c_F(s0))",
                phi_at(&de1, &center(&df, &s0)),
                p("(s0^2*(-2*a*y*z - a*z^2 + c*z^2)*w2 + s0*(a^2*y^2 - 2*a*c*y*z + c^2*z^2))/(a*y-c*z)^2"),
            )],
        ),
    ]
}

fn x0_pf() -> Vec<Reading> {
    let apex = apex_with(&data(&f_x0())).unwrap();
    let lhs = phi_at(&data(&o_e1()), &apex);
    vec![
        Reading::new("printed", "", vec![eq("Phi_O(-E1)(P_F)", lhs.clone(), p("(-(z-1)*(a*y+c*z) - a*(y+z))/w2"))]),
        Reading::new(
            "corrected",
            "(ay - cz) in the first product and a z (y+z) in the second",
            vec![eq("Phi_O(-E1)(P_F)", lhs, p("(-(z-1)*(a*y-c*z) - a*z*(y+z))/w2"))],
        ),
    ]
}

fn x0_dist() -> Vec<Reading> {
    let s0 = v(Var::S0);
    let de1 = data(&o_e1());
    let l = plane(&de1, &data(&f_x0()));
    let d2 = dist_sq(&de1, &l, &s0);
    let rhs = p("(4*a*z*(z-1)*(y+z)*s0*w2 + (c*(z-1)*z + a*(y+z^2))^2)/(4*a^2*(y+z)^2)");
    vec![
        Reading::new("printed", "", vec![eq("d^2 = rhs^2", d2.clone(), rhs.square())]),
        Reading::new(
            "d2-r2",
            "the display is d^2 - r^2",
            vec![eq("d^2 - r^2", d2 - radius_sq(&de1, &s0), rhs)],
        ),
    ]
}

fn f_xyz0() -> ChernCharacter<RadFrac> {
    line(v(Var::X), v(Var::Y), -(v(Var::X) + v(Var::Y)))
}

/// Elementary symmetric values of Phi_F at the two points where the walls of O(-E1) and O(-E2) meet the slice s = s0.
fn intersection_sum_product() -> (RadFrac, RadFrac) {
    let s0 = v(Var::S0);
    let lam = v(Var::Lam);
    let (d1, d2) = (data(&o_e1()), data(&o_e2()));
    let l6 = plane(&d1, &d2);
    let u1 = -(l6.k.clone() / l6.n1.clone()) - lam.clone() * l6.n2.clone();
    let u2 = lam * l6.n1.clone();
    let on_circle = phi_with(&d1, &s0, &u1, &u2);
    let phi_f = phi_with(&data(&f_xyz0()), &s0, &u1, &u2);
    let (g0, g1, g2) = quadratic_coeffs(&on_circle, Var::Lam);
    let (b0, b1, b2) = quadratic_coeffs(&phi_f, Var::Lam);
    let e1 = -(g1 / g2.clone());
    let e2 = g0 / g2;
    let power2 = e1.square() - k(2) * e2.clone();
    let sum = b2.clone() * power2.clone() + b1.clone() * e1.clone() + k(2) * b0.clone();
    let product = b2.square() * e2.square()
        + b2.clone() * b1.clone() * e2.clone() * e1.clone()
        + b2 * b0.clone() * power2
        + b1.square() * e2
        + b1 * b0.clone() * e1
        + b0.square();
    (sum, product)
}

fn xyz_sumprod() -> Vec<Reading> {
    let (sum, product) = intersection_sum_product();
    vec![Reading::new(
        "printed",
        "",
        vec![
            eq("Phi_F(I1) + Phi_F(I2)", sum, p("2*s0*(x^2+x+y^2+y)")),
            eq("Phi_F(I1) Phi_F(I2)", product, p("s0^2*(x+x^2+y+y^2)^2")),
        ],
    )]
}

fn xyz_psi() -> Vec<Reading> {
    let s0 = v(Var::S0);
    let (d1, d2) = (data(&o_e1()), data(&o_e2()));
    let df = data(&f_xyz0());
    let l4 = plane(&d1, &df);
    let c1 = center(&d1, &s0);
    let t = l4.eval(&c1.1, &c1.2) / (l4.n1.square() + l4.n2.square());
    let q1 = (c1.1.clone() - t.clone() * l4.n1.clone(), c1.2.clone() - t * l4.n2.clone());
    let l12 = plane(&d1, &d2);
    let l21 = plane(&d2, &d1);
    let pf1 = apex_with(&df).unwrap().0;
    let pe1 = apex_with(&d1).unwrap().0;
    let c_at = |s: &RadFrac| center(&d1, s);
    let at_pf = c_at(&pf1);
    let at_pe = c_at(&pe1);
    let c1_rhs = "(2*s0*(c^2-2*a*b) + (a-b)*(a+c)*w2/(b+c))/(2*(a+c)^2)";
    let end_rhs = "(a+b+2*c)*w2/(2*(a+c)*(b+c))";
    vec![
        Reading::new(
            "printed",
            "",
            vec![
                eq("Psi(Q1(s0))", l12.eval(&q1.0, &q1.1), p("(x^2+x+y^2+y)*w2/(2*x)*(b+c)")),
                eq("Psi(c1(s0))", l12.eval(&c1.1, &c1.2), p(c1_rhs)),
                eq("Psi(c1(P_F,1))", l12.eval(&at_pf.1, &at_pf.2), p(end_rhs)),
            ],
        ),
        Reading::new(
            "swapped",
            "linear form of Psi_{O(-E2),O(-E1)}; denominator 2x(b+c); endpoint s0 = P_{O(-E1),1}",
            vec![
                eq("Psi(Q1(s0))", l21.eval(&q1.0, &q1.1), p("(x^2+x+y^2+y)*w2/(2*x*(b+c))")),
                eq("Psi(c1(s0))", l21.eval(&c1.1, &c1.2), p(c1_rhs)),
                eq("Psi(c1(P_O(-E1),1))", l21.eval(&at_pe.1, &at_pe.2), p(end_rhs)),
            ],
        ),
    ]
}

fn charpoly() -> Vec<Reading> {
    let (a, b, c, r) = (v(Var::A), v(Var::B), v(Var::C), v(Var::R));
    let m = torsion_wall_matrix_with(&r, &a, &b, &c, &RadFrac::w1());
    let [k0, k1, k2] = char_poly(&m);
    let mut eqs = vec![
        eq("t^2", k2, p("3*a*b*c*(2*a*b - c^2)*r")),
        eq("t^1", k1, p("a^2*b^2*(2*a*b - 3*c^2)*(-2*a*b + c^2)^2*r^2")),
        eq("t^0", k0, p("-a^3*b^3*c*(-2*a*b + c^2)^4*r^3")),
    ];
    // The quadratic part of the charge-derived wall against O_E(-1) is M / (2ab(2ab - c^2) w2).
    let quot = ch_restriction(&Divisor::ints(0, 0, 1)).expect("E is a (-1)-curve").lift::<RadFrac>();
    let sub = ChernCharacter::new(r, Divisor::new(v(Var::P1), v(Var::P2), v(Var::P3)), v(Var::Ch));
    let w = wall_equation(&sub, &quot, &symbolic_frame());
    let qp = quadratic_part(&w.reduced);
    let scale = p("2*a*b*(2*a*b - c^2)*w2");
    for (i, j) in [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)] {
        eqs.push(eq(&format!("wall quadratic part [{i}{j}]"), qp[i][j].clone() * scale.clone(), m[i][j].clone()));
    }
    vec![Reading::new("printed", "", eqs)]
}

fn phi_consist() -> Vec<Reading> {
    let c1 = Divisor::new(v(Var::X), v(Var::Y), v(Var::Z));
    let rank1 = ChernCharacter::new(k(1), c1.clone(), v(Var::Ch));
    let rank_r = ChernCharacter::new(v(Var::R), c1, v(Var::Ch));
    let w1 = derive_wall_from_charge(&rank1);
    let wr = derive_wall_from_charge(&rank_r);
    let d = data(&rank1);
    let (s, u1, u2) = (v(Var::S), v(Var::U1), v(Var::U2));
    let two = k(2);
    let tail = two.clone() * s.clone() * (d.dg1.clone() * u1.clone() + d.dg2.clone() * u2.clone())
        + two.clone() * d.ch2.clone() * s.clone();
    let literal = d.dh.clone() * s.square() + u1.square() + u2.square() - tail;
    let phi = phi_with(&d, &s, &u1, &u2);
    let slice = wr.substitute_var(Var::U2, &k(0));
    let conic = RadFrac::half()
        * (d.dh.clone() * (s.square() + u1.square()) - two.clone() * d.dg1.clone() * s.clone() * u1
            - two * d.ch2.clone() * s);
    let shared = vec![eq("rank independence", wr.clone(), w1.clone()), eq("two-variable slice", slice, conic)];
    let mut printed = vec![eq("2 W0 = Phi_F", k(2) * w1.clone(), literal)];
    printed.extend(shared.clone());
    let mut fixed = vec![eq("2 W0 = Phi_F", k(2) * w1, phi)];
    fixed.extend(shared);
    vec![
        Reading::new("printed", "", printed),
        Reading::new("parenthesized", "d_h multiplies s^2 + u1^2 + u2^2", fixed),
    ]
}

pub fn registry() -> Vec<Identity> {
    vec![
        Identity { id: "I-Z-EXPAND", description: "central charge in (C1, C2, E) coordinates", flagged: false, build: z_expand },
        Identity { id: "I-TRANSPORT", description: "twist and dual transport of the central charge", flagged: false, build: transport },
        Identity { id: "I-PF1", description: "first apex coordinate and its sign split", flagged: false, build: pf1 },
        Identity { id: "I-PHI-E-PF", description: "wall of O(-E) at the apex of O(-C)", flagged: false, build: phi_e_pf },
        Identity { id: "I-PHI-E-CENTER", description: "wall of O(-E) at the slice centers of O(-C)", flagged: false, build: phi_e_center },
        Identity { id: "I-D2R2", description: "distance minus radius for the O(-E) slice circle", flagged: false, build: d2r2 },
        Identity { id: "I-DISC", description: "discriminant of the z < 0 distance quadratic", flagged: false, build: disc },
        Identity { id: "I-STEP1", description: "twisted wall at the slice centers, z >= 0", flagged: true, build: step1 },
        Identity { id: "I-PF-TWIST", description: "twisted wall at the apex, z >= 0", flagged: false, build: pf_twist },
        Identity { id: "I-DELTA-REC", description: "recursion of delta2 under the twist", flagged: false, build: delta_rec },
        Identity { id: "I-DELTA-BASE", description: "boundary values of delta2", flagged: false, build: delta_base },
        Identity { id: "I-GAMMA-DISC", description: "discriminant of gamma", flagged: false, build: gamma_disc },
        Identity { id: "I-X0-CENTER", description: "wall of O(-E1) at slice centers, x = 0", flagged: false, build: x0_center },
        Identity { id: "I-X0-PF", description: "wall of O(-E1) at the apex, x = 0", flagged: false, build: x0_pf },
        Identity { id: "I-X0-DIST", description: "distance to the radical line, x = 0", flagged: true, build: x0_dist },
        Identity { id: "I-XYZ-SUMPROD", description: "Phi_F at the two wall intersections, x + y + z = 0", flagged: false, build: xyz_sumprod },
        Identity { id: "I-XYZ-PSI", description: "radical line values, x + y + z = 0", flagged: false, build: xyz_psi },
        Identity { id: "I-CHARPOLY", description: "characteristic polynomial of the torsion wall matrix", flagged: false, build: charpoly },
        Identity { id: "I-PHI-CONSIST", description: "Phi_F against the charge-derived wall", flagged: false, build: phi_consist },
    ]
}
