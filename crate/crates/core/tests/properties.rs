use dpwall::charge::{central_charge, dual_transport_check, heart_window, transport_check, StabilityPoint};
use dpwall::chern::{bogomolov_holds, ch_line_bundle, ch_structure_sheaf, mu_slope, twist, ChernCharacter, ExtRational, HNProfile};
use dpwall::field::{int, rat, Rational};
use dpwall::lattice::{build_frame, is_ample, minus_one_curves, Divisor, Frame};
use dpwall::search::{enumerate_candidates, random_frame_seeds};
use dpwall::symbolic::{RadPoly, Var};
use dpwall::walls::{
    apex_point, classify_quadric, nest_order, phi_quadric, semicircle_in_pi, wall_equation, NestOrder, Plane,
    QuadricShape, RankOneData,
};
use proptest::prelude::*;

fn q() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn divisor() -> impl Strategy<Value = Divisor> {
    (q(), q(), q()).prop_map(|(p, q, r)| Divisor::new(p, q, r))
}

fn int_divisor(b: i64) -> impl Strategy<Value = Divisor> {
    (-b..=b, -b..=b, -b..=b).prop_map(|(p, q, r)| Divisor::ints(p, q, r))
}

fn chern() -> impl Strategy<Value = ChernCharacter> {
    (-4i64..=4, divisor(), q()).prop_map(|(r, c1, ch2)| ChernCharacter::new(int(r), c1, ch2))
}

fn seed() -> impl Strategy<Value = [Rational; 3]> {
    (0u64..1000).prop_map(|s| random_frame_seeds(1, s).remove(0))
}

fn frame() -> impl Strategy<Value = Frame<f64>> {
    seed().prop_map(|[a, b, c]| build_frame(&a, &b, &c).unwrap())
}

/// The seed (25/8, 4, -3) has rational radicals w1 = 5, w2 = 4.
fn rational_frame() -> Frame<Rational> {
    Frame::from_radicals(rat(25, 8), int(4), int(-3), int(5), int(4))
}

fn point(f: Frame<f64>) -> impl Strategy<Value = StabilityPoint<f64>> {
    (-4.0..4.0f64, -4.0..4.0f64, -4.0..4.0f64, 0.05..4.0f64)
        .prop_map(move |(s, u1, u2, t)| StabilityPoint::new(f.clone(), s, u1, u2, t))
}

fn poly() -> impl Strategy<Value = RadPoly> {
    let vars = [Var::A, Var::B, Var::C, Var::X, Var::S];
    let term = (-5i64..=5, prop::collection::vec(0usize..7, 0..3));
    prop::collection::vec(term, 0..4).prop_map(move |ts| {
        let mut p = RadPoly::zero();
        for (k, idx) in ts {
            let mut t = RadPoly::constant(int(k));
            for i in idx {
                let f = match i {
                    5 => RadPoly::w1(),
                    6 => RadPoly::w2(),
                    _ => RadPoly::var(vars[i]),
                };
                t = t.mul_ref(&f);
            }
            p = p.add_ref(&t);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn intersection_symmetric_bilinear(d in divisor(), e in divisor(), f in divisor(), k in q()) {
        prop_assert_eq!(d.dot(&e), e.dot(&d));
        prop_assert_eq!(d.add_ref(&e).dot(&f), d.dot(&f) + e.dot(&f));
        prop_assert_eq!(d.scale(&k).dot(&e), k * d.dot(&e));
    }

    #[test]
    fn frame_orthonormal_and_round_trip(f in frame(), s in -5.0..5.0f64, u1 in -5.0..5.0f64, u2 in -5.0..5.0f64) {
        let g = f.gram();
        let want = [1.0, -1.0, -1.0, 0.0, 0.0, 0.0];
        for (x, w) in g.iter().zip(want) {
            prop_assert!((x - w).abs() < 1e-12);
        }
        let d = f.point(&s, &u1, &u2);
        let (h, g1, g2) = f.coords(&d);
        prop_assert!((h - s).abs() < 1e-12 && (g1 - u1).abs() < 1e-12 && (g2 - u2).abs() < 1e-12);
    }

    #[test]
    fn twist_is_an_action(v in chern(), d1 in divisor(), d2 in divisor()) {
        prop_assert_eq!(twist(&v, &Divisor::zero()), v.clone());
        prop_assert_eq!(twist(&twist(&v, &d1), &d2), twist(&v, &d1.add_ref(&d2)));
        prop_assert_eq!(bogomolov_holds(&twist(&v, &d1)), bogomolov_holds(&v));
        prop_assert_eq!(twist(&v, &d1).discriminant(), v.discriminant());
    }

    #[test]
    fn slope_shifts_under_twist(v in chern(), d in divisor(), h in divisor()) {
        prop_assume!(v.rank != int(0));
        let (ExtRational::Finite(a), ExtRational::Finite(b)) = (mu_slope(&twist(&v, &d), &h).unwrap(), mu_slope(&v, &h).unwrap()) else {
            panic!("finite slopes expected");
        };
        prop_assert_eq!(a, b + d.dot(&h));
    }

    #[test]
    fn charge_additive_exact(v in chern(), w in chern(), s in q(), u1 in q(), u2 in q(), t in q()) {
        let p = StabilityPoint::new(rational_frame(), s, u1, u2, t);
        let sum = central_charge(&v.add_ref(&w), &p);
        let parts = central_charge(&v, &p).add_ref(&central_charge(&w, &p));
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn transports_exact(v in chern(), d in divisor(), s in q(), u1 in q(), u2 in q(), t in q()) {
        let p = StabilityPoint::new(rational_frame(), s, u1, u2, t);
        let (z1, z2) = transport_check(&v, &p, &d);
        prop_assert_eq!(z1, z2);
        let (z, zd) = dual_transport_check(&v, &p);
        prop_assert_eq!(zd, z.conj());
    }

    #[test]
    fn structure_sheaf_in_heart_for_negative_s(p in frame().prop_flat_map(point)) {
        let z = central_charge(&ch_structure_sheaf::<f64>(), &p);
        prop_assert_eq!(z.im > 0.0, p.s < 0.0);
    }

    #[test]
    fn imaginary_part_vanishes_at_window_edge(c1 in divisor(), t in q()) {
        prop_assume!(t != int(0));
        let f = rational_frame();
        let v = ch_line_bundle(&c1);
        let mu = c1.dot(&f.h);
        let w = heart_window(&HNProfile::new(vec![(1, mu.clone())]).unwrap(), &HNProfile::empty()).unwrap();
        let p = StabilityPoint::new(f, w.upper, int(0), int(0), t);
        prop_assert_eq!(central_charge(&v, &p).im, int(0));
    }

    #[test]
    fn wall_antisymmetric_and_scaled(f in chern(), g in chern(), k in q()) {
        prop_assume!(k != int(0));
        let fr = rational_frame();
        let w = wall_equation(&f, &g, &fr);
        let back = wall_equation(&g, &f, &fr);
        prop_assert!(w.full.add(&back.full).is_zero());
        let scaled = wall_equation(&f.scale(&k), &g, &fr);
        prop_assert!(scaled.full.sub(&w.full.scale(&k)).is_zero());
    }

    #[test]
    fn rank_independence_against_o(r in 1i64..=6, c1 in divisor(), ch2 in q()) {
        let fr = rational_frame();
        let o = ch_structure_sheaf();
        let wr = wall_equation(&ChernCharacter::new(int(r), c1.clone(), ch2.clone()), &o, &fr);
        let w1 = wall_equation(&ChernCharacter::new(int(1), c1, ch2), &o, &fr);
        prop_assert!(wr.reduced.sub(&w1.reduced).is_zero());
    }

    #[test]
    fn origin_and_apex_on_wall(c1 in divisor()) {
        prop_assume!(c1.self_intersection() != int(0));
        let fr = rational_frame();
        let v = ch_line_bundle(&c1);
        let w = wall_equation(&v, &ch_structure_sheaf(), &fr);
        let zero = [int(0), int(0), int(0), int(0)];
        prop_assert_eq!(w.reduced.eval(&zero), int(0));
        let (s, u1, u2) = apex_point(&v, &fr).unwrap();
        prop_assert_eq!(w.reduced.eval(&[s, u1, u2, int(0)]), int(0));
    }

    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert!(p.mul_ref(&q).mul_ref(&r).sub_ref(&p.mul_ref(&q.mul_ref(&r))).is_zero());
        prop_assert!(p.mul_ref(&q.add_ref(&r)).sub_ref(&p.mul_ref(&q).add_ref(&p.mul_ref(&r))).is_zero());
        prop_assert!(p.add_ref(&q).sub_ref(&q.add_ref(&p)).is_zero());
        prop_assert_eq!(p.normalize().normalize(), p.normalize());
    }

    #[test]
    fn domain_integrity(p in poly(), q in poly()) {
        prop_assert_eq!(p.mul_ref(&q).equals_zero(), p.equals_zero() || q.equals_zero());
    }

    #[test]
    fn walls_never_cross(f in frame(), a in int_divisor(3), b in int_divisor(3), u0 in -3.0..3.0f64, th in 0.0..6.28f64) {
        let plane = Plane::new(u0, (th.cos(), th.sin())).unwrap();
        let o = ch_structure_sheaf::<f64>();
        let wa = semicircle_in_pi(&ch_line_bundle(&a.neg_ref()).to_f64(), &o, &f, &plane);
        let wb = semicircle_in_pi(&ch_line_bundle(&b.neg_ref()).to_f64(), &o, &f, &plane);
        if let (Ok(Some(x)), Ok(Some(y))) = (wa, wb) {
            prop_assert_ne!(nest_order(&x, &y, 1e-9), NestOrder::Crossing);
        }
    }
}

#[test]
fn ample_classes_are_positive() {
    for p in -10..=10 {
        for q in -10..=10 {
            for r in -10..=10 {
                let d = Divisor::ints(p, q, r);
                if is_ample(&d) {
                    assert!(d.self_intersection() > int(0), "{d}");
                    assert!(minus_one_curves().iter().all(|e| d.dot(e) > int(0)), "{d}");
                }
            }
        }
    }
}

#[test]
fn negative_curves_give_two_sheeted_hyperboloids() {
    for [a, b, c] in random_frame_seeds(5, 11) {
        let f = build_frame(&a, &b, &c).unwrap();
        for curve in enumerate_candidates(4) {
            let v = ch_line_bundle(&curve.neg_ref()).to_f64();
            let d = RankOneData::new(&v, &f);
            assert!(d.c1_sq < 0.0 && d.dh < 0.0 && d.ch2 != 0.0);
            let (qm, b) = phi_quadric(&d);
            assert_eq!(classify_quadric(&qm, &b, 0.0), QuadricShape::TwoSheetHyperboloid, "{curve}");
        }
    }
}
