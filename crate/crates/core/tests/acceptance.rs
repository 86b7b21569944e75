use std::time::{Duration, Instant};

use dpwall::certifier::{run_one, run_suite, symbolic_frame, Status};
use dpwall::charge::{dual_transport_check, transport_check, StabilityPoint};
use dpwall::chern::{ch_ideal_twist, ch_line_bundle, ch_structure_sheaf, ChernCharacter};
use dpwall::field::{int, rat, Rational};
use dpwall::lattice::{
    build_frame, euler_characteristic, is_ample, is_negative_effective_curve, minus_one_curves, Divisor, Frame,
};
use dpwall::search::{check_containment, enumerate_candidates, random_frame_seeds, torsion_rank0_gap, GridSpec, Verdict};
use dpwall::symbolic::{RadFrac, Var};
use dpwall::walls::{
    classify_conic, nest_order, quadric_signature, semicircle_in_pi, torsion_wall_matrix, wall_equation, ConicType,
    NestOrder, Plane, WallError,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn random_rat(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let den = rng.gen_range(1..=6);
    rat(rng.gen_range(-bound * den..=bound * den), den)
}

fn maximal_walls() -> Outcome {
    let start = Instant::now();
    let frame = build_frame(&rat(4, 15), &rat(2, 15), &rat(-1, 15)).unwrap();
    let r = 15f64.sqrt();
    let expected = [[-3.0 / r, 2.0, -6.0 / r, 1.0], [-1.0 / r, -1.0, -7.0 / r, 1.0], [-1.0 / r, 0.0, 8.0 / r, 1.0]];
    let mut worst = 0.0f64;
    let mut scale_ok = true;
    for (e, want) in minus_one_curves().iter().zip(expected) {
        let sub = ch_line_bundle(&e.neg_ref()).to_f64();
        let raw = wall_equation(&sub, &ch_structure_sheaf(), &frame).rank_one_shape();
        scale_ok &= raw[3] > 0.0;
        let got = raw.map(|x| x / raw[3]);
        // The s u1 coefficient is compared up to the orientation of G1.
        let err = [
            (got[0] - want[0]).abs(),
            (got[1].abs() - want[1].abs()).abs(),
            (got[2] - want[2]).abs(),
            (got[3] - want[3]).abs(),
        ];
        worst = err.iter().fold(worst, |m, x| m.max(*x));
    }
    let elapsed = start.elapsed();
    let pass = scale_ok && worst < 1e-9 && elapsed < Duration::from_secs(1);
    outcome(pass, format!("max deviation {worst:.1e}, positive scale {scale_ok}, {}", secs(elapsed)))
}

fn certifier_suite() -> Outcome {
    let start = Instant::now();
    let suite = run_suite();
    let elapsed = start.elapsed();
    let unflagged: Vec<_> = suite.entries.iter().filter(|e| !e.flagged).collect();
    let printed = unflagged.iter().filter(|e| e.status == Status::Holds).count();
    let corrected = unflagged.iter().filter(|e| matches!(e.status, Status::HoldsCorrected(_))).count();
    let spot = suite.entries.iter().all(|e| e.spot_check_agrees);
    let flagged: Vec<String> = suite
        .entries
        .iter()
        .filter(|e| e.flagged)
        .map(|e| format!("{}: {}", e.id, e.finding().unwrap_or_else(|| "holds as printed".into())))
        .collect();
    let findings_ok = suite.entries.iter().filter(|e| e.flagged).all(|e| e.finding().is_some() && e.status != Status::Fails);
    let pass = unflagged.len() == 17
        && printed + corrected == 17
        && suite.all_pass()
        && spot
        && findings_ok
        && elapsed < Duration::from_secs(60);
    outcome(
        pass,
        format!(
            "{}/17 exact ({printed} as printed, {corrected} under a corrected reading), spot checks agree {spot}, {}; {}",
            printed + corrected,
            secs(elapsed),
            flagged.join("; ")
        ),
    )
}

fn disc_and_charpoly() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for id in ["I-DISC", "I-CHARPOLY"] {
        let rep = run_one(id).expect("registered");
        let exact = rep.status == Status::Holds && rep.readings[0].equations.iter().all(|e| e.holds && e.witness.is_none());
        pass &= exact;
        parts.push(format!("{id} {:?}", rep.status));
    }
    outcome(pass, parts.join(", "))
}

fn random_rank_one_sub(rng: &mut ChaCha8Rng) -> ChernCharacter<f64> {
    // O(-C) twisted by an ideal of n points, C effective in the (-1)-curve basis.
    let curves = minus_one_curves();
    let mut c = Divisor::<Rational>::zero();
    while c == Divisor::zero() {
        for e in &curves {
            c = c.add_ref(&e.scale(&int(rng.gen_range(0..=3))));
        }
    }
    ch_ideal_twist::<Rational>(rng.gen_range(0..=3), &c.neg_ref()).to_f64()
}

fn nested_walls() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let o = ch_structure_sheaf::<f64>();
    let (mut crossings, mut compared) = (0usize, 0usize);
    for [a, b, c] in random_frame_seeds(3, 4) {
        let frame = build_frame(&a, &b, &c).unwrap();
        for _ in 0..500 {
            let f1 = random_rank_one_sub(&mut rng);
            let f2 = random_rank_one_sub(&mut rng);
            for _ in 0..20 {
                let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                let plane = Plane::new(rng.gen_range(-3.0..3.0), (th.cos(), th.sin())).unwrap();
                let w1 = semicircle_in_pi(&f1, &o, &frame, &plane);
                let w2 = semicircle_in_pi(&f2, &o, &frame, &plane);
                if let (Ok(Some(x)), Ok(Some(y))) = (w1, w2) {
                    compared += 1;
                    crossings += usize::from(nest_order(&x, &y, 1e-9) == NestOrder::Crossing);
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = crossings == 0 && compared > 0 && elapsed < Duration::from_secs(30);
    outcome(pass, format!("{compared} semicircle pairs compared, {crossings} crossings, {}", secs(elapsed)))
}

/// Affine type from the augmented matrix [[h, -g, -c], [-g, h, 0], [-c, 0, 0]].
fn conic_oracle(h: &Rational, g: &Rational, c: &Rational) -> Option<ConicType> {
    let zero = int(0);
    let m = [[h.clone(), -g.clone(), -c.clone()], [-g.clone(), h.clone(), zero.clone()], [-c.clone(), zero.clone(), zero.clone()]];
    let det3 = &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
    let det2 = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    if det3 == zero {
        return Some(ConicType::Cone);
    }
    if det2 == zero {
        return Some(ConicType::Parabola);
    }
    if det2 > zero {
        return Some(ConicType::Ellipse);
    }
    // The center solves the linear part; the far branch lies on the side of the center.
    let center_s = -(&m[0][2] * &m[1][1] - &m[0][1] * &m[1][2]) / &det2;
    Some(if center_s > zero { ConicType::RightHyperbola } else { ConicType::LeftHyperbola })
}

fn conic_classification() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut agree, mut compared, mut unclassified) = (0usize, 0usize, 0usize);
    let mut first_miss = None;
    for _ in 0..1000 {
        let (h, g, c) = (random_rat(&mut rng, 10), random_rat(&mut rng, 10), random_rat(&mut rng, 10));
        match classify_conic(&h, &g, &c) {
            Err(WallError::Unclassified) | Err(WallError::Invalid(_)) => unclassified += 1,
            Err(e) => panic!("unexpected error {e}"),
            Ok(t) => {
                compared += 1;
                if conic_oracle(&h, &g, &c) == Some(t) {
                    agree += 1;
                } else if first_miss.is_none() {
                    first_miss = Some(format!(" first miss at ({h}, {g}, {c})"));
                }
            }
        }
    }
    outcome(
        agree == compared && compared > 0,
        format!("{agree}/{compared} agree, {unclassified} unclassified excluded{}", first_miss.unwrap_or_default()),
    )
}

fn containment() -> Outcome {
    let start = Instant::now();
    let candidates = enumerate_candidates(4);
    let grid = GridSpec::default();
    let (mut violations, mut sampled, mut failed) = (0usize, 0usize, 0usize);
    for [a, b, c] in random_frame_seeds(5, grid.seed) {
        let frame = build_frame(&a, &b, &c).unwrap();
        for curve in &candidates {
            let rep = check_containment(curve, &frame, &grid);
            violations += rep.violations.len();
            sampled += rep.sampled;
            failed += usize::from(rep.verdict == Verdict::Fail);
        }
    }
    let elapsed = start.elapsed();
    let pass = violations == 0 && failed == 0 && sampled > 0 && elapsed < Duration::from_secs(300);
    outcome(
        pass,
        format!("{} curves x 5 frames, {sampled} interior points, {violations} violations, {}", candidates.len(), secs(elapsed)),
    )
}

fn transports() -> Outcome {
    let exact = run_one("I-TRANSPORT").expect("registered").status == Status::Holds;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let seeds = random_frame_seeds(16, 7);
    let mut worst = 0.0f64;
    for i in 0..10_000 {
        let [a, b, c] = &seeds[i % seeds.len()];
        let frame = build_frame(a, b, c).unwrap();
        let mut u = || rng.gen_range(-5.0..5.0f64);
        let v = ChernCharacter::new(u().round(), Divisor::new(u(), u(), u()), u());
        let dprime = Divisor::new(u(), u(), u());
        let p = StabilityPoint::new(frame, u(), u(), u(), u().abs() + 0.01);
        let (z1, z2) = transport_check(&v, &p, &dprime);
        let (z, zd) = dual_transport_check(&v, &p);
        let zc = z.conj();
        let rel = |x: f64, y: f64| (x - y).abs() / x.abs().max(y.abs()).max(1.0);
        worst = worst.max(rel(z1.re, z2.re)).max(rel(z1.im, z2.im)).max(rel(zd.re, zc.re)).max(rel(zd.im, zc.im));
    }
    outcome(exact && worst <= 1e-12, format!("I-TRANSPORT exact {exact}, 10^4 floating checks max deviation {worst:.1e}"))
}

fn torsion_gap() -> Outcome {
    // Fully symbolic point: frame seed a, b, c and coordinates s, u1, u2, t.
    let frame = symbolic_frame();
    let eh = Divisor::<RadFrac>::e().dot(&frame.h);
    let var = RadFrac::var;
    let point = StabilityPoint::new(frame, var(Var::S), var(Var::U1), var(Var::U2), var(Var::T));
    let mut symbolic_ok = true;
    for l in 1..=10u64 {
        let want = RadFrac::constant(int(l as i64)).div_ref(&var(Var::T).mul_ref(&eh));
        symbolic_ok &= torsion_rank0_gap(l, &point).sub_ref(&want).is_zero();
    }
    // Exact rational points on the frame with rational radicals.
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let frame = Frame::from_radicals(rat(25, 8), int(4), int(-3), int(5), int(4));
    let eh = Divisor::<Rational>::e().dot(&frame.h);
    let mut rational_ok = true;
    for _ in 0..200 {
        let t = loop {
            let t = random_rat(&mut rng, 5);
            if t > int(0) {
                break t;
            }
        };
        let p = StabilityPoint::new(frame.clone(), random_rat(&mut rng, 5), random_rat(&mut rng, 5), random_rat(&mut rng, 5), t.clone());
        for l in 1..=10u64 {
            rational_ok &= torsion_rank0_gap(l, &p) == int(l as i64) / (&t * &eh);
        }
    }
    outcome(symbolic_ok && rational_ok, format!("symbolic {symbolic_ok}, 200 rational points {rational_ok}"))
}

fn torsion_signature() -> Outcome {
    let sub = ch_structure_sheaf::<Rational>();
    let mut bad = 0usize;
    for [a, b, c] in random_frame_seeds(1000, 9) {
        let s = quadric_signature(&torsion_wall_matrix(&sub, &a, &b, &c));
        bad += usize::from((s.pos, s.neg, s.zero) != (1, 2, 0));
    }
    outcome(bad == 0, format!("1000 seeds, {bad} with signature other than (1, 2, 0)"))
}

fn lattice_checks() -> Outcome {
    let mut fails: Vec<&str> = Vec::new();
    let mut check = |ok: bool, what: &'static str| {
        if !ok {
            fails.push(what);
        }
    };
    let (c1, c2, e) = (Divisor::<Rational>::c1(), Divisor::c2(), Divisor::e());
    check(c1.dot(&c1) == int(0) && c2.dot(&c2) == int(0), "C_i^2");
    check(c1.dot(&c2) == int(1) && e.dot(&e) == int(-1), "C1.C2, E^2");
    check(c1.dot(&e) == int(0) && c2.dot(&e) == int(0), "C_i.E");
    check(Divisor::ints(1, 1, -1).self_intersection() == int(1), "H^2");
    check(euler_characteristic(&Divisor::ints(0, 0, 0)) == int(1), "chi(O)");
    check(euler_characteristic(&Divisor::ints(1, 1, 1)) == int(4), "chi(1,1,1)");
    check(euler_characteristic(&Divisor::ints(0, -1, 1)) == int(0), "chi(-E1)");
    check(!is_ample(&Divisor::ints(1, 1, -1)), "H not ample");
    check(is_ample(&Divisor::new(rat(4, 15), rat(2, 15), rat(-1, 15))), "reference seed ample");
    check(is_ample(&Divisor::ints(2, 2, -1)), "(2,2,-1) ample");
    check(is_negative_effective_curve(&e), "E curve");
    check(is_negative_effective_curve(&Divisor::ints(0, 1, -1)), "E1 curve");
    check(!is_negative_effective_curve(&Divisor::ints(1, 1, -1)), "H not a curve");
    let curves = minus_one_curves();
    check(curves == vec![Divisor::ints(0, 1, -1), Divisor::ints(1, 0, -1), e.clone()], "(-1)-curves");
    check(curves.iter().all(|d| d.self_intersection() == int(-1) && is_negative_effective_curve(d)), "(-1)-curves negative");
    check(curves[0].dot(&curves[1]) == int(0) && curves[0].dot(&e) == int(1), "E1.E2, E1.E");
    let close = |x: f64, y: f64| (x - y).abs() < 1e-12;
    for [a, b, c] in [[rat(4, 15), rat(2, 15), rat(-1, 15)], [int(1), int(1), rat(-1, 2)]] {
        let f = build_frame(&a, &b, &c).unwrap();
        let g = f.gram();
        check(g.iter().zip([1.0, -1.0, -1.0, 0.0, 0.0, 0.0]).all(|(x, w)| close(*x, w)), "frame orthonormal");
    }
    check(build_frame(&int(1), &int(1), &int(1)).is_err(), "invalid seed rejected");
    let f = build_frame(&rat(4, 15), &rat(2, 15), &rat(-1, 15)).unwrap();
    let r = 15f64.sqrt();
    let h = &f.h;
    check(close(h.p, 4.0 / r) && close(h.q, 2.0 / r) && close(h.r, -1.0 / r), "reference H");
    check(close(f.g1.p, 1.0) && close(f.g1.q, -0.5) && close(f.g1.r, 0.0), "reference G1");
    check(close(f.g2.p, -1.0 / r) && close(f.g2.q, -0.5 / r) && close(f.g2.r, 4.0 / r), "reference G2");
    let to = |d: Divisor<Rational>| f.coords(&d.to_f64());
    let (x, y, z) = f.coords(&f.h);
    check(close(x, 1.0) && close(y, 0.0) && close(z, 0.0), "coords of H");
    let (x, y, z) = to(e.neg_ref());
    check(close(x, -1.0 / r) && close(y, 0.0) && close(z, -4.0 / r), "coords of -E");
    let (x, y, z) = to(curves[0].neg_ref());
    // g2 = +3/sqrt15 is what the O(-E1) wall coefficient -6/sqrt15 on s u2 requires.
    check(close(x, -3.0 / r) && close(y.abs(), 1.0) && close(z, 3.0 / r), "coords of -E1");
    if fails.is_empty() {
        outcome(true, "intersection table, chi, ampleness, curves, frames and coordinates")
    } else {
        outcome(false, format!("failed: {}", fails.join(", ")))
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("maximal-wall reproduction", maximal_walls),
        ("certifier suite", certifier_suite),
        ("discriminant and characteristic polynomial", disc_and_charpoly),
        ("nested walls", nested_walls),
        ("conic classification oracle", conic_classification),
        ("containment scan", containment),
        ("transport identities", transports),
        ("torsion rank-0 gap", torsion_gap),
        ("torsion quadric signature", torsion_signature),
        ("lattice spot-checks", lattice_checks),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        failed += usize::from(!o.pass);
        println!("criterion {:>2} {}: {} ({})", i + 1, if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
