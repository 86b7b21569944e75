use serde::{Deserialize, Serialize};

use dpwall::certifier::{run_one, run_suite, SuiteReport};
use dpwall::charge::{central_charge, slope_of, StabilityPoint};
use dpwall::chern::{ch_structure_sheaf, ChernCharacter};
use dpwall::field::{format_rational, Rational};
use dpwall::lattice::{build_frame, minus_one_curves, Divisor, Frame};
use dpwall::search::{
    check_containment, containment_case, enumerate_candidates, random_frame_seeds, ContainmentCase, ContainmentReport,
    GridSpec,
};
use dpwall::walls::{
    classify_conic, conic_apex, conic_discriminant, semicircle_in_pi, wall_equation, ConicType, Plane, RankOneData,
    Semicircle, WallError,
};

use crate::svg::{emit_svg, Trace};
use crate::{parse_chern, parse_floats, parse_frame, parse_rational_token, usage, Cli, CliError, Command, Format};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChargeOut {
    pub re: f64,
    pub im: f64,
    /// -re/im; absent when im = 0.
    pub beta: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub s: u8,
    pub u1: u8,
    pub u2: u8,
    pub t: u8,
    pub coeff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WallOut {
    pub sub: ChernCharacter,
    pub quot: ChernCharacter,
    /// The wall divided by t at t = 0.
    pub reduced: Vec<Term>,
    pub full: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyOut {
    pub h: String,
    pub g: String,
    pub c2: String,
    pub conic: Option<ConicType>,
    pub discriminant: String,
    pub apex: Option<[String; 2]>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceOut {
    pub u0: f64,
    pub dir: [f64; 2],
    /// Absent when the wall misses the plane.
    pub semicircle: Option<Semicircle>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaximalWall {
    pub label: String,
    pub curve: Divisor,
    /// On (s^2+u1^2+u2^2, s u1, s u2, s), scaled so the s coefficient is 1.
    pub coefficients: [f64; 4],
    pub raw: [f64; 4],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanOut {
    pub bound: u32,
    pub frames: Vec<[String; 3]>,
    pub reports: Vec<ContainmentReport>,
    pub sampled: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub curve: Divisor,
    pub self_intersection: String,
    pub case: ContainmentCase,
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output types serialize");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}

fn render<T: Serialize>(fmt: Format, v: &T, header: &[&str], rows: impl FnOnce() -> Vec<Vec<String>>) -> String {
    match fmt {
        Format::Json => json(v),
        Format::Csv => csv_text(header, rows()),
    }
}

fn terms(p: &dpwall::walls::SlicePoly<f64>) -> Vec<Term> {
    p.terms().map(|(e, c)| Term { s: e[0], u1: e[1], u2: e[2], t: e[3], coeff: *c }).collect()
}

fn wall_error(e: WallError) -> CliError {
    usage(e.to_string())
}

fn quot_or_o(q: &Option<String>) -> Result<ChernCharacter, CliError> {
    match q {
        Some(s) => parse_chern(s),
        None => Ok(ch_structure_sheaf()),
    }
}

pub fn charge(frame: &Frame<f64>, point: &[f64], v: &ChernCharacter) -> ChargeOut {
    let p = StabilityPoint::new(frame.clone(), point[0], point[1], point[2], point[3]);
    let z = central_charge(&v.to_f64(), &p);
    let b = slope_of(&z);
    ChargeOut { re: z.re, im: z.im, beta: b.is_finite().then_some(b) }
}

pub fn wall(frame: &Frame<f64>, sub: &ChernCharacter, quot: &ChernCharacter) -> WallOut {
    let w = wall_equation(&sub.to_f64(), &quot.to_f64(), frame);
    WallOut { sub: sub.clone(), quot: quot.clone(), reduced: terms(&w.reduced), full: terms(&w.full) }
}

pub fn classify(h: &Rational, g: &Rational, c2: &Rational) -> Result<ClassifyOut, CliError> {
    let (conic, note) = match classify_conic(h, g, c2) {
        Ok(t) => (Some(t), None),
        Err(WallError::Unclassified) => (None, Some("outside the classification table".to_string())),
        Err(e) => return Err(wall_error(e)),
    };
    let apex = conic_apex(h, g, c2).map(|(x, y)| [format_rational(&x), format_rational(&y)]);
    Ok(ClassifyOut {
        h: format_rational(h),
        g: format_rational(g),
        c2: format_rational(c2),
        conic,
        discriminant: format_rational(&conic_discriminant(h, g)),
        apex,
        note,
    })
}

pub fn maximal_walls(frame: &Frame<f64>) -> Vec<MaximalWall> {
    let labels = ["O(-E1)", "O(-E2)", "O(-E)"];
    minus_one_curves()
        .into_iter()
        .zip(labels)
        .map(|(e, label)| {
            let sub = dpwall::chern::ch_line_bundle(&e.neg_ref());
            let raw = wall_equation(&sub.to_f64(), &ch_structure_sheaf(), frame).rank_one_shape();
            let coefficients = raw.map(|x| x / raw[3]);
            MaximalWall { label: label.into(), curve: e, coefficients, raw }
        })
        .collect()
}

/// The u2 = 0 section of each maximal wall, as polylines in (s, u1).
pub fn maximal_wall_traces(frame: &Frame<f64>) -> Vec<Trace> {
    let data: Vec<(String, RankOneData<f64>)> = minus_one_curves()
        .into_iter()
        .zip(["O(-E1)", "O(-E2)", "O(-E)"])
        .map(|(e, l)| (l.to_string(), RankOneData::new(&dpwall::chern::ch_line_bundle(&e.neg_ref()).to_f64(), frame)))
        .collect();
    let lo = data.iter().map(|(_, d)| d.dh).fold(0.0, f64::min) - 3.0;
    let steps = 240;
    let mut traces = Vec::new();
    for (label, d) in &data {
        // d_h u1^2 - 2 s d_g1 u1 + d_h s^2 - 2 ch2 s = 0.
        for sign in [1.0, -1.0] {
            let mut current: Vec<(f64, f64)> = Vec::new();
            for k in 0..=steps {
                let s = lo + (0.0 - lo) * k as f64 / steps as f64;
                let disc = (s * d.dg1).powi(2) - d.dh * (d.dh * s * s - 2.0 * d.ch2 * s);
                if disc >= 0.0 {
                    current.push((s, (s * d.dg1 + sign * disc.sqrt()) / d.dh));
                } else if !current.is_empty() {
                    traces.push(Trace { label: label.clone(), points: std::mem::take(&mut current) });
                }
            }
            if !current.is_empty() {
                traces.push(Trace { label: label.clone(), points: current });
            }
        }
    }
    traces
}

pub fn scan(bound: u32, frames: usize, grid: usize, margin: f64, seed: u64) -> ScanOut {
    let seeds = random_frame_seeds(frames, seed);
    let candidates = enumerate_candidates(bound);
    let mut reports = Vec::new();
    for (i, [a, b, c]) in seeds.iter().enumerate() {
        let frame = build_frame(a, b, c).expect("random seeds are valid");
        let sampling = GridSpec { points: grid, margin, seed: seed.wrapping_add(i as u64), ..GridSpec::default() };
        for cand in &candidates {
            reports.push(check_containment(cand, &frame, &sampling));
        }
    }
    let sampled = reports.iter().map(|r| r.sampled).sum();
    let violations = reports.iter().map(|r| r.violations.len()).sum();
    let frames = seeds.iter().map(|s| s.clone().map(|q| format_rational(&q))).collect();
    ScanOut { bound, frames, reports, sampled, violations }
}

pub fn curves(bound: u32) -> Vec<CurveRow> {
    enumerate_candidates(bound)
        .into_iter()
        .map(|c| CurveRow { self_intersection: format_rational(&c.self_intersection()), case: containment_case(&c), curve: c })
        .collect()
}

fn fmt_f(x: f64) -> String {
    format!("{x}")
}

fn suite_text(fmt: Format, report: &SuiteReport) -> String {
    render(fmt, report, &["id", "flagged", "status", "spot_check_agrees", "millis", "finding"], || {
        report
            .entries
            .iter()
            .map(|e| {
                vec![
                    e.id.clone(),
                    e.flagged.to_string(),
                    format!("{:?}", e.status),
                    e.spot_check_agrees.to_string(),
                    e.millis.to_string(),
                    e.finding().unwrap_or_default(),
                ]
            })
            .collect()
    })
}

pub fn dispatch(cli: &Cli) -> Result<String, CliError> {
    let fmt = cli.global.format;
    match &cli.command {
        Command::Charge { frame, point, chern } => {
            let frame = parse_frame(frame)?;
            let point = parse_floats(point, 4, "--point")?;
            let out = charge(&frame, &point, &parse_chern(chern)?);
            Ok(render(fmt, &out, &["re", "im", "beta"], || {
                vec![vec![fmt_f(out.re), fmt_f(out.im), out.beta.map(fmt_f).unwrap_or_default()]]
            }))
        }
        Command::Wall { frame, sub, quot } => {
            let frame = parse_frame(frame)?;
            let out = wall(&frame, &parse_chern(sub)?, &quot_or_o(quot)?);
            Ok(render(fmt, &out, &["form", "s", "u1", "u2", "t", "coeff"], || {
                let rows = |name: &str, ts: &[Term]| -> Vec<Vec<String>> {
                    ts.iter()
                        .map(|t| {
                            vec![name.into(), t.s.to_string(), t.u1.to_string(), t.u2.to_string(), t.t.to_string(), fmt_f(t.coeff)]
                        })
                        .collect()
                };
                let mut r = rows("reduced", &out.reduced);
                r.extend(rows("full", &out.full));
                r
            }))
        }
        Command::Classify { h, g, c2 } => {
            let out = classify(&parse_rational_token(h)?, &parse_rational_token(g)?, &parse_rational_token(c2)?)?;
            Ok(render(fmt, &out, &["h", "g", "c2", "conic", "discriminant", "apex_s", "apex_u"], || {
                let apex = out.apex.clone().unwrap_or_default();
                vec![vec![
                    out.h.clone(),
                    out.g.clone(),
                    out.c2.clone(),
                    out.conic.map(|c| format!("{c:?}")).unwrap_or_else(|| "Unclassified".into()),
                    out.discriminant.clone(),
                    apex[0].clone(),
                    apex[1].clone(),
                ]]
            }))
        }
        Command::Slice { frame, sub, quot, u0, dir } => {
            let frame = parse_frame(frame)?;
            let d = parse_floats(dir, 2, "--dir")?;
            let plane = Plane::new(*u0, (d[0], d[1])).map_err(wall_error)?;
            let sc = semicircle_in_pi(&parse_chern(sub)?.to_f64(), &quot_or_o(quot)?.to_f64(), &frame, &plane)
                .map_err(wall_error)?;
            let out = SliceOut { u0: *u0, dir: [d[0], d[1]], semicircle: sc };
            Ok(render(fmt, &out, &["u0", "center", "radius", "lo", "hi"], || {
                let cells = match out.semicircle {
                    Some(c) => vec![fmt_f(c.center), fmt_f(c.radius), fmt_f(c.lo()), fmt_f(c.hi())],
                    None => vec![String::new(); 4],
                };
                let mut row = vec![fmt_f(out.u0)];
                row.extend(cells);
                vec![row]
            }))
        }
        Command::MaximalWalls { frame, svg } => {
            let frame = parse_frame(frame)?;
            let out = maximal_walls(&frame);
            if let Some(path) = svg {
                emit_svg(&maximal_wall_traces(&frame), path).map_err(|e| usage(e.to_string()))?;
            }
            Ok(render(fmt, &out, &["label", "curve", "s2_u1_2_u2_2", "s_u1", "s_u2", "s"], || {
                out.iter()
                    .map(|w| {
                        let mut r = vec![w.label.clone(), w.curve.to_string()];
                        r.extend(w.coefficients.iter().map(|x| fmt_f(*x)));
                        r
                    })
                    .collect()
            }))
        }
        Command::Certify { id } => {
            let report = match id {
                Some(id) => SuiteReport { entries: vec![run_one(id).ok_or_else(|| usage(format!("unknown identity '{id}'")))?] },
                None => run_suite(),
            };
            let text = suite_text(fmt, &report);
            if report.all_pass() && report.entries.iter().all(|e| e.spot_check_agrees) {
                Ok(text)
            } else {
                Err(CliError::Failed(text))
            }
        }
        Command::ScanContainment { bound, frames, grid, margin } => {
            if *bound == 0 {
                return Err(usage("--bound must be at least 1"));
            }
            let out = scan(*bound, *frames, *grid, *margin, cli.global.seed);
            let text = render(fmt, &out, &["frame", "curve", "case", "sampled", "violations", "verdict"], || {
                out.reports
                    .iter()
                    .map(|r| {
                        let seed = r.seed.as_ref().map(|s| s.iter().map(format_rational).collect::<Vec<_>>().join(";"));
                        vec![
                            seed.unwrap_or_default(),
                            r.curve.to_string(),
                            format!("{:?}", r.case),
                            r.sampled.to_string(),
                            r.violations.len().to_string(),
                            format!("{:?}", r.verdict),
                        ]
                    })
                    .collect()
            });
            if out.violations == 0 {
                Ok(text)
            } else {
                Err(CliError::Failed(text))
            }
        }
        Command::Curves { bound } => {
            if *bound == 0 {
                return Err(usage("--bound must be at least 1"));
            }
            let out = curves(*bound);
            Ok(render(fmt, &out, &["curve", "self_intersection", "case"], || {
                out.iter().map(|c| vec![c.curve.to_string(), c.self_intersection.clone(), format!("{:?}", c.case)]).collect()
            }))
        }
    }
}
