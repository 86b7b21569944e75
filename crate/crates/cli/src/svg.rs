//! Minimal standalone SVG for wall traces.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SvgError {
    #[error("nothing to draw: empty trace list")]
    Empty,
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// One polyline in plot coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

const SIZE: f64 = 600.0;
const PAD: f64 = 50.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn bounds(traces: &[Trace]) -> (f64, f64, f64, f64) {
    let mut b = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in traces.iter().flat_map(|t| t.points.iter()).filter(|(x, y)| x.is_finite() && y.is_finite()) {
        b = (b.0.min(*x), b.1.max(*x), b.2.min(*y), b.3.max(*y));
    }
    if !(b.0 < b.1) {
        b = (b.0 - 1.0, b.0 + 1.0, b.2, b.3);
    }
    if !(b.2 < b.3) {
        b = (b.0, b.1, b.2 - 1.0, b.2 + 1.0);
    }
    b
}

pub fn render_svg(traces: &[Trace], x_label: &str, y_label: &str) -> Result<String, SvgError> {
    if traces.is_empty() {
        return Err(SvgError::Empty);
    }
    let (x0, x1, y0, y1) = bounds(traces);
    let span = SIZE - 2.0 * PAD;
    let px = |x: f64| PAD + (x - x0) / (x1 - x0) * span;
    let py = |y: f64| SIZE - PAD - (y - y0) / (y1 - y0) * span;
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    // Axes through the origin when it is in view, else along the frame.
    let ax = if x0 <= 0.0 && 0.0 <= x1 { px(0.0) } else { PAD };
    let ay = if y0 <= 0.0 && 0.0 <= y1 { py(0.0) } else { SIZE - PAD };
    let _ = writeln!(out, r#"<line x1="{PAD}" y1="{ay:.2}" x2="{:.2}" y2="{ay:.2}" stroke="black"/>"#, SIZE - PAD);
    let _ = writeln!(out, r#"<line x1="{ax:.2}" y1="{PAD}" x2="{ax:.2}" y2="{:.2}" stroke="black"/>"#, SIZE - PAD);
    let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="14">{x_label}</text>"#, SIZE - PAD + 5.0, ay + 4.0);
    let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="14">{y_label}</text>"#, ax + 4.0, PAD - 8.0);
    let _ = writeln!(out, r#"<text x="{PAD}" y="{:.2}" font-size="11">{x0:.3} .. {x1:.3} x {y0:.3} .. {y1:.3}</text>"#, SIZE - 10.0);
    let mut labels: Vec<&str> = Vec::new();
    for t in traces {
        if !labels.contains(&t.label.as_str()) {
            labels.push(&t.label);
        }
        let color = COLORS[labels.iter().position(|l| *l == t.label).unwrap() % COLORS.len()];
        let pts: Vec<String> = t
            .points
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(*y)))
            .collect();
        let _ = writeln!(out, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, pts.join(" "));
    }
    for (i, l) in labels.iter().enumerate() {
        let y = PAD + 18.0 * i as f64;
        let color = COLORS[i % COLORS.len()];
        let _ = writeln!(out, r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="3"/>"#, SIZE - 170.0, SIZE - 150.0);
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="13">{l}</text>"#, SIZE - 145.0, y + 4.0);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn emit_svg(traces: &[Trace], path: &Path) -> Result<(), SvgError> {
    let body = render_svg(traces, "s", "u1")?;
    std::fs::write(path, body).map_err(|source| SvgError::Io { path: path.display().to_string(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> Trace {
        let points = (0..=32).map(|k| k as f64 / 32.0 * std::f64::consts::TAU).map(|a| (a.cos(), a.sin())).collect();
        Trace { label: "circle".into(), points }
    }

    #[test]
    fn empty_is_an_error() {
        assert!(matches!(render_svg(&[], "x", "y"), Err(SvgError::Empty)));
    }

    #[test]
    fn single_polyline_and_determinism() {
        let a = render_svg(&[circle()], "x", "y").unwrap();
        assert_eq!(a.matches("<polyline").count(), 1);
        assert_eq!(a, render_svg(&[circle()], "x", "y").unwrap());
        assert!(a.starts_with("<svg") && a.ends_with("</svg>\n"));
    }

    #[test]
    fn unwritable_path() {
        let r = emit_svg(&[circle()], Path::new("/nonexistent-dir/x.svg"));
        assert!(matches!(r, Err(SvgError::Io { .. })));
    }
}
