//! Deterministic SVG drawing of plane configurations in the chart `z = 1`.
//!
//! Finite points are placed at `(x/z, y/z)`. Points at infinity sit on a
//! boundary circle in the direction `(x, y)`. Lines are clipped to the disc.

use std::fmt::Write;

use crate::point::ProjPoint;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;
const INFINITY_TOL: f64 = 1e-9;

struct View {
    cx: f64,
    cy: f64,
    radius: f64,
}

impl View {
    fn to_screen(&self, x: f64, y: f64) -> (f64, f64) {
        let s = (SIZE / 2.0 - MARGIN) / self.radius;
        (SIZE / 2.0 + (x - self.cx) * s, SIZE / 2.0 - (y - self.cy) * s)
    }
}

fn affine(p: &[f64]) -> Option<(f64, f64)> {
    let n = p.iter().map(|v| v * v).sum::<f64>().sqrt();
    (p[2].abs() > INFINITY_TOL * n).then(|| (p[0] / p[2], p[1] / p[2]))
}

fn fmt(v: f64) -> String {
    let r = (v * 100.0).round() / 100.0;
    if r == 0.0 {
        "0".to_string()
    } else {
        format!("{r}")
    }
}

/// Points (real parts) and lines (given by normals) as an SVG document.
/// Non-real points are skipped.
pub fn render_svg(points: &[ProjPoint], lines: &[ProjPoint], labels: &[String]) -> String {
    let real: Vec<(usize, Vec<f64>)> = points
        .iter()
        .enumerate()
        .filter(|(_, p)| p.len() == 3 && p.is_real(1e-7))
        .map(|(i, p)| (i, p.real_part()))
        .collect();
    let finite: Vec<(f64, f64)> = real.iter().filter_map(|(_, p)| affine(p)).collect();
    let (cx, cy) = if finite.is_empty() {
        (0.0, 0.0)
    } else {
        let n = finite.len() as f64;
        (
            finite.iter().map(|p| p.0).sum::<f64>() / n,
            finite.iter().map(|p| p.1).sum::<f64>() / n,
        )
    };
    let spread = finite
        .iter()
        .map(|(x, y)| ((x - cx).powi(2) + (y - cy).powi(2)).sqrt())
        .fold(0.0, f64::max);
    let view = View {
        cx,
        cy,
        radius: (spread * 1.25).max(1.0),
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        SIZE
    );
    let _ = writeln!(s, r#"<rect width="{0}" height="{0}" fill="white"/>"#, SIZE);
    let (ox, oy) = view.to_screen(view.cx, view.cy);
    let _ = writeln!(
        s,
        r##"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="#bbb" stroke-dasharray="4 4"/>"##,
        fmt(ox),
        fmt(oy),
        fmt(SIZE / 2.0 - MARGIN)
    );
    for l in lines.iter().filter(|l| l.len() == 3 && l.is_real(1e-7)) {
        if let Some(((x1, y1), (x2, y2))) = clip_line(&l.real_part(), &view) {
            let (a, b) = view.to_screen(x1, y1);
            let (c, d) = view.to_screen(x2, y2);
            let _ = writeln!(
                s,
                r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#1f5fa8" stroke-width="1.5"/>"##,
                fmt(a),
                fmt(b),
                fmt(c),
                fmt(d)
            );
        }
    }
    for (i, p) in &real {
        let (x, y) = match affine(p) {
            Some((x, y)) => (x, y),
            None => {
                let n = (p[0] * p[0] + p[1] * p[1]).sqrt();
                (view.cx + view.radius * p[0] / n, view.cy + view.radius * p[1] / n)
            }
        };
        let (a, b) = view.to_screen(x, y);
        let fill = if affine(p).is_some() { "#c0392b" } else { "#e67e22" };
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="4" fill="{}"/>"#, fmt(a), fmt(b), fill);
        if let Some(label) = labels.get(*i) {
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#,
                fmt(a + 6.0),
                fmt(b - 6.0),
                label
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Chord of the line `a x + b y + c = 0` inside the view disc.
fn clip_line(l: &[f64], v: &View) -> Option<((f64, f64), (f64, f64))> {
    let (a, b, c) = (l[0], l[1], l[2]);
    let n = (a * a + b * b).sqrt();
    if n < INFINITY_TOL * (n + c.abs()) {
        return None; // the line at infinity
    }
    // signed distance from the centre and foot of the perpendicular
    let dist = (a * v.cx + b * v.cy + c) / n;
    if dist.abs() >= v.radius {
        return None;
    }
    let (ux, uy) = (a / n, b / n);
    let (fx, fy) = (v.cx - dist * ux, v.cy - dist * uy);
    let h = (v.radius * v.radius - dist * dist).sqrt();
    Some(((fx - h * uy, fy + h * ux), (fx + h * uy, fy - h * ux)))
}
