//! Hand-written SVG panels: overhead trajectories, estimates against truth,
//! tracking and spacing errors, and applied controls.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::sim::RunRecord;

const W: f64 = 720.0;
const H: f64 = 420.0;
const MARGIN: f64 = 50.0;
const MAX_POINTS: usize = 1500;
const PALETTE: &[&str] = &["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
    pub dashed: bool,
}

impl Series {
    fn new(name: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Self { name: name.into(), points, dashed: false }
    }

    fn dashed(mut self) -> Self {
        self.dashed = true;
        self
    }
}

fn decimate(points: &[(f64, f64)]) -> impl Iterator<Item = &(f64, f64)> {
    let step = points.len().div_ceil(MAX_POINTS).max(1);
    let last = points.len().saturating_sub(1);
    points.iter().enumerate().filter(move |(i, _)| i % step == 0 || *i == last).map(|(_, p)| p)
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn fit(series: &[Series], equal_aspect: bool) -> Self {
        let mut f = Frame { x0: f64::INFINITY, x1: f64::NEG_INFINITY, y0: f64::INFINITY, y1: f64::NEG_INFINITY };
        for (x, y) in series.iter().flat_map(|s| s.points.iter()) {
            f.x0 = f.x0.min(*x);
            f.x1 = f.x1.max(*x);
            f.y0 = f.y0.min(*y);
            f.y1 = f.y1.max(*y);
        }
        if !f.x0.is_finite() {
            return Frame { x0: 0.0, x1: 1.0, y0: 0.0, y1: 1.0 };
        }
        let pad = |a: &mut f64, b: &mut f64| {
            let span = (*b - *a).max(1e-9);
            *a -= 0.05 * span;
            *b += 0.05 * span;
        };
        pad(&mut f.x0, &mut f.x1);
        pad(&mut f.y0, &mut f.y1);
        if equal_aspect {
            let sx = (f.x1 - f.x0) / (W - 2.0 * MARGIN);
            let sy = (f.y1 - f.y0) / (H - 2.0 * MARGIN);
            let s = sx.max(sy);
            let (cx, cy) = (0.5 * (f.x0 + f.x1), 0.5 * (f.y0 + f.y1));
            f.x0 = cx - 0.5 * s * (W - 2.0 * MARGIN);
            f.x1 = cx + 0.5 * s * (W - 2.0 * MARGIN);
            f.y0 = cy - 0.5 * s * (H - 2.0 * MARGIN);
            f.y1 = cy + 0.5 * s * (H - 2.0 * MARGIN);
        }
        f
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (W - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        H - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (H - 2.0 * MARGIN)
    }
}

/// Renders polylines on shared axes.
pub fn chart(title: &str, x_label: &str, series: &[Series], equal_aspect: bool) -> String {
    let f = Frame::fit(series, equal_aspect);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{title}</text>"#, W / 2.0);
    let _ = writeln!(
        s,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="#444"/>"##,
        W - 2.0 * MARGIN,
        H - 2.0 * MARGIN
    );
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{x_label}</text>"#, W / 2.0, H - 12.0);
    for (v, anchor, x, y) in [
        (f.x0, "start", MARGIN, H - MARGIN + 15.0),
        (f.x1, "end", W - MARGIN, H - MARGIN + 15.0),
        (f.y0, "end", MARGIN - 4.0, H - MARGIN),
        (f.y1, "end", MARGIN - 4.0, MARGIN + 10.0),
    ] {
        let _ = writeln!(s, r#"<text x="{x}" y="{y}" text-anchor="{anchor}">{v:.3}</text>"#);
    }
    for (i, ser) in series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let mut pts = String::new();
        for &(x, y) in decimate(&ser.points) {
            let _ = write!(pts, "{:.2},{:.2} ", f.px(x), f.py(y));
        }
        let dash = if ser.dashed { r#" stroke-dasharray="6,4""# } else { "" };
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5"{dash} points="{}"/>"#,
            pts.trim_end()
        );
        let ly = MARGIN + 14.0 + 14.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{ly}" fill="{colour}" text-anchor="end">{}</text>"#,
            W - MARGIN - 6.0,
            ser.name
        );
    }
    s.push_str("</svg>\n");
    s
}

fn circle_points(c: (f64, f64), r: f64) -> Vec<(f64, f64)> {
    (0..=120).map(|k| k as f64 * TAU / 120.0).map(|a| (c.0 + r * a.cos(), c.1 + r * a.sin())).collect()
}

/// The four panels as `(file name, document)` pairs.
pub fn panels(record: &RunRecord) -> Vec<(&'static str, String)> {
    let rows = &record.rows;
    let n = record.n_agents();
    let ts = |f: &dyn Fn(&crate::sim::Row) -> f64| -> Vec<(f64, f64)> { rows.iter().map(|r| (r.t, f(r))).collect() };

    let mut traj: Vec<Series> = (0..n)
        .map(|i| Series::new(format!("agent {i}"), rows.iter().map(|r| (r.positions[i].x, r.positions[i].y)).collect()))
        .collect();
    traj.push(Series::new("centre", rows.iter().map(|r| (r.c.x, r.c.y)).collect()));
    traj.push(Series::new("centre estimate", rows.iter().map(|r| (r.c_hat.x, r.c_hat.y)).collect()).dashed());
    if let Some(last) = rows.last() {
        traj.push(Series::new("final boundary", circle_points((last.c.x, last.c.y), last.r)));
    }

    let estimates = vec![
        Series::new("c_x", ts(&|r| r.c.x)),
        Series::new("c_hat_x", ts(&|r| r.c_hat.x)).dashed(),
        Series::new("c_y", ts(&|r| r.c.y)),
        Series::new("c_hat_y", ts(&|r| r.c_hat.y)).dashed(),
        Series::new("r", ts(&|r| r.r)),
        Series::new("r_hat", ts(&|r| r.r_hat)).dashed(),
    ];

    let gap = TAU / n as f64;
    let mut tracking: Vec<Series> = (0..n).map(|i| Series::new(format!("D^b {i}"), ts(&|r| r.db[i]))).collect();
    tracking.extend((0..n).map(|k| Series::new(format!("beta{k} - 2pi/n"), ts(&|r| r.beta[k] - gap)).dashed()));

    let mut control = Vec::new();
    for i in 0..n {
        control.push(Series::new(format!("U{i}_x"), ts(&|r| r.u[i].x)));
        control.push(Series::new(format!("U{i}_y"), ts(&|r| r.u[i].y)).dashed());
    }

    vec![
        ("trajectory.svg", chart("Agent and target trajectories", "x", &traj, true)),
        ("estimates.svg", chart("Target centre and radius: truth and estimate", "t (s)", &estimates, false)),
        ("tracking.svg", chart("Boundary distance and spacing error", "t (s)", &tracking, false)),
        ("control.svg", chart("Applied control", "t (s)", &control, false)),
    ]
}
