//! Deterministic SVG output. Coordinates are printed with fixed precision and
//! nothing time- or environment-dependent is embedded.

use std::fmt::Write;

use crate::court::{CourtSpec, Point2D};
use crate::game::AlphaEquilibrium;
use crate::shotmodel::EfficiencySummary;
use crate::trajectories::FeatureVector;

const PX_PER_FT: f64 = 10.0;
const MARGIN: f64 = 20.0;

/// Maps court feet (basket at the origin, y towards halfcourt) to SVG pixels.
struct Frame {
    halfwidth: f64,
    top: f64,
}

impl Frame {
    fn new(court: &CourtSpec) -> Self {
        Self {
            halfwidth: court.constants.court_halfwidth,
            top: court.constants.halfcourt_depth,
        }
    }

    fn px(&self, p: Point2D) -> (f64, f64) {
        (
            MARGIN + (p.x + self.halfwidth) * PX_PER_FT,
            MARGIN + (self.top - p.y) * PX_PER_FT,
        )
    }

    fn size(&self, court: &CourtSpec) -> (f64, f64) {
        (
            2.0 * MARGIN + 2.0 * self.halfwidth * PX_PER_FT,
            2.0 * MARGIN + (self.top + court.constants.baseline_offset) * PX_PER_FT,
        )
    }
}

fn header(out: &mut String, w: f64, h: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
}

fn court_lines(out: &mut String, court: &CourtSpec) {
    let f = Frame::new(court);
    let c = court.constants;
    let line = |out: &mut String, a: Point2D, b: Point2D| {
        let (x1, y1) = f.px(a);
        let (x2, y2) = f.px(b);
        let _ = writeln!(
            out,
            r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#333333" stroke-width="1.5"/>"##
        );
    };
    let (x0, y0) = f.px(Point2D::new(-c.court_halfwidth, c.halfcourt_depth));
    let (x1, y1) = f.px(Point2D::new(c.court_halfwidth, -c.baseline_offset));
    let _ = writeln!(
        out,
        r##"<rect x="{x0:.2}" y="{y0:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#333333" stroke-width="2"/>"##,
        x1 - x0,
        y1 - y0
    );
    for side in [-1.0, 1.0] {
        line(
            out,
            Point2D::new(side * c.corner_line_distance, -c.baseline_offset),
            Point2D::new(side * c.corner_line_distance, c.corner_break_y),
        );
    }
    let (ax, ay) = f.px(Point2D::new(-c.corner_line_distance, c.corner_break_y));
    let (bx, by) = f.px(Point2D::new(c.corner_line_distance, c.corner_break_y));
    let r = c.arc_radius * PX_PER_FT;
    let _ = writeln!(
        out,
        r##"<path d="M {ax:.2} {ay:.2} A {r:.2} {r:.2} 0 0 1 {bx:.2} {by:.2}" fill="none" stroke="#333333" stroke-width="1.5"/>"##
    );
    let (hx, hy) = f.px(Point2D::new(0.0, 0.0));
    let _ = writeln!(
        out,
        r##"<circle cx="{hx:.2}" cy="{hy:.2}" r="{:.2}" fill="none" stroke="#d04010" stroke-width="2"/>"##,
        0.75 * PX_PER_FT
    );
}

/// Bare half-court diagram.
pub fn court_svg(court: &CourtSpec) -> String {
    let f = Frame::new(court);
    let (w, h) = f.size(court);
    let mut out = String::new();
    header(&mut out, w, h);
    court_lines(&mut out, court);
    out.push_str("</svg>\n");
    out
}

/// Linear white-to-red ramp on `[0, max]`.
fn heat_color(v: f64, max: f64) -> String {
    let t = if max > 0.0 { (v / max).clamp(0.0, 1.0) } else { 0.0 };
    let g = (255.0 * (1.0 - t)).round() as u8;
    format!("#ff{g:02x}{g:02x}")
}

/// One-foot raster of the half court coloured by each zone's points per shot.
pub fn heatmap_svg(court: &CourtSpec, summary: &EfficiencySummary) -> String {
    let f = Frame::new(court);
    let (w, h) = f.size(court);
    let c = court.constants;
    let max_pps = summary.zones.iter().map(|z| z.pps).fold(0.0, f64::max);
    let mut out = String::new();
    header(&mut out, w, h);
    let x_cells = (2.0 * c.court_halfwidth).ceil() as i64;
    let y_cells = (c.halfcourt_depth + c.baseline_offset).ceil() as i64;
    for iy in 0..y_cells {
        for ix in 0..x_cells {
            let centre = Point2D::new(
                (-c.court_halfwidth + ix as f64 + 0.5).min(c.court_halfwidth),
                (-c.baseline_offset + iy as f64 + 0.5).min(c.halfcourt_depth),
            );
            let Ok(zone) = court.classify_zone(&centre) else {
                continue;
            };
            let (px, py) = f.px(Point2D::new(
                -c.court_halfwidth + ix as f64,
                -c.baseline_offset + iy as f64 + 1.0,
            ));
            let _ = writeln!(
                out,
                r#"<rect x="{px:.2}" y="{py:.2}" width="{PX_PER_FT:.2}" height="{PX_PER_FT:.2}" fill="{}"/>"#,
                heat_color(summary.zone(zone).pps, max_pps)
            );
        }
    }
    court_lines(&mut out, court);
    for z in &summary.zones {
        if z.attempts == 0 {
            continue;
        }
        let _ = writeln!(out, "<!-- {} attempts={} fg={:.4} pps={:.4} -->", z.zone.name(), z.attempts, z.fg_pct, z.pps);
    }
    out.push_str("</svg>\n");
    out
}

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

fn polyline(out: &mut String, f: &Frame, pts: &[Point2D], color: &str, dash: bool) {
    let coords: Vec<String> = pts
        .iter()
        .map(|p| {
            let (x, y) = f.px(*p);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"{}/>"#,
        coords.join(" "),
        if dash { r#" stroke-dasharray="6 4""# } else { "" }
    );
    if let Some(last) = pts.last() {
        let (x, y) = f.px(*last);
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{color}"/>"#);
    }
}

/// Centroid paths: solid for the shooter, dashed for the defender; the dot
/// marks the release frame.
pub fn centroids_svg(court: &CourtSpec, centroids: &[FeatureVector]) -> String {
    let f = Frame::new(court);
    let (w, h) = f.size(court);
    let mut out = String::new();
    header(&mut out, w, h);
    court_lines(&mut out, court);
    for (i, c) in centroids.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(out, r#"<g id="cluster-{i}">"#);
        polyline(&mut out, &f, &c.shooter_path(), color, false);
        polyline(&mut out, &f, &c.defender_path(), color, true);
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

/// One bar chart of the defender mix per alpha, stacked vertically.
pub fn strategies_svg(sweep: &[AlphaEquilibrium]) -> String {
    const PANEL_H: f64 = 160.0;
    const BAR_W: f64 = 20.0;
    const LEFT: f64 = 50.0;
    let bars = sweep.iter().map(|s| s.equilibrium.defender_mix.len()).max().unwrap_or(0);
    let w = LEFT + bars as f64 * BAR_W + MARGIN;
    let h = MARGIN + sweep.len() as f64 * (PANEL_H + MARGIN);
    let mut out = String::new();
    header(&mut out, w, h);
    for (k, s) in sweep.iter().enumerate() {
        let base = MARGIN + k as f64 * (PANEL_H + MARGIN) + PANEL_H - 20.0;
        let plot_h = PANEL_H - 40.0;
        let _ = writeln!(
            out,
            r#"<text x="{LEFT:.2}" y="{:.2}" font-family="sans-serif" font-size="12">alpha = {:.3}, E[d] = {:.3} ft, value = {:.4}</text>"#,
            base - plot_h - 6.0,
            s.alpha,
            s.equilibrium.expected_defender_distance,
            s.equilibrium.value
        );
        let _ = writeln!(
            out,
            r##"<line x1="{LEFT:.2}" y1="{base:.2}" x2="{:.2}" y2="{base:.2}" stroke="#333333"/>"##,
            LEFT + bars as f64 * BAR_W
        );
        for (i, (d, p)) in s.equilibrium.distances.iter().zip(&s.equilibrium.defender_mix).enumerate() {
            let x = LEFT + i as f64 * BAR_W;
            let bh = p * plot_h;
            let _ = writeln!(
                out,
                r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{bh:.2}" fill="#1f77b4"/>"##,
                x + 2.0,
                base - bh,
                BAR_W - 4.0
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="9" text-anchor="middle">{d}</text>"#,
                x + BAR_W / 2.0,
                base + 12.0
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
