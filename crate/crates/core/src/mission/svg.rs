use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::config::MissionSpec;
use super::run::MissionResult;
use super::MissionError;
use crate::flowfield::{CurrentField, FlowGrid, FlowModel};
use crate::geometry::{Point2, Rect};

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 20.0;
const ARROWS_PER_SIDE: usize = 24;

struct Frame {
    region: Rect,
    scale: f64,
}

impl Frame {
    fn new(region: Rect) -> Self {
        let span = region.width().max(region.height());
        Self { region, scale: (WIDTH - 2.0 * MARGIN) / span }
    }

    fn px(&self, p: Point2) -> (f64, f64) {
        (
            MARGIN + (p.x - self.region.x_min) * self.scale,
            MARGIN + (self.region.y_max - p.y) * self.scale,
        )
    }

    fn size(&self) -> (f64, f64) {
        (
            self.region.width() * self.scale + 2.0 * MARGIN,
            self.region.height() * self.scale + 2.0 * MARGIN,
        )
    }
}

fn points(frame: &Frame, path: &[Point2]) -> String {
    let mut s = String::new();
    for (i, &p) in path.iter().enumerate() {
        let (x, y) = frame.px(p);
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{x:.2},{y:.2}");
    }
    s
}

/// SVG map of the mission: land cells, restricted areas, current arrows at
/// `depth` and `time`, the unsmoothed (dashed) and smoothed tracks and the
/// start and goal markers.
pub fn render_svg(result: &MissionResult, spec: &MissionSpec, grid: &FlowGrid, depth: f64, time: f64) -> String {
    let frame = Frame::new(spec.region);
    let (w, h) = frame.size();
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.2}" height="{h:.2}" viewBox="0 0 {w:.2} {h:.2}">"#
    );
    let _ = writeln!(out, r##"<rect class="water" x="0" y="0" width="{w:.2}" height="{h:.2}" fill="#eef5fb"/>"##);

    let _ = writeln!(out, r##"<g class="land" fill="#c8b58a" stroke="none">"##);
    let (xs, ys) = (grid.x(), grid.y());
    for iy in 0..ys.len().saturating_sub(1) {
        for ix in 0..xs.len().saturating_sub(1) {
            let land = [(iy, ix), (iy, ix + 1), (iy + 1, ix), (iy + 1, ix + 1)].iter().any(|&(j, i)| grid.is_land(j, i));
            if !land {
                continue;
            }
            let lo = Point2::new(xs[ix].max(spec.region.x_min), ys[iy].max(spec.region.y_min));
            let hi = Point2::new(xs[ix + 1].min(spec.region.x_max), ys[iy + 1].min(spec.region.y_max));
            if lo.x >= hi.x || lo.y >= hi.y {
                continue;
            }
            let (x0, y1) = frame.px(lo);
            let (x1, y0) = frame.px(hi);
            let _ = writeln!(out, r#"<rect x="{x0:.2}" y="{y0:.2}" width="{:.2}" height="{:.2}"/>"#, x1 - x0, y1 - y0);
        }
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r##"<g class="restricted" fill="#e7a0a0" fill-opacity="0.6" stroke="#b04040">"##);
    for poly in &spec.restricted_areas {
        let _ = writeln!(out, r#"<polygon points="{}"/>"#, points(&frame, &poly.vertices));
    }
    let _ = writeln!(out, "</g>");

    let field = FlowModel::new(grid, spec.scheme);
    let mut arrows = Vec::new();
    for j in 0..ARROWS_PER_SIDE {
        for i in 0..ARROWS_PER_SIDE {
            let p = Point2::new(
                spec.region.x_min + spec.region.width() * (i as f64 + 0.5) / ARROWS_PER_SIDE as f64,
                spec.region.y_min + spec.region.height() * (j as f64 + 0.5) / ARROWS_PER_SIDE as f64,
            );
            if let Ok(c) = field.current(p.x, p.y, depth, time) {
                if c.magnitude() > 0.0 {
                    arrows.push((p, c));
                }
            }
        }
    }
    let max_mag = arrows.iter().map(|(_, c)| c.magnitude()).fold(0.0, f64::max);
    let cell = (WIDTH - 2.0 * MARGIN) / ARROWS_PER_SIDE as f64;
    let _ = writeln!(out, r##"<g class="current" stroke="#4a7fb5" stroke-width="1" fill="none">"##);
    for (p, c) in &arrows {
        let len = 0.9 * cell * c.magnitude() / max_mag;
        let (x0, y0) = frame.px(*p);
        let (dx, dy) = (c.u / c.magnitude(), -c.v / c.magnitude());
        let (x1, y1) = (x0 + dx * len, y0 + dy * len);
        let head = 0.3 * len;
        let (hx, hy) = (-dx * head, -dy * head);
        let (lx, ly) = (x1 + hx * 0.866 - hy * 0.5, y1 + hx * 0.5 + hy * 0.866);
        let (rx, ry) = (x1 + hx * 0.866 + hy * 0.5, y1 - hx * 0.5 + hy * 0.866);
        let _ = writeln!(
            out,
            r#"<path d="M{x0:.2},{y0:.2} L{x1:.2},{y1:.2} M{lx:.2},{ly:.2} L{x1:.2},{y1:.2} L{rx:.2},{ry:.2}"/>"#
        );
    }
    let _ = writeln!(out, "</g>");

    if let (Some(planned), Some(_)) = (&result.planned, &result.smoothed) {
        let _ = writeln!(
            out,
            r##"<polyline class="track-unsmoothed" points="{}" fill="none" stroke="#555555" stroke-width="1.5" stroke-dasharray="6,4"/>"##,
            points(&frame, &planned.waypoints)
        );
    }
    if let Some(path) = result.final_path() {
        let _ = writeln!(
            out,
            r##"<polyline class="track" points="{}" fill="none" stroke="#d0402b" stroke-width="2.5"/>"##,
            points(&frame, &path.waypoints)
        );
    }
    for (class, p, colour) in [("start", spec.start, "#2a9d4b"), ("goal", spec.goal, "#c0392b")] {
        let (x, y) = frame.px(p);
        let _ = writeln!(
            out,
            r##"<circle class="marker {class}" cx="{x:.2}" cy="{y:.2}" r="6" fill="{colour}" stroke="#000000"/>"##
        );
    }
    let _ = writeln!(out, "</svg>");
    out
}

pub fn write_svg(svg: &str, path: impl AsRef<Path>) -> Result<(), MissionError> {
    let path = path.as_ref();
    fs::write(path, svg).map_err(|source| MissionError::Io { path: path.display().to_string(), source })
}
