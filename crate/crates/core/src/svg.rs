//! Minimal deterministic SVG output: stroke-only paths, y-axis up, uniform scale.

use std::fmt::Write as _;

use crate::geometry::PlanePoint;

/// Named groups in drawing order.
pub const GROUPS: [&str; 5] = ["mirror", "caustic", "rays", "cusps", "cuspline"];

#[derive(Debug, Clone, Default)]
struct Group {
    polylines: Vec<Vec<PlanePoint>>,
    segments: Vec<(PlanePoint, PlanePoint)>,
    markers: Vec<PlanePoint>,
}

/// A figure made of the fixed groups `mirror`, `caustic`, `rays`, `cusps` and `cuspline`.
#[derive(Debug, Clone)]
pub struct Figure {
    width: f64,
    groups: Vec<Group>,
}

impl Default for Figure {
    fn default() -> Self {
        Figure::new(600.0)
    }
}

fn group_index(name: &str) -> usize {
    GROUPS
        .iter()
        .position(|g| *g == name)
        .unwrap_or_else(|| panic!("unknown SVG group '{name}'"))
}

fn stroke(name: &str) -> &'static str {
    match name {
        "mirror" => "#1f3a93",
        "caustic" => "#c0392b",
        "rays" => "#f39c12",
        "cusps" => "#2c3e50",
        _ => "#7f8c8d",
    }
}

impl Figure {
    pub fn new(width: f64) -> Self {
        Figure {
            width,
            groups: vec![Group::default(); GROUPS.len()],
        }
    }

    /// Adds a polyline; non-finite points split it into separate pieces.
    pub fn polyline(&mut self, group: &str, points: &[PlanePoint]) -> &mut Self {
        let g = &mut self.groups[group_index(group)];
        let mut piece = Vec::new();
        for &p in points {
            if p.is_finite() {
                piece.push(p);
            } else if !piece.is_empty() {
                g.polylines.push(std::mem::take(&mut piece));
            }
        }
        if !piece.is_empty() {
            g.polylines.push(piece);
        }
        self
    }

    pub fn segment(&mut self, group: &str, a: PlanePoint, b: PlanePoint) -> &mut Self {
        if a.is_finite() && b.is_finite() {
            self.groups[group_index(group)].segments.push((a, b));
        }
        self
    }

    pub fn marker(&mut self, group: &str, p: PlanePoint) -> &mut Self {
        if p.is_finite() {
            self.groups[group_index(group)].markers.push(p);
        }
        self
    }

    fn bounds(&self) -> Option<(PlanePoint, PlanePoint)> {
        let mut lo = PlanePoint::new(f64::INFINITY, f64::INFINITY);
        let mut hi = PlanePoint::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut any = false;
        let mut take = |p: PlanePoint| {
            lo = PlanePoint::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = PlanePoint::new(hi.x.max(p.x), hi.y.max(p.y));
            any = true;
        };
        for g in &self.groups {
            g.polylines.iter().flatten().for_each(|&p| take(p));
            g.segments.iter().for_each(|&(a, b)| {
                take(a);
                take(b)
            });
            g.markers.iter().for_each(|&p| take(p));
        }
        any.then_some((lo, hi))
    }

    pub fn render(&self) -> String {
        let (lo, hi) = self
            .bounds()
            .unwrap_or((PlanePoint::new(-1.0, -1.0), PlanePoint::new(1.0, 1.0)));
        let span_x = (hi.x - lo.x).max(1e-12);
        let span_y = (hi.y - lo.y).max(1e-12);
        let margin = 20.0;
        let scale = (self.width - 2.0 * margin) / span_x.max(span_y);
        let w = span_x * scale + 2.0 * margin;
        let h = span_y * scale + 2.0 * margin;
        let map = |p: PlanePoint| ((p.x - lo.x) * scale + margin, (hi.y - p.y) * scale + margin);

        let mut out = String::new();
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.2}\" height=\"{h:.2}\" viewBox=\"0 0 {w:.2} {h:.2}\">"
        );
        for (name, g) in GROUPS.iter().zip(&self.groups) {
            let dash = if *name == "cuspline" { " stroke-dasharray=\"4 3\"" } else { "" };
            let width = if *name == "rays" { 0.4 } else { 1.2 };
            let _ = writeln!(
                out,
                "<g id=\"{name}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{width}\"{dash}>",
                stroke(name)
            );
            for line in &g.polylines {
                let mut d = String::new();
                for (i, &p) in line.iter().enumerate() {
                    let (x, y) = map(p);
                    let _ = write!(d, "{}{x:.3},{y:.3}", if i == 0 { "M" } else { " L" });
                }
                let _ = writeln!(out, "<path d=\"{d}\"/>");
            }
            for &(a, b) in &g.segments {
                let ((x1, y1), (x2, y2)) = (map(a), map(b));
                let _ = writeln!(out, "<line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\"/>");
            }
            for &p in &g.markers {
                let (x, y) = map(p);
                let _ = writeln!(out, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\"/>");
            }
            out.push_str("</g>\n");
        }
        out.push_str("</svg>\n");
        out
    }
}
