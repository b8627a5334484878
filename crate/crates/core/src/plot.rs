//! Small SVG helpers shared by the figure writers.

use std::fmt::Write as _;

use crate::geom::Point2;

pub(crate) const SVG_SIZE: f64 = 800.0;
pub(crate) const CLIP: f64 = 3.0;

pub(crate) struct Viewport {
    pub min: Point2,
    pub max: Point2,
    pub scale: f64,
}

impl Viewport {
    pub fn fit(points: impl Iterator<Item = Point2>) -> Self {
        let (mut min, mut max) = (Point2::new(f64::MAX, f64::MAX), Point2::new(f64::MIN, f64::MIN));
        for p in points.filter(|p| p.x.abs() <= CLIP && p.y.abs() <= CLIP) {
            min = Point2::new(min.x.min(p.x), min.y.min(p.y));
            max = Point2::new(max.x.max(p.x), max.y.max(p.y));
        }
        let pad = 0.05 * (max.x - min.x).max(max.y - min.y).max(0.5);
        let min = Point2::new((min.x - pad).max(-CLIP), (min.y - pad).max(-CLIP));
        let max = Point2::new((max.x + pad).min(CLIP), (max.y + pad).min(CLIP));
        let scale = SVG_SIZE / (max.x - min.x).max(max.y - min.y);
        Self { min, max, scale }
    }

    pub fn contains(&self, p: Point2) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn px(&self, p: Point2) -> (f64, f64) {
        ((p.x - self.min.x) * self.scale, SVG_SIZE - (p.y - self.min.y) * self.scale)
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }
}

pub(crate) fn svg_marker(s: &mut String, vp: &Viewport, p: Point2, label: &str, color: &str) {
    if !vp.contains(p) {
        return;
    }
    let (x, y) = vp.px(p);
    let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="{color}"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="16" fill="{color}">{label}</text>"#,
        x + 6.0,
        y - 6.0
    );
}

pub(crate) fn svg_line(s: &mut String, vp: &Viewport, p: Point2, q: Point2, style: &str) {
    let ((x1, y1), (x2, y2)) = (vp.px(p), vp.px(q));
    let _ = writeln!(s, r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" {style}/>"#);
}
