//! The locus of intersection points of equal cevians from `A` and `B`.
//!
//! Away from the base line the locus is the cubic
//!
//! ```text
//! (x² + y²)·sin(β+α)·(y·sin(β−α) − 2x·sinα·sinβ) + (y² − x²)·sinα·sinβ·sin(β−α)
//!   + xy·(sin²α·cos²β + sin²β·cos²α − 2·sin²α·sin²β)
//!   + ½x·sinα·sinβ·sin(β+α) + ¼y·sin(β−α)·sin(β+α) + ¼·sinα·sinβ·sin(β−α) = 0
//! ```
//!
//! in the median-centred frame with `AB = 1`. Multiplying by `y` gives the
//! cross-multiplied equal-length condition; the extra factor is the line `AB`.

use std::fmt::Write as _;
use std::io;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{line_intersection, FrameKind, Point2, TriangleAngles, TriangleFrame, MIN_ANGLE};
use crate::numfmt;
use crate::plot::{svg_line, svg_marker, Viewport, SVG_SIZE};

/// Monomial order of [`ImplicitCubic::coeffs`].
pub const MONOMIALS: [&str; 10] = ["x^3", "x^2y", "xy^2", "y^3", "x^2", "xy", "y^2", "x", "y", "1"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImplicitCubic {
    pub coeffs: [f64; 10],
}

impl ImplicitCubic {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let c = &self.coeffs;
        ((c[0] * x + c[1] * y) * x + c[2] * y * y) * x
            + c[3] * y * y * y
            + (c[4] * x + c[5] * y) * x
            + c[6] * y * y
            + c[7] * x
            + c[8] * y
            + c[9]
    }

    pub fn eval_at(&self, p: Point2) -> f64 {
        self.eval(p.x, p.y)
    }

    pub fn coeff_scale(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// `|F(p)|` divided by the size of the largest term that can appear at `p`.
    pub fn relative_residual(&self, p: Point2) -> f64 {
        let r = 1f64.max(p.x.abs()).max(p.y.abs());
        self.eval_at(p).abs() / (self.coeff_scale() * r * r * r)
    }

    /// Coefficients `[c3, c2, c1, c0]` of `F(x, 0)`.
    pub fn restrict_to_x_axis(&self) -> [f64; 4] {
        let c = &self.coeffs;
        [c[0], c[4], c[7], c[9]]
    }

    /// Coefficients `[c3, c2, c1, c0]` of `F(0, y)`.
    pub fn restrict_to_y_axis(&self) -> [f64; 4] {
        let c = &self.coeffs;
        [c[3], c[6], c[8], c[9]]
    }
}

pub fn implicit_coeffs(angles: TriangleAngles) -> ImplicitCubic {
    let (al, be) = (angles.alpha(), angles.beta());
    let (sa, ca, sb, cb) = (al.sin(), al.cos(), be.sin(), be.cos());
    let sd = (be - al).sin();
    let ss = (be + al).sin();
    let sab = sa * sb;
    ImplicitCubic {
        coeffs: [
            -2.0 * ss * sab,
            ss * sd,
            -2.0 * ss * sab,
            ss * sd,
            -sab * sd,
            sa * sa * cb * cb + sb * sb * ca * ca - 2.0 * sab * sab,
            sab * sd,
            0.5 * sab * ss,
            0.25 * sd * ss,
            0.25 * sab * sd,
        ],
    }
}

/// Equal cevian lengths from `A = (−½, 0)` and `B = (½, 0)` through `(x, y)`,
/// cross-multiplied: `sin²β·AO²·(y·cosα − (x−½)·sinα)² − sin²α·BO²·(y·cosβ + (x+½)·sinβ)²`.
/// It equals `y·F(x, y)` for the implicit cubic `F`.
pub fn cross_multiplied_locus(angles: TriangleAngles, x: f64, y: f64) -> f64 {
    let (sa, ca, sb, cb) = (angles.alpha().sin(), angles.alpha().cos(), angles.beta().sin(), angles.beta().cos());
    sb * sb * ((x + 0.5).powi(2) + y * y) * (y * ca - (x - 0.5) * sa).powi(2)
        - sa * sa * ((x - 0.5).powi(2) + y * y) * (y * cb + (x + 0.5) * sb).powi(2)
}

/// The line `y = slope·x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Asymptote {
    pub slope: f64,
    pub intercept: f64,
}

impl Asymptote {
    pub fn distance(&self, p: Point2) -> f64 {
        (self.slope * p.x - p.y + self.intercept).abs() / self.slope.hypot(1.0)
    }
}

/// The single real asymptote of the cubic, parallel to the median `CM`.
///
/// The intercept is `−sinα·sinβ·sin(β+α) / (sin²(β−α) + 4·sin²α·sin²β)`
/// for `AB = 1`.
pub fn asymptote(angles: TriangleAngles) -> Result<Asymptote> {
    if angles.is_isosceles(1e-9) {
        return Err(Error::IsoscelesDegenerate);
    }
    let (al, be) = (angles.alpha(), angles.beta());
    let (sa, sb) = (al.sin(), be.sin());
    let sd = (be - al).sin();
    let ss = (be + al).sin();
    Ok(Asymptote {
        slope: 2.0 * sa * sb / sd,
        intercept: -sa * sb * ss / (sd * sd + 4.0 * sa * sa * sb * sb),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecialPoints {
    /// Third crossing with `AB`, the mirror image of the altitude foot in `M`.
    pub e: Point2,
    /// Crossing with the perpendicular bisector of `AB`, at depth `CH` below `M`.
    pub n: Point2,
    /// The node: `C` reflected through `M`.
    pub d: Point2,
}

pub fn special_points(angles: TriangleAngles) -> SpecialPoints {
    let c = TriangleFrame::new(angles, FrameKind::MedianCentered).c;
    let (al, be) = (angles.alpha(), angles.beta());
    SpecialPoints {
        e: Point2::new(-(be - al).sin() / (2.0 * (be + al).sin()), 0.0),
        n: Point2::new(0.0, -c.y),
        d: -c,
    }
}

/// One intersection point of an equal-cevian pair.
///
/// `branch.0` selects the sign in `AB_i = cos α ± √(l² − sin²α)` (foot of
/// the cevian from `B` on `AC`), `branch.1` the sign in
/// `BA_j = cos β ± √(l² − sin²β)` (foot of the cevian from `A` on `BC`);
/// `1` is `+`, `2` is `−`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveSample {
    pub l: f64,
    pub branch: (u8, u8),
    pub point: Point2,
}

/// `max(h_a, h_b)` for `AB = 1`.
pub fn altitude_bound(angles: TriangleAngles) -> f64 {
    angles.alpha().sin().max(angles.beta().sin())
}

fn foot_offsets(l: f64, angle: f64) -> Vec<(u8, f64)> {
    let r = (l * l - angle.sin().powi(2)).max(0.0).sqrt();
    let base = angle.cos();
    if r < 1e-9 {
        vec![(1, base)]
    } else {
        vec![(1, base + r), (2, base - r)]
    }
}

/// Every intersection of a cevian of length `l` from `A` with one from `B`.
pub fn parametric_points(angles: TriangleAngles, l: f64) -> Result<Vec<CurveSample>> {
    let bound = altitude_bound(angles);
    if !l.is_finite() || l < bound * (1.0 - 1e-12) {
        return Err(Error::Domain(format!("cevian length {l} is below the altitude bound {bound}")));
    }
    let (al, be) = (angles.alpha(), angles.beta());
    let frame = TriangleFrame::new(angles, FrameKind::MedianCentered);
    let (bc, ca, _) = angles.unit_base_sides();
    let tol = 1e-12;
    let on_vertex = |dist: f64, side: f64| dist.abs() < tol || (dist - side).abs() < tol * side;

    let mut out = Vec::with_capacity(4);
    let mut parallel = 0;
    for (i, ab_i) in foot_offsets(l, al) {
        if on_vertex(ab_i, ca) {
            continue;
        }
        let b_foot = frame.a + Point2::new(al.cos(), al.sin()) * ab_i;
        for (j, ba_j) in foot_offsets(l, be) {
            if on_vertex(ba_j, bc) {
                continue;
            }
            let a_foot = frame.b + Point2::new(-be.cos(), be.sin()) * ba_j;
            match line_intersection(frame.a, a_foot - frame.a, frame.b, b_foot - frame.b) {
                Some((s, _)) => {
                    let point = frame.a + (a_foot - frame.a) * s;
                    if point.is_finite() {
                        out.push(CurveSample { l, branch: (i, j), point });
                    }
                }
                None => parallel += 1,
            }
        }
    }
    if out.is_empty() && parallel > 0 {
        return Err(Error::NoIntersection);
    }
    Ok(out)
}

/// Closed-form intersection point for one branch, without line intersection.
pub fn parametric_closed_form(angles: TriangleAngles, l: f64, branch: (u8, u8)) -> Option<Point2> {
    let (al, be) = (angles.alpha(), angles.beta());
    let pick = |angle: f64, which: u8| {
        let r = (l * l - angle.sin().powi(2)).max(0.0).sqrt();
        angle.cos() + if which == 1 { r } else { -r }
    };
    let ab_i = pick(al, branch.0);
    let ba_j = pick(be, branch.1);
    let (sa, sb) = (al.sin(), be.sin());
    let den = ab_i * ba_j * (al + be).sin() - ba_j * sb - ab_i * sa;
    if den == 0.0 {
        return None;
    }
    Some(Point2::new(
        (-ba_j * ab_i * sb * al.cos() + ba_j * sb) / den + 0.5,
        -ba_j * ab_i * sa * sb / den,
    ))
}

/// The circle part of the locus of an isosceles triangle; the rest is the
/// symmetry axis `x = 0` and the base.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsoscelesLocus {
    pub center: Point2,
    pub radius: f64,
}

/// For base angles `alpha`, the circle is the circumcircle reflected in `AB`.
pub fn isosceles_locus(alpha: f64) -> Result<IsoscelesLocus> {
    if !(MIN_ANGLE..std::f64::consts::FRAC_PI_2).contains(&alpha) {
        return Err(Error::Domain(format!("base angle {alpha} must lie in (0, pi/2)")));
    }
    let gamma = std::f64::consts::PI - 2.0 * alpha;
    Ok(IsoscelesLocus {
        center: Point2::new(0.0, -gamma.cos() / (2.0 * gamma.sin())),
        radius: 1.0 / (2.0 * gamma.sin()),
    })
}

/// Cevian lengths from just above the altitude bound to `l_max`, with the
/// offsets above the bound in geometric progression.
pub fn l_grid(angles: TriangleAngles, l_max: f64, n: usize) -> Vec<f64> {
    let l0 = altitude_bound(angles);
    let first = l0 * 1e-6;
    let span = (l_max - l0).max(first);
    match n {
        0 => vec![],
        1 => vec![l0 + first],
        _ => (0..n)
            .map(|k| l0 + first * (span / first).powf(k as f64 / (n - 1) as f64))
            .collect(),
    }
}

/// Samples the locus over `n` lengths in `[l_min, l_max]`.
///
/// When `l_min` is at the altitude bound the grid refines towards it;
/// otherwise lengths grow geometrically from `l_min`.
pub fn sample_curve(angles: TriangleAngles, l_min: f64, l_max: f64, n: usize) -> Result<Vec<CurveSample>> {
    let bound = altitude_bound(angles);
    if l_min < bound * (1.0 - 1e-12) || l_max <= l_min {
        return Err(Error::Domain(format!(
            "need {bound} <= l_min < l_max, got [{l_min}, {l_max}]"
        )));
    }
    let ls: Vec<f64> = if l_min <= bound * (1.0 + 1e-6) {
        l_grid(angles, l_max, n)
    } else if n == 1 {
        vec![l_min]
    } else {
        (0..n).map(|k| l_min * (l_max / l_min).powf(k as f64 / (n - 1) as f64)).collect()
    };
    let per_l: Vec<Vec<CurveSample>> = ls
        .par_iter()
        .map(|&l| match parametric_points(angles, l) {
            Err(Error::NoIntersection) => Ok(Vec::new()),
            other => other,
        })
        .collect::<Result<_>>()?;
    Ok(per_l.into_iter().flatten().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveFormat {
    Svg,
    Csv,
}

/// CSV rows `l,branch_i,branch_j,x,y` with six significant digits.
pub fn curve_csv(samples: &[CurveSample]) -> String {
    let mut s = String::from("l,branch_i,branch_j,x,y\n");
    for c in samples {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            numfmt::sig(c.l, 6),
            c.branch.0,
            c.branch.1,
            numfmt::sig(c.point.x, 6),
            numfmt::sig(c.point.y, 6)
        );
    }
    s
}

/// SVG figure with the triangle, locus samples, asymptote and the
/// special points (or the circle and axis for an isosceles triangle).
pub fn curve_svg(angles: TriangleAngles, samples: &[CurveSample]) -> String {
    let frame = TriangleFrame::new(angles, FrameKind::MedianCentered);
    let sp = special_points(angles);
    let iso = angles.is_isosceles(1e-9);
    let vp = Viewport::fit([frame.a, frame.b, frame.c].into_iter().chain(samples.iter().map(|c| c.point)));

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let tri: Vec<String> = [frame.a, frame.b, frame.c]
        .iter()
        .map(|&p| {
            let (x, y) = vp.px(p);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(s, r#"<polygon points="{}" fill="none" stroke="black" stroke-width="2"/>"#, tri.join(" "));
    svg_line(&mut s, &vp, frame.a, frame.b, r##"stroke="#1f77b4" stroke-width="3""##);

    if iso {
        if let Ok(circle) = isosceles_locus(angles.alpha()) {
            let (cx, cy) = vp.px(circle.center);
            let _ = writeln!(
                s,
                r##"<circle cx="{cx:.2}" cy="{cy:.2}" r="{:.2}" fill="none" stroke="#2ca02c" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
                circle.radius * vp.scale
            );
        }
        svg_line(
            &mut s,
            &vp,
            Point2::new(0.0, vp.min.y),
            Point2::new(0.0, vp.max.y),
            r##"stroke="#2ca02c" stroke-width="1.5" stroke-dasharray="6 4""##,
        );
    } else if let Ok(asy) = asymptote(angles) {
        // Clip y = kx + b to the viewport by sampling its ends on the box.
        let ys = |x: f64| asy.slope * x + asy.intercept;
        let xs = |y: f64| (y - asy.intercept) / asy.slope;
        let mut ends: Vec<Point2> = [
            Point2::new(vp.min.x, ys(vp.min.x)),
            Point2::new(vp.max.x, ys(vp.max.x)),
            Point2::new(xs(vp.min.y), vp.min.y),
            Point2::new(xs(vp.max.y), vp.max.y),
        ]
        .into_iter()
        .filter(|p| p.is_finite() && vp.contains(Point2::new(p.x.clamp(vp.min.x, vp.max.x), p.y)) && vp.contains(*p))
        .collect();
        ends.sort_by(|p, q| p.x.total_cmp(&q.x));
        if let (Some(&p), Some(&q)) = (ends.first(), ends.last()) {
            svg_line(&mut s, &vp, p, q, r##"stroke="#ff7f0e" stroke-width="1.5" stroke-dasharray="8 4""##);
        }
    }

    // One polyline per branch, broken where the curve leaves the box or jumps.
    let mut branches: Vec<(u8, u8)> = samples.iter().map(|c| c.branch).collect();
    branches.sort_unstable();
    branches.dedup();
    let jump = 0.25 * vp.width();
    for br in branches {
        let mut pts: Vec<&CurveSample> = samples.iter().filter(|c| c.branch == br).collect();
        pts.sort_by(|a, b| a.l.total_cmp(&b.l));
        let mut runs: Vec<Vec<Point2>> = vec![Vec::new()];
        for c in pts {
            let run = runs.last_mut().expect("non-empty");
            let breaks = !vp.contains(c.point) || run.last().is_some_and(|&q: &Point2| q.dist(c.point) > jump);
            if breaks && !run.is_empty() {
                runs.push(Vec::new());
            }
            if vp.contains(c.point) {
                runs.last_mut().expect("non-empty").push(c.point);
            }
        }
        for run in runs.into_iter().filter(|r| r.len() > 1) {
            let coords: Vec<String> = run
                .iter()
                .map(|&p| {
                    let (x, y) = vp.px(p);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            let _ = writeln!(
                s,
                r##"<polyline points="{}" fill="none" stroke="#d62728" stroke-width="1.5"/>"##,
                coords.join(" ")
            );
        }
    }

    for (p, label) in [(frame.a, "A"), (frame.b, "B"), (frame.c, "C")] {
        svg_marker(&mut s, &vp, p, label, "black");
    }
    for (p, label) in [(sp.e, "E"), (sp.n, "N"), (sp.d, "D")] {
        svg_marker(&mut s, &vp, p, label, "#9467bd");
    }
    s.push_str("</svg>\n");
    s
}

/// Samples the locus over `l_range` and writes it in `format`.
pub fn emit_curve<W: io::Write>(
    angles: TriangleAngles,
    l_range: (f64, f64),
    n: usize,
    format: CurveFormat,
    out: &mut W,
) -> io::Result<()> {
    let samples = sample_curve(angles, l_range.0, l_range.1, n)
        .map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e.to_string()))?;
    let doc = match format {
        CurveFormat::Csv => curve_csv(&samples),
        CurveFormat::Svg => curve_svg(angles, &samples),
    };
    out.write_all(doc.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::cevian_through;
    use crate::geom::Vertex;

    fn deg(a: f64, b: f64) -> TriangleAngles {
        TriangleAngles::from_degrees(a, b).unwrap()
    }

    #[test]
    fn implicit_equation_factors_the_full_locus() {
        for (a, b) in [(20.0, 40.0), (40.0, 120.0), (73.0, 31.0)] {
            let t = deg(a, b);
            let f = implicit_coeffs(t);
            for (x, y) in [(0.3, 0.7), (-1.1, 0.2), (2.0, -1.5), (0.05, -0.4)] {
                let full = cross_multiplied_locus(t, x, y);
                assert!((full - y * f.eval(x, y)).abs() < 1e-13 * (1.0 + full.abs()));
            }
            // y = 0 kills the full polynomial identically
            for x in [-2.0, -0.3, 0.9] {
                assert!(cross_multiplied_locus(t, x, 0.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn vertices_and_special_points_on_curve() {
        let t = deg(20.0, 40.0);
        let f = implicit_coeffs(t);
        let sp = special_points(t);
        for p in [Point2::new(-0.5, 0.0), Point2::new(0.5, 0.0), sp.e, sp.n, sp.d] {
            assert!(f.eval_at(p).abs() < 1e-15, "{p}");
        }
        let frame = TriangleFrame::new(t, FrameKind::MedianCentered);
        let h = frame.altitude_foot(Vertex::C);
        assert!((sp.e.x + h.x).abs() < 1e-15 && sp.e.y == 0.0);
        assert!((sp.n.y.abs() - frame.c.dist(h)).abs() < 1e-15);
    }

    #[test]
    fn axis_restrictions() {
        let t = deg(35.0, 95.0);
        let f = implicit_coeffs(t);
        let [c3, c2, c1, c0] = f.restrict_to_x_axis();
        let e = special_points(t).e.x;
        let poly = |x: f64| ((c3 * x + c2) * x + c1) * x + c0;
        for r in [-0.5, 0.5, e] {
            assert!(poly(r).abs() < 1e-15);
        }
        // Product of roots.
        assert!((-c0 / c3 - (-0.5 * 0.5 * e)).abs() < 1e-15);
        let [d3, d2, d1, d0] = f.restrict_to_y_axis();
        let yn = special_points(t).n.y;
        let q = |y: f64| ((d3 * y + d2) * y + d1) * y + d0;
        assert!(q(yn).abs() < 1e-15);
        // Deflate: the quadratic cofactor is (y² + 1/4), with no real roots.
        let (a2, a1) = (d3, d2 + d3 * yn);
        let a0 = d1 + a1 * yn;
        assert!((a1 / a2).abs() < 1e-14 && (a0 / a2 - 0.25).abs() < 1e-14);
    }

    #[test]
    fn asymptote_matches_general_rule() {
        // For A x³ + 3B x²y + 3C xy² + D y³ + 3E x² + 6F xy + 3G y² + … the
        // asymptote y = kx + b solves A + 3Bk + 3Ck² + Dk³ = 0 and
        // (B + 2Ck + Dk²)·b = −(E + 2Fk + Gk²).
        for (a, b) in [(20.0, 40.0), (40.0, 120.0), (70.0, 30.0)] {
            let t = deg(a, b);
            let c = implicit_coeffs(t).coeffs;
            let (a3, b3, c3, d3) = (c[0], c[1] / 3.0, c[2] / 3.0, c[3]);
            let (e3, f6, g3) = (c[4] / 3.0, c[5] / 6.0, c[6] / 3.0);
            let asy = asymptote(t).unwrap();
            let k = asy.slope;
            assert!((a3 + 3.0 * b3 * k + 3.0 * c3 * k * k + d3 * k.powi(3)).abs() < 1e-13 * k.abs().powi(3).max(1.0));
            let b = -(e3 + 2.0 * f6 * k + g3 * k * k) / (b3 + 2.0 * c3 * k + d3 * k * k);
            assert!((b - asy.intercept).abs() < 1e-13, "{a} {b}");
            let frame = TriangleFrame::new(t, FrameKind::MedianCentered);
            assert!((k - frame.c.y / frame.c.x).abs() < 1e-12 * k.abs());
        }
        let s20 = 20f64.to_radians();
        let k = asymptote(deg(20.0, 40.0)).unwrap().slope;
        assert!((k - 2.0 * (2.0 * s20).sin()).abs() < 1e-14);
        assert!(asymptote(deg(50.0, 50.0)).is_err());
    }

    #[test]
    fn parametric_points_lie_on_curve_and_match_closed_form() {
        let t = deg(20.0, 40.0);
        let f = implicit_coeffs(t);
        let pts = parametric_points(t, 1.2).unwrap();
        assert_eq!(pts.len(), 4);
        for c in &pts {
            assert!(f.relative_residual(c.point) < 1e-12);
            let cf = parametric_closed_form(t, c.l, c.branch).unwrap();
            assert!(cf.dist(c.point) < 1e-9 * c.point.norm().max(1.0));
            // Both cevians really have length l.
            let frame = TriangleFrame::new(t, FrameKind::MedianCentered);
            let la = cevian_through(&frame, Vertex::A, c.point).unwrap().length;
            let lb = cevian_through(&frame, Vertex::B, c.point).unwrap().length;
            assert!((la - 1.2).abs() < 1e-12 && (lb - 1.2).abs() < 1e-12);
        }
    }

    #[test]
    fn equilateral_at_altitude_gives_centroid() {
        let t = deg(60.0, 60.0);
        let pts = parametric_points(t, 3f64.sqrt() / 2.0).unwrap();
        assert_eq!(pts.len(), 1);
        let g = TriangleFrame::new(t, FrameKind::MedianCentered).centroid();
        assert!(pts[0].point.dist(g) < 1e-7);
        assert!(pts[0].point.x.abs() < 1e-12);
    }

    #[test]
    fn below_altitude_bound_is_an_error() {
        assert!(matches!(parametric_points(deg(20.0, 40.0), 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn far_samples_approach_asymptote() {
        let t = deg(40.0, 120.0);
        let asy = asymptote(t).unwrap();
        let samples = sample_curve(t, altitude_bound(t), 50.0, 4000).unwrap();
        let mut far: Vec<(f64, f64)> =
            samples.iter().map(|c| (c.point.norm(), asy.distance(c.point))).filter(|&(r, _)| r > 5.0).collect();
        far.sort_by(|a, b| a.0.total_cmp(&b.0));
        assert!(far.len() > 10);
        // Distance to the asymptote decays like 1/r.
        for &(r, d) in &far {
            assert!(d * r < 5.0, "r = {r}, d = {d}");
        }
        let last = far.last().unwrap();
        assert!(last.0 > 100.0 && last.1 < 0.05);
    }

    #[test]
    fn node_is_the_large_length_limit() {
        for (a, b) in [(20.0, 40.0), (40.0, 120.0)] {
            let t = deg(a, b);
            let d = special_points(t).d;
            let dist = |l: f64| {
                parametric_points(t, l).unwrap().iter().map(|c| c.point.dist(d)).fold(0.0, f64::max)
            };
            // First-order convergence: the distance times l settles.
            let (d3, d6) = (dist(1e3), dist(1e6));
            assert!(d6 < 1e-4 && d6 < d3);
            assert!(((d3 * 1e3) / (d6 * 1e6) - 1.0).abs() < 0.02);
        }
    }

    #[test]
    fn isosceles_circle() {
        let c = isosceles_locus(60f64.to_radians()).unwrap();
        assert!(c.center.x == 0.0 && (c.center.y + 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-15);
        assert!((c.radius - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!(isosceles_locus(std::f64::consts::FRAC_PI_2).is_err());

        for a in [30.0f64, 50.0, 75.0] {
            let al = a.to_radians();
            let c = isosceles_locus(al).unwrap();
            let node = Point2::new(0.0, -al.sin().powi(2) / (2.0 * al).sin());
            assert!((node.dist(c.center) - c.radius).abs() < 1e-14);
            // Reflected circumcentre of the frame triangle.
            let t = TriangleAngles::new(al, al).unwrap();
            let frame = TriangleFrame::new(t, FrameKind::MedianCentered);
            let circum_y = (frame.c.y * frame.c.y - 0.25) / (2.0 * frame.c.y);
            assert!((c.center.y + circum_y).abs() < 1e-14);
            // F = −x · (circle) · const
            let f = implicit_coeffs(t);
            let k = 2.0 * al.sin().powi(2) * (2.0 * al).sin();
            for (x, y) in [(0.4, 0.1), (-0.7, 1.3), (1.5, -0.2)] {
                let circle = x * x + (y - c.center.y).powi(2) - c.radius * c.radius;
                assert!((f.eval(x, y) + x * k * circle).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn mirror_symmetry() {
        let t = deg(25.0, 75.0);
        let (f, g) = (implicit_coeffs(t), implicit_coeffs(t.swapped()));
        for (x, y) in [(0.3, 0.4), (-1.0, 2.0), (0.8, -0.9)] {
            assert!((f.eval(x, y) + g.eval(-x, y)).abs() < 1e-14);
        }
    }

    #[test]
    fn grid_refines_towards_the_bound() {
        let t = deg(20.0, 40.0);
        let g = l_grid(t, 50.0, 100);
        assert_eq!(g.len(), 100);
        let l0 = altitude_bound(t);
        assert!((g[0] - l0 * (1.0 + 1e-6)).abs() < 1e-15);
        assert!((g[99] - 50.0).abs() < 1e-12);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert!(g[1] - g[0] < g[99] - g[98]);
    }

    #[test]
    fn csv_and_svg_output() {
        let t = deg(20.0, 40.0);
        let samples = sample_curve(t, altitude_bound(t), 50.0, 50).unwrap();
        let csv = curve_csv(&samples);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("l,branch_i,branch_j,x,y"));
        assert_eq!(lines.count(), samples.len());
        let svg = curve_svg(t, &samples);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("polyline") && svg.contains(">E<") && svg.contains(">D<"));
        let iso = curve_svg(deg(50.0, 50.0), &sample_curve(deg(50.0, 50.0), 0.8, 50.0, 50).unwrap());
        assert!(iso.contains("stroke-dasharray=\"6 4\""));
    }
}
