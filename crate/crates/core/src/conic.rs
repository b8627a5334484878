//! Six equal cevians, two from each vertex, and the conic through their feet.
//!
//! For a cevian length `l` at least every altitude, each side carries two feet
//! placed symmetrically about the altitude foot. The powers of the vertices
//! with respect to those pairs multiply to one (Carnot's condition), so the six
//! feet lie on a conic.

use std::fmt::Write as _;

use nalgebra::{DMatrix, SMatrix};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{FrameKind, Point2, TriangleAngles, TriangleFrame, Vertex};
use crate::plot::{svg_marker, Viewport, SVG_SIZE};

/// Feet closer than this to a vertex make the cevian degenerate.
const VERTEX_TOL: f64 = 1e-10;
/// Below this half-width a foot pair counts as a single point of contact.
const DOUBLE_CONTACT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SixFeet {
    pub l: f64,
    pub frame: TriangleFrame,
    /// `A₁, A₂` on `BC`: feet of the two cevians from `A`.
    pub a: [Point2; 2],
    /// `B₁, B₂` on `CA`.
    pub b: [Point2; 2],
    /// `C₁, C₂` on `AB`.
    pub c: [Point2; 2],
    /// `[A, B, C]` pairs that collapse to the altitude foot.
    pub double_contact: [bool; 3],
}

impl SixFeet {
    pub fn pair(&self, v: Vertex) -> [Point2; 2] {
        match v {
            Vertex::A => self.a,
            Vertex::B => self.b,
            Vertex::C => self.c,
        }
    }

    /// `[A₁, A₂, B₁, B₂, C₁, C₂]`.
    pub fn points(&self) -> [Point2; 6] {
        [self.a[0], self.a[1], self.b[0], self.b[1], self.c[0], self.c[1]]
    }
}

/// Places the six feet in the median-centred frame with `AB = 1`.
pub fn six_feet(angles: TriangleAngles, l: f64) -> Result<SixFeet> {
    let frame = TriangleFrame::new(angles, FrameKind::MedianCentered);
    let mut pairs = [[Point2::ORIGIN; 2]; 3];
    let mut double_contact = [false; 3];
    for (k, v) in Vertex::ALL.into_iter().enumerate() {
        let apex = frame.vertex(v);
        let (s0, s1) = frame.opposite_side(v);
        let h_foot = frame.altitude_foot(v);
        let h = apex.dist(h_foot);
        if !l.is_finite() || l < h * (1.0 - 1e-12) {
            return Err(Error::Domain(format!("cevian length {l} is below the altitude {h} from {v:?}")));
        }
        // h carries rounding error of a few ulps, which the square root
        // would amplify to ~1e-8; treat that band as exact contact.
        let r = if l - h <= 4.0 * f64::EPSILON * l { 0.0 } else { ((l - h) * (l + h)).sqrt() };
        let u = (s1 - s0).unit();
        double_contact[k] = r < DOUBLE_CONTACT_TOL;
        pairs[k] = [h_foot + u * r, h_foot - u * r];
        let side = s0.dist(s1);
        for f in pairs[k] {
            for (end, ev) in [(s0, other_vertex(v, 0)), (s1, other_vertex(v, 1))] {
                if f.dist(end) < VERTEX_TOL * side {
                    return Err(Error::VertexFoot(ev));
                }
            }
        }
    }
    Ok(SixFeet { l, frame, a: pairs[0], b: pairs[1], c: pairs[2], double_contact })
}

/// Label of the endpoints returned by [`TriangleFrame::opposite_side`].
fn other_vertex(v: Vertex, which: usize) -> Vertex {
    let (s0, s1) = match v {
        Vertex::A => (Vertex::B, Vertex::C),
        Vertex::B => (Vertex::A, Vertex::C),
        Vertex::C => (Vertex::A, Vertex::B),
    };
    if which == 0 {
        s0
    } else {
        s1
    }
}

/// Directed product `(F₁ − P)·(F₂ − P)` of a foot pair seen from `P` on the same line.
fn power(pair: [Point2; 2], p: Point2) -> f64 {
    (pair[0] - p).dot(pair[1] - p)
}

/// One power-of-a-point identity: `(foot pair, vertex on that side, expected value)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProductIdentity {
    pub pair: Vertex,
    pub from: Vertex,
    pub lhs: f64,
    pub rhs: f64,
}

impl ProductIdentity {
    pub fn relative_error(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.rhs.abs().max(self.lhs.abs()).max(1e-300)
    }
}

/// The six identities `PF₁·PF₂ = PQ² − l²`, where `F₁, F₂` are the feet of
/// the cevians from `Q` and `P` is another vertex.
pub fn product_identities(feet: &SixFeet) -> [ProductIdentity; 6] {
    let fr = &feet.frame;
    let l2 = feet.l * feet.l;
    let id = |pair: Vertex, from: Vertex| ProductIdentity {
        pair,
        from,
        lhs: power(feet.pair(pair), fr.vertex(from)),
        rhs: fr.vertex(pair).dist(fr.vertex(from)).powi(2) - l2,
    };
    [
        id(Vertex::A, Vertex::B),
        id(Vertex::A, Vertex::C),
        id(Vertex::B, Vertex::C),
        id(Vertex::B, Vertex::A),
        id(Vertex::C, Vertex::A),
        id(Vertex::C, Vertex::B),
    ]
}

/// `(BA₁/CA₁ · BA₂/CA₂)(CB₁/AB₁ · CB₂/AB₂)(AC₁/BC₁ · AC₂/BC₂)` with directed segments.
pub fn carnot_product(feet: &SixFeet) -> Result<f64> {
    let fr = &feet.frame;
    let mut prod = 1.0;
    for (pair, num, den) in [(Vertex::A, Vertex::B, Vertex::C), (Vertex::B, Vertex::C, Vertex::A), (Vertex::C, Vertex::A, Vertex::B)] {
        let d = power(feet.pair(pair), fr.vertex(den));
        if d == 0.0 {
            return Err(Error::ZeroDenominator(den));
        }
        prod *= power(feet.pair(pair), fr.vertex(num)) / d;
    }
    Ok(prod)
}

/// `A x² + B xy + C y² + D x + E y + F = 0`, scaled so the largest
/// coefficient is `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Conic {
    pub coeffs: [f64; 6],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConicKind {
    Ellipse,
    Parabola,
    Hyperbola,
}

fn monomials(p: Point2) -> [f64; 6] {
    [p.x * p.x, p.x * p.y, p.y * p.y, p.x, p.y, 1.0]
}

impl Conic {
    pub fn normalized(coeffs: [f64; 6]) -> Result<Self> {
        let m = coeffs.iter().fold(0.0f64, |bm, &c| if c.abs() > bm.abs() { c } else { bm });
        if m == 0.0 || !m.is_finite() {
            return Err(Error::DegenerateConfiguration("all conic coefficients vanish".into()));
        }
        Ok(Self { coeffs: coeffs.map(|c| c / m) })
    }

    pub fn eval(&self, p: Point2) -> f64 {
        self.coeffs.iter().zip(monomials(p)).map(|(c, m)| c * m).sum()
    }

    /// `|c·m(p)| / (‖c‖·‖m(p)‖)`.
    pub fn residual(&self, p: Point2) -> f64 {
        let m = monomials(p);
        let mn = m.iter().map(|v| v * v).sum::<f64>().sqrt();
        let cn = self.coeffs.iter().map(|v| v * v).sum::<f64>().sqrt();
        self.eval(p).abs() / (cn * mn)
    }

    /// `B² − 4AC`.
    pub fn discriminant(&self) -> f64 {
        let [a, b, c, ..] = self.coeffs;
        b * b - 4.0 * a * c
    }

    pub fn kind(&self) -> ConicKind {
        let d = self.discriminant();
        if d.abs() < 1e-12 {
            ConicKind::Parabola
        } else if d < 0.0 {
            ConicKind::Ellipse
        } else {
            ConicKind::Hyperbola
        }
    }

    /// Angle between coefficient vectors, ignoring overall sign.
    pub fn angle_to(&self, other: &Conic) -> f64 {
        let dot: f64 = self.coeffs.iter().zip(other.coeffs).map(|(a, b)| a * b).sum();
        let n = |c: &[f64; 6]| c.iter().map(|v| v * v).sum::<f64>().sqrt();
        (dot.abs() / (n(&self.coeffs) * n(&other.coeffs))).min(1.0).acos()
    }

    /// Points of the conic on vertical and horizontal scan lines over `[lo, hi]²`.
    pub fn sample(&self, lo: Point2, hi: Point2, n: usize) -> Vec<Point2> {
        let [a, b, c, d, e, f] = self.coeffs;
        let mut out = Vec::new();
        let roots = |qa: f64, qb: f64, qc: f64| -> Vec<f64> {
            if qa.abs() < 1e-14 {
                return if qb.abs() < 1e-14 { vec![] } else { vec![-qc / qb] };
            }
            let disc = qb * qb - 4.0 * qa * qc;
            if disc < 0.0 {
                return vec![];
            }
            let s = disc.sqrt();
            vec![(-qb + s) / (2.0 * qa), (-qb - s) / (2.0 * qa)]
        };
        for k in 0..=n {
            let t = k as f64 / n as f64;
            let x = lo.x + (hi.x - lo.x) * t;
            for y in roots(c, b * x + e, a * x * x + d * x + f) {
                out.push(Point2::new(x, y));
            }
            let y = lo.y + (hi.y - lo.y) * t;
            for x in roots(a, b * y + d, c * y * y + e * y + f) {
                out.push(Point2::new(x, y));
            }
        }
        out.retain(|p| p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y);
        out
    }
}

/// Conic through five points: the right singular vector of the design
/// matrix for its smallest singular value.
pub fn conic_through(points: &[Point2; 5]) -> Result<Conic> {
    let mut m = SMatrix::<f64, 6, 6>::zeros();
    for (r, p) in points.iter().enumerate() {
        for (c, v) in monomials(*p).into_iter().enumerate() {
            m[(r, c)] = v;
        }
    }
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let mut order: Vec<usize> = (0..6).collect();
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let smax = svd.singular_values[order[5]];
    // The padding row always contributes one zero; a second means the
    // five points do not fix the conic.
    if svd.singular_values[order[1]] <= 1e-10 * smax {
        return Err(Error::DegenerateConfiguration("five points do not determine a unique conic".into()));
    }
    let row = v_t.row(order[0]);
    Conic::normalized([row[0], row[1], row[2], row[3], row[4], row[5]])
}

/// The inscribed circle of the frame triangle as a conic.
fn incircle(frame: &TriangleFrame) -> Result<Conic> {
    let (a, b, c) = frame.side_lengths();
    let per = a + b + c;
    let center = (frame.a * a + frame.b * b + frame.c * c) * (1.0 / per);
    let s = 0.5 * per;
    let r = ((s - a) * (s - b) * (s - c) / s).sqrt();
    Conic::normalized([1.0, 0.0, 1.0, -2.0 * center.x, -2.0 * center.y, center.norm_sq() - r * r])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConicFit {
    pub conic: Conic,
    /// Largest [`Conic::residual`] over all six feet.
    pub residual: f64,
    /// Whether the conic came from the five-point fit or the incircle fallback.
    pub fallback: bool,
}

/// Fits the conic through the first five distinct feet and measures the
/// remaining ones. When fewer than five feet are distinct (all pairs
/// collapsed), only the equilateral triangle has a well-defined answer: the
/// incircle, tangent to every side at its midpoint.
pub fn fit_conic(feet: &SixFeet) -> Result<ConicFit> {
    let pts = feet.points();
    let mut distinct: Vec<Point2> = Vec::with_capacity(6);
    for p in pts {
        if distinct.iter().all(|q| q.dist(p) > DOUBLE_CONTACT_TOL) {
            distinct.push(p);
        }
    }
    let (conic, fallback) = if distinct.len() >= 5 {
        let five = [distinct[0], distinct[1], distinct[2], distinct[3], distinct[4]];
        (conic_through(&five)?, false)
    } else {
        let ang = feet.frame.angles;
        let third = std::f64::consts::FRAC_PI_3;
        if (ang.alpha() - third).abs() < 1e-9 && (ang.beta() - third).abs() < 1e-9 {
            (incircle(&feet.frame)?, true)
        } else {
            return Err(Error::DegenerateConfiguration(format!(
                "only {} distinct feet",
                distinct.len()
            )));
        }
    };
    let residual = pts.iter().map(|p| conic.residual(*p)).fold(0.0, f64::max);
    Ok(ConicFit { conic, residual, fallback })
}

/// The six leave-one-out fits, in order of the omitted foot.
pub fn leave_one_out_fits(feet: &SixFeet) -> Result<Vec<Conic>> {
    let pts = feet.points();
    (0..6)
        .map(|skip| {
            let rest: Vec<Point2> = pts.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, p)| *p).collect();
            conic_through(&[rest[0], rest[1], rest[2], rest[3], rest[4]])
        })
        .collect()
}

/// Largest [`Conic::angle_to`] between any two leave-one-out fits.
pub fn choice_spread(feet: &SixFeet) -> Result<f64> {
    let fits = leave_one_out_fits(feet)?;
    let mut worst = 0.0f64;
    for i in 0..fits.len() {
        for j in i + 1..fits.len() {
            worst = worst.max(fits[i].angle_to(&fits[j]));
        }
    }
    Ok(worst)
}

/// Residual of each foot against the conic fitted through the other five.
pub fn holdout_residuals(feet: &SixFeet) -> Result<[f64; 6]> {
    let fits = leave_one_out_fits(feet)?;
    let pts = feet.points();
    let mut out = [0.0; 6];
    for i in 0..6 {
        out[i] = fits[i].residual(pts[i]);
    }
    Ok(out)
}

/// Least-squares conic of arbitrary point sets; used to probe sensitivity.
pub fn conic_residual_of_sixth(points: &[Point2; 6]) -> Result<f64> {
    let conic = conic_through(&[points[0], points[1], points[2], points[3], points[4]])?;
    Ok(conic.residual(points[5]))
}

/// Smallest singular value of the full 6×6 design matrix relative to the largest.
pub fn six_point_singularity(points: &[Point2; 6]) -> f64 {
    let m = DMatrix::from_fn(6, 6, |r, c| monomials(points[r])[c]);
    let sv = m.singular_values();
    let (lo, hi) = sv.iter().fold((f64::MAX, 0.0f64), |(lo, hi), &s| (lo.min(s), hi.max(s)));
    lo / hi
}

/// SVG figure with the triangle, the six feet and the sampled conic.
pub fn conic_svg(feet: &SixFeet, conic: &Conic) -> String {
    let fr = &feet.frame;
    let pts = feet.points();
    let vp = Viewport::fit([fr.a, fr.b, fr.c].into_iter().chain(pts));
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let tri: Vec<String> = [fr.a, fr.b, fr.c]
        .iter()
        .map(|&p| {
            let (x, y) = vp.px(p);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(s, r#"<polygon points="{}" fill="none" stroke="black" stroke-width="2"/>"#, tri.join(" "));
    for p in conic.sample(vp.min, vp.max, 400) {
        let (x, y) = vp.px(p);
        let _ = writeln!(s, r##"<circle cx="{x:.2}" cy="{y:.2}" r="1" fill="#1f77b4"/>"##);
    }
    for (p, label) in [(fr.a, "A"), (fr.b, "B"), (fr.c, "C")] {
        svg_marker(&mut s, &vp, p, label, "black");
    }
    let labels = ["A1", "A2", "B1", "B2", "C1", "C2"];
    for (p, label) in pts.iter().zip(labels) {
        svg_marker(&mut s, &vp, *p, label, "#d62728");
    }
    s.push_str("</svg>\n");
    s
}
