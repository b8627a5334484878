//! Triangle frames, points and cevian construction.
//!
//! Every closed-form length elsewhere in the crate is checked against
//! [`cevian_through`], which builds a cevian by intersecting two lines with
//! a 2×2 determinant and nothing else.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};

/// Triangles with an angle below this many radians are rejected.
pub const MIN_ANGLE: f64 = 1e-6;

/// Relative tolerance under which a foot parameter is considered to sit on
/// a side endpoint.
const VERTEX_FOOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn unit(self) -> Point2 {
        self * (1.0 / self.norm())
    }

    pub fn lerp(self, other: Point2, t: f64) -> Point2 {
        self + (other - self) * t
    }

    pub fn midpoint(self, other: Point2) -> Point2 {
        self.lerp(other, 0.5)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Unsigned angle between two vectors, in `[0, π]`.
pub fn angle_between(u: Point2, v: Point2) -> f64 {
    u.cross(v).abs().atan2(u.dot(v))
}

/// Intersection of the lines `p + s·d` and `q + t·e`, returned as `(s, t)`.
///
/// `None` when the directions are parallel to within `1e-14` relative.
pub fn line_intersection(p: Point2, d: Point2, q: Point2, e: Point2) -> Option<(f64, f64)> {
    let det = d.cross(e);
    if det.abs() <= 1e-14 * d.norm() * e.norm() || !det.is_finite() {
        return None;
    }
    let w = q - p;
    Some((w.cross(e) / det, w.cross(d) / det))
}

/// Angles at `A` and `B`; the angle at `C` is derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleAngles {
    alpha: f64,
    beta: f64,
}

impl TriangleAngles {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::Domain("angles must be finite".into()));
        }
        let gamma = PI - alpha - beta;
        if alpha.min(beta).min(gamma) < MIN_ANGLE {
            return Err(Error::Domain(format!(
                "angles ({alpha}, {beta}, {gamma}) rad do not form a triangle \
                 with every angle at least {MIN_ANGLE} rad"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub fn from_degrees(alpha_deg: f64, beta_deg: f64) -> Result<Self> {
        Self::new(alpha_deg.to_radians(), beta_deg.to_radians())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        PI - self.alpha - self.beta
    }

    /// The mirror triangle, with the roles of `A` and `B` exchanged.
    pub fn swapped(&self) -> Self {
        Self { alpha: self.beta, beta: self.alpha }
    }

    pub fn is_isosceles(&self, tol: f64) -> bool {
        (self.alpha - self.beta).abs() <= tol
    }

    /// Side lengths `(BC, CA, AB)` normalised to `AB = 1` (law of sines).
    pub fn unit_base_sides(&self) -> (f64, f64, f64) {
        let sg = self.gamma().sin();
        (self.alpha.sin() / sg, self.beta.sin() / sg, 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Vertex {
    A,
    B,
    C,
}

impl Vertex {
    pub const ALL: [Vertex; 3] = [Vertex::A, Vertex::B, Vertex::C];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FrameKind {
    /// Midpoint of `AB` at the origin, `AB` on the x-axis, `AB = 1`.
    MedianCentered,
    /// Unit circumradius, `AB` on the x-axis, `C` on the y-axis.
    CircumUnit,
    /// Altitude foot `H` at the origin, `C = (0, 1)`.
    AltitudeUnit,
}

/// Concrete vertex coordinates of a triangle in one of three normalisations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleFrame {
    pub kind: FrameKind,
    pub angles: TriangleAngles,
    pub a: Point2,
    pub b: Point2,
    pub c: Point2,
}

impl TriangleFrame {
    pub fn new(angles: TriangleAngles, kind: FrameKind) -> Self {
        let (al, be) = (angles.alpha(), angles.beta());
        let (a, b, c) = match kind {
            FrameKind::MedianCentered => {
                let s = (al + be).sin();
                (
                    Point2::new(-0.5, 0.0),
                    Point2::new(0.5, 0.0),
                    Point2::new((be - al).sin() / (2.0 * s), al.sin() * be.sin() / s),
                )
            }
            FrameKind::CircumUnit => (
                Point2::new(-2.0 * be.sin() * al.cos(), 0.0),
                Point2::new(2.0 * al.sin() * be.cos(), 0.0),
                Point2::new(0.0, 2.0 * al.sin() * be.sin()),
            ),
            FrameKind::AltitudeUnit => (
                Point2::new(-1.0 / al.tan(), 0.0),
                Point2::new(1.0 / be.tan(), 0.0),
                Point2::new(0.0, 1.0),
            ),
        };
        Self { kind, angles, a, b, c }
    }

    pub fn vertex(&self, v: Vertex) -> Point2 {
        match v {
            Vertex::A => self.a,
            Vertex::B => self.b,
            Vertex::C => self.c,
        }
    }

    /// Endpoints of the side opposite `v`, in the order used for
    /// `Cevian::foot_param`: `A → (B, C)`, `B → (A, C)`, `C → (A, B)`.
    pub fn opposite_side(&self, v: Vertex) -> (Point2, Point2) {
        match v {
            Vertex::A => (self.b, self.c),
            Vertex::B => (self.a, self.c),
            Vertex::C => (self.a, self.b),
        }
    }

    /// `(BC, CA, AB)` measured from the coordinates.
    pub fn side_lengths(&self) -> (f64, f64, f64) {
        (self.b.dist(self.c), self.c.dist(self.a), self.a.dist(self.b))
    }

    pub fn midpoint_ab(&self) -> Point2 {
        self.a.midpoint(self.b)
    }

    /// Foot of the altitude from `v` onto the line of the opposite side.
    pub fn altitude_foot(&self, v: Vertex) -> Point2 {
        let (p, q) = self.opposite_side(v);
        let e = q - p;
        p + e * ((self.vertex(v) - p).dot(e) / e.norm_sq())
    }

    /// Foot of the internal bisector from `v` on the opposite side.
    pub fn bisector_foot(&self, v: Vertex) -> Point2 {
        let (p, q) = self.opposite_side(v);
        let o = self.vertex(v);
        let (dp, dq) = (o.dist(p), o.dist(q));
        p.lerp(q, dp / (dp + dq))
    }

    pub fn centroid(&self) -> Point2 {
        (self.a + self.b + self.c) * (1.0 / 3.0)
    }

    /// Largest absolute coordinate among the vertices; used to scale
    /// tolerances for frames that are not unit-sized.
    pub fn scale(&self) -> f64 {
        [self.a, self.b, self.c]
            .iter()
            .map(|p| p.x.abs().max(p.y.abs()))
            .fold(1.0, f64::max)
    }
}

/// A segment from a vertex to a point on the line of the opposite side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cevian {
    pub vertex: Vertex,
    pub foot: Point2,
    /// Position of the foot on the opposite side line, 0 and 1 being the
    /// endpoints returned by [`TriangleFrame::opposite_side`]. Values outside
    /// `[0, 1]` put the foot on an extension.
    pub foot_param: f64,
    pub length: f64,
}

/// Cevian from `vertex` along the line through `p`.
pub fn cevian_through(frame: &TriangleFrame, vertex: Vertex, p: Point2) -> Result<Cevian> {
    let o = frame.vertex(vertex);
    let d = p - o;
    if d.norm() <= 1e-15 * frame.scale() {
        return Err(Error::CoincidentPoint(vertex));
    }
    let (s0, s1) = frame.opposite_side(vertex);
    let e = s1 - s0;
    let (_, t) = line_intersection(o, d, s0, e).ok_or(Error::ParallelCevian(vertex))?;
    if t.abs() < VERTEX_FOOT_TOL || (t - 1.0).abs() < VERTEX_FOOT_TOL {
        return Err(Error::FootAtVertex(vertex));
    }
    let foot = s0 + e * t;
    if !foot.is_finite() {
        return Err(Error::ParallelCevian(vertex));
    }
    Ok(Cevian { vertex, foot, foot_param: t, length: o.dist(foot) })
}

/// Cevian along the bisector of the external angle at `vertex`.
///
/// Fails with [`Error::ParallelCevian`] when the triangle is isosceles at
/// `vertex`, where the external bisector runs parallel to the opposite side.
pub fn external_bisector_cevian(frame: &TriangleFrame, vertex: Vertex) -> Result<Cevian> {
    let o = frame.vertex(vertex);
    let (p, q) = frame.opposite_side(vertex);
    let w = (p - o).unit() - (q - o).unit();
    cevian_through(frame, vertex, o + w)
}

/// `|∠(d, PV) − ∠(d, −QV)|` for the direction `d` of a cevian from `V`,
/// where `P, Q` are the other two vertices. Zero exactly when the cevian
/// bisects the external angle at `V`.
pub fn external_angle_residual(frame: &TriangleFrame, cevian: &Cevian) -> f64 {
    let o = frame.vertex(cevian.vertex);
    let (p, q) = frame.opposite_side(cevian.vertex);
    let d = cevian.foot - o;
    (angle_between(d, p - o) - angle_between(d, o - q)).abs()
}
