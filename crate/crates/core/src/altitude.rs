//! Equal cevians through a point of the altitude line.
//!
//! In the frame `H = (0, 0)`, `C = (0, 1)` the cevians from `A` and `B`
//! through `O = (0, y)` are equal for a scalene triangle exactly when
//! `y³ + (v − 1)y + 2u = 0` with `u = ctg α · ctg β` and
//! `v = ctg²α + ctg²β`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{cevian_through, FrameKind, Point2, TriangleAngles, TriangleFrame, Vertex};

/// Roots closer to zero than this are the altitude foot itself (`O = H`),
/// which does not define a pair of cevians.
pub const ZERO_ROOT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AltitudeCubic {
    pub u: f64,
    pub v: f64,
}

impl AltitudeCubic {
    /// Linear coefficient `v − 1`.
    pub fn p(&self) -> f64 {
        self.v - 1.0
    }

    /// Constant term `2u`.
    pub fn q(&self) -> f64 {
        2.0 * self.u
    }

    pub fn eval(&self, y: f64) -> f64 {
        y * y * y + self.p() * y + self.q()
    }

    pub fn derivative(&self, y: f64) -> f64 {
        3.0 * y * y + self.p()
    }

    /// `−4(27u² + (v − 1)³)`
    pub fn discriminant(&self) -> f64 {
        -4.0 * (27.0 * self.u * self.u + self.p().powi(3))
    }

    /// Width of the band around zero in which the discriminant is treated
    /// as vanishing.
    pub fn discriminant_band(&self) -> f64 {
        1e-12 * 1f64.max(self.p().abs().powi(3)).max(self.u * self.u)
    }
}

pub fn build_cubic(angles: TriangleAngles) -> Result<AltitudeCubic> {
    if angles.is_isosceles(1e-9) {
        return Err(Error::IsoscelesDegenerate);
    }
    let ca = 1.0 / angles.alpha().tan();
    let cb = 1.0 / angles.beta().tan();
    Ok(AltitudeCubic { u: ca * cb, v: ca * ca + cb * cb })
}

/// `v > 1 − 3|u|^{2/3}`, equivalent to a single real root.
pub fn one_real_root_criterion(u: f64, v: f64) -> bool {
    v > 1.0 - 3.0 * u.abs().powf(2.0 / 3.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootKind {
    OneReal,
    /// Vanishing discriminant: a simple and a double root (or a triple one).
    TripleWithDouble,
    ThreeDistinct,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootClassification {
    pub discriminant: f64,
    pub kind: RootKind,
    /// Real roots in ascending order, repeated according to multiplicity.
    pub roots: Vec<f64>,
}

impl RootClassification {
    /// Roots that describe an actual point `O ≠ H` on the altitude line.
    pub fn admissible_roots(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for &r in &self.roots {
            if r.abs() > ZERO_ROOT_TOL && out.last().is_none_or(|&l| l != r) {
                out.push(r);
            }
        }
        out
    }

    pub fn positive_roots(&self) -> Vec<f64> {
        self.admissible_roots().into_iter().filter(|&r| r > 0.0).collect()
    }
}

/// Real roots of `y³ + p·y + q`, ascending and with multiplicity, plus the
/// root-structure label. `band` is the half-width of the zero band for the
/// discriminant `−4p³ − 27q²`.
pub fn solve_depressed_cubic(p: f64, q: f64, band: f64) -> (RootKind, Vec<f64>) {
    let disc = -4.0 * p.powi(3) - 27.0 * q * q;
    let mut roots = if disc.abs() <= band {
        if p.abs() < 1e-300 {
            vec![0.0; 3]
        } else {
            let double = -1.5 * q / p;
            vec![3.0 * q / p, double, double]
        }
    } else if disc > 0.0 {
        // p < 0 here.
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (1.5 * q / p * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        (0..3).map(|k| m * (theta - 2.0 * PI * k as f64 / 3.0).cos()).collect()
    } else if p < 0.0 {
        let r = (-p / 3.0).sqrt();
        let arg = 1.5 * q.abs() / (-p) * (-3.0 / p).sqrt();
        vec![-2.0 * q.signum() * r * (arg.acosh() / 3.0).cosh()]
    } else if p > 0.0 {
        let r = (p / 3.0).sqrt();
        let arg = 1.5 * q / p * (3.0 / p).sqrt();
        vec![-2.0 * r * (arg.asinh() / 3.0).sinh()]
    } else {
        vec![(-q).cbrt()]
    };

    let kind = match roots.len() {
        1 => RootKind::OneReal,
        _ if disc.abs() <= band => RootKind::TripleWithDouble,
        _ => RootKind::ThreeDistinct,
    };
    if kind != RootKind::TripleWithDouble {
        for r in roots.iter_mut() {
            let d = 3.0 * *r * *r + p;
            if d != 0.0 {
                *r -= (*r * *r * *r + p * *r + q) / d;
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    (kind, roots)
}

pub fn classify(cubic: &AltitudeCubic) -> RootClassification {
    let (kind, roots) = solve_depressed_cubic(cubic.p(), cubic.q(), cubic.discriminant_band());
    RootClassification { discriminant: cubic.discriminant(), kind, roots }
}

/// `|AA₁ − BB₁|` for the cevians through `O = (0, y)` in the `CH = 1`
/// frame, by the sine rule and by line intersection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AltitudeGap {
    pub y: f64,
    pub sine_rule: f64,
    pub intersection: f64,
}

impl AltitudeGap {
    /// Disagreement between the two computation paths.
    pub fn path_mismatch(&self) -> f64 {
        (self.sine_rule - self.intersection).abs()
    }
}

pub fn verify_root_geometric(angles: TriangleAngles, y: f64) -> Result<AltitudeGap> {
    if y == 0.0 || !y.is_finite() {
        return Err(Error::Domain(format!("altitude parameter must be finite and nonzero, got {y}")));
    }
    let (al, be) = (angles.alpha(), angles.beta());
    let ab = 1.0 / al.tan() + 1.0 / be.tan();
    let bb = (ab * al.sin() / (al + (y * be.tan()).atan()).sin()).abs();
    let aa = (ab * be.sin() / (be + (y * al.tan()).atan()).sin()).abs();

    let frame = TriangleFrame::new(angles, FrameKind::AltitudeUnit);
    let o = Point2::new(0.0, y);
    let la = cevian_length_allowing_side(&frame, Vertex::A, o)?;
    let lb = cevian_length_allowing_side(&frame, Vertex::B, o)?;
    Ok(AltitudeGap { y, sine_rule: (aa - bb).abs(), intersection: (la - lb).abs() })
}

/// A right base angle puts `A` (or `B`) on the altitude, and the cevian
/// through any `O` on it is the side to `C`.
fn cevian_length_allowing_side(frame: &TriangleFrame, vertex: Vertex, o: Point2) -> Result<f64> {
    match cevian_through(frame, vertex, o) {
        Ok(c) => Ok(c.length),
        Err(Error::FootAtVertex(_)) => {
            let v = frame.vertex(vertex);
            let (s0, s1) = frame.opposite_side(vertex);
            let d = (o - v).unit();
            let end = if (s0 - v).cross(d).abs() <= (s1 - v).cross(d).abs() { s0 } else { s1 };
            Ok(v.dist(end))
        }
        Err(e) => Err(e),
    }
}

/// The positive root guaranteed when exactly one base angle is obtuse.
pub fn obtuse_existence(angles: TriangleAngles) -> Result<f64> {
    let right = PI / 2.0;
    if (angles.alpha() > right) == (angles.beta() > right) {
        return Err(Error::Domain("exactly one of alpha, beta must be obtuse".into()));
    }
    let cls = classify(&build_cubic(angles)?);
    match cls.positive_roots()[..] {
        [y] => Ok(y),
        _ => Err(Error::Domain(format!("expected one positive root, found {:?}", cls.roots))),
    }
}
