//! Closed-form cevian lengths and gap functions.
//!
//! A gap function is `|AA₁| − |BB₁|` for the two cevians through a point `O`
//! constrained to some locus. For the bisector and the median from `C` the
//! gap is built from [`geom::cevian_through`](crate::geom::cevian_through)
//! directly; for the reflected circumcircle and for `k`-trisas closed forms
//! are provided and tested against that construction.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{cevian_through, FrameKind, Point2, TriangleAngles, TriangleFrame, Vertex};

/// Locus endpoints are skipped by this margin when sweeping.
pub const LOCUS_MARGIN: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapSample {
    pub locus_param: f64,
    /// `|AA₁| − |BB₁|`; `NaN` when `both_exist` is false.
    pub gap: f64,
    pub both_exist: bool,
}

impl GapSample {
    fn missing(locus_param: f64) -> Self {
        Self { locus_param, gap: f64::NAN, both_exist: false }
    }
}

/// The line through `C` on which `O` is constrained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConstraintLocus {
    Bisector,
    Median,
}

/// Gap for `O = C + s·(D − C)`, `D` the foot of the bisector from `C`.
pub fn bisector_gap(angles: TriangleAngles, s: f64) -> Result<GapSample> {
    let frame = TriangleFrame::new(angles, FrameKind::MedianCentered);
    gap_on_segment(&frame, frame.bisector_foot(Vertex::C), s)
}

/// Gap for `O = C + s·(M − C)`, `M` the midpoint of `AB`.
///
/// `s = +∞` stands for the point at infinity of the median, where the two
/// cevians are parallel; see [`median_param_for_weight`].
pub fn median_gap(angles: TriangleAngles, s: f64) -> Result<GapSample> {
    let frame = TriangleFrame::new(angles, FrameKind::MedianCentered);
    gap_on_segment(&frame, frame.midpoint_ab(), s)
}

pub fn locus_gap(locus: ConstraintLocus, angles: TriangleAngles, s: f64) -> Result<GapSample> {
    match locus {
        ConstraintLocus::Bisector => bisector_gap(angles, s),
        ConstraintLocus::Median => median_gap(angles, s),
    }
}

/// Median parameter `s` of the point with barycentric coordinates `(1 : 1 : x)`.
///
/// Infinite for `x = −2`; `x = −1` gives `s = 2`, the fourth vertex of the
/// parallelogram `ACBD`.
pub fn median_param_for_weight(x: f64) -> f64 {
    2.0 / (2.0 + x)
}

fn gap_on_segment(frame: &TriangleFrame, foot: Point2, s: f64) -> Result<GapSample> {
    if s.is_nan() || s <= 0.0 {
        return Err(Error::Domain(format!("locus parameter must be positive, got {s}")));
    }
    if s.is_infinite() {
        return Ok(GapSample::missing(s));
    }
    let o = frame.c.lerp(foot, s);
    if (s - 1.0).abs() <= 1e-12 {
        // O sits on AB: both cevians collapse onto the base and meet it at O.
        return Ok(GapSample { locus_param: s, gap: frame.a.dist(o) - frame.b.dist(o), both_exist: true });
    }
    match (cevian_through(frame, Vertex::A, o), cevian_through(frame, Vertex::B, o)) {
        (Ok(aa), Ok(bb)) => Ok(GapSample { locus_param: s, gap: aa.length - bb.length, both_exist: true }),
        _ => Ok(GapSample::missing(s)),
    }
}

/// `n` gap samples with `s` spread uniformly over `[m, 1 − m]`, `m = LOCUS_MARGIN`.
pub fn sweep_locus(locus: ConstraintLocus, angles: TriangleAngles, n: usize) -> Vec<GapSample> {
    let (lo, hi) = (LOCUS_MARGIN, 1.0 - LOCUS_MARGIN);
    (0..n)
        .map(|i| {
            let s = if n == 1 { 0.5 } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 };
            locus_gap(locus, angles, s).expect("sweep parameters are positive")
        })
        .collect()
}

/// True when two consecutive existing samples have gaps of strictly opposite sign.
pub fn has_sign_change(samples: &[GapSample]) -> bool {
    let signs: Vec<f64> = samples
        .iter()
        .filter(|g| g.both_exist && g.gap != 0.0)
        .map(|g| g.gap.signum())
        .collect();
    signs.windows(2).any(|w| w[0] != w[1])
}

/// Both sides of the vector identity behind the median criterion:
/// `x(AC² − BC²) + 2(AC⃗·AB⃗ + BC⃗·AB⃗)` and `2·MC⃗·AB⃗·(x + 2)`.
pub fn median_identity_sides(angles: TriangleAngles, x: f64) -> Result<(f64, f64)> {
    if x == 0.0 || x == -1.0 || !x.is_finite() {
        return Err(Error::Domain(format!("barycentric weight {x} is excluded")));
    }
    let f = TriangleFrame::new(angles, FrameKind::MedianCentered);
    let ac = f.c - f.a;
    let bc = f.c - f.b;
    let ab = f.b - f.a;
    let mc = f.c - f.midpoint_ab();
    let lhs = x * (ac.norm_sq() - bc.norm_sq()) + 2.0 * (ac.dot(ab) + bc.dot(ab));
    let rhs = 2.0 * mc.dot(ab) * (x + 2.0);
    Ok((lhs, rhs))
}

pub fn median_identity_residual(angles: TriangleAngles, x: f64) -> Result<f64> {
    let (lhs, rhs) = median_identity_sides(angles, x)?;
    Ok((lhs - rhs).abs())
}

/// Gap `|AA₁| − |BB₁|` when `BA₁:A₁C = AB₁:B₁C = p:q`, with `AB = 1`.
///
/// Positive when `β > α` for positive `p, q`.
pub fn ratio_cevian_gap(angles: TriangleAngles, p: f64, q: f64) -> Result<f64> {
    let degenerate = !(p.is_finite() && q.is_finite())
        || 2.0 * q + p == 0.0
        || p + q == 0.0
        || p == 0.0
        || q == 0.0;
    if degenerate {
        return Err(Error::DegenerateRatio { p, q });
    }
    let f = TriangleFrame::new(angles, FrameKind::MedianCentered);
    let w = p / (p + q);
    let a1 = f.b.lerp(f.c, w);
    let b1 = f.a.lerp(f.c, w);
    Ok(f.a.dist(a1) - f.b.dist(b1))
}

/// Centre of the reflection of the circumcircle across `AB`, in the
/// circumradius-one frame.
pub fn circle_s_center(angles: TriangleAngles) -> Point2 {
    let f = TriangleFrame::new(angles, FrameKind::CircumUnit);
    Point2::new(0.5 * (f.a.x + f.b.x), -angles.gamma().cos())
}

/// Point of the reflected circumcircle at parameter `t` (circumradius-one frame).
pub fn circle_s_point(angles: TriangleAngles, t: f64) -> Point2 {
    let centre = circle_s_center(angles);
    Point2::new(t.sin() + centre.x, t.cos() + centre.y)
}

/// `(AA₁², BB₁²)` for the cevians through `T = circle_s_point(t)`.
///
/// Both share the denominator `cos²((t + α − β)/2)`, so the ratio is
/// `sin²β / sin²α` for every admissible `t`.
pub fn circle_cevian_lengths_sq(angles: TriangleAngles, t: f64) -> Result<(f64, f64)> {
    const TOL: f64 = 1e-9;
    let (al, be, ga) = (angles.alpha(), angles.beta(), angles.gamma());
    let f = TriangleFrame::new(angles, FrameKind::CircumUnit);
    let tp = circle_s_point(angles, t);
    let d = f.a + f.b - f.c;
    let half = ((t + al - be) / 2.0).cos();
    if !t.is_finite() || tp.dist(f.a) < TOL || tp.dist(f.b) < TOL || tp.dist(d) < TOL || half.abs() < TOL {
        return Err(Error::DegenerateT(t));
    }
    let sg2 = ga.sin().powi(2);
    let den = half * half;
    Ok((4.0 * be.sin().powi(2) * sg2 / den, 4.0 * al.sin().powi(2) * sg2 / den))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrisaParams {
    pub k: f64,
    /// `2/k`, the parameter of the auxiliary functions `f` and `g`.
    pub gamma_param: f64,
}

impl TrisaParams {
    pub fn new(k: f64) -> Result<Self> {
        if k == 0.0 || !k.is_finite() {
            return Err(Error::Domain(format!("trisa ratio must be finite and nonzero, got {k}")));
        }
        Ok(Self { k, gamma_param: 2.0 / k })
    }
}

/// Signed length of the `k`-trisa from `A` or `B` with `AB = 1`.
///
/// The trisa from `A` makes the oriented angle `kα` with `AB`. A negative
/// value means the line meets the opposite side behind the vertex; the
/// geometric length is the absolute value.
pub fn trisa_cevian_length(angles: TriangleAngles, k: f64, vertex: Vertex) -> Result<f64> {
    let (al, be) = (angles.alpha(), angles.beta());
    let (num, den) = match vertex {
        Vertex::A => (be.sin(), (k * al + be).sin()),
        Vertex::B => (al.sin(), (k * be + al).sin()),
        Vertex::C => return Err(Error::Domain("trisas are defined from A and B".into())),
    };
    if den.abs() < 1e-12 {
        return Err(Error::ParallelTrisa(vertex));
    }
    Ok(num / den)
}

/// `f(t) = sin((γ + 1)t) / sin t`.
pub fn trisa_f(gamma_param: f64, t: f64) -> f64 {
    ((gamma_param + 1.0) * t).sin() / t.sin()
}

/// `g(τ) = −sin((γ − 1)τ) / sin τ`.
pub fn trisa_g(gamma_param: f64, tau: f64) -> f64 {
    -((gamma_param - 1.0) * tau).sin() / tau.sin()
}

/// `(f(t), g(τ))` on the open domain `0 < τ < t < π/γ`, `γ ≥ 2`.
pub fn trisa_fg(gamma_param: f64, t: f64, tau: f64) -> Result<(f64, f64)> {
    if !(gamma_param >= 2.0 && 0.0 < tau && tau < t && t < PI / gamma_param) {
        return Err(Error::Domain(format!(
            "need gamma_param >= 2 and 0 < tau < t < pi/gamma_param, got ({gamma_param}, {t}, {tau})"
        )));
    }
    Ok((trisa_f(gamma_param, t), trisa_g(gamma_param, tau)))
}

/// A scalene triangle whose two `k`-trisas have equal length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrisaWitness {
    pub k: f64,
    pub alpha: f64,
    pub beta: f64,
    pub length_a: f64,
    pub length_b: f64,
}

/// Searches for a scalene triangle with equal `k`-trisas.
///
/// For each `α` on a grid, bisects over `β ∈ (α, π − α)` on
/// `sin β · sin(kβ + α) − sin α · sin(kα + β)`, which vanishes where the
/// two trisa lengths agree and has no poles. Roots next to a parallel trisa
/// or too close to `β = α` are discarded.
pub fn trisa_witness(k: f64) -> Option<TrisaWitness> {
    const SCAN: usize = 2000;
    let h = |al: f64, be: f64| be.sin() * (k * be + al).sin() - al.sin() * (k * al + be).sin();
    for step in 1..18 {
        let al = (5.0 * step as f64).to_radians();
        let (lo, hi) = (al + 1e-3, PI - al - 1e-3);
        let grid: Vec<f64> = (0..=SCAN).map(|i| lo + (hi - lo) * i as f64 / SCAN as f64).collect();
        for w in grid.windows(2) {
            let (mut a, mut b) = (w[0], w[1]);
            let (mut ha, hb) = (h(al, a), h(al, b));
            if ha == 0.0 || ha.signum() == hb.signum() {
                continue;
            }
            while b - a > 1e-12 {
                let m = 0.5 * (a + b);
                let hm = h(al, m);
                if hm.signum() == ha.signum() {
                    a = m;
                    ha = hm;
                } else {
                    b = m;
                }
            }
            let be = 0.5 * (a + b);
            let Ok(angles) = TriangleAngles::new(al, be) else { continue };
            let (Ok(la), Ok(lb)) =
                (trisa_cevian_length(angles, k, Vertex::A), trisa_cevian_length(angles, k, Vertex::B))
            else {
                continue;
            };
            let near_pole = (k * al + be).sin().abs() < 1e-6 || (k * be + al).sin().abs() < 1e-6;
            if !near_pole && (be - al).abs() > 1e-3 && (la - lb).abs() < 1e-9 {
                return Some(TrisaWitness { k, alpha: al, beta: be, length_a: la, length_b: lb });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Cevian;

    fn deg(a: f64, b: f64) -> TriangleAngles {
        TriangleAngles::from_degrees(a, b).unwrap()
    }

    #[test]
    fn isosceles_gaps_vanish() {
        let t = deg(55.0, 55.0);
        for s in [0.1, 0.4, 0.77, 0.999] {
            assert!(bisector_gap(t, s).unwrap().gap.abs() < 1e-14);
            assert!(median_gap(t, s).unwrap().gap.abs() < 1e-14);
        }
    }

    #[test]
    fn scalene_gaps_keep_sign() {
        let b = sweep_locus(ConstraintLocus::Bisector, deg(50.0, 70.0), 1000);
        assert!(b.iter().all(|g| g.both_exist));
        assert!(!has_sign_change(&b));
        let m = sweep_locus(ConstraintLocus::Median, deg(30.0, 80.0), 1000);
        assert!(m.iter().all(|g| g.both_exist));
        assert!(!has_sign_change(&m));
    }

    #[test]
    fn bisector_gap_on_base_is_distance_difference() {
        let t = deg(50.0, 70.0);
        let f = TriangleFrame::new(t, FrameKind::MedianCentered);
        let d = f.bisector_foot(Vertex::C);
        let g = bisector_gap(t, 1.0).unwrap();
        assert!(g.both_exist);
        assert!((g.gap - (f.a.dist(d) - f.b.dist(d))).abs() < 1e-15);
        assert!(g.gap.abs() > 1e-3);
    }

    #[test]
    fn median_point_at_infinity_and_parallelogram_vertex() {
        let t = deg(30.0, 80.0);
        assert!(median_param_for_weight(-2.0).is_infinite());
        assert!(!median_gap(t, median_param_for_weight(-2.0)).unwrap().both_exist);
        assert_eq!(median_param_for_weight(-1.0), 2.0);
        assert!(!median_gap(t, 2.0).unwrap().both_exist);
        assert!(median_gap(t, 0.0).is_err());
    }

    #[test]
    fn median_identity_examples() {
        assert!(median_identity_residual(deg(60.0, 60.0), 5.0).unwrap() < 1e-15);
        let (l, r) = median_identity_sides(deg(30.0, 80.0), -2.0).unwrap();
        assert!(l.abs() < 1e-14 && r.abs() < 1e-15);
        assert!(median_identity_residual(deg(30.0, 80.0), 0.0).is_err());
        assert!(median_identity_residual(deg(30.0, 80.0), -1.0).is_err());
    }

    /// Stewart's theorem: cevian from A to the point dividing BC as m:n.
    fn stewart(b: f64, c: f64, a: f64, m: f64, n: f64) -> f64 {
        ((b * b * m + c * c * n) / a - m * n).sqrt()
    }

    #[test]
    fn ratio_gap_matches_stewart() {
        let t = deg(40.0, 75.0);
        let (a, b, c) = t.unit_base_sides();
        let (p, q) = (2.0, 3.0);
        let w = p / (p + q);
        // A₁ on BC: BA₁ = w·a, A₁C = (1 − w)·a; Stewart with b = CA, c = AB.
        let aa = stewart(b, c, a, w * a, (1.0 - w) * a);
        // B₁ on AC: AB₁ = w·b, B₁C = (1 − w)·b; cevian from B: sides BC = a, BA = c.
        let bb = stewart(a, c, b, w * b, (1.0 - w) * b);
        let g = ratio_cevian_gap(t, p, q).unwrap();
        assert!((g - (aa - bb)).abs() < 1e-14);
        assert!(g > 0.0, "sign follows beta - alpha");
        assert!(ratio_cevian_gap(t.swapped(), p, q).unwrap() < 0.0);
    }

    #[test]
    fn ratio_gap_edge_cases() {
        let scalene = deg(35.0, 85.0);
        assert!(ratio_cevian_gap(scalene, 1.0, 1.0).unwrap().abs() > 1e-3);
        assert!(ratio_cevian_gap(deg(65.0, 65.0), 3.0, 7.0).unwrap().abs() < 1e-15);
        assert!(matches!(ratio_cevian_gap(scalene, -2.0, 1.0), Err(Error::DegenerateRatio { .. })));
        assert!(ratio_cevian_gap(scalene, 1.0, -1.0).is_err());
    }

    #[test]
    fn excluded_ratio_makes_every_triangle_look_isosceles() {
        // With p = −2q the feet are 2C − B and 2C − A, so AA₁ = BB₁ = 2·MC.
        let f = TriangleFrame::new(deg(35.0, 85.0), FrameKind::MedianCentered);
        let a1 = f.c * 2.0 - f.b;
        let b1 = f.c * 2.0 - f.a;
        assert!((f.a.dist(a1) - f.b.dist(b1)).abs() < 1e-15);
    }

    #[test]
    fn circle_points_and_center() {
        let t = deg(40.0, 60.0);
        let centre = circle_s_center(t);
        for i in 0..360 {
            let p = circle_s_point(t, (i as f64).to_radians());
            assert!((p.dist(centre) - 1.0).abs() < 1e-12);
        }
        let g = t.gamma();
        assert!(circle_s_point(t, g).y.abs() < 1e-15);
        assert!(circle_s_point(t, -g).y.abs() < 1e-15);
        assert!(circle_s_center(deg(50.0, 50.0)).x.abs() < 1e-15);
    }

    #[test]
    fn circle_lengths_agree_with_intersection() {
        let t = deg(40.0, 60.0);
        let f = TriangleFrame::new(t, FrameKind::CircumUnit);
        let (aa, bb) = circle_cevian_lengths_sq(t, 1.0).unwrap();
        let ratio = (t.beta().sin() / t.alpha().sin()).powi(2);
        assert!((aa / bb - ratio).abs() < 1e-13);
        let p = circle_s_point(t, 1.0);
        let oa = cevian_through(&f, Vertex::A, p).unwrap().length;
        let ob = cevian_through(&f, Vertex::B, p).unwrap().length;
        assert!((aa - oa * oa).abs() < 1e-12 * aa);
        assert!((bb - ob * ob).abs() < 1e-12 * bb);
    }

    #[test]
    fn circle_lengths_reject_excluded_points() {
        let t = deg(40.0, 60.0);
        let (al, be) = (t.alpha(), t.beta());
        // cos((t + α − β)/2) = 0
        let bad = PI - al + be;
        assert!(matches!(circle_cevian_lengths_sq(t, bad), Err(Error::DegenerateT(_))));
        // T = A and T = B lie on y = 0, at t = −γ and t = γ.
        assert!(circle_cevian_lengths_sq(t, -t.gamma()).is_err());
        assert!(circle_cevian_lengths_sq(t, t.gamma()).is_err());
        let (aa, bb) = circle_cevian_lengths_sq(deg(50.0, 50.0), 0.3).unwrap();
        assert!((aa - bb).abs() < 1e-15);
    }

    /// Trisa from A built geometrically: rotate AB by kα towards C.
    fn trisa_oracle(t: TriangleAngles, k: f64, v: Vertex) -> Cevian {
        let f = TriangleFrame::new(t, FrameKind::MedianCentered);
        let (origin, phi) = match v {
            Vertex::A => (f.a, k * t.alpha()),
            _ => (f.b, PI - k * t.beta()),
        };
        cevian_through(&f, v, origin + Point2::new(phi.cos(), phi.sin())).unwrap()
    }

    #[test]
    fn trisa_matches_rotation_construction() {
        for (a, b, k) in [(40.0, 75.0, 0.5), (30.0, 100.0, 0.3), (20.0, 50.0, 1.7), (70.0, 40.0, -0.4)] {
            let t = deg(a, b);
            for v in [Vertex::A, Vertex::B] {
                let closed = trisa_cevian_length(t, k, v).unwrap().abs();
                let geo = trisa_oracle(t, k, v).length;
                assert!((closed - geo).abs() < 1e-12 * geo, "{a} {b} {k} {v:?}: {closed} vs {geo}");
            }
        }
    }

    #[test]
    fn trisa_special_cases() {
        let t = deg(35.0, 65.0);
        let (bc, ca, _) = t.unit_base_sides();
        assert!((trisa_cevian_length(t, 1.0, Vertex::A).unwrap() - ca).abs() < 1e-15);
        assert!((trisa_cevian_length(t, 1.0, Vertex::B).unwrap() - bc).abs() < 1e-15);
        let right = deg(25.0, 65.0);
        for v in [Vertex::A, Vertex::B] {
            assert!((trisa_cevian_length(right, 2.0, v).unwrap() - 1.0).abs() < 1e-15);
        }
        let iso = deg(50.0, 50.0);
        let la = trisa_cevian_length(iso, 0.5, Vertex::A).unwrap();
        let lb = trisa_cevian_length(iso, 0.5, Vertex::B).unwrap();
        assert_eq!(la, lb);
        // kα + β = π
        let par = deg(60.0, 60.0);
        assert_eq!(trisa_cevian_length(par, 2.0, Vertex::A), Err(Error::ParallelTrisa(Vertex::A)));
    }

    #[test]
    fn trisa_functions_at_boundary_and_limit() {
        let g = 2.0;
        let edge = PI / g - 1e-3;
        assert!(trisa_f(g, edge) > -1.0 && (trisa_f(g, edge) + 1.0) < 1e-5);
        assert!((trisa_g(g, edge) + 1.0).abs() < 1e-14);
        for g in [2.0, 3.0, 4.0, 10.0] {
            assert!((trisa_f(g, PI / g) + 1.0).abs() < 1e-12);
            assert!((trisa_g(g, PI / g) + 1.0).abs() < 1e-12);
            assert!((trisa_f(g, 1e-8) - (g + 1.0)).abs() < 1e-6);
        }
        let (f, gv) = trisa_fg(4.0, 0.3, 0.2).unwrap();
        assert!(f > -1.0 && gv < -1.0);
        assert!(trisa_fg(1.5, 0.3, 0.2).is_err());
        assert!(trisa_fg(4.0, 0.2, 0.3).is_err());
        assert!(TrisaParams::new(0.0).is_err());
        assert_eq!(TrisaParams::new(0.5).unwrap().gamma_param, 4.0);
    }

    #[test]
    fn trisa_witnesses_exist_above_one() {
        for k in [1.5, 2.0, 3.0] {
            let w = trisa_witness(k).unwrap_or_else(|| panic!("no witness for k = {k}"));
            assert!((w.length_a - w.length_b).abs() < 1e-9);
            assert!((w.alpha - w.beta).abs() > 1e-3);
            if k == 2.0 {
                assert!((w.alpha + w.beta - PI / 2.0).abs() < 1e-9);
            }
        }
    }
}
