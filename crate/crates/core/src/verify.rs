//! Randomized property suites, one per module.
//!
//! Each suite draws its cases from its own seeded generator, so results do
//! not depend on which suites run or in what order. Tolerances are the
//! module defaults multiplied by a common factor.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::altitude::{self, RootKind};
use crate::cevian::{self, ConstraintLocus};
use crate::conic;
use crate::error::Error;
use crate::geom::{cevian_through, FrameKind, Point2, TriangleAngles, TriangleFrame, Vertex};
use crate::locus;
use crate::tetra::{self, TetraEdgeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Geom,
    Cevian,
    Altitude,
    Locus,
    Conic,
    Tetra,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Geom, Suite::Cevian, Suite::Altitude, Suite::Locus, Suite::Conic, Suite::Tetra];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Geom => "geom",
            Suite::Cevian => "cevian",
            Suite::Altitude => "altitude",
            Suite::Locus => "locus",
            Suite::Conic => "conic",
            Suite::Tetra => "tetra",
        }
    }

    fn run(self, seed: u64, tol: f64) -> Vec<Check> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(self as u64 + 1)));
        match self {
            Suite::Geom => geom_suite(&mut rng, tol),
            Suite::Cevian => cevian_suite(&mut rng, tol),
            Suite::Altitude => altitude_suite(&mut rng, tol),
            Suite::Locus => locus_suite(&mut rng, tol),
            Suite::Conic => conic_suite(&mut rng, tol),
            Suite::Tetra => tetra_suite(&mut rng, tol),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|v| v.name() == s).ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

/// Outcome of one property over its sampled cases.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    pub cases: usize,
    /// Worst observed value of the checked quantity.
    pub worst: f64,
    /// Bound the quantity had to satisfy.
    pub bound: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `worst < bound`.
    fn below(suite: Suite, name: &'static str, cases: usize, worst: f64, bound: f64) -> Self {
        Self { suite, name, cases, worst, bound, passed: cases > 0 && worst < bound }
    }

    /// Passes when no case failed; `worst` is the failure count.
    fn count(suite: Suite, name: &'static str, cases: usize, failures: usize) -> Self {
        Self { suite, name, cases, worst: failures as f64, bound: 0.0, passed: cases > 0 && failures == 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub tol_scale: f64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs `suites` in parallel; checks come back in suite order.
pub fn run(suites: &[Suite], seed: u64, tol_scale: f64) -> Report {
    let checks = suites.par_iter().map(|s| s.run(seed, tol_scale)).collect::<Vec<_>>().concat();
    Report { seed, tol_scale, checks }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

/// Angles with every vertex angle at least `min_deg` degrees.
fn random_angles<R: Rng>(rng: &mut R, min_deg: f64) -> TriangleAngles {
    let m = min_deg.to_radians();
    loop {
        let al = rng.gen_range(m..PI - 2.0 * m);
        let be = rng.gen_range(m..PI - al - m);
        if let Ok(t) = TriangleAngles::new(al, be) {
            return t;
        }
    }
}

fn random_scalene<R: Rng>(rng: &mut R, min_deg: f64, sep: f64) -> TriangleAngles {
    loop {
        let t = random_angles(rng, min_deg);
        if (t.alpha() - t.beta()).abs() > sep {
            return t;
        }
    }
}

fn random_isosceles<R: Rng>(rng: &mut R) -> TriangleAngles {
    let al = rng.gen_range(5f64.to_radians()..85f64.to_radians());
    TriangleAngles::new(al, al).expect("base angle below a right angle")
}

fn geom_suite(rng: &mut ChaCha8Rng, tol: f64) -> Vec<Check> {
    const N: usize = 1000;
    let s = Suite::Geom;
    let (mut sines, mut mirror, mut oracle) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..N {
        let t = random_angles(rng, 2.0);
        for kind in [FrameKind::MedianCentered, FrameKind::CircumUnit, FrameKind::AltitudeUnit] {
            let (a, b, c) = TriangleFrame::new(t, kind).side_lengths();
            let ra = a / t.alpha().sin();
            sines = sines.max(rel(ra, b / t.beta().sin())).max(rel(ra, c / t.gamma().sin()));
        }
        let f = TriangleFrame::new(t, FrameKind::MedianCentered);
        let g = TriangleFrame::new(t.swapped(), FrameKind::MedianCentered);
        let flip = |p: Point2| Point2::new(-p.x, p.y);
        mirror = mirror.max(g.a.dist(flip(f.b))).max(g.b.dist(flip(f.a))).max(g.c.dist(flip(f.c)));

        // Closed-form altitude and bisector from C against the construction.
        let (a, b, _) = f.side_lengths();
        let h = f.c.y;
        let bis = 2.0 * a * b * (t.gamma() / 2.0).cos() / (a + b);
        if let Ok(c) = cevian_through(&f, Vertex::C, f.altitude_foot(Vertex::C) + Point2::new(0.0, 1e-3 * h)) {
            oracle = oracle.max(rel(c.length, h));
        }
        if let Ok(c) = cevian_through(&f, Vertex::C, f.c.lerp(f.bisector_foot(Vertex::C), 0.5)) {
            oracle = oracle.max(rel(c.length, bis));
        }
    }
    vec![
        Check::below(s, "law_of_sines_all_frames", N, sines, 1e-12 * tol),
        Check::below(s, "mirror_under_swap", N, mirror, 1e-12 * tol),
        Check::below(s, "altitude_and_bisector_oracle", N, oracle, 1e-9 * tol),
    ]
}

fn cevian_suite(rng: &mut ChaCha8Rng, tol: f64) -> Vec<Check> {
    let s = Suite::Cevian;
    let mut out = Vec::new();

    for (locus, name) in [(ConstraintLocus::Bisector, "bisector_gap_keeps_sign"), (ConstraintLocus::Median, "median_gap_keeps_sign")] {
        let mut bad = 0;
        for _ in 0..200 {
            let t = random_scalene(rng, 2.0, 1e-3);
            let samples = cevian::sweep_locus(locus, t, 1000);
            if cevian::has_sign_change(&samples) || !samples.iter().any(|g| g.both_exist) {
                bad += 1;
            }
        }
        out.push(Check::count(s, name, 200, bad));
    }

    let mut iso = 0.0f64;
    for _ in 0..50 {
        let t = random_isosceles(rng);
        for locus in [ConstraintLocus::Bisector, ConstraintLocus::Median] {
            for g in cevian::sweep_locus(locus, t, 1000).iter().filter(|g| g.both_exist) {
                iso = iso.max(g.gap.abs());
            }
        }
    }
    out.push(Check::below(s, "isosceles_gap_vanishes", 50, iso, 1e-10 * tol));

    let (mut circle, mut circle_cases, mut equal) = (0.0f64, 0, 0);
    while circle_cases < 200 {
        let t = random_scalene(rng, 5.0, 1e-3);
        let tt = rng.gen_range(-PI..PI);
        let Ok((aa, bb)) = cevian::circle_cevian_lengths_sq(t, tt) else { continue };
        let f = TriangleFrame::new(t, FrameKind::CircumUnit);
        let p = cevian::circle_s_point(t, tt);
        let (Ok(ca), Ok(cb)) = (cevian_through(&f, Vertex::A, p), cevian_through(&f, Vertex::B, p)) else { continue };
        circle_cases += 1;
        circle = circle.max(rel(aa, ca.length.powi(2))).max(rel(bb, cb.length.powi(2)));
        if rel(aa, bb) < 1e-12 {
            equal += 1;
        }
    }
    out.push(Check::below(s, "circle_lengths_match_oracle", circle_cases, circle, 1e-9 * tol));
    out.push(Check::count(s, "circle_lengths_differ_when_scalene", circle_cases, equal));

    // sup g ≤ −1 < inf f (strict on both sides for γ > 2).
    let mut overlap = 0;
    for gp in [2.0, 3.0, 4.0, 10.0] {
        let (mut fmin, mut gmax) = (f64::INFINITY, f64::NEG_INFINITY);
        let edge = PI / gp;
        let mut n = 0;
        while n < 10_000 {
            let t = rng.gen_range(0.0..edge);
            let tau = rng.gen_range(0.0..edge);
            let Ok((fv, gv)) = cevian::trisa_fg(gp, t.max(tau), t.min(tau)) else { continue };
            n += 1;
            fmin = fmin.min(fv);
            gmax = gmax.max(gv);
        }
        let strict_g = gp > 2.0;
        if !(fmin > -1.0) || gmax > -1.0 + 1e-15 * tol || (strict_g && !(gmax < -1.0)) {
            overlap += 1;
        }
    }
    out.push(Check::count(s, "trisa_ranges_disjoint", 4, overlap));

    let mut missing = 0;
    for k in [1.5, 2.0, 3.0] {
        match cevian::trisa_witness(k) {
            Some(w) if (w.length_a - w.length_b).abs() < 1e-9 * tol => {
                let gamma = PI - w.alpha - w.beta;
                if k == 2.0 && (gamma - PI / 2.0).abs() > 1e-6 {
                    missing += 1;
                }
            }
            _ => missing += 1,
        }
    }
    out.push(Check::count(s, "trisa_witnesses_above_one", 3, missing));

    let (mut trisa, mut trisa_cases) = (0.0f64, 0);
    while trisa_cases < 200 {
        let t = random_angles(rng, 5.0);
        let k = rng.gen_range(-1.0..2.0);
        let f = TriangleFrame::new(t, FrameKind::MedianCentered);
        for v in [Vertex::A, Vertex::B] {
            let Ok(closed) = cevian::trisa_cevian_length(t, k, v) else { continue };
            let (origin, phi) = match v {
                Vertex::A => (f.a, k * t.alpha()),
                _ => (f.b, PI - k * t.beta()),
            };
            let Ok(c) = cevian_through(&f, v, origin + Point2::new(phi.cos(), phi.sin())) else { continue };
            trisa = trisa.max(rel(closed.abs(), c.length));
        }
        trisa_cases += 1;
    }
    out.push(Check::below(s, "trisa_length_matches_oracle", trisa_cases, trisa, 1e-9 * tol));
    out
}

fn altitude_suite(rng: &mut ChaCha8Rng, tol: f64) -> Vec<Check> {
    const N: usize = 500;
    let s = Suite::Altitude;
    let (mut vieta, mut acute_bad, mut geo, mut swap) = (0.0f64, 0, 0.0f64, 0.0f64);
    let mut acute_cases = 0;
    for _ in 0..N {
        let t = random_scalene(rng, 5.0, 1e-3);
        let c = altitude::build_cubic(t).expect("scalene");
        let cls = altitude::classify(&c);
        let scale = 1f64.max(c.p().abs()).max(c.q().abs());
        match cls.roots[..] {
            [r0, r1, r2] => {
                vieta = vieta.max((r0 + r1 + r2).abs() / scale).max((r0 * r1 * r2 + c.q()).abs() / scale.powf(1.5));
            }
            [r] => vieta = vieta.max((r * (r * r + c.p()) + c.q()).abs() / scale.powf(1.5)),
            _ => vieta = f64::INFINITY,
        }
        if t.alpha() < PI / 2.0 && t.beta() < PI / 2.0 && t.gamma() < PI / 2.0 {
            acute_cases += 1;
            if cls.positive_roots().iter().any(|&y| y >= 1.0) {
                acute_bad += 1;
            }
        }
        for y in cls.admissible_roots() {
            match altitude::verify_root_geometric(t, y) {
                Ok(g) => geo = geo.max(g.sine_rule).max(g.intersection),
                Err(_) => geo = f64::INFINITY,
            }
        }
        let cs = altitude::build_cubic(t.swapped()).expect("scalene");
        let clss = altitude::classify(&cs);
        swap = swap.max(rel(c.u, cs.u)).max(rel(c.v, cs.v)).max(rel(cls.discriminant, clss.discriminant));
        if cls.roots.len() != clss.roots.len() {
            swap = f64::INFINITY;
        } else {
            for (a, b) in cls.roots.iter().zip(&clss.roots) {
                swap = swap.max((a - b).abs());
            }
        }
    }

    // (u, v) grid with v ≥ 2|u|, skipping the zero band of the discriminant.
    let (mut grid_cases, mut grid_bad) = (0, 0);
    for i in 0..=60 {
        for j in 0..=60 {
            let u = -3.0 + 6.0 * i as f64 / 60.0;
            let v = 6.0 * j as f64 / 60.0;
            if v < 2.0 * u.abs() {
                continue;
            }
            let c = altitude::AltitudeCubic { u, v };
            if c.discriminant().abs() <= 1e3 * c.discriminant_band() {
                continue;
            }
            grid_cases += 1;
            let one = altitude::classify(&c).kind == RootKind::OneReal;
            if one != altitude::one_real_root_criterion(u, v) {
                grid_bad += 1;
            }
        }
    }
    vec![
        Check::below(s, "vieta_relations", N, vieta, 1e-12 * tol),
        Check::count(s, "classification_matches_criterion", grid_cases, grid_bad),
        Check::count(s, "acute_roots_below_apex", acute_cases, acute_bad),
        Check::below(s, "roots_pass_geometric_check", N, geo, 1e-8 * tol),
        Check::below(s, "invariant_under_swap", N, swap, 1e-12 * tol),
    ]
}

fn locus_suite(rng: &mut ChaCha8Rng, tol: f64) -> Vec<Check> {
    const N: usize = 100;
    let s = Suite::Locus;
    let (mut zero_set, mut factor, mut ab_roots, mut y_axis, mut mirror) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..N {
        let t = random_scalene(rng, 5.0, 1e-3);
        let f = locus::implicit_coeffs(t);
        let l0 = locus::altitude_bound(t);
        for _ in 0..5 {
            let l = l0 * (1.0 + rng.gen_range(1e-4..10.0f64));
            if let Ok(pts) = locus::parametric_points(t, l) {
                for c in pts {
                    zero_set = zero_set.max(f.relative_residual(c.point));
                }
            }
        }
        for _ in 0..5 {
            let (x, y) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let full = locus::cross_multiplied_locus(t, x, y);
            let r = 1f64.max(x.abs()).max(y.abs()).powi(4);
            factor = factor.max((full - y * f.eval(x, y)).abs() / r);
            factor = factor.max(locus::cross_multiplied_locus(t, x, 0.0).abs() / r);
            let g = locus::implicit_coeffs(t.swapped());
            mirror = mirror.max((f.eval(x, y) + g.eval(-x, y)).abs() / (r * f.coeff_scale()));
        }
        let [c3, c2, c1, c0] = f.restrict_to_x_axis();
        let e = locus::special_points(t).e.x;
        for x in [-0.5, 0.5, e] {
            ab_roots = ab_roots.max((((c3 * x + c2) * x + c1) * x + c0).abs() / f.coeff_scale());
        }
        // Single real root y_N: deflating it leaves y² + 1/4.
        let [d3, d2, d1, d0] = f.restrict_to_y_axis();
        let yn = locus::special_points(t).n.y;
        let (a1, a0) = (d2 / d3 + yn, (d1 + (d2 + d3 * yn) * yn) / d3);
        let resid = (((d3 * yn + d2) * yn + d1) * yn + d0).abs() / f.coeff_scale();
        y_axis = y_axis.max(resid).max(a1.abs()).max((a0 - 0.25).abs());
    }

    let (mut circle, mut radius, mut fact) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..20 {
        let t = random_isosceles(rng);
        let al = t.alpha();
        let c = locus::isosceles_locus(al).expect("acute base angle");
        let f = locus::implicit_coeffs(t);
        radius = radius.max(rel(c.radius, 1.0 / (2.0 * t.gamma().sin())));
        let k = 2.0 * al.sin().powi(2) * (2.0 * al).sin();
        for _ in 0..20 {
            let th = rng.gen_range(-PI..PI);
            let p = c.center + Point2::new(th.cos(), th.sin()) * c.radius;
            circle = circle.max(f.eval_at(p).abs());
            let (x, y) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let circ = x * x + (y - c.center.y).powi(2) - c.radius * c.radius;
            fact = fact.max((f.eval(x, y) + x * k * circ).abs());
        }
    }
    vec![
        Check::below(s, "parametric_samples_on_cubic", N, zero_set, 1e-8 * tol),
        Check::below(s, "base_line_factor", N, factor, 1e-12 * tol),
        Check::below(s, "base_line_roots", N, ab_roots, 1e-12 * tol),
        Check::below(s, "axis_single_root", N, y_axis, 1e-10 * tol),
        Check::below(s, "mirror_under_swap", N, mirror, 1e-12 * tol),
        Check::below(s, "isosceles_circle_on_cubic", 20, circle, 1e-10 * tol),
        Check::below(s, "isosceles_circle_radius", 20, radius, 1e-12 * tol),
        Check::below(s, "isosceles_factorization", 20, fact, 1e-12 * tol),
    ]
}

/// Random valid `(angles, l)` for the six-feet construction.
pub fn random_six_feet<R: Rng>(rng: &mut R) -> conic::SixFeet {
    loop {
        let t = random_angles(rng, 10.0);
        let f = TriangleFrame::new(t, FrameKind::MedianCentered);
        let hmax = Vertex::ALL.iter().map(|&v| f.vertex(v).dist(f.altitude_foot(v))).fold(0.0, f64::max);
        let l = hmax * (1.0 + rng.gen_range(0.02..1.5));
        match conic::six_feet(t, l) {
            Ok(feet) => return feet,
            Err(Error::VertexFoot(_)) => continue,
            Err(e) => panic!("valid sample rejected: {e}"),
        }
    }
}

fn conic_suite(rng: &mut ChaCha8Rng, tol: f64) -> Vec<Check> {
    const N: usize = 200;
    let s = Suite::Conic;
    let (mut carnot, mut sixth, mut spread, mut ids) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..N {
        let feet = random_six_feet(rng);
        carnot = carnot.max(conic::carnot_product(&feet).map_or(f64::INFINITY, |p| (p - 1.0).abs()));
        let holdout = conic::holdout_residuals(&feet).map_or(f64::INFINITY, |r| r.iter().fold(0.0, |m, v| m.max(*v)));
        let fit = conic::fit_conic(&feet).map_or(f64::INFINITY, |f| f.residual);
        sixth = sixth.max(holdout).max(fit);
        spread = spread.max(conic::choice_spread(&feet).unwrap_or(f64::INFINITY));
        for id in conic::product_identities(&feet) {
            ids = ids.max(id.relative_error());
        }
    }
    vec![
        Check::below(s, "carnot_product_is_one", N, carnot, 1e-10 * tol),
        Check::below(s, "sixth_point_on_conic", N, sixth, 1e-8 * tol),
        Check::below(s, "choice_independence", N, spread, 1e-7 * tol),
        Check::below(s, "power_of_point_identities", N, ids, 1e-10 * tol),
    ]
}

/// Worst relative gap between the four squared bisectors and the
/// equal-edge-angle and insphere-ray constructions over `n` random tetrahedra.
pub fn tetra_oracle_gaps<R: Rng>(rng: &mut R, n: usize) -> (f64, f64) {
    let (mut eq, mut ins) = (0.0f64, 0.0f64);
    for _ in 0..n {
        let e = tetra::random_tetrahedron(rng);
        let b = tetra::bisector_squares(&e).expect("valid tetrahedron").as_array();
        eq = eq.max(tetra::equal_angle_bisector_squares(&e).map_or(f64::INFINITY, |o| tetra::max_relative_gap(&b, &o)));
        ins = ins.max(tetra::insphere_bisector_squares(&e).map_or(f64::INFINITY, |o| tetra::max_relative_gap(&b, &o)));
    }
    (eq, ins)
}

fn permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| p.contains(&i)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn tetra_suite(rng: &mut ChaCha8Rng, tol: f64) -> Vec<Check> {
    let s = Suite::Tetra;
    let (eq, ins) = tetra_oracle_gaps(rng, 100);

    let mut sym = 0.0f64;
    let perms = permutations();
    for _ in 0..100 {
        let e = tetra::random_tetrahedron(rng);
        let b = tetra::bisector_squares(&e).expect("valid tetrahedron").as_array();
        for p in &perms {
            let pb = tetra::bisector_squares(&e.permuted(*p)).expect("valid tetrahedron").as_array();
            for i in 0..4 {
                sym = sym.max(rel(pb[i], b[p[i]]));
            }
        }
    }

    let mut equi = 0.0f64;
    for _ in 0..50 {
        let (a, b, c) = tetra::random_acute_triangle(rng);
        let e = TetraEdgeSet::equifacial_from_triangle(a, b, c).expect("acute triangle");
        equi = equi.max(tetra::bisector_squares(&e).expect("valid").spread());
    }

    let opts = tetra::SolverOptions { starts: 100, seed: rng.gen(), ..Default::default() };
    let angles = [45f64, 60.0, 75.0].map(f64::to_radians);
    let (sound, cases) = match tetra::solve_equal_bisectors(angles, 1.0, &opts) {
        Ok(r) => {
            let worst = r
                .solutions
                .iter()
                .map(|s| s.equal_angle_spread.max(s.insphere_spread).max(s.residual))
                .fold(0.0, f64::max);
            (worst, r.solutions.len())
        }
        Err(_) => (f64::INFINITY, 0),
    };

    vec![
        Check::below(s, "stewart_form_matches_equal_edge_angle_ray", 100, eq, 1e-8 * tol),
        Check::below(s, "stewart_form_matches_insphere_ray", 100, ins, 1e-8 * tol),
        Check::below(s, "relabelling_permutes_bisectors", 100, sym, 1e-12 * tol),
        Check::below(s, "equifacial_bisectors_equal", 50, equi, 1e-9 * tol),
        Check::below(s, "solver_solutions_pass_oracles", cases, sound, 1e-8 * tol),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_parse_and_print() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn runs_are_reproducible() {
        let a = run(&[Suite::Geom], 9, 1.0);
        let b = run(&[Suite::Geom], 9, 1.0);
        assert_eq!(a, b);
        assert!(a.all_passed());
    }

    #[test]
    fn suite_results_do_not_depend_on_company() {
        let alone = run(&[Suite::Conic], 3, 1.0);
        let together = run(&[Suite::Geom, Suite::Conic], 3, 1.0);
        assert_eq!(alone.checks[..], together.checks[3..]);
    }

    #[test]
    fn tight_tolerance_fails() {
        let r = run(&[Suite::Geom], 1, 1e-12);
        assert!(!r.all_passed());
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations().len(), 24);
    }
}
