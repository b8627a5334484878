//! Trihedral bisectors of a tetrahedron `ABCD` and the equal-bisector system.
//!
//! The base `ABC` is fixed by its angles and circumdiameter; the unknowns are
//! `x = AD`, `y = BD`, `z = CD`. The bisector from a vertex `V` meets the
//! opposite face at the point whose barycentric weights are the areas of the
//! faces through `V` opposite each remaining vertex, so by Stewart's theorem
//!
//! ```text
//! VL² = [W·Σ Sᵢ·VPᵢ² − Σ_{i<j} Sᵢ·Sⱼ·PᵢPⱼ²] / W²,   W = Σ Sᵢ.
//! ```

use nalgebra::{Matrix3, Matrix4, Matrix5, Vector3, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Vertex labels in index order.
pub const LABELS: [char; 4] = ['A', 'B', 'C', 'D'];

/// Reference result for base angles 45°, 60°, 75°, quoted to three decimals.
///
/// The edges equal `10·(sin 60°, sin 45°, sin 75°)`, which is the
/// equifacial solution for circumdiameter 10 with 60° at `A` and 45° at `B`.
/// The area is the sum over the four faces, each `29.575`.
pub const REFERENCE_EDGES: [f64; 3] = [8.660, 7.071, 9.659];
pub const REFERENCE_TOTAL_AREA: f64 = 118.301;

/// Six edge lengths; `x = AD`, `y = BD`, `z = CD`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TetraEdgeSet {
    pub ab: f64,
    pub ac: f64,
    pub bc: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Base edges `(ab, ac, bc)` for angles `[A, B, C]` and circumdiameter `d`.
pub fn base_edges(angles: [f64; 3], d: f64) -> Result<(f64, f64, f64)> {
    let sum: f64 = angles.iter().sum();
    if angles.iter().any(|a| !(*a > 0.0)) || (sum - std::f64::consts::PI).abs() > 1e-9 || !(d > 0.0) {
        return Err(Error::Domain(format!("need positive angles summing to pi and d > 0, got {angles:?}, d = {d}")));
    }
    Ok((d * angles[2].sin(), d * angles[1].sin(), d * angles[0].sin()))
}

impl TetraEdgeSet {
    /// Validated constructor: positive edges, nondegenerate faces and volume.
    pub fn new(ab: f64, ac: f64, bc: f64, x: f64, y: f64, z: f64) -> Result<Self> {
        let e = Self { ab, ac, bc, x, y, z };
        if e.as_array().iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::Domain(format!("edges must be positive, got {e:?}")));
        }
        face_areas(&e)?;
        if !e.is_nondegenerate() {
            return Err(Error::DegenerateConfiguration("Cayley-Menger determinant is not positive".into()));
        }
        Ok(e)
    }

    pub fn from_base_angles(angles: [f64; 3], d: f64, x: f64, y: f64, z: f64) -> Result<Self> {
        let (ab, ac, bc) = base_edges(angles, d)?;
        Self::new(ab, ac, bc, x, y, z)
    }

    /// Tetrahedron with opposite edges `(a, a), (b, b), (c, c)` over the
    /// triangle with `BC = a`, `CA = b`, `AB = c`. Exists exactly when the
    /// triangle is acute.
    pub fn equifacial_from_triangle(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(c, b, a, a, b, c)
    }

    pub fn regular(side: f64) -> Self {
        Self { ab: side, ac: side, bc: side, x: side, y: side, z: side }
    }

    /// Edge lengths of four points.
    pub fn from_points(p: [[f64; 3]; 4]) -> Result<Self> {
        let v: Vec<Vector3<f64>> = p.iter().map(|q| Vector3::from(*q)).collect();
        let d = |i: usize, j: usize| (v[i] - v[j]).norm();
        Self::new(d(0, 1), d(0, 2), d(1, 2), d(0, 3), d(1, 3), d(2, 3))
    }

    /// `[ab, ac, bc, ad, bd, cd]`.
    pub fn as_array(&self) -> [f64; 6] {
        [self.ab, self.ac, self.bc, self.x, self.y, self.z]
    }

    /// Length of the edge between vertices `i` and `j` (0..4 = A..D).
    pub fn edge(&self, i: usize, j: usize) -> f64 {
        match (i.min(j), i.max(j)) {
            (0, 1) => self.ab,
            (0, 2) => self.ac,
            (1, 2) => self.bc,
            (0, 3) => self.x,
            (1, 3) => self.y,
            (2, 3) => self.z,
            _ => panic!("no edge between vertices {i} and {j}"),
        }
    }

    /// Relabels so that new vertex `i` is old vertex `perm[i]`.
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        let e = |i: usize, j: usize| self.edge(perm[i], perm[j]);
        Self { ab: e(0, 1), ac: e(0, 2), bc: e(1, 2), x: e(0, 3), y: e(1, 3), z: e(2, 3) }
    }

    pub fn scale(&self) -> f64 {
        self.as_array().iter().fold(0.0, |m, v| m.max(*v))
    }

    /// `288·V²` from the Cayley–Menger determinant.
    pub fn cayley_menger(&self) -> f64 {
        let mut m = Matrix5::<f64>::from_element(1.0);
        for i in 0..4 {
            m[(i + 1, i + 1)] = 0.0;
            for j in 0..4 {
                if i != j {
                    m[(i + 1, j + 1)] = self.edge(i, j).powi(2);
                }
            }
        }
        m[(0, 0)] = 0.0;
        m.determinant()
    }

    pub fn volume(&self) -> f64 {
        (self.cayley_menger().max(0.0) / 288.0).sqrt()
    }

    fn is_nondegenerate(&self) -> bool {
        self.cayley_menger() > 1e-10 * self.scale().powi(6)
    }

    /// The nine triangle inequalities that involve `x`, `y` or `z`.
    pub fn free_constraints_hold(&self) -> bool {
        let (x, y, z) = (self.x, self.y, self.z);
        [
            (x, y, self.ab),
            (x, z, self.ac),
            (y, z, self.bc),
        ]
        .iter()
        .all(|&(p, q, r)| p + q > r && p + r > q && q + r > p)
    }

    /// Vertex coordinates with `A` at the origin, `B` on the x-axis,
    /// `C` in the xy-plane and `D` above it.
    pub fn embed(&self) -> Result<[Vector3<f64>; 4]> {
        let (ab, ac, bc) = (self.ab, self.ac, self.bc);
        let cx = (ab * ab + ac * ac - bc * bc) / (2.0 * ab);
        let cy2 = ac * ac - cx * cx;
        if cy2 <= 0.0 {
            return Err(Error::DegenerateFace("ABC"));
        }
        let cy = cy2.sqrt();
        let dx = (ab * ab + self.x * self.x - self.y * self.y) / (2.0 * ab);
        let dy = ((self.x * self.x + ac * ac - self.z * self.z) / 2.0 - dx * cx) / cy;
        let dz2 = self.x * self.x - dx * dx - dy * dy;
        if dz2 <= 0.0 {
            return Err(Error::DegenerateConfiguration("vertices are coplanar".into()));
        }
        Ok([
            Vector3::zeros(),
            Vector3::new(ab, 0.0, 0.0),
            Vector3::new(cx, cy, 0.0),
            Vector3::new(dx, dy, dz2.sqrt()),
        ])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FaceAreas {
    pub s_abc: f64,
    pub s_abd: f64,
    pub s_acd: f64,
    pub s_bcd: f64,
}

impl FaceAreas {
    /// Area of the face not containing vertex `v`.
    pub fn opposite(&self, v: usize) -> f64 {
        [self.s_bcd, self.s_acd, self.s_abd, self.s_abc][v]
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.s_abc, self.s_abd, self.s_acd, self.s_bcd]
    }

    pub fn total(&self) -> f64 {
        self.as_array().iter().sum()
    }

    /// `(max − min) / max`.
    pub fn spread(&self) -> f64 {
        relative_spread(&self.as_array())
    }
}

/// `(max − min) / max` of a set of positive values.
pub fn relative_spread(v: &[f64]) -> f64 {
    let (lo, hi) = v.iter().fold((f64::MAX, f64::MIN), |(lo, hi), x| (lo.min(*x), hi.max(*x)));
    (hi - lo) / hi.abs()
}

/// Heron's formula in the cancellation-free ordering.
fn heron(a: f64, b: f64, c: f64, name: &'static str) -> Result<f64> {
    let mut s = [a, b, c];
    s.sort_by(|p, q| q.total_cmp(p));
    let [a, b, c] = s;
    let f = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    if !(f > 0.0) {
        return Err(Error::DegenerateFace(name));
    }
    Ok(0.25 * f.sqrt())
}

pub fn face_areas(e: &TetraEdgeSet) -> Result<FaceAreas> {
    Ok(FaceAreas {
        s_abc: heron(e.ab, e.ac, e.bc, "ABC")?,
        s_abd: heron(e.ab, e.x, e.y, "ABD")?,
        s_acd: heron(e.ac, e.x, e.z, "ACD")?,
        s_bcd: heron(e.bc, e.y, e.z, "BCD")?,
    })
}

/// Squared bisector lengths `AL₁², BL₂², CL₃², DL₄²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BisectorSquares {
    pub al1_sq: f64,
    pub bl2_sq: f64,
    pub cl3_sq: f64,
    pub dl4_sq: f64,
}

impl BisectorSquares {
    pub fn as_array(&self) -> [f64; 4] {
        [self.al1_sq, self.bl2_sq, self.cl3_sq, self.dl4_sq]
    }

    pub fn spread(&self) -> f64 {
        relative_spread(&self.as_array())
    }
}

fn others(v: usize) -> [usize; 3] {
    match v {
        0 => [1, 2, 3],
        1 => [0, 2, 3],
        2 => [0, 1, 3],
        _ => [0, 1, 2],
    }
}

fn bisector_square_from(e: &TetraEdgeSet, s: &FaceAreas, v: usize) -> f64 {
    let p = others(v);
    let w = p.map(|i| s.opposite(i));
    let total: f64 = w.iter().sum();
    let spokes: f64 = (0..3).map(|i| w[i] * e.edge(v, p[i]).powi(2)).sum();
    let rim = w[0] * w[1] * e.edge(p[0], p[1]).powi(2)
        + w[0] * w[2] * e.edge(p[0], p[2]).powi(2)
        + w[1] * w[2] * e.edge(p[1], p[2]).powi(2);
    (total * spokes - rim) / (total * total)
}

pub fn bisector_squares(e: &TetraEdgeSet) -> Result<BisectorSquares> {
    let s = face_areas(e)?;
    let b = |v| bisector_square_from(e, &s, v);
    Ok(BisectorSquares { al1_sq: b(0), bl2_sq: b(1), cl3_sq: b(2), dl4_sq: b(3) })
}

/// Plane through three points as `(unit normal n, c)` with `n·p = c`,
/// oriented so that `toward` lies on the positive side.
fn plane(p: [Vector3<f64>; 3], toward: Vector3<f64>) -> (Vector3<f64>, f64) {
    let mut n = (p[1] - p[0]).cross(&(p[2] - p[0])).normalize();
    if n.dot(&(toward - p[0])) < 0.0 {
        n = -n;
    }
    (n, n.dot(&p[0]))
}

fn ray_to_plane(v: Vector3<f64>, dir: Vector3<f64>, (n, c): (Vector3<f64>, f64)) -> Result<f64> {
    let den = n.dot(&dir);
    if den.abs() < 1e-14 * dir.norm() {
        return Err(Error::DegenerateConfiguration("ray parallel to the opposite face".into()));
    }
    let t = (c - n.dot(&v)) / den;
    Ok((dir * t).norm_squared())
}

/// Squared length from each vertex along the ray making equal angles with
/// its three edges, up to the opposite face.
pub fn equal_angle_bisector_squares(e: &TetraEdgeSet) -> Result<[f64; 4]> {
    let pts = e.embed()?;
    let mut out = [0.0; 4];
    for v in 0..4 {
        let p = others(v);
        let units = p.map(|i| (pts[i] - pts[v]).normalize());
        let m = Matrix3::from_rows(&[units[0].transpose(), units[1].transpose(), units[2].transpose()]);
        let dir = m
            .lu()
            .solve(&Vector3::new(1.0, 1.0, 1.0))
            .ok_or_else(|| Error::DegenerateConfiguration("edges at a vertex are coplanar".into()))?;
        out[v] = ray_to_plane(pts[v], dir, plane(p.map(|i| pts[i]), pts[v]))?;
    }
    Ok(out)
}

/// Squared length from each vertex along the ray through the centre of
/// the inscribed sphere, up to the opposite face.
pub fn insphere_bisector_squares(e: &TetraEdgeSet) -> Result<[f64; 4]> {
    let pts = e.embed()?;
    let planes: Vec<_> = (0..4).map(|v| plane(others(v).map(|i| pts[i]), pts[v])).collect();
    // n_f·I − r = c_f for every face.
    let mut m = Matrix4::<f64>::zeros();
    let mut rhs = Vector4::<f64>::zeros();
    for (f, (n, c)) in planes.iter().enumerate() {
        for k in 0..3 {
            m[(f, k)] = n[k];
        }
        m[(f, 3)] = -1.0;
        rhs[f] = *c;
    }
    let sol = m
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::DegenerateConfiguration("face planes do not bound a tetrahedron".into()))?;
    let centre = Vector3::new(sol[0], sol[1], sol[2]);
    let mut out = [0.0; 4];
    for v in 0..4 {
        out[v] = ray_to_plane(pts[v], centre - pts[v], planes[v])?;
    }
    Ok(out)
}

/// Largest relative difference between two sets of squared lengths.
pub fn max_relative_gap(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q).abs() / p.abs().max(q.abs())).fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquifacialVerdict {
    pub equal_areas: bool,
    pub area_spread: f64,
    /// `ab = cd`, `ac = bd`, `ad = bc` within the same tolerance.
    pub opposite_edges_equal: bool,
    pub opposite_edge_spread: f64,
}

pub fn equifacial_check(e: &TetraEdgeSet, tol: f64) -> Result<EquifacialVerdict> {
    let area_spread = face_areas(e)?.spread();
    let rel = |p: f64, q: f64| (p - q).abs() / p.max(q);
    let opposite_edge_spread = rel(e.ab, e.z).max(rel(e.ac, e.y)).max(rel(e.x, e.bc));
    Ok(EquifacialVerdict {
        equal_areas: area_spread <= tol,
        area_spread,
        opposite_edges_equal: opposite_edge_spread <= tol,
        opposite_edge_spread,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverOptions {
    pub starts: usize,
    pub seed: u64,
    pub max_iter: usize,
    /// Convergence threshold on the residuals, in units of `m²`.
    pub tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { starts: 100, seed: 42, max_iter: 200, tol: 1e-10 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TetraSolution {
    pub edges: TetraEdgeSet,
    /// `max |AL₁² − XLᵢ²| / m²`.
    pub residual: f64,
    pub iterations: usize,
    pub start: [f64; 3],
    pub areas: FaceAreas,
    pub bisectors: BisectorSquares,
    pub equifacial: EquifacialVerdict,
    /// Spread of the four equal-angle ray lengths, from the coordinate construction.
    pub equal_angle_spread: f64,
    /// Spread of the four rays through the insphere centre, from the coordinate construction.
    pub insphere_spread: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub base: [f64; 3],
    pub scale: f64,
    pub starts: usize,
    pub feasible_starts: usize,
    pub converged: usize,
    pub solutions: Vec<TetraSolution>,
}

fn residuals(base: (f64, f64, f64), v: [f64; 3], m2: f64) -> Option<[f64; 3]> {
    let e = TetraEdgeSet { ab: base.0, ac: base.1, bc: base.2, x: v[0], y: v[1], z: v[2] };
    if !e.free_constraints_hold() || !e.is_nondegenerate() {
        return None;
    }
    let b = bisector_squares(&e).ok()?.as_array();
    Some([(b[0] - b[1]) / m2, (b[0] - b[2]) / m2, (b[0] - b[3]) / m2])
}

fn inf_norm(r: &[f64; 3]) -> f64 {
    r.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Damped Newton from one start; returns `(point, residual, iterations)`.
fn newton(base: (f64, f64, f64), start: [f64; 3], m: f64, opts: &SolverOptions) -> Option<([f64; 3], f64, usize)> {
    let m2 = m * m;
    let mut v = start;
    let mut r = residuals(base, v, m2)?;
    let h = 1e-6 * m;
    for it in 0..opts.max_iter {
        let norm = inf_norm(&r);
        if norm < 1e-3 * opts.tol {
            return Some((v, norm, it));
        }
        let mut jac = Matrix3::<f64>::zeros();
        for k in 0..3 {
            let (mut vp, mut vm) = (v, v);
            vp[k] += h;
            vm[k] -= h;
            let (rp, rm) = (residuals(base, vp, m2)?, residuals(base, vm, m2)?);
            for i in 0..3 {
                jac[(i, k)] = (rp[i] - rm[i]) / (2.0 * h);
            }
        }
        let step = jac.lu().solve(&Vector3::new(-r[0], -r[1], -r[2]))?;
        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let cand = [v[0] + lambda * step[0], v[1] + lambda * step[1], v[2] + lambda * step[2]];
            if let Some(rc) = residuals(base, cand, m2) {
                if inf_norm(&rc) < norm {
                    accepted = Some((cand, rc));
                    break;
                }
            }
            lambda *= 0.5;
        }
        match accepted {
            Some((cand, rc)) => {
                v = cand;
                r = rc;
            }
            // No decrease anywhere along the step: at the rounding floor or stuck.
            None => return (norm < opts.tol).then_some((v, norm, it)),
        }
    }
    let norm = inf_norm(&r);
    (norm < opts.tol).then_some((v, norm, opts.max_iter))
}

/// Multistart search for `(x, y, z)` with all four bisectors equal.
///
/// Starts are drawn uniformly from `[0.2·m, 3·m]³` (`m` the longest base
/// edge) and kept if they satisfy the triangle inequalities. Every
/// converged point is re-measured with both coordinate constructions.
pub fn solve_equal_bisectors(angles: [f64; 3], d: f64, opts: &SolverOptions) -> Result<SolveReport> {
    let base = base_edges(angles, d)?;
    let m = base.0.max(base.1).max(base.2);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut starts = Vec::with_capacity(opts.starts);
    let mut draws = 0;
    while starts.len() < opts.starts && draws < 100 * opts.starts.max(1) {
        draws += 1;
        let v = [rng.gen_range(0.2 * m..3.0 * m), rng.gen_range(0.2 * m..3.0 * m), rng.gen_range(0.2 * m..3.0 * m)];
        if residuals(base, v, m * m).is_some() {
            starts.push(v);
        }
    }

    let found: Vec<_> = starts
        .par_iter()
        .filter_map(|&s| newton(base, s, m, opts).map(|(v, res, it)| (s, v, res, it)))
        .collect();
    let converged = found.len();

    let mut solutions: Vec<TetraSolution> = Vec::new();
    for (start, v, residual, iterations) in found {
        if solutions.iter().any(|s| {
            (s.edges.x - v[0]).abs().max((s.edges.y - v[1]).abs()).max((s.edges.z - v[2]).abs()) < 1e-6 * m
        }) {
            continue;
        }
        let edges = TetraEdgeSet::new(base.0, base.1, base.2, v[0], v[1], v[2])?;
        let eq = equal_angle_bisector_squares(&edges)?;
        let ins = insphere_bisector_squares(&edges)?;
        solutions.push(TetraSolution {
            edges,
            residual,
            iterations,
            start,
            areas: face_areas(&edges)?,
            bisectors: bisector_squares(&edges)?,
            equifacial: equifacial_check(&edges, 1e-6)?,
            equal_angle_spread: relative_spread(&eq),
            insphere_spread: relative_spread(&ins),
        });
    }
    solutions.sort_by(|a, b| {
        (a.edges.x, a.edges.y, a.edges.z).partial_cmp(&(b.edges.x, b.edges.y, b.edges.z)).expect("finite edges")
    });
    if solutions.is_empty() {
        return Err(Error::NoConvergence { starts: starts.len() });
    }
    Ok(SolveReport {
        base: [base.0, base.1, base.2],
        scale: m,
        starts: opts.starts,
        feasible_starts: starts.len(),
        converged,
        solutions,
    })
}

/// Random tetrahedron from four points in the unit cube, rejecting flat ones.
pub fn random_tetrahedron<R: Rng>(rng: &mut R) -> TetraEdgeSet {
    loop {
        let p: [[f64; 3]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen::<f64>()));
        if let Ok(e) = TetraEdgeSet::from_points(p) {
            if e.volume() > 1e-3 * e.scale().powi(3) {
                return e;
            }
        }
    }
}

/// Random acute triangle sides `(a, b, c)` with the largest angle below 85°.
pub fn random_acute_triangle<R: Rng>(rng: &mut R) -> (f64, f64, f64) {
    loop {
        let a = rng.gen_range(0.2..1.5f64);
        let b = rng.gen_range(0.2..1.5f64);
        let c = rng.gen_range(0.2..1.5f64);
        let mut s = [a, b, c];
        s.sort_by(|p, q| q.total_cmp(p));
        let cos_max = (s[1] * s[1] + s[2] * s[2] - s[0] * s[0]) / (2.0 * s[1] * s[2]);
        if cos_max > 85f64.to_radians().cos() && cos_max < 1.0 {
            return (a, b, c);
        }
    }
}
