//! Equal-cevian criteria for isosceles triangles.
//!
//! Two cevians from `A` and `B` of equal length that meet on the bisector
//! or the median from `C`, on the reflected circumcircle, or that are
//! `k`-trisas with `0 < k ≤ 1`, force `CA = CB`. On the altitude the
//! situation is governed by a depressed cubic, and in general the meeting
//! points trace a cubic curve. This crate computes all of these objects and
//! checks them numerically against an independent line-intersection
//! construction. The [`tetra`] module carries the three-dimensional
//! analogue for trihedral bisectors of a tetrahedron.
//!
//! Modules:
//! - [`geom`]: frames, points and the intersection oracle
//! - [`cevian`]: gap functions along constraint loci, circle and trisa formulas
//! - [`altitude`]: the altitude cubic and its real roots
//! - [`locus`]: the implicit cubic locus, asymptote, node and plotting
//! - [`conic`]: six equal cevians and the conic through their feet
//! - [`tetra`]: bisector lengths and the equal-bisector system of a tetrahedron
//! - [`verify`]: randomized property suites used by the CLI

// `!(x > 0.0)` guards also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod altitude;
pub mod cevian;
pub mod conic;
pub mod error;
pub mod geom;
pub mod locus;
pub mod numfmt;
mod plot;
pub mod tetra;
pub mod verify;

pub use error::{Error, Result};
pub use geom::{Cevian, FrameKind, Point2, TriangleAngles, TriangleFrame, Vertex};
