use thiserror::Error;

use crate::geom::Vertex;

/// Everything that can go wrong in this crate.
///
/// Most variants mark a geometric degeneracy that the underlying
/// formulas cannot handle (a division by a vanishing sine, two parallel
/// lines, a foot landing on a vertex) rather than a numerical failure.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("cevian from {0:?} is parallel to the opposite side")]
    ParallelCevian(Vertex),

    #[error("cevian from {0:?} lands on a vertex of the opposite side")]
    FootAtVertex(Vertex),

    #[error("the point defining the cevian coincides with vertex {0:?}")]
    CoincidentPoint(Vertex),

    #[error("degenerate ratio p:q = {p}:{q}")]
    DegenerateRatio { p: f64, q: f64 },

    #[error("degenerate circle parameter t = {0}")]
    DegenerateT(f64),

    #[error("k-trisa from {0:?} is parallel to the opposite side")]
    ParallelTrisa(Vertex),

    #[error("the triangle is isosceles (alpha = beta)")]
    IsoscelesDegenerate,

    #[error("cevians from A and B do not intersect")]
    NoIntersection,

    #[error("a foot coincides with vertex {0:?}")]
    VertexFoot(Vertex),

    #[error("zero denominator in ratio at vertex {0:?}")]
    ZeroDenominator(Vertex),

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("degenerate face {0}")]
    DegenerateFace(&'static str),

    #[error("no start converged ({starts} starts tried)")]
    NoConvergence { starts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
