//! Reeb digraph of the height function, built by sweeping event levels and
//! tracking connected components of the planar interlevel set
//! `S(t) = {x : c1(x) <= t <= c2(x)}`.

pub mod invariants;
pub mod level;
pub mod sweep;

pub use invariants::{compare_graphs, graph_invariants, ComparisonOutcome, GraphInvariants};
pub use level::level_components;
pub use sweep::{build_reeb_graph, SweepParams};

use crate::expr::DomainError;
use crate::interval::Interval;
use crate::scalar::Scalar;
use crate::surface::CurveId;
use serde::Serialize;
use thiserror::Error;

/// What supplies a component endpoint: a root on one of the boundary curves,
/// or the analysis window edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Carrier {
    Curve1,
    Curve2,
    WindowEdge,
}

impl Carrier {
    pub fn from_curve(c: CurveId) -> Self {
        match c {
            CurveId::Curve1 => Carrier::Curve1,
            CurveId::Curve2 => Carrier::Curve2,
        }
    }
}

/// One connected component of `S(t)`, as a closed x-interval (possibly a
/// single point) with endpoint carriers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComponentInterval<S> {
    pub lo: S,
    pub hi: S,
    pub lo_carrier: Carrier,
    pub hi_carrier: Carrier,
    pub is_point: bool,
}

impl<S: Scalar> ComponentInterval<S> {
    pub fn point(x: S, carrier: Carrier) -> Self {
        ComponentInterval {
            lo: x,
            hi: x,
            lo_carrier: carrier,
            hi_carrier: carrier,
            is_point: true,
        }
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn contains_x(&self, x: S, slack: S) -> bool {
        self.lo - slack <= x && x <= self.hi + slack
    }

    pub fn spans_window(&self, window: &Interval<S>) -> bool {
        !self.is_point
            && self.lo_carrier == Carrier::WindowEdge
            && self.hi_carrier == Carrier::WindowEdge
            && self.lo <= window.lo()
            && self.hi >= window.hi()
    }
}

/// All components of `S(t)` at one level, sorted by `lo` and disjoint.
#[derive(Debug, Clone, Serialize)]
pub struct LevelComponents<S> {
    pub t: S,
    pub components: Vec<ComponentInterval<S>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexType {
    Min,
    Max,
    Merge,
    Split,
    Degree2Critical,
}

/// A critical point witnessing a vertex: which curve, where, at what value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness<S> {
    pub curve: CurveId,
    pub x: S,
    pub value: S,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReebVertex<S> {
    pub id: usize,
    pub level: S,
    pub vertex_type: VertexType,
    pub witnesses: Vec<Witness<S>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminationKind {
    /// A genuine ray of the Reeb space, certified by tail declarations.
    DeclaredEnd,
    /// An artifact of the finite analysis window.
    WindowTruncation,
}

/// Which direction a truncated contour track leaves the window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EscapeSide {
    NegX,
    PosX,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeEnd<S> {
    Vertex { id: usize },
    Open {
        kind: TerminationKind,
        escape: Option<EscapeSide>,
        level: S,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Breadcrumb<S> {
    pub t: S,
    pub component: ComponentInterval<S>,
}

/// One edge of the digraph, oriented from `lower` to `upper` level.
#[derive(Debug, Clone, Serialize)]
pub struct ReebEdge<S> {
    pub id: usize,
    pub lower: EdgeEnd<S>,
    pub upper: EdgeEnd<S>,
    pub breadcrumbs: Vec<Breadcrumb<S>>,
}

impl<S: Scalar> ReebEdge<S> {
    pub fn is_compact(&self) -> bool {
        matches!(self.lower, EdgeEnd::Vertex { .. }) && matches!(self.upper, EdgeEnd::Vertex { .. })
    }
}

/// The swept digraph. Vertices sit at critical contours; open terminations
/// are recorded, never silently closed.
#[derive(Debug, Clone, Serialize)]
pub struct ReebGraph<S> {
    pub vertices: Vec<ReebVertex<S>>,
    pub edges: Vec<ReebEdge<S>>,
    pub window: Interval<S>,
    pub m: usize,
    pub t_range: Interval<S>,
}

impl<S: Scalar> ReebGraph<S> {
    /// Degree of a vertex counting all incident edge ends.
    pub fn degree(&self, vertex_id: usize) -> usize {
        self.edges
            .iter()
            .map(|e| {
                let mut d = 0;
                if matches!(e.lower, EdgeEnd::Vertex { id } if id == vertex_id) {
                    d += 1;
                }
                if matches!(e.upper, EdgeEnd::Vertex { id } if id == vertex_id) {
                    d += 1;
                }
                d
            })
            .sum()
    }

    pub fn open_terminations(&self) -> impl Iterator<Item = (&ReebEdge<S>, &EdgeEnd<S>)> {
        self.edges.iter().flat_map(|e| {
            [&e.lower, &e.upper]
                .into_iter()
                .filter(|end| matches!(end, EdgeEnd::Open { .. }))
                .map(move |end| (e, end))
        })
    }
}

#[derive(Debug, Clone, Error)]
pub enum SweepError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("root ambiguity at level {t}: breakpoints closer than root_tol near x = {x}")]
    RootAmbiguity { t: f64, x: f64 },
    #[error("sweep inconsistency: {0}")]
    Inconsistent(String),
}
