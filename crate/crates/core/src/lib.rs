//! Reeb digraphs for sandwich surfaces.
//!
//! Given two smooth boundary functions `c1 < c2` on the real line, the zero
//! set of `(x1 - c1(x2)) * (c2(x2) - x1) - |y|^2` in `R^(m+1)` is a smooth
//! `m`-manifold squeezed between the two function graphs. This crate builds
//! the Reeb digraph of the height coordinate `x1` on that surface by a
//! critical-value sweep over the planar shadow `S(t) = {x : c1(x) <= t <= c2(x)}`,
//! checks the construction numerically (manifold regularity, critical-point
//! correspondence, an independent grid oracle), and classifies the full Reeb
//! space as a finite graph, an infinite graph, a graph with ends, or not a
//! CW graph at all, with a clause-level certificate for the verdict.
//!
//! The numeric kernel is generic over the scalar type (see [`scalar::Scalar`]);
//! the pipeline and file formats use `f64` via the aliases below.

pub mod classify;
pub mod config;
pub mod expr;
pub mod funcspec;
pub mod interval;
pub mod oracle;
pub mod pipeline;
pub mod reeb;
pub mod render;
pub mod scalar;
pub mod surface;

pub use scalar::Scalar;

/// Scalar type used by the CLI pipeline and all file formats.
pub type Real = f64;

/// Concrete aliases for the `f64` instantiation of the numeric kernel.
pub type Expr64 = expr::Expr<Real>;
pub type Interval64 = interval::Interval<Real>;
pub type FunctionSpec64 = funcspec::FunctionSpec<Real>;
pub type ReebGraph64 = reeb::ReebGraph<Real>;
pub type Verdict64 = classify::Verdict<Real>;
