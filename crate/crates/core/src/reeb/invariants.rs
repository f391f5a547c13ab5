//! Canonical comparison key for Reeb graphs: type counts, compact edge count,
//! open terminations, first Betti number, vertex levels, degree multiset.

use super::{EdgeEnd, ReebGraph, TerminationKind, VertexType};
use crate::scalar::Scalar;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphInvariants {
    pub vertex_counts: BTreeMap<String, usize>,
    pub e_compact: usize,
    pub open_terminations: BTreeMap<String, usize>,
    /// First Betti number of the graph with open ends closed off by phantom
    /// leaf vertices (so a single open-open edge contributes 0).
    pub b1: usize,
    pub connected_components: usize,
    /// Vertex levels rounded to 1e-6, in micro-units, sorted.
    pub levels_micro: Vec<i64>,
    pub degree_multiset: Vec<usize>,
}

fn type_name(t: VertexType) -> &'static str {
    match t {
        VertexType::Min => "min",
        VertexType::Max => "max",
        VertexType::Merge => "merge",
        VertexType::Split => "split",
        VertexType::Degree2Critical => "degree2_critical",
    }
}

fn kind_name(k: TerminationKind) -> &'static str {
    match k {
        TerminationKind::DeclaredEnd => "declared_end",
        TerminationKind::WindowTruncation => "window_truncation",
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

pub fn graph_invariants<S: Scalar>(g: &ReebGraph<S>) -> GraphInvariants {
    let mut vertex_counts: BTreeMap<String, usize> = BTreeMap::new();
    for v in &g.vertices {
        *vertex_counts
            .entry(type_name(v.vertex_type).to_string())
            .or_insert(0) += 1;
    }
    let e_compact = g.edges.iter().filter(|e| e.is_compact()).count();
    let mut open_terminations: BTreeMap<String, usize> = BTreeMap::new();
    for (_, end) in g.open_terminations() {
        if let EdgeEnd::Open { kind, .. } = end {
            *open_terminations
                .entry(kind_name(*kind).to_string())
                .or_insert(0) += 1;
        }
    }

    // phantom leaf vertices close off open ends
    let n_open: usize = open_terminations.values().sum();
    let n_nodes = g.vertices.len() + n_open;
    let mut uf = UnionFind::new(n_nodes.max(1));
    let mut next_phantom = g.vertices.len();
    for e in &g.edges {
        let node = |end: &EdgeEnd<S>, next_phantom: &mut usize| -> usize {
            match end {
                EdgeEnd::Vertex { id } => *id,
                EdgeEnd::Open { .. } => {
                    let id = *next_phantom;
                    *next_phantom += 1;
                    id
                }
            }
        };
        let a = node(&e.lower, &mut next_phantom);
        let b = node(&e.upper, &mut next_phantom);
        uf.union(a, b);
    }
    let mut roots: Vec<usize> = (0..n_nodes).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    let connected_components = if n_nodes == 0 { 0 } else { roots.len() };
    let b1 = (g.edges.len() + connected_components).saturating_sub(n_nodes);

    let mut levels_micro: Vec<i64> = g
        .vertices
        .iter()
        .map(|v| {
            let lv = v.level.to_f64().unwrap_or(f64::NAN) * 1e6;
            lv.round() as i64
        })
        .collect();
    levels_micro.sort_unstable();

    let mut degree_multiset: Vec<usize> = g.vertices.iter().map(|v| g.degree(v.id)).collect();
    degree_multiset.sort_unstable();

    GraphInvariants {
        vertex_counts,
        e_compact,
        open_terminations,
        b1,
        connected_components,
        levels_micro,
        degree_multiset,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonOutcome {
    pub equal: bool,
    pub first_discrepancy: Option<String>,
}

/// Compares the invariants of two graphs, matching vertex levels within
/// `level_tol`. Reports the first discrepancy found.
pub fn compare_graphs<S: Scalar>(
    a: &ReebGraph<S>,
    b: &ReebGraph<S>,
    level_tol: S,
) -> ComparisonOutcome {
    let ia = graph_invariants(a);
    let ib = graph_invariants(b);
    let fail = |msg: String| ComparisonOutcome {
        equal: false,
        first_discrepancy: Some(msg),
    };
    if ia.vertex_counts != ib.vertex_counts {
        return fail(format!(
            "vertex counts differ: {:?} vs {:?}",
            ia.vertex_counts, ib.vertex_counts
        ));
    }
    if ia.e_compact != ib.e_compact {
        return fail(format!(
            "compact edge counts differ: {} vs {}",
            ia.e_compact, ib.e_compact
        ));
    }
    if ia.open_terminations != ib.open_terminations {
        return fail(format!(
            "open terminations differ: {:?} vs {:?}",
            ia.open_terminations, ib.open_terminations
        ));
    }
    if ia.b1 != ib.b1 {
        return fail(format!("b1 differs: {} vs {}", ia.b1, ib.b1));
    }
    if ia.connected_components != ib.connected_components {
        return fail(format!(
            "component counts differ: {} vs {}",
            ia.connected_components, ib.connected_components
        ));
    }
    if ia.degree_multiset != ib.degree_multiset {
        return fail(format!(
            "degree multisets differ: {:?} vs {:?}",
            ia.degree_multiset, ib.degree_multiset
        ));
    }
    let mut la: Vec<f64> = a
        .vertices
        .iter()
        .map(|v| v.level.to_f64().unwrap_or(f64::NAN))
        .collect();
    let mut lb: Vec<f64> = b
        .vertices
        .iter()
        .map(|v| v.level.to_f64().unwrap_or(f64::NAN))
        .collect();
    la.sort_by(|x, y| x.partial_cmp(y).expect("finite levels"));
    lb.sort_by(|x, y| x.partial_cmp(y).expect("finite levels"));
    let tol = level_tol.to_f64().unwrap_or(0.0);
    for (x, y) in la.iter().zip(&lb) {
        if (x - y).abs() > tol {
            return fail(format!("vertex level {x} vs {y} beyond tolerance {tol}"));
        }
    }
    ComparisonOutcome {
        equal: true,
        first_discrepancy: None,
    }
}
