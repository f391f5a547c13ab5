//! DOT serialization of the Reeb digraph. Edges point from lower to higher
//! level; declared ends and window truncations render as distinct phantom
//! node styles.

use super::fmt_level;
use crate::reeb::{EdgeEnd, ReebGraph, TerminationKind, VertexType};
use crate::Real;
use std::fmt::Write;

fn type_label(t: VertexType) -> &'static str {
    match t {
        VertexType::Min => "Min",
        VertexType::Max => "Max",
        VertexType::Merge => "Merge",
        VertexType::Split => "Split",
        VertexType::Degree2Critical => "Deg2",
    }
}

pub fn emit_dot(g: &ReebGraph<Real>) -> String {
    let mut out = String::new();
    writeln!(out, "digraph reeb {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [fontname=\"Helvetica\"];").unwrap();
    for v in &g.vertices {
        writeln!(
            out,
            "  v{} [label=\"{}@{}\", shape=ellipse];",
            v.id,
            type_label(v.vertex_type),
            fmt_level(v.level)
        )
        .unwrap();
    }
    let end_name = |edge_id: usize, which: &str| format!("e{edge_id}_{which}");
    for e in &g.edges {
        for (end, which) in [(&e.lower, "lo"), (&e.upper, "hi")] {
            if let EdgeEnd::Open { kind, level, .. } = end {
                match kind {
                    TerminationKind::DeclaredEnd => writeln!(
                        out,
                        "  {} [label=\"end@{}\", shape=circle, style=dashed];",
                        end_name(e.id, which),
                        fmt_level(*level)
                    )
                    .unwrap(),
                    TerminationKind::WindowTruncation => writeln!(
                        out,
                        "  {} [label=\"cut@{}\", shape=box, style=dotted, color=gray];",
                        end_name(e.id, which),
                        fmt_level(*level)
                    )
                    .unwrap(),
                }
            }
        }
    }
    for e in &g.edges {
        let name = |end: &EdgeEnd<Real>, which: &str| match end {
            EdgeEnd::Vertex { id } => format!("v{id}"),
            EdgeEnd::Open { .. } => end_name(e.id, which),
        };
        let style = if e.is_compact() { "" } else { " [style=dashed]" };
        writeln!(
            out,
            "  {} -> {}{};",
            name(&e.lower, "lo"),
            name(&e.upper, "hi"),
            style
        )
        .unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}
