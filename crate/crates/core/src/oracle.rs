//! Brute-force ground truth: the quotient graph of a dense planar
//! rasterization of the region, independent of the sweep's component logic.
//!
//! Columns are membership runs of x-samples at fixed levels (the shared event
//! levels plus midpoints, refined adaptively where runs drift apart faster
//! than adjacent columns can track); runs of adjacent columns link by
//! x-overlap, constant chains contract to edges, and witnessed event runs
//! become vertices.

use crate::expr::DomainError;
use crate::funcspec::{pair::tail_overlap_unbounded, FunctionSpec, TailSide};
use crate::interval::Interval;
use crate::reeb::sweep::collect_events;
use crate::reeb::{
    Breadcrumb, Carrier, ComponentInterval, EdgeEnd, EscapeSide, ReebEdge, ReebGraph, ReebVertex,
    SweepError, SweepParams, TerminationKind, VertexType, Witness,
};
use crate::scalar::{s, Scalar};
use thiserror::Error;

pub use crate::reeb::{compare_graphs, ComparisonOutcome};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error("resolution warning at level {t}: two runs separated by fewer than 4 samples (double nx)")]
    ResolutionWarning { t: f64 },
    #[error("oracle inconsistency: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, Copy)]
struct Run {
    first: usize,
    last: usize,
}

#[derive(Debug, Clone)]
struct Column<S> {
    t: S,
    event: Option<usize>,
    runs: Vec<Run>,
}

fn column_runs<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    xs: &[S],
    t: S,
    slack: S,
    is_event: bool,
) -> Result<Vec<Run>, OracleError> {
    let mut runs: Vec<Run> = Vec::new();
    let mut start: Option<usize> = None;
    let warn = || OracleError::ResolutionWarning {
        t: t.to_f64().unwrap_or(f64::NAN),
    };
    for (i, &x) in xs.iter().enumerate() {
        let inside = c1.eval(x).map_err(OracleError::from)? <= t + slack
            && t <= c2.eval(x).map_err(OracleError::from)? + slack;
        if inside && start.is_none() {
            start = Some(i);
        }
        let run_ends = start.is_some() && (i + 1 == xs.len() || {
            let xn = xs[i + 1];
            !(c1.eval(xn).map_err(OracleError::from)? <= t + slack
                && t <= c2.eval(xn).map_err(OracleError::from)? + slack)
        });
        if inside && run_ends {
            let s0 = start.take().unwrap();
            if let Some(prev) = runs.last() {
                if s0 - prev.last < 4 {
                    return Err(warn());
                }
            }
            // a single-sample run away from the event levels is a band
            // thinner than the grid spacing
            if !is_event && i == s0 {
                return Err(warn());
            }
            runs.push(Run { first: s0, last: i });
        }
        if !inside {
            start = None;
        }
    }
    Ok(runs)
}

fn overlaps<S: Scalar>(xs: &[S], a: &Run, b: &Run) -> bool {
    xs[a.first] <= xs[b.last] && xs[b.first] <= xs[a.last]
}

/// Runs the oracle, doubling the x-resolution whenever a resolution warning
/// fires, up to a hard cap. Returns the graph with the resolution that
/// succeeded.
pub fn oracle_reeb_graph_auto<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    window: Interval<S>,
    nx_start: usize,
    m: usize,
    p: &SweepParams<S>,
) -> Result<(ReebGraph<S>, usize), OracleError> {
    let mut nx = nx_start.max(2048);
    loop {
        match oracle_reeb_graph(c1, c2, window, nx, m, p) {
            Ok(g) => return Ok((g, nx)),
            Err(OracleError::ResolutionWarning { .. }) if nx < (1 << 17) => nx *= 2,
            Err(e) => return Err(e),
        }
    }
}

/// Builds the oracle quotient graph. `nx` is the uniform x-resolution (the
/// abscissas of the shared critical points are injected so that touch
/// contours are visible at event columns); event levels come from the shared
/// critical-value list.
pub fn oracle_reeb_graph<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    window: Interval<S>,
    nx: usize,
    m: usize,
    p: &SweepParams<S>,
) -> Result<ReebGraph<S>, OracleError> {
    assert!(nx >= 2048, "oracle resolution too low");
    let events = collect_events(c1, c2, window, p.level_merge_tol)?;
    if events.is_empty() {
        return Err(OracleError::Inconsistent("no event levels".into()));
    }
    let t_range = Interval::new(events[0].level, events.last().unwrap().level);

    // x-samples: uniform grid plus critical abscissas
    let dx = window.width() / s::<S>(nx as f64);
    let mut xs: Vec<S> = (0..=nx)
        .map(|i| window.lo() + dx * s::<S>(i as f64))
        .collect();
    for f in [c1, c2] {
        for cp in f.critical_points() {
            if cp.x >= window.lo() && cp.x <= window.hi() {
                xs.push(cp.x);
            }
        }
    }
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    xs.dedup_by(|a, b| *a == *b);

    let slack = p.root_tol;
    let half = s::<S>(0.5);

    // columns: events plus slab midpoints; event columns widen the membership
    // slack by the merged group spread so every witnessed contour is visible
    let mut columns: Vec<Column<S>> = Vec::new();
    for (j, ev) in events.iter().enumerate() {
        columns.push(Column {
            t: ev.level,
            event: Some(j),
            runs: column_runs(c1, c2, &xs, ev.level, slack + ev.spread, true)?,
        });
        if j + 1 < events.len() {
            let mid = ev.level * half + events[j + 1].level * half;
            columns.push(Column {
                t: mid,
                event: None,
                runs: column_runs(c1, c2, &xs, mid, slack, false)?,
            });
        }
    }

    // refine until every non-event run links both ways (event columns may
    // give birth to runs or absorb them)
    let mut i = 0usize;
    let mut insertions = 0usize;
    while i + 1 < columns.len() {
        let (a, b) = (&columns[i], &columns[i + 1]);
        let a_unlinked = a.event.is_none()
            && a.runs
                .iter()
                .any(|ra| !b.runs.iter().any(|rb| overlaps(&xs, ra, rb)));
        let b_unlinked = b.event.is_none()
            && b.runs
                .iter()
                .any(|rb| !a.runs.iter().any(|ra| overlaps(&xs, ra, rb)));
        if a_unlinked || b_unlinked {
            insertions += 1;
            if insertions > 4096 {
                return Err(OracleError::Inconsistent(
                    "column refinement did not converge".into(),
                ));
            }
            let mid = a.t * half + b.t * half;
            if !(a.t < mid && mid < b.t) {
                return Err(OracleError::Inconsistent(format!(
                    "column refinement hit floating-point resolution between levels {} and {}",
                    a.t.to_f64().unwrap_or(f64::NAN),
                    b.t.to_f64().unwrap_or(f64::NAN)
                )));
            }
            let runs = column_runs(c1, c2, &xs, mid, slack, false)?;
            columns.insert(i + 1, Column {
                t: mid,
                event: None,
                runs,
            });
            continue; // re-check the same pair against the inserted column
        }
        i += 1;
    }

    // node indexing
    let mut offsets = Vec::with_capacity(columns.len());
    let mut n_nodes = 0usize;
    for c in &columns {
        offsets.push(n_nodes);
        n_nodes += c.runs.len();
    }
    let node = |col: usize, run: usize| offsets[col] + run;

    let mut up: Vec<Vec<usize>> = vec![Vec::new(); n_nodes];
    let mut down: Vec<Vec<usize>> = vec![Vec::new(); n_nodes];
    for ci in 0..columns.len().saturating_sub(1) {
        for (ra_i, ra) in columns[ci].runs.iter().enumerate() {
            for (rb_i, rb) in columns[ci + 1].runs.iter().enumerate() {
                if overlaps(&xs, ra, rb) {
                    up[node(ci, ra_i)].push(node(ci + 1, rb_i));
                    down[node(ci + 1, rb_i)].push(node(ci, ra_i));
                }
            }
        }
    }

    // witnessed event runs become vertices
    let mut vertex_of_node: Vec<Option<usize>> = vec![None; n_nodes];
    let mut vertices: Vec<ReebVertex<S>> = Vec::new();
    for (ci, col) in columns.iter().enumerate() {
        let Some(ev_idx) = col.event else { continue };
        let ev = &events[ev_idx];
        let mut witness_runs: Vec<Vec<Witness<S>>> = vec![Vec::new(); col.runs.len()];
        for w in &ev.witnesses {
            let hit = col
                .runs
                .iter()
                .position(|r| xs[r.first] - slack <= w.x && w.x <= xs[r.last] + slack);
            match hit {
                Some(ri) => witness_runs[ri].push(*w),
                None => {
                    return Err(OracleError::Inconsistent(format!(
                        "witness at x = {} not inside any run at level {}",
                        w.x.to_f64().unwrap_or(f64::NAN),
                        col.t.to_f64().unwrap_or(f64::NAN)
                    )))
                }
            }
        }
        for (ri, ws) in witness_runs.into_iter().enumerate() {
            if ws.is_empty() {
                continue;
            }
            let vid = vertices.len();
            vertices.push(ReebVertex {
                id: vid,
                level: col.t,
                vertex_type: VertexType::Min, // retyped once incidences are known
                witnesses: ws,
            });
            vertex_of_node[node(ci, ri)] = Some(vid);
        }
    }

    let col_of_node: Vec<usize> = columns
        .iter()
        .enumerate()
        .flat_map(|(ci, c)| std::iter::repeat_n(ci, c.runs.len()))
        .collect();
    let run_of_node: Vec<Run> = columns.iter().flat_map(|c| c.runs.iter().copied()).collect();

    // whole-line split rule for m = 2
    let mult_of = |n: usize| -> usize {
        let run = run_of_node[n];
        let t = columns[col_of_node[n]].t;
        let whole = run.first == 0 && run.last == xs.len() - 1;
        if m == 2
            && whole
            && vertex_of_node[n].is_none()
            && tail_overlap_unbounded(c1, c2, t, TailSide::NegInf, p.level_merge_tol)
            && tail_overlap_unbounded(c1, c2, t, TailSide::PosInf, p.level_merge_tol)
        {
            2
        } else {
            1
        }
    };

    // unwitnessed runs must form simple chains
    for n in 0..n_nodes {
        if vertex_of_node[n].is_none() && (up[n].len() > 1 || down[n].len() > 1) {
            return Err(OracleError::Inconsistent(format!(
                "unwitnessed run at level {} with {} lower / {} upper links",
                columns[col_of_node[n]].t.to_f64().unwrap_or(f64::NAN),
                down[n].len(),
                up[n].len()
            )));
        }
    }

    let crumb = |n: usize| -> Breadcrumb<S> {
        let run = run_of_node[n];
        let t = columns[col_of_node[n]].t;
        let (lo, hi) = (xs[run.first], xs[run.last]);
        let carrier = |x: S| -> Carrier {
            if x <= window.lo() || x >= window.hi() {
                return Carrier::WindowEdge;
            }
            let d1 = c1.eval(x).map(|v| (v - t).abs()).unwrap_or(S::infinity());
            let d2 = c2.eval(x).map(|v| (v - t).abs()).unwrap_or(S::infinity());
            if d1 <= d2 {
                Carrier::Curve1
            } else {
                Carrier::Curve2
            }
        };
        Breadcrumb {
            t,
            component: ComponentInterval {
                lo,
                hi,
                lo_carrier: carrier(lo),
                hi_carrier: carrier(hi),
                is_point: lo == hi,
            },
        }
    };

    let escape = |n: usize| -> Option<EscapeSide> {
        let run = run_of_node[n];
        match (run.first == 0, run.last == xs.len() - 1) {
            (true, true) => Some(EscapeSide::Both),
            (true, false) => Some(EscapeSide::NegX),
            (false, true) => Some(EscapeSide::PosX),
            (false, false) => None,
        }
    };

    // chains: from every vertex up-link and from every unwitnessed birth
    let mut edges: Vec<ReebEdge<S>> = Vec::new();
    let mut lower_incidence: Vec<usize> = vec![0; vertices.len()];
    let mut upper_incidence: Vec<usize> = vec![0; vertices.len()];

    let mut chain_starts: Vec<(usize, Option<usize>)> = Vec::new();
    for n in 0..n_nodes {
        if let Some(vid) = vertex_of_node[n] {
            for &nxt in &up[n] {
                chain_starts.push((nxt, Some(vid)));
            }
        } else if down[n].is_empty() && !up[n].is_empty() {
            chain_starts.push((n, None));
        }
    }

    for (start, from_vertex) in chain_starts {
        let lower = match from_vertex {
            Some(vid) => EdgeEnd::Vertex { id: vid },
            None => EdgeEnd::Open {
                kind: TerminationKind::WindowTruncation,
                escape: escape(start),
                level: columns[col_of_node[start]].t,
            },
        };
        let mut crumbs: Vec<Breadcrumb<S>> = Vec::new();
        let mut cur = start;
        let mult = mult_of(start);
        let upper = loop {
            if let Some(vid) = vertex_of_node[cur] {
                crumbs.push(crumb(cur));
                break EdgeEnd::Vertex { id: vid };
            }
            if mult_of(cur) != mult {
                return Err(OracleError::Inconsistent(
                    "fiber multiplicity changed along an unwitnessed chain".into(),
                ));
            }
            crumbs.push(crumb(cur));
            match up[cur].first() {
                Some(&nxt) => cur = nxt,
                None => {
                    break EdgeEnd::Open {
                        kind: TerminationKind::WindowTruncation,
                        escape: escape(cur),
                        level: columns[col_of_node[cur]].t,
                    }
                }
            }
        };
        for _ in 0..mult {
            if let EdgeEnd::Vertex { id } = lower {
                upper_incidence[id] += 1;
            }
            if let EdgeEnd::Vertex { id } = upper {
                lower_incidence[id] += 1;
            }
            edges.push(ReebEdge {
                id: edges.len(),
                lower,
                upper,
                breadcrumbs: crumbs.clone(),
            });
        }
    }

    for v in &mut vertices {
        v.vertex_type = match (lower_incidence[v.id], upper_incidence[v.id]) {
            (0, _) => VertexType::Min,
            (_, 0) => VertexType::Max,
            (1, 1) => VertexType::Degree2Critical,
            (1, _) => VertexType::Split,
            (_, 1) => VertexType::Merge,
            (_, _) => VertexType::Merge,
        };
    }

    Ok(ReebGraph {
        vertices,
        edges,
        window,
        m,
        t_range,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::funcspec::{SignVsLimit, TailDeclaration, TailLimit, Tails};
    use crate::reeb::{build_reeb_graph, graph_invariants};

    fn finite_tail(q: f64, sig: SignVsLimit, unbounded: bool) -> TailDeclaration<f64> {
        TailDeclaration {
            limit: TailLimit::Finite(q),
            monotone_beyond: None,
            critical_set_unbounded: unbounded,
            sign_vs_limit: Some(sig),
        }
    }

    fn spec(src: &str, tails: Tails<f64>, lo: f64, hi: f64) -> FunctionSpec<f64> {
        FunctionSpec::build(parse(src).unwrap(), tails, Interval::new(lo, hi), 1e-10).unwrap()
    }

    #[test]
    fn example2_oracle_matches_sweep() {
        let t = finite_tail(0.0, SignVsLimit::StrictlyAbove, false);
        let tails = Tails { neg: t, pos: t };
        let w = Interval::new(-10.0, 10.0);
        let c1 = spec("0.5/(x^2+1)", tails, -10.0, 10.0);
        let c2 = spec("1/(x^2+1)", tails, -10.0, 10.0);
        let p = SweepParams::default();
        let sweep = build_reeb_graph(&c1, &c2, w, 3, &p).unwrap();
        let oracle = oracle_reeb_graph(&c1, &c2, w, 2048, 3, &p).unwrap();
        let inv = graph_invariants(&oracle);
        assert_eq!(inv.vertex_counts.get("merge"), Some(&1), "{inv:?}");
        assert_eq!(inv.vertex_counts.get("max"), Some(&1));
        assert_eq!(inv.e_compact, 1);
        assert_eq!(inv.open_terminations.get("window_truncation"), Some(&2));
        let cmp = compare_graphs(&sweep, &oracle, 1e-4);
        assert!(cmp.equal, "{:?}", cmp.first_discrepancy);
    }

    #[test]
    fn example1_oracle_matches_sweep() {
        let w3 = 9.42477796076938;
        let t1 = finite_tail(0.0, SignVsLimit::TouchesFromAbove, true);
        let c1 = spec("sin(x)^2/(2*(x^2+1))", Tails { neg: t1, pos: t1 }, -w3, w3);
        let t2 = finite_tail(0.0, SignVsLimit::StrictlyAbove, false);
        let c2 = spec("1/(x^2+1)", Tails { neg: t2, pos: t2 }, -w3, w3);
        let w = Interval::new(-w3, w3);
        let p = SweepParams::default();
        let sweep = build_reeb_graph(&c1, &c2, w, 3, &p).unwrap();
        let oracle = oracle_reeb_graph(&c1, &c2, w, 2048, 3, &p).unwrap();
        let inv = graph_invariants(&oracle);
        assert_eq!(inv.vertex_counts.get("min"), Some(&7), "{inv:?}");
        assert_eq!(inv.vertex_counts.get("max"), Some(&1));
        let cmp = compare_graphs(&sweep, &oracle, 1e-4);
        assert!(cmp.equal, "{:?}", cmp.first_discrepancy);
    }

    #[test]
    fn window_without_criticals_gives_single_chain() {
        let t = finite_tail(0.0, SignVsLimit::StrictlyAbove, false);
        let tails = Tails { neg: t, pos: t };
        let c1 = spec("0.5/(x^2+1)", tails, 9.0, 10.0);
        let c2 = spec("1/(x^2+1)", tails, 9.0, 10.0);
        let w = Interval::new(9.0, 10.0);
        let p = SweepParams::default();
        let oracle = oracle_reeb_graph(&c1, &c2, w, 2048, 3, &p).unwrap();
        assert!(oracle.vertices.is_empty());
        assert_eq!(oracle.edges.len(), 1);
    }

    #[test]
    fn refinement_stability_on_example2() {
        let t = finite_tail(0.0, SignVsLimit::StrictlyAbove, false);
        let tails = Tails { neg: t, pos: t };
        let w = Interval::new(-10.0, 10.0);
        let c1 = spec("0.5/(x^2+1)", tails, -10.0, 10.0);
        let c2 = spec("1/(x^2+1)", tails, -10.0, 10.0);
        let p = SweepParams::default();
        let a = graph_invariants(&oracle_reeb_graph(&c1, &c2, w, 2048, 3, &p).unwrap());
        let b = graph_invariants(&oracle_reeb_graph(&c1, &c2, w, 4096, 3, &p).unwrap());
        assert_eq!(a, b);
    }
}
