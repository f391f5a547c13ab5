//! The critical-value sweep.
//!
//! Event levels are the merged critical values of both curves plus the window
//! edge values of both curves (where component carriers flip) and the ends of
//! the reachable t-range. Between consecutive events the combinatorics of
//! `S(t)` are constant, so one midpoint row represents each slab; slabs are
//! linked through the event-level rows by closed-interval intersection against
//! near rows taken just inside the adjacent slabs.

use super::level::level_components_slack;
use super::{
    level_components, Breadcrumb, Carrier, ComponentInterval, EdgeEnd, EscapeSide,
    LevelComponents, ReebEdge, ReebGraph, ReebVertex, SweepError, TerminationKind, VertexType,
    Witness,
};
use crate::funcspec::{pair::tail_overlap_unbounded, FunctionSpec, TailSide};
use crate::interval::Interval;
use crate::scalar::{s, Scalar};
use crate::surface::CurveId;

#[derive(Debug, Clone, Copy)]
pub struct SweepParams<S> {
    pub root_tol: S,
    pub level_merge_tol: S,
}

impl<S: Scalar> Default for SweepParams<S> {
    fn default() -> Self {
        SweepParams {
            root_tol: s(1e-10),
            level_merge_tol: s(1e-8),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct EventInfo<S> {
    pub level: S,
    pub witnesses: Vec<Witness<S>>,
    pub spread: S,
}

/// Sorted, deduplicated sweep events. Distinct critical values within
/// `level_merge_tol` chain-merge into one event level (the group minimum);
/// the spread is kept as discreteness evidence.
pub(crate) fn collect_events<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    window: Interval<S>,
    merge_tol: S,
) -> Result<Vec<EventInfo<S>>, SweepError> {
    let mut cands: Vec<(S, Option<Witness<S>>)> = Vec::new();
    for (curve, f) in [(CurveId::Curve1, c1), (CurveId::Curve2, c2)] {
        for cp in f.critical_points() {
            cands.push((
                cp.value,
                Some(Witness {
                    curve,
                    x: cp.x,
                    value: cp.value,
                }),
            ));
        }
        for edge in [window.lo(), window.hi()] {
            cands.push((f.eval(edge).map_err(SweepError::from)?, None));
        }
    }
    let c1_vals = || {
        c1.critical_points()
            .iter()
            .map(|cp| cp.value)
            .chain([c1.eval(window.lo()).unwrap(), c1.eval(window.hi()).unwrap()])
    };
    let c2_vals = || {
        c2.critical_points()
            .iter()
            .map(|cp| cp.value)
            .chain([c2.eval(window.lo()).unwrap(), c2.eval(window.hi()).unwrap()])
    };
    let t_min = c1_vals().fold(S::infinity(), S::min);
    let t_max = c2_vals().fold(S::neg_infinity(), S::max);

    cands.retain(|(v, _)| *v >= t_min - merge_tol && *v <= t_max + merge_tol);
    cands.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite event levels"));

    let mut events: Vec<EventInfo<S>> = Vec::new();
    for (v, w) in cands {
        match events.last_mut() {
            Some(ev) if v - (ev.level + ev.spread) <= merge_tol => {
                ev.spread = v - ev.level;
                if let Some(w) = w {
                    ev.witnesses.push(w);
                }
            }
            _ => events.push(EventInfo {
                level: v,
                witnesses: w.into_iter().collect(),
                spread: S::zero(),
            }),
        }
    }
    for ev in &mut events {
        ev.witnesses.sort_by(|a, b| {
            (a.curve, a.x)
                .partial_cmp(&(b.curve, b.x))
                .expect("finite witness data")
        });
    }
    Ok(events)
}

/// Sorted event levels of the sweep on the window.
pub fn event_levels<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    window: Interval<S>,
    merge_tol: S,
) -> Result<Vec<S>, SweepError> {
    Ok(collect_events(c1, c2, window, merge_tol)?
        .into_iter()
        .map(|e| e.level)
        .collect())
}

/// Non-event row with the documented single retry under root ambiguity.
fn row_with_retry<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    t: S,
    window: Interval<S>,
    p: &SweepParams<S>,
) -> Result<LevelComponents<S>, SweepError> {
    match level_components(c1, c2, t, window, p.root_tol) {
        Err(SweepError::RootAmbiguity { .. }) => {
            let half = s::<S>(0.5);
            level_components(c1, c2, t + p.level_merge_tol * half, window, p.root_tol)
        }
        other => other,
    }
}

struct Slab<S> {
    row: LevelComponents<S>,
    mult: Vec<usize>,
}

enum LinkDir {
    Below,
    Above,
}

struct LinkCtx<'a, S> {
    c1: &'a FunctionSpec<S>,
    c2: &'a FunctionSpec<S>,
    window: Interval<S>,
    event_level: S,
    /// spread of the merged event group
    spread: S,
}

/// Links one adjacent slab to an event row: each near-row component (taken at
/// `event -/+ eps`, rank-matched to the slab tracks) must intersect exactly
/// one event component. Retries with smaller `eps` when drift or ambiguity
/// spoils the match.
fn link_side<S: Scalar>(
    ctx: &LinkCtx<'_, S>,
    p: &SweepParams<S>,
    event_comps: &[ComponentInterval<S>],
    n_tracks: usize,
    gap: S,
    dir: LinkDir,
) -> Result<Vec<Vec<usize>>, SweepError> {
    let LinkCtx {
        c1,
        c2,
        window,
        event_level,
        spread,
    } = *ctx;
    // stay inside the adjacent slab but clear the merged group's spread
    let floor = (spread * s::<S>(4.0)).max(p.root_tol * s::<S>(10.0));
    let mut eps = (gap * s::<S>(1e-3)).max(floor).min(gap * s::<S>(0.25));
    let mut last_err = String::new();
    for _ in 0..5 {
        let t_near = match dir {
            LinkDir::Below => event_level - eps,
            LinkDir::Above => event_level + eps,
        };
        match level_components(c1, c2, t_near, window, p.root_tol) {
            Err(SweepError::RootAmbiguity { .. }) => {
                last_err = "root ambiguity in near row".into();
            }
            Err(e) => return Err(e),
            Ok(near) => {
                if near.components.len() != n_tracks {
                    last_err = format!(
                        "near row has {} components, slab has {}",
                        near.components.len(),
                        n_tracks
                    );
                } else {
                    let mut links: Vec<Vec<usize>> = vec![Vec::new(); event_comps.len()];
                    let mut ok = true;
                    for (k, nc) in near.components.iter().enumerate() {
                        let hits: Vec<usize> = event_comps
                            .iter()
                            .enumerate()
                            .filter(|(_, ec)| ec.intersects(nc))
                            .map(|(i, _)| i)
                            .collect();
                        if hits.len() == 1 {
                            links[hits[0]].push(k);
                        } else {
                            last_err = format!(
                                "near component {k} intersects {} event components",
                                hits.len()
                            );
                            ok = false;
                            break;
                        }
                    }
                    if ok {
                        return Ok(links);
                    }
                }
            }
        }
        eps = (eps / s::<S>(8.0)).max(floor);
    }
    Err(SweepError::Inconsistent(format!(
        "could not link slab to event level {}: {last_err}",
        event_level.to_f64().unwrap_or(f64::NAN)
    )))
}

fn escape_side<S: Scalar>(comp: &ComponentInterval<S>, window: Interval<S>) -> Option<EscapeSide> {
    if comp.is_point {
        if comp.lo <= window.lo() {
            return Some(EscapeSide::NegX);
        }
        if comp.hi >= window.hi() {
            return Some(EscapeSide::PosX);
        }
        return None;
    }
    match (
        comp.lo_carrier == Carrier::WindowEdge,
        comp.hi_carrier == Carrier::WindowEdge,
    ) {
        (true, true) => Some(EscapeSide::Both),
        (true, false) => Some(EscapeSide::NegX),
        (false, true) => Some(EscapeSide::PosX),
        (false, false) => None,
    }
}

fn vertex_type(lower: usize, upper: usize) -> VertexType {
    match (lower, upper) {
        (0, _) => VertexType::Min,
        (_, 0) => VertexType::Max,
        (1, 1) => VertexType::Degree2Critical,
        (1, _) => VertexType::Split,
        (_, 1) => VertexType::Merge,
        // simultaneous merge and split; dominant merge reading
        (_, _) => VertexType::Merge,
    }
}

struct Strand<S> {
    lower: EdgeEnd<S>,
    crumbs: Vec<Breadcrumb<S>>,
    mult: usize,
}

/// Builds the Reeb digraph of the height function over the window.
pub fn build_reeb_graph<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    window: Interval<S>,
    m: usize,
    p: &SweepParams<S>,
) -> Result<ReebGraph<S>, SweepError> {
    assert!(m >= 2, "the construction needs m >= 2");
    let events = collect_events(c1, c2, window, p.level_merge_tol)?;
    if events.is_empty() {
        return Err(SweepError::Inconsistent("no sweep events on window".into()));
    }
    let t_range = Interval::new(events[0].level, events.last().unwrap().level);
    let half = s::<S>(0.5);
    let eq_tol = p.level_merge_tol;

    // slab j sits between events j and j+1
    let mut slabs: Vec<Slab<S>> = Vec::with_capacity(events.len().saturating_sub(1));
    for w in events.windows(2) {
        let mid = w[0].level * half + w[1].level * half;
        let row = row_with_retry(c1, c2, mid, window, p)?;
        let mult = row
            .components
            .iter()
            .map(|comp| {
                let split = m == 2
                    && comp.spans_window(&window)
                    && tail_overlap_unbounded(c1, c2, mid, TailSide::NegInf, eq_tol)
                    && tail_overlap_unbounded(c1, c2, mid, TailSide::PosInf, eq_tol);
                if split {
                    2
                } else {
                    1
                }
            })
            .collect();
        slabs.push(Slab { row, mult });
    }

    let mut vertices: Vec<ReebVertex<S>> = Vec::new();
    let mut edges: Vec<ReebEdge<S>> = Vec::new();
    let mut strands: Vec<Strand<S>> = Vec::new();
    let mut cur: Vec<usize> = Vec::new(); // strand id per track of the slab below the current event

    let seal = |strands: &mut Vec<Strand<S>>,
                    edges: &mut Vec<ReebEdge<S>>,
                    sid: usize,
                    upper: EdgeEnd<S>,
                    crumb: Option<Breadcrumb<S>>| {
        let strand = &mut strands[sid];
        if let Some(cr) = crumb {
            strand.crumbs.push(cr);
        }
        for _ in 0..strand.mult {
            edges.push(ReebEdge {
                id: edges.len(),
                lower: strand.lower,
                upper,
                breadcrumbs: strand.crumbs.clone(),
            });
        }
    };

    for (j, ev) in events.iter().enumerate() {
        let touch_slack = ev.spread + p.root_tol;
        let event_row =
            level_components_slack(c1, c2, ev.level, window, p.root_tol, touch_slack)?;
        let comps = &event_row.components;

        let ctx = LinkCtx {
            c1,
            c2,
            window,
            event_level: ev.level,
            spread: ev.spread,
        };
        let below_links = if j > 0 {
            let gap = ev.level - events[j - 1].level;
            link_side(
                &ctx,
                p,
                comps,
                slabs[j - 1].row.components.len(),
                gap,
                LinkDir::Below,
            )?
        } else {
            vec![Vec::new(); comps.len()]
        };
        let above_links = if j < slabs.len() {
            let gap = events[j + 1].level - ev.level;
            link_side(
                &ctx,
                p,
                comps,
                slabs[j].row.components.len(),
                gap,
                LinkDir::Above,
            )?
        } else {
            vec![Vec::new(); comps.len()]
        };

        // witnesses attach to the event component containing their abscissa
        let x_slack = p.root_tol * s::<S>(4.0);
        let mut witness_by_comp: Vec<Vec<Witness<S>>> = vec![Vec::new(); comps.len()];
        for w in &ev.witnesses {
            match comps.iter().position(|c| c.contains_x(w.x, x_slack)) {
                Some(ci) => witness_by_comp[ci].push(*w),
                None => {
                    return Err(SweepError::Inconsistent(format!(
                        "witness at x = {} level {} lies in no event component",
                        w.x.to_f64().unwrap_or(f64::NAN),
                        ev.level.to_f64().unwrap_or(f64::NAN)
                    )))
                }
            }
        }

        let n_above_tracks = if j < slabs.len() {
            slabs[j].row.components.len()
        } else {
            0
        };
        let mut next_cur: Vec<Option<usize>> = vec![None; n_above_tracks];

        for (ci, comp) in comps.iter().enumerate() {
            let below = &below_links[ci];
            let above = &above_links[ci];
            let mult_b: usize = below.iter().map(|&b| slabs[j - 1].mult[b]).sum();
            let mult_a: usize = above.iter().map(|&a| slabs[j].mult[a]).sum();
            let crumb = Breadcrumb {
                t: ev.level,
                component: *comp,
            };

            if !witness_by_comp[ci].is_empty() {
                let vid = vertices.len();
                vertices.push(ReebVertex {
                    id: vid,
                    level: ev.level,
                    vertex_type: vertex_type(mult_b, mult_a),
                    witnesses: witness_by_comp[ci].clone(),
                });
                for &b in below {
                    seal(
                        &mut strands,
                        &mut edges,
                        cur[b],
                        EdgeEnd::Vertex { id: vid },
                        Some(crumb),
                    );
                }
                for &a in above {
                    let sid = strands.len();
                    strands.push(Strand {
                        lower: EdgeEnd::Vertex { id: vid },
                        crumbs: vec![crumb],
                        mult: slabs[j].mult[a],
                    });
                    next_cur[a] = Some(sid);
                }
            } else {
                match (below.len(), above.len()) {
                    (0, 0) => {} // measure-zero corner contact, no extent
                    (_, 0) => {
                        let end = EdgeEnd::Open {
                            kind: TerminationKind::WindowTruncation,
                            escape: escape_side(comp, window),
                            level: ev.level,
                        };
                        for &b in below {
                            seal(&mut strands, &mut edges, cur[b], end, Some(crumb));
                        }
                    }
                    (0, _) => {
                        for &a in above {
                            let sid = strands.len();
                            strands.push(Strand {
                                lower: EdgeEnd::Open {
                                    kind: TerminationKind::WindowTruncation,
                                    escape: escape_side(comp, window),
                                    level: ev.level,
                                },
                                crumbs: vec![crumb],
                                mult: slabs[j].mult[a],
                            });
                            next_cur[a] = Some(sid);
                        }
                    }
                    (1, 1) if mult_b == mult_a => {
                        let sid = cur[below[0]];
                        strands[sid].crumbs.push(crumb);
                        next_cur[above[0]] = Some(sid);
                    }
                    _ => {
                        return Err(SweepError::Inconsistent(format!(
                            "unwitnessed event component at level {} with {} lower / {} upper incidences",
                            ev.level.to_f64().unwrap_or(f64::NAN),
                            mult_b,
                            mult_a,
                        )))
                    }
                }
            }
        }

        if j < slabs.len() {
            let mut new_cur = Vec::with_capacity(n_above_tracks);
            for (k, sid) in next_cur.into_iter().enumerate() {
                let sid = sid.ok_or_else(|| {
                    SweepError::Inconsistent(format!(
                        "slab track {k} above level {} received no lower end",
                        ev.level.to_f64().unwrap_or(f64::NAN)
                    ))
                })?;
                strands[sid].crumbs.push(Breadcrumb {
                    t: slabs[j].row.t,
                    component: slabs[j].row.components[k],
                });
                new_cur.push(sid);
            }
            cur = new_cur;
        }
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
    use crate::funcspec::{
        MonotoneBeyond, MonotoneDirection, SignVsLimit, TailDeclaration, TailLimit, Tails,
    };

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

    fn example2(m_window: f64) -> (FunctionSpec<f64>, FunctionSpec<f64>) {
        let t = finite_tail(0.0, SignVsLimit::StrictlyAbove, false);
        let tails = Tails { neg: t, pos: t };
        (
            spec("0.5/(x^2+1)", tails, -m_window, m_window),
            spec("1/(x^2+1)", tails, -m_window, m_window),
        )
    }

    fn count_types(g: &ReebGraph<f64>) -> std::collections::BTreeMap<VertexType, usize> {
        let mut m = std::collections::BTreeMap::new();
        for v in &g.vertices {
            *m.entry(v.vertex_type).or_insert(0) += 1;
        }
        m
    }

    #[test]
    fn example2_graph_shape() {
        let (c1, c2) = example2(10.0);
        let g = build_reeb_graph(
            &c1,
            &c2,
            Interval::new(-10.0, 10.0),
            3,
            &SweepParams::default(),
        )
        .unwrap();
        let types = count_types(&g);
        assert_eq!(types.get(&VertexType::Merge), Some(&1), "{g:#?}");
        assert_eq!(types.get(&VertexType::Max), Some(&1));
        assert_eq!(g.vertices.len(), 2);
        let merge = g
            .vertices
            .iter()
            .find(|v| v.vertex_type == VertexType::Merge)
            .unwrap();
        assert!((merge.level - 0.5).abs() < 1e-9);
        assert_eq!(merge.witnesses.len(), 1);
        assert_eq!(merge.witnesses[0].curve, CurveId::Curve1);
        assert!(merge.witnesses[0].x.abs() < 1e-9);
        let max = g
            .vertices
            .iter()
            .find(|v| v.vertex_type == VertexType::Max)
            .unwrap();
        assert!((max.level - 1.0).abs() < 1e-9);
        assert_eq!(max.witnesses[0].curve, CurveId::Curve2);

        let compact: Vec<_> = g.edges.iter().filter(|e| e.is_compact()).collect();
        assert_eq!(compact.len(), 1);
        let open: Vec<_> = g.open_terminations().collect();
        assert_eq!(open.len(), 2);
        for (e, end) in open {
            // both are lower terminations of edges rising to the merge vertex
            assert!(matches!(e.lower, EdgeEnd::Open { .. }));
            if let EdgeEnd::Open { kind, level, .. } = end {
                assert_eq!(*kind, TerminationKind::WindowTruncation);
                assert!(*level < 0.006);
            }
        }
    }

    #[test]
    fn example1_graph_shape() {
        let w = 9.42477796076938; // 3*pi
        let t1 = finite_tail(0.0, SignVsLimit::TouchesFromAbove, true);
        let c1 = spec("sin(x)^2/(2*(x^2+1))", Tails { neg: t1, pos: t1 }, -w, w);
        let mut t2n = finite_tail(0.0, SignVsLimit::StrictlyAbove, false);
        t2n.monotone_beyond = Some(MonotoneBeyond {
            threshold: 0.0,
            direction: MonotoneDirection::Increasing,
        });
        let mut t2p = finite_tail(0.0, SignVsLimit::StrictlyAbove, false);
        t2p.monotone_beyond = Some(MonotoneBeyond {
            threshold: 0.0,
            direction: MonotoneDirection::Decreasing,
        });
        let c2 = spec("1/(x^2+1)", Tails { neg: t2n, pos: t2p }, -w, w);
        let g = build_reeb_graph(&c1, &c2, Interval::new(-w, w), 3, &SweepParams::default())
            .unwrap();
        let types = count_types(&g);
        assert_eq!(types.get(&VertexType::Min), Some(&7), "{types:?}");
        assert_eq!(types.get(&VertexType::Max), Some(&1));
        // the symmetric maxima pairs at equal values merge pairwise at their
        // two lower levels; at the top level (~0.1797) the component already
        // spans both maxima, giving one critical contour with two witnesses
        assert_eq!(types.get(&VertexType::Merge), Some(&5));
        assert_eq!(g.vertices.len(), 13);
        for v in &g.vertices {
            if v.vertex_type == VertexType::Min {
                assert!(v.level.abs() < 1e-6);
            }
            if v.vertex_type == VertexType::Max {
                assert!((v.level - 1.0).abs() < 1e-6);
            }
        }
        let top_merge = g
            .vertices
            .iter()
            .find(|v| v.vertex_type == VertexType::Merge && (v.level - 0.1797).abs() < 1e-3)
            .expect("top merge vertex");
        assert_eq!(top_merge.witnesses.len(), 2);
        assert_eq!(g.edges.len(), 12);
        assert!(g.edges.iter().all(|e| e.is_compact()));
    }

    #[test]
    fn affine_pair_single_edge() {
        let t = TailDeclaration {
            limit: TailLimit::PlusInf,
            monotone_beyond: None,
            critical_set_unbounded: false,
            sign_vs_limit: None,
        };
        let tn = TailDeclaration {
            limit: TailLimit::MinusInf,
            ..t
        };
        let tails = Tails { neg: tn, pos: t };
        let c1 = spec("x", tails, 1.0, 2.0);
        let c2 = spec("x+1", tails, 1.0, 2.0);
        let g = build_reeb_graph(&c1, &c2, Interval::new(1.0, 2.0), 3, &SweepParams::default())
            .unwrap();
        assert!(g.vertices.is_empty());
        assert_eq!(g.edges.len(), 1);
        let e = &g.edges[0];
        assert!(matches!(e.lower, EdgeEnd::Open { .. }));
        assert!(matches!(e.upper, EdgeEnd::Open { .. }));
    }

    #[test]
    fn parabola_pair_shape() {
        let tp = TailDeclaration {
            limit: TailLimit::PlusInf,
            monotone_beyond: Some(MonotoneBeyond {
                threshold: 0.0,
                direction: MonotoneDirection::Increasing,
            }),
            critical_set_unbounded: false,
            sign_vs_limit: None,
        };
        let tn = TailDeclaration {
            limit: TailLimit::PlusInf,
            monotone_beyond: Some(MonotoneBeyond {
                threshold: 0.0,
                direction: MonotoneDirection::Decreasing,
            }),
            critical_set_unbounded: false,
            sign_vs_limit: None,
        };
        let tails = Tails { neg: tn, pos: tp };
        let c1 = spec("x^2", tails, -10.0, 10.0);
        let c2 = spec("x^2+1", tails, -10.0, 10.0);
        let g = build_reeb_graph(
            &c1,
            &c2,
            Interval::new(-10.0, 10.0),
            3,
            &SweepParams::default(),
        )
        .unwrap();
        let types = count_types(&g);
        assert_eq!(types.get(&VertexType::Min), Some(&1), "{g:#?}");
        assert_eq!(types.get(&VertexType::Split), Some(&1));
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.edges.iter().filter(|e| e.is_compact()).count(), 1);
        let open: Vec<_> = g.open_terminations().collect();
        assert_eq!(open.len(), 2);
        for (_, end) in open {
            if let EdgeEnd::Open { level, escape, .. } = end {
                assert!(*level > 100.0);
                assert!(escape.is_some());
            }
        }
    }

    #[test]
    fn whole_line_component_splits_for_m2() {
        // c1 -> -inf, c2 -> +inf on both sides: S(t) spans the whole line and
        // the two-point fibers never rejoin
        let tn1 = TailDeclaration {
            limit: TailLimit::MinusInf,
            monotone_beyond: Some(MonotoneBeyond {
                threshold: 0.0,
                direction: MonotoneDirection::Increasing,
            }),
            critical_set_unbounded: false,
            sign_vs_limit: None,
        };
        let tp1 = TailDeclaration {
            limit: TailLimit::MinusInf,
            monotone_beyond: Some(MonotoneBeyond {
                threshold: 0.0,
                direction: MonotoneDirection::Decreasing,
            }),
            critical_set_unbounded: false,
            sign_vs_limit: None,
        };
        let tn2 = TailDeclaration {
            limit: TailLimit::PlusInf,
            monotone_beyond: Some(MonotoneBeyond {
                threshold: 0.0,
                direction: MonotoneDirection::Decreasing,
            }),
            critical_set_unbounded: false,
            sign_vs_limit: None,
        };
        let tp2 = TailDeclaration {
            limit: TailLimit::PlusInf,
            monotone_beyond: Some(MonotoneBeyond {
                threshold: 0.0,
                direction: MonotoneDirection::Increasing,
            }),
            critical_set_unbounded: false,
            sign_vs_limit: None,
        };
        let c1 = spec("-(x^2)-1", Tails { neg: tn1, pos: tp1 }, -5.0, 5.0);
        let c2 = spec("x^2+1", Tails { neg: tn2, pos: tp2 }, -5.0, 5.0);
        let w = Interval::new(-5.0, 5.0);
        let g2 = build_reeb_graph(&c1, &c2, w, 2, &SweepParams::default()).unwrap();
        let g3 = build_reeb_graph(&c1, &c2, w, 3, &SweepParams::default()).unwrap();
        // the slab between the two critical values (-1, 1) spans the window:
        // it carries two parallel tracks for m = 2, one for m = 3
        let doubled = |g: &ReebGraph<f64>| {
            g.edges
                .iter()
                .filter(|e| {
                    e.breadcrumbs
                        .iter()
                        .any(|b| b.component.spans_window(&w) && b.t > -1.0 && b.t < 1.0)
                })
                .count()
        };
        assert_eq!(doubled(&g3), 1, "{g3:#?}");
        assert_eq!(doubled(&g2), 2, "{g2:#?}");
    }
}
