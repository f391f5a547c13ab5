//! Verdict on the full Reeb space — finite graph, infinite graph, graph with
//! ends, or not a CW graph at all — with a clause-level certificate.
//!
//! Facts about behavior at infinity come from the tail declarations; every
//! clause decided that way is marked as relying on declarations. Undetermined
//! is a first-class outcome: when a needed declaration is missing or the pair
//! falls outside the three treated tail regimes, the classifier refuses to
//! guess.

mod clauses;
mod condition223;
mod unimodal;

pub use clauses::{
    asymptotic_case, eval_prop2_clauses, eval_prop3_clauses, eval_thm3_conditions, AsymptoticCase,
    ClauseEval, DivergeSign,
};
pub use condition223::{check_condition_223, Condition223Report};
pub use unimodal::{check_almost_unimodal, AlmostUnimodalCertificate};

use crate::expr::DomainError;
use crate::funcspec::{FunctionSpec, TailLimit, TailSide};
use crate::reeb::{EdgeEnd, EscapeSide, ReebGraph, SweepError, SweepParams, TerminationKind};
use crate::scalar::{s, Scalar};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("missing declaration: {0}")]
    MissingDeclaration(String),
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReebSpaceKind {
    FiniteGraph,
    InfiniteGraph,
    GraphWithEnds,
    NotCw,
    Undetermined,
}

/// One evaluated classification rule, by its catalog id (see the README rule
/// table), with the outcome and whether it rests on tail declarations.
#[derive(Debug, Clone, Serialize)]
pub struct FiredClause {
    pub id: String,
    pub holds: bool,
    pub relies_on_declarations: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict<S> {
    pub reeb_space_kind: ReebSpaceKind,
    pub is_reeb_graph: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub asymptotic_case: Option<AsymptoticCase<S>>,
    pub fired_clauses: Vec<FiredClause>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub undetermined_reasons: Vec<String>,
}

fn clause(id: &str, holds: bool, relies: bool, detail: Option<String>) -> FiredClause {
    FiredClause {
        id: id.to_string(),
        holds,
        relies_on_declarations: relies,
        detail,
    }
}

fn any_unbounded_criticals<S: Scalar>(c1: &FunctionSpec<S>, c2: &FunctionSpec<S>) -> bool {
    [c1, c2].iter().any(|f| {
        f.tails().neg.critical_set_unbounded || f.tails().pos.critical_set_unbounded
    })
}

fn side_unbounded<S: Scalar>(c1: &FunctionSpec<S>, c2: &FunctionSpec<S>, side: TailSide) -> bool {
    c1.tails().side(side).critical_set_unbounded || c2.tails().side(side).critical_set_unbounded
}

/// Window evidence against a discrete critical value set: two certifiably
/// distinct critical values chained within the merge tolerance, away from the
/// declared limit levels.
fn discreteness_violation<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    merge_tol: S,
    limit_levels: &[S],
) -> Option<String> {
    let mut vals: Vec<S> = c1
        .critical_points()
        .iter()
        .chain(c2.critical_points())
        .map(|cp| cp.value)
        .collect();
    vals.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let mut group_start = 0usize;
    for i in 1..=vals.len() {
        let chained = i < vals.len() && vals[i] - vals[i - 1] <= merge_tol;
        if !chained && i > group_start {
            let spread = vals[i - 1] - vals[group_start];
            let level = vals[group_start];
            let near_limit = limit_levels
                .iter()
                .any(|&q| (level - q).abs() <= merge_tol * s::<S>(10.0));
            if spread > merge_tol + merge_tol && !near_limit {
                return Some(format!(
                    "critical values accumulate near level {} (spread {} beyond merge tolerance)",
                    level.to_f64().unwrap_or(f64::NAN),
                    spread.to_f64().unwrap_or(f64::NAN)
                ));
            }
            group_start = i;
        }
    }
    None
}

/// Reclassifies window truncations as declared ends where the tail
/// declarations certify that no further critical contour exists in the
/// escape direction.
fn reclassify_ends<S: Scalar>(
    g: &ReebGraph<S>,
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
) -> ReebGraph<S> {
    let mut out = g.clone();
    let side_clean = |side: TailSide| !side_unbounded(c1, c2, side);
    for e in &mut out.edges {
        for end in [&mut e.lower, &mut e.upper] {
            if let EdgeEnd::Open { kind, escape, .. } = end {
                let clean = match escape {
                    Some(EscapeSide::NegX) => side_clean(TailSide::NegInf),
                    Some(EscapeSide::PosX) => side_clean(TailSide::PosInf),
                    Some(EscapeSide::Both) => {
                        side_clean(TailSide::NegInf) && side_clean(TailSide::PosInf)
                    }
                    None => false,
                };
                if clean {
                    *kind = TerminationKind::DeclaredEnd;
                }
            }
        }
    }
    out
}

/// Evaluates the classification rules against the pair and the swept window
/// graph; returns the verdict and the graph with its open terminations
/// reclassified accordingly.
pub fn classify<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    g: &ReebGraph<S>,
    p: &SweepParams<S>,
) -> Result<(Verdict<S>, ReebGraph<S>), ClassifyError> {
    let eq_tol = p.level_merge_tol;
    let mut fired: Vec<FiredClause> = Vec::new();

    let undetermined = |fired: Vec<FiredClause>,
                        case: Option<AsymptoticCase<S>>,
                        reasons: Vec<String>| {
        (
            Verdict {
                reeb_space_kind: ReebSpaceKind::Undetermined,
                is_reeb_graph: false,
                asymptotic_case: case,
                fired_clauses: fired,
                undetermined_reasons: reasons,
            },
            g.clone(),
        )
    };

    let case = match asymptotic_case(c1, c2, eq_tol) {
        Ok(c) => c,
        Err(msg) => return Ok(undetermined(fired, None, vec![msg])),
    };

    // standing hypothesis: at least one critical point somewhere
    let has_critical = !c1.critical_points().is_empty()
        || !c2.critical_points().is_empty()
        || any_unbounded_criticals(c1, c2);
    if !has_critical {
        return Ok(undetermined(
            fired,
            Some(case),
            vec!["neither boundary function has a critical point".into()],
        ));
    }

    // limit levels excluded from the discreteness check
    let mut limit_levels: Vec<S> = Vec::new();
    for f in [c1, c2] {
        for side in [TailSide::NegInf, TailSide::PosInf] {
            if let TailLimit::Finite(q) = f.tails().side(side).limit {
                limit_levels.push(q);
            }
        }
    }
    let disc = discreteness_violation(c1, c2, p.level_merge_tol, &limit_levels);
    fired.push(clause(
        "Thm2.discrete",
        disc.is_none(),
        true,
        disc.clone(),
    ));
    if disc.is_some() {
        return Ok((
            Verdict {
                reeb_space_kind: ReebSpaceKind::NotCw,
                is_reeb_graph: false,
                asymptotic_case: Some(case),
                fired_clauses: fired,
                undetermined_reasons: Vec::new(),
            },
            g.clone(),
        ));
    }

    let not_cw = |mut fired: Vec<FiredClause>, case: AsymptoticCase<S>| {
        fired.retain(|c| !c.id.is_empty());
        (
            Verdict {
                reeb_space_kind: ReebSpaceKind::NotCw,
                is_reeb_graph: false,
                asymptotic_case: Some(case),
                fired_clauses: fired,
                undetermined_reasons: Vec::new(),
            },
            g.clone(),
        )
    };

    let is_graph: bool;
    match case {
        AsymptoticCase::BothFinite { q_neg, q_pos } => {
            fired.push(clause("Thm2.2.1", true, true, Some(format!(
                "both boundary functions converge to {} toward -inf",
                q_neg.to_f64().unwrap_or(f64::NAN)
            ))));
            fired.push(clause("Thm2.2.2", true, true, Some(format!(
                "both boundary functions converge to {} toward +inf",
                q_pos.to_f64().unwrap_or(f64::NAN)
            ))));
            let mut qs = vec![q_neg];
            if (q_pos - q_neg).abs() > eq_tol {
                qs.push(q_pos);
            }
            let mut ok223 = true;
            for q in qs {
                let rep = match check_condition_223(c1, c2, q, g.window, p) {
                    Ok(r) => r,
                    Err(ClassifyError::MissingDeclaration(m)) => {
                        return Ok(undetermined(fired, Some(case), vec![m]))
                    }
                    Err(e) => return Err(e),
                };
                fired.push(clause(
                    "Thm2.2.3",
                    rep.neighborhoods_ok,
                    true,
                    Some(rep.failure_witness.clone().unwrap_or_else(|| {
                        format!(
                            "q = {}: {} window components, compact neighborhoods available",
                            q.to_f64().unwrap_or(f64::NAN),
                            rep.components_in_window
                        )
                    })),
                ));
                ok223 &= rep.neighborhoods_ok;
            }
            if !ok223 {
                return Ok(not_cw(fired, case));
            }

            let p2 = match eval_prop2_clauses(c1, c2, eq_tol) {
                Ok(v) => v,
                Err(ClassifyError::MissingDeclaration(m)) => {
                    return Ok(undetermined(fired, Some(case), vec![m]))
                }
                Err(e) => return Err(e),
            };
            let p3 = eval_prop3_clauses(c1, c2, eq_tol)?;
            let t3 = eval_thm3_conditions(c1, c2, eq_tol)?;
            for (k, v) in p2.iter().enumerate() {
                fired.push(clause(&format!("Prop2.{}", k + 1), v.holds(), true, None));
            }
            for (k, v) in p3.iter().enumerate() {
                fired.push(clause(&format!("Prop3.{}", k + 1), v.holds(), true, None));
            }
            for (k, v) in t3.iter().enumerate() {
                fired.push(clause(&format!("Thm3.{}", k + 1), v.holds(), true, None));
            }
            is_graph = t3.iter().all(|v| v.holds());

            // informational: the almost-unimodal route
            let au1 = check_almost_unimodal(c1, -1, g.window);
            let au2 = check_almost_unimodal(c2, 1, g.window);
            let p11 = c1.tails().neg.critical_set_unbounded
                || c1.tails().pos.critical_set_unbounded
                || au1.holds;
            let p12 = c2.tails().neg.critical_set_unbounded
                || c2.tails().pos.critical_set_unbounded
                || au2.holds;
            fired.push(clause(
                "Prop1.1",
                p11,
                true,
                au1.failure.clone().or_else(|| {
                    Some("critical set of c1 unbounded or -c1 almost-unimodal".into())
                }),
            ));
            fired.push(clause(
                "Prop1.2",
                p12,
                true,
                au2.failure.clone().or_else(|| {
                    Some("critical set of c2 unbounded or c2 almost-unimodal".into())
                }),
            ));
            fired.push(clause("Prop1", p11 && p12, true, None));
            if (p11 && p12) && !is_graph {
                fired.push(clause(
                    "Prop1-vs-Thm3",
                    false,
                    true,
                    Some(
                        "the almost-unimodal route says graph while the dichotomy conditions \
                         deny it; the dichotomy verdict is kept"
                            .into(),
                    ),
                ));
            }
        }
        AsymptoticCase::BothDiverge { .. } => {
            fired.push(clause(
                "Thm4",
                true,
                true,
                Some("both boundary functions diverge on both sides; the height function is proper".into()),
            ));
            let unbounded = any_unbounded_criticals(c1, c2);
            fired.push(clause(
                "Thm4.iff",
                unbounded,
                true,
                Some(if unbounded {
                    "the union of the critical sets is unbounded".into()
                } else {
                    "the union of the critical sets is bounded".into()
                }),
            ));
            is_graph = unbounded;
        }
        AsymptoticCase::Mixed {
            finite_side, q, ..
        } => {
            let rep = match check_condition_223(c1, c2, q, g.window, p) {
                Ok(r) => r,
                Err(ClassifyError::MissingDeclaration(m)) => {
                    return Ok(undetermined(fired, Some(case), vec![m]))
                }
                Err(e) => return Err(e),
            };
            fired.push(clause(
                "Thm5.3",
                rep.neighborhoods_ok,
                true,
                rep.failure_witness.clone(),
            ));
            if !rep.neighborhoods_ok {
                return Ok(not_cw(fired, case));
            }
            // the dichotomy pair on the finite side, plus critical points
            // running out toward the divergent side
            let (ka, kb) = match finite_side {
                TailSide::NegInf => (0usize, 2usize),
                TailSide::PosInf => (1usize, 3usize),
            };
            let pair = (|| -> Result<bool, ClassifyError> {
                Ok(clauses::thm3_condition_raw(c1, c2, ka)?
                    && clauses::thm3_condition_raw(c1, c2, kb)?)
            })();
            let cond54 = match pair {
                Ok(v) => v,
                Err(ClassifyError::MissingDeclaration(m)) => {
                    return Ok(undetermined(fired, Some(case), vec![m]))
                }
                Err(e) => return Err(e),
            };
            let divergent_side = match finite_side {
                TailSide::NegInf => TailSide::PosInf,
                TailSide::PosInf => TailSide::NegInf,
            };
            let cond55 = side_unbounded(c1, c2, divergent_side);
            fired.push(clause(
                "Thm5.4",
                cond54,
                true,
                Some(format!(
                    "dichotomy conditions {} on the finite-limit side",
                    if cond54 { "hold" } else { "fail" }
                )),
            ));
            fired.push(clause(
                "Thm5.5",
                cond55,
                true,
                Some(format!(
                    "critical set {} toward the divergent side",
                    if cond55 { "unbounded" } else { "bounded" }
                )),
            ));
            is_graph = cond54 && cond55;
        }
    }

    let kind = if is_graph {
        if any_unbounded_criticals(c1, c2) {
            ReebSpaceKind::InfiniteGraph
        } else {
            ReebSpaceKind::FiniteGraph
        }
    } else {
        ReebSpaceKind::GraphWithEnds
    };

    let verdict = Verdict {
        reeb_space_kind: kind,
        is_reeb_graph: true,
        asymptotic_case: Some(case),
        fired_clauses: fired,
        undetermined_reasons: Vec::new(),
    };
    let reclassified = reclassify_ends(g, c1, c2);
    Ok((verdict, reclassified))
}
