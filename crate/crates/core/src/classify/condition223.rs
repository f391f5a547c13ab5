//! The compact-neighborhood condition at a declared limit level `q`: each
//! component of `S(q)` must admit a small compact neighborhood of contours
//! meeting no other critical contour. The implemented failure test: an
//! unbounded component of `S(q)` (decided from the sign-vs-limit
//! declarations) together with critical values accumulating at `q` (decided
//! from the critical-set-unboundedness declarations).

use super::ClassifyError;
use crate::funcspec::{pair::tail_overlap_unbounded, FunctionSpec, TailLimit, TailSide};
use crate::interval::Interval;
use crate::reeb::{level_components, Carrier, SweepParams};
use crate::scalar::Scalar;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Condition223Report<S> {
    pub q: S,
    pub components_in_window: usize,
    pub all_compact_in_window: bool,
    /// An unbounded component of `S(q)` exists, per declarations.
    pub unbounded_component: bool,
    /// Critical values accumulate at `q`, per declarations.
    pub accumulation_at_q: bool,
    pub neighborhoods_ok: bool,
    pub failure_witness: Option<String>,
    pub relies_on_declarations: bool,
}

/// Evaluates the condition at the declared finite limit level `q`.
pub fn check_condition_223<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    q: S,
    window: Interval<S>,
    p: &SweepParams<S>,
) -> Result<Condition223Report<S>, ClassifyError> {
    let declared = [TailSide::NegInf, TailSide::PosInf].iter().any(|&side| {
        [c1, c2].iter().any(|f| {
            matches!(f.tails().side(side).limit,
                TailLimit::Finite(qd) if (qd - q).abs() <= p.level_merge_tol)
        })
    });
    if !declared {
        return Err(ClassifyError::MissingDeclaration(format!(
            "{} is not a declared finite tail limit",
            q.to_f64().unwrap_or(f64::NAN)
        )));
    }
    for f in [c1, c2] {
        for side in [TailSide::NegInf, TailSide::PosInf] {
            let d = f.tails().side(side);
            if matches!(d.limit, TailLimit::Finite(_)) && d.sign_vs_limit.is_none() {
                return Err(ClassifyError::MissingDeclaration(format!(
                    "sign_vs_limit missing on {side:?}"
                )));
            }
        }
    }

    let row = level_components(c1, c2, q, window, p.root_tol)?;
    let components_in_window = row.components.len();
    let window_edge_contact = row.components.iter().any(|c| {
        c.lo_carrier == Carrier::WindowEdge || c.hi_carrier == Carrier::WindowEdge
    });

    let unbounded_neg = tail_overlap_unbounded(c1, c2, q, TailSide::NegInf, p.level_merge_tol);
    let unbounded_pos = tail_overlap_unbounded(c1, c2, q, TailSide::PosInf, p.level_merge_tol);
    let unbounded_component = unbounded_neg || unbounded_pos;
    let all_compact_in_window = !window_edge_contact && !unbounded_component;

    let accumulation_at_q = [c1, c2].iter().any(|f| {
        [TailSide::NegInf, TailSide::PosInf].iter().any(|&side| {
            let d = f.tails().side(side);
            d.critical_set_unbounded
                && matches!(d.limit, TailLimit::Finite(qd) if (qd - q).abs() <= p.level_merge_tol)
        })
    });

    let neighborhoods_ok = !(unbounded_component && accumulation_at_q);
    let failure_witness = (!neighborhoods_ok).then(|| {
        let side = if unbounded_neg { "negative" } else { "positive" };
        format!(
            "S({}) contains an unbounded component (full {side} tail) while critical values \
             accumulate at the same level",
            q.to_f64().unwrap_or(f64::NAN)
        )
    });

    Ok(Condition223Report {
        q,
        components_in_window,
        all_compact_in_window,
        unbounded_component,
        accumulation_at_q,
        neighborhoods_ok,
        failure_witness,
        relies_on_declarations: true,
    })
}
