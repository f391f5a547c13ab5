//! Clause evaluators for the tail-behavior case analysis.
//!
//! Each clause is decided from the declared tails (boundedness of the
//! critical set, tail monotone direction) and records its reliance on
//! declarations; the evaluators refuse to guess when a needed declaration is
//! absent.

use super::ClassifyError;
use crate::funcspec::{FunctionSpec, MonotoneDirection, TailLimit, TailSide};
use crate::scalar::Scalar;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClauseEval {
    True,
    False,
    NotApplicable,
}

impl ClauseEval {
    pub fn holds(self) -> bool {
        self == ClauseEval::True
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DivergeSign {
    PlusInf,
    MinusInf,
}

/// Which of the three treated tail regimes the declared limits select.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "case")]
pub enum AsymptoticCase<S> {
    BothFinite { q_neg: S, q_pos: S },
    BothDiverge { neg: DivergeSign, pos: DivergeSign },
    Mixed {
        finite_side: TailSide,
        q: S,
        diverge: DivergeSign,
    },
}

/// Classifies the declared limit pattern, or explains why it is outside the
/// treated regimes.
pub fn asymptotic_case<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    eq_tol: S,
) -> Result<AsymptoticCase<S>, String> {
    #[derive(Clone, Copy)]
    enum SideKind<S> {
        Finite(S),
        Diverge(DivergeSign),
    }
    let side = |s: TailSide| -> Result<SideKind<S>, String> {
        let l1 = c1.tails().side(s).limit;
        let l2 = c2.tails().side(s).limit;
        match (l1, l2) {
            (TailLimit::Finite(a), TailLimit::Finite(b)) => {
                if (a - b).abs() <= eq_tol {
                    Ok(SideKind::Finite(a))
                } else {
                    Err(format!(
                        "boundary functions declare different finite limits on {s:?} ({a} vs {b})"
                    ))
                }
            }
            (TailLimit::PlusInf, TailLimit::PlusInf) => Ok(SideKind::Diverge(DivergeSign::PlusInf)),
            (TailLimit::MinusInf, TailLimit::MinusInf) => {
                Ok(SideKind::Diverge(DivergeSign::MinusInf))
            }
            _ => Err(format!(
                "boundary functions declare incompatible limits on {s:?}"
            )),
        }
    };
    let neg = side(TailSide::NegInf)?;
    let pos = side(TailSide::PosInf)?;
    match (neg, pos) {
        (SideKind::Finite(q_neg), SideKind::Finite(q_pos)) => {
            Ok(AsymptoticCase::BothFinite { q_neg, q_pos })
        }
        (SideKind::Diverge(n), SideKind::Diverge(p)) => {
            Ok(AsymptoticCase::BothDiverge { neg: n, pos: p })
        }
        (SideKind::Finite(q), SideKind::Diverge(d)) => Ok(AsymptoticCase::Mixed {
            finite_side: TailSide::NegInf,
            q,
            diverge: d,
        }),
        (SideKind::Diverge(d), SideKind::Finite(q)) => Ok(AsymptoticCase::Mixed {
            finite_side: TailSide::PosInf,
            q,
            diverge: d,
        }),
    }
}

fn is_finite_case<S: Scalar>(c1: &FunctionSpec<S>, c2: &FunctionSpec<S>, eq_tol: S) -> bool {
    matches!(
        asymptotic_case(c1, c2, eq_tol),
        Ok(AsymptoticCase::BothFinite { .. })
    )
}

/// Declared monotone direction of a function on one tail, required when the
/// critical set there is bounded.
fn tail_direction<S: Scalar>(
    f: &FunctionSpec<S>,
    side: TailSide,
    who: &str,
) -> Result<MonotoneDirection, ClassifyError> {
    f.tails()
        .side(side)
        .monotone_beyond
        .as_ref()
        .map(|m| m.direction)
        .ok_or_else(|| {
            ClassifyError::MissingDeclaration(format!(
                "{who} has a bounded critical set on {side:?} but no declared tail monotonicity"
            ))
        })
}

/// Per-clause tables: (function, side, monotone direction of the function
/// itself that satisfies the clause).
fn prop2_table<'a, S>(
    c1: &'a FunctionSpec<S>,
    c2: &'a FunctionSpec<S>,
) -> [(&'a FunctionSpec<S>, TailSide, MonotoneDirection, &'static str); 4] {
    [
        (c2, TailSide::NegInf, MonotoneDirection::Increasing, "c2"),
        (c2, TailSide::PosInf, MonotoneDirection::Decreasing, "c2"),
        (c1, TailSide::NegInf, MonotoneDirection::Decreasing, "c1"),
        (c1, TailSide::PosInf, MonotoneDirection::Increasing, "c1"),
    ]
}

pub(crate) fn prop2_clause_raw<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    k: usize,
) -> Result<bool, ClassifyError> {
    let (f, side, dir, who) = prop2_table(c1, c2)[k];
    if f.tails().side(side).critical_set_unbounded {
        return Ok(true);
    }
    Ok(tail_direction(f, side, who)? == dir)
}

/// Rescue variant of condition `k`: the function is bounded and monotone the
/// wrong way on that side, but the partner's critical set is unbounded there.
pub(crate) fn thm3_condition_raw<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    k: usize,
) -> Result<bool, ClassifyError> {
    if prop2_clause_raw(c1, c2, k)? {
        return Ok(true);
    }
    let (f, side, dir, who) = prop2_table(c1, c2)[k];
    let partner = if k < 2 { c1 } else { c2 };
    let f_bounded = !f.tails().side(side).critical_set_unbounded;
    let wrong_way = f_bounded && tail_direction(f, side, who)? != dir;
    Ok(wrong_way && partner.tails().side(side).critical_set_unbounded)
}

/// The four expansion-path conditions: each tail either carries critical
/// points all the way out, or the relevant function is strictly monotone in
/// the direction that keeps boundary paths moving.
pub fn eval_prop2_clauses<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    eq_tol: S,
) -> Result<[ClauseEval; 4], ClassifyError> {
    if !is_finite_case(c1, c2, eq_tol) {
        return Ok([ClauseEval::NotApplicable; 4]);
    }
    let mut out = [ClauseEval::False; 4];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = if prop2_clause_raw(c1, c2, k)? {
            ClauseEval::True
        } else {
            ClauseEval::False
        };
    }
    Ok(out)
}

/// The four obstruction conditions: a bounded-critical tail that is monotone
/// the wrong way, with the partner's critical set bounded on the same side.
pub fn eval_prop3_clauses<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    eq_tol: S,
) -> Result<[ClauseEval; 4], ClassifyError> {
    if !is_finite_case(c1, c2, eq_tol) {
        return Ok([ClauseEval::NotApplicable; 4]);
    }
    let mut out = [ClauseEval::False; 4];
    for (k, slot) in out.iter_mut().enumerate() {
        // the clause function is bounded and fails to be monotone the good
        // way on that side, while the partner is bounded there too
        let (f, side, dir, who) = prop2_table(c1, c2)[k];
        let partner = if k < 2 { c1 } else { c2 };
        let f_bounded = !f.tails().side(side).critical_set_unbounded;
        let partner_bounded = !partner.tails().side(side).critical_set_unbounded;
        *slot = if !f_bounded || !partner_bounded {
            ClauseEval::False
        } else if tail_direction(f, side, who)? != dir {
            ClauseEval::True
        } else {
            ClauseEval::False
        };
    }
    Ok(out)
}

/// The graph-vs-ends dichotomy conditions: each is the expansion-path clause
/// or its rescue variant where the partner's critical set is unbounded on the
/// obstructed side.
pub fn eval_thm3_conditions<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    eq_tol: S,
) -> Result<[ClauseEval; 4], ClassifyError> {
    if !is_finite_case(c1, c2, eq_tol) {
        return Ok([ClauseEval::NotApplicable; 4]);
    }
    let mut out = [ClauseEval::False; 4];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = if thm3_condition_raw(c1, c2, k)? {
            ClauseEval::True
        } else {
            ClauseEval::False
        };
    }
    Ok(out)
}
