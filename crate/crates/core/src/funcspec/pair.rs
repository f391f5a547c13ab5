//! Pair-level reasoning: the ordering certificate proving `c1 < c2` on the
//! window, and declaration-driven tail facts about the pair.

use super::{FuncSpecError, FunctionSpec, SignVsLimit, TailLimit, TailSide};
use crate::expr::{BinaryOp, Expr};
use crate::interval::Interval;
use crate::scalar::{s, Scalar};
use serde::Serialize;

/// Whether the declared tails put an entire half-line tail of `S(t)` into the
/// region: `c1 <= t <= c2` holds all the way to infinity on `side`. Equality
/// of `t` with a declared finite limit (within `eq_tol`) is decided by the
/// declared sign against the limit.
pub fn tail_overlap_unbounded<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    t: S,
    side: TailSide,
    eq_tol: S,
) -> bool {
    let d1 = c1.tails().side(side);
    let d2 = c2.tails().side(side);
    let lo_ok = match d1.limit {
        TailLimit::MinusInf => true,
        TailLimit::PlusInf => false,
        TailLimit::Finite(q) => {
            if (q - t).abs() <= eq_tol {
                matches!(
                    d1.sign_vs_limit,
                    Some(SignVsLimit::StrictlyBelow | SignVsLimit::TouchesFromBelow)
                )
            } else {
                q < t
            }
        }
    };
    let hi_ok = match d2.limit {
        TailLimit::PlusInf => true,
        TailLimit::MinusInf => false,
        TailLimit::Finite(q) => {
            if (q - t).abs() <= eq_tol {
                matches!(
                    d2.sign_vs_limit,
                    Some(SignVsLimit::StrictlyAbove | SignVsLimit::TouchesFromAbove)
                )
            } else {
                q > t
            }
        }
    };
    lo_ok && hi_ok
}

/// Result of a successful ordering check: `min_gap` is a certified lower
/// bound for `min (c2 - c1)` over the window.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OrderingCertificate<S> {
    pub min_gap: S,
    pub leaves_checked: usize,
}

/// Certifies `c1(x) < c2(x)` for all `x` in `window` by adaptive subdivision
/// of an interval evaluation of `c2 - c1`.
pub fn validate_pair<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    window: Interval<S>,
) -> Result<OrderingCertificate<S>, FuncSpecError> {
    let diff = Expr::Binary(
        BinaryOp::Sub,
        Box::new(c2.expr().clone()),
        Box::new(c1.expr().clone()),
    );
    let min_width = window.width() * s::<S>(1e-9);
    let mut min_gap = S::infinity();
    let mut leaves = 0usize;
    let mut stack = vec![window];
    while let Some(iv) = stack.pop() {
        let violation = |enc: Option<Interval<S>>| {
            let (elo, ehi) = enc
                .map(|e| {
                    (
                        e.lo().to_f64().unwrap_or(f64::NAN),
                        e.hi().to_f64().unwrap_or(f64::NAN),
                    )
                })
                .unwrap_or((f64::NAN, f64::NAN));
            FuncSpecError::OrderViolation {
                lo: iv.lo().to_f64().unwrap_or(f64::NAN),
                hi: iv.hi().to_f64().unwrap_or(f64::NAN),
                enc_lo: elo,
                enc_hi: ehi,
            }
        };
        match diff.eval_interval(&iv) {
            Ok(enc) if enc.is_strictly_positive() => {
                min_gap = min_gap.min(enc.lo());
                leaves += 1;
            }
            Ok(enc) if enc.is_strictly_negative() => return Err(violation(Some(enc))),
            Ok(enc) => {
                if iv.width() <= min_width {
                    return Err(violation(Some(enc)));
                }
                let (a, b) = iv.split_at(iv.midpoint());
                stack.push(a);
                stack.push(b);
            }
            Err(_) => {
                if iv.width() <= min_width {
                    return Err(violation(None));
                }
                let (a, b) = iv.split_at(iv.midpoint());
                stack.push(a);
                stack.push(b);
            }
        }
    }
    Ok(OrderingCertificate {
        min_gap,
        leaves_checked: leaves,
    })
}
