//! Consistency checks of declared tail behavior against window samples.
//!
//! Declarations stay authoritative: these checks can pass, warn, or — only
//! when interval arithmetic certifies a sign that contradicts a declaration —
//! fail hard with `DeclarationContradiction`.

use super::{
    FuncSpecError, FunctionSpec, MonotoneDirection, SignVsLimit, TailLimit, TailSide,
};
use crate::expr::{BinaryOp, Expr};
use crate::interval::Interval;
use crate::scalar::{s, Scalar};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Warn(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct DeclarationCheck {
    pub side: TailSide,
    pub item: String,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct DeclarationReport {
    pub checks: Vec<DeclarationCheck>,
}

impl DeclarationReport {
    pub fn warnings(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| matches!(c.status, CheckStatus::Warn(_)))
            .count()
    }
}

/// Point enclosure of `f - q` (or `f` itself for `q = None`).
fn point_enc<S: Scalar>(e: &Expr<S>, x: S) -> Option<Interval<S>> {
    e.eval_interval(&Interval::point(x)).ok()
}

/// Samples the outer decile of the window on each declared side (64+ points,
/// ordered from the window interior toward the edge) and checks every
/// declared item. Returns the per-item pass/warn report.
pub fn verify_declarations<S: Scalar>(
    f: &FunctionSpec<S>,
    window: Interval<S>,
) -> Result<DeclarationReport, FuncSpecError> {
    let mut report = DeclarationReport::default();
    for side in [TailSide::NegInf, TailSide::PosInf] {
        check_side(f, window, side, &mut report)?;
    }
    Ok(report)
}

fn check_side<S: Scalar>(
    f: &FunctionSpec<S>,
    window: Interval<S>,
    side: TailSide,
    report: &mut DeclarationReport,
) -> Result<(), FuncSpecError> {
    const N: usize = 64;
    let decl = f.tails().side(side);
    let w = window.width();
    let decile = w * s::<S>(0.1);
    // region runs from the interior edge of the decile toward the window edge
    let (inner, outer) = match side {
        TailSide::NegInf => (window.lo() + decile, window.lo()),
        TailSide::PosInf => (window.hi() - decile, window.hi()),
    };
    if let Some(mb) = &decl.monotone_beyond {
        let cleared = match side {
            TailSide::NegInf => inner <= mb.threshold,
            TailSide::PosInf => inner >= mb.threshold,
        };
        if !cleared {
            return Err(FuncSpecError::WindowTooNarrow {
                side,
                threshold: mb.threshold.to_f64().unwrap_or(f64::NAN),
            });
        }
    }

    let xs: Vec<S> = (0..N)
        .map(|k| {
            let tk = s::<S>(k as f64 / (N - 1) as f64);
            inner + (outer - inner) * tk
        })
        .collect();

    let push = |report: &mut DeclarationReport, item: &str, status: CheckStatus| {
        report.checks.push(DeclarationCheck {
            side,
            item: item.to_string(),
            status,
        });
    };

    // certified derivative sign changes across the decile (used by both the
    // limit heuristics and the boundedness check)
    let mut deriv_sign_changes = 0usize;
    {
        let mut last: Option<bool> = None;
        for &x in &xs {
            if let Some(enc) = point_enc(f.deriv(), x) {
                let sign = if enc.is_strictly_positive() {
                    Some(true)
                } else if enc.is_strictly_negative() {
                    Some(false)
                } else {
                    None
                };
                if let (Some(prev), Some(cur)) = (last, sign) {
                    if prev != cur {
                        deriv_sign_changes += 1;
                    }
                }
                if sign.is_some() {
                    last = sign;
                }
            }
        }
    }

    // limit trend
    match decl.limit {
        TailLimit::Finite(q) => {
            let dist = Expr::Binary(
                BinaryOp::Sub,
                Box::new(f.expr().clone()),
                Box::new(Expr::Const(q)),
            );
            let quarter = N / 4;
            // certified |f - q| bounds per sample
            let mut lb = Vec::with_capacity(N);
            let mut ub = Vec::with_capacity(N);
            for &x in &xs {
                let enc = point_enc(&dist, x).ok_or_else(|| FuncSpecError::Domain(
                    crate::expr::DomainError::NonFinite {
                        at: x.to_f64().unwrap_or(f64::NAN),
                    },
                ))?;
                let lo = if enc.is_strictly_positive() {
                    enc.lo()
                } else if enc.is_strictly_negative() {
                    -enc.hi()
                } else {
                    S::zero()
                };
                lb.push(lo);
                ub.push(enc.lo().abs().max(enc.hi().abs()));
            }
            let max_inner_ub = ub[..quarter].iter().cloned().fold(S::zero(), S::max);
            let max_outer_ub = ub[N - quarter..].iter().cloned().fold(S::zero(), S::max);
            let min_outer_lb = lb[N - quarter..]
                .iter()
                .cloned()
                .fold(S::infinity(), S::min);
            // outward growth only contradicts the declared limit when the
            // function is one-signed in slope across the decile; an
            // oscillation cresting at the window edge is not evidence
            if min_outer_lb > max_inner_ub && deriv_sign_changes == 0 {
                return Err(FuncSpecError::DeclarationContradiction {
                    side,
                    item: "limit".into(),
                    at: xs[N - 1].to_f64().unwrap_or(f64::NAN),
                    message: format!(
                        "distance to declared limit certifiably grows toward the window edge \
                         (outer >= {}, inner <= {})",
                        min_outer_lb, max_inner_ub
                    ),
                });
            }
            let slack = s::<S>(1e-12) * (S::one() + max_inner_ub);
            if max_outer_ub <= max_inner_ub + slack {
                push(report, "limit", CheckStatus::Pass);
            } else {
                push(
                    report,
                    "limit",
                    CheckStatus::Warn("no decreasing trend toward declared limit".into()),
                );
            }

            // sign_vs_limit (presence enforced at declaration validation)
            if let Some(sig) = decl.sign_vs_limit {
                let slack = s::<S>(1e-12) * (S::one() + max_inner_ub);
                let mut above = 0usize;
                let mut below = 0usize;
                let mut contra: Option<(S, String)> = None;
                for &x in &xs {
                    if let Some(enc) = point_enc(&dist, x) {
                        if enc.lo() > slack {
                            above += 1;
                        }
                        if enc.hi() < -slack {
                            below += 1;
                        }
                        match sig {
                            SignVsLimit::StrictlyAbove | SignVsLimit::TouchesFromAbove => {
                                if enc.hi() < -slack {
                                    contra = Some((x, "certified below the limit".into()));
                                }
                            }
                            SignVsLimit::StrictlyBelow | SignVsLimit::TouchesFromBelow => {
                                if enc.lo() > slack {
                                    contra = Some((x, "certified above the limit".into()));
                                }
                            }
                            SignVsLimit::Crosses => {}
                        }
                    }
                    if contra.is_some() {
                        break;
                    }
                }
                if let Some((x, message)) = contra {
                    return Err(FuncSpecError::DeclarationContradiction {
                        side,
                        item: "sign_vs_limit".into(),
                        at: x.to_f64().unwrap_or(f64::NAN),
                        message,
                    });
                }
                let status = match sig {
                    SignVsLimit::Crosses if above == 0 || below == 0 => {
                        CheckStatus::Warn("declared crossing not witnessed by samples".into())
                    }
                    _ => CheckStatus::Pass,
                };
                push(report, "sign_vs_limit", status);
            }
        }
        TailLimit::PlusInf | TailLimit::MinusInf => {
            let sign = if matches!(decl.limit, TailLimit::PlusInf) {
                S::one()
            } else {
                -S::one()
            };
            let quarter = N / 4;
            let vals: Result<Vec<S>, _> = xs.iter().map(|&x| f.eval(x)).collect();
            let vals = vals?;
            let max_inner = vals[..quarter]
                .iter()
                .map(|&v| v * sign)
                .fold(S::neg_infinity(), S::max);
            let min_outer = vals[N - quarter..]
                .iter()
                .map(|&v| v * sign)
                .fold(S::infinity(), S::min);
            if min_outer > max_inner {
                push(report, "limit", CheckStatus::Pass);
            } else {
                push(
                    report,
                    "limit",
                    CheckStatus::Warn("no divergence trend toward declared infinity".into()),
                );
            }
        }
    }

    // tail monotonicity
    if let Some(mb) = &decl.monotone_beyond {
        let slack = s::<S>(1e-13);
        for &x in &xs {
            if let Some(enc) = point_enc(f.deriv(), x) {
                let bad = match mb.direction {
                    MonotoneDirection::Increasing => enc.hi() < -slack,
                    MonotoneDirection::Decreasing => enc.lo() > slack,
                };
                if bad {
                    return Err(FuncSpecError::DeclarationContradiction {
                        side,
                        item: "monotone_beyond".into(),
                        at: x.to_f64().unwrap_or(f64::NAN),
                        message: "derivative sign certified against declared direction".into(),
                    });
                }
            }
        }
        push(report, "monotone_beyond", CheckStatus::Pass);
    }

    // critical-set boundedness: derivative sign changes in the decile
    let changes = deriv_sign_changes;
    let status = if decl.critical_set_unbounded {
        if changes > 0 {
            CheckStatus::Pass
        } else {
            CheckStatus::Warn("no critical points observed in the outer decile".into())
        }
    } else if changes == 0 || decl.monotone_beyond.is_none() {
        CheckStatus::Pass
    } else {
        CheckStatus::Warn("critical points in the outer decile despite bounded declaration".into())
    };
    push(report, "critical_set_unbounded", status);

    Ok(())
}
