//! Boundary-function bundles: one closed-form expression together with its
//! verified critical-point data on a finite window and its declared tail
//! behavior at infinity.
//!
//! Tail facts (limits, tail monotonicity, boundedness of the critical set)
//! are declared by the user and checked for consistency against window
//! samples — they are never inferred, because behavior at infinity is not
//! decidable from finite data. Classification certificates record when they
//! rely on declarations.

mod declarations;
mod isolate;
pub(crate) mod pair;

pub use declarations::{verify_declarations, CheckStatus, DeclarationCheck, DeclarationReport};
pub use isolate::isolate_critical_points;
pub use pair::{tail_overlap_unbounded, validate_pair, OrderingCertificate};

use crate::expr::{differentiate, DomainError, Expr};
use crate::interval::Interval;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailSide {
    NegInf,
    PosInf,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailLimit<S> {
    Finite(S),
    PlusInf,
    MinusInf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonotoneDirection {
    Increasing,
    Decreasing,
}

/// How the function sits against its finite limit on a tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignVsLimit {
    StrictlyAbove,
    StrictlyBelow,
    TouchesFromAbove,
    TouchesFromBelow,
    Crosses,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonotoneBeyond<S> {
    pub threshold: S,
    pub direction: MonotoneDirection,
}

/// Declared behavior of one boundary function on one side of infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailDeclaration<S> {
    pub limit: TailLimit<S>,
    #[serde(default = "none_monotone")]
    pub monotone_beyond: Option<MonotoneBeyond<S>>,
    pub critical_set_unbounded: bool,
    #[serde(default)]
    pub sign_vs_limit: Option<SignVsLimit>,
}

fn none_monotone<S>() -> Option<MonotoneBeyond<S>> {
    None
}

impl<S: Scalar> TailDeclaration<S> {
    pub fn validate(&self, side: TailSide) -> Result<(), FuncSpecError> {
        if self.monotone_beyond.is_some() && self.critical_set_unbounded {
            return Err(FuncSpecError::InvalidDeclaration {
                side,
                message: "monotone_beyond requires a bounded critical set on that side".into(),
            });
        }
        match (self.limit, self.sign_vs_limit.is_some()) {
            (TailLimit::Finite(_), false) => Err(FuncSpecError::InvalidDeclaration {
                side,
                message: "finite limit requires sign_vs_limit".into(),
            }),
            (TailLimit::PlusInf | TailLimit::MinusInf, true) => {
                Err(FuncSpecError::InvalidDeclaration {
                    side,
                    message: "sign_vs_limit only applies to finite limits".into(),
                })
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tails<S> {
    pub neg: TailDeclaration<S>,
    pub pos: TailDeclaration<S>,
}

impl<S: Scalar> Tails<S> {
    pub fn side(&self, side: TailSide) -> &TailDeclaration<S> {
        match side {
            TailSide::NegInf => &self.neg,
            TailSide::PosInf => &self.pos,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalPointKind {
    LocalMin,
    LocalMax,
    InflectionLike,
}

/// An isolated critical point: derivative root with a certifying bracket.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint<S> {
    pub x: S,
    pub value: S,
    pub bracket: Interval<S>,
    pub kind: CriticalPointKind,
}

/// A maximal interval between consecutive critical points (or window edges);
/// the function is strictly monotone across it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece<S> {
    pub x_lo: S,
    pub x_hi: S,
    pub v_lo: S,
    pub v_hi: S,
}

#[derive(Debug, Clone, Error)]
pub enum FuncSpecError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("invalid tail declaration on {side:?}: {message}")]
    InvalidDeclaration { side: TailSide, message: String },
    #[error("derivative sign could not be resolved on [{lo}, {hi}] at tolerance {tol}")]
    CertificationFailure { lo: f64, hi: f64, tol: f64 },
    #[error("ordering not certified: c2 - c1 not positive on [{lo}, {hi}] (enclosure [{enc_lo}, {enc_hi}])")]
    OrderViolation {
        lo: f64,
        hi: f64,
        enc_lo: f64,
        enc_hi: f64,
    },
    #[error("declared {item} on {side:?} contradicted near x = {at}: {message}")]
    DeclarationContradiction {
        side: TailSide,
        item: String,
        at: f64,
        message: String,
    },
    #[error("window too narrow: the outer decile on {side:?} does not clear the declared monotone threshold {threshold}")]
    WindowTooNarrow { side: TailSide, threshold: f64 },
}

/// One boundary function with everything the sweep and the classifier need.
#[derive(Debug, Clone)]
pub struct FunctionSpec<S> {
    expr: Expr<S>,
    deriv: Expr<S>,
    deriv2: Expr<S>,
    tails: Tails<S>,
    window: Interval<S>,
    critical_points: Vec<CriticalPoint<S>>,
    pieces: Vec<Piece<S>>,
}

impl<S: Scalar> FunctionSpec<S> {
    /// Differentiates, isolates the critical points on `window`, and caches
    /// the monotone pieces. `tol` is the isolating-bracket width target.
    pub fn build(
        expr: Expr<S>,
        tails: Tails<S>,
        window: Interval<S>,
        tol: S,
    ) -> Result<Self, FuncSpecError> {
        tails.neg.validate(TailSide::NegInf)?;
        tails.pos.validate(TailSide::PosInf)?;
        let deriv = differentiate(&expr);
        let deriv2 = differentiate(&deriv);
        let critical_points = isolate_critical_points(&expr, &deriv, &deriv2, window, tol)?;
        let pieces = build_pieces(&expr, &critical_points, window)?;
        Ok(FunctionSpec {
            expr,
            deriv,
            deriv2,
            tails,
            window,
            critical_points,
            pieces,
        })
    }

    pub fn expr(&self) -> &Expr<S> {
        &self.expr
    }

    pub fn deriv(&self) -> &Expr<S> {
        &self.deriv
    }

    pub fn deriv2(&self) -> &Expr<S> {
        &self.deriv2
    }

    pub fn tails(&self) -> &Tails<S> {
        &self.tails
    }

    pub fn window(&self) -> Interval<S> {
        self.window
    }

    pub fn critical_points(&self) -> &[CriticalPoint<S>] {
        &self.critical_points
    }

    pub fn pieces(&self) -> &[Piece<S>] {
        &self.pieces
    }

    pub fn eval(&self, x: S) -> Result<S, DomainError> {
        self.expr.eval(x)
    }

    pub fn deriv_at(&self, x: S) -> Result<S, DomainError> {
        self.deriv.eval(x)
    }
}

fn build_pieces<S: Scalar>(
    expr: &Expr<S>,
    criticals: &[CriticalPoint<S>],
    window: Interval<S>,
) -> Result<Vec<Piece<S>>, FuncSpecError> {
    let mut xs = vec![window.lo()];
    for cp in criticals {
        if cp.x > *xs.last().unwrap() && cp.x < window.hi() {
            xs.push(cp.x);
        }
    }
    if window.hi() > *xs.last().unwrap() {
        xs.push(window.hi());
    }
    let mut pieces = Vec::with_capacity(xs.len().saturating_sub(1));
    for w in xs.windows(2) {
        let v_lo = expr.eval(w[0])?;
        let v_hi = expr.eval(w[1])?;
        pieces.push(Piece {
            x_lo: w[0],
            x_hi: w[1],
            v_lo,
            v_hi,
        });
    }
    Ok(pieces)
}
