//! Certified isolation of derivative roots (critical points) on a window.
//!
//! Adaptive bisection over the window keeps the invariant that every working
//! interval has certified nonzero derivative signs at both endpoints (split
//! points are nudged until their sign certifies). A leaf of width <= tol is
//! then certified as either a sign-change root, a touch-zero located through
//! the second derivative, or no root at all. Window edges get a separate
//! residual test so critical points sitting exactly on the boundary are kept.

use super::{CriticalPoint, CriticalPointKind, FuncSpecError};
use crate::expr::Expr;
use crate::interval::Interval;
use crate::scalar::{s, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Sign {
    Pos,
    Neg,
}

/// Certified sign of `e` at the point `x`, or `None` when the outward-rounded
/// enclosure straddles zero (or the evaluation leaves the domain).
pub(crate) fn certified_sign<S: Scalar>(e: &Expr<S>, x: S) -> Option<Sign> {
    let enc = e.eval_interval(&Interval::point(x)).ok()?;
    if enc.is_strictly_positive() {
        Some(Sign::Pos)
    } else if enc.is_strictly_negative() {
        Some(Sign::Neg)
    } else {
        None
    }
}

/// Absolute bound on `|e(x)|` certified by interval evaluation.
fn residual_bound<S: Scalar>(e: &Expr<S>, x: S) -> Option<S> {
    let enc = e.eval_interval(&Interval::point(x)).ok()?;
    Some(enc.lo().abs().max(enc.hi().abs()))
}

enum EdgeProbe<S> {
    /// Derivative is zero at the window edge up to representation error:
    /// an edge critical point.
    Critical,
    /// Certified nonzero sign at the edge.
    Signed(Sign),
    /// Sign unresolved beyond the representation-error threshold.
    Unresolved(S),
}

/// Probes a window edge. A root of the derivative lying mathematically on the
/// edge generally evaluates to a tiny nonzero value at the rounded edge
/// coordinate, so "zero" is judged against `|deriv'| * ulp(edge)`.
fn edge_probe<S: Scalar>(deriv: &Expr<S>, deriv2: &Expr<S>, edge: S) -> Option<EdgeProbe<S>> {
    let enc = deriv.eval_interval(&Interval::point(edge)).ok()?;
    let d_ub = enc.lo().abs().max(enc.hi().abs());
    let d2_ub = residual_bound(deriv2, edge).unwrap_or(S::zero());
    let floor = S::min_positive_value() * s::<S>(1e20);
    let threshold = (s::<S>(1024.0) * S::epsilon() * S::one().max(edge.abs()) * d2_ub).max(floor);
    if d_ub <= threshold {
        return Some(EdgeProbe::Critical);
    }
    if enc.is_strictly_positive() {
        Some(EdgeProbe::Signed(Sign::Pos))
    } else if enc.is_strictly_negative() {
        Some(EdgeProbe::Signed(Sign::Neg))
    } else {
        Some(EdgeProbe::Unresolved(d_ub))
    }
}

const SPLIT_FRACTIONS: [f64; 7] = [0.5, 0.53, 0.47, 0.56, 0.44, 0.61, 0.39];

fn certified_split<S: Scalar>(e: &Expr<S>, iv: &Interval<S>) -> Option<(S, Sign)> {
    for f in SPLIT_FRACTIONS {
        let m = iv.lo() + iv.width() * s::<S>(f);
        if m <= iv.lo() || m >= iv.hi() {
            continue;
        }
        if let Some(sign) = certified_sign(e, m) {
            return Some((m, sign));
        }
    }
    None
}

fn fail<S: Scalar>(iv: &Interval<S>, tol: S) -> FuncSpecError {
    FuncSpecError::CertificationFailure {
        lo: iv.lo().to_f64().unwrap_or(f64::NAN),
        hi: iv.hi().to_f64().unwrap_or(f64::NAN),
        tol: tol.to_f64().unwrap_or(f64::NAN),
    }
}

/// Shrinks a sign-change bracket by certified-sign bisection. Stops early if
/// no split point certifies (the bracket is then already at rounding scale).
fn polish<S: Scalar>(e: &Expr<S>, mut iv: Interval<S>, sl: Sign, target: S) -> Interval<S> {
    for _ in 0..120 {
        if iv.width() <= target {
            break;
        }
        match certified_split(e, &iv) {
            Some((m, sm)) => {
                iv = if sm == sl {
                    Interval::new(m, iv.hi())
                } else {
                    Interval::new(iv.lo(), m)
                };
            }
            None => break,
        }
    }
    iv
}

struct Isolator<'a, S> {
    expr: &'a Expr<S>,
    deriv: &'a Expr<S>,
    deriv2: &'a Expr<S>,
    tol: S,
    residual_tol: S,
    polish_target: S,
    found: Vec<CriticalPoint<S>>,
}

impl<S: Scalar> Isolator<'_, S> {
    fn push(&mut self, x: S, bracket: Interval<S>, kind: CriticalPointKind) -> Result<(), FuncSpecError> {
        let value = self.expr.eval(x)?;
        self.found.push(CriticalPoint {
            x,
            value,
            bracket,
            kind,
        });
        Ok(())
    }

    fn sign_change_root(
        &mut self,
        iv: Interval<S>,
        sl: Sign,
    ) -> Result<(), FuncSpecError> {
        let b = polish(self.deriv, iv, sl, self.polish_target);
        let kind = match sl {
            Sign::Neg => CriticalPointKind::LocalMin,
            Sign::Pos => CriticalPointKind::LocalMax,
        };
        self.push(b.midpoint(), b, kind)
    }

    /// Same-sign leaf whose derivative enclosure still straddles zero: locate
    /// the interior extremum of the derivative through the second derivative
    /// and decide between no root, a touch-zero, or a sub-tol pair of
    /// sign-change roots.
    fn same_sign_leaf(&mut self, iv: Interval<S>, sl: Sign) -> Result<(), FuncSpecError> {
        let enc2 = match self.deriv2.eval_interval(&iv) {
            Ok(e) => e,
            Err(_) => return Err(fail(&iv, self.tol)),
        };
        if enc2.is_strictly_positive() || enc2.is_strictly_negative() {
            // derivative strictly monotone across the leaf with equal endpoint
            // signs: no root here.
            return Ok(());
        }
        let s2l = certified_sign(self.deriv2, iv.lo());
        let s2h = certified_sign(self.deriv2, iv.hi());
        let (s2l, s2h) = match (s2l, s2h) {
            (Some(a), Some(b)) if a != b => (a, b),
            _ => return Err(fail(&iv, self.tol)),
        };
        let _ = s2h;
        let extremum = polish(self.deriv2, iv, s2l, self.polish_target);
        let m = extremum.midpoint();
        if let Some(sm) = certified_sign(self.deriv, m) {
            if sm != sl {
                // two sign-change roots inside one tol-width leaf
                self.sign_change_root(Interval::new(iv.lo(), m), sl)?;
                let flipped = match sl {
                    Sign::Pos => Sign::Neg,
                    Sign::Neg => Sign::Pos,
                };
                return self.sign_change_root(Interval::new(m, iv.hi()), flipped);
            }
        }
        // Bound the dip extremum of the derivative over the located bracket;
        // the decision is made at residual resolution.
        let enc = match self.deriv.eval_interval(&extremum) {
            Ok(e) => e,
            Err(_) => return Err(fail(&iv, self.tol)),
        };
        let toward_zero = match sl {
            Sign::Pos => enc.lo(),
            Sign::Neg => -enc.hi(),
        };
        if toward_zero > self.residual_tol {
            Ok(()) // dip certifiably stays off zero
        } else if toward_zero >= -self.residual_tol {
            self.push(m, extremum, CriticalPointKind::InflectionLike)
        } else {
            Err(fail(&iv, self.tol))
        }
    }

    fn search(&mut self, iv: Interval<S>, sl: Sign, sh: Sign) -> Result<(), FuncSpecError> {
        let prune = match self.deriv.eval_interval(&iv) {
            Ok(enc) => enc.is_strictly_positive() || enc.is_strictly_negative(),
            Err(_) => false, // cannot evaluate at this width; refine below
        };
        if prune {
            return Ok(());
        }
        if iv.width() <= self.tol {
            return if sl != sh {
                self.sign_change_root(iv, sl)
            } else {
                self.same_sign_leaf(iv, sl)
            };
        }
        match certified_split(self.deriv, &iv) {
            Some((m, sm)) => {
                self.search(Interval::new(iv.lo(), m), sl, sm)?;
                self.search(Interval::new(m, iv.hi()), sm, sh)
            }
            None => Err(fail(&iv, self.tol)),
        }
    }
}


#[derive(Clone, Copy, PartialEq)]
enum Side {
    Lo,
    Hi,
}

/// Handles one window edge: records an edge critical point when the
/// derivative vanishes there up to representation error, and returns the
/// interior search endpoint with its certified sign.
fn resolve_edge<S: Scalar>(
    iso: &mut Isolator<'_, S>,
    window: Interval<S>,
    side: Side,
) -> Result<(S, Sign), FuncSpecError> {
    let edge = match side {
        Side::Lo => window.lo(),
        Side::Hi => window.hi(),
    };
    let tol = iso.tol;
    match edge_probe(iso.deriv, iso.deriv2, edge).ok_or_else(|| fail(&Interval::point(edge), tol))?
    {
        EdgeProbe::Signed(sg) => Ok((edge, sg)),
        EdgeProbe::Unresolved(_) => Err(fail(&Interval::point(edge), tol)),
        EdgeProbe::Critical => {
            let mut margin = tol;
            loop {
                let inset = match side {
                    Side::Lo => edge + margin,
                    Side::Hi => edge - margin,
                };
                if inset <= window.lo() || inset >= window.hi() {
                    return Err(fail(&window, tol));
                }
                if let Some(sg) = certified_sign(iso.deriv, inset) {
                    // rising off a left edge (or falling into a right edge)
                    // makes the edge a boundary minimum
                    let min = match side {
                        Side::Lo => sg == Sign::Pos,
                        Side::Hi => sg == Sign::Neg,
                    };
                    let kind = if min {
                        CriticalPointKind::LocalMin
                    } else {
                        CriticalPointKind::LocalMax
                    };
                    let bracket = match side {
                        Side::Lo => Interval::new(edge, inset),
                        Side::Hi => Interval::new(inset, edge),
                    };
                    iso.push(edge, bracket, kind)?;
                    return Ok((inset, sg));
                }
                margin = margin + margin;
            }
        }
    }
}

/// Isolates all critical points of the function on `window`, including ones
/// sitting on the window boundary. Brackets are pairwise disjoint, sorted,
/// and of width <= `tol` (edge brackets may grow while the sign stays
/// unresolved).
pub fn isolate_critical_points<S: Scalar>(
    expr: &Expr<S>,
    deriv: &Expr<S>,
    deriv2: &Expr<S>,
    window: Interval<S>,
    tol: S,
) -> Result<Vec<CriticalPoint<S>>, FuncSpecError> {
    assert!(tol > S::zero(), "tolerance must be positive");
    let residual_tol = tol * s::<S>(1e-2);
    let polish_target = tol * s::<S>(1e-3);
    let mut iso = Isolator {
        expr,
        deriv,
        deriv2,
        tol,
        residual_tol,
        polish_target,
        found: Vec::new(),
    };

    // Window edges first: a derivative that is zero at the edge up to
    // representation error is an edge critical point; the interior search
    // then starts at an inset point with certified sign.
    let (lo, sign_lo) = resolve_edge(&mut iso, window, Side::Lo)?;
    let (hi, sign_hi) = resolve_edge(&mut iso, window, Side::Hi)?;
    iso.search(Interval::new(lo, hi), sign_lo, sign_hi)?;

    let mut found = iso.found;
    found.sort_by(|a, b| a.x.partial_cmp(&b.x).expect("finite critical points"));
    Ok(found)
}
