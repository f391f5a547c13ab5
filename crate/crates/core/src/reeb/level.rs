//! Components of the interlevel set `S(t)` at one level.
//!
//! Endpoints are roots of `c_i(x) = t`, located by bisection on the monotone
//! pieces between consecutive critical points (at most one root per piece).
//! Critical points whose value coincides with `t` (within `root_tol`) become
//! touch breakpoints: isolated points of `S(t)` or interior markers.

use super::{Carrier, ComponentInterval, LevelComponents, SweepError};
use crate::funcspec::{FunctionSpec, Piece};
use crate::interval::Interval;
use crate::scalar::{s, Scalar};
use crate::surface::CurveId;

#[derive(Debug, Clone, Copy)]
struct Breakpoint<S> {
    x: S,
    curve: CurveId,
    touch: bool,
}

/// Bisection for the unique root of `f(x) = t` on a strictly monotone piece
/// whose endpoint values straddle `t`.
fn piece_root<S: Scalar>(f: &FunctionSpec<S>, piece: &Piece<S>, t: S) -> S {
    let rising = piece.v_hi > piece.v_lo;
    let (mut a, mut b) = (piece.x_lo, piece.x_hi);
    let half = s::<S>(0.5);
    for _ in 0..200 {
        let m = a * half + b * half;
        if m <= a || m >= b {
            break;
        }
        let fm = match f.eval(m) {
            Ok(v) => v,
            Err(_) => break,
        };
        if fm == t {
            return m;
        }
        // on a rising piece the function is below t left of the root
        if (fm < t) == rising {
            a = m;
        } else {
            b = m;
        }
    }
    a * half + b * half
}

/// Computes the components of `{x in window : c1(x) <= t <= c2(x)}`.
pub fn level_components<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    t: S,
    window: Interval<S>,
    root_tol: S,
) -> Result<LevelComponents<S>, SweepError> {
    level_components_slack(c1, c2, t, window, root_tol, root_tol)
}

/// As [`level_components`], but with a widened slack for touch contours.
/// Event rows of the sweep pass the merged group spread here, so contours
/// whose critical value sits anywhere inside the merged event become visible
/// at the representative level.
pub(crate) fn level_components_slack<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    t: S,
    window: Interval<S>,
    root_tol: S,
    touch_slack: S,
) -> Result<LevelComponents<S>, SweepError> {
    let mut bps: Vec<Breakpoint<S>> = Vec::new();
    for (curve, f) in [(CurveId::Curve1, c1), (CurveId::Curve2, c2)] {
        for p in f.pieces() {
            let (vmin, vmax) = if p.v_lo < p.v_hi {
                (p.v_lo, p.v_hi)
            } else {
                (p.v_hi, p.v_lo)
            };
            if t > vmin && t < vmax {
                bps.push(Breakpoint {
                    x: piece_root(f, p, t),
                    curve,
                    touch: false,
                });
            }
        }
        for cp in f.critical_points() {
            if (cp.value - t).abs() <= touch_slack {
                bps.push(Breakpoint {
                    x: cp.x,
                    curve,
                    touch: true,
                });
            }
        }
    }
    bps.sort_by(|a, b| a.x.partial_cmp(&b.x).expect("finite breakpoints"));

    // A crossing root converging onto a touch point is absorbed by it; other
    // sub-root_tol proximities are genuine ambiguities.
    let mut cleaned: Vec<Breakpoint<S>> = Vec::new();
    for bp in &bps {
        if !bp.touch
            && bps
                .iter()
                .any(|o| o.touch && (o.x - bp.x).abs() <= root_tol)
        {
            continue;
        }
        cleaned.push(*bp);
    }
    let ambiguity = |x: S| SweepError::RootAmbiguity {
        t: t.to_f64().unwrap_or(f64::NAN),
        x: x.to_f64().unwrap_or(f64::NAN),
    };
    for w in cleaned.windows(2) {
        if (w[1].x - w[0].x).abs() <= root_tol && !(w[0].touch && w[1].touch) {
            return Err(ambiguity(w[0].x));
        }
    }
    for bp in &cleaned {
        if !bp.touch
            && ((bp.x - window.lo()).abs() <= root_tol || (window.hi() - bp.x).abs() <= root_tol)
        {
            return Err(ambiguity(bp.x));
        }
    }

    // cells between consecutive breakpoints (and window edges)
    let mut xs = vec![window.lo()];
    for bp in &cleaned {
        if bp.x > window.lo() && bp.x < window.hi() {
            xs.push(bp.x);
        }
    }
    xs.push(window.hi());

    let member = |x: S| -> Result<bool, SweepError> {
        Ok(c1.eval(x).map_err(SweepError::from)? <= t && t <= c2.eval(x).map_err(SweepError::from)?)
    };
    let half = s::<S>(0.5);
    let mut cells = Vec::with_capacity(xs.len().saturating_sub(1));
    for w in xs.windows(2) {
        if w[1] <= w[0] {
            cells.push(None); // degenerate cell, carries no area
            continue;
        }
        cells.push(Some(member(w[0] * half + w[1] * half)?));
    }

    let carrier_at = |x: S| -> Carrier {
        if x <= window.lo() || x >= window.hi() {
            return Carrier::WindowEdge;
        }
        cleaned
            .iter()
            .find(|bp| bp.x == x)
            .map(|bp| Carrier::from_curve(bp.curve))
            .unwrap_or(Carrier::WindowEdge)
    };

    let mut components: Vec<ComponentInterval<S>> = Vec::new();
    let mut run_start: Option<usize> = None;
    for i in 0..cells.len() {
        let inside = cells[i].unwrap_or(false);
        if inside && run_start.is_none() {
            run_start = Some(i);
        }
        let run_ends = run_start.is_some() && (i + 1 == cells.len() || !cells[i + 1].unwrap_or(false));
        if run_ends {
            let a = xs[run_start.unwrap()];
            let b = xs[i + 1];
            components.push(ComponentInterval {
                lo: a,
                hi: b,
                lo_carrier: carrier_at(a),
                hi_carrier: carrier_at(b),
                is_point: a == b,
            });
            run_start = None;
        }
    }

    // isolated touch points outside every run
    let slack = touch_slack;
    for bp in cleaned.iter().filter(|bp| bp.touch) {
        if components.iter().any(|c| c.contains_x(bp.x, S::zero())) {
            continue;
        }
        components.push(ComponentInterval::point(bp.x, Carrier::from_curve(bp.curve)));
    }
    // window-edge contact points: the level coincides with a curve value at
    // the window edge without any adjacent member cell
    for edge in [window.lo(), window.hi()] {
        if components.iter().any(|c| c.contains_x(edge, S::zero())) {
            continue;
        }
        let near = (c1.eval(edge).map_err(SweepError::from)? - t).abs() <= slack
            || (c2.eval(edge).map_err(SweepError::from)? - t).abs() <= slack;
        let inside = c1.eval(edge).map_err(SweepError::from)? <= t + slack
            && t - slack <= c2.eval(edge).map_err(SweepError::from)?;
        if near && inside {
            components.push(ComponentInterval::point(edge, Carrier::WindowEdge));
        }
    }

    components.sort_by(|a, b| a.lo.partial_cmp(&b.lo).expect("finite"));

    // collapse sub-resolution gaps against point components: a touch point
    // and a window-edge contact a few ulps apart are one contour
    let mut merged: Vec<ComponentInterval<S>> = Vec::with_capacity(components.len());
    for c in components {
        match merged.last_mut() {
            Some(prev)
                if c.lo - prev.hi <= root_tol && (prev.is_point || c.is_point) =>
            {
                prev.hi = prev.hi.max(c.hi);
                prev.hi_carrier = c.hi_carrier;
                prev.is_point = prev.lo == prev.hi;
            }
            _ => merged.push(c),
        }
    }
    Ok(LevelComponents {
        t,
        components: merged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::funcspec::{SignVsLimit, TailDeclaration, TailLimit, Tails};

    fn spec(src: &str, lo: f64, hi: f64) -> FunctionSpec<f64> {
        let t = TailDeclaration {
            limit: TailLimit::Finite(0.0),
            monotone_beyond: None,
            critical_set_unbounded: false,
            sign_vs_limit: Some(SignVsLimit::StrictlyAbove),
        };
        FunctionSpec::build(
            parse(src).unwrap(),
            Tails { neg: t, pos: t },
            Interval::new(lo, hi),
            1e-10,
        )
        .unwrap()
    }

    fn example2() -> (FunctionSpec<f64>, FunctionSpec<f64>) {
        (
            spec("0.5/(x^2+1)", -10.0, 10.0),
            spec("1/(x^2+1)", -10.0, 10.0),
        )
    }

    #[test]
    fn two_components_at_quarter() {
        let (c1, c2) = example2();
        let lc = level_components(&c1, &c2, 0.25, Interval::new(-10.0, 10.0), 1e-10).unwrap();
        assert_eq!(lc.components.len(), 2, "{lc:?}");
        let sqrt3 = 3.0f64.sqrt();
        let a = &lc.components[0];
        assert!((a.lo + sqrt3).abs() < 1e-8 && (a.hi + 1.0).abs() < 1e-8, "{a:?}");
        assert_eq!((a.lo_carrier, a.hi_carrier), (Carrier::Curve2, Carrier::Curve1));
        let b = &lc.components[1];
        assert!((b.lo - 1.0).abs() < 1e-8 && (b.hi - sqrt3).abs() < 1e-8);
        assert_eq!((b.lo_carrier, b.hi_carrier), (Carrier::Curve1, Carrier::Curve2));
    }

    #[test]
    fn one_component_at_three_quarters() {
        let (c1, c2) = example2();
        let lc = level_components(&c1, &c2, 0.75, Interval::new(-10.0, 10.0), 1e-10).unwrap();
        assert_eq!(lc.components.len(), 1);
        let c = &lc.components[0];
        let inv_sqrt3 = 1.0 / 3.0f64.sqrt();
        assert!((c.lo + inv_sqrt3).abs() < 1e-8 && (c.hi - inv_sqrt3).abs() < 1e-8);
    }

    #[test]
    fn empty_above_maximum() {
        let (c1, c2) = example2();
        let lc = level_components(&c1, &c2, 1.5, Interval::new(-10.0, 10.0), 1e-10).unwrap();
        assert!(lc.components.is_empty());
    }

    #[test]
    fn seven_isolated_points_at_zero() {
        let w = 9.42477796076938; // 3*pi
        let c1 = spec("sin(x)^2/(2*(x^2+1))", -w, w);
        let c2 = spec("1/(x^2+1)", -w, w);
        let lc = level_components(&c1, &c2, 0.0, Interval::new(-w, w), 1e-10).unwrap();
        assert_eq!(lc.components.len(), 7, "{lc:?}");
        for (k, c) in lc.components.iter().enumerate() {
            assert!(c.is_point);
            let expected = (k as f64 - 3.0) * std::f64::consts::PI;
            assert!((c.lo - expected).abs() < 1e-9, "{c:?} vs {expected}");
        }
    }

    #[test]
    fn point_at_global_maximum() {
        let (c1, c2) = example2();
        let lc = level_components(&c1, &c2, 1.0, Interval::new(-10.0, 10.0), 1e-10).unwrap();
        assert_eq!(lc.components.len(), 1);
        assert!(lc.components[0].is_point);
        assert!(lc.components[0].lo.abs() < 1e-9);
    }
}
