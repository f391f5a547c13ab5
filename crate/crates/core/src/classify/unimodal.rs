//! Almost-unimodality: the function attains its maximum on a plateau and the
//! interval maxima between consecutive critical points are non-increasing
//! outward, with declared tails extending the window evidence to infinity.

use crate::funcspec::{FunctionSpec, MonotoneDirection, SignVsLimit, TailLimit, TailSide};
use crate::interval::Interval;
use crate::scalar::{s, Scalar};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct AlmostUnimodalCertificate<S> {
    pub holds: bool,
    /// Maximum of the (sign-adjusted) function over the window.
    pub max_value: S,
    /// Where the maximum is attained within the window.
    pub plateau: Interval<S>,
    /// Interval maxima rightward of the plateau, outward order.
    pub right_maxima: Vec<(Interval<S>, S)>,
    /// Interval maxima leftward of the plateau, outward order.
    pub left_maxima: Vec<(Interval<S>, S)>,
    pub relies_on_declarations: bool,
    pub failure: Option<String>,
}

/// Sign-adjusted tail view of `h = sign * f`.
struct TailView<S> {
    limit: TailLimit<S>,
    /// declared monotone direction of `h` on the tail, if any
    monotone: Option<MonotoneDirection>,
    unbounded_criticals: bool,
    sign_vs_limit: Option<SignVsLimit>,
}

fn tail_view<S: Scalar>(f: &FunctionSpec<S>, side: TailSide, positive: bool) -> TailView<S> {
    let d = f.tails().side(side);
    if positive {
        return TailView {
            limit: d.limit,
            monotone: d.monotone_beyond.as_ref().map(|m| m.direction),
            unbounded_criticals: d.critical_set_unbounded,
            sign_vs_limit: d.sign_vs_limit,
        };
    }
    let limit = match d.limit {
        TailLimit::Finite(q) => TailLimit::Finite(-q),
        TailLimit::PlusInf => TailLimit::MinusInf,
        TailLimit::MinusInf => TailLimit::PlusInf,
    };
    let monotone = d.monotone_beyond.as_ref().map(|m| match m.direction {
        MonotoneDirection::Increasing => MonotoneDirection::Decreasing,
        MonotoneDirection::Decreasing => MonotoneDirection::Increasing,
    });
    let sign_vs_limit = d.sign_vs_limit.map(|sg| match sg {
        SignVsLimit::StrictlyAbove => SignVsLimit::StrictlyBelow,
        SignVsLimit::StrictlyBelow => SignVsLimit::StrictlyAbove,
        SignVsLimit::TouchesFromAbove => SignVsLimit::TouchesFromBelow,
        SignVsLimit::TouchesFromBelow => SignVsLimit::TouchesFromAbove,
        SignVsLimit::Crosses => SignVsLimit::Crosses,
    });
    TailView {
        limit,
        monotone,
        unbounded_criticals: d.critical_set_unbounded,
        sign_vs_limit,
    }
}

/// Checks almost-unimodality of `sign * f` (`sign` is +1 or -1) over the
/// window, extended beyond it by the declared tails.
pub fn check_almost_unimodal<S: Scalar>(
    f: &FunctionSpec<S>,
    sign: i32,
    window: Interval<S>,
) -> AlmostUnimodalCertificate<S> {
    assert!(sign == 1 || sign == -1);
    let positive = sign == 1;
    let sgn = if positive { S::one() } else { -S::one() };

    // partition values of h = sign * f at window edges and critical points
    let mut xs = vec![window.lo()];
    xs.extend(
        f.critical_points()
            .iter()
            .map(|cp| cp.x)
            .filter(|&x| x > window.lo() && x < window.hi()),
    );
    xs.push(window.hi());
    let hv: Vec<S> = xs
        .iter()
        .map(|&x| sgn * f.eval(x).unwrap_or(S::nan()))
        .collect();

    let max_value = hv.iter().cloned().fold(S::neg_infinity(), S::max);
    let eps = s::<S>(1e-12) * (S::one() + max_value.abs());

    let at_max: Vec<usize> = (0..hv.len()).filter(|&i| hv[i] >= max_value - eps).collect();
    let plateau = Interval::new(xs[at_max[0]], xs[*at_max.last().unwrap()]);
    let (p_lo, p_hi) = (at_max[0], *at_max.last().unwrap());

    // interval maxima outward: piece max is the larger endpoint value
    let mut right_maxima = Vec::new();
    for i in p_hi..xs.len() - 1 {
        right_maxima.push((
            Interval::new(xs[i], xs[i + 1]),
            hv[i].max(hv[i + 1]),
        ));
    }
    let mut left_maxima = Vec::new();
    for i in (0..p_lo).rev() {
        left_maxima.push((Interval::new(xs[i], xs[i + 1]), hv[i].max(hv[i + 1])));
    }

    let mut relies = false;
    let mut failure: Option<String> = None;

    for (name, seq) in [("right", &right_maxima), ("left", &left_maxima)] {
        for w in seq.windows(2) {
            if w[1].1 > w[0].1 + eps {
                failure = Some(format!(
                    "interval maxima increase outward on the {name} side: {} then {}",
                    w[0].1, w[1].1
                ));
            }
        }
    }

    // extend beyond the window using the declared tails
    if failure.is_none() {
        for (side, seq) in [
            (TailSide::PosInf, &right_maxima),
            (TailSide::NegInf, &left_maxima),
        ] {
            let tv = tail_view(f, side, positive);
            let side_name = match side {
                TailSide::PosInf => "right",
                TailSide::NegInf => "left",
            };
            // outward monotone direction of h that keeps maxima non-increasing
            let good_direction = match side {
                TailSide::PosInf => MonotoneDirection::Decreasing,
                TailSide::NegInf => MonotoneDirection::Increasing,
            };
            let ok = match tv.limit {
                TailLimit::PlusInf => {
                    failure = Some(format!(
                        "function grows without bound toward the {side_name} tail"
                    ));
                    false
                }
                TailLimit::MinusInf | TailLimit::Finite(_) => {
                    // a finite limit above the window max means the supremum
                    // escapes the window
                    if let TailLimit::Finite(q) = tv.limit {
                        if q > max_value + eps {
                            failure = Some(format!(
                                "declared {side_name} limit {q} exceeds the window maximum {max_value}"
                            ));
                        }
                    }
                    if failure.is_some() {
                        false
                    } else if matches!(tv.limit, TailLimit::Finite(q) if (q - max_value).abs() <= eps)
                        && matches!(
                            tv.sign_vs_limit,
                            Some(SignVsLimit::StrictlyBelow | SignVsLimit::TouchesFromBelow)
                        )
                    {
                        // h stays at or below its own maximum while touching
                        // it arbitrarily far out: plateau-like tail
                        relies = true;
                        true
                    } else if tv.monotone == Some(good_direction) {
                        relies = true;
                        true
                    } else if tv.monotone.is_some() {
                        failure = Some(format!(
                            "declared tail monotonicity on the {side_name} side raises maxima outward"
                        ));
                        false
                    } else if tv.unbounded_criticals {
                        // oscillating tail: accept a declared non-increasing
                        // envelope only when the window already shows one
                        let tail_ok = seq.len() >= 3 && {
                            let n = seq.len();
                            seq[n - 3].1 + eps >= seq[n - 2].1 && seq[n - 2].1 + eps >= seq[n - 1].1
                        };
                        if tail_ok {
                            relies = true;
                            true
                        } else {
                            failure = Some(format!(
                                "oscillating {side_name} tail without three non-increasing window maxima"
                            ));
                            false
                        }
                    } else {
                        failure = Some(format!(
                            "tail monotonicity undeclared on the {side_name} side"
                        ));
                        false
                    }
                }
            };
            if !ok {
                break;
            }
        }
    }

    AlmostUnimodalCertificate {
        holds: failure.is_none(),
        max_value,
        plateau,
        right_maxima,
        left_maxima,
        relies_on_declarations: relies,
        failure,
    }
}
