//! The sandwich surface: numeric realization of the zero set of
//! `g(x1, x2) - |y|^2` with `g(x1, x2) = (x1 - c1(x2)) * (c2(x2) - x1)`,
//! plus the two smoke checks the pipeline runs against it: gradient
//! regularity on samples and the correspondence between predicted and
//! detected critical points of the height coordinate.

use crate::expr::DomainError;
use crate::funcspec::FunctionSpec;
use crate::interval::Interval;
use crate::scalar::{s, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

/// Which boundary curve a value refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveId {
    Curve1,
    Curve2,
}

/// A point of the closed planar region between the two graphs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionPoint<S> {
    pub x1: S,
    pub x2: S,
}

/// A point of the surface in `R^(m+1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfacePoint<S> {
    pub x1: S,
    pub x2: S,
    pub y: Vec<S>,
}

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("sampling failure: the region interior is empty over the window")]
    SamplingFailure,
    #[error("critical point correspondence mismatch: {0} predicted / {1} detected points unmatched")]
    CorrespondenceMismatch(usize, usize),
}

/// Value of the defining function at `(x1, x2, y)`; zero exactly on the surface.
pub fn defining_value<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    x1: S,
    x2: S,
    y: &[S],
) -> Result<S, DomainError> {
    let g = (x1 - c1.eval(x2)?) * (c2.eval(x2)? - x1);
    let y2 = y.iter().fold(S::zero(), |acc, v| acc + *v * *v);
    Ok(g - y2)
}

fn gradient_norm<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    x1: S,
    x2: S,
    y: &[S],
) -> Result<S, DomainError> {
    let c1v = c1.eval(x2)?;
    let c2v = c2.eval(x2)?;
    let d1 = c1.deriv_at(x2)?;
    let d2 = c2.deriv_at(x2)?;
    let dx1 = c1v + c2v - (x1 + x1);
    let dx2 = -d1 * (c2v - x1) + d2 * (x1 - c1v);
    let dy2 = y.iter().fold(S::zero(), |acc, v| acc + (*v * *v));
    let four = s::<S>(4.0);
    Ok((dx1 * dx1 + dx2 * dx2 + four * dy2).sqrt())
}

#[derive(Debug, Clone, Serialize)]
pub struct ManifoldReport<S> {
    pub min_grad_norm: S,
    pub interior_samples: usize,
    pub boundary_samples: usize,
    pub pass: bool,
}

/// Samples the zero set (interior points with `y` on the sphere of radius
/// `sqrt(g)`, boundary points with `y = 0`) and reports the minimum gradient
/// norm of the defining function. Deterministic for a fixed `seed`.
pub fn verify_manifold<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    m: usize,
    samples: usize,
    window: Interval<S>,
    seed: u64,
) -> Result<ManifoldReport<S>, SurfaceError> {
    assert!(m >= 2, "the construction needs m >= 2");
    assert!(samples >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_norm = S::infinity();
    let interior = samples / 2;
    let boundary = samples - interior;
    let mut interior_done = 0usize;

    let uniform = |lo: S, hi: S, rng: &mut ChaCha8Rng| -> S {
        lo + (hi - lo) * s::<S>(rng.gen::<f64>())
    };

    for _ in 0..interior.saturating_mul(8) {
        if interior_done >= interior {
            break;
        }
        let x2 = uniform(window.lo(), window.hi(), &mut rng);
        let c1v = c1.eval(x2)?;
        let c2v = c2.eval(x2)?;
        if c2v <= c1v {
            continue;
        }
        let u = s::<S>(rng.gen_range(1e-6..1.0 - 1e-6));
        let x1 = c1v + (c2v - c1v) * u;
        let g = (x1 - c1v) * (c2v - x1);
        if g <= S::zero() {
            continue;
        }
        // direction on the (m-2)-sphere, scaled to radius sqrt(g)
        let mut y = vec![S::zero(); m - 1];
        let mut norm2 = S::zero();
        for v in y.iter_mut() {
            *v = s::<S>(rng.gen_range(-1.0..1.0));
            norm2 = norm2 + *v * *v;
        }
        if norm2 == S::zero() {
            y[0] = S::one();
            norm2 = S::one();
        }
        let scale = (g / norm2).sqrt();
        for v in y.iter_mut() {
            *v = *v * scale;
        }
        let n = gradient_norm(c1, c2, x1, x2, &y)?;
        min_norm = min_norm.min(n);
        interior_done += 1;
    }
    if interior_done == 0 {
        return Err(SurfaceError::SamplingFailure);
    }

    let zero_y = vec![S::zero(); m - 1];
    for k in 0..boundary {
        let x2 = uniform(window.lo(), window.hi(), &mut rng);
        let f = if k % 2 == 0 { c1 } else { c2 };
        let x1 = f.eval(x2)?;
        let n = gradient_norm(c1, c2, x1, x2, &zero_y)?;
        min_norm = min_norm.min(n);
    }

    Ok(ManifoldReport {
        min_grad_norm: min_norm,
        interior_samples: interior_done,
        boundary_samples: boundary,
        pass: min_norm > s::<S>(1e-6),
    })
}

/// A critical point of the height function on the surface, in surface
/// coordinates `(c_i(s), s, 0, ..., 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeightCritical<S> {
    pub curve: CurveId,
    pub s: S,
    pub level: S,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrespondenceReport<S> {
    pub predicted: Vec<HeightCritical<S>>,
    pub detected: Vec<HeightCritical<S>>,
    pub matched: usize,
    pub unmatched_predicted: Vec<HeightCritical<S>>,
    pub unmatched_detected: Vec<HeightCritical<S>>,
    pub tol: S,
}

impl<S> CorrespondenceReport<S> {
    pub fn is_match(&self) -> bool {
        self.unmatched_predicted.is_empty() && self.unmatched_detected.is_empty()
    }
}

/// Dense-scan detection of height-critical parameters on one boundary curve:
/// grid sign changes of the derivative refined by bisection, derivative
/// extrema located through the second derivative, and window-edge residuals.
/// Deliberately independent of the certified isolation route.
fn detect_curve<S: Scalar>(
    f: &FunctionSpec<S>,
    window: Interval<S>,
    tol: S,
    nx: usize,
) -> Result<Vec<S>, DomainError> {
    let mut out: Vec<S> = Vec::new();
    let dx = window.width() / s::<S>(nx as f64);
    let xs: Vec<S> = (0..=nx)
        .map(|i| window.lo() + dx * s::<S>(i as f64))
        .collect();
    let dv: Result<Vec<S>, _> = xs.iter().map(|&x| f.deriv_at(x)).collect();
    let dv = dv?;

    fn push_unique<S: Scalar>(out: &mut Vec<S>, x: S, sep: S) {
        if out.iter().all(|&p| (p - x).abs() > sep) {
            out.push(x);
        }
    }
    let sep = dx * s::<S>(1e-3);

    let bisect = |mut a: S, mut b: S, e: &dyn Fn(S) -> S| -> S {
        let fa = e(a);
        for _ in 0..200 {
            let m = a / s::<S>(2.0) + b / s::<S>(2.0);
            if m <= a || m >= b {
                break;
            }
            let fm = e(m);
            if fm == S::zero() {
                return m;
            }
            if (fm > S::zero()) == (fa > S::zero()) {
                a = m;
            } else {
                b = m;
            }
        }
        a / s::<S>(2.0) + b / s::<S>(2.0)
    };

    let deriv = |x: S| f.deriv_at(x).unwrap_or(S::nan());
    let deriv2 = |x: S| f.deriv2().eval(x).unwrap_or(S::nan());

    // window edges: a near-zero derivative means the mathematical root sits
    // on (or within an ulp of) the boundary
    if dv[0].abs() <= tol {
        push_unique(&mut out, xs[0], sep);
    }
    if dv[nx].abs() <= tol {
        push_unique(&mut out, xs[nx], sep);
    }

    for i in 0..nx {
        let (a, b) = (dv[i], dv[i + 1]);
        if a == S::zero() {
            push_unique(&mut out, xs[i], sep);
        } else if b != S::zero() && (a > S::zero()) != (b > S::zero()) {
            let r = bisect(xs[i], xs[i + 1], &deriv);
            push_unique(&mut out, r, sep);
        }
    }
    if dv[nx] == S::zero() {
        push_unique(&mut out, xs[nx], sep);
    }

    // touch-type roots: derivative extrema with near-zero value
    for i in 0..nx {
        let (a, b) = (deriv2(xs[i]), deriv2(xs[i + 1]));
        if a.is_nan() || b.is_nan() || a == S::zero() {
            continue;
        }
        if b != S::zero() && (a > S::zero()) != (b > S::zero()) {
            let e = bisect(xs[i], xs[i + 1], &deriv2);
            if deriv(e).abs() <= tol {
                push_unique(&mut out, e, sep);
            }
        }
    }

    out.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    Ok(out)
}

/// Compares the predicted critical set (isolated critical points of the
/// boundary functions, lifted to the surface) against independently detected
/// critical points of the height function. Points match when within `tol`.
pub fn critical_correspondence<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    window: Interval<S>,
    tol: S,
) -> Result<CorrespondenceReport<S>, SurfaceError> {
    let mut predicted = Vec::new();
    for (curve, f) in [(CurveId::Curve1, c1), (CurveId::Curve2, c2)] {
        for cp in f.critical_points() {
            predicted.push(HeightCritical {
                curve,
                s: cp.x,
                level: cp.value,
            });
        }
    }

    let mut detected = Vec::new();
    for (curve, f) in [(CurveId::Curve1, c1), (CurveId::Curve2, c2)] {
        for x in detect_curve(f, window, tol, 4096)? {
            detected.push(HeightCritical {
                curve,
                s: x,
                level: f.eval(x)?,
            });
        }
    }

    let mut unmatched_predicted = Vec::new();
    let mut used = vec![false; detected.len()];
    let mut matched = 0usize;
    for p in &predicted {
        let hit = detected
            .iter()
            .enumerate()
            .find(|(i, d)| !used[*i] && d.curve == p.curve && (d.s - p.s).abs() <= tol);
        match hit {
            Some((i, _)) => {
                used[i] = true;
                matched += 1;
            }
            None => unmatched_predicted.push(*p),
        }
    }
    let unmatched_detected: Vec<_> = detected
        .iter()
        .zip(&used)
        .filter(|(_, u)| !**u)
        .map(|(d, _)| *d)
        .collect();

    let report = CorrespondenceReport {
        predicted,
        detected,
        matched,
        unmatched_predicted,
        unmatched_detected,
        tol,
    };
    if report.is_match() {
        Ok(report)
    } else {
        Err(SurfaceError::CorrespondenceMismatch(
            report.unmatched_predicted.len(),
            report.unmatched_detected.len(),
        ))
    }
}

/// Number of connected components of the sampled fiber of the height function
/// over level `t`, window-clipped. The fiber over an interior x-run is a
/// sphere bundle, connected for `m >= 3`; the two branches of the `m = 2`
/// fiber rejoin wherever `g` vanishes at a finite run endpoint, so only runs
/// clipped at both window edges split into two components.
pub fn sampled_fiber_components<S: Scalar>(
    c1: &FunctionSpec<S>,
    c2: &FunctionSpec<S>,
    t: S,
    window: Interval<S>,
    m: usize,
    nx: usize,
) -> Result<usize, SurfaceError> {
    let dx = window.width() / s::<S>(nx as f64);
    let member: Result<Vec<bool>, DomainError> = (0..=nx)
        .map(|i| {
            let x = window.lo() + dx * s::<S>(i as f64);
            Ok(c1.eval(x)? <= t && t <= c2.eval(x)?)
        })
        .collect();
    let member = member?;
    let mut count = 0usize;
    let mut i = 0usize;
    while i <= nx {
        if member[i] {
            let start = i;
            while i < nx && member[i + 1] {
                i += 1;
            }
            let clipped_both = start == 0 && i == nx;
            count += if m == 2 && clipped_both { 2 } else { 1 };
        }
        i += 1;
    }
    Ok(count)
}
