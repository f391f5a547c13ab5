//! The numeric kernel is generic over the scalar type; exercise the f32
//! instantiation against the f64 one.

use reeb_sandwich::expr::{differentiate, parse};
use reeb_sandwich::funcspec::{isolate_critical_points, CriticalPointKind};
use reeb_sandwich::interval::Interval;

#[test]
fn f32_evaluation_tracks_f64() {
    let src = "sin(x)^2/(2*(x^2+1))";
    let e32 = parse::<f32>(src).unwrap();
    let e64 = parse::<f64>(src).unwrap();
    let d32 = differentiate(&e32);
    let d64 = differentiate(&e64);
    for i in 0..200 {
        let x = -6.0 + 12.0 * (i as f64) / 199.0;
        let v32 = e32.eval(x as f32).unwrap() as f64;
        let v64 = e64.eval(x).unwrap();
        assert!((v32 - v64).abs() < 1e-5, "value at {x}: {v32} vs {v64}");
        let g32 = d32.eval(x as f32).unwrap() as f64;
        let g64 = d64.eval(x).unwrap();
        assert!((g32 - g64).abs() < 1e-4, "slope at {x}: {g32} vs {g64}");
    }
}

#[test]
fn f32_interval_enclosure_holds() {
    let e = parse::<f32>("1/(x^2+1)").unwrap();
    let iv = Interval::new(-1.5f32, 2.0f32);
    let enc = e.eval_interval(&iv).unwrap();
    for k in 0..=50 {
        let x = (iv.lo() + iv.width() * (k as f32) / 50.0).clamp(iv.lo(), iv.hi());
        let v = e.eval(x).unwrap();
        assert!(enc.contains(v), "{v} outside [{}, {}]", enc.lo(), enc.hi());
    }
}

#[test]
fn f32_isolation_finds_the_maximum() {
    let e = parse::<f32>("1/(x^2+1)").unwrap();
    let d = differentiate(&e);
    let d2 = differentiate(&d);
    let pts =
        isolate_critical_points(&e, &d, &d2, Interval::new(-4.0f32, 4.0f32), 1e-4).unwrap();
    assert_eq!(pts.len(), 1);
    assert!(pts[0].x.abs() < 1e-4);
    assert_eq!(pts[0].kind, CriticalPointKind::LocalMax);
}
