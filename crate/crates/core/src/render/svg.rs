//! SVG plot of the analysis: the two boundary curves, the shaded region
//! between them, critical points, and the event levels as horizontal rules.

use crate::funcspec::FunctionSpec;
use crate::reeb::ReebGraph;
use crate::Real;
use std::fmt::Write;

const W: f64 = 800.0;
const H: f64 = 600.0;
const MARGIN: f64 = 55.0;
const CURVE_SAMPLES: usize = 512;

struct Frame {
    x_lo: f64,
    x_hi: f64,
    t_lo: f64,
    t_hi: f64,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        MARGIN + (x - self.x_lo) / (self.x_hi - self.x_lo) * (W - 2.0 * MARGIN)
    }

    fn y(&self, t: f64) -> f64 {
        MARGIN + (self.t_hi - t) / (self.t_hi - self.t_lo) * (H - 2.0 * MARGIN)
    }
}

fn sample_curve(f: &FunctionSpec<Real>, frame: &Frame) -> Vec<(f64, f64)> {
    (0..=CURVE_SAMPLES)
        .filter_map(|i| {
            let x = frame.x_lo + (frame.x_hi - frame.x_lo) * (i as f64) / (CURVE_SAMPLES as f64);
            f.eval(x).ok().map(|v| (x, v))
        })
        .collect()
}

fn polyline(points: &[(f64, f64)], frame: &Frame) -> String {
    let mut s = String::new();
    for (i, (x, t)) in points.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        write!(s, "{:.6},{:.6}", frame.x(*x), frame.y(*t)).unwrap();
    }
    s
}

pub fn emit_svg(
    c1: &FunctionSpec<Real>,
    c2: &FunctionSpec<Real>,
    g: &ReebGraph<Real>,
    event_levels: &[Real],
) -> String {
    let pad = 0.05 * g.t_range.width().max(1e-9);
    let frame = Frame {
        x_lo: g.window.lo(),
        x_hi: g.window.hi(),
        t_lo: g.t_range.lo() - pad,
        t_hi: g.t_range.hi() + pad,
    };
    let p1 = sample_curve(c1, &frame);
    let p2 = sample_curve(c2, &frame);

    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 {W} {H}\">"
    )
    .unwrap();
    writeln!(out, "  <rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>").unwrap();

    // shaded region between the curves
    let mut region = polyline(&p1, &frame);
    let reversed: Vec<(f64, f64)> = p2.iter().rev().copied().collect();
    region.push(' ');
    region.push_str(&polyline(&reversed, &frame));
    writeln!(
        out,
        "  <polygon points=\"{region}\" fill=\"#9ecae1\" fill-opacity=\"0.45\" stroke=\"none\"/>"
    )
    .unwrap();

    // event levels as horizontal rules
    for &t in event_levels {
        let y = frame.y(t);
        writeln!(
            out,
            "  <line x1=\"{:.6}\" y1=\"{y:.6}\" x2=\"{:.6}\" y2=\"{y:.6}\" stroke=\"#bbbbbb\" stroke-width=\"0.7\" stroke-dasharray=\"5,4\"/>",
            MARGIN,
            W - MARGIN
        )
        .unwrap();
        writeln!(
            out,
            "  <text x=\"{:.6}\" y=\"{:.6}\" font-size=\"10\" fill=\"#888888\">t={}</text>",
            W - MARGIN + 4.0,
            y + 3.0,
            super::fmt_level(t)
        )
        .unwrap();
    }

    writeln!(
        out,
        "  <polyline points=\"{}\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.6\"/>",
        polyline(&p1, &frame)
    )
    .unwrap();
    writeln!(
        out,
        "  <polyline points=\"{}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.6\"/>",
        polyline(&p2, &frame)
    )
    .unwrap();

    // critical points on both curves
    for (f, color) in [(c1, "#d62728"), (c2, "#1f77b4")] {
        for cp in f.critical_points() {
            writeln!(
                out,
                "  <circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"3.2\" fill=\"{color}\" stroke=\"black\" stroke-width=\"0.6\"/>",
                frame.x(cp.x),
                frame.y(cp.value)
            )
            .unwrap();
        }
    }

    // axis labels
    writeln!(
        out,
        "  <text x=\"{:.6}\" y=\"{:.6}\" font-size=\"12\" fill=\"#333333\">x</text>",
        W / 2.0,
        H - 12.0
    )
    .unwrap();
    writeln!(
        out,
        "  <text x=\"14\" y=\"{:.6}\" font-size=\"12\" fill=\"#333333\">t</text>",
        H / 2.0
    )
    .unwrap();
    writeln!(out, "</svg>").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{fixture, AnalysisConfig};
    use crate::pipeline::run_analyze;

    #[test]
    fn svg_is_well_formed_and_deterministic() {
        let cfg = AnalysisConfig::from_json(fixture("example2_t0_0.5").unwrap()).unwrap();
        let b = run_analyze(&cfg).unwrap();
        let pair = b.pair.as_ref().unwrap();
        let svg1 = emit_svg(&pair.c1, &pair.c2, &b.graph, &b.event_levels);
        let svg2 = emit_svg(&pair.c1, &pair.c2, &b.graph, &b.event_levels);
        assert_eq!(svg1, svg2);
        assert!(svg1.starts_with("<svg"));
        assert!(svg1.trim_end().ends_with("</svg>"));
        // two curves, a shaded region, and rules at both critical values
        assert_eq!(svg1.matches("<polyline").count(), 2);
        assert!(svg1.contains("t=0.5"));
        assert!(svg1.contains("t=1</text>"));
    }
}
