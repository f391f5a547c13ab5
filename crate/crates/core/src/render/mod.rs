//! Output emission: the structured JSON run document, DOT, and the SVG plot.
//! All three are byte-deterministic for identical configurations.

pub mod dot;
pub mod svg;

pub use dot::emit_dot;
pub use svg::emit_svg;

use crate::config::OutputKind;
use crate::pipeline::RunBundle;
use std::io;
use std::path::{Path, PathBuf};

/// Serializes the run bundle as the versioned JSON run document.
pub fn render_document(bundle: &RunBundle) -> String {
    let mut text = serde_json::to_string_pretty(bundle).expect("bundle serializes");
    text.push('\n');
    text
}

/// Compact level formatting for labels: fixed six decimals, trimmed.
pub(crate) fn fmt_level(level: f64) -> String {
    let mut s = format!("{level:.6}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

/// Writes the selected outputs into `out_dir`; returns the written paths.
pub fn emit_outputs(bundle: &RunBundle, out_dir: &Path) -> Result<Vec<PathBuf>, io::Error> {
    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    for kind in &bundle.config.outputs {
        let (name, text) = match kind {
            OutputKind::Json => ("analysis.json", render_document(bundle)),
            OutputKind::Dot => ("graph.dot", emit_dot(&bundle.graph)),
            OutputKind::Svg => {
                let pair = bundle
                    .pair
                    .as_ref()
                    .expect("run bundle carries the prepared pair");
                (
                    "plot.svg",
                    emit_svg(&pair.c1, &pair.c2, &bundle.graph, &bundle.event_levels),
                )
            }
        };
        let path = out_dir.join(name);
        std::fs::write(&path, text)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_formatting() {
        assert_eq!(fmt_level(0.5), "0.5");
        assert_eq!(fmt_level(1.0), "1");
        assert_eq!(fmt_level(0.0000001), "0");
        assert_eq!(fmt_level(-0.0000001), "0");
        assert_eq!(fmt_level(0.179713), "0.179713");
    }
}
