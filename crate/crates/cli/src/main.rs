//! Command-line front end: configuration in, graphs / verdicts / plots out.

use clap::{Args, Parser, Subcommand};
use reeb_sandwich::classify::classify;
use reeb_sandwich::config::{fixture, fixture_names, AnalysisConfig};
use reeb_sandwich::oracle::{compare_graphs, oracle_reeb_graph_auto};
use reeb_sandwich::pipeline::{prepare, run_analyze, AnalysisError};
use reeb_sandwich::reeb::{build_reeb_graph, graph_invariants};
use reeb_sandwich::render::{emit_dot, emit_outputs, emit_svg};
use reeb_sandwich::surface::verify_manifold;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "reeb-sandwich",
    version,
    about = "Reeb digraphs and classification certificates for surfaces sandwiched between two function graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Shared {
    /// Path to a JSON config file, or the name of a bundled fixture
    /// (see `fixtures`)
    #[arg(long)]
    config: String,
    /// Output directory for emitted files
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Override the analysis window
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    window: Option<Vec<f64>>,
    /// Override the ambient dimension m
    #[arg(long)]
    m: Option<usize>,
    /// Print the summary without writing files
    #[arg(long)]
    dry_run: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full pipeline and emit the run document, DOT, and SVG
    Analyze(Shared),
    /// Build the Reeb digraph by the sweep and emit DOT
    Reeb(Shared),
    /// Classify the Reeb space and print the verdict with its certificate
    Classify(Shared),
    /// Isolate and print the certified critical points
    CriticalPoints(Shared),
    /// Build the grid-oracle graph and compare it with the sweep
    Oracle(Shared),
    /// Sample the surface and report the minimum defining-gradient norm
    VerifyManifold(Shared),
    /// Emit the SVG plot of the curves, region, and event levels
    Plot(Shared),
    /// List the bundled fixture configurations
    Fixtures,
}

fn load_config(shared: &Shared) -> Result<AnalysisConfig, AnalysisError> {
    let text = match fixture(&shared.config) {
        Some(text) => text.to_string(),
        None => std::fs::read_to_string(&shared.config)?,
    };
    let mut cfg = AnalysisConfig::from_json(&text)
        .map_err(reeb_sandwich::pipeline::AnalysisError::Config)?;
    if let Some(w) = &shared.window {
        cfg.window = [w[0], w[1]];
    }
    if let Some(m) = shared.m {
        cfg.m = m;
    }
    cfg.validate()
        .map_err(reeb_sandwich::pipeline::AnalysisError::Config)?;
    Ok(cfg)
}

fn run(cmd: &Cmd) -> Result<(), AnalysisError> {
    match cmd {
        Cmd::Fixtures => {
            for name in fixture_names() {
                println!("{name}");
            }
            Ok(())
        }
        Cmd::Analyze(shared) => {
            let cfg = load_config(shared)?;
            let bundle = run_analyze(&cfg)?;
            println!(
                "verdict: {:?} (reeb graph: {}); {} vertices, {} edges, {} open terminations",
                bundle.verdict.reeb_space_kind,
                bundle.verdict.is_reeb_graph,
                bundle.graph.vertices.len(),
                bundle.graph.edges.len(),
                bundle.graph.open_terminations().count(),
            );
            for c in &bundle.verdict.fired_clauses {
                println!(
                    "  [{}] {} {}",
                    if c.holds { "holds" } else { "fails" },
                    c.id,
                    if c.relies_on_declarations {
                        "(relies on declarations)"
                    } else {
                        ""
                    }
                );
            }
            if shared.dry_run {
                println!("dry run: no files written");
            } else {
                for path in emit_outputs(&bundle, &shared.out)? {
                    println!("wrote {}", path.display());
                }
            }
            Ok(())
        }
        Cmd::Reeb(shared) => {
            let cfg = load_config(shared)?;
            let pair = prepare(&cfg)?;
            let graph = build_reeb_graph(&pair.c1, &pair.c2, pair.window, cfg.m, &pair.params)?;
            let inv = graph_invariants(&graph);
            println!("{}", serde_json::to_string_pretty(&inv).expect("serializable"));
            if shared.dry_run {
                println!("dry run: no files written");
            } else {
                std::fs::create_dir_all(&shared.out)?;
                let path = shared.out.join("graph.dot");
                std::fs::write(&path, emit_dot(&graph))?;
                println!("wrote {}", path.display());
            }
            Ok(())
        }
        Cmd::Classify(shared) => {
            let cfg = load_config(shared)?;
            let pair = prepare(&cfg)?;
            let graph = build_reeb_graph(&pair.c1, &pair.c2, pair.window, cfg.m, &pair.params)?;
            let (verdict, _) = classify(&pair.c1, &pair.c2, &graph, &pair.params)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&verdict).expect("serializable")
            );
            Ok(())
        }
        Cmd::CriticalPoints(shared) => {
            let cfg = load_config(shared)?;
            let pair = prepare(&cfg)?;
            for (name, f) in [("c1", &pair.c1), ("c2", &pair.c2)] {
                println!("{name}: {} critical points", f.critical_points().len());
                for cp in f.critical_points() {
                    println!(
                        "  x = {:+.12} value = {:+.12} kind = {:?} bracket = [{:+.12}, {:+.12}]",
                        cp.x,
                        cp.value,
                        cp.kind,
                        cp.bracket.lo(),
                        cp.bracket.hi()
                    );
                }
            }
            Ok(())
        }
        Cmd::Oracle(shared) => {
            let cfg = load_config(shared)?;
            let pair = prepare(&cfg)?;
            let sweep = build_reeb_graph(&pair.c1, &pair.c2, pair.window, cfg.m, &pair.params)?;
            let (oracle, nx_used) = oracle_reeb_graph_auto(
                &pair.c1,
                &pair.c2,
                pair.window,
                cfg.oracle.nx,
                cfg.m,
                &pair.params,
            )?;
            let outcome = compare_graphs(&sweep, &oracle, 1e-4);
            let report = serde_json::json!({
                "schema": reeb_sandwich::config::SCHEMA,
                "oracle_nx": nx_used,
                "sweep_invariants": graph_invariants(&sweep),
                "oracle_invariants": graph_invariants(&oracle),
                "outcome": outcome,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
            if !shared.dry_run {
                std::fs::create_dir_all(&shared.out)?;
                let path = shared.out.join("oracle_report.json");
                let mut text = serde_json::to_string_pretty(&report).expect("serializable");
                text.push('\n');
                std::fs::write(&path, text)?;
                println!("wrote {}", path.display());
            }
            if outcome.equal {
                Ok(())
            } else {
                Err(AnalysisError::Oracle(
                    reeb_sandwich::oracle::OracleError::Inconsistent(
                        outcome
                            .first_discrepancy
                            .unwrap_or_else(|| "graphs differ".into()),
                    ),
                ))
            }
        }
        Cmd::VerifyManifold(shared) => {
            let cfg = load_config(shared)?;
            let pair = prepare(&cfg)?;
            let report = verify_manifold(
                &pair.c1,
                &pair.c2,
                cfg.m,
                cfg.manifold.samples,
                pair.window,
                cfg.seed,
            )?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
            if report.pass {
                Ok(())
            } else {
                Err(AnalysisError::ManifoldFail(report.min_grad_norm))
            }
        }
        Cmd::Plot(shared) => {
            let cfg = load_config(shared)?;
            let bundle = run_analyze(&cfg)?;
            let pair = bundle.pair.as_ref().expect("bundle carries pair");
            let svg = emit_svg(&pair.c1, &pair.c2, &bundle.graph, &bundle.event_levels);
            if shared.dry_run {
                println!("dry run: {} bytes of SVG", svg.len());
            } else {
                std::fs::create_dir_all(&shared.out)?;
                let path = shared.out.join("plot.svg");
                std::fs::write(&path, svg)?;
                println!("wrote {}", path.display());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
