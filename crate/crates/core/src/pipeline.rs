//! End-to-end orchestration: configuration to run bundle.

use crate::classify::{classify, ClassifyError, Verdict};
use crate::config::{AnalysisConfig, ConfigError};
use crate::expr::{differentiate, parse, ParseError};
use crate::funcspec::{
    validate_pair, verify_declarations, CriticalPoint, DeclarationReport, FuncSpecError,
    FunctionSpec, OrderingCertificate,
};
use crate::interval::Interval;
use crate::oracle::OracleError;
use crate::reeb::{
    build_reeb_graph, graph_invariants, GraphInvariants, ReebGraph, SweepError, SweepParams,
};
use crate::surface::{
    critical_correspondence, verify_manifold, CorrespondenceReport, ManifoldReport, SurfaceError,
};
use crate::Real;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error("expression ({curve}): {source}")]
    Expr {
        curve: &'static str,
        source: ParseError,
    },
    #[error("function spec ({curve}): {source}")]
    FuncSpec {
        curve: &'static str,
        source: FuncSpecError,
    },
    #[error("pair validation: {0}")]
    Pair(FuncSpecError),
    #[error("surface: {0}")]
    Surface(#[from] SurfaceError),
    #[error("manifold check failed: minimum gradient norm {0} is not above 1e-6")]
    ManifoldFail(f64),
    #[error("sweep: {0}")]
    Sweep(#[from] SweepError),
    #[error("classify: {0}")]
    Classify(#[from] ClassifyError),
    #[error("oracle: {0}")]
    Oracle(#[from] OracleError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl AnalysisError {
    /// Process exit code: 2 validation, 3 certification/ambiguity, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            AnalysisError::Config(_) | AnalysisError::Expr { .. } => 2,
            AnalysisError::FuncSpec { source, .. } | AnalysisError::Pair(source) => match source {
                FuncSpecError::CertificationFailure { .. } => 3,
                _ => 2,
            },
            AnalysisError::Surface(SurfaceError::CorrespondenceMismatch(_, _)) => 3,
            AnalysisError::Surface(_) => 2,
            AnalysisError::ManifoldFail(_) => 3,
            AnalysisError::Sweep(_) | AnalysisError::Classify(_) | AnalysisError::Oracle(_) => 3,
            AnalysisError::Io(_) => 4,
        }
    }
}

/// Parsed, differentiated, isolated, and cross-validated boundary pair.
#[derive(Debug)]
pub struct PreparedPair {
    pub c1: FunctionSpec<Real>,
    pub c2: FunctionSpec<Real>,
    pub window: Interval<Real>,
    pub params: SweepParams<Real>,
    pub ordering: OrderingCertificate<Real>,
    pub declarations_c1: DeclarationReport,
    pub declarations_c2: DeclarationReport,
}

/// Runs the front of the pipeline: parse, differentiate, isolate critical
/// points, certify the ordering, and check the declared tails.
pub fn prepare(config: &AnalysisConfig) -> Result<PreparedPair, AnalysisError> {
    config.validate()?;
    let window = Interval::new(config.window[0], config.window[1]);
    let tol = config.tolerances.isolation_tol;
    let build = |curve: &'static str,
                 fc: &crate::config::FunctionConfig|
     -> Result<FunctionSpec<Real>, AnalysisError> {
        let expr = parse::<Real>(&fc.expr).map_err(|source| AnalysisError::Expr {
            curve,
            source,
        })?;
        FunctionSpec::build(expr, fc.tails, window, tol)
            .map_err(|source| AnalysisError::FuncSpec { curve, source })
    };
    let c1 = build("c1", &config.c1)?;
    let c2 = build("c2", &config.c2)?;
    let ordering = validate_pair(&c1, &c2, window).map_err(AnalysisError::Pair)?;
    let declarations_c1 =
        verify_declarations(&c1, window).map_err(|source| AnalysisError::FuncSpec {
            curve: "c1",
            source,
        })?;
    let declarations_c2 =
        verify_declarations(&c2, window).map_err(|source| AnalysisError::FuncSpec {
            curve: "c2",
            source,
        })?;
    let params = SweepParams {
        root_tol: config.tolerances.root_tol,
        level_merge_tol: config.tolerances.level_merge_tol,
    };
    Ok(PreparedPair {
        c1,
        c2,
        window,
        params,
        ordering,
        declarations_c1,
        declarations_c2,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveSummary {
    pub expr: String,
    pub derivative: String,
    pub critical_points: Vec<CriticalPoint<Real>>,
}

fn summarize(f: &FunctionSpec<Real>) -> CurveSummary {
    CurveSummary {
        expr: f.expr().to_string(),
        derivative: differentiate(f.expr()).to_string(),
        critical_points: f.critical_points().to_vec(),
    }
}

/// The full run artifact: everything the structured output document carries.
#[derive(Debug, Serialize)]
pub struct RunBundle {
    pub schema: String,
    pub config: AnalysisConfig,
    pub c1: CurveSummary,
    pub c2: CurveSummary,
    pub ordering: OrderingCertificate<Real>,
    pub declarations: DeclarationsSection,
    pub manifold: ManifoldReport<Real>,
    pub correspondence: CorrespondenceReport<Real>,
    pub event_levels: Vec<Real>,
    pub graph: ReebGraph<Real>,
    pub invariants: GraphInvariants,
    pub verdict: Verdict<Real>,
    #[serde(skip)]
    pub pair: Option<PreparedPair>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeclarationsSection {
    pub c1: DeclarationReport,
    pub c2: DeclarationReport,
}

/// Executes the whole pipeline; deterministic for identical configurations.
pub fn run_analyze(config: &AnalysisConfig) -> Result<RunBundle, AnalysisError> {
    let pair = prepare(config)?;
    let manifold = verify_manifold(
        &pair.c1,
        &pair.c2,
        config.m,
        config.manifold.samples,
        pair.window,
        config.seed,
    )?;
    if !manifold.pass {
        return Err(AnalysisError::ManifoldFail(manifold.min_grad_norm));
    }
    let correspondence =
        critical_correspondence(&pair.c1, &pair.c2, pair.window, pair.params.root_tol)?;
    let graph = build_reeb_graph(&pair.c1, &pair.c2, pair.window, config.m, &pair.params)?;
    let (verdict, graph) = classify(&pair.c1, &pair.c2, &graph, &pair.params)?;
    let event_levels =
        crate::reeb::sweep::event_levels(&pair.c1, &pair.c2, pair.window, pair.params.level_merge_tol)?;
    let invariants = graph_invariants(&graph);
    Ok(RunBundle {
        schema: crate::config::SCHEMA.to_string(),
        config: config.clone(),
        c1: summarize(&pair.c1),
        c2: summarize(&pair.c2),
        ordering: pair.ordering,
        declarations: DeclarationsSection {
            c1: pair.declarations_c1.clone(),
            c2: pair.declarations_c2.clone(),
        },
        manifold,
        correspondence,
        event_levels,
        graph,
        invariants,
        verdict,
        pair: Some(pair),
    })
}
