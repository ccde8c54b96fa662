//! Batch front-end: load problem files, run the selected check suite, emit a
//! machine-readable report (JSON is the contract; text is a convenience).
//!
//! Exit codes: 0 all checks pass, 1 check failures, 2 schema/parse errors,
//! 3 degenerate-input errors (zero divisors, singular projections,
//! degenerate Killing forms).

pub mod input;
pub mod pipeline;

use std::path::PathBuf;

use parageo::report::Report;

pub use input::{LieProblem, MetricProblem, ProblemFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    MetricCheck,
    Connection,
    Curvature,
    Einstein,
    LieGroup,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

/// Resolved run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub suite: Suite,
    pub input: PathBuf,
    pub tolerance: Option<f64>,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
    pub constant_c: f64,
}

/// Failure modes of a run, mapped to exit codes by [`run`].
#[derive(Debug)]
pub enum RunError {
    /// Unreadable file, malformed JSON, bad expression syntax, or an input
    /// outside the supported shape (exit 2).
    Schema(String),
    /// Degenerate quantity encountered while evaluating (exit 3).
    Degenerate(String),
    /// Writing the report failed (exit 2).
    Io(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Schema(_) | RunError::Io(_) => 2,
            RunError::Degenerate(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            RunError::Schema(m) | RunError::Degenerate(m) | RunError::Io(m) => m,
        }
    }
}

fn classify_core_error(e: parageo::Error) -> RunError {
    match &e {
        parageo::Error::SyntaxError { .. } | parageo::Error::IndexOutOfRange { .. } => {
            RunError::Schema(e.to_string())
        }
        parageo::Error::NotSemisimple => RunError::Degenerate(e.to_string()),
        _ if e.is_degenerate() => RunError::Degenerate(e.to_string()),
        _ => RunError::Schema(e.to_string()),
    }
}

/// Execute a run end to end: load, dispatch, render. Returns the report and
/// the process exit code.
pub fn run(config: &RunConfig) -> Result<(Report, i32), RunError> {
    if config.constant_c == 0.0 {
        return Err(RunError::Schema("constant c must be nonzero".to_string()));
    }
    if let Some(t) = config.tolerance {
        if t <= 0.0 || t.is_nan() {
            return Err(RunError::Schema("tolerance must be positive".to_string()));
        }
    }
    let text = std::fs::read_to_string(&config.input)
        .map_err(|e| RunError::Io(format!("cannot read {}: {e}", config.input.display())))?;
    let problem = input::parse_problem(&text).map_err(RunError::Schema)?;

    let checks = match (&problem, config.suite) {
        (ProblemFile::Metric(m), Suite::MetricCheck) => pipeline::metric_checks(m, config),
        (ProblemFile::Metric(m), Suite::Connection) => pipeline::connection_checks(m, config),
        (ProblemFile::Metric(m), Suite::Curvature) => pipeline::curvature_checks(m, config),
        (ProblemFile::Metric(m), Suite::Einstein) => pipeline::einstein_checks(m, config),
        (ProblemFile::Metric(m), Suite::All) => {
            let mut all = pipeline::metric_checks(m, config)?;
            all.extend(pipeline::connection_checks(m, config)?);
            all.extend(pipeline::curvature_checks(m, config)?);
            all.extend(pipeline::einstein_checks(m, config)?);
            Ok(all)
        }
        (ProblemFile::Lie(l), Suite::LieGroup) | (ProblemFile::Lie(l), Suite::All) => {
            pipeline::liegroup_checks(l, config)
        }
        (ProblemFile::Lie(_), _) => Err(RunError::Schema(
            "input is a Lie problem file; use the liegroup (or all) subcommand".to_string(),
        )),
        (ProblemFile::Metric(_), Suite::LieGroup) => Err(RunError::Schema(
            "input is a metric problem file; liegroup needs structure constants".to_string(),
        )),
    }?;

    let report = Report::from_checks(checks);
    let rendered = match config.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report)
                .map_err(|e| RunError::Io(e.to_string()))?;
            s.push('\n');
            s
        }
        OutputFormat::Text => report.to_text(),
    };
    match &config.output {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| RunError::Io(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    let code = if report.all_passed() { 0 } else { 1 };
    Ok((report, code))
}

pub(crate) fn degenerate_or_schema(e: parageo::Error) -> RunError {
    classify_core_error(e)
}
