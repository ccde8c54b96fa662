//! Problem-file schemas. Two shapes are accepted, distinguished by the
//! presence of `structure_constants`:
//!
//! Metric problem:
//! `{ "dimension": n, "G": [["expr", ...], ...], "samples": [[[re,im], ...], ...],
//!    "tolerance": t }`
//!
//! Lie problem:
//! `{ "dim": m, "structure_constants": [{"upper": a, "lower": [b, c],
//!    "value": [re, im]}, ...], "lambda": "series:N" | [["expr", ...], ...],
//!    "samples": [...], "tolerance": t }`
//!
//! Indices in files are 1-based. Listed structure constants imply their
//! antisymmetric mates; listing both with inconsistent values is an error.

use parageo::expr::EvalPoint;
use parageo::lie::{validate_structure, LambdaFrame, LieAlgebraData};
use parageo::tensor::Tensor;
use parageo::ParaComplex;
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricProblem {
    pub dimension: usize,
    #[serde(rename = "G")]
    pub g: Vec<Vec<String>>,
    #[serde(default)]
    pub samples: Option<Vec<Vec<ParaComplex>>>,
    #[serde(default)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Deserialize)]
pub struct StructureConstantEntry {
    pub upper: usize,
    pub lower: [usize; 2],
    pub value: ParaComplex,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum LambdaSpec {
    Series(String),
    Matrix(Vec<Vec<String>>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieProblem {
    pub dim: usize,
    pub structure_constants: Vec<StructureConstantEntry>,
    pub lambda: LambdaSpec,
    #[serde(default)]
    pub samples: Option<Vec<Vec<ParaComplex>>>,
    #[serde(default)]
    pub tolerance: Option<f64>,
}

#[derive(Debug)]
pub enum ProblemFile {
    Metric(MetricProblem),
    Lie(LieProblem),
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, String> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let is_lie = value
        .as_object()
        .map(|o| o.contains_key("structure_constants"))
        .unwrap_or(false);
    if is_lie {
        let problem: LieProblem =
            serde_json::from_value(value).map_err(|e| format!("invalid Lie problem: {e}"))?;
        if problem.dim == 0 || problem.dim > 8 {
            return Err(format!(
                "dimension {} outside supported range 1..=8",
                problem.dim
            ));
        }
        Ok(ProblemFile::Lie(problem))
    } else {
        let problem: MetricProblem =
            serde_json::from_value(value).map_err(|e| format!("invalid metric problem: {e}"))?;
        if problem.dimension == 0 || problem.dimension > 8 {
            return Err(format!(
                "dimension {} outside supported range 1..=8",
                problem.dimension
            ));
        }
        if problem.g.len() != problem.dimension
            || problem.g.iter().any(|row| row.len() != problem.dimension)
        {
            return Err("G must be a square matrix matching the dimension".to_string());
        }
        Ok(ProblemFile::Metric(problem))
    }
}

pub fn samples_from(spec: &Option<Vec<Vec<ParaComplex>>>, n: usize) -> Result<Vec<EvalPoint>, String> {
    match spec {
        None => Ok(parageo::default_samples(n)),
        Some(points) => {
            if points.is_empty() {
                return Err("samples must be nonempty when given".to_string());
            }
            points
                .iter()
                .map(|coords| {
                    if coords.len() != n {
                        Err(format!(
                            "sample point has {} coordinates, expected {n}",
                            coords.len()
                        ))
                    } else {
                        Ok(EvalPoint::new(coords.clone()))
                    }
                })
                .collect()
        }
    }
}

/// Assemble structure constants from sparse entries, filling antisymmetric
/// mates, and validate.
pub fn algebra_from(problem: &LieProblem) -> Result<LieAlgebraData, String> {
    let m = problem.dim;
    let mut c = Tensor::<3>::zeros(m);
    let mut set = std::collections::HashSet::new();
    for entry in &problem.structure_constants {
        let a = entry.upper;
        let [b, cc] = entry.lower;
        if a == 0 || a > m || b == 0 || b > m || cc == 0 || cc > m {
            return Err(format!(
                "structure constant index out of range: C^{a}_({b},{cc})"
            ));
        }
        if b == cc && entry.value != ParaComplex::ZERO {
            return Err(format!(
                "C^{a}_({b},{cc}) must vanish on the diagonal of the lower pair"
            ));
        }
        let key = (a - 1, b - 1, cc - 1);
        if !set.insert(key) {
            return Err(format!("duplicate structure constant C^{a}_({b},{cc})"));
        }
        c[[a - 1, b - 1, cc - 1]] = entry.value;
        let mate = (a - 1, cc - 1, b - 1);
        if set.contains(&mate) {
            if c[[a - 1, cc - 1, b - 1]] != -entry.value {
                return Err(format!(
                    "inconsistent antisymmetric pair at C^{a}_({b},{cc})"
                ));
            }
        } else {
            set.insert(mate);
            c[[a - 1, cc - 1, b - 1]] = -entry.value;
        }
    }
    validate_structure(m, c).map_err(|e| e.to_string())
}

/// Build the frame described by the `lambda` field.
pub fn frame_from(problem: &LieProblem, alg: &LieAlgebraData) -> Result<LambdaFrame, String> {
    match &problem.lambda {
        LambdaSpec::Series(spec) => {
            let order: usize = spec
                .strip_prefix("series:")
                .ok_or_else(|| format!("unrecognized lambda spec {spec:?}"))?
                .parse()
                .map_err(|_| format!("bad series order in {spec:?}"))?;
            if order == 0 {
                return Err("series order must be at least 1".to_string());
            }
            parageo::lie::bch_lambda_series(alg, order).map_err(|e| e.to_string())
        }
        LambdaSpec::Matrix(rows) => {
            let m = problem.dim;
            if rows.len() != m || rows.iter().any(|r| r.len() != m) {
                return Err("lambda matrix must be m x m".to_string());
            }
            let entries = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|s| parageo::expr::parse_expr(s, m))
                        .collect::<parageo::Result<Vec<_>>>()
                })
                .collect::<parageo::Result<Vec<_>>>()
                .map_err(|e| e.to_string())?;
            Ok(LambdaFrame::from_exprs(m, entries))
        }
    }
}
