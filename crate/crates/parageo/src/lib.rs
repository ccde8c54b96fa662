//! Para-complex Riemannian geometry at desk scale.
//!
//! The crate works over the commutative ring `C = R + eR` with `e^2 = 1`
//! (split-complex numbers). Metrics are given as symbolic expressions in
//! para-holomorphic coordinates `z^a` and their conjugates, and the library
//! computes Christoffel symbols, the characteristic connection, curvature,
//! Ricci and Einstein diagnostics, together with an independent real-coordinate
//! oracle on the realized Norden metric. A separate module covers invariant
//! metrics on para-complex Lie groups built from structure constants.

// Tensor formulas read best with explicit index loops.
#![allow(clippy::needless_range_loop)]

pub mod connection;
pub mod curvature;
pub mod einstein;
pub mod expr;
pub mod lie;
pub mod metric;
pub mod paracomplex;
pub mod report;
pub mod tensor;

pub use expr::{EvalPoint, Expr};
pub use metric::{ParaMetric, RealizedMetric};
pub use paracomplex::{PCMatrix, ParaComplex, EPS_INV};

use thiserror::Error;

/// Which real projection of a para-complex matrix failed to invert.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionSign {
    Plus,
    Minus,
}

impl std::fmt::Display for ProjectionSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProjectionSign::Plus => write!(f, "plus"),
            ProjectionSign::Minus => write!(f, "minus"),
        }
    }
}

/// Crate-wide error type. Degenerate inputs (zero divisors, singular
/// projections, degenerate planes) are kept distinct from structural input
/// errors so callers can map them to different exit codes.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("zero divisor: |re^2 - im^2| = {modulus:.3e} <= {eps:.3e}")]
    ZeroDivisor { modulus: f64, eps: f64 },
    #[error("singular {which} projection of para-complex matrix")]
    SingularProjection { which: ProjectionSign },
    #[error("syntax error at byte {position}: expected {expected}")]
    SyntaxError { position: usize, expected: String },
    #[error("variable index {index} out of range 1..={dimension}")]
    IndexOutOfRange { index: usize, dimension: usize },
    #[error("metric entries ({row},{col}) and ({col},{row}) evaluate unequal (|diff| = {violation:.3e})")]
    AsymmetricInput { row: usize, col: usize, violation: f64 },
    #[error("not a Norden metric at probe point {point}: violation {violation:.3e}")]
    NotNorden { point: usize, violation: f64 },
    #[error("degenerate 2-plane: sectional denominator is a zero divisor")]
    DegeneratePlane,
    #[error("scalar curvature has imaginary part {imag:.3e}")]
    NonRealScalar { imag: f64 },
    #[error("realized metric singular at evaluation point")]
    SingularRealMetric,
    #[error("structure constants not antisymmetric at C^{a}_({b},{c})")]
    NotAntisymmetric { a: usize, b: usize, c: usize },
    #[error("Jacobi identity violated (max residual {residual:.3e})")]
    JacobiViolation { residual: f64 },
    #[error("Lie algebra is not semisimple (Killing form degenerate)")]
    NotSemisimple,
    #[error("no sign convention satisfies the Maurer-Cartan identity")]
    NoSignWorks,
}

impl Error {
    /// True for errors that signal a degenerate quantity at an evaluation
    /// point rather than malformed input.
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            Error::ZeroDivisor { .. }
                | Error::SingularProjection { .. }
                | Error::DegeneratePlane
                | Error::SingularRealMetric
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Origin-avoiding default sample grid: every coordinate ranges over
/// `(0.3, 0.1)` and `(0.7, -0.2)`, truncated to 16 points. Real points
/// `z = conj(z)` are avoided so divisions by `z - conj(z)` stay valid.
pub fn default_samples(n: usize) -> Vec<EvalPoint> {
    let choices = [ParaComplex::new(0.3, 0.1), ParaComplex::new(0.7, -0.2)];
    let total = 1usize << n.min(4);
    (0..total.min(16))
        .map(|mask| {
            EvalPoint::new(
                (0..n)
                    .map(|a| choices[(mask >> a.min(3)) & 1])
                    .collect::<Vec<_>>(),
            )
        })
        .collect()
}
