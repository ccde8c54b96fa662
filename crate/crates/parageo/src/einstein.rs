//! Einstein-condition diagnostics: constant extraction on the para-complex
//! side, real/para-complex scalar-curvature relations, the correspondence
//! between the Einstein conditions for a para-holomorphic metric and its
//! Norden realization, and the twin-metric transfer.

use nalgebra::DMatrix;

use crate::connection::MetricGeometry;
use crate::curvature::{curvature_from_jet, real_ricci_oracle, RealGeometry};
use crate::expr::EvalPoint;
use crate::metric::{IOperator, RealizedMetric};
use crate::paracomplex::ParaComplex;
use crate::Result;

/// Result of extracting a candidate Einstein constant `lambda-hat` from the
/// para-complex Ricci tensor over a sample set.
#[derive(Clone, Debug)]
pub struct EinsteinConstantReport {
    /// Per-point trace values `(1/n) G^ab Ric_ab`.
    pub lambda_per_point: Vec<ParaComplex>,
    /// Representative value (first sample).
    pub lambda: ParaComplex,
    /// Max deviation of the per-point values from the representative.
    pub spread: f64,
    /// Max norm of `Ric_ab - lambda G_ab` over samples.
    pub proportionality_residual: f64,
    /// Max norm of the mixed Ricci block.
    pub mixed_ricci_max: f64,
    pub is_einstein: bool,
}

/// Extract `lambda-hat` by trace and decide the Einstein condition with
/// para-complex constant: constant across samples, `Ric_ab = lambda G_ab`,
/// and vanishing mixed Ricci.
pub fn extract_einstein_constant(
    geom: &MetricGeometry,
    samples: &[EvalPoint],
    tol: f64,
) -> Result<EinsteinConstantReport> {
    assert!(!samples.is_empty());
    let n = geom.metric().dim();
    let mut lambda_per_point = Vec::with_capacity(samples.len());
    let mut residual = 0.0f64;
    let mut mixed = 0.0f64;
    for p in samples {
        let jet = geom.jet_at(p, 2)?;
        let curv = curvature_from_jet(&jet);
        let mut lambda = ParaComplex::ZERO;
        for c in 0..n {
            for a in 0..n {
                lambda += jet.ginv[[c, a]] * curv.ricci[[c, a]];
                mixed = mixed.max(curv.ricci[[c, n + a]].norm());
            }
        }
        lambda = lambda * (1.0 / n as f64);
        for c in 0..n {
            for a in 0..n {
                residual = residual.max((curv.ricci[[c, a]] - lambda * jet.g[[c, a]]).norm());
            }
        }
        lambda_per_point.push(lambda);
    }
    let lambda = lambda_per_point[0];
    let spread = lambda_per_point
        .iter()
        .map(|l| (*l - lambda).norm())
        .fold(0.0f64, f64::max);
    let is_einstein = spread < tol && residual < tol && mixed < tol;
    Ok(EinsteinConstantReport {
        lambda_per_point,
        lambda,
        spread,
        proportionality_residual: residual,
        mixed_ricci_max: mixed,
        is_einstein,
    })
}

/// Real and para-holomorphic scalar curvatures at a point.
#[derive(Clone, Copy, Debug)]
pub struct ScalarCurvatures {
    /// `K = Tr Q` with `Q` the real Ricci operator.
    pub k: f64,
    /// `K* = Tr (I Q)`.
    pub k_star: f64,
    /// `K-hat = Tr Q-hat` from the para-complex pipeline.
    pub k_hat: ParaComplex,
    /// Residual of `K-hat = (K + e K*) / 2`.
    pub relation_residual: f64,
    /// Residual of `I Q = Q I` at the operator level.
    pub ricci_i_commutator: f64,
}

/// Compute `K`, `K*` from the real oracle (solving `g Q = Ric(g)` per
/// point) and `K-hat` from the para-complex Ricci, and check the relation
/// between them.
pub fn scalar_curvatures(
    geom: &MetricGeometry,
    realized: &RealizedMetric,
    p: &EvalPoint,
) -> Result<ScalarCurvatures> {
    let n = geom.metric().dim();
    let real = RealGeometry::at(realized, p)?;
    let ric = real.ricci();
    let q = real
        .g
        .clone()
        .lu()
        .solve(&ric)
        .ok_or(crate::Error::SingularRealMetric)?;
    let k = q.trace();
    let iop = IOperator::new(n).matrix();
    let k_star = (&iop * &q).trace();
    let commutator = (&iop * &q - &q * &iop).abs().max();

    let jet = geom.jet_at(p, 2)?;
    let curv = curvature_from_jet(&jet);
    let mut k_hat = ParaComplex::ZERO;
    for a in 0..n {
        for c in 0..n {
            k_hat += jet.ginv[[a, c]] * curv.ricci[[c, a]];
        }
    }
    let relation_residual =
        (k_hat - (ParaComplex::new(k, 0.0) + ParaComplex::E * k_star) * 0.5).norm();
    Ok(ScalarCurvatures {
        k,
        k_star,
        k_hat,
        relation_residual,
        ricci_i_commutator: commutator,
    })
}

/// Correspondence between the para-complex and realized Einstein conditions.
#[derive(Clone, Debug)]
pub struct CorrespondenceReport {
    pub para: EinsteinConstantReport,
    /// Real-side constants `lambda_1 = K/2n`, `lambda_2 = K*/2n` (first
    /// sample).
    pub lambda_1: f64,
    pub lambda_2: f64,
    /// Max norm of `Ric(g) - lambda_1 g - lambda_2 g(., I.)` over samples.
    pub real_residual: f64,
    /// Spread of the real-side constants across samples.
    pub real_spread: f64,
    pub real_is_einstein: bool,
    /// True when both sides agree on the Einstein condition and, if they
    /// hold, on the constants.
    pub holds: bool,
}

/// Verify the Einstein correspondence for a para-holomorphic metric: the
/// para-complex metric satisfies `Ric = lambda-hat G` iff the realization
/// satisfies `Ric(g) = lambda_1 g + lambda_2 g(., I.)` with
/// `lambda-hat = lambda_1 + e lambda_2`.
pub fn check_theorem_correspondence(
    geom: &MetricGeometry,
    samples: &[EvalPoint],
    tol: f64,
) -> Result<CorrespondenceReport> {
    let n = geom.metric().dim();
    let d = 2 * n;
    let para = extract_einstein_constant(geom, samples, tol)?;
    let realized = geom.metric().realize();
    let iop = IOperator::new(n);

    let mut constants = Vec::with_capacity(samples.len());
    let mut real_residual = 0.0f64;
    for p in samples {
        let real = RealGeometry::at(&realized, p)?;
        let ric = real.ricci();
        let q = real
            .g
            .clone()
            .lu()
            .solve(&ric)
            .ok_or(crate::Error::SingularRealMetric)?;
        let l1 = q.trace() / d as f64;
        let imat = iop.matrix();
        let l2 = (&imat * &q).trace() / d as f64;
        constants.push((l1, l2));
        for j in 0..d {
            for k in 0..d {
                let model = l1 * real.g[(j, k)] + l2 * real.g[(j, iop.swap(k))];
                real_residual = real_residual.max((ric[(j, k)] - model).abs());
            }
        }
    }
    let (lambda_1, lambda_2) = constants[0];
    let real_spread = constants
        .iter()
        .map(|&(a, b)| {
            (a - lambda_1).abs().max((b - lambda_2).abs())
        })
        .fold(0.0f64, f64::max);
    let real_is_einstein = real_residual < tol && real_spread < tol;

    let mut holds = para.is_einstein == real_is_einstein;
    if para.is_einstein && real_is_einstein {
        let diff = (para.lambda - ParaComplex::new(lambda_1, lambda_2)).norm();
        holds = holds && diff < tol.max(1e-8);
    }
    Ok(CorrespondenceReport {
        para,
        lambda_1,
        lambda_2,
        real_residual,
        real_spread,
        real_is_einstein,
        holds,
    })
}

/// Twin-metric transfer of the Einstein condition: if the base metric is
/// Einstein with constant `lambda-hat`, the twin is Einstein with `e lambda-hat`.
#[derive(Clone, Debug)]
pub struct TwinTransferReport {
    pub base: EinsteinConstantReport,
    pub twin: EinsteinConstantReport,
    /// `|lambda_twin - e lambda_base|`.
    pub transfer_residual: f64,
}

pub fn twin_transfer(
    geom: &MetricGeometry,
    samples: &[EvalPoint],
    tol: f64,
) -> Result<TwinTransferReport> {
    let base = extract_einstein_constant(geom, samples, tol)?;
    let twin_geom = MetricGeometry::with_eps(geom.metric().twin(), geom.eps());
    let twin = extract_einstein_constant(&twin_geom, samples, tol)?;
    let transfer_residual = (twin.lambda - ParaComplex::E * base.lambda).norm();
    Ok(TwinTransferReport {
        base,
        twin,
        transfer_residual,
    })
}

/// Real Ricci operator `Q = g^-1 Ric(g)` of a realized metric at a point.
pub fn real_ricci_operator(realized: &RealizedMetric, p: &EvalPoint) -> Result<DMatrix<f64>> {
    let real = RealGeometry::at(realized, p)?;
    let ric = real.ricci();
    real.g
        .clone()
        .lu()
        .solve(&ric)
        .ok_or(crate::Error::SingularRealMetric)
}

/// Finite-difference check of the scalar-curvature differential pairing for
/// para-holomorphic metrics: `dK(X) = dK*(IX)` for real basis directions.
/// Returns the max residual at central-difference step `h`.
pub fn scalar_differential_pairing(
    geom: &MetricGeometry,
    realized: &RealizedMetric,
    p: &EvalPoint,
    h: f64,
) -> Result<f64> {
    let n = geom.metric().dim();
    let k_at = |pt: &EvalPoint| -> Result<(f64, f64)> {
        let s = scalar_curvatures(geom, realized, pt)?;
        Ok((s.k, s.k_star))
    };
    let shift = |j: usize, delta: f64| {
        let mut xy = p.real_coords();
        xy[j] += delta;
        EvalPoint::from_real_coords(&xy)
    };
    let iop = IOperator::new(n);
    let mut worst = 0.0f64;
    for j in 0..2 * n {
        let (k_plus, _) = k_at(&shift(j, h))?;
        let (k_minus, _) = k_at(&shift(j, -h))?;
        let dk = (k_plus - k_minus) / (2.0 * h);
        let jj = iop.swap(j);
        let (_, ks_plus) = k_at(&shift(jj, h))?;
        let (_, ks_minus) = k_at(&shift(jj, -h))?;
        let dks = (ks_plus - ks_minus) / (2.0 * h);
        worst = worst.max((dk - dks).abs());
    }
    Ok(worst)
}

/// Convenience: real Ricci of the realization (re-exported oracle).
pub fn realized_ricci(realized: &RealizedMetric, p: &EvalPoint) -> Result<DMatrix<f64>> {
    real_ricci_oracle(realized, p)
}
