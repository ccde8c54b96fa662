//! Curvature of the characteristic connection, Ricci and scalar curvature,
//! Einstein tensor and divergence, characteristic-Einstein classification,
//! and an independent real-coordinate oracle on the realized metric.
//!
//! The curvature engine is oriented so that the Ricci contraction
//! `Ric_CA = R^B_(C,AB)` reproduces the classical real Ricci of the
//! realization through the hat correspondence (verified against the real
//! oracle below and by the invariant-metric identities in the Lie module).

use nalgebra::DMatrix;

use crate::connection::{MetricGeometry, PointJet};
use crate::expr::EvalPoint;
use crate::metric::{IOperator, RealizedMetric};
use crate::paracomplex::ParaComplex;
use crate::tensor::Tensor;
use crate::{Error, Result};

/// Curvature components from connection coefficients `l` and their
/// derivatives `dl`:
///
/// `R^D_(C,AB) = d_B L^D_CA - d_A L^D_CB + L^F_CA L^D_FB - L^F_CB L^D_FA`.
///
/// Layout: `r[[d, c, a, b]]`.
pub fn curvature_from_connection(l: &Tensor<3>, dl: &Tensor<4>) -> Tensor<4> {
    let d = l.dim();
    let mut out = Tensor::<4>::zeros(d);
    for dd in 0..d {
        for c in 0..d {
            for a in 0..d {
                for b in 0..d {
                    let mut acc = dl[[b, dd, c, a]] - dl[[a, dd, c, b]];
                    for f in 0..d {
                        acc += l[[f, c, a]] * l[[dd, f, b]] - l[[f, c, b]] * l[[dd, f, a]];
                    }
                    out[[dd, c, a, b]] = acc;
                }
            }
        }
    }
    out
}

/// Derivative of [`curvature_from_connection`], given first and second
/// connection derivatives: `out[[e, d, c, a, b]] = d_E R^D_(C,AB)`.
fn dcurvature_from_connection(l: &Tensor<3>, dl: &Tensor<4>, ddl: &Tensor<5>) -> Tensor<5> {
    let d = l.dim();
    let mut out = Tensor::<5>::zeros(d);
    for e in 0..d {
        for dd in 0..d {
            for c in 0..d {
                for a in 0..d {
                    for b in 0..d {
                        let mut acc = ddl[[e, b, dd, c, a]] - ddl[[e, a, dd, c, b]];
                        for f in 0..d {
                            acc += dl[[e, f, c, a]] * l[[dd, f, b]]
                                + l[[f, c, a]] * dl[[e, dd, f, b]]
                                - dl[[e, f, c, b]] * l[[dd, f, a]]
                                - l[[f, c, b]] * dl[[e, dd, f, a]];
                        }
                        out[[e, dd, c, a, b]] = acc;
                    }
                }
            }
        }
    }
    out
}

/// Ricci contraction `Ric_CA = R^B_(C,AB)`.
pub fn ricci_from_curvature(r: &Tensor<4>) -> Tensor<2> {
    let d = r.dim();
    let mut out = Tensor::<2>::zeros(d);
    for c in 0..d {
        for a in 0..d {
            let mut acc = ParaComplex::ZERO;
            for b in 0..d {
                acc += r[[b, c, a, b]];
            }
            out[[c, a]] = acc;
        }
    }
    out
}

/// Curvature data of the characteristic connection at a point.
pub struct CurvatureData {
    n: usize,
    /// `R^D_(C,AB)` over the full index range.
    pub r: Tensor<4>,
    /// `Ric_CA = R^B_(C,AB)`.
    pub ricci: Tensor<2>,
}

impl CurvatureData {
    pub fn complex_dim(&self) -> usize {
        self.n
    }

    /// Max norm of the mixed components `R^d_(c, abar b)`; zero iff the
    /// characteristic connection is para-holomorphic at this point.
    pub fn mixed_max(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for dd in 0..n {
            for c in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        worst = worst.max(self.r[[dd, c, n + a, b]].norm());
                    }
                }
            }
        }
        worst
    }

    /// Max violation of antisymmetry in the last index pair.
    pub fn antisymmetry_residual(&self) -> f64 {
        let d = self.r.dim();
        let mut worst = 0.0f64;
        for dd in 0..d {
            for c in 0..d {
                for a in 0..d {
                    for b in 0..d {
                        worst = worst.max((self.r[[dd, c, a, b]] + self.r[[dd, c, b, a]]).norm());
                    }
                }
            }
        }
        worst
    }
}

/// Curvature of the characteristic connection at a point (order-2 jet).
pub fn curvature_at(geom: &MetricGeometry, p: &EvalPoint) -> Result<CurvatureData> {
    let jet = geom.jet_at(p, 2)?;
    Ok(curvature_from_jet(&jet))
}

pub fn curvature_from_jet(jet: &PointJet) -> CurvatureData {
    let l = jet.char_connection();
    let dl = jet.d_char_connection();
    let r = curvature_from_connection(&l, &dl);
    let ricci = ricci_from_curvature(&r);
    CurvatureData {
        n: jet.complex_dim(),
        r,
        ricci,
    }
}

/// Lowered curvature `R_ABCD = G_DF R^F_(C,AB)`, layout `[[a, b, c, d]]`.
pub fn lower_curvature(curv: &CurvatureData, jet: &PointJet) -> Tensor<4> {
    let d = jet.full_dim();
    let mut out = Tensor::<4>::zeros(d);
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for dd in 0..d {
                    let mut acc = ParaComplex::ZERO;
                    for f in 0..d {
                        acc += jet.g[[dd, f]] * curv.r[[f, c, a, b]];
                    }
                    out[[a, b, c, dd]] = acc;
                }
            }
        }
    }
    out
}

/// Para-holomorphic characteristic sectional curvature of the 2-plane
/// spanned by `(1,0)` vectors `z1`, `z2`:
/// `K = R(Z1,Z2,Z1,Z2) / (G(Z1,Z1) G(Z2,Z2) - G(Z1,Z2)^2)`.
pub fn sectional_curvature(
    curv: &CurvatureData,
    jet: &PointJet,
    z1: &[ParaComplex],
    z2: &[ParaComplex],
    eps: f64,
) -> Result<ParaComplex> {
    let n = jet.complex_dim();
    assert_eq!(z1.len(), n);
    assert_eq!(z2.len(), n);
    let lowered = lower_curvature(curv, jet);
    let mut numer = ParaComplex::ZERO;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for dd in 0..n {
                    numer += lowered[[a, b, c, dd]] * z1[a] * z2[b] * z1[c] * z2[dd];
                }
            }
        }
    }
    let pair = |u: &[ParaComplex], v: &[ParaComplex]| {
        let mut acc = ParaComplex::ZERO;
        for a in 0..n {
            for b in 0..n {
                acc += jet.g[[a, b]] * u[a] * v[b];
            }
        }
        acc
    };
    let g11 = pair(z1, z1);
    let g22 = pair(z2, z2);
    let g12 = pair(z1, z2);
    let denom = g11 * g22 - g12 * g12;
    let inv = denom.invert(eps).map_err(|_| Error::DegeneratePlane)?;
    Ok(numer * inv)
}

/// Scalar curvature `rho = G^CA Ric_CA`; errors with `NonRealScalar` if the
/// imaginary part exceeds `tol` (the two conjugate halves make it
/// structurally real).
pub fn scalar_curvature(curv: &CurvatureData, jet: &PointJet, tol: f64) -> Result<ParaComplex> {
    let d = jet.full_dim();
    let mut rho = ParaComplex::ZERO;
    for c in 0..d {
        for a in 0..d {
            rho += jet.ginv[[c, a]] * curv.ricci[[c, a]];
        }
    }
    if rho.im.abs() > tol {
        return Err(Error::NonRealScalar { imag: rho.im.abs() });
    }
    Ok(rho)
}

/// Einstein tensor data at a point.
pub struct EinsteinTensorData {
    /// `E_AB = Ric_AB - (rho/2) G_AB`.
    pub e_lower: Tensor<2>,
    /// `E^A_B = G^AC E_CB`.
    pub e_mixed: Tensor<2>,
    /// Stress tensor `T_AB = E_AB / (8 pi c)`.
    pub stress: Tensor<2>,
    pub rho: ParaComplex,
    /// True when all Ricci components vanish below the given tolerance.
    pub vacuum: bool,
}

pub fn einstein_tensor(
    curv: &CurvatureData,
    jet: &PointJet,
    c_const: f64,
    tol: f64,
) -> Result<EinsteinTensorData> {
    let d = jet.full_dim();
    let rho = scalar_curvature(curv, jet, 1e-9)?;
    let mut e_lower = Tensor::<2>::zeros(d);
    let mut stress = Tensor::<2>::zeros(d);
    let factor = 1.0 / (8.0 * std::f64::consts::PI * c_const);
    for a in 0..d {
        for b in 0..d {
            e_lower[[a, b]] = curv.ricci[[a, b]] - jet.g[[a, b]] * (rho * 0.5);
            stress[[a, b]] = e_lower[[a, b]] * factor;
        }
    }
    let mut e_mixed = Tensor::<2>::zeros(d);
    for a in 0..d {
        for b in 0..d {
            let mut acc = ParaComplex::ZERO;
            for cc in 0..d {
                acc += jet.ginv[[a, cc]] * e_lower[[cc, b]];
            }
            e_mixed[[a, b]] = acc;
        }
    }
    let vacuum = curv.ricci.max_norm() < tol;
    Ok(EinsteinTensorData {
        e_lower,
        e_mixed,
        stress,
        rho,
        vacuum,
    })
}

/// Max norm of `div E = E^A_(B|A)` over the samples, computed exactly from
/// third-order metric jets.
pub fn divergence_einstein(geom: &MetricGeometry, samples: &[EvalPoint]) -> Result<f64> {
    let mut worst = 0.0f64;
    for p in samples {
        let jet = geom.jet_at(p, 3)?;
        let d = jet.full_dim();
        let l = jet.char_connection();
        let dl = jet.d_char_connection();
        let ddl = jet.dd_char_connection();
        let r = curvature_from_connection(&l, &dl);
        let ricci = ricci_from_curvature(&r);
        let dr = dcurvature_from_connection(&l, &dl, &ddl);
        let dginv = jet.dginv();

        let mut dricci = Tensor::<3>::zeros(d);
        for e in 0..d {
            for c in 0..d {
                for a in 0..d {
                    let mut acc = ParaComplex::ZERO;
                    for b in 0..d {
                        acc += dr[[e, b, c, a, b]];
                    }
                    dricci[[e, c, a]] = acc;
                }
            }
        }

        let mut rho = ParaComplex::ZERO;
        for c in 0..d {
            for a in 0..d {
                rho += jet.ginv[[c, a]] * ricci[[c, a]];
            }
        }
        let mut drho = vec![ParaComplex::ZERO; d];
        for e in 0..d {
            let mut acc = ParaComplex::ZERO;
            for c in 0..d {
                for a in 0..d {
                    acc += dginv[[e, c, a]] * ricci[[c, a]] + jet.ginv[[c, a]] * dricci[[e, c, a]];
                }
            }
            drho[e] = acc;
        }

        let mut e_lower = Tensor::<2>::zeros(d);
        for c in 0..d {
            for b in 0..d {
                e_lower[[c, b]] = ricci[[c, b]] - jet.g[[c, b]] * (rho * 0.5);
            }
        }
        let mut e_mixed = Tensor::<2>::zeros(d);
        for a in 0..d {
            for b in 0..d {
                let mut acc = ParaComplex::ZERO;
                for c in 0..d {
                    acc += jet.ginv[[a, c]] * e_lower[[c, b]];
                }
                e_mixed[[a, b]] = acc;
            }
        }
        let mut de_mixed = Tensor::<3>::zeros(d);
        for e in 0..d {
            for a in 0..d {
                for b in 0..d {
                    let mut acc = ParaComplex::ZERO;
                    for c in 0..d {
                        let de_lower = dricci[[e, c, b]]
                            - jet.g[[c, b]] * (drho[e] * 0.5)
                            - jet.dg[[e, c, b]] * (rho * 0.5);
                        acc += dginv[[e, a, c]] * e_lower[[c, b]] + jet.ginv[[a, c]] * de_lower;
                    }
                    de_mixed[[e, a, b]] = acc;
                }
            }
        }

        for b in 0..d {
            let mut div = ParaComplex::ZERO;
            for a in 0..d {
                div += de_mixed[[a, a, b]];
                for f in 0..d {
                    div += l[[a, a, f]] * e_mixed[[f, b]] - l[[f, a, b]] * e_mixed[[a, f]];
                }
            }
            worst = worst.max(div.norm());
        }
    }
    Ok(worst)
}

/// Result of the characteristic-Einstein test.
#[derive(Clone, Debug)]
pub struct ClassificationReport {
    /// Max norm of the mixed Ricci block `Ric_(c abar)`.
    pub mixed_ricci_max: f64,
    /// Max norm of `Ric_ca - f G_ca` with `f` extracted by trace per point.
    pub proportionality_residual: f64,
    /// Per-sample values of `f = (1/n) G^ca Ric_ca`.
    pub f_values: Vec<ParaComplex>,
    pub is_characteristic_einstein: bool,
    /// For Einstein metrics with `n >= 3`: finite-difference residual of
    /// `d rho0 / d z^a` (anti-para-holomorphy of the characteristic scalar).
    pub anti_paraholomorphy_residual: Option<f64>,
}

/// Trace of the unbarred Ricci block, `rho0 = G^ca Ric_ca`.
fn rho0_at(geom: &MetricGeometry, p: &EvalPoint) -> Result<ParaComplex> {
    let jet = geom.jet_at(p, 2)?;
    let curv = curvature_from_jet(&jet);
    let n = jet.complex_dim();
    let mut acc = ParaComplex::ZERO;
    for c in 0..n {
        for a in 0..n {
            acc += jet.ginv[[c, a]] * curv.ricci[[c, a]];
        }
    }
    Ok(acc)
}

/// Decide whether `Ric_(c abar) = 0` and `Ric_ca = f G_ca` pointwise, with
/// `f` extracted by trace. For Einstein metrics in dimension `n >= 3` also
/// probes anti-para-holomorphy of `rho0` by central finite differences
/// (step 1e-4) along the unbarred coordinate directions.
pub fn classify_characteristic_einstein(
    geom: &MetricGeometry,
    samples: &[EvalPoint],
    tol: f64,
) -> Result<ClassificationReport> {
    let n = geom.metric().dim();
    let mut mixed = 0.0f64;
    let mut residual = 0.0f64;
    let mut f_values = Vec::with_capacity(samples.len());
    for p in samples {
        let jet = geom.jet_at(p, 2)?;
        let curv = curvature_from_jet(&jet);
        for c in 0..n {
            for a in 0..n {
                mixed = mixed.max(curv.ricci[[c, n + a]].norm());
            }
        }
        let mut f = ParaComplex::ZERO;
        for c in 0..n {
            for a in 0..n {
                f += jet.ginv[[c, a]] * curv.ricci[[c, a]];
            }
        }
        f = f * (1.0 / n as f64);
        f_values.push(f);
        for c in 0..n {
            for a in 0..n {
                residual = residual.max((curv.ricci[[c, a]] - f * jet.g[[c, a]]).norm());
            }
        }
    }
    let is_einstein = mixed < tol && residual < tol;
    let mut anti = None;
    if is_einstein && n >= 3 {
        let h = 1e-4;
        let mut worst = 0.0f64;
        for p in samples {
            for a in 0..n {
                let shift = |dre: f64, dim: f64| {
                    let mut coords = p.coords().to_vec();
                    coords[a] += ParaComplex::new(dre, dim);
                    EvalPoint::new(coords)
                };
                let dx =
                    (rho0_at(geom, &shift(h, 0.0))? - rho0_at(geom, &shift(-h, 0.0))?) * (0.5 / h);
                let dy =
                    (rho0_at(geom, &shift(0.0, h))? - rho0_at(geom, &shift(0.0, -h))?) * (0.5 / h);
                // d/dz^a = (d/dx^a + e d/dy^a) / 2
                let dz = (dx + ParaComplex::E * dy) * 0.5;
                worst = worst.max(dz.norm());
            }
        }
        anti = Some(worst);
    }
    Ok(ClassificationReport {
        mixed_ricci_max: mixed,
        proportionality_residual: residual,
        f_values,
        is_characteristic_einstein: is_einstein,
        anti_paraholomorphy_residual: anti,
    })
}

// ---------------------------------------------------------------------------
// Real-coordinate oracle on the realized metric. This path shares none of
// the para-complex machinery above: it differentiates the realized entries
// along real directions and applies the classical Levi-Civita, Riemann and
// Ricci formulas with real linear algebra.
// ---------------------------------------------------------------------------

type Rank3 = Vec<Vec<Vec<f64>>>;
type Rank4 = Vec<Vec<Vec<Vec<f64>>>>;

fn zeros3(d: usize) -> Rank3 {
    vec![vec![vec![0.0; d]; d]; d]
}

/// Pointwise real geometry of a realized metric.
pub struct RealGeometry {
    pub g: DMatrix<f64>,
    pub ginv: DMatrix<f64>,
    /// `gamma[i][j][k] = Gamma^i_jk`.
    pub gamma: Rank3,
    /// `dgamma[m][i][j][k] = d_m Gamma^i_jk`.
    pub dgamma: Rank4,
}

impl RealGeometry {
    pub fn at(g: &RealizedMetric, p: &EvalPoint) -> Result<Self> {
        let d = g.real_dim();
        let (gm, dg, ddg) = g.jet_at(p)?;
        if gm.clone().determinant().abs() <= 1e-12 {
            return Err(Error::SingularRealMetric);
        }
        let ginv = gm.clone().try_inverse().ok_or(Error::SingularRealMetric)?;

        let t = |l: usize, j: usize, k: usize| dg[j][(k, l)] + dg[k][(j, l)] - dg[l][(j, k)];
        let mut gamma = zeros3(d);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut acc = 0.0;
                    for l in 0..d {
                        acc += ginv[(i, l)] * t(l, j, k);
                    }
                    gamma[i][j][k] = 0.5 * acc;
                }
            }
        }

        let mut dginv = vec![DMatrix::zeros(d, d); d];
        for (m, dgm) in dg.iter().enumerate() {
            dginv[m] = -(&ginv * dgm * &ginv);
        }
        let dt = |m: usize, l: usize, j: usize, k: usize| {
            ddg[m][j][(k, l)] + ddg[m][k][(j, l)] - ddg[m][l][(j, k)]
        };
        let mut dgamma = vec![zeros3(d); d];
        for m in 0..d {
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        let mut acc = 0.0;
                        for l in 0..d {
                            acc += dginv[m][(i, l)] * t(l, j, k) + ginv[(i, l)] * dt(m, l, j, k);
                        }
                        dgamma[m][i][j][k] = 0.5 * acc;
                    }
                }
            }
        }
        Ok(Self {
            g: gm,
            ginv,
            gamma,
            dgamma,
        })
    }

    /// Riemann components `riem[i][j][k][l]`, the `i`-th component of
    /// `R(d_k, d_l) d_j`.
    pub fn riemann(&self) -> Rank4 {
        let d = self.g.nrows();
        let mut out = vec![zeros3(d); d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let mut acc = self.dgamma[k][i][l][j] - self.dgamma[l][i][k][j];
                        for f in 0..d {
                            acc += self.gamma[f][l][j] * self.gamma[i][k][f]
                                - self.gamma[f][k][j] * self.gamma[i][l][f];
                        }
                        out[i][j][k][l] = acc;
                    }
                }
            }
        }
        out
    }

    /// Classical Ricci tensor `Ric_jk = Tr { Z -> R(Z, d_j) d_k }`.
    pub fn ricci(&self) -> DMatrix<f64> {
        let d = self.g.nrows();
        let riem = self.riemann();
        DMatrix::from_fn(d, d, |j, k| (0..d).map(|i| riem[i][k][i][j]).sum())
    }

    /// Residual of `nabla I = 0` for the real Levi-Civita connection:
    /// max over components of `Gamma^i_(j Il) - I Gamma^i_(j l)`.
    pub fn nabla_i_residual(&self, n: usize) -> f64 {
        let iop = IOperator::new(n);
        let d = self.g.nrows();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = self.gamma[i][j][iop.swap(k)] - self.gamma[iop.swap(i)][j][k];
                    worst = worst.max(v.abs());
                }
            }
        }
        worst
    }
}

/// Classical Ricci tensor of the realized metric; the central independent
/// oracle for the para-complex pipeline.
pub fn real_ricci_oracle(g: &RealizedMetric, p: &EvalPoint) -> Result<DMatrix<f64>> {
    Ok(RealGeometry::at(g, p)?.ricci())
}
