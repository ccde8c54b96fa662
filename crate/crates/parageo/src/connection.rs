//! Christoffel symbols of a para-complex metric, the fundamental tensors
//! `Phi` and `Psi`, and the characteristic connection with its axiom checks.
//!
//! The inverse metric is never formed symbolically: all coefficients are
//! evaluated pointwise from symbolic derivatives of the forward metric, with
//! derivatives of the inverse obtained from `dG^-1 = -G^-1 (dG) G^-1`.
//!
//! Index convention throughout: block indices run over `0..2n`, where values
//! below `n` are unbarred and `A + n (mod 2n)` is the conjugate index.
//! Derivative directions use the same convention (`E >= n` differentiates
//! along `zb^(E-n+1)`).

use std::sync::OnceLock;

use crate::expr::{DiffMemo, EvalCache, EvalPoint, Expr};
use crate::metric::ParaMetric;
use crate::paracomplex::ParaComplex;
use crate::tensor::Tensor;
use crate::{Result, EPS_INV};

pub(crate) fn conj_index(a: usize, n: usize) -> usize {
    (a + n) % (2 * n)
}

pub(crate) fn is_barred(a: usize, n: usize) -> bool {
    a >= n
}

type Grid<T> = Vec<Vec<T>>;

/// A para-complex metric together with cached symbolic derivatives of its
/// unbarred block, ready for pointwise geometry.
pub struct MetricGeometry {
    metric: ParaMetric,
    /// `d1[e][a][b] = d G_ab / d z^E` for the full direction range `e < 2n`.
    d1: Vec<Grid<Expr>>,
    /// `d2[e][f][a][b]`.
    d2: Vec<Vec<Grid<Expr>>>,
    /// `d3[e][f][h][a][b]`, built only when covariant divergences are needed.
    d3: OnceLock<Vec<Vec<Vec<Grid<Expr>>>>>,
    eps: f64,
}

impl MetricGeometry {
    pub fn new(metric: ParaMetric) -> Self {
        Self::with_eps(metric, EPS_INV)
    }

    pub fn with_eps(metric: ParaMetric, eps: f64) -> Self {
        let n = metric.dim();
        let memo_for = |dir: usize| {
            if dir < n {
                DiffMemo::new(dir, false)
            } else {
                DiffMemo::new(dir - n, true)
            }
        };
        let entry_grid: Grid<Expr> = (0..n)
            .map(|a| (0..n).map(|b| metric.entry(a, b).clone()).collect())
            .collect();
        let d1: Vec<Grid<Expr>> = (0..2 * n)
            .map(|e| {
                let mut memo = memo_for(e);
                (0..n)
                    .map(|a| {
                        (0..n)
                            .map(|b| entry_grid[a][b].diff_with(&mut memo))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let d2: Vec<Vec<Grid<Expr>>> = (0..2 * n)
            .map(|e| {
                let mut memo = memo_for(e);
                (0..2 * n)
                    .map(|f| {
                        (0..n)
                            .map(|a| {
                                (0..n).map(|b| d1[f][a][b].diff_with(&mut memo)).collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self {
            metric,
            d1,
            d2,
            d3: OnceLock::new(),
            eps,
        }
    }

    pub fn metric(&self) -> &ParaMetric {
        &self.metric
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    fn d3(&self) -> &Vec<Vec<Vec<Grid<Expr>>>> {
        self.d3.get_or_init(|| {
            let n = self.metric.dim();
            (0..2 * n)
                .map(|e| {
                    let mut memo = if e < n {
                        DiffMemo::new(e, false)
                    } else {
                        DiffMemo::new(e - n, true)
                    };
                    (0..2 * n)
                        .map(|f| {
                            (0..2 * n)
                                .map(|h| {
                                    (0..n)
                                        .map(|a| {
                                            (0..n)
                                                .map(|b| {
                                                    self.d2[f][h][a][b].diff_with(&mut memo)
                                                })
                                                .collect()
                                        })
                                        .collect()
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
    }

    /// Evaluate the metric jet at a point up to the requested derivative
    /// order (1 for connections, 2 for curvature, 3 for divergences).
    pub fn jet_at(&self, p: &EvalPoint, order: usize) -> Result<PointJet> {
        let n = self.metric.dim();
        let d = 2 * n;
        let mut cache = EvalCache::new();
        let mut g = Tensor::<2>::zeros(d);
        for a in 0..n {
            for b in 0..n {
                let v = self.metric.entry(a, b).eval_cached(p, self.eps, &mut cache)?;
                g[[a, b]] = v;
                g[[n + a, n + b]] = v.conj();
            }
        }
        let block = crate::paracomplex::PCMatrix::from_fn(n, n, |a, b| g[[a, b]]);
        let block_inv = block.inverse(self.eps)?;
        let mut ginv = Tensor::<2>::zeros(d);
        for a in 0..n {
            for b in 0..n {
                ginv[[a, b]] = block_inv[(a, b)];
                ginv[[n + a, n + b]] = block_inv[(a, b)].conj();
            }
        }

        let mut dg = Tensor::<3>::zeros(d);
        for e in 0..d {
            for a in 0..n {
                for b in 0..n {
                    let v = self.d1[e][a][b].eval_cached(p, self.eps, &mut cache)?;
                    dg[[e, a, b]] = v;
                    dg[[conj_index(e, n), n + a, n + b]] = v.conj();
                }
            }
        }

        let mut d2g = None;
        if order >= 2 {
            let mut t = Tensor::<4>::zeros(d);
            for e in 0..d {
                for f in 0..d {
                    for a in 0..n {
                        for b in 0..n {
                            let v = self.d2[e][f][a][b].eval_cached(p, self.eps, &mut cache)?;
                            t[[e, f, a, b]] = v;
                            t[[conj_index(e, n), conj_index(f, n), n + a, n + b]] = v.conj();
                        }
                    }
                }
            }
            d2g = Some(t);
        }

        let mut d3g = None;
        if order >= 3 {
            let sym = self.d3();
            let mut t = Tensor::<5>::zeros(d);
            for e in 0..d {
                for f in 0..d {
                    for h in 0..d {
                        for a in 0..n {
                            for b in 0..n {
                                let v =
                                    sym[e][f][h][a][b].eval_cached(p, self.eps, &mut cache)?;
                                t[[e, f, h, a, b]] = v;
                                t[[
                                    conj_index(e, n),
                                    conj_index(f, n),
                                    conj_index(h, n),
                                    n + a,
                                    n + b,
                                ]] = v.conj();
                            }
                        }
                    }
                }
            }
            d3g = Some(t);
        }

        Ok(PointJet {
            n,
            g,
            ginv,
            dg,
            d2g,
            d3g,
        })
    }
}

/// Pointwise metric data over the full `2n` index range: block-diagonal
/// metric, its inverse, and derivatives.
pub struct PointJet {
    n: usize,
    pub g: Tensor<2>,
    pub ginv: Tensor<2>,
    /// `dg[[e, a, b]] = d G_AB / d z^E`.
    pub dg: Tensor<3>,
    d2g: Option<Tensor<4>>,
    d3g: Option<Tensor<5>>,
}

impl PointJet {
    pub fn complex_dim(&self) -> usize {
        self.n
    }

    pub fn full_dim(&self) -> usize {
        2 * self.n
    }

    pub fn d2g(&self) -> &Tensor<4> {
        self.d2g
            .as_ref()
            .expect("jet built without second derivatives")
    }

    pub fn d3g(&self) -> &Tensor<5> {
        self.d3g
            .as_ref()
            .expect("jet built without third derivatives")
    }

    fn t_combo(&self, dd: usize, a: usize, b: usize) -> ParaComplex {
        self.dg[[a, b, dd]] + self.dg[[b, a, dd]] - self.dg[[dd, a, b]]
    }

    fn dt_combo(&self, e: usize, dd: usize, a: usize, b: usize) -> ParaComplex {
        let d2 = self.d2g();
        d2[[e, a, b, dd]] + d2[[e, b, a, dd]] - d2[[e, dd, a, b]]
    }

    fn ddt_combo(&self, e: usize, f: usize, dd: usize, a: usize, b: usize) -> ParaComplex {
        let d3 = self.d3g();
        d3[[e, f, a, b, dd]] + d3[[e, f, b, a, dd]] - d3[[e, f, dd, a, b]]
    }

    /// `d G^CD / d z^E = - G^CP (d G_PQ) G^QD`.
    pub fn dginv(&self) -> Tensor<3> {
        let d = self.full_dim();
        let mut out = Tensor::<3>::zeros(d);
        for e in 0..d {
            for c in 0..d {
                for dd in 0..d {
                    let mut acc = ParaComplex::ZERO;
                    for p in 0..d {
                        for q in 0..d {
                            acc += self.ginv[[c, p]] * self.dg[[e, p, q]] * self.ginv[[q, dd]];
                        }
                    }
                    out[[e, c, dd]] = -acc;
                }
            }
        }
        out
    }

    fn ddginv(&self, dginv: &Tensor<3>) -> Tensor<4> {
        let d = self.full_dim();
        let d2g = self.d2g();
        let mut out = Tensor::<4>::zeros(d);
        for e in 0..d {
            for f in 0..d {
                for c in 0..d {
                    for dd in 0..d {
                        let mut acc = ParaComplex::ZERO;
                        for p in 0..d {
                            for q in 0..d {
                                acc += dginv[[e, c, p]] * self.dg[[f, p, q]] * self.ginv[[q, dd]]
                                    + self.ginv[[c, p]] * d2g[[e, f, p, q]] * self.ginv[[q, dd]]
                                    + self.ginv[[c, p]] * self.dg[[f, p, q]] * dginv[[e, q, dd]];
                            }
                        }
                        out[[e, f, c, dd]] = -acc;
                    }
                }
            }
        }
        out
    }

    /// Full Christoffel symbols
    /// `Gamma^C_AB = (1/2) G^CD (d_A G_BD + d_B G_AD - d_D G_AB)`.
    pub fn christoffel(&self) -> Tensor<3> {
        let d = self.full_dim();
        let mut out = Tensor::<3>::zeros(d);
        for c in 0..d {
            for a in 0..d {
                for b in 0..d {
                    let mut acc = ParaComplex::ZERO;
                    for dd in 0..d {
                        acc += self.ginv[[c, dd]] * self.t_combo(dd, a, b);
                    }
                    out[[c, a, b]] = acc * 0.5;
                }
            }
        }
        out
    }

    /// `d Gamma^C_AB / d z^E` over the full index range.
    pub fn dchristoffel(&self) -> Tensor<4> {
        let d = self.full_dim();
        let dginv = self.dginv();
        let mut out = Tensor::<4>::zeros(d);
        for e in 0..d {
            for c in 0..d {
                for a in 0..d {
                    for b in 0..d {
                        let mut acc = ParaComplex::ZERO;
                        for dd in 0..d {
                            acc += dginv[[e, c, dd]] * self.t_combo(dd, a, b)
                                + self.ginv[[c, dd]] * self.dt_combo(e, dd, a, b);
                        }
                        out[[e, c, a, b]] = acc * 0.5;
                    }
                }
            }
        }
        out
    }

    /// `d^2 Gamma^C_AB / dz^E dz^F`; requires a third-order jet.
    pub fn ddchristoffel(&self) -> Tensor<5> {
        let d = self.full_dim();
        let dginv = self.dginv();
        let ddginv = self.ddginv(&dginv);
        let mut out = Tensor::<5>::zeros(d);
        for e in 0..d {
            for f in 0..d {
                for c in 0..d {
                    for a in 0..d {
                        for b in 0..d {
                            let mut acc = ParaComplex::ZERO;
                            for dd in 0..d {
                                acc += ddginv[[e, f, c, dd]] * self.t_combo(dd, a, b)
                                    + dginv[[e, c, dd]] * self.dt_combo(f, dd, a, b)
                                    + dginv[[f, c, dd]] * self.dt_combo(e, dd, a, b)
                                    + self.ginv[[c, dd]] * self.ddt_combo(e, f, dd, a, b);
                            }
                            out[[e, f, c, a, b]] = acc * 0.5;
                        }
                    }
                }
            }
        }
        out
    }

    /// Fundamental tensor `Phi`: nonvanishing blocks
    /// `Phi^cbar_ab = G^(cbar dbar) d G_ab / d zb^d` and its conjugate.
    pub fn phi(&self) -> Tensor<3> {
        let n = self.n;
        let d = self.full_dim();
        let mut out = Tensor::<3>::zeros(d);
        for c in 0..n {
            for a in 0..n {
                for b in 0..n {
                    let mut acc = ParaComplex::ZERO;
                    for e in 0..n {
                        acc += self.ginv[[n + c, n + e]] * self.dg[[n + e, a, b]];
                    }
                    out[[n + c, a, b]] = acc;
                    out[[c, n + a, n + b]] = acc.conj();
                }
            }
        }
        out
    }

    /// Lowered fundamental tensor `Psi_AB,C`: nonvanishing blocks
    /// `Psi_ab,cbar = d G_ab / d zb^c` and its conjugate.
    pub fn psi(&self) -> Tensor<3> {
        let n = self.n;
        let d = self.full_dim();
        let mut out = Tensor::<3>::zeros(d);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = self.dg[[n + c, a, b]];
                    out[[a, b, n + c]] = v;
                    out[[n + a, n + b, c]] = v.conj();
                }
            }
        }
        out
    }

    /// Characteristic connection coefficients
    /// `L^C_AB = Gamma^C_AB + (1/2) Phi^C_AB - (1/2) G^CD (Psi_DA,B + Psi_DB,A)`.
    pub fn char_connection(&self) -> Tensor<3> {
        let d = self.full_dim();
        let gamma = self.christoffel();
        let phi = self.phi();
        let psi = self.psi();
        let mut out = Tensor::<3>::zeros(d);
        for c in 0..d {
            for a in 0..d {
                for b in 0..d {
                    let mut corr = ParaComplex::ZERO;
                    for dd in 0..d {
                        corr += self.ginv[[c, dd]] * (psi[[dd, a, b]] + psi[[dd, b, a]]);
                    }
                    out[[c, a, b]] = gamma[[c, a, b]] + phi[[c, a, b]] * 0.5 - corr * 0.5;
                }
            }
        }
        out
    }

    /// Derivatives of the characteristic connection. Only the same-type
    /// blocks of `L` are nonzero (`L^c_ab = Gamma^c_ab` and its conjugate),
    /// so the derivative restricts the full Christoffel derivative to them.
    pub fn d_char_connection(&self) -> Tensor<4> {
        let n = self.n;
        let d = self.full_dim();
        let dgamma = self.dchristoffel();
        let mut out = Tensor::<4>::zeros(d);
        for e in 0..d {
            for c in 0..d {
                for a in 0..d {
                    for b in 0..d {
                        if same_type(c, a, b, n) {
                            out[[e, c, a, b]] = dgamma[[e, c, a, b]];
                        }
                    }
                }
            }
        }
        out
    }

    /// Second derivatives of the characteristic connection (same restriction).
    pub fn dd_char_connection(&self) -> Tensor<5> {
        let n = self.n;
        let d = self.full_dim();
        let ddgamma = self.ddchristoffel();
        let mut out = Tensor::<5>::zeros(d);
        for e in 0..d {
            for f in 0..d {
                for c in 0..d {
                    for a in 0..d {
                        for b in 0..d {
                            if same_type(c, a, b, n) {
                                out[[e, f, c, a, b]] = ddgamma[[e, f, c, a, b]];
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Covariant derivative of the metric under connection coefficients `l`:
    /// `D_A G_BC = d_A G_BC - L^F_AB G_FC - L^F_AC G_BF`.
    pub fn cov_metric(&self, l: &Tensor<3>) -> Tensor<3> {
        let d = self.full_dim();
        let mut out = Tensor::<3>::zeros(d);
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let mut acc = self.dg[[a, b, c]];
                    for f in 0..d {
                        acc -= l[[f, a, b]] * self.g[[f, c]] + l[[f, a, c]] * self.g[[b, f]];
                    }
                    out[[a, b, c]] = acc;
                }
            }
        }
        out
    }
}

fn same_type(c: usize, a: usize, b: usize, n: usize) -> bool {
    let (cb, ab, bb) = (is_barred(c, n), is_barred(a, n), is_barred(b, n));
    cb == ab && ab == bb
}

/// Residuals of the three characteristic-connection axioms plus the
/// corollary form `D_A G_BC = Psi_BC,A`, maximised over sample points.
#[derive(Clone, Copy, Debug, Default)]
pub struct AxiomReport {
    /// (i) symmetry `L^C_AB = L^C_BA`.
    pub symmetry: f64,
    /// (ii) almost para-complex: `L^cbar_ab = L^c_(a bbar) = 0`.
    pub almost_para_complex: f64,
    /// (iii) `D_a G_bc = 0` along unbarred directions.
    pub metric_compatibility: f64,
    /// Corollary: `D_A G_BC - Psi_BC,A = 0` over all blocks.
    pub covariant_equals_psi: f64,
}

impl AxiomReport {
    pub fn max_violation(&self) -> f64 {
        self.symmetry
            .max(self.almost_para_complex)
            .max(self.metric_compatibility)
            .max(self.covariant_equals_psi)
    }

    pub fn pass(&self, tol: f64) -> bool {
        self.max_violation() < tol
    }

    fn merge(&mut self, other: AxiomReport) {
        self.symmetry = self.symmetry.max(other.symmetry);
        self.almost_para_complex = self.almost_para_complex.max(other.almost_para_complex);
        self.metric_compatibility = self.metric_compatibility.max(other.metric_compatibility);
        self.covariant_equals_psi = self.covariant_equals_psi.max(other.covariant_equals_psi);
    }
}

/// Evaluate the axiom residuals for given connection coefficients at one
/// point. Exposed separately so perturbed connections can be probed.
pub fn axiom_residuals(jet: &PointJet, l: &Tensor<3>) -> AxiomReport {
    let n = jet.complex_dim();
    let d = jet.full_dim();
    let mut report = AxiomReport::default();
    for c in 0..d {
        for a in 0..d {
            for b in 0..d {
                report.symmetry = report.symmetry.max((l[[c, a, b]] - l[[c, b, a]]).norm());
            }
        }
    }
    for c in 0..n {
        for a in 0..n {
            for b in 0..n {
                report.almost_para_complex = report
                    .almost_para_complex
                    .max(l[[n + c, a, b]].norm())
                    .max(l[[c, a, n + b]].norm());
            }
        }
    }
    let cov = jet.cov_metric(l);
    let psi = jet.psi();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                report.metric_compatibility =
                    report.metric_compatibility.max(cov[[a, b, c]].norm());
            }
        }
    }
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                report.covariant_equals_psi = report
                    .covariant_equals_psi
                    .max((cov[[a, b, c]] - psi[[b, c, a]]).norm());
            }
        }
    }
    report
}

/// Check the characteristic-connection axioms over the sample points.
pub fn verify_characteristic_axioms(
    geom: &MetricGeometry,
    samples: &[EvalPoint],
) -> Result<AxiomReport> {
    let mut report = AxiomReport::default();
    for p in samples {
        let jet = geom.jet_at(p, 1)?;
        let l = jet.char_connection();
        report.merge(axiom_residuals(&jet, &l));
    }
    Ok(report)
}

/// True iff all `d L^c_ab / d zb^e` vanish below `tol` at every sample, i.e.
/// the characteristic connection is para-holomorphic.
pub fn is_paraholomorphic_connection(
    geom: &MetricGeometry,
    samples: &[EvalPoint],
    tol: f64,
) -> Result<bool> {
    let n = geom.metric().dim();
    for p in samples {
        let jet = geom.jet_at(p, 2)?;
        let dl = jet.d_char_connection();
        for e in 0..n {
            for c in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        if dl[[n + e, c, a, b]].norm() >= tol {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}
