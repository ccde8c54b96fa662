//! Para-complex Riemannian metrics in adapted coordinates and their real
//! Norden realizations.
//!
//! Only the unbarred block `G_ab` is user-supplied; the barred block is the
//! conjugate expression and the mixed blocks are identically zero, so the
//! defining block conditions hold by construction. Nondegeneracy is checked
//! pointwise at declared sample points only.

use std::sync::OnceLock;

use nalgebra::DMatrix;

use crate::expr::{is_paraholomorphic_expr, DiffMemo, EvalCache, EvalPoint, Expr};
use crate::paracomplex::PCMatrix;
use crate::{default_samples, Error, Result, EPS_INV};

/// A para-complex metric: an `n x n` symmetric matrix of expressions in
/// `z^a`, `zb^a`. The barred block is derived by conjugation.
#[derive(Clone, Debug)]
pub struct ParaMetric {
    n: usize,
    entries: Vec<Vec<Expr>>,
    barred: Vec<Vec<Expr>>,
}

impl ParaMetric {
    /// Build a metric from a full `n x n` expression matrix. Symmetry of the
    /// input is checked by evaluation at `probes`; the upper triangle wins.
    pub fn with_probes(n: usize, entries: Vec<Vec<Expr>>, probes: &[EvalPoint]) -> Result<Self> {
        assert_eq!(entries.len(), n, "expected {n} rows");
        for row in &entries {
            assert_eq!(row.len(), n, "expected {n} columns");
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if entries[a][b] == entries[b][a] {
                    continue;
                }
                for p in probes {
                    let upper = entries[a][b].eval(p, EPS_INV);
                    let lower = entries[b][a].eval(p, EPS_INV);
                    if let (Ok(u), Ok(l)) = (upper, lower) {
                        let violation = (u - l).norm();
                        if violation > 1e-10 {
                            return Err(Error::AsymmetricInput {
                                row: a + 1,
                                col: b + 1,
                                violation,
                            });
                        }
                    }
                }
            }
        }
        let mirrored: Vec<Vec<Expr>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| entries[a.min(b)][a.max(b)].clone())
                    .collect()
            })
            .collect();
        let barred = mirrored
            .iter()
            .map(|row| row.iter().map(|e| e.conj_expr()).collect())
            .collect();
        Ok(Self {
            n,
            entries: mirrored,
            barred,
        })
    }

    /// [`with_probes`](Self::with_probes) using the default sample grid.
    pub fn new(n: usize, entries: Vec<Vec<Expr>>) -> Result<Self> {
        let probes = default_samples(n);
        Self::with_probes(n, entries, &probes)
    }

    /// Parse a matrix of expression strings.
    pub fn from_strings(n: usize, entries: &[Vec<String>]) -> Result<Self> {
        let exprs = entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| crate::expr::parse_expr(s, n))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, exprs)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Unbarred block entry `G_ab` (0-based).
    pub fn entry(&self, a: usize, b: usize) -> &Expr {
        &self.entries[a][b]
    }

    /// Barred block entry `G_(a-bar)(b-bar) = conj(G_ab)` (0-based).
    pub fn barred_entry(&self, a: usize, b: usize) -> &Expr {
        &self.barred[a][b]
    }

    /// Evaluate the unbarred block at a point.
    pub fn block_at(&self, p: &EvalPoint) -> Result<PCMatrix> {
        let mut m = PCMatrix::zeros(self.n, self.n);
        for a in 0..self.n {
            for b in 0..self.n {
                m[(a, b)] = self.entries[a][b].eval(p, EPS_INV)?;
            }
        }
        Ok(m)
    }

    /// Inverse of the unbarred block at a point; errors signal degeneracy.
    pub fn inverse_block_at(&self, p: &EvalPoint, eps: f64) -> Result<PCMatrix> {
        self.block_at(p)?.inverse(eps)
    }

    /// True iff every component expression is para-holomorphic on `samples`.
    pub fn is_paraholomorphic(&self, samples: &[EvalPoint], tol: f64) -> Result<bool> {
        for a in 0..self.n {
            for b in a..self.n {
                if !is_paraholomorphic_expr(&self.entries[a][b], samples, tol, EPS_INV)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The twin metric with unbarred block `e * G_ab` (the barred block
    /// `-e * conj(G_ab)` again follows by conjugation).
    pub fn twin(&self) -> ParaMetric {
        let entries: Vec<Vec<Expr>> = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| Expr::mul(Expr::unit_e(), e.clone()))
                    .collect()
            })
            .collect();
        let barred = entries
            .iter()
            .map(|row: &Vec<Expr>| row.iter().map(|e| e.conj_expr()).collect())
            .collect();
        ParaMetric {
            n: self.n,
            entries,
            barred,
        }
    }

    /// Realize as a real Norden metric on the underlying `2n`-dimensional
    /// manifold: blocks `[[2 Re G, 2 Im G], [2 Im G, 2 Re G]]` in the real
    /// basis `(dx^1..dx^n, dy^1..dy^n)`, kept as expressions in `z`, `zb`.
    pub fn realize(&self) -> RealizedMetric {
        let n = self.n;
        let two_re = |e: &Expr| Expr::add(e.clone(), e.conj_expr());
        let two_im = |e: &Expr| Expr::mul(Expr::unit_e(), Expr::sub(e.clone(), e.conj_expr()));
        let mut entries = vec![vec![Expr::zero(); 2 * n]; 2 * n];
        for a in 0..n {
            for b in 0..n {
                let g = &self.entries[a][b];
                entries[a][b] = two_re(g);
                entries[n + a][n + b] = two_re(g);
                entries[a][n + b] = two_im(g);
                entries[n + a][b] = two_im(g);
            }
        }
        RealizedMetric::from_entries(n, entries)
    }
}

/// The structure operator in adapted coordinates: `I dx^a = dy^a` and
/// `I dy^a = dx^a` on tangent indices; `I^2 = id`.
#[derive(Clone, Copy, Debug)]
pub struct IOperator {
    n: usize,
}

impl IOperator {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    /// Image of the `j`-th real basis direction (0-based, `x` block first).
    pub fn swap(&self, j: usize) -> usize {
        (j + self.n) % (2 * self.n)
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(2 * self.n, 2 * self.n, |i, j| {
            if i == self.swap(j) {
                1.0
            } else {
                0.0
            }
        })
    }
}

/// A real metric on the `2n`-dimensional realization, stored as a `2n x 2n`
/// matrix of expressions in `z`, `zb` that are real-valued at every point.
#[derive(Clone, Debug)]
pub struct RealizedMetric {
    n: usize,
    entries: Vec<Vec<Expr>>,
    d1: OnceLock<Vec<Vec<Vec<Expr>>>>,
    d2: OnceLock<Vec<Vec<Vec<Vec<Expr>>>>>,
}

impl RealizedMetric {
    pub fn from_entries(n: usize, entries: Vec<Vec<Expr>>) -> Self {
        assert_eq!(entries.len(), 2 * n);
        for row in &entries {
            assert_eq!(row.len(), 2 * n);
        }
        Self {
            n,
            entries,
            d1: OnceLock::new(),
            d2: OnceLock::new(),
        }
    }

    pub fn complex_dim(&self) -> usize {
        self.n
    }

    pub fn real_dim(&self) -> usize {
        2 * self.n
    }

    pub fn entry(&self, j: usize, k: usize) -> &Expr {
        &self.entries[j][k]
    }

    /// Symbolic derivative along the real direction `l` (0-based; `l < n`
    /// means `x^(l+1)`, otherwise `y^(l-n+1)`), with batch memoization:
    /// `d/dx^a = d/dz^a + d/dzb^a` and `d/dy^a = e (d/dz^a - d/dzb^a)`.
    fn d_real_batch(&self, e: &Expr, l: usize, mz: &mut DiffMemo, mb: &mut DiffMemo) -> Expr {
        let dz = e.diff_with(mz);
        let db = e.diff_with(mb);
        if l < self.n {
            Expr::add(dz, db)
        } else {
            Expr::mul(Expr::unit_e(), Expr::sub(dz, db))
        }
    }

    fn real_dir_memos(&self, l: usize) -> (DiffMemo, DiffMemo) {
        let a = if l < self.n { l } else { l - self.n };
        (DiffMemo::new(a, false), DiffMemo::new(a, true))
    }

    fn d1(&self) -> &Vec<Vec<Vec<Expr>>> {
        self.d1.get_or_init(|| {
            let d = self.real_dim();
            (0..d)
                .map(|l| {
                    let (mut mz, mut mb) = self.real_dir_memos(l);
                    (0..d)
                        .map(|j| {
                            (0..d)
                                .map(|k| {
                                    self.d_real_batch(&self.entries[j][k], l, &mut mz, &mut mb)
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
    }

    fn d2(&self) -> &Vec<Vec<Vec<Vec<Expr>>>> {
        self.d2.get_or_init(|| {
            let d = self.real_dim();
            let d1 = self.d1();
            (0..d)
                .map(|l| {
                    let (mut mz, mut mb) = self.real_dir_memos(l);
                    (0..d)
                        .map(|m| {
                            (0..d)
                                .map(|j| {
                                    (0..d)
                                        .map(|k| {
                                            self.d_real_batch(&d1[m][j][k], l, &mut mz, &mut mb)
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

    fn eval_real(&self, e: &Expr, p: &EvalPoint) -> Result<f64> {
        let v = e.eval(p, EPS_INV)?;
        debug_assert!(
            v.im.abs() < 1e-9 * (1.0 + v.re.abs()),
            "realized entry not real: {v}"
        );
        Ok(v.re)
    }

    /// Metric matrix at a point.
    pub fn value_at(&self, p: &EvalPoint) -> Result<DMatrix<f64>> {
        let d = self.real_dim();
        let mut g = DMatrix::zeros(d, d);
        for j in 0..d {
            for k in 0..d {
                g[(j, k)] = self.eval_real(&self.entries[j][k], p)?;
            }
        }
        Ok(g)
    }

    /// First derivatives at a point: `out[l][j][k] = d g_jk / d u^l`.
    pub fn d1_at(&self, p: &EvalPoint) -> Result<Vec<DMatrix<f64>>> {
        let d = self.real_dim();
        let d1 = self.d1();
        (0..d)
            .map(|l| {
                let mut m = DMatrix::zeros(d, d);
                for j in 0..d {
                    for k in 0..d {
                        m[(j, k)] = self.eval_real(&d1[l][j][k], p)?;
                    }
                }
                Ok(m)
            })
            .collect()
    }

    /// Second derivatives at a point: `out[l][m][j][k]`.
    pub fn d2_at(&self, p: &EvalPoint) -> Result<Vec<Vec<DMatrix<f64>>>> {
        let d = self.real_dim();
        let d2 = self.d2();
        (0..d)
            .map(|l| {
                (0..d)
                    .map(|m| {
                        let mut mat = DMatrix::zeros(d, d);
                        for j in 0..d {
                            for k in 0..d {
                                mat[(j, k)] = self.eval_real(&d2[l][m][j][k], p)?;
                            }
                        }
                        Ok(mat)
                    })
                    .collect()
            })
            .collect()
    }

    /// Value plus first and second derivatives at a point, sharing one
    /// evaluation cache across all entries.
    #[allow(clippy::type_complexity)]
    pub fn jet_at(
        &self,
        p: &EvalPoint,
    ) -> Result<(DMatrix<f64>, Vec<DMatrix<f64>>, Vec<Vec<DMatrix<f64>>>)> {
        let d = self.real_dim();
        let d1 = self.d1();
        let d2 = self.d2();
        let mut cache = EvalCache::new();
        let mut take = |e: &Expr| -> Result<f64> {
            let v = e.eval_cached(p, EPS_INV, &mut cache)?;
            debug_assert!(
                v.im.abs() < 1e-9 * (1.0 + v.re.abs()),
                "realized entry not real: {v}"
            );
            Ok(v.re)
        };
        let mut g = DMatrix::zeros(d, d);
        for j in 0..d {
            for k in 0..d {
                g[(j, k)] = take(&self.entries[j][k])?;
            }
        }
        let mut dg = vec![DMatrix::zeros(d, d); d];
        for l in 0..d {
            for j in 0..d {
                for k in 0..d {
                    dg[l][(j, k)] = take(&d1[l][j][k])?;
                }
            }
        }
        let mut ddg = vec![vec![DMatrix::zeros(d, d); d]; d];
        for l in 0..d {
            for m in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        ddg[l][m][(j, k)] = take(&d2[l][m][j][k])?;
                    }
                }
            }
        }
        Ok((g, dg, ddg))
    }
}

/// Report from [`check_norden`].
#[derive(Clone, Copy, Debug)]
pub struct NordenReport {
    /// Max violation of `g(IX, IY) = g(X, Y)` over basis pairs and samples.
    pub invariance: f64,
    /// Max violation of `g(IX, Y) = g(X, IY)`.
    pub purity: f64,
}

impl NordenReport {
    pub fn max_violation(&self) -> f64 {
        self.invariance.max(self.purity)
    }
}

/// Check both Norden identities on basis vectors at the sample points.
pub fn check_norden(g: &RealizedMetric, samples: &[EvalPoint]) -> Result<NordenReport> {
    let d = g.real_dim();
    let iop = IOperator::new(g.complex_dim());
    let mut invariance = 0.0f64;
    let mut purity = 0.0f64;
    for p in samples {
        let gm = g.value_at(p)?;
        for j in 0..d {
            for k in 0..d {
                invariance = invariance.max((gm[(iop.swap(j), iop.swap(k))] - gm[(j, k)]).abs());
                purity = purity.max((gm[(iop.swap(j), k)] - gm[(j, iop.swap(k))]).abs());
            }
        }
    }
    Ok(NordenReport { invariance, purity })
}

/// Reassemble a para-complex metric from a Norden metric:
/// `G_ab = (g(dx^a, dx^b) + e g(dx^a, dy^b)) / 2`. Inverse of
/// [`ParaMetric::realize`]. Requires the Norden identities to hold at the
/// probe points within `tol`.
pub fn complexify_metric(
    g: &RealizedMetric,
    probes: &[EvalPoint],
    tol: f64,
) -> Result<ParaMetric> {
    for (idx, p) in probes.iter().enumerate() {
        let report = check_norden(g, std::slice::from_ref(p))?;
        if report.max_violation() > tol {
            return Err(Error::NotNorden {
                point: idx,
                violation: report.max_violation(),
            });
        }
    }
    let n = g.complex_dim();
    let half = Expr::real(0.5);
    let entries: Vec<Vec<Expr>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    Expr::mul(
                        half.clone(),
                        Expr::add(
                            g.entry(a, b).clone(),
                            Expr::mul(Expr::unit_e(), g.entry(a, n + b).clone()),
                        ),
                    )
                })
                .collect()
        })
        .collect();
    ParaMetric::with_probes(n, entries, probes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::paracomplex::ParaComplex;

    fn flat(n: usize) -> ParaMetric {
        let entries = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| if a == b { Expr::one() } else { Expr::zero() })
                    .collect()
            })
            .collect();
        ParaMetric::new(n, entries).unwrap()
    }

    #[test]
    fn build_flat_metric() {
        let m = flat(2);
        assert_eq!(m.dim(), 2);
        let p = EvalPoint::new(vec![ParaComplex::new(0.3, 0.1); 2]);
        let g = m.block_at(&p).unwrap();
        assert_eq!(g[(0, 0)], ParaComplex::ONE);
        assert_eq!(g[(0, 1)], ParaComplex::ZERO);
    }

    #[test]
    fn build_variable_metric() {
        let m = ParaMetric::from_strings(1, &[vec!["1+z1".to_string()]]).unwrap();
        let p = EvalPoint::new(vec![ParaComplex::new(1.0, 0.0)]);
        assert!(m.inverse_block_at(&p, EPS_INV).is_ok());
    }

    #[test]
    fn asymmetric_input_rejected() {
        let entries = vec![
            vec![Expr::one(), parse_expr("z1", 2).unwrap()],
            vec![parse_expr("z2", 2).unwrap(), Expr::one()],
        ];
        assert!(matches!(
            ParaMetric::new(2, entries),
            Err(Error::AsymmetricInput { .. })
        ));
    }

    #[test]
    fn paraholomorphy_of_metric() {
        let samples = crate::default_samples(1);
        let holo = ParaMetric::from_strings(1, &[vec!["z1^2".to_string()]]).unwrap();
        assert!(holo.is_paraholomorphic(&samples, 1e-9).unwrap());
        let non = ParaMetric::from_strings(1, &[vec!["zb1".to_string()]]).unwrap();
        assert!(!non.is_paraholomorphic(&samples, 1e-9).unwrap());
        assert!(flat(2)
            .is_paraholomorphic(&crate::default_samples(2), 1e-9)
            .unwrap());
    }

    #[test]
    fn twin_blocks() {
        let m = ParaMetric::from_strings(1, &[vec!["z1".to_string()]]).unwrap();
        let t = m.twin();
        let p = EvalPoint::new(vec![ParaComplex::new(0.4, 0.1)]);
        let z = p.coord(0);
        // unbarred block of the twin is e*G
        assert!((t.entry(0, 0).eval(&p, EPS_INV).unwrap() - ParaComplex::E * z).norm() < 1e-15);
        // barred block is -e*conj(G)
        let barred = t.barred_entry(0, 0).eval(&p, EPS_INV).unwrap();
        assert!((barred - (-ParaComplex::E) * z.conj()).norm() < 1e-15);
        // twin(twin) restores the unbarred block
        let tt = t.twin();
        assert!(
            (tt.entry(0, 0).eval(&p, EPS_INV).unwrap() - m.entry(0, 0).eval(&p, EPS_INV).unwrap())
                .norm()
                < 1e-15
        );
    }

    #[test]
    fn realize_constant_metric() {
        let m = flat(1);
        let g = m.realize();
        let p = EvalPoint::new(vec![ParaComplex::new(0.3, 0.1)]);
        let gm = g.value_at(&p).unwrap();
        assert_eq!(gm, DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 2.0]));
    }

    #[test]
    fn realize_linear_metric() {
        // G_11 = z1 realizes to [[2x, 2y], [2y, 2x]]
        let m = ParaMetric::from_strings(1, &[vec!["z1".to_string()]]).unwrap();
        let g = m.realize();
        let p = EvalPoint::new(vec![ParaComplex::new(0.4, 0.1)]);
        let gm = g.value_at(&p).unwrap();
        let expect = DMatrix::from_row_slice(2, 2, &[0.8, 0.2, 0.2, 0.8]);
        assert!((gm - expect).abs().max() < 1e-14);
    }

    #[test]
    fn realize_twin_swaps_blocks() {
        let m = flat(1);
        let h = m.twin().realize();
        let p = EvalPoint::new(vec![ParaComplex::new(0.3, 0.1)]);
        let hm = h.value_at(&p).unwrap();
        let expect = DMatrix::from_row_slice(2, 2, &[0.0, 2.0, 2.0, 0.0]);
        assert!((hm - expect).abs().max() < 1e-14);
    }

    #[test]
    fn norden_check_flags_bad_metric() {
        let good = flat(1).realize();
        let samples = crate::default_samples(1);
        assert!(check_norden(&good, &samples).unwrap().max_violation() < 1e-14);

        let bad = RealizedMetric::from_entries(
            1,
            vec![
                vec![Expr::one(), Expr::zero()],
                vec![Expr::zero(), Expr::real(2.0)],
            ],
        );
        let report = check_norden(&bad, &samples).unwrap();
        assert!((report.invariance - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complexify_round_trip() {
        let samples = crate::default_samples(1);
        for src in ["1", "z1", "1+z1^2", "zb1"] {
            let m = ParaMetric::from_strings(1, &[vec![src.to_string()]]).unwrap();
            let back = complexify_metric(&m.realize(), &samples, 1e-10).unwrap();
            for p in &samples {
                let a = m.entry(0, 0).eval(p, EPS_INV).unwrap();
                let b = back.entry(0, 0).eval(p, EPS_INV).unwrap();
                assert!((a - b).norm() < 1e-10, "round trip failed for {src}");
            }
        }
    }

    #[test]
    fn complexify_rejects_non_norden() {
        let bad = RealizedMetric::from_entries(
            1,
            vec![
                vec![Expr::one(), Expr::zero()],
                vec![Expr::zero(), Expr::real(2.0)],
            ],
        );
        let samples = crate::default_samples(1);
        assert!(matches!(
            complexify_metric(&bad, &samples, 1e-10),
            Err(Error::NotNorden { .. })
        ));
    }
}
