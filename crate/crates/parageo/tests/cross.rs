//! Cross-module checks: the generic metric pipeline against the closed-form
//! invariant geometry of Lie groups, and real-oracle identities that tie the
//! para-complex and real pictures together.

use std::sync::OnceLock;

use parageo::connection::MetricGeometry;
use parageo::curvature::{
    classify_characteristic_einstein, curvature_from_connection, curvature_from_jet,
    divergence_einstein, sectional_curvature, RealGeometry,
};
use parageo::expr::EvalPoint;
use parageo::lie::{
    bch_lambda_series, d_lie_connection_at, invariant_metric, lie_connection_at,
    lie_curvature_at, lie_sectional_at, shell_points, sl2_constants, validate_structure,
    LambdaFrame, LieAlgebraData,
};
use parageo::metric::ParaMetric;
use parageo::paracomplex::ParaComplex;
use parageo::tensor::Tensor;
use parageo::EPS_INV;

fn sl2() -> &'static LieAlgebraData {
    static ALG: OnceLock<LieAlgebraData> = OnceLock::new();
    ALG.get_or_init(|| validate_structure(3, sl2_constants(ParaComplex::ONE)).unwrap())
}

fn sl2_frame() -> &'static LambdaFrame {
    static FRAME: OnceLock<LambdaFrame> = OnceLock::new();
    FRAME.get_or_init(|| bch_lambda_series(sl2(), 6).unwrap())
}

fn sl2_geometry() -> &'static MetricGeometry {
    static GEOM: OnceLock<MetricGeometry> = OnceLock::new();
    GEOM.get_or_init(|| MetricGeometry::new(invariant_metric(sl2(), sl2_frame()).unwrap()))
}

fn origin(m: usize) -> EvalPoint {
    EvalPoint::new(vec![ParaComplex::ZERO; m])
}

#[test]
fn generic_engine_matches_invariant_curvature_on_series_frames() {
    // The curvature engine applied to the invariant connection reproduces
    // the closed-form invariant curvature within series tolerance.
    let alg = sl2();
    let frame = sl2_frame();
    for p in shell_points(3, 1e-2) {
        let gamma = lie_connection_at(frame, &p, EPS_INV).unwrap();
        let dgamma = d_lie_connection_at(frame, &p, EPS_INV).unwrap();
        let engine = curvature_from_connection(&gamma, &dgamma);
        let closed = lie_curvature_at(alg, frame, &p, EPS_INV).unwrap();
        let diff = engine.max_diff(&closed);
        assert!(diff < 1e-8, "engine vs closed form: {diff:.3e}");
    }
}

#[test]
fn metric_pipeline_ricci_is_quarter_killing_at_identity() {
    // Running the full characteristic-connection pipeline on the invariant
    // metric reproduces Ric_ca = -(1/4) C_ca at the identity.
    let geom = sl2_geometry();
    let jet = geom.jet_at(&origin(3), 2).unwrap();
    let curv = curvature_from_jet(&jet);
    for c in 0..3 {
        for a in 0..3 {
            let expect = sl2().killing()[(c, a)] * -0.25;
            assert!(
                (curv.ricci[[c, a]] - expect).norm() < 1e-9,
                "Ric[{c}{a}] = {} vs {}",
                curv.ricci[[c, a]],
                expect
            );
            // mixed block vanishes (the metric is para-holomorphic)
            assert!(curv.ricci[[c, 3 + a]].norm() < 1e-9);
        }
    }
}

#[test]
fn scalar_and_einstein_tensor_on_the_invariant_metric() {
    // rho = G^ca Ric_ca + conj = 2 * (-3/4) = -3/2, and with lambda = -1/4
    // in n = 3 the Einstein tensor is E_ab = (lambda - rho/2) G_ab = G_ab/2.
    let geom = sl2_geometry();
    let jet = geom.jet_at(&origin(3), 2).unwrap();
    let curv = curvature_from_jet(&jet);
    let rho = parageo::curvature::scalar_curvature(&curv, &jet, 1e-9).unwrap();
    assert!((rho - ParaComplex::new(-1.5, 0.0)).norm() < 1e-8, "rho = {rho}");
    let et = parageo::curvature::einstein_tensor(&curv, &jet, 1.0, 1e-9).unwrap();
    assert!(!et.vacuum);
    for a in 0..3 {
        for b in 0..3 {
            let expect = jet.g[[a, b]] * 0.5;
            assert!(
                (et.e_lower[[a, b]] - expect).norm() < 1e-8,
                "E[{a}{b}] = {} vs {}",
                et.e_lower[[a, b]],
                expect
            );
        }
    }
}

#[test]
fn sectional_curvature_cross_oracle() {
    // The characteristic sectional curvature of the invariant metric agrees
    // with the closed-form invariant sectional curvature.
    let geom = sl2_geometry();
    let alg = sl2();
    let frame = sl2_frame();
    let p = origin(3);
    let jet = geom.jet_at(&p, 2).unwrap();
    let curv = curvature_from_jet(&jet);
    let planes = [
        (
            [ParaComplex::ONE, ParaComplex::ZERO, ParaComplex::ZERO],
            [ParaComplex::ZERO, ParaComplex::ONE, ParaComplex::new(0.5, 0.1)],
        ),
        (
            [ParaComplex::new(0.3, 0.1), ParaComplex::ONE, ParaComplex::ZERO],
            [ParaComplex::ZERO, ParaComplex::new(0.2, -0.4), ParaComplex::ONE],
        ),
        (
            [ParaComplex::ONE, ParaComplex::new(1.0, 0.2), ParaComplex::new(-0.3, 0.0)],
            [ParaComplex::new(0.1, 0.1), ParaComplex::ZERO, ParaComplex::ONE],
        ),
    ];
    for (z, w) in planes {
        let via_metric = sectional_curvature(&curv, &jet, &z, &w, EPS_INV).unwrap();
        let via_group = lie_sectional_at(alg, frame, &z, &w, &p, EPS_INV).unwrap();
        assert!(
            (via_metric - via_group).norm() < 1e-8,
            "sectional mismatch: {via_metric} vs {via_group}"
        );
    }
}

#[test]
fn flat_sectional_curvature_is_constantly_zero() {
    // Constancy probe on the model of constant para-holomorphic sectional
    // curvature: the flat metric gives zero on every nondegenerate plane.
    let entries: Vec<Vec<String>> = (0..3)
        .map(|a| {
            (0..3)
                .map(|b| if a == b { "1" } else { "0" }.to_string())
                .collect()
        })
        .collect();
    let geom = MetricGeometry::new(ParaMetric::from_strings(3, &entries).unwrap());
    let p = EvalPoint::new(vec![
        ParaComplex::new(0.3, 0.1),
        ParaComplex::new(0.7, -0.2),
        ParaComplex::new(0.4, 0.2),
    ]);
    let jet = geom.jet_at(&p, 2).unwrap();
    let curv = curvature_from_jet(&jet);
    let vectors = [
        [ParaComplex::ONE, ParaComplex::ZERO, ParaComplex::new(0.2, 0.1)],
        [ParaComplex::ZERO, ParaComplex::ONE, ParaComplex::new(-0.4, 0.3)],
        [ParaComplex::new(0.5, 0.0), ParaComplex::new(0.1, 0.2), ParaComplex::ONE],
    ];
    for i in 0..vectors.len() {
        for j in 0..vectors.len() {
            if i == j {
                continue;
            }
            let k = sectional_curvature(&curv, &jet, &vectors[i], &vectors[j], EPS_INV).unwrap();
            assert!(k.norm() < 1e-12);
        }
    }
}

#[test]
fn divergence_vanishes_on_the_invariant_metric() {
    let geom = sl2_geometry();
    let div = divergence_einstein(geom, &shell_points(3, 1e-2)).unwrap();
    assert!(div < 1e-8, "div E = {div:.3e}");
}

#[test]
fn invariant_metric_is_characteristic_einstein_with_constant_f() {
    let geom = sl2_geometry();
    let report =
        classify_characteristic_einstein(geom, &shell_points(3, 1e-2), 1e-6).unwrap();
    assert!(report.is_characteristic_einstein, "{report:?}");
    for f in &report.f_values {
        assert!((*f - ParaComplex::new(-0.25, 0.0)).norm() < 1e-7, "f = {f}");
    }
    // n = 3: the anti-para-holomorphy probe of rho0 runs and stays small
    let anti = report.anti_paraholomorphy_residual.expect("probe must run");
    assert!(anti < 1e-5, "anti-para-holomorphy residual {anti:.3e}");
}

#[test]
fn hatted_real_connection_matches_para_complex_christoffel() {
    // For para-holomorphic metrics the hatted real Levi-Civita action
    // reproduces the para-complex Christoffel coefficients:
    // Gamma-hat^c_ab = realGamma^(x^c)_(x^a x^b) + e realGamma^(y^c)_(x^a x^b).
    for entries in [vec![vec!["2+z1"]], vec![vec!["exp(z1)"]]] {
        let rows: Vec<Vec<String>> = entries
            .iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect();
        let n = rows.len();
        let geom = MetricGeometry::new(ParaMetric::from_strings(n, &rows).unwrap());
        let realized = geom.metric().realize();
        for p in parageo::default_samples(n) {
            let jet = geom.jet_at(&p, 1).unwrap();
            let gamma = jet.christoffel();
            let real = RealGeometry::at(&realized, &p).unwrap();
            for c in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        let hatted = ParaComplex::new(real.gamma[c][a][b], real.gamma[n + c][a][b]);
                        assert!(
                            (gamma[[c, a, b]] - hatted).norm() < 1e-8,
                            "({c},{a},{b}): {} vs {}",
                            gamma[[c, a, b]],
                            hatted
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn phi_anticommutes_with_structure_operator() {
    // Componentwise form of Phi(I Z1, Z2) = -I Phi(Z1, Z2): applying the
    // eigenvalue (+e unbarred, -e barred) to one input flips the sign and
    // applies I to the output index.
    let geom = MetricGeometry::new(
        ParaMetric::from_strings(1, &[vec!["1+z1*zb1".to_string()]]).unwrap(),
    );
    let n = 1;
    for p in parageo::default_samples(n) {
        let jet = geom.jet_at(&p, 1).unwrap();
        let phi = jet.phi();
        let d = 2 * n;
        let eigen = |idx: usize| {
            if idx < n {
                ParaComplex::E
            } else {
                -ParaComplex::E
            }
        };
        for c in 0..d {
            for a in 0..d {
                for b in 0..d {
                    // symmetry in the lower pair
                    assert!((phi[[c, a, b]] - phi[[c, b, a]]).norm() < 1e-12);
                    // I-anticommutation: e_A Phi^C_AB = -e_C Phi^C_AB
                    let lhs = eigen(a) * phi[[c, a, b]];
                    let rhs = -(eigen(c) * phi[[c, a, b]]);
                    assert!((lhs - rhs).norm() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn tensor_block_invariance_of_the_full_metric() {
    // G(I Z1, I Z2) = G(Z1, Z2) on basis vectors of the full block metric.
    let geom = MetricGeometry::new(
        ParaMetric::from_strings(1, &[vec!["z1+zb1^2".to_string()]]).unwrap(),
    );
    let n = 1;
    for p in parageo::default_samples(n) {
        let jet = geom.jet_at(&p, 1).unwrap();
        let eigen = |idx: usize| {
            if idx < n {
                ParaComplex::E
            } else {
                -ParaComplex::E
            }
        };
        for a in 0..2 * n {
            for b in 0..2 * n {
                let lhs = eigen(a) * eigen(b) * jet.g[[a, b]];
                assert!((lhs - jet.g[[a, b]]).norm() < 1e-13);
            }
        }
    }
}

#[test]
fn connection_derivatives_match_finite_differences() {
    // The exact jet-based derivatives of the characteristic connection (the
    // ingredients of curvature and divergence) against central differences.
    let geom = MetricGeometry::new(
        ParaMetric::from_strings(2, &[
            vec!["1+z1*zb1".to_string(), "0.3*z2".to_string()],
            vec!["0.3*z2".to_string(), "2+zb2".to_string()],
        ])
        .unwrap(),
    );
    let p = EvalPoint::new(vec![ParaComplex::new(0.3, 0.1), ParaComplex::new(0.7, -0.2)]);
    let h = 1e-5;
    let jet = geom.jet_at(&p, 2).unwrap();
    let dl = jet.d_char_connection();
    let d = 4usize;

    // displace the point along the real/imaginary parts of each coordinate
    // and recombine into holomorphic/antiholomorphic directions
    let shift = |a: usize, dre: f64, dim: f64| {
        let mut coords = p.coords().to_vec();
        coords[a] += ParaComplex::new(dre, dim);
        EvalPoint::new(coords)
    };
    for a in 0..2 {
        let lx_p = geom.jet_at(&shift(a, h, 0.0), 1).unwrap().char_connection();
        let lx_m = geom.jet_at(&shift(a, -h, 0.0), 1).unwrap().char_connection();
        let ly_p = geom.jet_at(&shift(a, 0.0, h), 1).unwrap().char_connection();
        let ly_m = geom.jet_at(&shift(a, 0.0, -h), 1).unwrap().char_connection();
        for c in 0..d {
            for aa in 0..d {
                for b in 0..d {
                    let dx = (lx_p[[c, aa, b]] - lx_m[[c, aa, b]]) * (0.5 / h);
                    let dy = (ly_p[[c, aa, b]] - ly_m[[c, aa, b]]) * (0.5 / h);
                    // d/dz = (d/dx + e d/dy)/2, d/dzb = (d/dx - e d/dy)/2
                    let dz = (dx + ParaComplex::E * dy) * 0.5;
                    let dzb = (dx - ParaComplex::E * dy) * 0.5;
                    assert!(
                        (dl[[a, c, aa, b]] - dz).norm() < 1e-7,
                        "dz mismatch at ({a},{c},{aa},{b}): {} vs {}",
                        dl[[a, c, aa, b]],
                        dz
                    );
                    assert!(
                        (dl[[2 + a, c, aa, b]] - dzb).norm() < 1e-7,
                        "dzb mismatch at ({a},{c},{aa},{b})"
                    );
                }
            }
        }
    }
}

#[test]
fn lie_derivatives_match_finite_differences() {
    let alg = sl2();
    let frame = sl2_frame();
    let p = EvalPoint::new(vec![
        ParaComplex::new(0.006, 0.002),
        ParaComplex::new(-0.004, 0.005),
        ParaComplex::new(0.003, -0.007),
    ]);
    let h = 1e-5;
    let dgamma = d_lie_connection_at(frame, &p, EPS_INV).unwrap();
    let shift = |a: usize, delta: f64| {
        let mut coords = p.coords().to_vec();
        coords[a] += ParaComplex::new(delta, 0.0);
        EvalPoint::new(coords)
    };
    for e in 0..3 {
        // frames are holomorphic, so a real displacement measures d/dz^e
        let gp = lie_connection_at(frame, &shift(e, h), EPS_INV).unwrap();
        let gm = lie_connection_at(frame, &shift(e, -h), EPS_INV).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let fd = (gp[[a, b, c]] - gm[[a, b, c]]) * (0.5 / h);
                    assert!(
                        (dgamma[[e, a, b, c]] - fd).norm() < 1e-8,
                        "({e},{a},{b},{c}): {} vs {}",
                        dgamma[[e, a, b, c]],
                        fd
                    );
                }
            }
        }
    }
}

#[test]
fn uniqueness_probe_rejects_alternative_connections() {
    // Any symmetric almost-para-complex deformation of L breaks metric
    // compatibility: the difference tensor cannot satisfy all of m23.
    let geom = sl2_geometry();
    let p = origin(3);
    let jet = geom.jet_at(&p, 1).unwrap();
    let l = jet.char_connection();
    let base = parageo::connection::axiom_residuals(&jet, &l);
    assert!(base.max_violation() < 1e-10);
    let mut perturbed = l;
    let delta = ParaComplex::new(5e-4, 1e-4);
    let mut t = Tensor::<3>::zeros(6);
    t[[0, 1, 2]] = delta;
    t[[0, 2, 1]] = delta;
    for c in 0..6 {
        for a in 0..6 {
            for b in 0..6 {
                perturbed[[c, a, b]] += t[[c, a, b]];
            }
        }
    }
    let report = parageo::connection::axiom_residuals(&jet, &perturbed);
    assert!(report.metric_compatibility > 1e-5, "{report:?}");
}
