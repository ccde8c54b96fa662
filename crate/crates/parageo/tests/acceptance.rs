//! Acceptance suite: ten numbered criteria covering the Lie-group Einstein
//! identities, the real/para-complex correspondence, the equivalence theorem
//! for para-holomorphic metrics, characteristic-connection axioms, scalar
//! relations, ring arithmetic, and the Maurer-Cartan series. Each test
//! prints one pass/fail line (visible with `--nocapture`).

use std::sync::OnceLock;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use parageo::connection::{axiom_residuals, verify_characteristic_axioms, MetricGeometry};
use parageo::curvature::{curvature_from_jet, RealGeometry};
use parageo::einstein::scalar_curvatures;
use parageo::expr::{EvalPoint, Expr};
use parageo::lie::{
    bch_lambda_series, invariant_metric, lie_curvature_at, lie_metric_at,
    lie_ricci_from_curvature, lie_scalar_at, mc_check, parallel_curvature_residual,
    shell_points, sl2_constants, sl2_sl2_constants, validate_structure, LambdaFrame,
    LieAlgebraData,
};
use parageo::metric::{IOperator, ParaMetric};
use parageo::paracomplex::{PCMatrix, ParaComplex};
use parageo::EPS_INV;

fn verdict(criterion: &str, pass: bool, detail: String) -> bool {
    println!(
        "acceptance {criterion}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}

fn sl2() -> &'static LieAlgebraData {
    static ALG: OnceLock<LieAlgebraData> = OnceLock::new();
    ALG.get_or_init(|| validate_structure(3, sl2_constants(ParaComplex::ONE)).unwrap())
}

fn sl2_frame() -> &'static LambdaFrame {
    static FRAME: OnceLock<LambdaFrame> = OnceLock::new();
    FRAME.get_or_init(|| bch_lambda_series(sl2(), 6).unwrap())
}

fn sl2_metric() -> &'static ParaMetric {
    static METRIC: OnceLock<ParaMetric> = OnceLock::new();
    METRIC.get_or_init(|| invariant_metric(sl2(), sl2_frame()).unwrap())
}

fn origin(m: usize) -> EvalPoint {
    EvalPoint::new(vec![ParaComplex::ZERO; m])
}

fn metric(n: usize, entries: &[&str]) -> ParaMetric {
    let rows: Vec<Vec<String>> = entries
        .chunks(n)
        .map(|row| row.iter().map(|s| s.to_string()).collect())
        .collect();
    ParaMetric::from_strings(n, &rows).unwrap()
}

/// Para-holomorphic test metrics (name, dimension, entries).
fn holomorphic_metrics() -> Vec<(&'static str, usize, ParaMetric)> {
    vec![
        ("affine-1d", 1, metric(1, &["2+z1"])),
        ("exp-1d", 1, metric(1, &["exp(z1)"])),
        ("diag-quadratic", 2, metric(2, &["1", "0", "0", "1+z1^2"])),
        (
            "off-diagonal",
            2,
            metric(2, &["2", "0.5*z2", "0.5*z2", "2"]),
        ),
        ("diag-swapped", 2, metric(2, &["1+z2", "0", "0", "1+z1"])),
    ]
}

/// Non-para-holomorphic test metrics.
fn non_holomorphic_metrics() -> Vec<(&'static str, usize, ParaMetric)> {
    vec![
        ("conjugate-1d", 1, metric(1, &["zb1"])),
        ("real-part-1d", 1, metric(1, &["z1+zb1"])),
        ("modulus-1d", 1, metric(1, &["1+z1*zb1"])),
        ("mixed-2d", 2, metric(2, &["1+zb1", "0", "0", "2"])),
    ]
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> EvalPoint {
    EvalPoint::new(
        (0..n)
            .map(|_| {
                ParaComplex::new(rng.gen_range(0.15..0.55), rng.gen_range(-0.2..0.2))
            })
            .collect(),
    )
}

#[test]
fn criterion_01_lie_einstein_identity() {
    // Exact identity at the group identity: Ric = -(1/4) Killing.
    let alg = sl2();
    let frame = LambdaFrame::identity(3);
    let p = origin(3);
    let r = lie_curvature_at(alg, &frame, &p, EPS_INV).unwrap();
    let ric = lie_ricci_from_curvature(&r);
    let mut identity_residual = 0.0f64;
    for c in 0..3 {
        for a in 0..3 {
            identity_residual = identity_residual
                .max((ric[[c, a]] + alg.killing()[(c, a)] * 0.25).norm());
        }
    }

    // 100 random invertible frames: || Ric + (1/4) g ||_inf < 1e-11.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut frames_checked = 0usize;
    let mut frame_residual = 0.0f64;
    while frames_checked < 100 {
        let entries: Vec<Vec<Expr>> = (0..3)
            .map(|a| {
                (0..3)
                    .map(|b| {
                        let diag = if a == b { 1.0 } else { 0.0 };
                        Expr::constant(ParaComplex::new(
                            diag + rng.gen_range(-0.6..0.6),
                            rng.gen_range(-0.3..0.3),
                        ))
                    })
                    .collect()
            })
            .collect();
        let frame = LambdaFrame::from_exprs(3, entries);
        if frame.inverse_at(&origin(3), 1e-6).is_err() {
            continue;
        }
        frames_checked += 1;
        let r = lie_curvature_at(alg, &frame, &origin(3), EPS_INV).unwrap();
        let ric = lie_ricci_from_curvature(&r);
        let g = lie_metric_at(alg, &frame, &origin(3)).unwrap();
        for c in 0..3 {
            for a in 0..3 {
                frame_residual = frame_residual.max((ric[[c, a]] + g[(c, a)] * 0.25).norm());
            }
        }
    }

    let pass = identity_residual < 1e-12 && frame_residual < 1e-11;
    assert!(
        verdict(
            "01 (Lie Einstein identity Ric = -1/4 Killing)",
            pass,
            format!(
                "identity residual {identity_residual:.3e}, 100-frame residual {frame_residual:.3e}"
            ),
        ),
        "criterion 1 failed"
    );
}

#[test]
fn criterion_02_lie_scalar_curvature() {
    let frame3 = LambdaFrame::identity(3);
    let s3 = lie_scalar_at(sl2(), &frame3, &origin(3), EPS_INV).unwrap();
    let r3 = (s3 - ParaComplex::new(-0.75, 0.0)).norm();

    let alg6 = validate_structure(6, sl2_sl2_constants()).unwrap();
    let frame6 = LambdaFrame::identity(6);
    let s6 = lie_scalar_at(&alg6, &frame6, &origin(6), EPS_INV).unwrap();
    let r6 = (s6 - ParaComplex::new(-1.5, 0.0)).norm();

    let pass = r3 < 1e-12 && r6 < 1e-12;
    assert!(
        verdict(
            "02 (scalar curvature -m/4)",
            pass,
            format!("sl2 {s3}, sl2+sl2 {s6}"),
        ),
        "criterion 2 failed"
    );
}

#[test]
fn criterion_03_real_oracle_on_lie_realization() {
    let realized = sl2_metric().realize();
    let geo = RealGeometry::at(&realized, &origin(3)).unwrap();
    let ric = geo.ricci();
    let mut residual = 0.0f64;
    for j in 0..6 {
        for k in 0..6 {
            residual = residual.max((ric[(j, k)] + 0.25 * geo.g[(j, k)]).abs());
        }
    }
    let pass = residual < 1e-8;
    assert!(
        verdict(
            "03 (real oracle: Ric(g) = -1/4 g on the 6-dim realization)",
            pass,
            format!("residual {residual:.3e}"),
        ),
        "criterion 3 failed"
    );
}

#[test]
fn criterion_04_e15_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut worst = 0.0f64;
    for (name, n, m) in holomorphic_metrics() {
        let geom = MetricGeometry::new(m.clone());
        let realized = m.realize();
        let iop = IOperator::new(n);
        let mut checked = 0usize;
        while checked < 10 {
            let p = random_point(&mut rng, n);
            let jet = match geom.jet_at(&p, 2) {
                Ok(jet) => jet,
                Err(_) => continue,
            };
            let curv = curvature_from_jet(&jet);
            let ric_real = match parageo::curvature::real_ricci_oracle(&realized, &p) {
                Ok(r) => r,
                Err(_) => continue,
            };
            checked += 1;
            for j in 0..2 * n {
                for k in 0..2 * n {
                    let (fa, a) = if j < n {
                        (ParaComplex::ONE, j)
                    } else {
                        (ParaComplex::E, j - n)
                    };
                    let (fb, b) = if k < n {
                        (ParaComplex::ONE, k)
                    } else {
                        (ParaComplex::E, k - n)
                    };
                    let lhs = fa * fb * curv.ricci[[a, b]];
                    let rhs = (ParaComplex::new(ric_real[(j, k)], 0.0)
                        + ParaComplex::E * ric_real[(j, iop.swap(k))])
                        * 0.5;
                    let diff = (lhs - rhs).norm();
                    assert!(diff < 1e-7, "{name} at ({j},{k}): {diff:.3e}");
                    worst = worst.max(diff);
                }
            }
        }
    }
    assert!(
        verdict(
            "04 (e15: para-complex Ricci vs real oracle, 5 metrics x 10 points)",
            worst < 1e-7,
            format!("max residual {worst:.3e}"),
        ),
        "criterion 4 failed"
    );
}

#[test]
fn criterion_05_equivalence_suite() {
    let tol = 1e-9;
    let mut all_consistent = true;
    let mut lines = Vec::new();
    let cases = holomorphic_metrics()
        .into_iter()
        .take(4)
        .map(|(name, n, m)| (name, n, m, true))
        .chain(
            non_holomorphic_metrics()
                .into_iter()
                .map(|(name, n, m)| (name, n, m, false)),
        );
    for (name, n, m, expected) in cases {
        let geom = MetricGeometry::new(m.clone());
        let samples = parageo::default_samples(n);
        let realized = m.realize();

        // (i) Phi = 0, (iv) DG = 0 (all blocks), (v) D = LC of G
        let mut phi_max = 0.0f64;
        let mut dg_max = 0.0f64;
        let mut d_equals_nabla = 0.0f64;
        let mut nabla_i = 0.0f64;
        for p in &samples {
            let jet = geom.jet_at(p, 1).unwrap();
            phi_max = phi_max.max(jet.phi().max_norm());
            let l = jet.char_connection();
            dg_max = dg_max.max(jet.cov_metric(&l).max_norm());
            d_equals_nabla = d_equals_nabla.max(jet.christoffel().max_diff(&l));
            nabla_i = nabla_i.max(RealGeometry::at(&realized, p).unwrap().nabla_i_residual(n));
        }
        let assertions = [
            phi_max < tol,
            m.is_paraholomorphic(&samples, tol).unwrap(),
            nabla_i < tol,
            dg_max < tol,
            d_equals_nabla < tol,
        ];
        let consistent = assertions.iter().all(|&x| x == expected);
        all_consistent &= consistent;
        lines.push(format!("{name}:{}", if consistent { "ok" } else { "MIXED" }));
    }
    assert!(
        verdict(
            "05 (five equivalent assertions, 4 holomorphic + 4 non-holomorphic)",
            all_consistent,
            lines.join(" "),
        ),
        "criterion 5 failed"
    );
}

#[test]
fn criterion_06_characteristic_axioms_and_uniqueness() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let mut probes_detected = true;
    let all_metrics: Vec<(usize, ParaMetric)> = holomorphic_metrics()
        .into_iter()
        .map(|(_, n, m)| (n, m))
        .chain(non_holomorphic_metrics().into_iter().map(|(_, n, m)| (n, m)))
        .chain(std::iter::once((3, sl2_metric().clone())))
        .collect();
    for (n, m) in all_metrics {
        let geom = MetricGeometry::new(m);
        let samples = if n == 3 {
            shell_points(3, 1e-2)
        } else {
            parageo::default_samples(n)
        };
        let report = verify_characteristic_axioms(&geom, &samples).unwrap();
        worst = worst.max(report.max_violation());

        // uniqueness probe: symmetric, almost-para-complex random
        // perturbations of L must violate metric compatibility; asymmetric
        // and mixed-block ones violate the other axioms.
        let jet = geom.jet_at(&samples[0], 1).unwrap();
        let l = jet.char_connection();
        for mode in 0..3 {
            let mut perturbed = l.clone();
            let (a, b, c) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            let eps = ParaComplex::new(1e-3, rng.gen_range(-1e-3..1e-3));
            match mode {
                0 => {
                    // symmetric unbarred: breaks (iii)
                    perturbed[[c, a, b]] += eps;
                    perturbed[[c, b, a]] = perturbed[[c, a, b]];
                }
                1 => {
                    // asymmetric: breaks (i)
                    perturbed[[c, a, b]] += eps;
                    if a == b {
                        perturbed[[c, a, (b + 1) % n]] += eps;
                    }
                }
                _ => {
                    // mixed block: breaks (ii)
                    perturbed[[n + c, a, b]] += eps;
                    perturbed[[n + c, b, a]] = perturbed[[n + c, a, b]];
                }
            }
            let residual = axiom_residuals(&jet, &perturbed);
            probes_detected &= residual.max_violation() > 1e-6;
        }
    }
    let pass = worst < 1e-10 && probes_detected;
    assert!(
        verdict(
            "06 (characteristic-connection axioms + uniqueness probe)",
            pass,
            format!("max axiom residual {worst:.3e}, perturbations detected: {probes_detected}"),
        ),
        "criterion 6 failed"
    );
}

#[test]
fn criterion_07_scalar_relations() {
    // K-hat = (K + e K*) / 2 across the para-holomorphic registry.
    let mut worst = 0.0f64;
    for (name, n, m) in holomorphic_metrics() {
        let geom = MetricGeometry::new(m.clone());
        let realized = m.realize();
        for p in parageo::default_samples(n) {
            let s = scalar_curvatures(&geom, &realized, &p).unwrap();
            assert!(s.relation_residual < 1e-7, "{name}: {:.3e}", s.relation_residual);
            worst = worst.max(s.relation_residual);
        }
    }

    // sl(2): K = -3/2, K* = 0; its twin swaps the roles.
    let geom = MetricGeometry::new(sl2_metric().clone());
    let realized = geom.metric().realize();
    let s = scalar_curvatures(&geom, &realized, &origin(3)).unwrap();
    worst = worst.max(s.relation_residual);
    let sl2_ok = (s.k - -1.5).abs() < 1e-7 && s.k_star.abs() < 1e-7;

    let twin_geom = MetricGeometry::new(geom.metric().twin());
    let twin_realized = twin_geom.metric().realize();
    let st = scalar_curvatures(&twin_geom, &twin_realized, &origin(3)).unwrap();
    worst = worst.max(st.relation_residual);
    let twin_ok = st.k.abs() < 1e-7 && (st.k_star - -1.5).abs() < 1e-7;

    let pass = worst < 1e-7 && sl2_ok && twin_ok;
    assert!(
        verdict(
            "07 (scalar relations K-hat = (K + e K*)/2; sl2 and twin values)",
            pass,
            format!(
                "max relation residual {worst:.3e}; sl2 K={:.4}, K*={:.4}; twin K={:.4}, K*={:.4}",
                s.k, s.k_star, st.k, st.k_star
            ),
        ),
        "criterion 7 failed"
    );
}

#[test]
fn criterion_08_algebra_core() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut assoc = 0.0f64;
    let mut comm = 0.0f64;
    let mut modulus = 0.0f64;
    for _ in 0..10_000 {
        let rand_pc = |rng: &mut ChaCha8Rng| {
            ParaComplex::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
        };
        let a = rand_pc(&mut rng);
        let b = rand_pc(&mut rng);
        let c = rand_pc(&mut rng);
        comm = comm.max((a * b - b * a).norm());
        assoc = assoc.max(((a * b) * c - a * (b * c)).norm());
        let lhs = (a * b).modulus();
        let rhs = a.modulus() * b.modulus();
        let scale = 1.0f64.max(rhs.abs());
        modulus = modulus.max((lhs - rhs).abs() / scale);
    }
    let ring_ok = assoc < 1e-12 && comm < 1e-12 && modulus < 1e-12;

    // split-representation equivalence of matrix inversion against an
    // independent Gauss-Jordan elimination over the para-complex ring
    let mut inverse_diff = 0.0f64;
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let m = PCMatrix::from_fn(n, n, |i, j| {
            let diag = if i == j { 3.0 } else { 0.0 };
            ParaComplex::new(
                diag + rng.gen_range(-1.0..1.0),
                rng.gen_range(-0.5..0.5),
            )
        });
        let inv = m.inverse(EPS_INV).unwrap();
        let oracle = gauss_jordan_pc(&m).unwrap();
        for i in 0..n {
            for j in 0..n {
                inverse_diff = inverse_diff.max((inv[(i, j)] - oracle[(i, j)]).norm());
            }
        }
    }
    let pass = ring_ok && inverse_diff < 1e-10;
    assert!(
        verdict(
            "08 (ring laws x 10^4 and split-inverse equivalence)",
            pass,
            format!(
                "assoc {assoc:.3e}, comm {comm:.3e}, modulus {modulus:.3e}, inverse {inverse_diff:.3e}"
            ),
        ),
        "criterion 8 failed"
    );
}

/// Test-side oracle: Gauss-Jordan elimination directly over the para-complex
/// ring, pivoting on the entry of largest modulus. Independent of the
/// production split-representation route.
fn gauss_jordan_pc(m: &PCMatrix) -> Option<PCMatrix> {
    let n = m.rows();
    let mut a = m.clone();
    let mut inv = PCMatrix::identity(n);
    for col in 0..n {
        let pivot_row = (col..n).max_by(|&r1, &r2| {
            a[(r1, col)]
                .modulus()
                .abs()
                .partial_cmp(&a[(r2, col)].modulus().abs())
                .unwrap()
        })?;
        if a[(pivot_row, col)].modulus().abs() < 1e-10 {
            return None;
        }
        if pivot_row != col {
            for j in 0..n {
                let tmp = a[(col, j)];
                a[(col, j)] = a[(pivot_row, j)];
                a[(pivot_row, j)] = tmp;
                let tmp = inv[(col, j)];
                inv[(col, j)] = inv[(pivot_row, j)];
                inv[(pivot_row, j)] = tmp;
            }
        }
        let pivot = a[(col, col)];
        let pm = pivot.modulus();
        let pivot_inv = ParaComplex::new(pivot.re / pm, -pivot.im / pm);
        for j in 0..n {
            a[(col, j)] *= pivot_inv;
            inv[(col, j)] *= pivot_inv;
        }
        for row in 0..n {
            if row == col {
                continue;
            }
            let factor = a[(row, col)];
            for j in 0..n {
                let av = a[(col, j)];
                let iv = inv[(col, j)];
                a[(row, j)] -= factor * av;
                inv[(row, j)] -= factor * iv;
            }
        }
    }
    Some(inv)
}

#[test]
fn criterion_09_maurer_cartan_series() {
    let frame = sl2_frame();
    let radii = [1e-1, 1e-2, 1e-3];
    let residuals: Vec<f64> = radii
        .iter()
        .map(|&r| mc_check(sl2(), frame, &shell_points(3, r)).unwrap())
        .collect();
    let at_small = residuals[1];

    // least-squares slope in log-log
    let xs: Vec<f64> = radii.iter().map(|r| r.log10()).collect();
    let ys: Vec<f64> = residuals.iter().map(|r| r.log10()).collect();
    let xm = xs.iter().sum::<f64>() / 3.0;
    let ym = ys.iter().sum::<f64>() / 3.0;
    let slope = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - xm) * (y - ym))
        .sum::<f64>()
        / xs.iter().map(|x| (x - xm) * (x - xm)).sum::<f64>();

    let pass = at_small < 1e-9 && (slope - 5.0).abs() <= 0.5;
    assert!(
        verdict(
            "09 (order-6 Maurer-Cartan series: residual and r^5 scaling)",
            pass,
            format!(
                "residuals {:.3e}/{:.3e}/{:.3e}, slope {slope:.2}",
                residuals[0], residuals[1], residuals[2]
            ),
        ),
        "criterion 9 failed"
    );
}

#[test]
fn criterion_10_parallel_curvature() {
    let residual =
        parallel_curvature_residual(sl2(), sl2_frame(), &shell_points(3, 1e-2), EPS_INV).unwrap();
    let pass = residual < 1e-6;
    assert!(
        verdict(
            "10 (parallel curvature: max |nabla R| on the series frame)",
            pass,
            format!("residual {residual:.3e}"),
        ),
        "criterion 10 failed"
    );
}
