//! Check suites behind the CLI subcommands. Every entry name matches the
//! library operation it exercises, and entries are emitted in a fixed order
//! so reports are byte-stable.

use parageo::connection::{
    is_paraholomorphic_connection, verify_characteristic_axioms, MetricGeometry,
};
use parageo::curvature::{
    classify_characteristic_einstein, curvature_from_jet, divergence_einstein, einstein_tensor,
    real_ricci_oracle, scalar_curvature, RealGeometry,
};
use parageo::einstein::{
    check_theorem_correspondence, extract_einstein_constant, scalar_curvatures, twin_transfer,
};
use parageo::expr::EvalPoint;
use parageo::lie::{
    lie_connection_at, lie_connection_first_form_at, lie_curvature_at, lie_einstein_residual,
    lie_lowered_at, lie_metric_at, lie_ricci_at, lie_ricci_from_curvature, lie_scalar_at,
    lie_sectional_at, mc_check, para_kahler_norden_realization, shell_points,
};
use parageo::metric::{check_norden, complexify_metric, IOperator, ParaMetric};
use parageo::report::CheckEntry;
use parageo::{ParaComplex, EPS_INV};
use serde_json::json;

use crate::input::{algebra_from, frame_from, samples_from, LieProblem, MetricProblem};
use crate::{degenerate_or_schema, RunConfig, RunError};

const DEFAULT_TOL: f64 = 1e-9;

fn tolerance(problem_tol: Option<f64>, config: &RunConfig) -> f64 {
    config.tolerance.or(problem_tol).unwrap_or(DEFAULT_TOL)
}

fn pc_json(z: ParaComplex) -> serde_json::Value {
    json!([z.re, z.im])
}

struct MetricContext {
    geom: MetricGeometry,
    samples: Vec<EvalPoint>,
    tol: f64,
}

fn metric_context(problem: &MetricProblem, config: &RunConfig) -> Result<MetricContext, RunError> {
    let n = problem.dimension;
    let samples = samples_from(&problem.samples, n).map_err(RunError::Schema)?;
    let metric = ParaMetric::from_strings(n, &problem.g).map_err(degenerate_or_schema)?;
    Ok(MetricContext {
        geom: MetricGeometry::new(metric),
        samples,
        tol: tolerance(problem.tolerance, config),
    })
}

pub fn metric_checks(
    problem: &MetricProblem,
    config: &RunConfig,
) -> Result<Vec<CheckEntry>, RunError> {
    let ctx = metric_context(problem, config)?;
    let mut checks = Vec::new();

    let mut invertible_everywhere = true;
    let mut worst_inverse = 0.0f64;
    for p in &ctx.samples {
        match ctx.geom.metric().inverse_block_at(p, EPS_INV) {
            Ok(inv) => {
                let block = ctx.geom.metric().block_at(p).map_err(degenerate_or_schema)?;
                worst_inverse = worst_inverse.max(block.residual_vs_identity(&inv));
            }
            Err(_) => invertible_everywhere = false,
        }
    }
    checks.push(
        CheckEntry::new(
            "matrix_inverse_pc",
            invertible_everywhere && worst_inverse < 1e-12,
            worst_inverse,
        )
        .with_details(json!({ "nondegenerate_at_all_samples": invertible_everywhere })),
    );

    let holo = ctx
        .geom
        .metric()
        .is_paraholomorphic(&ctx.samples, ctx.tol)
        .map_err(degenerate_or_schema)?;
    checks.push(
        CheckEntry::new("is_paraholomorphic_metric", true, 0.0)
            .with_details(json!({ "para_holomorphic": holo })),
    );

    let realized = ctx.geom.metric().realize();
    let norden = check_norden(&realized, &ctx.samples).map_err(degenerate_or_schema)?;
    checks.push(CheckEntry::new(
        "check_norden",
        norden.max_violation() < 1e-12,
        norden.max_violation(),
    ));

    let round_trip = complexify_metric(&realized, &ctx.samples, ctx.tol.max(1e-10));
    let entry = match round_trip {
        Ok(back) => {
            let mut worst = 0.0f64;
            for p in &ctx.samples {
                for a in 0..problem.dimension {
                    for b in 0..problem.dimension {
                        let orig = ctx
                            .geom
                            .metric()
                            .entry(a, b)
                            .eval(p, EPS_INV)
                            .map_err(degenerate_or_schema)?;
                        let rt = back
                            .entry(a, b)
                            .eval(p, EPS_INV)
                            .map_err(degenerate_or_schema)?;
                        worst = worst.max((orig - rt).norm());
                    }
                }
            }
            CheckEntry::new("complexify_metric", worst < 1e-10, worst)
        }
        Err(e) => CheckEntry::new("complexify_metric", false, f64::NAN)
            .with_details(json!({ "error": e.to_string() })),
    };
    checks.push(entry);

    // twin involution: realize(twin(twin)) matches realize at samples
    let twin_twice = ctx.geom.metric().twin().twin();
    let mut worst = 0.0f64;
    for p in &ctx.samples {
        for a in 0..problem.dimension {
            for b in 0..problem.dimension {
                let orig = ctx
                    .geom
                    .metric()
                    .entry(a, b)
                    .eval(p, EPS_INV)
                    .map_err(degenerate_or_schema)?;
                let tt = twin_twice
                    .entry(a, b)
                    .eval(p, EPS_INV)
                    .map_err(degenerate_or_schema)?;
                worst = worst.max((orig - tt).norm());
            }
        }
    }
    checks.push(CheckEntry::new("twin_metric", worst < 1e-12, worst));

    Ok(checks)
}

pub fn connection_checks(
    problem: &MetricProblem,
    config: &RunConfig,
) -> Result<Vec<CheckEntry>, RunError> {
    let ctx = metric_context(problem, config)?;
    let n = problem.dimension;
    let mut checks = Vec::new();

    // twin-Christoffel relations and Phi = twin Gamma - Gamma at samples
    let twin_geom = MetricGeometry::new(ctx.geom.metric().twin());
    let mut twin_residual = 0.0f64;
    let mut phi_residual = 0.0f64;
    let mut psi_residual = 0.0f64;
    for p in &ctx.samples {
        let jet = ctx.geom.jet_at(p, 1).map_err(degenerate_or_schema)?;
        let tjet = twin_geom.jet_at(p, 1).map_err(degenerate_or_schema)?;
        let gamma = jet.christoffel();
        let tgamma = tjet.christoffel();
        let phi = jet.phi();
        let psi = jet.psi();
        let d = 2 * n;
        for c in 0..d {
            for a in 0..d {
                for b in 0..d {
                    let same = (c < n) == (a < n) && (a < n) == (b < n);
                    let expected = if same {
                        gamma[[c, a, b]]
                    } else {
                        let diff = tgamma[[c, a, b]] - gamma[[c, a, b]];
                        phi_residual = phi_residual.max((phi[[c, a, b]] - diff).norm());
                        continue;
                    };
                    twin_residual = twin_residual.max((tgamma[[c, a, b]] - expected).norm());
                }
            }
        }
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let mut lowered = ParaComplex::ZERO;
                    for f in 0..d {
                        lowered += phi[[f, a, b]] * jet.g[[f, c]];
                    }
                    psi_residual = psi_residual.max((psi[[a, b, c]] - lowered).norm());
                }
            }
        }
    }
    checks.push(CheckEntry::new(
        "christoffel",
        twin_residual < 1e-10,
        twin_residual,
    ));
    checks.push(CheckEntry::new(
        "fundamental_phi",
        phi_residual < 1e-10,
        phi_residual,
    ));
    checks.push(CheckEntry::new(
        "fundamental_psi",
        psi_residual < 1e-10,
        psi_residual,
    ));

    // characteristic connection determined by the unbarred Christoffel block
    let mut char_residual = 0.0f64;
    for p in &ctx.samples {
        let jet = ctx.geom.jet_at(p, 1).map_err(degenerate_or_schema)?;
        let l = jet.char_connection();
        let gamma = jet.christoffel();
        for c in 0..n {
            for a in 0..n {
                for b in 0..n {
                    char_residual = char_residual.max((l[[c, a, b]] - gamma[[c, a, b]]).norm());
                    char_residual = char_residual.max(l[[n + c, a, b]].norm());
                    char_residual = char_residual.max(l[[c, a, n + b]].norm());
                }
            }
        }
    }
    checks.push(CheckEntry::new(
        "characteristic_connection",
        char_residual < 1e-12,
        char_residual,
    ));

    let axioms = verify_characteristic_axioms(&ctx.geom, &ctx.samples)
        .map_err(degenerate_or_schema)?;
    checks.push(
        CheckEntry::new(
            "verify_characteristic_axioms",
            axioms.pass(ctx.tol.max(1e-10)),
            axioms.max_violation(),
        )
        .with_details(json!({
            "symmetry": axioms.symmetry,
            "almost_para_complex": axioms.almost_para_complex,
            "metric_compatibility": axioms.metric_compatibility,
            "covariant_equals_psi": axioms.covariant_equals_psi,
        })),
    );

    let conn_holo = is_paraholomorphic_connection(&ctx.geom, &ctx.samples, ctx.tol)
        .map_err(degenerate_or_schema)?;
    checks.push(
        CheckEntry::new("is_paraholomorphic_connection", true, 0.0)
            .with_details(json!({ "para_holomorphic": conn_holo })),
    );

    Ok(checks)
}

pub fn curvature_checks(
    problem: &MetricProblem,
    config: &RunConfig,
) -> Result<Vec<CheckEntry>, RunError> {
    let ctx = metric_context(problem, config)?;
    let n = problem.dimension;
    let mut checks = Vec::new();

    let mut antisym = 0.0f64;
    let mut conj_mirror = 0.0f64;
    let mut scalar_imag = 0.0f64;
    let mut stress_identity = 0.0f64;
    let mut vacuum = true;
    let mut scalar_value = ParaComplex::ZERO;
    for p in &ctx.samples {
        let jet = ctx.geom.jet_at(p, 2).map_err(degenerate_or_schema)?;
        let curv = curvature_from_jet(&jet);
        antisym = antisym.max(curv.antisymmetry_residual());
        for c in 0..n {
            for a in 0..n {
                conj_mirror = conj_mirror
                    .max((curv.ricci[[n + c, n + a]] - curv.ricci[[c, a]].conj()).norm());
            }
        }
        let rho = scalar_curvature(&curv, &jet, ctx.tol.max(1e-9))
            .map_err(degenerate_or_schema)?;
        scalar_imag = scalar_imag.max(rho.im.abs());
        scalar_value = rho;
        let et = einstein_tensor(&curv, &jet, config.constant_c, ctx.tol)
            .map_err(degenerate_or_schema)?;
        vacuum = vacuum && et.vacuum;
        let d = 2 * n;
        for a in 0..d {
            for b in 0..d {
                let lhs = et.stress[[a, b]] * (8.0 * std::f64::consts::PI * config.constant_c);
                stress_identity = stress_identity.max((lhs - et.e_lower[[a, b]]).norm());
            }
        }
    }
    checks.push(CheckEntry::new(
        "curvature_components",
        antisym < ctx.tol.max(1e-10),
        antisym,
    ));
    checks.push(CheckEntry::new(
        "ricci_components",
        conj_mirror < 1e-12,
        conj_mirror,
    ));
    checks.push(
        CheckEntry::new("scalar_curvature", scalar_imag < ctx.tol.max(1e-9), scalar_imag)
            .with_details(json!({ "rho_last_sample": pc_json(scalar_value) })),
    );
    checks.push(
        CheckEntry::new("einstein_tensor", stress_identity < 1e-12, stress_identity)
            .with_details(json!({ "vacuum": vacuum })),
    );

    // lowered curvature: antisymmetry in the leading pair survives lowering
    let mut lowered_antisym = 0.0f64;
    for p in &ctx.samples {
        let jet = ctx.geom.jet_at(p, 2).map_err(degenerate_or_schema)?;
        let curv = curvature_from_jet(&jet);
        let lowered = parageo::curvature::lower_curvature(&curv, &jet);
        let d = 2 * n;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for dd in 0..d {
                        lowered_antisym = lowered_antisym
                            .max((lowered[[a, b, c, dd]] + lowered[[b, a, c, dd]]).norm());
                    }
                }
            }
        }
    }
    checks.push(CheckEntry::new(
        "lower_curvature",
        lowered_antisym < ctx.tol.max(1e-10),
        lowered_antisym,
    ));

    // sectional curvature on coordinate planes at the first sample
    if n >= 2 {
        let jet = ctx
            .geom
            .jet_at(&ctx.samples[0], 2)
            .map_err(degenerate_or_schema)?;
        let curv = curvature_from_jet(&jet);
        let mut values = Vec::new();
        let mut degenerate = 0usize;
        for a in 0..n {
            for b in (a + 1)..n {
                let mut z1 = vec![ParaComplex::ZERO; n];
                let mut z2 = vec![ParaComplex::ZERO; n];
                z1[a] = ParaComplex::ONE;
                z2[b] = ParaComplex::ONE;
                match parageo::curvature::sectional_curvature(&curv, &jet, &z1, &z2, EPS_INV) {
                    Ok(k) => values.push(pc_json(k)),
                    Err(parageo::Error::DegeneratePlane) => degenerate += 1,
                    Err(e) => return Err(degenerate_or_schema(e)),
                }
            }
        }
        checks.push(
            CheckEntry::new("sectional_curvature", true, 0.0).with_details(json!({
                "coordinate_planes": values,
                "degenerate_planes": degenerate,
            })),
        );
    }

    let holo = ctx
        .geom
        .metric()
        .is_paraholomorphic(&ctx.samples, ctx.tol)
        .map_err(degenerate_or_schema)?;
    if holo {
        let div = divergence_einstein(&ctx.geom, &ctx.samples).map_err(degenerate_or_schema)?;
        checks.push(CheckEntry::new("divergence_einstein", div < 1e-8, div));
    }

    let classification = classify_characteristic_einstein(&ctx.geom, &ctx.samples, ctx.tol)
        .map_err(degenerate_or_schema)?;
    checks.push(
        CheckEntry::new(
            "classify_characteristic_einstein",
            true,
            classification.proportionality_residual,
        )
        .with_details(json!({
            "is_characteristic_einstein": classification.is_characteristic_einstein,
            "mixed_ricci_max": classification.mixed_ricci_max,
            "f_first_sample": pc_json(classification.f_values[0]),
            "anti_paraholomorphy_residual": classification.anti_paraholomorphy_residual,
        })),
    );

    Ok(checks)
}

pub fn einstein_checks(
    problem: &MetricProblem,
    config: &RunConfig,
) -> Result<Vec<CheckEntry>, RunError> {
    let ctx = metric_context(problem, config)?;
    let n = problem.dimension;
    let mut checks = Vec::new();

    let holo = ctx
        .geom
        .metric()
        .is_paraholomorphic(&ctx.samples, ctx.tol)
        .map_err(degenerate_or_schema)?;
    checks.push(CheckEntry::new("is_paraholomorphic_metric", holo, 0.0));

    let mut phi_max = 0.0f64;
    for p in &ctx.samples {
        let jet = ctx.geom.jet_at(p, 1).map_err(degenerate_or_schema)?;
        phi_max = phi_max.max(jet.phi().max_norm());
    }
    checks.push(CheckEntry::new(
        "fundamental_phi",
        phi_max < ctx.tol,
        phi_max,
    ));

    let extraction = extract_einstein_constant(&ctx.geom, &ctx.samples, ctx.tol)
        .map_err(degenerate_or_schema)?;
    checks.push(
        CheckEntry::new(
            "extract_einstein_constant",
            extraction.is_einstein,
            extraction.proportionality_residual.max(extraction.spread),
        )
        .with_details(json!({
            "einstein_constant": pc_json(extraction.lambda),
            "spread": extraction.spread,
            "mixed_ricci_max": extraction.mixed_ricci_max,
        })),
    );

    if holo {
        let realized = ctx.geom.metric().realize();
        let iop = IOperator::new(n);
        let mut e15 = 0.0f64;
        for p in &ctx.samples {
            let jet = ctx.geom.jet_at(p, 2).map_err(degenerate_or_schema)?;
            let curv = curvature_from_jet(&jet);
            let ric_real = real_ricci_oracle(&realized, p).map_err(degenerate_or_schema)?;
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
                    e15 = e15.max((lhs - rhs).norm());
                }
            }
        }
        checks.push(CheckEntry::new("real_ricci_oracle", e15 < 1e-7, e15));

        let mut e16 = 0.0f64;
        let mut commutator = 0.0f64;
        for p in &ctx.samples {
            let s = scalar_curvatures(&ctx.geom, &realized, p).map_err(degenerate_or_schema)?;
            e16 = e16.max(s.relation_residual);
            commutator = commutator.max(s.ricci_i_commutator);
        }
        checks.push(
            CheckEntry::new("scalar_curvatures", e16 < 1e-7, e16)
                .with_details(json!({ "ricci_i_commutator": commutator })),
        );

        let correspondence = check_theorem_correspondence(&ctx.geom, &ctx.samples, ctx.tol)
            .map_err(degenerate_or_schema)?;
        // the checked property is the biconditional; when both sides agree
        // the metric is not Einstein there is nothing left to violate
        let violation = if correspondence.para.is_einstein || correspondence.real_is_einstein {
            correspondence.real_residual.max(
                (correspondence.para.lambda
                    - ParaComplex::new(correspondence.lambda_1, correspondence.lambda_2))
                .norm(),
            )
        } else {
            0.0
        };
        checks.push(
            CheckEntry::new("check_theorem_correspondence", correspondence.holds, violation)
                .with_details(json!({
                    "lambda_1": correspondence.lambda_1,
                    "lambda_2": correspondence.lambda_2,
                    "para_is_einstein": correspondence.para.is_einstein,
                    "real_is_einstein": correspondence.real_is_einstein,
                })),
        );

        if extraction.is_einstein {
            let transfer =
                twin_transfer(&ctx.geom, &ctx.samples, ctx.tol).map_err(degenerate_or_schema)?;
            checks.push(
                CheckEntry::new(
                    "twin_transfer",
                    transfer.twin.is_einstein && transfer.transfer_residual < ctx.tol.max(1e-8),
                    transfer.transfer_residual,
                )
                .with_details(json!({
                    "twin_constant": pc_json(transfer.twin.lambda),
                })),
            );
        }
    }

    Ok(checks)
}

pub fn liegroup_checks(
    problem: &LieProblem,
    config: &RunConfig,
) -> Result<Vec<CheckEntry>, RunError> {
    let tol = tolerance(problem.tolerance, config);
    let m = problem.dim;
    let mut checks = Vec::new();

    let alg = match algebra_from(problem) {
        Ok(alg) => alg,
        Err(message) => {
            checks.push(
                CheckEntry::new("validate_structure", false, f64::NAN)
                    .with_details(json!({ "error": message })),
            );
            return Ok(checks);
        }
    };
    checks.push(
        CheckEntry::new("validate_structure", true, 0.0)
            .with_details(json!({ "semisimple": alg.is_semisimple() })),
    );

    let frame = frame_from(problem, &alg).map_err(RunError::Schema)?;
    let samples = match &problem.samples {
        Some(_) => samples_from(&problem.samples, m).map_err(RunError::Schema)?,
        None => shell_points(m, 1e-2),
    };

    let mc = mc_check(&alg, &frame, &samples).map_err(degenerate_or_schema)?;
    checks.push(CheckEntry::new("mc_check", mc < tol.max(1e-6), mc));

    // invariant metric equals the Killing matrix at the identity
    let origin = EvalPoint::new(vec![ParaComplex::ZERO; m]);
    let g0 = lie_metric_at(&alg, &frame, &origin).map_err(degenerate_or_schema)?;
    let mut killing_residual = 0.0f64;
    for a in 0..m {
        for b in 0..m {
            killing_residual =
                killing_residual.max((g0[(a, b)] - alg.killing()[(a, b)]).norm());
        }
    }
    checks.push(CheckEntry::new(
        "invariant_metric",
        killing_residual < 1e-12,
        killing_residual,
    ));

    // both forms of the invariant connection agree on valid frames
    let mut form_residual = 0.0f64;
    for p in &samples {
        let g1 = lie_connection_first_form_at(&alg, &frame, p, EPS_INV)
            .map_err(degenerate_or_schema)?;
        let g2 = lie_connection_at(&frame, p, EPS_INV).map_err(degenerate_or_schema)?;
        form_residual = form_residual.max(g1.max_diff(&g2));
    }
    checks.push(CheckEntry::new(
        "lie_connection",
        form_residual < 1e-8,
        form_residual,
    ));

    // closed-form curvature traces back to the closed-form Ricci
    let mut trace_residual = 0.0f64;
    for p in &samples {
        let r = lie_curvature_at(&alg, &frame, p, EPS_INV).map_err(degenerate_or_schema)?;
        let via_trace = lie_ricci_from_curvature(&r);
        let closed = lie_ricci_at(&alg, &frame, p).map_err(degenerate_or_schema)?;
        trace_residual = trace_residual.max(via_trace.max_diff(&closed));
    }
    checks.push(CheckEntry::new(
        "lie_curvature",
        trace_residual < 1e-10,
        trace_residual,
    ));

    let mut einstein_residual = 0.0f64;
    for p in &samples {
        einstein_residual = einstein_residual
            .max(lie_einstein_residual(&alg, &frame, p).map_err(degenerate_or_schema)?);
    }
    let scalar = lie_scalar_at(&alg, &frame, &origin, EPS_INV).map_err(degenerate_or_schema)?;
    let scalar_expect = ParaComplex::new(-(m as f64) / 4.0, 0.0);
    let scalar_residual = (scalar - scalar_expect).norm();
    checks.push(
        CheckEntry::new(
            "lie_ricci_and_einstein",
            einstein_residual < 1e-11 && scalar_residual < 1e-11,
            einstein_residual.max(scalar_residual),
        )
        .with_details(json!({
            "einstein_constant": pc_json(ParaComplex::new(-0.25, 0.0)),
            "scalar": pc_json(scalar),
        })),
    );

    // sectional curvature of right-invariant planes is constant
    let zeta: Vec<ParaComplex> = (0..m)
        .map(|a| ParaComplex::new(1.0 + 0.1 * a as f64, 0.05 * (a as f64 - 1.0)))
        .collect();
    let omega: Vec<ParaComplex> = (0..m)
        .map(|a| ParaComplex::new(0.2 - 0.15 * a as f64, 0.3 + 0.05 * a as f64))
        .collect();
    let mut sectional_values = Vec::new();
    for p in &samples {
        let lt = frame.inverse_at(p, EPS_INV).map_err(degenerate_or_schema)?;
        let field = |v: &[ParaComplex]| -> Vec<ParaComplex> {
            (0..m)
                .map(|a| {
                    let mut acc = ParaComplex::ZERO;
                    for q in 0..m {
                        acc += lt[(a, q)] * v[q];
                    }
                    acc
                })
                .collect()
        };
        let z = field(&zeta);
        let w = field(&omega);
        match lie_sectional_at(&alg, &frame, &z, &w, p, EPS_INV) {
            Ok(k) => sectional_values.push(k),
            Err(parageo::Error::DegeneratePlane) => {}
            Err(e) => return Err(degenerate_or_schema(e)),
        }
    }
    let spread = sectional_values
        .iter()
        .map(|v| (*v - sectional_values[0]).norm())
        .fold(0.0f64, f64::max);

    // the lowered closed form agrees with metric lowering through the pair
    // exchange symmetry
    let mut lowering_residual = 0.0f64;
    for p in &samples {
        let lowered = lie_lowered_at(&alg, &frame, p).map_err(degenerate_or_schema)?;
        let r = lie_curvature_at(&alg, &frame, p, EPS_INV).map_err(degenerate_or_schema)?;
        let g = lie_metric_at(&alg, &frame, p).map_err(degenerate_or_schema)?;
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    for dd in 0..m {
                        let mut acc = ParaComplex::ZERO;
                        for f in 0..m {
                            acc += g[(dd, f)] * r[[f, c, a, b]];
                        }
                        lowering_residual =
                            lowering_residual.max((lowered[[c, dd, a, b]] - acc).norm());
                    }
                }
            }
        }
    }
    checks.push(
        CheckEntry::new(
            "lie_lowered_and_sectional",
            !sectional_values.is_empty() && spread < 1e-6 && lowering_residual < 1e-9,
            spread.max(lowering_residual),
        )
        .with_details(json!({
            "sectional_spread": spread,
            "lowering_residual": lowering_residual,
            "planes_evaluated": sectional_values.len(),
        })),
    );

    let parallel = parageo::lie::parallel_curvature_residual(&alg, &frame, &samples, EPS_INV)
        .map_err(degenerate_or_schema)?;
    checks.push(CheckEntry::new(
        "parallel_curvature_check",
        parallel < 1e-6,
        parallel,
    ));

    // realization is Norden and Einstein with the real constant -1/4
    let realized = para_kahler_norden_realization(&alg, &frame).map_err(degenerate_or_schema)?;
    let norden = check_norden(&realized, std::slice::from_ref(&origin)).map_err(degenerate_or_schema)?;
    let real_geo = RealGeometry::at(&realized, &origin).map_err(degenerate_or_schema)?;
    let ric = real_geo.ricci();
    let mut oracle_residual = 0.0f64;
    for j in 0..2 * m {
        for k in 0..2 * m {
            oracle_residual =
                oracle_residual.max((ric[(j, k)] + 0.25 * real_geo.g[(j, k)]).abs());
        }
    }
    checks.push(
        CheckEntry::new(
            "para_kahler_norden_realization",
            norden.max_violation() < 1e-10 && oracle_residual < 1e-7,
            norden.max_violation().max(oracle_residual),
        )
        .with_details(json!({
            "norden_violation": norden.max_violation(),
            "real_ricci_vs_minus_quarter_g": oracle_residual,
        })),
    );

    Ok(checks)
}
