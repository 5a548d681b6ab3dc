//! Acceptance criteria 1–8. Each test prints one `criterion N: PASS|FAIL`
//! line before asserting.

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use hypersync::dynamics::{
    classify_cluster, simulate_discrete, sync_preservation_check, NodeDynamics, PreservationConfig,
};
use hypersync::hypergraph::{Hypergraph, WeightConfig, WeightPreset};
use hypersync::operator::{build_operator, spectrum, twin_eigenpair, unit_eigenpair};
use hypersync::stability::{
    contraction_stability_certificate, lyapunov_sigma, perturb_and_measure, BoundCheck,
    PerturbationConfig, PerturbationSpace, Verdict,
};
use hypersync::units::{contract, find_twins, find_units, twin_classes};
use hypersync::{samples, Error};
use rand::Rng;

fn report(n: usize, ok: bool, detail: &str, elapsed: Duration) {
    println!(
        "criterion {n}: {} ({detail}; {:.2}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
}

fn rel(x: f64, scale: f64) -> f64 {
    x.abs() / scale.max(1.0)
}

#[test]
fn criterion_1_operator_correctness() {
    let start = Instant::now();
    let mut rng = rng(101);
    let mut worst = 0.0f64;
    let mut simple_zero = true;
    for _ in 0..50 {
        let shape = random_connected(&mut rng, 2..=40, 1..=30, 6);
        let n = shape.n_vertices();
        let h = random_weights(&mut rng, &shape, 0.1, 10.0);
        let op = build_operator(&h);
        let dense = dense_operator(&h);
        let scale = dense.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let lx = op.apply(&x);
        let ly = op.apply(&y);
        let norm = |v: &[f64]| weighted_dot(&h, v, v).sqrt();
        let s = scale * norm(&x) * norm(&y);
        worst = worst.max(max_abs_diff(&lx, &apply_dense(&dense, &x)) / scale.max(1.0));
        worst = worst.max(rel(
            weighted_dot(&h, &lx, &y) - weighted_dot(&h, &x, &ly),
            s,
        ));
        let q = weighted_dot(&h, &lx, &x);
        worst = worst.max(rel(q.max(0.0), scale * norm(&x).powi(2)));
        let ones = vec![1.0; n];
        worst = worst.max(rel(
            weighted_dot(&h, &lx, &ones),
            scale * norm(&x) * norm(&ones),
        ));

        let spec = spectrum(&op).unwrap();
        let tol = 1e-9 * scale.max(1.0);
        let z0 = &spec.eigenvectors[0].0;
        let constant = z0.iter().all(|v| (v - z0[0]).abs() <= 1e-9 * z0[0].abs());
        let dense_eigs = schur_eigenvalues(&dense);
        simple_zero &= spec.eigenvalues[0].abs() <= tol
            && spec.eigenvalues[1] < -tol
            && dense_eigs[0].abs() <= tol
            && dense_eigs[1] < -tol
            && constant;
    }
    let ok = worst <= 1e-9 && simple_zero && start.elapsed().as_secs_f64() <= 10.0;
    report(
        1,
        ok,
        &format!("50 hypergraphs, worst relative residual {worst:.2e}, simple zero eigenvalue {simple_zero}"),
        start.elapsed(),
    );
    assert!(ok);
}

#[test]
fn criterion_2_unit_oracle() {
    let start = Instant::now();
    let mut rng = rng(202);
    let mut mismatches = 0;
    for _ in 0..200 {
        let h = random_connected(&mut rng, 2..=12, 1..=6, 5);
        if h.n_edges() > 6 {
            continue;
        }
        let found: BTreeSet<BTreeSet<usize>> = find_units(&h)
            .into_iter()
            .map(|u| u.members.into_iter().collect())
            .collect();
        if found != brute_force_units(&h) {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    let ok = mismatches == 0 && elapsed.as_secs_f64() <= 5.0;
    report(
        2,
        ok,
        &format!("200 hypergraphs, {mismatches} mismatches"),
        elapsed,
    );
    assert!(ok);
}

/// The corpus for criteria 3 and 4: unit-rich shapes with compatible
/// weights and general shapes with random weights.
fn corpus(seed: u64, count: usize) -> Vec<Hypergraph> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    for k in 0..count {
        let shape = unit_rich(&mut rng, 2..=5, &[1, 2, 3], 0..=2);
        out.push(if k % 2 == 0 {
            compatible_weights(&mut rng, &shape)
        } else {
            shape
        });
    }
    out
}

#[test]
fn criterion_3_analytic_eigenpairs() {
    let start = Instant::now();
    let mut hs = corpus(303, 40);
    let mut rng = rng(304);
    for _ in 0..20 {
        let shape = random_connected(&mut rng, 3..=15, 1..=8, 4);
        hs.push(random_weights(&mut rng, &shape, 0.5, 2.0));
    }
    hs.push(samples::h1());
    hs.push(samples::h5());

    let (mut units_checked, mut twins_checked) = (0, 0);
    let mut worst = 0.0f64;
    let mut all_found = true;
    for h in &hs {
        let op = build_operator(h);
        let dense = dense_operator(h);
        let spec = spectrum(&op).unwrap();
        let direct = schur_eigenvalues(&dense);
        let scale = dense.iter().fold(1.0f64, |a, v| a.max(v.abs()));
        let mut check = |lambda: f64, vectors: &[Vec<f64>]| {
            all_found &= spec.find(lambda).is_some()
                && direct.iter().any(|d| (d - lambda).abs() <= 1e-9 * scale);
            for y in vectors {
                let r: Vec<f64> = apply_dense(&dense, y)
                    .iter()
                    .zip(y)
                    .map(|(a, b)| a - lambda * b)
                    .collect();
                let ynorm = y.iter().map(|v| v.abs()).fold(0.0, f64::max);
                worst = worst.max(r.iter().map(|v| v.abs()).fold(0.0, f64::max) / (scale * ynorm));
            }
        };
        let units = find_units(h);
        for u in units.iter().filter(|u| u.len() >= 2) {
            let c = h.vertex_weight(u.members[0]);
            if !u.members.iter().all(|&v| h.vertex_weight(v) == c) {
                continue;
            }
            let formula = -u
                .generating_set
                .iter()
                .map(|&e| h.edge_weight(e) / (c * h.edges()[e].len() as f64))
                .sum::<f64>();
            let pair = unit_eigenpair(h, u).unwrap();
            assert!((pair.eigenvalue - formula).abs() <= 1e-12 * formula.abs().max(1.0));
            let vectors: Vec<Vec<f64>> = pair.vectors.into_iter().map(|v| v.0).collect();
            check(formula, &vectors);
            units_checked += 1;
        }
        for t in find_twins(h, &units).unwrap() {
            let members = t.members();
            let c = h.vertex_weight(members[0]);
            if !t.sigma_preserving || !members.iter().all(|&v| h.vertex_weight(v) == c) {
                continue;
            }
            let wi: BTreeSet<usize> = t.first.members.iter().copied().collect();
            let formula = -t
                .first
                .generating_set
                .iter()
                .map(|&e| {
                    let outside = h.edges()[e]
                        .members()
                        .iter()
                        .filter(|v| !wi.contains(v))
                        .count();
                    h.sigma(e) * outside as f64
                })
                .sum::<f64>()
                / c;
            let pair = twin_eigenpair(h, &t).unwrap();
            assert!((pair.eigenvalue - formula).abs() <= 1e-12 * formula.abs().max(1.0));
            let vectors: Vec<Vec<f64>> = pair.vectors.into_iter().map(|v| v.0).collect();
            check(formula, &vectors);
            twins_checked += 1;
        }
    }

    let h5 = spectrum(&build_operator(&samples::h5())).unwrap();
    let reference = [0.0, -2.0, -4.0, -4.0, -6.0, -8.0];
    let h5_ok = max_abs_diff(&h5.eigenvalues, &reference) <= 1e-9;

    let ok = all_found && worst <= 1e-9 && h5_ok && units_checked > 0 && twins_checked > 0;
    report(
        3,
        ok,
        &format!(
            "{units_checked} units, {twins_checked} twin pairs, worst residual {worst:.2e}, H5 spectrum {h5_ok}"
        ),
        start.elapsed(),
    );
    assert!(ok);
}

/// Qualifying clusters: units of size ≥ 2, twin pairs and twin classes that
/// pass the hypotheses check.
fn qualifying_clusters(h: &Hypergraph) -> Vec<Vec<usize>> {
    let units = find_units(h);
    let mut out: Vec<Vec<usize>> = units
        .iter()
        .filter(|u| u.len() >= 2)
        .map(|u| u.members.clone())
        .collect();
    for t in find_twins(h, &units).unwrap() {
        out.push(t.members());
    }
    for class in twin_classes(h).unwrap() {
        out.push(class.members());
    }
    out.sort();
    out.dedup();
    out.retain(|c| classify_cluster(h, c).is_ok());
    out
}

/// Logistic maps leave `[0, 1]` unless `I + ε𝔏` has nonnegative diagonal;
/// otherwise use the normalized weights, whose diagonal is `−1`.
fn logistic_safe(h: &Hypergraph, eps: f64) -> Hypergraph {
    let op = build_operator(h);
    let diag = (0..op.dim())
        .map(|v| op.matrix[(v, v)].abs())
        .fold(0.0, f64::max);
    if eps * diag <= 1.0 {
        h.clone()
    } else {
        h.with_preset(WeightPreset::NORMALIZED)
    }
}

#[test]
fn criterion_4_sync_preservation() {
    let start = Instant::now();
    let mut hs = vec![samples::h1(), samples::h5()];
    let mut rng = rng(404);
    while hs.len() < 22 {
        let shape = unit_rich(&mut rng, 2..=4, &[1, 2, 3], 1..=2);
        hs.push(compatible_weights(&mut rng, &shape));
    }
    let (mut discrete_worst, mut continuous_worst) = (0.0f64, 0.0f64);
    let (mut runs, mut failures) = (0, 0);
    for (k, h) in hs.iter().enumerate() {
        for eps in [0.1, 0.3] {
            let hl = logistic_safe(h, eps);
            for cluster in qualifying_clusters(&hl) {
                let cfg = PreservationConfig::discrete(eps, 2, 1000, 40 + k as u64);
                match sync_preservation_check(&hl, &cluster, &NodeDynamics::logistic(4.0), &cfg) {
                    Ok(v) => discrete_worst = discrete_worst.max(v.max_spread),
                    Err(e) => {
                        eprintln!("discrete run failed: {e}");
                        failures += 1;
                    }
                }
                runs += 1;
            }
        }
        for cluster in qualifying_clusters(h) {
            let cfg = PreservationConfig::continuous(0.3, 1, 10.0, 1e-3, 80 + k as u64);
            match sync_preservation_check(h, &cluster, &NodeDynamics::tanh(), &cfg) {
                Ok(v) => continuous_worst = continuous_worst.max(v.max_spread),
                Err(e) => {
                    eprintln!("continuous run failed: {e}");
                    failures += 1;
                }
            }
            runs += 1;
        }
    }
    let elapsed = start.elapsed();
    let ok = failures == 0
        && discrete_worst <= 1e-9
        && continuous_worst <= 1e-7
        && elapsed.as_secs_f64() <= 60.0;
    report(
        4,
        ok,
        &format!(
            "{runs} runs on 22 hypergraphs, max spread discrete {discrete_worst:.2e}, continuous {continuous_worst:.2e}"
        ),
        elapsed,
    );
    assert!(ok);
}

#[test]
fn criterion_5_linear_stability_oracle() {
    let start = Instant::now();
    let cases: Vec<(Hypergraph, Vec<usize>)> = vec![
        (samples::h1(), vec![0, 1]),
        (samples::h1(), vec![3, 4]),
        (samples::h5(), vec![0, 1]),
        (samples::h5(), vec![0, 1, 2, 3]),
        (samples::h5(), vec![4, 5]),
    ];
    let (mut compared, mut worst_rel) = (0, 0.0f64);
    let (mut bound_points, mut unsound) = (0, 0);
    for (h, cluster) in &cases {
        let spec = spectrum(&build_operator(h)).unwrap();
        let cluster_lambdas = hypersync::stability::cluster_stability(
            h,
            cluster,
            &NodeDynamics::linear(1.0, 0.0),
            0.1,
            hypersync::stability::Model::Discrete,
        )
        .unwrap()
        .eigenvalues;
        for alpha in [0.5, 1.0, 1.5] {
            for beta in [-0.5, 0.0, 0.3, 0.8] {
                for eps in [0.05, 0.1, 0.2] {
                    let dyn_ = NodeDynamics::linear(alpha, beta);
                    for i in 0..spec.len() {
                        let expected = (beta + eps * spec.eigenvalues[i] * alpha).abs();
                        if !(0.5..=1.5).contains(&expected) {
                            continue;
                        }
                        let mut cfg = PerturbationConfig::new(eps, 30, 7);
                        cfg.space = PerturbationSpace::Eigendirection(i);
                        let zero = vec![0.0; h.n_vertices()];
                        let (_, result) =
                            perturb_and_measure(h, cluster, &dyn_, &cfg, Some(&zero)).unwrap();
                        let rate = result.rates.iter().find(|r| r.direction == i).unwrap();
                        worst_rel = worst_rel.max((rate.ratio - expected).abs() / expected);
                        compared += 1;
                    }

                    let checks: Vec<BoundCheck> = cluster_lambdas
                        .iter()
                        .map(|e| BoundCheck::discrete(e.value, &dyn_, eps))
                        .collect();
                    if checks.iter().all(|c| c.pass) {
                        bound_points += 1;
                        let mut cfg = PerturbationConfig::new(eps, 30, 11);
                        cfg.space = PerturbationSpace::ClusterTangent;
                        let (_, result) =
                            perturb_and_measure(h, cluster, &dyn_, &cfg, None).unwrap();
                        if !(result.decaying && result.rates.iter().all(|r| r.ratio < 1.0)) {
                            unsound += 1;
                        }
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = compared > 0
        && worst_rel <= 1e-6
        && bound_points > 0
        && unsound == 0
        && elapsed.as_secs_f64() <= 30.0;
    report(
        5,
        ok,
        &format!(
            "{compared} ratios, worst relative error {worst_rel:.2e}; {bound_points} bound-pass points, {unsound} without decay"
        ),
        elapsed,
    );
    assert!(ok);
}

/// Equal-cardinality hypergraph with weights meeting the certificate's
/// hypotheses.
fn certificate_instance(rng: &mut rand_chacha::ChaCha8Rng) -> Hypergraph {
    let c = rng.gen_range(1..=3);
    let shape = unit_rich(rng, 2..=4, &[c], 0..=2);
    let h = compatible_weights(rng, &shape);
    let units = find_units(&h);
    let all_preserving = find_twins(&h, &units)
        .unwrap()
        .iter()
        .all(|t| t.sigma_preserving);
    if all_preserving {
        return h;
    }
    let s = rng.gen_range(0.5..=2.0);
    h.with_weights(WeightConfig {
        vertex_weight: h.weights().vertex_weight.clone(),
        edge_weight: h
            .edges()
            .iter()
            .map(|e| s * (e.len() * e.len()) as f64)
            .collect(),
    })
    .unwrap()
}

/// Assembled multiset built directly from `Ĥ`, the unit eigenvalue formula
/// and the dense Schur spectrum of `𝔏_Ĥ`.
fn assembled_independently(h: &Hypergraph) -> Vec<f64> {
    let units = find_units(h);
    let c = units[0].len() as f64;
    let contraction = contract(h, 1.0, 1.0).unwrap();
    let mut out: Vec<f64> = schur_eigenvalues(&dense_operator(&contraction.quotient))
        .into_iter()
        .map(|l| c * l)
        .collect();
    for u in &units {
        let dv = h.vertex_weight(u.members[0]);
        let b = -u
            .generating_set
            .iter()
            .map(|&e| h.edge_weight(e) / (dv * h.edges()[e].len() as f64))
            .sum::<f64>();
        out.extend(std::iter::repeat_n(b, u.len() - 1));
    }
    out
}

#[test]
fn criterion_6_contraction_certificate() {
    let start = Instant::now();
    let mut rng = rng(606);
    let mut instances = vec![samples::h5()];
    while instances.len() < 11 {
        let h = certificate_instance(&mut rng);
        if find_units(&h).len() >= 2 {
            instances.push(h);
        }
    }
    let mut matched = 0;
    let dyn_ = NodeDynamics::linear(1.0, 0.0);
    for h in &instances {
        let direct = schur_eigenvalues(&dense_operator(h));
        let scale = direct.iter().fold(1.0f64, |a, v| a.max(v.abs()));
        let ours = assembled_independently(h);
        let cert = contraction_stability_certificate(h, &dyn_, 0.01, 1.0, 1.0);
        let listed: Option<Vec<f64>> = cert
            .as_ref()
            .ok()
            .map(|r| r.eigenvalues.iter().map(|e| e.value).collect());
        if multiset_close(&ours, &direct, 1e-9 * scale)
            && listed.is_some_and(|l| multiset_close(&l, &direct, 1e-9 * scale))
        {
            matched += 1;
        }
    }
    let h5_verdict =
        contraction_stability_certificate(&samples::h5(), &dyn_, 0.1, 1.0, 1.0).map(|r| r.verdict);

    let mut violations = vec![samples::h1()];
    let h5 = samples::h5();
    violations.push(h5.with_vertex_weight("1", 2.0).unwrap());
    violations.push(h5.with_edge_weight("e1", 3.0).unwrap());
    for _ in 0..5 {
        let shape = unit_rich(&mut rng, 3..=3, &[1, 2], 1..=1);
        violations.push(random_weights(&mut rng, &shape, 0.5, 2.0));
    }
    let mut hypotheses = 0;
    let mut mismatches = 0;
    for h in &violations {
        match contraction_stability_certificate(h, &dyn_, 0.1, 1.0, 1.0) {
            Err(Error::HypothesesNotMet(_)) => hypotheses += 1,
            Err(Error::SpectrumMismatch(_)) => mismatches += 1,
            _ => {}
        }
    }
    let elapsed = start.elapsed();
    let ok = matched == instances.len()
        && h5_verdict.ok() == Some(Verdict::CertifiedStable)
        && hypotheses >= 3
        && mismatches == 0
        && elapsed.as_secs_f64() <= 10.0;
    report(
        6,
        ok,
        &format!(
            "{matched}/{} multisets match, {hypotheses}/{} violations rejected by hypotheses, {mismatches} spectrum mismatches",
            instances.len(),
            violations.len()
        ),
        elapsed,
    );
    assert!(ok);
}

#[test]
fn criterion_7_lyapunov_fixed_point() {
    let start = Instant::now();
    let dyn_ = NodeDynamics::logistic(4.0);
    let mut worst = 0.0f64;
    let mut directions = 0;
    for h in [samples::h1(), samples::h5()] {
        let op = build_operator(&h);
        let spec = spectrum(&op).unwrap();
        let all: Vec<usize> = (0..h.n_vertices()).collect();
        for eps in [0.1, 0.3] {
            let x0 = vec![0.75; h.n_vertices()];
            let traj = simulate_discrete(&op, &dyn_, eps, &x0, 1000, 1).unwrap();
            for i in 0..spec.len() {
                let est = lyapunov_sigma(&traj, &all, &spec, &dyn_, eps, i, 1e-12).unwrap();
                let expected = (2.0 * (1.0 + eps * spec.eigenvalues[i]).abs()).ln();
                for t in 10..=1000 {
                    worst = worst.max((est.sigma[t - 1] - expected).abs());
                }
                directions += 1;
            }
        }
    }
    let ok = worst <= 1e-9;
    report(
        7,
        ok,
        &format!("{directions} directions, worst deviation {worst:.2e}"),
        start.elapsed(),
    );
    assert!(ok);
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_hypersync"))
        .args(args)
        .output()
        .unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

#[test]
fn criterion_8_cli_reproducibility() {
    let start = Instant::now();
    let h1 = data("h1.json");
    let h1 = h1.to_str().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let mut identical = true;
    let invocations: Vec<Vec<&str>> = vec![
        vec!["units", "-i", h1],
        vec!["twins", "-i", h1],
        vec!["spectrum", "-i", h1],
        vec![
            "simulate",
            "-i",
            h1,
            "--mode",
            "discrete",
            "--dynamics",
            "logistic:4",
            "--eps",
            "0.1",
            "--steps",
            "200",
            "--seed",
            "5",
            "--cluster",
            "1,2",
        ],
        vec![
            "stability",
            "-i",
            h1,
            "--dynamics",
            "logistic:4",
            "--eps",
            "0.1",
            "--cluster",
            "1,2",
            "--perturb",
            "--seed",
            "5",
        ],
    ];
    for args in &invocations {
        let (c1, a) = run_cli(args);
        let (c2, b) = run_cli(args);
        identical &= c1 == 0 && c2 == 0 && a == b && !a.is_empty();
    }
    let outputs: Vec<String> = (0..2)
        .map(|k| {
            let path = dir.path().join(format!("eig{k}.csv"));
            let p = path.to_str().unwrap().to_string();
            assert_eq!(run_cli(&["spectrum", "-i", h1, "-o", &p]).0, 0);
            std::fs::read_to_string(path).unwrap()
        })
        .collect();
    identical &= outputs[0] == outputs[1];

    let mut golden_ok = true;
    for name in ["h1", "h5"] {
        let input = data(&format!("{name}.json"));
        let input = input.to_str().unwrap();
        for (cmd, file, extra) in [
            ("units", format!("units_{name}.json"), vec![]),
            ("spectrum", format!("spectrum_{name}.csv"), vec![]),
            (
                "contract",
                format!("contract_{name}.json"),
                vec!["--cv", "1", "--ce", "1"],
            ),
        ] {
            let mut args = vec![cmd, "-i", input];
            args.extend(extra);
            let (code, out) = run_cli(&args);
            golden_ok &= code == 0 && String::from_utf8(out).unwrap() == golden(&file);
        }
    }
    let elapsed = start.elapsed();
    let ok = identical && golden_ok;
    report(
        8,
        ok,
        &format!("byte-identical reruns {identical}, golden files {golden_ok}"),
        elapsed,
    );
    assert!(ok);
}

/// The golden files were produced by the tool; their numbers are checked
/// here against hand-derived values.
#[test]
fn golden_files_hold_expected_values() {
    let csv = |s: String| -> Vec<f64> {
        s.lines()
            .filter(|l| !l.starts_with('#') && !l.starts_with("index"))
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect()
    };
    // two triangles sharing vertex 3 with σ ≡ 1: the bowtie graph Laplacian
    assert_eq!(
        csv(golden("spectrum_h1.csv")),
        vec![0.0, -1.0, -3.0, -3.0, -5.0]
    );
    assert_eq!(
        csv(golden("spectrum_h5.csv")),
        vec![0.0, -2.0, -4.0, -4.0, -6.0, -8.0]
    );

    let units: serde_json::Value = serde_json::from_str(&golden("units_h1.json")).unwrap();
    let members: Vec<Vec<String>> = units["result"]["units"]
        .as_array()
        .unwrap()
        .iter()
        .map(|u| serde_json::from_value(u["members"].clone()).unwrap())
        .collect();
    assert_eq!(members, vec![vec!["1", "2"], vec!["3"], vec!["4", "5"]]);
    let units: serde_json::Value = serde_json::from_str(&golden("units_h5.json")).unwrap();
    assert_eq!(units["result"]["units"].as_array().unwrap().len(), 3);

    let contract: serde_json::Value = serde_json::from_str(&golden("contract_h5.json")).unwrap();
    let q = &contract["result"]["quotient"];
    assert_eq!(q["vertices"], serde_json::json!(["u1_2", "u3_4", "u5_6"]));
    for e in q["edges"].as_array().unwrap() {
        // σ̂ = 1 on a two-vertex quotient edge
        assert_eq!(e["delta"], serde_json::json!(4.0));
    }
    let contract: serde_json::Value = serde_json::from_str(&golden("contract_h1.json")).unwrap();
    assert_eq!(
        contract["result"]["contraction"]["vertex_map"]["3"],
        serde_json::json!("u3")
    );
}
