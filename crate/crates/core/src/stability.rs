//! Stability of cluster synchronization under small perturbations.
//!
//! A perturbation `η_t = y_t − x_t` of a synchronized trajectory is tracked
//! through its components `η_t^i = (η_t, z_i)_V` along the eigenvectors of
//! `𝔏`. Linearizing the discrete model gives
//! `η_{t+1}^i ≈ (g′(c_t) + ελ_i f′(c_t)) η_t^i`, which yields:
//!
//! * bound checks on the analytic unit and twin eigenvalues,
//!   discrete `sup g′ + ε|λ| sup f′ < 1`, continuous `sup g′ + ελ sup f′ < 0`;
//! * Lyapunov estimates `σ_i(t) = (1/t) Σ_s log|g′(c_s) + ελ_i f′(c_s)|`;
//! * an empirical perturbation experiment;
//! * a full-synchronization certificate assembled from the contraction.
//!
//! Stored eigenvalues are eigenvalues of `𝔏` (nonpositive); every check
//! records both the signed value and its magnitude.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dynamics::{
    classify_cluster, constant_on_cluster, simulate_discrete, spread, ClusterKind, NodeDynamics,
    Trajectory,
};
use crate::error::{Error, Result};
use crate::hypergraph::{close_rel, Hypergraph};
use crate::operator::{
    build_operator, spectrum, twin_eigenvalue, unit_eigenvalue, Provenance, Spectrum,
};
use crate::units::{contract, find_twins, find_units, twin_classes, unit_of, TwinPair, Unit};

/// Magnitudes below this are treated as the floating-point floor when fitting
/// decay rates.
pub const COMPONENT_FLOOR: f64 = 1e-14;
/// Growth factor over the window that counts as empirical instability.
pub const GROWTH_LIMIT: f64 = 10.0;
/// Tolerance for the certificate's multiset comparison.
pub const MULTISET_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    CertifiedStable,
    NotCertified,
    EmpiricallyUnstable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Discrete,
    Continuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenvalueEntry {
    pub value: f64,
    pub magnitude: f64,
    pub provenance: Provenance,
}

impl EigenvalueEntry {
    fn new(value: f64, provenance: Provenance) -> Self {
        EigenvalueEntry {
            value,
            magnitude: value.abs(),
            provenance,
        }
    }
}

/// One inequality `lhs < rhs` evaluated at one eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    pub model: Model,
    pub lambda: f64,
    pub magnitude: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
    /// `sup f′ = 0`: the coupling drops out and only `sup g′` matters.
    pub degenerate: bool,
}

impl BoundCheck {
    fn new(model: Model, lambda: f64, lhs: f64, rhs: f64, dyn_: &NodeDynamics) -> Self {
        BoundCheck {
            model,
            lambda,
            magnitude: lambda.abs(),
            lhs,
            rhs,
            margin: rhs - lhs,
            pass: lhs < rhs,
            degenerate: dyn_.sup_f_prime == 0.0,
        }
    }

    /// `sup g′ + ε|λ| sup f′ < 1`
    pub fn discrete(lambda: f64, dyn_: &NodeDynamics, eps: f64) -> Self {
        let lhs = dyn_.sup_g_prime + eps * lambda.abs() * dyn_.sup_f_prime;
        Self::new(Model::Discrete, lambda, lhs, 1.0, dyn_)
    }

    /// `sup g′ + ελ sup f′ < 0` with `λ = −|λ|`
    pub fn continuous(lambda: f64, dyn_: &NodeDynamics, eps: f64) -> Self {
        let lhs = dyn_.sup_g_prime - eps * lambda.abs() * dyn_.sup_f_prime;
        Self::new(Model::Continuous, lambda, lhs, 0.0, dyn_)
    }

    /// Two-sided signed form `|sup g′ + ελ sup f′| < 1`.
    pub fn discrete_signed(lambda: f64, dyn_: &NodeDynamics, eps: f64) -> Self {
        let lhs = (dyn_.sup_g_prime + eps * lambda * dyn_.sup_f_prime).abs();
        Self::new(Model::Discrete, lambda, lhs, 1.0, dyn_)
    }

    pub fn for_model(model: Model, lambda: f64, dyn_: &NodeDynamics, eps: f64) -> Self {
        match model {
            Model::Discrete => Self::discrete(lambda, dyn_, eps),
            Model::Continuous => Self::continuous(lambda, dyn_, eps),
        }
    }
}

/// Bound checks over the eigenvalues attached to one cluster.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub cluster: Vec<String>,
    pub eigenvalues: Vec<EigenvalueEntry>,
    pub checks: Vec<BoundCheck>,
    pub pass: bool,
}

impl BoundReport {
    fn build(
        cluster: Vec<String>,
        eigenvalues: Vec<EigenvalueEntry>,
        model: Model,
        dyn_: &NodeDynamics,
        eps: f64,
    ) -> Self {
        let checks: Vec<BoundCheck> = eigenvalues
            .iter()
            .map(|e| BoundCheck::for_model(model, e.value, dyn_, eps))
            .collect();
        BoundReport {
            cluster,
            pass: checks.iter().all(|c| c.pass),
            eigenvalues,
            checks,
        }
    }

    /// The check with the smallest margin.
    pub fn worst(&self) -> Option<&BoundCheck> {
        self.checks
            .iter()
            .min_by(|a, b| a.margin.total_cmp(&b.margin))
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "coupling strength must lie in (0, 1), got {eps}"
        )))
    }
}

fn unit_report(
    h: &Hypergraph,
    unit: &Unit,
    dyn_: &NodeDynamics,
    eps: f64,
    model: Model,
) -> Result<BoundReport> {
    check_eps(eps)?;
    let b = unit_eigenvalue(h, unit)?;
    Ok(BoundReport::build(
        h.labels(&unit.members),
        vec![EigenvalueEntry::new(b, Provenance::Unit)],
        model,
        dyn_,
        eps,
    ))
}

/// Discrete bound on the unit eigenvalue `−Σ_{e∈E₀} δ_E(e)/(c|e|)`.
pub fn discrete_unit_stability(
    h: &Hypergraph,
    unit: &Unit,
    dyn_: &NodeDynamics,
    eps: f64,
) -> Result<BoundReport> {
    unit_report(h, unit, dyn_, eps, Model::Discrete)
}

/// Continuous bound on the unit eigenvalue.
pub fn continuous_unit_stability(
    h: &Hypergraph,
    unit: &Unit,
    dyn_: &NodeDynamics,
    eps: f64,
) -> Result<BoundReport> {
    unit_report(h, unit, dyn_, eps, Model::Continuous)
}

/// The three eigenvalues attached to a twin pair: the cross-cluster one and
/// the two unit eigenvalues. Requires σ-preservation, constant `δ_V` on the
/// union and a single `σ` value on both generating sets.
pub fn twin_pair_eigenvalues(h: &Hypergraph, pair: &TwinPair) -> Result<Vec<EigenvalueEntry>> {
    if !pair.sigma_preserving {
        return Err(Error::NotSigmaPreserving(
            h.labels(&pair.first.members),
            h.labels(&pair.second.members),
        ));
    }
    let members = pair.members();
    if !h.vertex_weight_constant_on(&members) {
        return Err(Error::NonConstantVertexWeight(h.labels(&members)));
    }
    let generating: Vec<usize> = pair
        .first
        .generating_set
        .iter()
        .chain(&pair.second.generating_set)
        .copied()
        .collect();
    let w = h.sigma(generating[0]);
    if !generating
        .iter()
        .all(|&e| close_rel(h.sigma(e), w, crate::units::SIGMA_RTOL))
    {
        return Err(Error::NonConstantSigma(
            h.labels(&pair.first.members),
            h.labels(&pair.second.members),
        ));
    }
    Ok(vec![
        EigenvalueEntry::new(twin_eigenvalue(h, pair)?, Provenance::Twin),
        EigenvalueEntry::new(unit_eigenvalue(h, &pair.first)?, Provenance::Unit),
        EigenvalueEntry::new(unit_eigenvalue(h, &pair.second)?, Provenance::Unit),
    ])
}

fn twin_report(
    h: &Hypergraph,
    pair: &TwinPair,
    dyn_: &NodeDynamics,
    eps: f64,
    model: Model,
) -> Result<BoundReport> {
    check_eps(eps)?;
    let eigenvalues = twin_pair_eigenvalues(h, pair)?;
    Ok(BoundReport::build(
        h.labels(&pair.members()),
        eigenvalues,
        model,
        dyn_,
        eps,
    ))
}

/// Discrete bounds on all three twin-pair eigenvalues.
pub fn discrete_twin_stability(
    h: &Hypergraph,
    pair: &TwinPair,
    dyn_: &NodeDynamics,
    eps: f64,
) -> Result<BoundReport> {
    twin_report(h, pair, dyn_, eps, Model::Discrete)
}

/// Continuous bounds on all three twin-pair eigenvalues.
pub fn continuous_twin_stability(
    h: &Hypergraph,
    pair: &TwinPair,
    dyn_: &NodeDynamics,
    eps: f64,
) -> Result<BoundReport> {
    twin_report(h, pair, dyn_, eps, Model::Continuous)
}

/// Bound report for any synchronization-preserving cluster: a subset of a
/// unit, or a union of pairwise σ-preserving twin units (all pairs checked,
/// duplicate eigenvalues merged).
pub fn cluster_stability(
    h: &Hypergraph,
    cluster: &[usize],
    dyn_: &NodeDynamics,
    eps: f64,
    model: Model,
) -> Result<BoundReport> {
    let mut cluster = cluster.to_vec();
    cluster.sort_unstable();
    cluster.dedup();
    let kind = classify_cluster(h, &cluster)?;
    let units = find_units(h);
    let mut touched: Vec<usize> = cluster
        .iter()
        .map(|&v| unit_of(&units, v).expect("units partition V"))
        .collect();
    touched.sort_unstable();
    touched.dedup();
    match kind {
        ClusterKind::Unit => {
            let mut r = unit_report(h, &units[touched[0]], dyn_, eps, model)?;
            r.cluster = h.labels(&cluster);
            Ok(r)
        }
        ClusterKind::Whole => Err(Error::InvalidParameter(
            "use the contraction certificate for the whole vertex set".into(),
        )),
        ClusterKind::TwinUnion | ClusterKind::TwinClass => {
            check_eps(eps)?;
            let mut eigenvalues: Vec<EigenvalueEntry> = Vec::new();
            let pairs = find_twins(h, &units)?;
            for p in &pairs {
                let (i, j) = (
                    units.iter().position(|u| *u == p.first).expect("unit"),
                    units.iter().position(|u| *u == p.second).expect("unit"),
                );
                if !(touched.contains(&i) && touched.contains(&j)) {
                    continue;
                }
                for e in twin_pair_eigenvalues(h, p)? {
                    let dup = eigenvalues.iter().any(|x| {
                        x.provenance == e.provenance && close_rel(x.value, e.value, 1e-12)
                    });
                    if !dup {
                        eigenvalues.push(e);
                    }
                }
            }
            Ok(BoundReport::build(
                h.labels(&cluster),
                eigenvalues,
                model,
                dyn_,
                eps,
            ))
        }
    }
}

/// `η_t^i = (y_t − x_t, z_i)_V` for every record `t` and direction `i`.
pub fn eta_components(
    spectrum: &Spectrum,
    base: &Trajectory,
    perturbed: &Trajectory,
) -> Result<Vec<Vec<f64>>> {
    if base.len() != perturbed.len()
        || base
            .states
            .iter()
            .zip(&perturbed.states)
            .any(|(a, b)| a.time != b.time || a.state.len() != b.state.len())
    {
        return Err(Error::TimeGridMismatch);
    }
    Ok(base
        .states
        .iter()
        .zip(&perturbed.states)
        .map(|(x, y)| {
            let eta: Vec<f64> = y
                .state
                .0
                .iter()
                .zip(&x.state.0)
                .map(|(a, b)| a - b)
                .collect();
            spectrum.components(&eta)
        })
        .collect())
}

/// Running Lyapunov estimate along one eigendirection.
#[derive(Debug, Clone, Serialize)]
pub struct LyapunovEstimate {
    pub direction: usize,
    pub lambda: f64,
    /// `σ_i(t)` for `t = 1, …, T`.
    pub sigma: Vec<f64>,
    /// Trailing-half mean of the per-step terms.
    pub sigma_infinity: f64,
    /// For `f = g`: the trailing-half estimate of `σ∞` for the uncoupled map.
    pub sigma_map: Option<f64>,
    /// For `f = g`: `(−(e^{−σ∞}+1)/ε, (e^{−σ∞}−1)/ε)`.
    pub interval: Option<(f64, f64)>,
    /// Some derivative factor was exactly zero.
    pub log_of_zero: bool,
    pub verdict: Verdict,
}

fn trailing_mean(terms: &[f64]) -> f64 {
    let tail = &terms[terms.len() / 2..];
    tail.iter().sum::<f64>() / tail.len() as f64
}

/// `σ_i(t) = (1/t) Σ_{s<t} log|g′(c_s) + ελ_i f′(c_s)|` along the
/// synchronized orbit `c_t` of `cluster`.
///
/// The trajectory must be discrete with every step recorded. For `f = g` the
/// verdict is the interval test on `λ_i`, otherwise the sign of the
/// trailing-window estimate.
pub fn lyapunov_sigma(
    traj: &Trajectory,
    cluster: &[usize],
    spectrum: &Spectrum,
    dyn_: &NodeDynamics,
    eps: f64,
    i: usize,
    tol: f64,
) -> Result<LyapunovEstimate> {
    if traj.len() < 2 {
        return Err(Error::InvalidParameter(
            "need at least one step for a Lyapunov estimate".into(),
        ));
    }
    if traj
        .states
        .iter()
        .enumerate()
        .any(|(k, s)| s.time != k as f64)
    {
        return Err(Error::InvalidParameter(
            "Lyapunov estimates need a discrete trajectory with every step recorded".into(),
        ));
    }
    if i >= spectrum.len() {
        return Err(Error::InvalidParameter(format!(
            "eigendirection {i} out of range"
        )));
    }
    let lambda = spectrum.eigenvalues[i];
    let steps = traj.len() - 1;
    let mut orbit = Vec::with_capacity(steps);
    for s in &traj.states[..steps] {
        let sp = spread(&s.state.0, cluster);
        if sp > tol {
            return Err(Error::NotSynchronized {
                time: s.time,
                spread: sp,
            });
        }
        orbit.push(s.state.0[cluster[0]]);
    }
    let terms: Vec<f64> = orbit
        .iter()
        .map(|&c| {
            (dyn_.g_prime(c) + eps * lambda * dyn_.f_prime(c))
                .abs()
                .ln()
        })
        .collect();
    let log_of_zero = terms.contains(&f64::NEG_INFINITY);
    let mut sigma = Vec::with_capacity(steps);
    let mut acc = 0.0;
    for (t, term) in terms.iter().enumerate() {
        acc += term;
        sigma.push(acc / (t + 1) as f64);
    }
    let sigma_infinity = trailing_mean(&terms);
    let (sigma_map, interval, verdict) = if dyn_.f == dyn_.g {
        let map_terms: Vec<f64> = orbit.iter().map(|&c| dyn_.f_prime(c).abs().ln()).collect();
        let s = trailing_mean(&map_terms);
        let lo = -((-s).exp() + 1.0) / eps;
        let hi = ((-s).exp() - 1.0) / eps;
        let inside = lambda > lo && lambda < hi;
        (
            Some(s),
            Some((lo, hi)),
            if inside {
                Verdict::CertifiedStable
            } else {
                Verdict::NotCertified
            },
        )
    } else {
        let v = if sigma_infinity < 0.0 {
            Verdict::CertifiedStable
        } else {
            Verdict::NotCertified
        };
        (None, None, v)
    };
    Ok(LyapunovEstimate {
        direction: i,
        lambda,
        sigma,
        sigma_infinity,
        sigma_map,
        interval,
        log_of_zero,
        verdict,
    })
}

/// Where the initial perturbation lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PerturbationSpace {
    /// Random zero-sum vector supported on the cluster.
    ClusterTangent,
    /// Random vector on all vertices.
    Full,
    /// The `i`-th eigenvector.
    Eigendirection(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerturbationConfig {
    pub eps: f64,
    /// `‖η_0‖_V`
    pub delta: f64,
    pub steps: usize,
    pub seed: u64,
    pub space: PerturbationSpace,
}

impl PerturbationConfig {
    pub fn new(eps: f64, steps: usize, seed: u64) -> Self {
        PerturbationConfig {
            eps,
            delta: 1e-6,
            steps,
            seed,
            space: PerturbationSpace::ClusterTangent,
        }
    }
}

/// Base and perturbed runs with the perturbation decomposed along the
/// eigenvectors.
#[derive(Debug, Clone)]
pub struct PerturbationRun {
    pub base: Trajectory,
    pub perturbed: Trajectory,
    pub eigenvalues: Vec<f64>,
    pub eta_components: Vec<Vec<f64>>,
}

/// Fitted per-step ratio along one eigendirection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateEntry {
    pub direction: usize,
    pub lambda: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EmpiricalResult {
    pub rates: Vec<RateEntry>,
    /// `‖η_T‖_V / ‖η_0‖_V`
    pub growth: f64,
    /// Every fitted ratio is below one.
    pub decaying: bool,
    pub verdict: Verdict,
}

/// Per-step ratio `exp(slope)` of a least-squares fit of `log|η_t|` against
/// `t`. The fit uses the trailing half of the window before the series first
/// drops below [`COMPONENT_FLOOR`]; a series that drops within two records
/// gets the single ratio across the drop.
pub fn fit_ratio(series: &[f64]) -> Option<f64> {
    let live = series
        .iter()
        .position(|v| v.abs() <= COMPONENT_FLOOR || !v.is_finite())
        .unwrap_or(series.len());
    let start = live / 2;
    let pts: Vec<(f64, f64)> = series[start..live]
        .iter()
        .enumerate()
        .map(|(k, v)| ((start + k) as f64, v.abs().ln()))
        .collect();
    if pts.len() < 2 {
        // annihilated within a step or two: report the ratio at the drop
        return (live >= 1 && live < series.len() && series[live - 1] != 0.0)
            .then(|| series[live].abs() / series[live - 1].abs());
    }
    let n = pts.len() as f64;
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mt).powi(2)).sum();
    Some((sxy / sxx).exp())
}

/// Run a synchronized base trajectory and a perturbed copy with the
/// discrete model, and measure how the perturbation evolves.
///
/// `base_x0` defaults to a seeded random state constant on the cluster.
/// Directions whose initial component is below `1e-3 · delta` are not fitted.
pub fn perturb_and_measure(
    h: &Hypergraph,
    cluster: &[usize],
    dyn_: &NodeDynamics,
    config: &PerturbationConfig,
    base_x0: Option<&[f64]>,
) -> Result<(PerturbationRun, EmpiricalResult)> {
    if config.delta < 0.0 || !config.delta.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "delta must be nonnegative, got {}",
            config.delta
        )));
    }
    let n = h.n_vertices();
    let op = build_operator(h);
    let spec = spectrum(&op)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let x0 = match base_x0 {
        Some(x) => x.to_vec(),
        None => {
            let (lo, hi) = dyn_.sample_range();
            let value = rng.gen_range(lo..=hi);
            constant_on_cluster(dyn_, n, cluster, value, &mut rng)
        }
    };
    let mut p = match config.space {
        PerturbationSpace::Eigendirection(i) => spec
            .eigenvectors
            .get(i)
            .ok_or_else(|| Error::InvalidParameter(format!("eigendirection {i} out of range")))?
            .0
            .clone(),
        PerturbationSpace::Full => (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect(),
        PerturbationSpace::ClusterTangent => {
            if cluster.len() < 2 {
                return Err(Error::ClusterTooSmall(h.labels(cluster)));
            }
            let mut p = vec![0.0; n];
            for &v in cluster {
                p[v] = rng.gen_range(-1.0..=1.0);
            }
            let mean = cluster.iter().map(|&v| p[v]).sum::<f64>() / cluster.len() as f64;
            for &v in cluster {
                p[v] -= mean;
            }
            p
        }
    };
    let norm = op.norm(&p);
    if norm > 0.0 {
        p.iter_mut().for_each(|x| *x *= config.delta / norm);
    }
    let y0: Vec<f64> = x0.iter().zip(&p).map(|(a, b)| a + b).collect();
    let base = simulate_discrete(&op, dyn_, config.eps, &x0, config.steps, 1)?;
    let perturbed = simulate_discrete(&op, dyn_, config.eps, &y0, config.steps, 1)?;
    let eta = eta_components(&spec, &base, &perturbed)?;

    let eta_norm = |k: usize| {
        let d: Vec<f64> = perturbed.states[k]
            .state
            .0
            .iter()
            .zip(&base.states[k].state.0)
            .map(|(a, b)| a - b)
            .collect();
        op.norm(&d)
    };
    let (first, last) = (eta_norm(0), eta_norm(base.len() - 1));
    let growth = if first > 0.0 { last / first } else { 0.0 };
    let rates: Vec<RateEntry> = (0..spec.len())
        .filter(|&i| eta[0][i].abs() >= 1e-3 * config.delta && config.delta > 0.0)
        .filter_map(|i| {
            let series: Vec<f64> = eta.iter().map(|row| row[i]).collect();
            fit_ratio(&series).map(|ratio| RateEntry {
                direction: i,
                lambda: spec.eigenvalues[i],
                ratio,
            })
        })
        .collect();
    let decaying = !rates.is_empty() && rates.iter().all(|r| r.ratio < 1.0);
    let verdict = if growth > GROWTH_LIMIT {
        Verdict::EmpiricallyUnstable
    } else {
        Verdict::NotCertified
    };
    Ok((
        PerturbationRun {
            base,
            perturbed,
            eigenvalues: spec.eigenvalues.clone(),
            eta_components: eta,
        },
        EmpiricalResult {
            rates,
            growth,
            decaying,
            verdict,
        },
    ))
}

/// Per-class constants of the certificate.
#[derive(Debug, Clone, Serialize)]
pub struct ClassConstants {
    pub units: Vec<Vec<String>>,
    /// Unit eigenvalue, shared by every unit of the class.
    pub b: f64,
    /// Cross-cluster twin eigenvalue; absent for single-unit classes.
    pub c: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EmpiricalSummary {
    pub rates: Vec<RateEntry>,
    pub growth: f64,
    pub verdict: Verdict,
}

/// Stability report for a cluster or for full synchronization.
#[derive(Debug, Clone, Serialize)]
pub struct StabilityReport {
    pub cluster: Vec<String>,
    pub eigenvalues: Vec<EigenvalueEntry>,
    pub checks: Vec<BoundCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical: Option<EmpiricalSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<ClassConstants>>,
    pub verdict: Verdict,
}

impl StabilityReport {
    /// Combine bound checks with an optional measurement. Passing bounds
    /// certify; otherwise measured growth decides between
    /// `EMPIRICALLY_UNSTABLE` and `NOT_CERTIFIED`.
    pub fn from_bounds(bounds: BoundReport, empirical: Option<EmpiricalResult>) -> Self {
        let verdict = if bounds.pass && !bounds.checks.is_empty() {
            Verdict::CertifiedStable
        } else if empirical
            .as_ref()
            .is_some_and(|e| e.verdict == Verdict::EmpiricallyUnstable)
        {
            Verdict::EmpiricallyUnstable
        } else {
            Verdict::NotCertified
        };
        StabilityReport {
            cluster: bounds.cluster,
            eigenvalues: bounds.eigenvalues,
            checks: bounds.checks,
            empirical: empirical.map(|e| EmpiricalSummary {
                rates: e.rates,
                growth: e.growth,
                verdict: e.verdict,
            }),
            classes: None,
            verdict,
        }
    }
}

fn sorted_multiset_eq(a: &[f64], b: &[f64], tol: f64) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
}

fn fmt_list(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:.12}")).collect();
    format!("[{}]", parts.join(", "))
}

/// Certificate for full synchronization from the contraction.
///
/// Hypotheses: every unit has the same cardinality `c`, `δ_V` is constant
/// on each unit and every canonical bijection is σ-preserving. The spectrum
/// of `𝔏_H` is then `(c c_E / c_V) · spec(𝔏_Ĥ)` together with each unit
/// eigenvalue `b` with multiplicity `c − 1`; the twin eigenvalues `c_a`
/// already belong to the first part. The assembled list is compared with
/// the direct spectrum, and the two-sided discrete bound is applied to each
/// element.
pub fn contraction_stability_certificate(
    h: &Hypergraph,
    dyn_: &NodeDynamics,
    eps: f64,
    c_v: f64,
    c_e: f64,
) -> Result<StabilityReport> {
    check_eps(eps)?;
    let units = find_units(h);
    let c = units[0].len();
    if let Some(u) = units.iter().find(|u| u.len() != c) {
        return Err(Error::HypothesesNotMet(format!(
            "equal unit cardinality: {:?} has {} vertices, {:?} has {}",
            h.labels(&units[0].members),
            c,
            h.labels(&u.members),
            u.len()
        )));
    }
    if let Some(u) = units
        .iter()
        .find(|u| !h.vertex_weight_constant_on(&u.members))
    {
        return Err(Error::HypothesesNotMet(format!(
            "vertex weight is not constant on unit {:?}",
            h.labels(&u.members)
        )));
    }
    if let Some(t) = find_twins(h, &units)?
        .into_iter()
        .find(|t| !t.sigma_preserving)
    {
        return Err(Error::HypothesesNotMet(format!(
            "canonical bijection between {:?} and {:?} is not sigma-preserving",
            h.labels(&t.first.members),
            h.labels(&t.second.members)
        )));
    }
    let contraction = contract(h, c_v, c_e)?;
    for (v, &image) in contraction.vertex_map.iter().enumerate() {
        let lifted = contraction.quotient.vertex_weight(image);
        if !close_rel(h.vertex_weight(v), c_v * lifted, 1e-12) {
            return Err(Error::HypothesesNotMet(format!(
                "vertex weight relation fails at `{}`",
                h.label(v)
            )));
        }
    }
    for (e, image) in contraction.edge_map.iter().enumerate() {
        if let Some(k) = *image {
            let sigma_hat = contraction.lifted_sigma[k];
            if !close_rel(sigma_hat, c_e * contraction.quotient.sigma(k), 1e-12) {
                return Err(Error::HypothesesNotMet(format!(
                    "edge weight relation fails at `{}`",
                    h.edges()[e].id
                )));
            }
        }
    }

    let scale = c as f64 * c_e / c_v;
    let quotient_spec = spectrum(&build_operator(&contraction.quotient))?;
    let scaled: Vec<f64> = quotient_spec
        .eigenvalues
        .iter()
        .map(|l| scale * l)
        .collect();

    let mut classes = Vec::new();
    let mut eigenvalues: Vec<EigenvalueEntry> = scaled
        .iter()
        .map(|&l| EigenvalueEntry::new(l, Provenance::Contraction))
        .collect();
    let twins = find_twins(h, &units)?;
    for class in twin_classes(h)? {
        let b = unit_eigenvalue(h, &class.units[0])?;
        for u in &class.units {
            let bu = unit_eigenvalue(h, u)?;
            if !close_rel(bu, b, 1e-9) {
                return Err(Error::HypothesesNotMet(format!(
                    "unit eigenvalue is not constant across twin class: {} vs {}",
                    b, bu
                )));
            }
            for _ in 1..c {
                eigenvalues.push(EigenvalueEntry::new(bu, Provenance::Unit));
            }
        }
        let mut ca = None;
        for t in twins
            .iter()
            .filter(|t| class.units.contains(&t.first) && class.units.contains(&t.second))
        {
            let value = twin_eigenvalue(h, t)?;
            match ca {
                None => ca = Some(value),
                Some(prev) if close_rel(prev, value, 1e-9) => {}
                Some(prev) => {
                    return Err(Error::HypothesesNotMet(format!(
                        "twin eigenvalue is not constant across twin class: {prev} vs {value}"
                    )))
                }
            }
        }
        if let Some(value) = ca {
            let tol = MULTISET_TOL * value.abs().max(1.0);
            if !scaled.iter().any(|l| (l - value).abs() <= tol) {
                return Err(Error::SpectrumMismatch(format!(
                    "twin eigenvalue {value} is not in the scaled contraction spectrum {}",
                    fmt_list(&scaled)
                )));
            }
        }
        classes.push(ClassConstants {
            units: class.units.iter().map(|u| h.labels(&u.members)).collect(),
            b,
            c: ca,
        });
    }

    let direct = spectrum(&build_operator(h))?;
    let assembled: Vec<f64> = eigenvalues.iter().map(|e| e.value).collect();
    let tol = MULTISET_TOL
        * direct
            .eigenvalues
            .iter()
            .fold(1.0f64, |m, x| m.max(x.abs()));
    if !sorted_multiset_eq(&assembled, &direct.eigenvalues, tol) {
        return Err(Error::SpectrumMismatch(format!(
            "assembled {} vs direct {}",
            fmt_list(&assembled),
            fmt_list(&direct.eigenvalues)
        )));
    }

    eigenvalues.sort_by(|a, b| b.value.total_cmp(&a.value));
    let checks: Vec<BoundCheck> = eigenvalues
        .iter()
        .map(|e| BoundCheck::discrete_signed(e.value, dyn_, eps))
        .collect();
    let verdict = if checks.iter().all(|c| c.pass) {
        Verdict::CertifiedStable
    } else {
        Verdict::NotCertified
    };
    Ok(StabilityReport {
        cluster: h.vertices().iter().map(|v| v.0.clone()).collect(),
        eigenvalues,
        checks,
        empirical: None,
        classes: Some(classes),
        verdict,
    })
}

/// One row of an ε sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub eps: f64,
    pub worst_lambda: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
}

/// Worst bound margin at `n` evenly spaced ε in `[lo, hi]`, with `check`
/// evaluating one eigenvalue at one ε (e.g. [`BoundCheck::discrete`]).
pub fn eps_sweep<F>(lambdas: &[f64], lo: f64, hi: f64, n: usize, check: F) -> Result<Vec<SweepRow>>
where
    F: Fn(f64, f64) -> BoundCheck,
{
    if n == 0 || !(lo > 0.0 && hi < 1.0 && lo <= hi) {
        return Err(Error::InvalidParameter(format!(
            "sweep needs 0 < lo <= hi < 1 and n >= 1, got {lo}:{hi}:{n}"
        )));
    }
    if lambdas.is_empty() {
        return Err(Error::InvalidParameter("no eigenvalues to sweep".into()));
    }
    Ok((0..n)
        .map(|k| {
            let eps = if n == 1 {
                lo
            } else {
                lo + (hi - lo) * k as f64 / (n - 1) as f64
            };
            let worst = lambdas
                .iter()
                .map(|&l| check(l, eps))
                .min_by(|a, b| a.margin.total_cmp(&b.margin))
                .expect("nonempty");
            SweepRow {
                eps,
                worst_lambda: worst.lambda,
                lhs: worst.lhs,
                rhs: worst.rhs,
                margin: worst.margin,
                pass: worst.pass,
            }
        })
        .collect())
}

/// `eps,worst_lambda,lhs,rhs,margin,pass` CSV.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    use crate::operator::fmt_num;
    let mut out = String::from("eps,worst_lambda,lhs,rhs,margin,pass\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_num(r.eps),
            fmt_num(r.worst_lambda),
            fmt_num(r.lhs),
            fmt_num(r.rhs),
            fmt_num(r.margin),
            r.pass
        ));
    }
    out
}
