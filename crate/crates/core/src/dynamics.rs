//! Discrete and continuous dynamical networks on a hypergraph.
//!
//! Discrete: `x_{t+1} = g(x_t) + ε 𝔏 f(x_t)`.
//! Continuous: `ẋ = g(x) + ε 𝔏 f(x)`, integrated with fixed-step RK4.
//!
//! `f` and `g` act pointwise. The operator is applied through
//! [`DiffusionOperator::apply`], which keeps synchronized clusters exactly
//! synchronized in floating point.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::operator::{build_operator, DiffusionOperator, VertexFunction};
use crate::units::{find_units, twin_classes, twin_pair, unit_of};

/// Default synchronization tolerance (absolute spread).
pub const SYNC_TOL: f64 = 1e-8;
/// Spread budget for exact sync-preservation runs.
pub const PRESERVATION_TOL: f64 = 1e-9;
/// Default RK4 step.
pub const DEFAULT_DT: f64 = 1e-3;
/// States larger than this in magnitude count as overflow.
pub const OVERFLOW_LIMIT: f64 = 1e150;
/// Slack allowed at the ends of a bounded dynamics interval.
const INTERVAL_SLACK: f64 = 1e-12;

/// A scalar map with analytic derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarMap {
    Identity,
    Zero,
    /// `αx`
    Linear(f64),
    /// `ax(1 − x)`
    Logistic(f64),
    Sine,
    Tanh,
}

impl ScalarMap {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            ScalarMap::Identity => x,
            ScalarMap::Zero => 0.0,
            ScalarMap::Linear(a) => a * x,
            ScalarMap::Logistic(a) => a * x * (1.0 - x),
            ScalarMap::Sine => x.sin(),
            ScalarMap::Tanh => x.tanh(),
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        match *self {
            ScalarMap::Identity => 1.0,
            ScalarMap::Zero => 0.0,
            ScalarMap::Linear(a) => a,
            ScalarMap::Logistic(a) => a * (1.0 - 2.0 * x),
            ScalarMap::Sine => x.cos(),
            ScalarMap::Tanh => 1.0 - x.tanh().powi(2),
        }
    }

    /// Exact `sup |h′|` over `[lo, hi]` (bounds may be infinite).
    pub fn sup_abs_derivative(&self, lo: f64, hi: f64) -> f64 {
        match *self {
            ScalarMap::Identity => 1.0,
            ScalarMap::Zero => 0.0,
            ScalarMap::Linear(a) => a.abs(),
            ScalarMap::Logistic(a) => {
                if a == 0.0 {
                    0.0
                } else {
                    a.abs() * (1.0 - 2.0 * lo).abs().max((1.0 - 2.0 * hi).abs())
                }
            }
            ScalarMap::Sine => {
                // |cos| reaches 1 at multiples of π
                let k = (lo / std::f64::consts::PI).ceil();
                if !(hi - lo).is_finite() || k * std::f64::consts::PI <= hi {
                    1.0
                } else {
                    lo.cos().abs().max(hi.cos().abs())
                }
            }
            ScalarMap::Tanh => {
                if lo <= 0.0 && hi >= 0.0 {
                    1.0
                } else {
                    let nearest = if lo > 0.0 { lo } else { hi };
                    1.0 - nearest.tanh().powi(2)
                }
            }
        }
    }

    fn bounded_domain(&self) -> Option<(f64, f64)> {
        match self {
            ScalarMap::Logistic(_) => Some((0.0, 1.0)),
            _ => None,
        }
    }
}

impl fmt::Display for ScalarMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarMap::Identity => write!(f, "identity"),
            ScalarMap::Zero => write!(f, "zero"),
            ScalarMap::Linear(a) => write!(f, "linear:{a}"),
            ScalarMap::Logistic(a) => write!(f, "logistic:{a}"),
            ScalarMap::Sine => write!(f, "sine"),
            ScalarMap::Tanh => write!(f, "tanh"),
        }
    }
}

fn parse_number(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::InvalidParameter(format!("bad {what} `{s}`")))
}

impl FromStr for ScalarMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p)),
            None => (s.trim(), None),
        };
        let map = match (name, param) {
            ("identity" | "id", None) => ScalarMap::Identity,
            ("zero", None) => ScalarMap::Zero,
            ("linear", Some(p)) => ScalarMap::Linear(parse_number(p, "linear slope")?),
            ("logistic", None) => ScalarMap::Logistic(4.0),
            ("logistic", Some(p)) => ScalarMap::Logistic(parse_number(p, "logistic parameter")?),
            ("sine" | "sin", None) => ScalarMap::Sine,
            ("tanh", None) => ScalarMap::Tanh,
            _ => return Err(Error::InvalidParameter(format!("unknown map `{s}`"))),
        };
        Ok(map)
    }
}

/// The pair `(f, g)` with certified derivative bounds on `interval`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeDynamics {
    #[serde(serialize_with = "ser_display")]
    pub f: ScalarMap,
    #[serde(serialize_with = "ser_display")]
    pub g: ScalarMap,
    /// `[lo, hi]`; infinite ends mean ℝ.
    #[serde(serialize_with = "ser_interval")]
    pub interval: (f64, f64),
    pub sup_f_prime: f64,
    pub sup_g_prime: f64,
}

fn ser_display<S: serde::Serializer>(m: &ScalarMap, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(m)
}

fn ser_interval<S: serde::Serializer>(
    i: &(f64, f64),
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let end = |x: f64| {
        if x.is_finite() {
            serde_json::json!(x)
        } else if x > 0.0 {
            serde_json::json!("inf")
        } else {
            serde_json::json!("-inf")
        }
    };
    serde::Serialize::serialize(&[end(i.0), end(i.1)], s)
}

impl NodeDynamics {
    /// `(f, g)` on their natural interval: `[0, 1]` if either is logistic,
    /// otherwise ℝ.
    pub fn new(f: ScalarMap, g: ScalarMap) -> Self {
        let interval = f
            .bounded_domain()
            .or_else(|| g.bounded_domain())
            .unwrap_or((f64::NEG_INFINITY, f64::INFINITY));
        Self::on_interval(f, g, interval)
    }

    pub fn on_interval(f: ScalarMap, g: ScalarMap, interval: (f64, f64)) -> Self {
        let (lo, hi) = interval;
        NodeDynamics {
            f,
            g,
            interval,
            sup_f_prime: f.sup_abs_derivative(lo, hi),
            sup_g_prime: g.sup_abs_derivative(lo, hi),
        }
    }

    /// `f = g = id`
    pub fn identity() -> Self {
        Self::new(ScalarMap::Identity, ScalarMap::Identity)
    }

    /// `f = id`, `g = 0`: pure diffusion.
    pub fn diffusion() -> Self {
        Self::new(ScalarMap::Identity, ScalarMap::Zero)
    }

    /// `f = αx`, `g = βx`
    pub fn linear(alpha: f64, beta: f64) -> Self {
        Self::new(ScalarMap::Linear(alpha), ScalarMap::Linear(beta))
    }

    /// `f = g = ax(1 − x)` on `[0, 1]`
    pub fn logistic(a: f64) -> Self {
        Self::new(ScalarMap::Logistic(a), ScalarMap::Logistic(a))
    }

    pub fn sine() -> Self {
        Self::new(ScalarMap::Sine, ScalarMap::Sine)
    }

    pub fn tanh() -> Self {
        Self::new(ScalarMap::Tanh, ScalarMap::Tanh)
    }

    /// Replace the certified bounds, e.g. to state a tighter `sup g′`
    /// obtained elsewhere.
    pub fn with_bounds(mut self, sup_f_prime: f64, sup_g_prime: f64) -> Self {
        self.sup_f_prime = sup_f_prime;
        self.sup_g_prime = sup_g_prime;
        self
    }

    pub fn f_prime(&self, x: f64) -> f64 {
        self.f.derivative(x)
    }

    pub fn g_prime(&self, x: f64) -> f64 {
        self.g.derivative(x)
    }

    pub fn is_bounded(&self) -> bool {
        self.interval.0.is_finite() && self.interval.1.is_finite()
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.interval.0 - INTERVAL_SLACK && x <= self.interval.1 + INTERVAL_SLACK
    }

    /// Range for random initial states: the interval, or `[-1, 1]` on ℝ.
    pub fn sample_range(&self) -> (f64, f64) {
        let lo = if self.interval.0.is_finite() {
            self.interval.0
        } else {
            -1.0
        };
        let hi = if self.interval.1.is_finite() {
            self.interval.1
        } else {
            1.0
        };
        (lo, hi)
    }

    /// Preset name that parses back to the same dynamics.
    pub fn name(&self) -> String {
        format!("{}/{}", self.f, self.g)
    }
}

impl FromStr for NodeDynamics {
    type Err = Error;

    /// `identity`, `diffusion`, `linear:α,β`, `logistic[:a]`, `sine`, `tanh`,
    /// or `<f>/<g>` with each side one of `identity`, `zero`, `linear:α`,
    /// `logistic[:a]`, `sine`, `tanh`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((f, g)) = s.split_once('/') {
            return Ok(Self::new(f.parse()?, g.parse()?));
        }
        if let Some(params) = s.strip_prefix("linear:") {
            let (a, b) = params
                .split_once(',')
                .ok_or_else(|| Error::InvalidParameter(format!("`{s}`: expected linear:α,β")))?;
            return Ok(Self::linear(
                parse_number(a, "linear α")?,
                parse_number(b, "linear β")?,
            ));
        }
        match s {
            "identity" => Ok(Self::identity()),
            "diffusion" => Ok(Self::diffusion()),
            _ => {
                let m: ScalarMap = s.parse()?;
                Ok(Self::new(m, m))
            }
        }
    }
}

/// One recorded state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkState {
    pub time: f64,
    pub state: VertexFunction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Discrete,
    Continuous,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "discrete" => Ok(Mode::Discrete),
            "continuous" => Ok(Mode::Continuous),
            _ => Err(Error::InvalidParameter(format!("unknown mode `{s}`"))),
        }
    }
}

/// Time-ordered states of one run.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub states: Vec<NetworkState>,
    pub epsilon: f64,
    pub dynamics: NodeDynamics,
    pub mode: Mode,
    pub labels: Vec<String>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn times(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.time).collect()
    }

    pub fn last(&self) -> &NetworkState {
        self.states.last().expect("trajectory is never empty")
    }

    /// `max_{u,v ∈ cluster} |x_k(u) − x_k(v)|` at record `k`.
    pub fn spread(&self, k: usize, cluster: &[usize]) -> f64 {
        spread(&self.states[k].state.0, cluster)
    }

    /// Largest spread over all records.
    pub fn max_spread(&self, cluster: &[usize]) -> f64 {
        (0..self.len())
            .map(|k| self.spread(k, cluster))
            .fold(0.0, f64::max)
    }

    /// `t,<labels…>` CSV.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t");
        for l in &self.labels {
            out.push(',');
            out.push_str(l);
        }
        out.push('\n');
        for s in &self.states {
            out.push_str(&crate::operator::fmt_num(s.time));
            for x in &s.state.0 {
                out.push(',');
                out.push_str(&format!("{x}"));
            }
            out.push('\n');
        }
        out
    }
}

/// `max - min` over the cluster.
pub fn spread(x: &[f64], cluster: &[usize]) -> f64 {
    let (lo, hi) = cluster
        .iter()
        .map(|&v| x[v])
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), y| {
            (lo.min(y), hi.max(y))
        });
    if cluster.is_empty() {
        0.0
    } else {
        hi - lo
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

fn check_state(op: &DiffusionOperator, x: &[f64]) -> Result<()> {
    if x.len() != op.dim() {
        return Err(Error::DomainMismatch {
            expected: op.dim(),
            found: x.len(),
        });
    }
    Ok(())
}

fn check_finite(x: &[f64], time: f64) -> Result<()> {
    if x.iter().all(|v| v.is_finite() && v.abs() <= OVERFLOW_LIMIT) {
        Ok(())
    } else {
        Err(Error::NumericOverflow(time))
    }
}

/// `g(x) + ε 𝔏 f(x)`
fn vector_field(op: &DiffusionOperator, dyn_: &NodeDynamics, eps: f64, x: &[f64]) -> Vec<f64> {
    let fx: Vec<f64> = x.iter().map(|&v| dyn_.f.eval(v)).collect();
    let lfx = op.apply(&fx);
    x.iter()
        .zip(lfx)
        .map(|(&v, l)| dyn_.g.eval(v) + eps * l)
        .collect()
}

fn step_at(
    op: &DiffusionOperator,
    dyn_: &NodeDynamics,
    eps: f64,
    x: &[f64],
    time: f64,
) -> Result<Vec<f64>> {
    if dyn_.is_bounded() {
        if let Some(v) = (0..x.len()).find(|&v| !dyn_.contains(x[v])) {
            return Err(Error::StateOutOfInterval {
                time,
                vertex: op.label(v).to_string(),
                value: x[v],
            });
        }
    }
    let next = vector_field(op, dyn_, eps, x);
    check_finite(&next, time + 1.0)?;
    Ok(next)
}

/// One step of the discrete model.
pub fn step_discrete(
    op: &DiffusionOperator,
    dyn_: &NodeDynamics,
    eps: f64,
    x: &[f64],
) -> Result<Vec<f64>> {
    check_eps(eps)?;
    check_state(op, x)?;
    step_at(op, dyn_, eps, x, 0.0)
}

fn trajectory(op: &DiffusionOperator, dyn_: &NodeDynamics, eps: f64, mode: Mode) -> Trajectory {
    Trajectory {
        states: Vec::new(),
        epsilon: eps,
        dynamics: dyn_.clone(),
        mode,
        labels: op.labels().to_vec(),
    }
}

fn check_stride(stride: usize) -> Result<()> {
    if stride == 0 {
        Err(Error::InvalidParameter("stride must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Iterate the discrete model for `steps` steps, recording `x_0`, every
/// `stride`-th state and the final state.
pub fn simulate_discrete(
    op: &DiffusionOperator,
    dyn_: &NodeDynamics,
    eps: f64,
    x0: &[f64],
    steps: usize,
    stride: usize,
) -> Result<Trajectory> {
    check_eps(eps)?;
    check_state(op, x0)?;
    check_stride(stride)?;
    if steps == 0 {
        return Err(Error::InvalidParameter("steps must be at least 1".into()));
    }
    check_finite(x0, 0.0)?;
    let mut traj = trajectory(op, dyn_, eps, Mode::Discrete);
    let mut x = x0.to_vec();
    traj.states.push(NetworkState {
        time: 0.0,
        state: VertexFunction(x.clone()),
    });
    for t in 1..=steps {
        x = step_at(op, dyn_, eps, &x, (t - 1) as f64)?;
        if t % stride == 0 || t == steps {
            traj.states.push(NetworkState {
                time: t as f64,
                state: VertexFunction(x.clone()),
            });
        }
    }
    Ok(traj)
}

/// Integrate the continuous model on `[0, t_end]` with classic RK4 and step
/// `dt` (the last step is shortened to land on `t_end`).
pub fn simulate_continuous(
    op: &DiffusionOperator,
    dyn_: &NodeDynamics,
    eps: f64,
    x0: &[f64],
    t_end: f64,
    dt: f64,
    stride: usize,
) -> Result<Trajectory> {
    check_eps(eps)?;
    check_state(op, x0)?;
    check_stride(stride)?;
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "dt must be positive, got {dt}"
        )));
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "t_end must be positive, got {t_end}"
        )));
    }
    check_finite(x0, 0.0)?;
    let n_steps = ((t_end / dt) - 1e-9).ceil().max(1.0) as usize;
    let mut traj = trajectory(op, dyn_, eps, Mode::Continuous);
    let mut x = x0.to_vec();
    traj.states.push(NetworkState {
        time: 0.0,
        state: VertexFunction(x.clone()),
    });
    let field = |y: &[f64]| vector_field(op, dyn_, eps, y);
    let shift = |y: &[f64], k: &[f64], h: f64| -> Vec<f64> {
        y.iter().zip(k).map(|(a, b)| a + h * b).collect()
    };
    for s in 1..=n_steps {
        let t0 = (s - 1) as f64 * dt;
        let t1 = if s == n_steps { t_end } else { s as f64 * dt };
        let h = t1 - t0;
        let k1 = field(&x);
        let k2 = field(&shift(&x, &k1, h / 2.0));
        let k3 = field(&shift(&x, &k2, h / 2.0));
        let k4 = field(&shift(&x, &k3, h));
        for v in 0..x.len() {
            x[v] += h / 6.0 * (k1[v] + 2.0 * k2[v] + 2.0 * k3[v] + k4[v]);
        }
        check_finite(&x, t1)?;
        if s % stride == 0 || s == n_steps {
            traj.states.push(NetworkState {
                time: t1,
                state: VertexFunction(x.clone()),
            });
        }
    }
    Ok(traj)
}

/// Per-record cluster spreads and synchronization verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct SyncReport {
    pub cluster: Vec<String>,
    pub tolerance: f64,
    pub times: Vec<f64>,
    pub spreads: Vec<f64>,
    pub synchronized_at: Vec<bool>,
    /// Earliest recorded time from which every later record is synchronized.
    pub synchronized_from: Option<f64>,
    /// Every record in the trailing 10% is synchronized.
    pub asymptotic: bool,
    pub final_spread: f64,
}

/// Cluster synchronization report for a trajectory.
pub fn sync_report(traj: &Trajectory, cluster: &[usize], tol: f64) -> Result<SyncReport> {
    if cluster.len() < 2 {
        let labels = cluster.iter().map(|&v| traj.labels[v].clone()).collect();
        return Err(Error::ClusterTooSmall(labels));
    }
    if let Some(&v) = cluster.iter().find(|&&v| v >= traj.labels.len()) {
        return Err(Error::UnknownVertex(format!("#{v}")));
    }
    let spreads: Vec<f64> = (0..traj.len()).map(|k| traj.spread(k, cluster)).collect();
    let synchronized_at: Vec<bool> = spreads.iter().map(|&s| s <= tol).collect();
    let tail = ((traj.len() as f64) * 0.1).ceil().max(1.0) as usize;
    let asymptotic = synchronized_at[traj.len() - tail..].iter().all(|&b| b);
    let first_sync = synchronized_at
        .iter()
        .rposition(|&b| !b)
        .map_or(0, |k| k + 1);
    Ok(SyncReport {
        cluster: cluster.iter().map(|&v| traj.labels[v].clone()).collect(),
        tolerance: tol,
        times: traj.times(),
        synchronized_from: traj.states.get(first_sync).map(|s| s.time),
        final_spread: *spreads.last().expect("nonempty"),
        spreads,
        synchronized_at,
        asymptotic,
    })
}

/// Which structural result makes a cluster synchronization-preserving.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClusterKind {
    /// At least two vertices of one unit.
    Unit,
    /// Union of two or more σ-preserving twin units, short of a full class.
    TwinUnion,
    /// A full twin class of at least two units.
    TwinClass,
    /// The whole vertex set.
    Whole,
}

/// Classify `cluster` (sorted vertex indices), checking the hypotheses of
/// the sync-preservation results including constant `δ_V`.
pub fn classify_cluster(h: &Hypergraph, cluster: &[usize]) -> Result<ClusterKind> {
    let labels = h.labels(cluster);
    if cluster.len() < 2 {
        return Err(Error::ClusterTooSmall(labels));
    }
    if !h.vertex_weight_constant_on(cluster) {
        return Err(Error::HypothesisViolated(format!(
            "vertex weight is not constant on {labels:?}"
        )));
    }
    if cluster.len() == h.n_vertices() {
        return Ok(ClusterKind::Whole);
    }
    let units = find_units(h);
    let touched: Vec<usize> = {
        let mut t: Vec<usize> = cluster
            .iter()
            .map(|&v| unit_of(&units, v).expect("units partition V"))
            .collect();
        t.sort_unstable();
        t.dedup();
        t
    };
    if touched.len() == 1 {
        return Ok(ClusterKind::Unit);
    }
    let whole_units = touched
        .iter()
        .all(|&u| units[u].members.iter().all(|v| cluster.contains(v)));
    if !whole_units {
        return Err(Error::HypothesisViolated(format!(
            "{labels:?} is neither inside one unit nor a union of whole units"
        )));
    }
    for (i, &a) in touched.iter().enumerate() {
        for &b in &touched[i + 1..] {
            match twin_pair(h, &units[a], &units[b])? {
                Some(p) if p.sigma_preserving => {}
                Some(_) => {
                    return Err(Error::HypothesisViolated(format!(
                        "twin units {:?} and {:?} are not sigma-preserving",
                        h.labels(&units[a].members),
                        h.labels(&units[b].members)
                    )))
                }
                None => {
                    return Err(Error::HypothesisViolated(format!(
                        "units {:?} and {:?} are not twins",
                        h.labels(&units[a].members),
                        h.labels(&units[b].members)
                    )))
                }
            }
        }
    }
    let class_size = twin_classes(h)?
        .iter()
        .find(|c| c.units.contains(&units[touched[0]]))
        .map_or(0, |c| c.units.len());
    Ok(if class_size == touched.len() {
        ClusterKind::TwinClass
    } else {
        ClusterKind::TwinUnion
    })
}

/// A uniformly random state in the dynamics' sample range.
pub fn random_state<R: Rng>(dyn_: &NodeDynamics, n: usize, rng: &mut R) -> Vec<f64> {
    let (lo, hi) = dyn_.sample_range();
    (0..n).map(|_| rng.gen_range(lo..=hi)).collect()
}

/// A random state, then set to `value` on `cluster`.
pub fn constant_on_cluster<R: Rng>(
    dyn_: &NodeDynamics,
    n: usize,
    cluster: &[usize],
    value: f64,
    rng: &mut R,
) -> Vec<f64> {
    let mut x = random_state(dyn_, n, rng);
    for &v in cluster {
        x[v] = value;
    }
    x
}

/// Parameters of [`sync_preservation_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PreservationConfig {
    pub eps: f64,
    pub trials: usize,
    /// Discrete steps, or RK4 steps of size `dt` in continuous mode.
    pub steps: usize,
    pub dt: f64,
    pub seed: u64,
    pub mode: Mode,
}

impl PreservationConfig {
    pub fn discrete(eps: f64, trials: usize, steps: usize, seed: u64) -> Self {
        PreservationConfig {
            eps,
            trials,
            steps,
            dt: DEFAULT_DT,
            seed,
            mode: Mode::Discrete,
        }
    }

    pub fn continuous(eps: f64, trials: usize, t_end: f64, dt: f64, seed: u64) -> Self {
        PreservationConfig {
            eps,
            trials,
            steps: (t_end / dt).round() as usize,
            dt,
            seed,
            mode: Mode::Continuous,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PreservationVerdict {
    pub cluster: Vec<String>,
    pub kind: ClusterKind,
    pub pass: bool,
    pub max_spread: f64,
    pub trials: usize,
}

/// Run seeded trials started constant on `cluster` and check that the
/// cluster spread stays within [`PRESERVATION_TOL`].
pub fn sync_preservation_check(
    h: &Hypergraph,
    cluster: &[usize],
    dyn_: &NodeDynamics,
    config: &PreservationConfig,
) -> Result<PreservationVerdict> {
    let mut cluster = cluster.to_vec();
    cluster.sort_unstable();
    cluster.dedup();
    let kind = classify_cluster(h, &cluster)?;
    let op = build_operator(h);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (lo, hi) = dyn_.sample_range();
    let mut max_spread = 0.0f64;
    for _ in 0..config.trials {
        let value = rng.gen_range(lo..=hi);
        let x0 = constant_on_cluster(dyn_, h.n_vertices(), &cluster, value, &mut rng);
        let traj = match config.mode {
            Mode::Discrete => simulate_discrete(&op, dyn_, config.eps, &x0, config.steps, 1)?,
            Mode::Continuous => simulate_continuous(
                &op,
                dyn_,
                config.eps,
                &x0,
                config.steps as f64 * config.dt,
                config.dt,
                1,
            )?,
        };
        max_spread = max_spread.max(traj.max_spread(&cluster));
    }
    Ok(PreservationVerdict {
        cluster: h.labels(&cluster),
        kind,
        pass: max_spread <= PRESERVATION_TOL,
        max_spread,
        trials: config.trials,
    })
}
