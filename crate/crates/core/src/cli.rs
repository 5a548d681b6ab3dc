//! The `hypersync` command-line front end.
//!
//! Subcommands: `validate`, `units`, `twins`, `spectrum`, `contract`,
//! `simulate`, `stability`. The primary report goes to standard output;
//! bulk data (trajectories, eigenvector matrices, quotient hypergraphs) goes
//! to the `-o` file. Every output carries the tool version, the SHA-256 of
//! the input file and the full parameter set, as a JSON envelope or as `#`
//! comment lines in CSV.
//!
//! Exit codes: 0 success, 2 input or structure error, 3 numeric failure,
//! 4 hypotheses not met, 64 usage. Errors are reported on standard output as
//! `{"error": <kind>, "message": <text>}`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::dynamics::{
    random_state, simulate_continuous, simulate_discrete, sync_report, Mode, NodeDynamics,
};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::operator::{analytic_eigenpairs, build_operator, spectrum};
use crate::stability::{
    cluster_stability, contraction_stability_certificate, eps_sweep, perturb_and_measure,
    sweep_csv, BoundCheck, Model, PerturbationConfig, StabilityReport,
};
use crate::units::{contract, find_twins, find_units, twin_classes};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit code for command-line usage errors.
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "hypersync",
    version,
    about = "Cluster synchronization on hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a hypergraph file.
    Validate(InputArgs),
    /// List units and their generating sets.
    Units(InputArgs),
    /// List twin pairs, canonical bijections and twin classes.
    Twins(InputArgs),
    /// Eigenvalues as CSV; `-o` writes the eigenvector matrix.
    Spectrum(SpectrumArgs),
    /// Build the contraction; `-o` writes the quotient hypergraph.
    Contract(ContractArgs),
    /// Run a network; `-o` writes the trajectory CSV.
    Simulate(SimulateArgs),
    /// Bound checks, perturbation experiments and the full-sync certificate.
    Stability(StabilityArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Hypergraph JSON file.
    #[arg(short, long)]
    input: PathBuf,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// Eigenvector matrix CSV.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Analytic unit/twin eigenpair report (JSON).
    #[arg(long)]
    analytic: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ContractArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// Quotient hypergraph JSON.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    cv: f64,
    #[arg(long, default_value_t = 1.0)]
    ce: f64,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// Trajectory CSV.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// `discrete` or `continuous`.
    #[arg(long, default_value = "discrete")]
    mode: String,
    /// `identity`, `diffusion`, `linear:α,β`, `logistic[:a]`, `sine`, `tanh`
    /// or `<f>/<g>`.
    #[arg(long, default_value = "logistic:4")]
    dynamics: String,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Discrete steps.
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    /// Continuous end time.
    #[arg(long, default_value_t = 10.0)]
    t_end: f64,
    /// RK4 step.
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    /// Record every n-th step.
    #[arg(long, default_value_t = 1)]
    stride: usize,
    /// Synchronization tolerance.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long)]
    seed: Option<u64>,
    /// `unit:k`, `class:k` or comma-separated labels; default all vertices.
    #[arg(long)]
    cluster: Option<String>,
    /// `random`, `file:<path>` or
    /// `constant-on-cluster <cluster> <value> [noise <amplitude>]`.
    #[arg(long, default_value = "random")]
    init: String,
}

#[derive(Args, Debug)]
struct StabilityArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, default_value = "discrete")]
    mode: String,
    #[arg(long, default_value = "logistic:4")]
    dynamics: String,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// `unit:k`, `class:k` or comma-separated labels.
    #[arg(long)]
    cluster: Option<String>,
    /// Every unit with two or more vertices and every twin class.
    #[arg(long)]
    all: bool,
    /// Full-synchronization certificate from the contraction.
    #[arg(long)]
    certify_full: bool,
    #[arg(long, default_value_t = 1.0)]
    cv: f64,
    #[arg(long, default_value_t = 1.0)]
    ce: f64,
    /// `lo:hi:n`; prints the worst margin per ε as CSV.
    #[arg(long)]
    sweep_eps: Option<String>,
    /// Also run a perturbation experiment (discrete mode).
    #[arg(long)]
    perturb: bool,
    #[arg(long, default_value_t = 200)]
    steps: usize,
    #[arg(long, default_value_t = 1e-6)]
    delta: f64,
    #[arg(long)]
    seed: Option<u64>,
}

/// Run with the process's standard output.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run_with(args, &mut lock)
}

/// Run, writing the primary report to `out`; returns the exit code.
pub fn run_with<I, T, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    let diag = json!({"error": "UsageError", "message": e.kind().to_string()});
                    let _ = writeln!(out, "{diag}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Validate(a) => cmd_validate(&a),
        Command::Units(a) => cmd_units(&a),
        Command::Twins(a) => cmd_twins(&a),
        Command::Spectrum(a) => cmd_spectrum(&a),
        Command::Contract(a) => cmd_contract(&a),
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Stability(a) => cmd_stability(&a),
    };
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let diag = json!({"error": e.kind(), "message": e.to_string()});
            let _ = writeln!(out, "{diag}");
            e.exit_code()
        }
    }
}

struct Input {
    hypergraph: Hypergraph,
    sha256: String,
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

fn load(path: &Path) -> Result<Input> {
    let bytes = fs::read(path).map_err(|e| io_error(path, e))?;
    let sha256 = Sha256::digest(&bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    let text = String::from_utf8(bytes).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        message: e.to_string(),
    })?;
    Ok(Input {
        hypergraph: Hypergraph::from_json(&text)?,
        sha256,
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| io_error(path, e))
}

/// Round to 12 significant digits and flush values below `1e-12` to zero, so
/// reports do not depend on the last bits of a floating-point result.
fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => {
                let y = if x.abs() < 1e-12 {
                    0.0
                } else {
                    format!("{x:.11e}").parse().unwrap_or(x)
                };
                json!(y)
            }
            _ => Value::Number(n),
        },
        Value::Array(a) => Value::Array(a.into_iter().map(normalize).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, normalize(v))).collect()),
        other => other,
    }
}

fn header(command: &str, input: &Input, config: &Map<String, Value>) -> Value {
    json!({
        "tool": {"name": "hypersync", "version": VERSION},
        "command": command,
        "input_sha256": input.sha256,
        "config": config,
    })
}

fn envelope<T: Serialize>(
    command: &str,
    input: &Input,
    config: &Map<String, Value>,
    result: &T,
) -> String {
    let mut doc = header(command, input, config);
    doc["result"] = serde_json::to_value(result).expect("reports serialize");
    let mut s = serde_json::to_string_pretty(&normalize(doc)).expect("json");
    s.push('\n');
    s
}

fn csv_preamble(command: &str, input: &Input, config: &Map<String, Value>) -> String {
    format!(
        "# hypersync {VERSION} {command}\n# input_sha256={}\n# config={}\n",
        input.sha256,
        Value::Object(config.clone())
    )
}

fn config(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn cmd_validate(a: &InputArgs) -> Result<String> {
    let input = load(&a.input)?;
    let h = &input.hypergraph;
    let (rank, corank) = h.rank_corank();
    let result = json!({
        "valid": true,
        "vertices": h.n_vertices(),
        "edges": h.n_edges(),
        "rank": rank,
        "corank": corank,
    });
    Ok(envelope("validate", &input, &Map::new(), &result))
}

fn cmd_units(a: &InputArgs) -> Result<String> {
    let input = load(&a.input)?;
    let h = &input.hypergraph;
    let units: Vec<_> = find_units(h).iter().map(|u| u.report(h)).collect();
    Ok(envelope(
        "units",
        &input,
        &Map::new(),
        &json!({ "units": units }),
    ))
}

fn cmd_twins(a: &InputArgs) -> Result<String> {
    let input = load(&a.input)?;
    let h = &input.hypergraph;
    let twins: Vec<_> = find_twins(h, &find_units(h))?
        .iter()
        .map(|t| t.report(h))
        .collect();
    let classes: Vec<Vec<Vec<String>>> = twin_classes(h)?
        .iter()
        .filter(|c| c.units.len() > 1)
        .map(|c| c.units.iter().map(|u| h.labels(&u.members)).collect())
        .collect();
    Ok(envelope(
        "twins",
        &input,
        &Map::new(),
        &json!({ "twins": twins, "classes": classes }),
    ))
}

fn cmd_spectrum(a: &SpectrumArgs) -> Result<String> {
    let input = load(&a.input)?;
    let h = &input.hypergraph;
    let op = build_operator(h);
    let spec = spectrum(&op)?;
    let cfg = Map::new();
    if let Some(path) = &a.output {
        let text = csv_preamble("spectrum", &input, &cfg) + &spec.eigenvectors_csv(op.labels());
        write_file(path, &text)?;
    }
    if let Some(path) = &a.analytic {
        let report = analytic_eigenpairs(h, &op, &spec)?;
        write_file(path, &envelope("spectrum", &input, &cfg, &report))?;
    }
    Ok(csv_preamble("spectrum", &input, &cfg) + &spec.to_csv())
}

fn cmd_contract(a: &ContractArgs) -> Result<String> {
    let input = load(&a.input)?;
    let h = &input.hypergraph;
    let c = contract(h, a.cv, a.ce)?;
    let cfg = config(&[("cv", json!(a.cv)), ("ce", json!(a.ce))]);
    let mut quotient = c.quotient.to_raw();
    if let Some(path) = &a.output {
        let mut raw = quotient.clone();
        raw.meta = Some(header("contract", &input, &cfg));
        let mut text = serde_json::to_string_pretty(&raw).expect("json");
        text.push('\n');
        write_file(path, &text)?;
    }
    quotient.meta = None;
    Ok(envelope(
        "contract",
        &input,
        &cfg,
        &json!({ "quotient": quotient, "contraction": c.report(h) }),
    ))
}

/// `unit:k` (1-based, units ordered by smallest member), `class:k` (1-based,
/// twin classes of two or more units) or comma-separated vertex labels.
pub fn parse_cluster(h: &Hypergraph, spec: &str) -> Result<Vec<usize>> {
    let spec = spec.trim();
    let pick = |k: &str, n: usize, what: &str| -> Result<usize> {
        k.parse::<usize>()
            .ok()
            .filter(|&k| k >= 1 && k <= n)
            .map(|k| k - 1)
            .ok_or_else(|| Error::InvalidParameter(format!("no {what} `{k}` (have {n})")))
    };
    if let Some(k) = spec.strip_prefix("unit:") {
        let units = find_units(h);
        return Ok(units[pick(k, units.len(), "unit")?].members.clone());
    }
    if let Some(k) = spec.strip_prefix("class:") {
        let classes: Vec<_> = twin_classes(h)?
            .into_iter()
            .filter(|c| c.units.len() > 1)
            .collect();
        return Ok(classes[pick(k, classes.len(), "twin class")?].members());
    }
    let labels: Vec<&str> = spec.split(',').map(str::trim).collect();
    let mut vs = h.vertex_set(&labels)?;
    vs.sort_unstable();
    vs.dedup();
    Ok(vs)
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let nanos = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0);
        nanos ^ u64::from(std::process::id())
    })
}

fn parse_value(s: Option<&str>, what: &str) -> Result<f64> {
    s.and_then(|s| s.parse::<f64>().ok())
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::InvalidParameter(format!("init: expected {what}")))
}

fn initial_state(
    h: &Hypergraph,
    dyn_: &NodeDynamics,
    spec: &str,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<f64>> {
    let n = h.n_vertices();
    let spec = spec.trim();
    if spec == "random" {
        return Ok(random_state(dyn_, n, rng));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let path = Path::new(path);
        let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let mut x = vec![f64::NAN; n];
        match value {
            Value::Array(items) => {
                if items.len() != n {
                    return Err(Error::DomainMismatch {
                        expected: n,
                        found: items.len(),
                    });
                }
                for (v, item) in items.iter().enumerate() {
                    x[v] = item.as_f64().ok_or_else(|| {
                        Error::InvalidParameter("init file: non-numeric entry".into())
                    })?;
                }
            }
            Value::Object(map) => {
                for (label, item) in map {
                    let v = h.vertex_index(&label)?;
                    x[v] = item.as_f64().ok_or_else(|| {
                        Error::InvalidParameter("init file: non-numeric entry".into())
                    })?;
                }
                if let Some(v) = x.iter().position(|x| x.is_nan()) {
                    return Err(Error::InvalidParameter(format!(
                        "init file: no value for `{}`",
                        h.label(v)
                    )));
                }
            }
            _ => {
                return Err(Error::InvalidParameter(
                    "init file: expected an array or an object".into(),
                ))
            }
        }
        return Ok(x);
    }
    let tokens: Vec<&str> = spec.split_whitespace().collect();
    if tokens.first() == Some(&"constant-on-cluster") {
        let cluster = parse_cluster(
            h,
            tokens
                .get(1)
                .ok_or_else(|| Error::InvalidParameter("init: expected a cluster".into()))?,
        )?;
        let value = parse_value(tokens.get(2).copied(), "a value")?;
        let mut x = match tokens.get(3) {
            None => random_state(dyn_, n, rng),
            Some(&"noise") => {
                let amp = parse_value(tokens.get(4).copied(), "a noise amplitude")?.abs();
                let (lo, hi) = dyn_.interval;
                (0..n)
                    .map(|_| (value + rng.gen_range(-amp..=amp)).clamp(lo, hi))
                    .collect()
            }
            Some(other) => {
                return Err(Error::InvalidParameter(format!(
                    "init: unexpected `{other}`"
                )))
            }
        };
        for &v in &cluster {
            x[v] = value;
        }
        return Ok(x);
    }
    Err(Error::InvalidParameter(format!("unknown init `{spec}`")))
}

fn cmd_simulate(a: &SimulateArgs) -> Result<String> {
    let input = load(&a.input)?;
    let h = &input.hypergraph;
    let dyn_: NodeDynamics = a.dynamics.parse()?;
    let mode: Mode = a.mode.parse()?;
    let seed = resolve_seed(a.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x0 = initial_state(h, &dyn_, &a.init, &mut rng)?;
    let cluster = match &a.cluster {
        Some(c) => parse_cluster(h, c)?,
        None => (0..h.n_vertices()).collect(),
    };
    let op = build_operator(h);
    let traj = match mode {
        Mode::Discrete => simulate_discrete(&op, &dyn_, a.eps, &x0, a.steps, a.stride)?,
        Mode::Continuous => simulate_continuous(&op, &dyn_, a.eps, &x0, a.t_end, a.dt, a.stride)?,
    };
    let report = sync_report(&traj, &cluster, a.tol)?;
    let mut cfg = config(&[
        ("mode", json!(a.mode)),
        ("dynamics", json!(dyn_.name())),
        ("eps", json!(a.eps)),
        ("tol", json!(a.tol)),
        ("seed", json!(seed)),
        ("stride", json!(a.stride)),
        ("init", json!(a.init)),
        ("cluster", json!(h.labels(&cluster))),
    ]);
    match mode {
        Mode::Discrete => {
            cfg.insert("steps".into(), json!(a.steps));
        }
        Mode::Continuous => {
            cfg.insert("t_end".into(), json!(a.t_end));
            cfg.insert("dt".into(), json!(a.dt));
        }
    }
    if let Some(path) = &a.output {
        write_file(
            path,
            &(csv_preamble("simulate", &input, &cfg) + &traj.to_csv()),
        )?;
    }
    Ok(envelope("simulate", &input, &cfg, &report))
}

fn parse_sweep(s: &str) -> Result<(f64, f64, usize)> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Error::InvalidParameter(format!("--sweep-eps expects lo:hi:n, got `{s}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    Ok((
        parts[0].parse().map_err(|_| bad())?,
        parts[1].parse().map_err(|_| bad())?,
        parts[2].parse().map_err(|_| bad())?,
    ))
}

fn stability_clusters(h: &Hypergraph, a: &StabilityArgs) -> Result<Vec<Vec<usize>>> {
    match (&a.cluster, a.all) {
        (Some(_), true) => Err(Error::InvalidParameter(
            "--cluster and --all are exclusive".into(),
        )),
        (Some(c), false) => Ok(vec![parse_cluster(h, c)?]),
        (None, true) => {
            let mut out: Vec<Vec<usize>> = find_units(h)
                .into_iter()
                .filter(|u| u.len() > 1)
                .map(|u| u.members)
                .collect();
            out.extend(
                twin_classes(h)?
                    .into_iter()
                    .filter(|c| c.units.len() > 1)
                    .map(|c| c.members()),
            );
            Ok(out)
        }
        (None, false) => Err(Error::InvalidParameter(
            "select --cluster, --all or --certify-full".into(),
        )),
    }
}

fn cmd_stability(a: &StabilityArgs) -> Result<String> {
    let input = load(&a.input)?;
    let h = &input.hypergraph;
    let dyn_: NodeDynamics = a.dynamics.parse()?;
    let model = match a.mode.parse::<Mode>()? {
        Mode::Discrete => Model::Discrete,
        Mode::Continuous => Model::Continuous,
    };
    let mut cfg = config(&[
        ("mode", json!(a.mode)),
        ("dynamics", json!(dyn_.name())),
        ("sup_f_prime", json!(dyn_.sup_f_prime)),
        ("sup_g_prime", json!(dyn_.sup_g_prime)),
        ("eps", json!(a.eps)),
    ]);
    let sweep = a.sweep_eps.as_deref().map(parse_sweep).transpose()?;
    if let Some((lo, hi, n)) = sweep {
        cfg.insert("sweep_eps".into(), json!([lo, hi, n]));
    }

    if a.certify_full {
        if model != Model::Discrete {
            return Err(Error::InvalidParameter(
                "the full-synchronization certificate is discrete-time".into(),
            ));
        }
        cfg.insert("cv".into(), json!(a.cv));
        cfg.insert("ce".into(), json!(a.ce));
        cfg.insert("certify_full".into(), json!(true));
        let report = contraction_stability_certificate(h, &dyn_, a.eps, a.cv, a.ce)?;
        if let Some((lo, hi, n)) = sweep {
            let lambdas: Vec<f64> = report.eigenvalues.iter().map(|e| e.value).collect();
            let rows = eps_sweep(&lambdas, lo, hi, n, |l, eps| {
                BoundCheck::discrete_signed(l, &dyn_, eps)
            })?;
            return Ok(csv_preamble("stability", &input, &cfg) + &sweep_csv(&rows));
        }
        return Ok(envelope("stability", &input, &cfg, &report));
    }

    let clusters = stability_clusters(h, a)?;
    if a.perturb {
        let seed = resolve_seed(a.seed);
        cfg.insert("perturb".into(), json!(true));
        cfg.insert("steps".into(), json!(a.steps));
        cfg.insert("delta".into(), json!(a.delta));
        cfg.insert("seed".into(), json!(seed));
    }
    if let Some((lo, hi, n)) = sweep {
        let mut lambdas = Vec::new();
        for c in &clusters {
            let r = cluster_stability(h, c, &dyn_, a.eps, model)?;
            lambdas.extend(r.eigenvalues.iter().map(|e| e.value));
        }
        let rows = eps_sweep(&lambdas, lo, hi, n, |l, eps| {
            BoundCheck::for_model(model, l, &dyn_, eps)
        })?;
        return Ok(csv_preamble("stability", &input, &cfg) + &sweep_csv(&rows));
    }

    let single = !a.all;
    let mut reports = Vec::new();
    for c in &clusters {
        let outcome = cluster_report(h, c, &dyn_, a, model, &cfg);
        match outcome {
            Ok(r) => reports.push(serde_json::to_value(r).expect("json")),
            Err(e) if !single => reports.push(json!({
                "cluster": h.labels(c),
                "error": e.kind(),
                "message": e.to_string(),
            })),
            Err(e) => return Err(e),
        }
    }
    if single {
        Ok(envelope("stability", &input, &cfg, &reports[0]))
    } else {
        Ok(envelope(
            "stability",
            &input,
            &cfg,
            &json!({ "reports": reports }),
        ))
    }
}

fn cluster_report(
    h: &Hypergraph,
    cluster: &[usize],
    dyn_: &NodeDynamics,
    a: &StabilityArgs,
    model: Model,
    cfg: &Map<String, Value>,
) -> Result<StabilityReport> {
    let bounds = cluster_stability(h, cluster, dyn_, a.eps, model)?;
    let empirical = if a.perturb && model == Model::Discrete {
        let mut pc = PerturbationConfig::new(a.eps, a.steps, cfg["seed"].as_u64().unwrap_or(0));
        pc.delta = a.delta;
        Some(perturb_and_measure(h, cluster, dyn_, &pc, None)?.1)
    } else {
        None
    };
    Ok(StabilityReport::from_bounds(bounds, empirical))
}
