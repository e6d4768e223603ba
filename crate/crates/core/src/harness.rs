//! Experiment orchestration: configuration, cost accounting, traces,
//! sweeps, budget comparisons and output files.

use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithms::{
    configure_optra, configure_optra_n, configure_primal_dual, AlgorithmRun, BaselineKind, BaselineState,
    Method, StepOverrides,
};
use crate::error::{Error, Result};
use crate::linalg::frobenius_norm;
use crate::metrics::{self, certified_upper_bound, lower_bound_curve, LowerBoundModel};
use crate::network::{build_topology, laplacian, Graph, GossipMatrix, TopologyKind};
use crate::objectives::{
    generate_hard_instance, generate_least_squares, load_csv_dataset, solve_reference, HardKind, InstanceKind,
    ObjectiveInstance, ReferenceSolution, DEFAULT_ZETA,
};

/// Mixed into the user seed to get the data stream; the graph uses the seed as is.
pub const DATA_SEED_SALT: u64 = 0xD1B5_4A32_D192_ED03;

/// Number of records kept by the default cadence (plus the first and last).
pub const DEFAULT_RECORD_TARGET: usize = 200;

/// Default step size of the baselines.
pub const DEFAULT_BASELINE_STEP: f64 = 1e-5;

pub const CSV_HEADER: [&str; 9] = [
    "k",
    "grad_evals",
    "comm_rounds",
    "sim_time",
    "bregman",
    "fem",
    "consensus_err",
    "certified_ub",
    "lower_bound_ref",
];

fn default_agents() -> usize {
    20
}
fn default_topology() -> TopologyKind {
    TopologyKind::ErdosRenyi { p: 0.1 }
}
fn default_tau_c() -> f64 {
    1.0
}
fn default_grad_time() -> f64 {
    1.0
}
fn default_step() -> f64 {
    DEFAULT_BASELINE_STEP
}
fn default_r() -> usize {
    10
}
fn default_d() -> usize {
    100
}
fn default_omega() -> f64 {
    0.95
}
fn default_noise_sd() -> f64 {
    0.5
}
fn default_zeta() -> f64 {
    DEFAULT_ZETA
}
fn default_lf() -> f64 {
    1.0
}
fn default_label_column() -> String {
    "label".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AlgorithmSpec {
    Optra {
        nu: f64,
        /// Rounds per Chebyshev call; `ceil(1/sqrt(eta))` when absent.
        #[serde(default)]
        k: Option<usize>,
        #[serde(default)]
        gamma: Option<f64>,
        #[serde(default)]
        tau: Option<f64>,
    },
    OptraN {
        nu: f64,
        #[serde(default)]
        gamma: Option<f64>,
        #[serde(default)]
        tau: Option<f64>,
    },
    PrimalDual {
        nu: f64,
        #[serde(default)]
        gamma: Option<f64>,
        #[serde(default)]
        tau: Option<f64>,
    },
    Dgd {
        #[serde(default = "default_step")]
        step: f64,
    },
    Extra {
        #[serde(default = "default_step")]
        step: f64,
    },
    GradientTracking {
        #[serde(default = "default_step")]
        step: f64,
    },
}

impl AlgorithmSpec {
    pub fn method(&self) -> Method {
        match self {
            AlgorithmSpec::Optra { .. } => Method::Optra,
            AlgorithmSpec::OptraN { .. } => Method::OptraN,
            AlgorithmSpec::PrimalDual { .. } => Method::PrimalDual,
            AlgorithmSpec::Dgd { .. } => Method::Dgd,
            AlgorithmSpec::Extra { .. } => Method::Extra,
            AlgorithmSpec::GradientTracking { .. } => Method::GradientTracking,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ObjectiveSpec {
    LeastSquares {
        #[serde(default = "default_r")]
        r: usize,
        #[serde(default = "default_d")]
        d: usize,
        #[serde(default = "default_omega")]
        omega: f64,
        #[serde(default = "default_noise_sd")]
        noise_sd: f64,
    },
    LogisticCsv {
        path: PathBuf,
        #[serde(default = "default_label_column")]
        label_column: String,
    },
    HardTwoAgent {
        k: usize,
        d: usize,
        #[serde(default = "default_lf")]
        lf: f64,
    },
    HardLine {
        k: usize,
        d: usize,
        #[serde(default = "default_lf")]
        lf: f64,
        #[serde(default = "default_zeta")]
        zeta: f64,
    },
    Zero {
        d: usize,
    },
}

/// One experiment. Unknown keys are rejected; `seed` has no default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default = "default_agents")]
    pub agents: usize,
    pub algorithm: AlgorithmSpec,
    #[serde(default = "default_topology")]
    pub topology: TopologyKind,
    pub objective: ObjectiveSpec,
    /// Horizon `T`: the run produces iterates `1..=T` (`T - 1` steps).
    pub iterations: usize,
    #[serde(default = "default_tau_c")]
    pub tau_c: f64,
    #[serde(default = "default_grad_time")]
    pub grad_time: f64,
    /// Metric cadence; `ceil(T / 200)` when absent.
    #[serde(default)]
    pub record_every: Option<usize>,
    /// Adds the generic lower-bound shape to runs on non-hard instances.
    #[serde(default)]
    pub lower_bound_overlay: bool,
    /// Stops early once simulated time reaches this value.
    #[serde(default)]
    pub max_sim_time: Option<f64>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::config(
                format!("line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(path.display().to_string(), e.to_string()))?;
        Self::from_json(&text)
    }

    pub fn label(&self) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| self.algorithm.method().name().to_string())
    }

    pub fn cost_model(&self) -> CostModel {
        CostModel {
            tau_c: self.tau_c,
            grad_time: self.grad_time,
        }
    }

    pub fn record_every(&self) -> usize {
        self.record_every
            .unwrap_or_else(|| self.iterations.div_ceil(DEFAULT_RECORD_TARGET))
            .max(1)
    }

    /// Static checks that need no data.
    pub fn validate(&self) -> Result<()> {
        if self.iterations < 2 {
            return Err(Error::config("iterations", format!("must be >= 2, got {}", self.iterations)));
        }
        if !(self.tau_c >= 0.0 && self.tau_c.is_finite()) {
            return Err(Error::config("tau_c", format!("must be >= 0, got {}", self.tau_c)));
        }
        if !(self.grad_time >= 0.0 && self.grad_time.is_finite()) {
            return Err(Error::config("grad_time", format!("must be >= 0, got {}", self.grad_time)));
        }
        if self.record_every == Some(0) {
            return Err(Error::config("record_every", "must be >= 1"));
        }
        if self.agents < 2 {
            return Err(Error::config("agents", format!("must be >= 2, got {}", self.agents)));
        }
        if let TopologyKind::ErdosRenyi { p } = self.topology {
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::config("topology.p", format!("must lie in (0, 1], got {p}")));
            }
        }
        if matches!(self.topology, TopologyKind::TwoAgent) && self.agents != 2 {
            return Err(Error::config("agents", "two-agent topology needs agents = 2"));
        }
        match &self.objective {
            ObjectiveSpec::HardTwoAgent { .. } if self.agents != 2 => {
                return Err(Error::config("agents", "hard-two-agent objective needs agents = 2"));
            }
            ObjectiveSpec::HardLine { .. } if self.topology != TopologyKind::Line => {
                return Err(Error::config("topology", "hard-line objective needs the line topology"));
            }
            ObjectiveSpec::LeastSquares { omega, .. } if !(0.0..1.0).contains(omega) => {
                return Err(Error::config("objective.omega", format!("must lie in [0, 1), got {omega}")));
            }
            _ => {}
        }
        match self.algorithm {
            AlgorithmSpec::Optra { nu, k, .. } => {
                check_positive("algorithm.nu", nu)?;
                if k == Some(0) {
                    return Err(Error::config("algorithm.k", "must be >= 1"));
                }
            }
            AlgorithmSpec::OptraN { nu, .. } | AlgorithmSpec::PrimalDual { nu, .. } => {
                check_positive("algorithm.nu", nu)?;
            }
            AlgorithmSpec::Dgd { step } | AlgorithmSpec::Extra { step } | AlgorithmSpec::GradientTracking { step } => {
                check_positive("algorithm.step", step)?;
            }
        }
        if let Some(t) = self.max_sim_time {
            check_positive("max_sim_time", t)?;
        }
        Ok(())
    }
}

fn check_positive(path: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::config(path, format!("must be positive, got {v}")))
    }
}

/// `simTime = gradEvals * grad_time + commRounds * tau_c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostModel {
    pub tau_c: f64,
    pub grad_time: f64,
}

impl CostModel {
    pub fn sim_time(&self, grad_evals: usize, comm_rounds: usize) -> f64 {
        grad_evals as f64 * self.grad_time + comm_rounds as f64 * self.tau_c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub k: usize,
    pub grad_evals: usize,
    pub comm_rounds: usize,
    pub sim_time: f64,
    pub bregman: f64,
    pub fem: f64,
    pub consensus_err: f64,
    pub certified_ub: Option<f64>,
    pub lower_bound_ref: Option<f64>,
}

/// How the `lower_bound_ref` column was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerBoundKind {
    /// Explicit bound for the hard instance being solved.
    HardInstance,
    /// Generic curve shape; not a bound for this instance.
    ReferenceOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub label: String,
    pub method: Method,
    pub seed: u64,
    pub config: ExperimentConfig,
    pub instance_hash: String,
    pub cost: CostModel,
    pub lower_bound: Option<LowerBoundKind>,
    pub records: Vec<TraceRecord>,
}

impl RunTrace {
    pub fn final_record(&self) -> &TraceRecord {
        self.records.last().expect("traces always hold the first record")
    }

    /// Last record with `sim_time <= budget`.
    pub fn at_budget(&self, budget: f64) -> Option<&TraceRecord> {
        self.records.iter().take_while(|r| r.sim_time <= budget).last()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("in-memory write");
        let real = |v: f64| format!("{v:.16e}");
        let opt = |v: Option<f64>| v.map(real).unwrap_or_default();
        for r in &self.records {
            w.write_record([
                r.k.to_string(),
                r.grad_evals.to_string(),
                r.comm_rounds.to_string(),
                real(r.sim_time),
                real(r.bregman),
                real(r.fem),
                real(r.consensus_err),
                opt(r.certified_ub),
                opt(r.lower_bound_ref),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    /// Everything except the records, for the JSON sidecar.
    pub fn metadata(&self) -> serde_json::Value {
        serde_json::json!({
            "label": self.label,
            "method": self.method,
            "seed": self.seed,
            "config": self.config,
            "instance_hash": self.instance_hash,
            "cost": self.cost,
            "lower_bound": self.lower_bound,
            "records": self.records.len(),
        })
    }
}

/// A configured run with its problem data, before any step is taken.
pub struct PreparedRun {
    pub config: ExperimentConfig,
    pub graph: Graph,
    pub gossip: GossipMatrix,
    pub instance: ObjectiveInstance,
    pub reference: ReferenceSolution,
    pub run: AlgorithmRun,
    /// Bound on `G(u^T)` for the accelerated schemes.
    pub certified_ub: Option<f64>,
    pub lower_bound: Option<(LowerBoundKind, LowerBoundModel)>,
}

fn build_instance(config: &ExperimentConfig) -> Result<ObjectiveInstance> {
    let m = config.agents;
    let data_seed = config.seed ^ DATA_SEED_SALT;
    match &config.objective {
        ObjectiveSpec::LeastSquares { r, d, omega, noise_sd } => {
            generate_least_squares(m, *r, *d, *omega, *noise_sd, data_seed)
        }
        ObjectiveSpec::LogisticCsv { path, label_column } => load_csv_dataset(path, label_column, m),
        ObjectiveSpec::HardTwoAgent { k, d, lf } => generate_hard_instance(HardKind::TwoAgent { k: *k, d: *d }, *lf),
        ObjectiveSpec::HardLine { k, d, lf, zeta } => generate_hard_instance(
            HardKind::Line {
                m,
                k: *k,
                d: *d,
                zeta: *zeta,
            },
            *lf,
        ),
        ObjectiveSpec::Zero { d } => ObjectiveInstance::zero(m, *d),
    }
}

/// Builds graph, data, reference solution and algorithm state; runs every
/// feasibility check without taking a step.
pub fn prepare(config: &ExperimentConfig) -> Result<PreparedRun> {
    config.validate()?;
    let graph = build_topology(config.topology, config.agents, config.seed)?;
    let gossip = laplacian(&graph)?;
    let instance = build_instance(config)?;
    let reference = solve_reference(&instance)?;
    let t = config.iterations;
    let run = match config.algorithm {
        AlgorithmSpec::Optra { nu, k, gamma, tau } => {
            let (state, schedule) =
                configure_optra(&instance, &gossip, nu, t, k, StepOverrides { gamma, tau }, None)?;
            AlgorithmRun::Accelerated {
                method: Method::Optra,
                state,
                schedule,
            }
        }
        AlgorithmSpec::OptraN { nu, gamma, tau } => {
            let (state, schedule) = configure_optra_n(&instance, &gossip, nu, t, StepOverrides { gamma, tau }, None)?;
            AlgorithmRun::Accelerated {
                method: Method::OptraN,
                state,
                schedule,
            }
        }
        AlgorithmSpec::PrimalDual { nu, gamma, tau } => AlgorithmRun::PrimalDual(configure_primal_dual(
            &instance,
            &gossip,
            nu,
            StepOverrides { gamma, tau },
            None,
        )?),
        AlgorithmSpec::Dgd { step } => {
            AlgorithmRun::Baseline(BaselineState::new(BaselineKind::Dgd, &instance, &gossip, step, None)?)
        }
        AlgorithmSpec::Extra { step } => {
            AlgorithmRun::Baseline(BaselineState::new(BaselineKind::Extra, &instance, &gossip, step, None)?)
        }
        AlgorithmSpec::GradientTracking { step } => AlgorithmRun::Baseline(BaselineState::new(
            BaselineKind::GradientTracking,
            &instance,
            &gossip,
            step,
            None,
        )?),
    };

    let x1 = run.metric_iterate();
    let certified_ub = match &run {
        AlgorithmRun::Accelerated { state, .. } => {
            let rx = frobenius_norm(&x1.sub(&reference.stacked(instance.m()))).powi(2);
            let y2 = frobenius_norm(&reference.y_star).powi(2);
            Some(certified_upper_bound(
                t,
                state.params.gamma,
                state.params.tau,
                rx,
                state.params.b.lambda2(),
                y2,
            )?)
        }
        _ => None,
    };

    let lower_bound = match instance.kind() {
        InstanceKind::HardTwoAgent { k } => Some((
            LowerBoundKind::HardInstance,
            LowerBoundModel::HardInstance {
                lf: instance.lf(),
                order: k,
                pairs: 1,
                separation: 1,
            },
        )),
        InstanceKind::HardLine {
            k, pairs, separation, ..
        } => Some((
            LowerBoundKind::HardInstance,
            LowerBoundModel::HardInstance {
                lf: instance.lf(),
                order: k,
                pairs,
                separation,
            },
        )),
        _ if config.lower_bound_overlay => Some((
            LowerBoundKind::ReferenceOnly,
            LowerBoundModel::Generic {
                lf: instance.lf(),
                r: frobenius_norm(&x1.sub(&reference.stacked(instance.m()))),
                grad_norm_star: frobenius_norm(&reference.grad_at_star),
                eta: gossip.eigengap(),
            },
        )),
        _ => None,
    };

    Ok(PreparedRun {
        config: config.clone(),
        graph,
        gossip,
        instance,
        reference,
        run,
        certified_ub,
        lower_bound,
    })
}

impl PreparedRun {
    /// Advances to the horizon, recording metrics at `k = 1`, `k = 2`,
    /// every `record_every` iterations and at the final iterate.
    pub fn execute(mut self) -> Result<RunTrace> {
        let cfg = &self.config;
        let cost = cfg.cost_model();
        let every = cfg.record_every();
        let horizon = cfg.iterations;
        let init = self.run.init_cost();
        let (mut grads, mut rounds) = (init.grad_evals, init.comm_rounds);
        let mut records = Vec::new();

        let record = |k: usize, grads: usize, rounds: usize, run: &AlgorithmRun, last: bool| -> Result<TraceRecord> {
            let x = run.metric_iterate();
            let snap = metrics::snapshot(&x, &self.reference, &self.instance, None)?;
            let sim_time = cost.sim_time(grads, rounds);
            Ok(TraceRecord {
                k,
                grad_evals: grads,
                comm_rounds: rounds,
                sim_time,
                bregman: snap.bregman,
                fem: snap.fem,
                consensus_err: snap.consensus_err,
                certified_ub: if last && k == horizon { self.certified_ub } else { None },
                lower_bound_ref: self
                    .lower_bound
                    .as_ref()
                    .map(|(_, model)| lower_bound_curve(sim_time, model, cost.tau_c)),
            })
        };

        records.push(record(1, grads, rounds, &self.run, horizon == 1)?);
        let mut k = 1;
        while k < horizon {
            let rep = self.run.step(&self.instance)?;
            k += 1;
            grads += rep.grad_evals;
            rounds += rep.comm_rounds;
            let out_of_time = cfg.max_sim_time.is_some_and(|t| cost.sim_time(grads, rounds) >= t);
            let last = k == horizon || out_of_time;
            if last || k == 2 || (k - 1) % every == 0 {
                records.push(record(k, grads, rounds, &self.run, last)?);
            }
            if out_of_time {
                break;
            }
        }

        Ok(RunTrace {
            label: cfg.label(),
            method: self.run.method(),
            seed: cfg.seed,
            instance_hash: self.instance.digest(),
            cost,
            lower_bound: self.lower_bound.map(|(kind, _)| kind),
            records,
            config: self.config,
        })
    }
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<RunTrace> {
    prepare(config)?.execute()
}

/// Runs every config on a pool of `jobs` threads. Results keep input order
/// and a failing config does not stop the others.
pub fn sweep(configs: &[ExperimentConfig], jobs: usize) -> Result<Vec<Result<RunTrace>>> {
    if configs.is_empty() {
        return Err(Error::InvalidParameter("sweep needs at least one config".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    Ok(pool.install(|| configs.par_iter().map(run_experiment).collect()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankEntry {
    /// Position of the trace in the input slice.
    pub trace: usize,
    pub label: String,
    pub record: TraceRecord,
}

/// Ranks traces by Bregman distance (then FEM) at the last record within `budget`.
pub fn compare_at_budget(traces: &[RunTrace], budget: f64) -> Result<Vec<RankEntry>> {
    if traces.is_empty() {
        return Err(Error::InvalidParameter("no traces to compare".into()));
    }
    let mut out = Vec::with_capacity(traces.len());
    for (i, t) in traces.iter().enumerate() {
        let rec = t.at_budget(budget).ok_or(Error::BudgetTooSmall {
            budget,
            trace: i,
            first: t.records[0].sim_time,
        })?;
        out.push(RankEntry {
            trace: i,
            label: t.label.clone(),
            record: *rec,
        });
    }
    out.sort_by(|a, b| {
        a.record
            .bregman
            .total_cmp(&b.record.bregman)
            .then(a.record.fem.total_cmp(&b.record.fem))
    });
    Ok(out)
}

/// Metric plotted on the y axis of the emitted script.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotMetric {
    Bregman,
    Fem,
    ConsensusErr,
}

impl PlotMetric {
    fn column(self) -> (usize, &'static str) {
        match self {
            PlotMetric::Bregman => (5, "Bregman distance G"),
            PlotMetric::Fem => (6, "FEM"),
            PlotMetric::ConsensusErr => (7, "consensus error"),
        }
    }
}

/// Gnuplot script with three panels sharing a log-scale y axis: metric
/// against total cost, communication cost and computation cost.
pub fn plot_script(csvs: &[(String, String)], tau_c: f64, metric: PlotMetric, output: &str) -> String {
    let (col, ylabel) = metric.column();
    let mut s = String::new();
    s.push_str("set terminal pngcairo size 1800,520\n");
    s.push_str(&format!("set output '{output}'\n"));
    s.push_str("set datafile separator ','\n");
    s.push_str("set logscale y\n");
    s.push_str(&format!("set ylabel '{ylabel}'\n"));
    s.push_str("set key top right\n");
    s.push_str("set multiplot layout 1,3\n");
    let panels = [
        ("total cost", "4".to_string()),
        ("communication cost", format!("($3*{tau_c})")),
        ("computation cost", "2".to_string()),
    ];
    for (xlabel, xexpr) in panels {
        s.push_str(&format!("set xlabel '{xlabel}'\n"));
        let parts: Vec<String> = csvs
            .iter()
            .map(|(label, path)| format!("'{path}' every ::1 using {xexpr}:{col} with lines title '{label}'"))
            .collect();
        s.push_str(&format!("plot {}\n", parts.join(", \\\n     ")));
    }
    s.push_str("unset multiplot\n");
    s
}

/// Writes `<label>.csv`, `<label>.json` and `plot.gp` for the traces into `dir`.
pub fn write_outputs(traces: &[RunTrace], dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut entries = Vec::new();
    let mut used = std::collections::HashSet::new();
    for t in traces {
        let mut stem = sanitize(&t.label);
        let mut n = 2;
        while !used.insert(stem.clone()) {
            stem = format!("{}-{n}", sanitize(&t.label));
            n += 1;
        }
        let csv_path = dir.join(format!("{stem}.csv"));
        std::fs::write(&csv_path, t.to_csv())?;
        let meta_path = dir.join(format!("{stem}.json"));
        let mut f = std::fs::File::create(&meta_path)?;
        serde_json::to_writer_pretty(&mut f, &t.metadata()).map_err(|e| Error::Io(e.to_string()))?;
        f.write_all(b"\n")?;
        entries.push((t.label.clone(), format!("{stem}.csv")));
        written.push(csv_path);
        written.push(meta_path);
    }
    let tau_c = traces.first().map(|t| t.cost.tau_c).unwrap_or(1.0);
    let plot = dir.join("plot.gp");
    std::fs::write(&plot, plot_script(&entries, tau_c, PlotMetric::Bregman, "figure.png"))?;
    written.push(plot);
    Ok(written)
}

fn sanitize(label: &str) -> String {
    let s: String = label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect();
    if s.is_empty() {
        "run".into()
    } else {
        s
    }
}
