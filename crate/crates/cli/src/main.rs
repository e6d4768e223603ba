use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pdnet::consensus::ChebyshevPlan;
use pdnet::harness::{self, AlgorithmSpec, ExperimentConfig};
use pdnet::network::{laplacian, Graph};
use pdnet::objectives::{
    generate_hard_instance, hard_restricted_optimum, solve_reference, HardKind, LocalObjective, DEFAULT_ZETA,
};
use pdnet::{Error, Result};

/// Gossip-based primal-dual methods for distributed smooth convex optimization.
#[derive(Debug, Parser)]
#[command(name = "pdnet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one experiment and write its trace, sidecar and plot script.
    Run {
        /// Experiment config (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run a JSON array of experiment configs in parallel.
    Sweep {
        /// JSON array of experiment configs.
        #[arg(long)]
        config: PathBuf,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also rank the runs at this simulated-time budget.
        #[arg(long)]
        budget: Option<f64>,
        /// Applied to every config in the file.
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Print lambda_2, lambda_max, the eigengap and the Chebyshev degree of a graph's Laplacian.
    Spectrum {
        /// Edge list, one `i j` pair per line, `#` comments allowed.
        #[arg(long)]
        graph: PathBuf,
        /// Number of nodes; defaults to one past the largest index.
        #[arg(long)]
        nodes: Option<usize>,
    },
    /// Write a hard instance together with its closed-form optimum.
    HardInstance {
        #[arg(long, value_enum, default_value_t = HardKindArg::TwoAgent)]
        kind: HardKindArg,
        /// Order of the instance (coordinates that must be discovered).
        #[arg(long)]
        k: usize,
        /// Dimension, at least 2k + 1.
        #[arg(long)]
        d: usize,
        /// Smoothness constant.
        #[arg(long, default_value_t = 1.0)]
        lf: f64,
        /// Agents on the line (line kind only).
        #[arg(long, default_value_t = 20)]
        agents: usize,
        /// Fraction of agents at each end of the line (line kind only).
        #[arg(long, default_value_t = DEFAULT_ZETA)]
        zeta: f64,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Build everything a run needs and check step-size feasibility without stepping.
    ValidateConfig {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HardKindArg {
    TwoAgent,
    Line,
}

/// Flags that replace the matching config-file field.
#[derive(Debug, Clone, Default, Args)]
struct Overrides {
    /// Overrides `seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides `label`.
    #[arg(long)]
    label: Option<String>,
    /// Overrides `agents` (file default 20).
    #[arg(long)]
    agents: Option<usize>,
    /// Overrides `iterations`.
    #[arg(long)]
    iterations: Option<usize>,
    /// Overrides `tau_c`, the time of one communication round (file default 1).
    #[arg(long)]
    tau_c: Option<f64>,
    /// Overrides `grad_time`, the time of one gradient evaluation (file default 1).
    #[arg(long)]
    grad_time: Option<f64>,
    /// Overrides `record_every` (file default ceil(iterations / 200)).
    #[arg(long)]
    record_every: Option<usize>,
    /// Stop once simulated time reaches this value.
    #[arg(long)]
    max_sim_time: Option<f64>,
    /// Add the generic lower-bound curve, marked reference-only.
    #[arg(long)]
    lower_bound_overlay: bool,
    /// Overrides `algorithm.nu` (primal-dual methods).
    #[arg(long)]
    nu: Option<f64>,
    /// Overrides `algorithm.gamma` (primal-dual methods).
    #[arg(long)]
    gamma: Option<f64>,
    /// Overrides `algorithm.tau` (primal-dual methods).
    #[arg(long)]
    tau: Option<f64>,
    /// Overrides `algorithm.k`, rounds per Chebyshev call (optra only).
    #[arg(long)]
    k: Option<usize>,
    /// Overrides `algorithm.step` (dgd, extra, gradient-tracking; file default 1e-5).
    #[arg(long)]
    step: Option<f64>,
}

impl Overrides {
    fn apply(&self, cfg: &mut ExperimentConfig) -> Result<()> {
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = &self.label {
            cfg.label = Some(v.clone());
        }
        if let Some(v) = self.agents {
            cfg.agents = v;
        }
        if let Some(v) = self.iterations {
            cfg.iterations = v;
        }
        if let Some(v) = self.tau_c {
            cfg.tau_c = v;
        }
        if let Some(v) = self.grad_time {
            cfg.grad_time = v;
        }
        if self.record_every.is_some() {
            cfg.record_every = self.record_every;
        }
        if self.max_sim_time.is_some() {
            cfg.max_sim_time = self.max_sim_time;
        }
        if self.lower_bound_overlay {
            cfg.lower_bound_overlay = true;
        }
        let method = cfg.algorithm.method().name();
        let reject = |flag: &str| Error::ConfigError {
            path: format!("algorithm.{flag}"),
            message: format!("--{flag} does not apply to {method}"),
        };
        match &mut cfg.algorithm {
            AlgorithmSpec::Optra { nu, k, gamma, tau } => {
                set_pd(self, nu, gamma, tau);
                if self.k.is_some() {
                    *k = self.k;
                }
                if self.step.is_some() {
                    return Err(reject("step"));
                }
            }
            AlgorithmSpec::OptraN { nu, gamma, tau } | AlgorithmSpec::PrimalDual { nu, gamma, tau } => {
                set_pd(self, nu, gamma, tau);
                if self.k.is_some() {
                    return Err(reject("k"));
                }
                if self.step.is_some() {
                    return Err(reject("step"));
                }
            }
            AlgorithmSpec::Dgd { step } | AlgorithmSpec::Extra { step } | AlgorithmSpec::GradientTracking { step } => {
                for (flag, set) in [
                    ("nu", self.nu.is_some()),
                    ("gamma", self.gamma.is_some()),
                    ("tau", self.tau.is_some()),
                    ("k", self.k.is_some()),
                ] {
                    if set {
                        return Err(reject(flag));
                    }
                }
                if let Some(v) = self.step {
                    *step = v;
                }
            }
        }
        Ok(())
    }
}

fn set_pd(o: &Overrides, nu: &mut f64, gamma: &mut Option<f64>, tau: &mut Option<f64>) {
    if let Some(v) = o.nu {
        *nu = v;
    }
    if o.gamma.is_some() {
        *gamma = o.gamma;
    }
    if o.tau.is_some() {
        *tau = o.tau;
    }
}

fn load_config(path: &Path, overrides: &Overrides) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::from_file(path)?;
    overrides.apply(&mut cfg)?;
    Ok(cfg)
}

fn load_sweep(path: &Path, overrides: &Overrides) -> Result<Vec<ExperimentConfig>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::ConfigError {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let values: Vec<serde_json::Value> = serde_json::from_str(&text).map_err(|e| Error::ConfigError {
        path: path.display().to_string(),
        message: format!("expected a JSON array of configs: {e}"),
    })?;
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let mut cfg = ExperimentConfig::from_json(&v.to_string()).map_err(|e| prefix(i, e))?;
            overrides.apply(&mut cfg).map_err(|e| prefix(i, e))?;
            Ok(cfg)
        })
        .collect()
}

fn prefix(i: usize, e: Error) -> Error {
    match e {
        Error::ConfigError { path, message } => Error::ConfigError {
            path: format!("[{i}].{path}"),
            message,
        },
        other => other,
    }
}

fn run(config: &Path, out: &Path, overrides: &Overrides) -> Result<()> {
    let cfg = load_config(config, overrides)?;
    let trace = harness::run_experiment(&cfg)?;
    harness::write_outputs(std::slice::from_ref(&trace), out)?;
    let last = trace.final_record();
    println!(
        "{}: k={} sim_time={} bregman={:e} fem={:e} consensus_err={:e}",
        trace.label, last.k, last.sim_time, last.bregman, last.fem, last.consensus_err
    );
    Ok(())
}

fn sweep(config: &Path, out: &Path, jobs: usize, budget: Option<f64>, overrides: &Overrides) -> Result<()> {
    let configs = load_sweep(config, overrides)?;
    let results = harness::sweep(&configs, jobs)?;
    let mut traces = Vec::new();
    let mut first_err = None;
    for (cfg, res) in configs.iter().zip(results) {
        match res {
            Ok(t) => traces.push(t),
            Err(e) => {
                eprintln!("pdnet: run '{}' failed: {e}", cfg.label());
                first_err.get_or_insert(e);
            }
        }
    }
    if !traces.is_empty() {
        harness::write_outputs(&traces, out)?;
        for t in &traces {
            let last = t.final_record();
            println!("{}: k={} sim_time={} bregman={:e}", t.label, last.k, last.sim_time, last.bregman);
        }
        if let Some(b) = budget {
            for (rank, e) in harness::compare_at_budget(&traces, b)?.iter().enumerate() {
                println!(
                    "rank {} at budget {b}: {} (k={} bregman={:e} fem={:e})",
                    rank + 1,
                    e.label,
                    e.record.k,
                    e.record.bregman,
                    e.record.fem
                );
            }
        }
    }
    first_err.map_or(Ok(()), Err)
}

fn spectrum(graph: &Path, nodes: Option<usize>) -> Result<()> {
    let text = std::fs::read_to_string(graph)?;
    let g = Graph::parse_edge_list(&text, nodes)?;
    let l = laplacian(&g)?;
    let plan = ChebyshevPlan::plan(l.eigengap(), None)?;
    println!("lambda2 = {:.16e}", l.lambda2());
    println!("lambda_max = {:.16e}", l.lambda_max());
    println!("eta = {:.16e}", l.eigengap());
    println!("K = {}", plan.k);
    Ok(())
}

fn hard_instance(kind: HardKindArg, k: usize, d: usize, lf: f64, agents: usize, zeta: f64, out: &Path) -> Result<()> {
    let (hk, name) = match kind {
        HardKindArg::TwoAgent => (HardKind::TwoAgent { k, d }, "two-agent"),
        HardKindArg::Line => (HardKind::Line { m: agents, k, d, zeta }, "line"),
    };
    let inst = generate_hard_instance(hk, lf)?;
    let reference = solve_reference(&inst)?;
    let locals: Vec<_> = inst
        .locals()
        .iter()
        .enumerate()
        .map(|(i, l)| match l {
            LocalObjective::Quadratic { hessian, linear } => {
                let mut entries = Vec::new();
                for r in 0..hessian.n() {
                    for c in 0..hessian.n() {
                        let v = hessian.get(r, c);
                        if v != 0.0 {
                            entries.push(json!([r, c, v]));
                        }
                    }
                }
                let lin: Vec<_> = linear
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0.0)
                    .map(|(j, v)| json!([j, v]))
                    .collect();
                json!({"agent": i, "type": "quadratic", "hessian": entries, "linear": lin})
            }
            _ => json!({"agent": i, "type": "zero"}),
        })
        .collect();
    let restricted: Vec<f64> = (0..=k).map(|j| hard_restricted_optimum(lf, k, j)).collect();
    let doc = json!({
        "kind": inst.kind(),
        "m": inst.m(),
        "d": inst.d(),
        "lf": inst.lf(),
        "digest": inst.digest(),
        "objective": "f_i(x) = 1/2 x^T H_i x + c_i^T x; sparse entries are [row, col, value] and [index, value], 0-based",
        "locals": locals,
        "reference": {
            "x_star": reference.x_star,
            "f_star": reference.f_star,
            "restricted_optimum": restricted,
        },
    });
    std::fs::create_dir_all(out)?;
    let path = out.join(format!("hard-{name}-k{k}-d{d}.json"));
    let text = serde_json::to_string_pretty(&doc).map_err(|e| Error::Io(e.to_string()))?;
    std::fs::write(&path, text + "\n")?;
    println!("{}", path.display());
    Ok(())
}

fn validate(config: &Path, overrides: &Overrides) -> Result<()> {
    let cfg = load_config(config, overrides)?;
    let prepared = harness::prepare(&cfg)?;
    let g = &prepared.gossip;
    print!(
        "ok: {} m={} edges={} lambda2={:.6e} lambda_max={:.6e} eta={:.6e} L_f={:.6e}",
        cfg.algorithm.method().name(),
        prepared.graph.m(),
        prepared.graph.edge_count(),
        g.lambda2(),
        g.lambda_max(),
        g.eigengap(),
        prepared.instance.lf()
    );
    if let Some(p) = prepared.run.primal_dual_params() {
        print!(" gamma={:.6e} tau={:.6e}", p.gamma, p.tau);
    }
    println!();
    Ok(())
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run { config, out, overrides } => run(&config, &out, &overrides),
        Command::Sweep {
            config,
            out,
            jobs,
            budget,
            overrides,
        } => sweep(&config, &out, jobs, budget, &overrides),
        Command::Spectrum { graph, nodes } => spectrum(&graph, nodes),
        Command::HardInstance {
            kind,
            k,
            d,
            lf,
            agents,
            zeta,
            out,
        } => hard_instance(kind, k, d, lf, agents, zeta, &out),
        Command::ValidateConfig { config, overrides } => validate(&config, &overrides),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Help and version go to stdout with success; usage errors count as config errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let line = e.to_string().replace('\n', " ");
            eprintln!("pdnet: {line}");
            ExitCode::from(if e.is_config_error() { 1 } else { 2 })
        }
    }
}
