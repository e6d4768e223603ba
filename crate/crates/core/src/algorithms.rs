//! Iterative schemes: plain and accelerated primal-dual, the
//! Chebyshev-accelerated variant, and the DGD / EXTRA / gradient-tracking
//! baselines.
//!
//! Iterates are indexed from 1: a freshly built state holds `x^1`, and each
//! step produces the next superscript. Cross-agent mixing happens only
//! through [`MixingOperator`], which also reports how many communication
//! rounds one application costs.

use serde::{Deserialize, Serialize};

use crate::consensus::{acc_gossip, ChebyshevPlan};
use crate::error::{Error, Result};
use crate::linalg::{apply, DenseSym, MultiVector};
use crate::network::{scale_for_chebyshev, GossipMatrix};
use crate::objectives::ObjectiveInstance;

/// Slack allowed in the step-size feasibility inequality.
pub const FEASIBILITY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    PrimalDual,
    OptraN,
    Optra,
    Dgd,
    Extra,
    GradientTracking,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::PrimalDual => "primal-dual",
            Method::OptraN => "optra-n",
            Method::Optra => "optra",
            Method::Dgd => "dgd",
            Method::Extra => "extra",
            Method::GradientTracking => "gradient-tracking",
        }
    }
}

/// `theta_1 = 1`, `1/theta_k = (1 + sqrt(1 + 4/theta_{k-1}^2)) / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaSchedule {
    thetas: Vec<f64>,
}

impl ThetaSchedule {
    /// `theta_1 ..= theta_len`.
    pub fn new(len: usize) -> Self {
        let mut thetas = Vec::with_capacity(len);
        let mut inv = 1.0f64;
        for k in 0..len {
            if k > 0 {
                inv = (1.0 + (1.0 + 4.0 * inv * inv).sqrt()) / 2.0;
            }
            thetas.push(1.0 / inv);
        }
        Self { thetas }
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    /// `theta_k`, 1-based.
    pub fn theta(&self, k: usize) -> f64 {
        self.thetas[k - 1]
    }

    /// Coefficients of step `k` (which reads `theta_k` and `theta_{k+1}`).
    pub fn coefficients(&self, k: usize, tau: f64) -> StepCoefficients {
        let (t0, t1) = (self.theta(k), self.theta(k + 1));
        StepCoefficients {
            alpha: t1 / t0 - t1,
            sigma: 1.0 / t1,
            tau_k: tau / t0,
            beta: t0 / t1,
        }
    }
}

/// Schedule for horizon `T`, precomputed to `theta_{T+1}` because step `k` reads `theta_{k+1}`.
pub fn theta_schedule(horizon: usize) -> ThetaSchedule {
    ThetaSchedule::new(horizon + 1)
}

/// Per-step scalars of the accelerated update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepCoefficients {
    pub alpha: f64,
    pub sigma: f64,
    pub tau_k: f64,
    pub beta: f64,
}

impl StepCoefficients {
    /// Values that turn the accelerated update into the plain one.
    pub fn plain(tau: f64) -> Self {
        Self {
            alpha: 0.0,
            sigma: 1.0,
            tau_k: tau,
            beta: 1.0,
        }
    }
}

/// A linear cross-agent operator with known spectrum and round cost.
#[derive(Debug, Clone)]
pub enum MixingOperator {
    /// One round per application.
    Dense { matrix: DenseSym, spectrum: Vec<f64> },
    /// `P_K(L)`, `K` rounds.
    Chebyshev { l: GossipMatrix, plan: ChebyshevPlan },
    /// `I - c2 P_K(L)`, `K` rounds.
    ChebyshevComplement { l: GossipMatrix, plan: ChebyshevPlan },
}

impl MixingOperator {
    /// `alpha I + beta L` built from the gossip matrix's cached spectrum.
    pub fn affine(l: &GossipMatrix, alpha: f64, beta: f64) -> Self {
        let spectrum = l.eigen().values.iter().map(|v| alpha + beta * v).collect();
        MixingOperator::Dense {
            matrix: l.matrix().shifted(alpha, beta),
            spectrum,
        }
    }

    pub fn apply(&self, x: &MultiVector) -> Result<MultiVector> {
        match self {
            MixingOperator::Dense { matrix, .. } => apply(matrix, x),
            MixingOperator::Chebyshev { l, plan } => acc_gossip(x, l, plan),
            MixingOperator::ChebyshevComplement { l, plan } => {
                let p = acc_gossip(x, l, plan)?;
                Ok(MultiVector::lincomb(1.0, x, -plan.c2, &p))
            }
        }
    }

    /// Communication rounds per application.
    pub fn rounds(&self) -> usize {
        match self {
            MixingOperator::Dense { .. } => 1,
            MixingOperator::Chebyshev { plan, .. } | MixingOperator::ChebyshevComplement { plan, .. } => {
                plan.k
            }
        }
    }

    /// Eigenvalues paired with the eigenvectors of the underlying gossip matrix.
    pub fn spectrum(&self) -> Vec<f64> {
        match self {
            MixingOperator::Dense { spectrum, .. } => spectrum.clone(),
            MixingOperator::Chebyshev { l, plan } => {
                l.eigen().values.iter().map(|&v| plan.polynomial(v)).collect()
            }
            MixingOperator::ChebyshevComplement { l, plan } => l
                .eigen()
                .values
                .iter()
                .map(|&v| 1.0 - plan.c2 * plan.polynomial(v))
                .collect(),
        }
    }

    pub fn lambda_max(&self) -> f64 {
        self.spectrum().into_iter().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Smallest eigenvalue off the consensus direction.
    pub fn lambda2(&self) -> f64 {
        self.spectrum()[1..].iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Optional replacements for the default step sizes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepOverrides {
    pub gamma: Option<f64>,
    pub tau: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct PrimalDualParams {
    pub gamma: f64,
    pub tau: f64,
    pub nu: f64,
    /// `T` for the accelerated schemes; `None` for the plain method.
    pub horizon: Option<usize>,
    pub a: MixingOperator,
    pub b: MixingOperator,
}

impl PrimalDualParams {
    /// Checks `(1 - gamma L_f) - (gamma tau / theta_k^2) lambda_max(B) >= 0`
    /// for every step the schedule allows (`theta = 1` for the plain method).
    pub fn check_feasibility(&self, lf: f64, schedule: Option<&ThetaSchedule>) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma.is_finite() && self.tau > 0.0 && self.tau.is_finite()) {
            return Err(Error::StepSizeInfeasible(format!(
                "step sizes must be positive and finite (gamma = {}, tau = {})",
                self.gamma, self.tau
            )));
        }
        let lb = self.b.lambda_max();
        let worst = match (self.horizon, schedule) {
            (Some(t), Some(s)) if t >= 2 => (1..t).map(|k| (k, s.theta(k))).fold((1, 1.0), |acc, c| {
                if c.1 < acc.1 {
                    c
                } else {
                    acc
                }
            }),
            _ => (1, 1.0),
        };
        let (k, theta) = worst;
        let margin = (1.0 - self.gamma * lf) - self.gamma * self.tau / (theta * theta) * lb;
        if margin < -FEASIBILITY_SLACK {
            return Err(Error::StepSizeInfeasible(format!(
                "(1 - gamma L_f) I - (gamma tau / theta_k^2) B >= 0 fails at k = {k}: \
                 margin {margin:e} with gamma = {}, tau = {}, L_f = {lf}, lambda_max(B) = {lb}",
                self.gamma, self.tau
            )));
        }
        Ok(())
    }
}

/// Variables of the primal-dual family.
#[derive(Debug, Clone)]
pub struct PrimalDualState {
    pub params: PrimalDualParams,
    pub x: MultiVector,
    pub u: MultiVector,
    pub x_hat: MultiVector,
    pub y: MultiVector,
    pub y_hat: MultiVector,
    /// Superscript of the current iterate.
    pub k: usize,
    avg_sum: MultiVector,
    avg_count: usize,
}

impl PrimalDualState {
    /// `u^1 = x^1`, `y^1 = 0`, `yhat^1 = tau_1 B x^1` (with `tau_1 = tau`).
    pub fn new(params: PrimalDualParams, x1: MultiVector) -> Result<Self> {
        let (m, d) = x1.shape();
        if params.a.spectrum().len() != m {
            return Err(Error::ShapeError(format!(
                "operators act on {} agents, iterate has {m}",
                params.a.spectrum().len()
            )));
        }
        let y_hat = params.b.apply(&x1)?.scaled(params.tau);
        Ok(Self {
            u: x1.clone(),
            x_hat: x1.clone(),
            y: MultiVector::zeros(m, d),
            y_hat,
            avg_sum: MultiVector::zeros(m, d),
            avg_count: 0,
            k: 1,
            params,
            x: x1,
        })
    }

    /// Rounds spent building `yhat^1`.
    pub fn init_rounds(&self) -> usize {
        self.params.b.rounds()
    }

    /// `xbar^k = (1/(k-1)) sum_{t=2..k} x^t`; `None` before the first step.
    pub fn running_average(&self) -> Option<MultiVector> {
        (self.avg_count > 0).then(|| self.avg_sum.scaled(1.0 / self.avg_count as f64))
    }
}

fn default_x1(inst: &ObjectiveInstance, x1: Option<MultiVector>) -> MultiVector {
    x1.unwrap_or_else(|| MultiVector::zeros(inst.m(), inst.d()))
}

fn check_nu(nu: f64) -> Result<()> {
    if nu > 0.0 && nu.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("nu must be positive, got {nu}")))
    }
}

fn check_horizon(horizon: usize) -> Result<()> {
    if horizon >= 2 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("horizon T must be >= 2, got {horizon}")))
    }
}

/// Plain method with `A = I - L/lambda_m`, `B = L/lambda_m`,
/// `gamma = nu/(nu L_f + 1)`, `tau = 1/(nu lambda_m(B))`.
pub fn configure_primal_dual(
    inst: &ObjectiveInstance,
    l: &GossipMatrix,
    nu: f64,
    overrides: StepOverrides,
    x1: Option<MultiVector>,
) -> Result<PrimalDualState> {
    check_nu(nu)?;
    let lm = l.lambda_max();
    let a = MixingOperator::affine(l, 1.0, -1.0 / lm);
    let b = MixingOperator::affine(l, 0.0, 1.0 / lm);
    let params = PrimalDualParams {
        gamma: overrides.gamma.unwrap_or(nu / (nu * inst.lf() + 1.0)),
        tau: overrides.tau.unwrap_or(1.0 / (nu * b.lambda_max())),
        nu,
        horizon: None,
        a,
        b,
    };
    params.check_feasibility(inst.lf(), None)?;
    PrimalDualState::new(params, default_x1(inst, x1))
}

/// OPTRA-N: `A = I - L/lambda_m`, `B = L/lambda_m`,
/// `gamma = nu/(nu L_f + T)`, `tau = 1/(nu T lambda_m(B))`.
pub fn configure_optra_n(
    inst: &ObjectiveInstance,
    l: &GossipMatrix,
    nu: f64,
    horizon: usize,
    overrides: StepOverrides,
    x1: Option<MultiVector>,
) -> Result<(PrimalDualState, ThetaSchedule)> {
    check_nu(nu)?;
    check_horizon(horizon)?;
    let lm = l.lambda_max();
    let a = MixingOperator::affine(l, 1.0, -1.0 / lm);
    let b = MixingOperator::affine(l, 0.0, 1.0 / lm);
    let t = horizon as f64;
    let params = PrimalDualParams {
        gamma: overrides.gamma.unwrap_or(nu / (nu * inst.lf() + t)),
        tau: overrides.tau.unwrap_or(1.0 / (nu * t * b.lambda_max())),
        nu,
        horizon: Some(horizon),
        a,
        b,
    };
    let sched = theta_schedule(horizon);
    params.check_feasibility(inst.lf(), Some(&sched))?;
    Ok((PrimalDualState::new(params, default_x1(inst, x1))?, sched))
}

/// OPTRA: scales the raw Laplacian, then uses `A = I - c2 P_K(L)`,
/// `B = P_K(L)`, `gamma = nu/(nu L_f + T)`, `tau = c2/(nu T)`.
pub fn configure_optra(
    inst: &ObjectiveInstance,
    l_raw: &GossipMatrix,
    nu: f64,
    horizon: usize,
    k_override: Option<usize>,
    overrides: StepOverrides,
    x1: Option<MultiVector>,
) -> Result<(PrimalDualState, ThetaSchedule)> {
    check_nu(nu)?;
    check_horizon(horizon)?;
    let l = scale_for_chebyshev(l_raw)?;
    let plan = ChebyshevPlan::plan(l.eigengap(), k_override)?;
    let t = horizon as f64;
    let params = PrimalDualParams {
        gamma: overrides.gamma.unwrap_or(nu / (nu * inst.lf() + t)),
        tau: overrides.tau.unwrap_or(plan.c2 / (nu * t)),
        nu,
        horizon: Some(horizon),
        a: MixingOperator::ChebyshevComplement { l: l.clone(), plan },
        b: MixingOperator::Chebyshev { l, plan },
    };
    let sched = theta_schedule(horizon);
    params.check_feasibility(inst.lf(), Some(&sched))?;
    Ok((PrimalDualState::new(params, default_x1(inst, x1))?, sched))
}

/// Resources consumed by one step.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StepReport {
    pub grad_evals: usize,
    pub comm_rounds: usize,
}

/// `x+ = A(x - gamma(grad f(x) + yhat))`, `y+ = y + tau B x+`, `yhat+ = 2 y+ - y`.
pub fn plain_primal_dual_step(state: &mut PrimalDualState, inst: &ObjectiveInstance) -> Result<StepReport> {
    let p = &state.params;
    let mut dir = inst.gradient(&state.x)?;
    dir.axpy(1.0, &state.y_hat);
    let x_next = p.a.apply(&MultiVector::lincomb(1.0, &state.x, -p.gamma, &dir))?;
    let mut y_next = state.y.clone();
    y_next.axpy(p.tau, &p.b.apply(&x_next)?);
    state.y_hat = MultiVector::lincomb(2.0, &y_next, -1.0, &state.y);
    state.y = y_next;
    state.avg_sum.axpy(1.0, &x_next);
    state.avg_count += 1;
    state.u = x_next.clone();
    state.x_hat = x_next.clone();
    state.x = x_next;
    state.k += 1;
    Ok(StepReport {
        grad_evals: 1,
        comm_rounds: p.a.rounds() + p.b.rounds(),
    })
}

/// One accelerated update with explicit coefficients:
///
/// ```text
/// u+    = A(x - gamma(grad f(x) + yhat))
/// x+    = u+ + alpha (u+ - u)
/// xhat+ = sigma x+ + (1 - sigma) u+
/// y+    = y + tau_k B xhat+
/// yhat+ = y+ + beta (y+ - y)
/// ```
pub fn accelerated_step(
    state: &mut PrimalDualState,
    c: &StepCoefficients,
    inst: &ObjectiveInstance,
) -> Result<StepReport> {
    let p = &state.params;
    let mut dir = inst.gradient(&state.x)?;
    dir.axpy(1.0, &state.y_hat);
    let u_next = p.a.apply(&MultiVector::lincomb(1.0, &state.x, -p.gamma, &dir))?;
    let mut x_next = u_next.clone();
    x_next.axpy(c.alpha, &u_next.sub(&state.u));
    let x_hat = MultiVector::lincomb(c.sigma, &x_next, 1.0 - c.sigma, &u_next);
    let mut y_next = state.y.clone();
    y_next.axpy(c.tau_k, &p.b.apply(&x_hat)?);
    let mut y_hat = y_next.clone();
    y_hat.axpy(c.beta, &y_next.sub(&state.y));

    state.u = u_next;
    state.x = x_next;
    state.x_hat = x_hat;
    state.y = y_next;
    state.y_hat = y_hat;
    state.k += 1;
    Ok(StepReport {
        grad_evals: 1,
        comm_rounds: p.a.rounds() + p.b.rounds(),
    })
}

fn scheduled_step(
    state: &mut PrimalDualState,
    sched: &ThetaSchedule,
    inst: &ObjectiveInstance,
) -> Result<StepReport> {
    let horizon = state.params.horizon.unwrap_or(0);
    if state.k >= horizon || state.k + 1 > sched.len() {
        return Err(Error::ScheduleExhausted { k: state.k, horizon });
    }
    let c = sched.coefficients(state.k, state.params.tau);
    accelerated_step(state, &c, inst)
}

/// OPTRA-N step `k -> k + 1`; fails once `k = T`.
pub fn optra_n_step(
    state: &mut PrimalDualState,
    sched: &ThetaSchedule,
    inst: &ObjectiveInstance,
) -> Result<StepReport> {
    scheduled_step(state, sched, inst)
}

/// OPTRA step: the accelerated update with Chebyshev-backed operators
/// (state built by [`configure_optra`]); `2K` rounds per step.
pub fn optra_step(
    state: &mut PrimalDualState,
    sched: &ThetaSchedule,
    inst: &ObjectiveInstance,
) -> Result<StepReport> {
    if !matches!(state.params.b, MixingOperator::Chebyshev { .. }) {
        return Err(Error::InvalidParameter(
            "OPTRA step needs Chebyshev operators".into(),
        ));
    }
    scheduled_step(state, sched, inst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaselineKind {
    Dgd,
    Extra,
    GradientTracking,
}

/// State of a baseline method with mixing matrix `W = I - L/lambda_m`.
#[derive(Debug, Clone)]
pub struct BaselineState {
    pub kind: BaselineKind,
    pub gamma: f64,
    pub w: MixingOperator,
    pub x: MultiVector,
    /// EXTRA: dual variable. Gradient tracking: tracker of the average gradient.
    pub y: MultiVector,
    pub k: usize,
    /// EXTRA: cached `W x`. Gradient tracking: `grad f(x)`.
    cache: MultiVector,
    init: StepReport,
}

impl BaselineState {
    /// Starts at `x^0` (all zeros unless given). EXTRA caches `W x^0` and
    /// gradient tracking sets `y^0 = grad f(x^0)`; both costs are reported by
    /// [`BaselineState::init_cost`].
    pub fn new(
        kind: BaselineKind,
        inst: &ObjectiveInstance,
        l: &GossipMatrix,
        gamma: f64,
        x0: Option<MultiVector>,
    ) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidParameter(format!("step size must be positive, got {gamma}")));
        }
        let w = MixingOperator::affine(l, 1.0, -1.0 / l.lambda_max());
        let x = default_x1(inst, x0);
        let (m, d) = x.shape();
        let (y, cache, init) = match kind {
            BaselineKind::Dgd => (MultiVector::zeros(m, d), MultiVector::zeros(m, d), StepReport::default()),
            BaselineKind::Extra => (
                MultiVector::zeros(m, d),
                w.apply(&x)?,
                StepReport { grad_evals: 0, comm_rounds: w.rounds() },
            ),
            BaselineKind::GradientTracking => {
                let g = inst.gradient(&x)?;
                (g.clone(), g, StepReport { grad_evals: 1, comm_rounds: 0 })
            }
        };
        Ok(Self {
            kind,
            gamma,
            w,
            x,
            y,
            k: 0,
            cache,
            init,
        })
    }

    pub fn init_cost(&self) -> StepReport {
        self.init
    }
}

/// One baseline iteration.
///
/// * DGD: `x+ = W x - gamma grad f(x)`.
/// * EXTRA: `x+ = W x - gamma grad f(x) - y`, `y+ = y + (I - W) x+`; `W x+`
///   is reused by the next step, so one round per step.
/// * Gradient tracking: `x+ = W x - gamma y`, `y+ = W y + grad f(x+) - grad f(x)`.
pub fn baseline_step(state: &mut BaselineState, inst: &ObjectiveInstance) -> Result<StepReport> {
    let gamma = state.gamma;
    let report = match state.kind {
        BaselineKind::Dgd => {
            let g = inst.gradient(&state.x)?;
            let mut x_next = state.w.apply(&state.x)?;
            x_next.axpy(-gamma, &g);
            state.x = x_next;
            StepReport { grad_evals: 1, comm_rounds: state.w.rounds() }
        }
        BaselineKind::Extra => {
            let g = inst.gradient(&state.x)?;
            let mut x_next = state.cache.clone();
            x_next.axpy(-gamma, &g);
            x_next.axpy(-1.0, &state.y);
            let wx_next = state.w.apply(&x_next)?;
            state.y.axpy(1.0, &x_next.sub(&wx_next));
            state.x = x_next;
            state.cache = wx_next;
            StepReport { grad_evals: 1, comm_rounds: state.w.rounds() }
        }
        BaselineKind::GradientTracking => {
            let mut x_next = state.w.apply(&state.x)?;
            x_next.axpy(-gamma, &state.y);
            let g_next = inst.gradient(&x_next)?;
            let mut y_next = state.w.apply(&state.y)?;
            y_next.axpy(1.0, &g_next);
            y_next.axpy(-1.0, &state.cache);
            state.x = x_next;
            state.y = y_next;
            state.cache = g_next;
            StepReport { grad_evals: 1, comm_rounds: 2 * state.w.rounds() }
        }
    };
    state.k += 1;
    Ok(report)
}

/// `nu = sqrt(eta) R / ||grad f(x*)||`, the choice that needs the
/// (normally unknown) optimum.
pub fn oracle_informed_nu(eta: f64, r: f64, grad_norm_star: f64) -> Result<f64> {
    let nu = eta.sqrt() * r / grad_norm_star;
    if nu > 0.0 && nu.is_finite() {
        Ok(nu)
    } else {
        Err(Error::InvalidParameter(format!(
            "oracle-informed nu undefined (R = {r}, ||grad f(x*)|| = {grad_norm_star})"
        )))
    }
}

/// A configured run of any method, advanced one outer iteration at a time.
#[derive(Debug, Clone)]
pub enum AlgorithmRun {
    PrimalDual(PrimalDualState),
    Accelerated {
        method: Method,
        state: PrimalDualState,
        schedule: ThetaSchedule,
    },
    Baseline(BaselineState),
}

impl AlgorithmRun {
    pub fn method(&self) -> Method {
        match self {
            AlgorithmRun::PrimalDual(_) => Method::PrimalDual,
            AlgorithmRun::Accelerated { method, .. } => *method,
            AlgorithmRun::Baseline(s) => match s.kind {
                BaselineKind::Dgd => Method::Dgd,
                BaselineKind::Extra => Method::Extra,
                BaselineKind::GradientTracking => Method::GradientTracking,
            },
        }
    }

    pub fn step(&mut self, inst: &ObjectiveInstance) -> Result<StepReport> {
        match self {
            AlgorithmRun::PrimalDual(s) => plain_primal_dual_step(s, inst),
            AlgorithmRun::Accelerated { method: Method::Optra, state, schedule } => {
                optra_step(state, schedule, inst)
            }
            AlgorithmRun::Accelerated { state, schedule, .. } => optra_n_step(state, schedule, inst),
            AlgorithmRun::Baseline(s) => baseline_step(s, inst),
        }
    }

    /// Cost of setting up the first iterate.
    pub fn init_cost(&self) -> StepReport {
        match self {
            AlgorithmRun::PrimalDual(s) | AlgorithmRun::Accelerated { state: s, .. } => StepReport {
                grad_evals: 0,
                comm_rounds: s.init_rounds(),
            },
            AlgorithmRun::Baseline(s) => s.init_cost(),
        }
    }

    /// The iterate each method's guarantees are stated for: `u^k` for the
    /// accelerated schemes, the running average for the plain method (its
    /// first iterate before any step), `x^k` for the baselines.
    pub fn metric_iterate(&self) -> MultiVector {
        match self {
            AlgorithmRun::PrimalDual(s) => s.running_average().unwrap_or_else(|| s.x.clone()),
            AlgorithmRun::Accelerated { state, .. } => state.u.clone(),
            AlgorithmRun::Baseline(s) => s.x.clone(),
        }
    }

    /// Dual iterate, when the method has one in `C^perp`.
    pub fn dual(&self) -> Option<&MultiVector> {
        match self {
            AlgorithmRun::PrimalDual(s) | AlgorithmRun::Accelerated { state: s, .. } => Some(&s.y),
            AlgorithmRun::Baseline(s) if s.kind == BaselineKind::Extra => Some(&s.y),
            AlgorithmRun::Baseline(_) => None,
        }
    }

    pub fn primal_dual_params(&self) -> Option<&PrimalDualParams> {
        match self {
            AlgorithmRun::PrimalDual(s) | AlgorithmRun::Accelerated { state: s, .. } => Some(&s.params),
            AlgorithmRun::Baseline(_) => None,
        }
    }
}
