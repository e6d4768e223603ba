//! Convergence measures.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{frobenius_inner, frobenius_norm, MultiVector};
use crate::objectives::{ObjectiveInstance, ReferenceSolution};

/// Largest tolerated distance between a dual iterate and its projection onto `C^perp`.
pub const PROJECTION_RESIDUAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSnapshot {
    pub bregman: f64,
    pub fem: f64,
    pub consensus_err: f64,
    pub lagrangian_gap: Option<f64>,
    pub certified_ub: Option<f64>,
}

/// Bregman distance `G(x) = f(x) - f(x*) - <grad f(x*), x - x*>`.
pub fn bregman(x: &MultiVector, r: &ReferenceSolution, inst: &ObjectiveInstance) -> Result<f64> {
    let diff = x.sub(&r.stacked(x.m()));
    Ok(inst.value(x)? - r.f_star - frobenius_inner(&r.grad_at_star, &diff)?)
}

/// `max_i F(x_i) - F*`.
pub fn fem(x: &MultiVector, r: &ReferenceSolution, inst: &ObjectiveInstance) -> Result<f64> {
    if x.shape() != (inst.m(), inst.d()) {
        return Err(Error::ShapeError(format!("expected {}x{} stack", inst.m(), inst.d())));
    }
    Ok(x.rows()
        .map(|xi| inst.global_value(xi) - r.f_star)
        .fold(f64::NEG_INFINITY, f64::max))
}

/// `||(I - J) x||`.
pub fn consensus_error(x: &MultiVector) -> f64 {
    frobenius_norm(&x.centered())
}

/// `Phi(x, y) = f(x) + <y, x>` with `y` required to lie in `C^perp`.
///
/// `y` is projected onto `C^perp`; a residual above
/// [`PROJECTION_RESIDUAL_TOL`] (relative to `max(1, ||y||)`) is reported as an
/// error instead of returning the `+inf` of the indicator.
pub fn lagrangian(x: &MultiVector, y: &MultiVector, inst: &ObjectiveInstance) -> Result<f64> {
    let proj = y.centered();
    let residual = frobenius_norm(&y.sub(&proj));
    if residual > PROJECTION_RESIDUAL_TOL * frobenius_norm(y).max(1.0) {
        return Err(Error::InvalidParameter(format!(
            "dual variable is {residual:e} away from the complement of the consensus space"
        )));
    }
    Ok(inst.value(x)? + frobenius_inner(&proj, x)?)
}

pub fn snapshot(
    x: &MultiVector,
    r: &ReferenceSolution,
    inst: &ObjectiveInstance,
    certified_ub: Option<f64>,
) -> Result<MetricSnapshot> {
    Ok(MetricSnapshot {
        bregman: bregman(x, r, inst)?,
        fem: fem(x, r, inst)?,
        consensus_err: consensus_error(x),
        lagrangian_gap: None,
        certified_ub,
    })
}

/// `(1/T^2)(2 R_x / gamma + 2 ||y*||^2 / (tau lambda_2(B)))`.
pub fn certified_upper_bound(
    horizon: usize,
    gamma: f64,
    tau: f64,
    rx: f64,
    lambda2_b: f64,
    y_star_norm2: f64,
) -> Result<f64> {
    if horizon < 2 {
        return Err(Error::InvalidParameter(format!("horizon must be >= 2, got {horizon}")));
    }
    for (name, v) in [("gamma", gamma), ("tau", tau), ("lambda_2(B)", lambda2_b)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
        }
    }
    let t2 = (horizon as f64) * (horizon as f64);
    Ok((2.0 * rx / gamma + 2.0 * y_star_norm2 / (tau * lambda2_b)) / t2)
}

/// Parameters of a lower-bound reference curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LowerBoundModel {
    /// `L_f R^2 / s^2 + R ||grad f(x*)|| / s` with
    /// `s = t / (1 + ceil(1/(5 sqrt(eta))) tau_c) + 2` and unit constants.
    /// Shape only; not a bound for any particular instance.
    Generic { lf: f64, r: f64, grad_norm_star: f64, eta: f64 },
    /// Explicit bound for the generated hard instances of order `order`
    /// with `pairs` left/right agent pairs `separation` hops apart.
    HardInstance { lf: f64, order: usize, pairs: usize, separation: usize },
}

/// Coordinates an oracle-class method can have reached by time `t`.
pub fn reachable_coordinates(t: f64, separation: usize, tau_c: f64) -> usize {
    if t < 1.0 {
        return 0;
    }
    ((t - 1.0) / (1.0 + separation as f64 * tau_c)).floor() as usize + 1
}

/// Lower-bound reference value at simulated time `t`.
///
/// For hard instances this is `pairs (L_f/8)(K - j)_+ / (K + 1)^2` with `j`
/// the number of reachable coordinates, which equals `L_f / (32(k+1))` for
/// `K = 2k + 1`, `j = k` and one pair.
pub fn lower_bound_curve(t: f64, model: &LowerBoundModel, tau_c: f64) -> f64 {
    match *model {
        LowerBoundModel::Generic {
            lf,
            r,
            grad_norm_star,
            eta,
        } => {
            let hops = (1.0 / (5.0 * eta.sqrt())).ceil();
            let s = t.max(0.0) / (1.0 + hops * tau_c) + 2.0;
            lf * r * r / (s * s) + r * grad_norm_star / s
        }
        LowerBoundModel::HardInstance {
            lf,
            order,
            pairs,
            separation,
        } => {
            let j = reachable_coordinates(t, separation, tau_c);
            let k1 = (order + 1) as f64;
            pairs as f64 * lf / 8.0 * order.saturating_sub(j) as f64 / (k1 * k1)
        }
    }
}
