//! EXTRA and gradient tracking checked against their two-term recursions,
//! in which the auxiliary variable has been eliminated:
//!
//! EXTRA: `x^{k+2} = 2W x^{k+1} - W x^k - gamma (g^{k+1} - g^k)`;
//! gradient tracking: `x^{k+2} = 2W x^{k+1} - W^2 x^k - gamma (g^{k+1} - g^k)`;
//! both with `x^1 = W x^0 - gamma g^0`.

mod common;

use common::*;
use pdnet::algorithms::{baseline_step, BaselineKind, BaselineState};
use pdnet::linalg::MultiVector;

const STEPS: usize = 30;
const TOL: f64 = 1e-11;

fn eliminated(kind: BaselineKind, seed: u64) {
    let (inst, g) = problem(seed, 7, 5);
    let gamma = 0.5 / inst.lf();
    let (m, d) = (inst.m(), inst.d());
    let x0: Mat = (0..m).map(|i| (0..d).map(|c| ((i * d + c) as f64).sin()).collect()).collect();
    let mut state = BaselineState::new(kind, &inst, &g, gamma, Some(MultiVector::from_rows(&x0).unwrap())).unwrap();
    assert_eq!(
        (state.init_cost().grad_evals, state.init_cost().comm_rounds),
        match kind {
            BaselineKind::Extra => (0, 1),
            BaselineKind::GradientTracking => (1, 0),
            BaselineKind::Dgd => (0, 0),
        }
    );

    let w = affine(&laplacian_entries(&g), 1.0, -1.0 / g.lambda_max());
    let w2 = mul(&w, &w);
    let mut prev = x0.clone();
    let mut cur = lin(1.0, &mul(&w, &x0), -gamma, &ls_gradient(&inst, &x0));
    let rep = baseline_step(&mut state, &inst).unwrap();
    assert_eq!(rep.grad_evals, 1);
    assert!(rel_diff(&cur, &state.x) <= TOL);

    for k in 1..STEPS {
        let dg = lin(1.0, &ls_gradient(&inst, &cur), -1.0, &ls_gradient(&inst, &prev));
        let wc = mul(&w, &cur);
        let back = match kind {
            BaselineKind::Extra => mul(&w, &prev),
            _ => mul(&w2, &prev),
        };
        let next = lin(1.0, &lin(2.0, &wc, -1.0, &back), -gamma, &dg);
        prev = cur;
        cur = next;
        let rep = baseline_step(&mut state, &inst).unwrap();
        let rounds = if kind == BaselineKind::GradientTracking { 2 } else { 1 };
        assert_eq!((rep.grad_evals, rep.comm_rounds), (1, rounds));
        assert!(rel_diff(&cur, &state.x) <= TOL, "{kind:?} step {k}: {}", rel_diff(&cur, &state.x));
    }
}

#[test]
fn extra_matches_eliminated_recursion() {
    for seed in [1, 2, 3] {
        eliminated(BaselineKind::Extra, seed);
    }
}

#[test]
fn gradient_tracking_matches_eliminated_recursion() {
    for seed in [1, 2, 3] {
        eliminated(BaselineKind::GradientTracking, seed);
    }
}

#[test]
fn dgd_matches_transcription() {
    let (inst, g) = problem(4, 6, 4);
    let gamma = 0.3 / inst.lf();
    let mut state = BaselineState::new(BaselineKind::Dgd, &inst, &g, gamma, None).unwrap();
    let w = affine(&laplacian_entries(&g), 1.0, -1.0 / g.lambda_max());
    let mut x = zeros(inst.m(), inst.d());
    for _ in 0..STEPS {
        x = lin(1.0, &mul(&w, &x), -gamma, &ls_gradient(&inst, &x));
        baseline_step(&mut state, &inst).unwrap();
        assert!(rel_diff(&x, &state.x) <= TOL);
    }
}

#[test]
fn gradient_tracking_keeps_average_gradient() {
    // The tracker's column sums equal those of the current gradients.
    let (inst, g) = problem(5, 6, 4);
    let mut state =
        BaselineState::new(BaselineKind::GradientTracking, &inst, &g, 0.2 / inst.lf(), None).unwrap();
    for _ in 0..STEPS {
        baseline_step(&mut state, &inst).unwrap();
        let grad = inst.gradient(&state.x).unwrap();
        for (a, b) in state.y.column_sums().iter().zip(grad.column_sums()) {
            assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0));
        }
    }
}
