mod common;

use common::*;
use pdnet::algorithms::{
    accelerated_step, configure_optra, configure_optra_n, configure_primal_dual, optra_n_step, optra_step,
    plain_primal_dual_step, StepCoefficients, StepOverrides,
};
use pdnet::network::{build_topology, laplacian, TopologyKind};
use pdnet::objectives::generate_least_squares;

const TOL: f64 = 1e-13;

#[test]
fn plain_step_matches_transcription() {
    let (inst, g) = problem(21, 6, 5);
    let nu = 3.0;
    let mut state = configure_primal_dual(&inst, &g, nu, StepOverrides::default(), None).unwrap();

    let l = laplacian_entries(&g);
    let lm = g.lambda_max();
    let a = affine(&l, 1.0, -1.0 / lm);
    let b = affine(&l, 0.0, 1.0 / lm);
    let gamma = nu / (nu * inst.lf() + 1.0);
    // lambda_max(L / lambda_m) = 1.
    let tau = 1.0 / nu;
    assert!((state.params.gamma - gamma).abs() <= 1e-15 * gamma);
    assert!((state.params.tau - tau).abs() <= 1e-15 * tau);

    let (m, d) = (inst.m(), inst.d());
    let mut x = zeros(m, d);
    let mut y = zeros(m, d);
    let mut y_hat = lin(tau, &mul(&b, &x), 0.0, &x);
    let mut avg = zeros(m, d);
    for step in 1..=25 {
        let grad = ls_gradient(&inst, &x);
        let inner: Mat = (0..m)
            .map(|i| (0..d).map(|c| x[i][c] - gamma * (grad[i][c] + y_hat[i][c])).collect())
            .collect();
        let x_next = mul(&a, &inner);
        let bx = mul(&b, &x_next);
        let y_next: Mat = (0..m).map(|i| (0..d).map(|c| y[i][c] + tau * bx[i][c]).collect()).collect();
        y_hat = (0..m).map(|i| (0..d).map(|c| 2.0 * y_next[i][c] - y[i][c]).collect()).collect();
        avg = lin(1.0, &avg, 1.0, &x_next);
        x = x_next;
        y = y_next;

        let rep = plain_primal_dual_step(&mut state, &inst).unwrap();
        assert_eq!((rep.grad_evals, rep.comm_rounds), (1, 2));
        assert!(rel_diff(&x, &state.x) <= TOL, "x at step {step}: {}", rel_diff(&x, &state.x));
        assert!(rel_diff(&y, &state.y) <= TOL, "y at step {step}");
        assert!(rel_diff(&y_hat, &state.y_hat) <= TOL, "yhat at step {step}");
        let mean = lin(1.0 / step as f64, &avg, 0.0, &avg);
        assert!(rel_diff(&mean, &state.running_average().unwrap()) <= TOL);
    }
}

/// `theta_1 = 1`, `theta_{k+1}` the positive root of `t^2 = theta_k^2 (1 - t)`.
fn thetas(n: usize) -> Vec<f64> {
    let mut t = vec![1.0f64];
    while t.len() < n {
        let p = t[t.len() - 1] * t[t.len() - 1];
        t.push((-p + (p * p + 4.0 * p).sqrt()) / 2.0);
    }
    t
}

#[test]
fn optra_n_matches_transcription() {
    let (inst, g) = problem(22, 5, 4);
    let (nu, horizon) = (2.0, 30);
    let (mut state, sched) = configure_optra_n(&inst, &g, nu, horizon, StepOverrides::default(), None).unwrap();

    let l = laplacian_entries(&g);
    let lm = g.lambda_max();
    let a = affine(&l, 1.0, -1.0 / lm);
    let b = affine(&l, 0.0, 1.0 / lm);
    let t = horizon as f64;
    let gamma = nu / (nu * inst.lf() + t);
    let tau = 1.0 / (nu * t);
    let th = thetas(horizon + 1);

    let (m, d) = (inst.m(), inst.d());
    let mut x = zeros(m, d);
    let mut u = zeros(m, d);
    let mut y = zeros(m, d);
    let mut y_hat = lin(tau, &mul(&b, &x), 0.0, &x);
    for k in 1..horizon {
        let (t0, t1) = (th[k - 1], th[k]);
        let grad = ls_gradient(&inst, &x);
        let inner = lin(1.0, &x, -gamma, &lin(1.0, &grad, 1.0, &y_hat));
        let u_next = mul(&a, &inner);
        let alpha = t1 / t0 - t1;
        let x_next = lin(1.0 + alpha, &u_next, -alpha, &u);
        let x_hat = lin(1.0 / t1, &x_next, 1.0 - 1.0 / t1, &u_next);
        let y_next = lin(1.0, &y, tau / t0, &mul(&b, &x_hat));
        y_hat = lin(1.0 + t0 / t1, &y_next, -t0 / t1, &y);
        u = u_next;
        x = x_next;
        y = y_next;

        optra_n_step(&mut state, &sched, &inst).unwrap();
        assert_eq!(state.k, k + 1);
        assert!(rel_diff(&u, &state.u) <= 1e-12, "u at k = {k}: {}", rel_diff(&u, &state.u));
        assert!(rel_diff(&x, &state.x) <= 1e-12, "x at k = {k}");
        assert!(rel_diff(&y, &state.y) <= 1e-12, "y at k = {k}");
    }
    assert!(optra_n_step(&mut state, &sched, &inst).is_err());
}

#[test]
fn zero_momentum_reduces_to_plain() {
    let (inst, g) = problem(23, 6, 5);
    let plain = configure_primal_dual(&inst, &g, 4.0, StepOverrides::default(), None).unwrap();
    let mut acc = plain.clone();
    let mut plain = plain;
    let c = StepCoefficients::plain(plain.params.tau);
    assert_eq!((c.alpha, c.sigma, c.tau_k, c.beta), (0.0, 1.0, plain.params.tau, 1.0));
    for _ in 0..40 {
        plain_primal_dual_step(&mut plain, &inst).unwrap();
        accelerated_step(&mut acc, &c, &inst).unwrap();
        assert_eq!(plain.x, acc.x);
        assert_eq!(plain.y, acc.y);
        assert!(plain.y_hat.max_abs_diff(&acc.y_hat) <= 1e-15 * plain.y_hat.max_abs().max(1.0));
    }
}

#[test]
fn optra_equals_optra_n_on_two_agents() {
    // On the complete graph with two agents the scaled Laplacian has spectrum
    // {0, 1}, so K = 1, c2 = 1 and both methods use A = I - L/2, B = L/2.
    let inst = generate_least_squares(2, 5, 6, 0.3, 0.2, 7).unwrap();
    let g = laplacian(&build_topology(TopologyKind::Complete, 2, 0).unwrap()).unwrap();
    let (nu, horizon) = (5.0, 60);
    let (mut a, sa) = configure_optra(&inst, &g, nu, horizon, None, StepOverrides::default(), None).unwrap();
    let (mut b, sb) = configure_optra_n(&inst, &g, nu, horizon, StepOverrides::default(), None).unwrap();
    assert_eq!(a.params.a.rounds(), 1);
    assert!((a.params.gamma - b.params.gamma).abs() <= 1e-16);
    assert!((a.params.tau - b.params.tau).abs() <= 1e-15 * b.params.tau);
    for _ in 1..horizon {
        let ra = optra_step(&mut a, &sa, &inst).unwrap();
        let rb = optra_n_step(&mut b, &sb, &inst).unwrap();
        assert_eq!(ra, rb);
        let scale = b.u.max_abs().max(1.0);
        assert!(a.u.max_abs_diff(&b.u) <= 1e-12 * scale);
        assert!(a.y.max_abs_diff(&b.y) <= 1e-12 * b.y.max_abs().max(1.0));
    }
}
