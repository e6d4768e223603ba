//! Nested-Vec arithmetic shared by the transcription oracles. Nothing here
//! calls the library's linear algebra.

#![allow(dead_code)]

use pdnet::linalg::MultiVector;
use pdnet::network::{build_topology, laplacian, GossipMatrix, TopologyKind};
use pdnet::objectives::{generate_least_squares, LocalObjective, ObjectiveInstance};

pub type Mat = Vec<Vec<f64>>;

pub fn problem(seed: u64, m: usize, d: usize) -> (ObjectiveInstance, GossipMatrix) {
    let inst = generate_least_squares(m, 4, d, 0.5, 0.3, seed).unwrap();
    let g = laplacian(&build_topology(TopologyKind::ErdosRenyi { p: 0.5 }, m, seed).unwrap()).unwrap();
    (inst, g)
}

pub fn laplacian_entries(g: &GossipMatrix) -> Mat {
    let n = g.m();
    (0..n).map(|i| (0..n).map(|j| g.matrix().get(i, j)).collect()).collect()
}

/// `alpha I + beta L`.
pub fn affine(l: &Mat, alpha: f64, beta: f64) -> Mat {
    let n = l.len();
    (0..n)
        .map(|i| (0..n).map(|j| beta * l[i][j] + if i == j { alpha } else { 0.0 }).collect())
        .collect()
}

pub fn mul(w: &Mat, x: &Mat) -> Mat {
    let d = x[0].len();
    w.iter()
        .map(|wi| {
            (0..d)
                .map(|c| wi.iter().zip(x).map(|(a, xr)| a * xr[c]).sum())
                .collect()
        })
        .collect()
}

pub fn lin(a: f64, x: &Mat, b: f64, y: &Mat) -> Mat {
    x.iter()
        .zip(y)
        .map(|(xr, yr)| xr.iter().zip(yr).map(|(p, q)| a * p + b * q).collect())
        .collect()
}

pub fn zeros(m: usize, d: usize) -> Mat {
    vec![vec![0.0; d]; m]
}

/// Row `i` is `2 A_i^T (A_i x_i - b_i)`, written out with loops.
pub fn ls_gradient(inst: &ObjectiveInstance, x: &Mat) -> Mat {
    inst.locals()
        .iter()
        .zip(x)
        .map(|(f, xi)| match f {
            LocalObjective::LeastSquares { a, b } => {
                let mut g = vec![0.0; xi.len()];
                for r in 0..a.rows() {
                    let mut res = -b[r];
                    for c in 0..a.cols() {
                        res += a.get(r, c) * xi[c];
                    }
                    for c in 0..a.cols() {
                        g[c] += 2.0 * a.get(r, c) * res;
                    }
                }
                g
            }
            _ => panic!("least-squares locals expected"),
        })
        .collect()
}

pub fn to_mat(x: &MultiVector) -> Mat {
    x.rows().map(|r| r.to_vec()).collect()
}

/// `max |a - b|` relative to `max(1, max |a|)`.
pub fn rel_diff(a: &Mat, b: &MultiVector) -> f64 {
    let scale = a.iter().flatten().fold(1.0f64, |s, v| s.max(v.abs()));
    a.iter()
        .flatten()
        .zip(b.as_slice())
        .map(|(p, q)| (p - q).abs())
        .fold(0.0, f64::max)
        / scale
}
