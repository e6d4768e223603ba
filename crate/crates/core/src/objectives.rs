//! Per-agent objective oracles, synthetic data and reference solutions.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{cholesky_solve, lambda_max, pinv_solve, DenseMatrix, DenseSym, MultiVector};
use crate::rng::Stream;

/// Default fraction of agents at each end of the hard line instance.
pub const DEFAULT_ZETA: f64 = 1.0 / 32.0;

const NEWTON_MAX_ITERS: usize = 500;
const NEWTON_GRAD_TOL: f64 = 1e-10;
const PINV_CUTOFF: f64 = 1e-12;

/// One agent's smooth convex cost.
#[derive(Debug, Clone, PartialEq)]
pub enum LocalObjective {
    /// `||A x - b||^2`
    LeastSquares { a: DenseMatrix, b: Vec<f64> },
    /// `sum_j log(1 + exp(-y_j u_j^T x))`, labels in `{1, -1}`.
    Logistic { u: DenseMatrix, y: Vec<f64> },
    /// `1/2 x^T H x + c^T x`, `H` PSD.
    Quadratic { hessian: DenseSym, linear: Vec<f64> },
    Zero,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `log(1 + exp(t))` without overflow.
fn softplus(t: f64) -> f64 {
    t.max(0.0) + (-t.abs()).exp().ln_1p()
}

fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

impl LocalObjective {
    pub fn value(&self, x: &[f64]) -> f64 {
        match self {
            LocalObjective::LeastSquares { a, b } => a
                .matvec(x)
                .iter()
                .zip(b)
                .map(|(ax, bi)| (ax - bi) * (ax - bi))
                .sum(),
            LocalObjective::Logistic { u, y } => (0..u.rows())
                .map(|j| softplus(-y[j] * dot(u.row(j), x)))
                .sum(),
            LocalObjective::Quadratic { hessian, linear } => {
                0.5 * dot(x, &hessian.matvec(x)) + dot(linear, x)
            }
            LocalObjective::Zero => 0.0,
        }
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        match self {
            LocalObjective::LeastSquares { a, b } => {
                let r: Vec<f64> = a.matvec(x).iter().zip(b).map(|(ax, bi)| 2.0 * (ax - bi)).collect();
                a.t_matvec(&r)
            }
            LocalObjective::Logistic { u, y } => {
                let w: Vec<f64> = (0..u.rows())
                    .map(|j| -y[j] * sigmoid(-y[j] * dot(u.row(j), x)))
                    .collect();
                u.t_matvec(&w)
            }
            LocalObjective::Quadratic { hessian, linear } => {
                let mut g = hessian.matvec(x);
                g.iter_mut().zip(linear).for_each(|(gi, ci)| *gi += ci);
                g
            }
            LocalObjective::Zero => vec![0.0; x.len()],
        }
    }

    /// Hessian at `x` as a `d x d` matrix.
    pub fn hessian(&self, x: &[f64]) -> DenseSym {
        let d = x.len();
        match self {
            LocalObjective::LeastSquares { a, .. } => a.gram_cols().scaled(2.0),
            LocalObjective::Logistic { u, y } => {
                let w: Vec<f64> = (0..u.rows())
                    .map(|j| {
                        let s = sigmoid(y[j] * dot(u.row(j), x));
                        s * (1.0 - s)
                    })
                    .collect();
                DenseSym::from_upper(d, |p, q| (0..u.rows()).map(|j| w[j] * u.get(j, p) * u.get(j, q)).sum())
            }
            LocalObjective::Quadratic { hessian, .. } => hessian.clone(),
            LocalObjective::Zero => DenseSym::zeros(d),
        }
    }

    /// Smoothness constant computed from the data.
    pub fn smoothness(&self) -> Result<f64> {
        match self {
            LocalObjective::LeastSquares { a, .. } => Ok(2.0 * gram_lambda_max(a)?),
            LocalObjective::Logistic { u, .. } => Ok(0.25 * gram_lambda_max(u)?),
            LocalObjective::Quadratic { hessian, .. } => {
                let eig = crate::linalg::jacobi_eigen(
                    hessian,
                    crate::linalg::default_eigen_tol(hessian).max(f64::MIN_POSITIVE),
                )?;
                Ok(eig.values.iter().fold(0.0f64, |acc, v| acc.max(v.abs())))
            }
            LocalObjective::Zero => Ok(0.0),
        }
    }

    fn is_quadratic(&self) -> bool {
        !matches!(self, LocalObjective::Logistic { .. })
    }

    fn feed_digest(&self, h: &mut Sha256) {
        let mut put = |tag: u8, parts: &[&[f64]]| {
            h.update([tag]);
            for p in parts {
                h.update((p.len() as u64).to_le_bytes());
                for v in *p {
                    h.update(v.to_le_bytes());
                }
            }
        };
        match self {
            LocalObjective::LeastSquares { a, b } => put(1, &[a.as_slice(), b]),
            LocalObjective::Logistic { u, y } => put(2, &[u.as_slice(), y]),
            LocalObjective::Quadratic { hessian, linear } => put(3, &[hessian.as_slice(), linear]),
            LocalObjective::Zero => put(0, &[]),
        }
    }
}

/// `lambda_max(A^T A)` through the smaller of the two Gram matrices.
fn gram_lambda_max(a: &DenseMatrix) -> Result<f64> {
    if a.rows() == 0 || a.cols() == 0 {
        return Ok(0.0);
    }
    let g = if a.rows() <= a.cols() {
        a.gram_rows()
    } else {
        a.gram_cols()
    };
    lambda_max(&g)
}

/// Which family an instance came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InstanceKind {
    LeastSquares,
    Logistic,
    HardTwoAgent { k: usize },
    HardLine { k: usize, zeta: f64, pairs: usize, separation: usize },
    Zero,
    Custom,
}

/// Consensus minimizer of `F` with the stacked quantities the metrics need.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSolution {
    pub x_star: Vec<f64>,
    pub f_star: f64,
    /// Row `i` is `grad f_i(x_star)`.
    pub grad_at_star: MultiVector,
    /// `-grad_at_star`.
    pub y_star: MultiVector,
}

impl ReferenceSolution {
    fn at(inst: &ObjectiveInstance, x_star: Vec<f64>) -> Self {
        let grad = MultiVector::from_fn(inst.m(), inst.d(), |i| inst.locals[i].gradient(&x_star));
        let f_star = inst.global_value(&x_star);
        Self {
            y_star: grad.scaled(-1.0),
            grad_at_star: grad,
            f_star,
            x_star,
        }
    }

    /// The stacked optimum `1 x_star^T`.
    pub fn stacked(&self, m: usize) -> MultiVector {
        MultiVector::consensus(m, &self.x_star)
    }
}

/// The sum `F = sum_i f_i` split across `m` agents.
#[derive(Debug, Clone)]
pub struct ObjectiveInstance {
    kind: InstanceKind,
    d: usize,
    locals: Vec<LocalObjective>,
    lf: f64,
    closed_form: Option<ReferenceSolution>,
}

impl ObjectiveInstance {
    /// Builds an instance with `L_f = max_i L_{f_i}` computed from the data.
    pub fn new(kind: InstanceKind, d: usize, locals: Vec<LocalObjective>) -> Result<Self> {
        if locals.is_empty() {
            return Err(Error::InvalidSize("instance needs at least one agent".into()));
        }
        for (i, l) in locals.iter().enumerate() {
            let ok = match l {
                LocalObjective::LeastSquares { a, b } => a.cols() == d && a.rows() == b.len(),
                LocalObjective::Logistic { u, y } => u.cols() == d && u.rows() == y.len(),
                LocalObjective::Quadratic { hessian, linear } => {
                    hessian.n() == d && linear.len() == d
                }
                LocalObjective::Zero => true,
            };
            if !ok {
                return Err(Error::ShapeError(format!("agent {i} payload does not match d = {d}")));
            }
        }
        let mut lf = 0.0f64;
        for l in &locals {
            lf = lf.max(l.smoothness()?);
        }
        Ok(Self {
            kind,
            d,
            locals,
            lf,
            closed_form: None,
        })
    }

    /// All-zero objective on `m` agents.
    pub fn zero(m: usize, d: usize) -> Result<Self> {
        Self::new(InstanceKind::Zero, d, vec![LocalObjective::Zero; m])
    }

    pub fn kind(&self) -> InstanceKind {
        self.kind
    }

    pub fn m(&self) -> usize {
        self.locals.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Global smoothness constant `L_f`.
    pub fn lf(&self) -> f64 {
        self.lf
    }

    pub fn locals(&self) -> &[LocalObjective] {
        &self.locals
    }

    fn check(&self, i: usize, x: &[f64]) -> Result<()> {
        if i >= self.m() {
            return Err(Error::IndexError { index: i, m: self.m() });
        }
        if x.len() != self.d {
            return Err(Error::ShapeError(format!("expected length {}, got {}", self.d, x.len())));
        }
        Ok(())
    }

    pub fn local_value(&self, i: usize, x: &[f64]) -> Result<f64> {
        self.check(i, x)?;
        Ok(self.locals[i].value(x))
    }

    pub fn local_gradient(&self, i: usize, x: &[f64]) -> Result<Vec<f64>> {
        self.check(i, x)?;
        Ok(self.locals[i].gradient(x))
    }

    fn check_stack(&self, x: &MultiVector) -> Result<()> {
        if x.shape() != (self.m(), self.d) {
            return Err(Error::ShapeError(format!(
                "expected {}x{} stack, got {:?}",
                self.m(),
                self.d,
                x.shape()
            )));
        }
        Ok(())
    }

    /// `f(x) = sum_i f_i(x_i)`.
    pub fn value(&self, x: &MultiVector) -> Result<f64> {
        self.check_stack(x)?;
        Ok(self.locals.iter().zip(x.rows()).map(|(f, xi)| f.value(xi)).sum())
    }

    /// Stacked gradient `[grad f_i(x_i)]`.
    pub fn gradient(&self, x: &MultiVector) -> Result<MultiVector> {
        self.check_stack(x)?;
        Ok(MultiVector::from_fn(self.m(), self.d, |i| self.locals[i].gradient(x.row(i))))
    }

    /// `F(v) = sum_i f_i(v)`.
    pub fn global_value(&self, v: &[f64]) -> f64 {
        self.locals.iter().map(|f| f.value(v)).sum()
    }

    pub fn global_gradient(&self, v: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; v.len()];
        for f in &self.locals {
            for (gi, fi) in g.iter_mut().zip(f.gradient(v)) {
                *gi += fi;
            }
        }
        g
    }

    fn global_hessian(&self, v: &[f64]) -> DenseSym {
        let mut data = vec![0.0; self.d * self.d];
        for f in &self.locals {
            for (acc, h) in data.iter_mut().zip(f.hessian(v).as_slice()) {
                *acc += h;
            }
        }
        DenseSym::from_vec(self.d, data).expect("sum of symmetric matrices")
    }

    /// SHA-256 over the kind tag, shapes and every payload value.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(serde_json::to_vec(&self.kind).expect("kind serializes"));
        h.update((self.d as u64).to_le_bytes());
        h.update(self.lf.to_le_bytes());
        for l in &self.locals {
            l.feed_digest(&mut h);
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Synthetic correlated least squares.
///
/// Draws `Z` (`mr x d`, row-major), then `x0`, then the noise. Columns are
/// `A_1 = Z_1 / sqrt(1 - omega^2)` and `A_i = omega A_{i-1} + Z_i`, and
/// `b = A x0 + xi` with `xi ~ N(0, noise_sd^2)`. Agent `i` holds rows
/// `i r .. (i + 1) r`.
pub fn generate_least_squares(
    m: usize,
    r: usize,
    d: usize,
    omega: f64,
    noise_sd: f64,
    seed: u64,
) -> Result<ObjectiveInstance> {
    if !(0.0..1.0).contains(&omega) {
        return Err(Error::InvalidParameter(format!("omega must lie in [0, 1), got {omega}")));
    }
    if !(noise_sd >= 0.0 && noise_sd.is_finite()) {
        return Err(Error::InvalidParameter(format!("noise_sd must be >= 0, got {noise_sd}")));
    }
    if m == 0 || r == 0 || d == 0 {
        return Err(Error::InvalidSize(format!("m, r, d must be positive (got {m}, {r}, {d})")));
    }
    let n = m * r;
    let mut rng = Stream::new(seed);
    let z: Vec<f64> = (0..n * d).map(|_| rng.normal()).collect();
    let x0: Vec<f64> = (0..d).map(|_| rng.normal()).collect();
    let noise: Vec<f64> = (0..n).map(|_| noise_sd * rng.normal()).collect();

    let first_scale = 1.0 / (1.0 - omega * omega).sqrt();
    let mut a = vec![0.0; n * d];
    for row in 0..n {
        let base = row * d;
        a[base] = z[base] * first_scale;
        for c in 1..d {
            a[base + c] = omega * a[base + c - 1] + z[base + c];
        }
    }
    let mut locals = Vec::with_capacity(m);
    for i in 0..m {
        let block = a[i * r * d..(i + 1) * r * d].to_vec();
        let ai = DenseMatrix::new(r, d, block)?;
        let b: Vec<f64> = ai
            .matvec(&x0)
            .iter()
            .zip(&noise[i * r..(i + 1) * r])
            .map(|(v, e)| v + e)
            .collect();
        locals.push(LocalObjective::LeastSquares { a: ai, b });
    }
    ObjectiveInstance::new(InstanceKind::LeastSquares, d, locals)
}

/// Hard lower-bound families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HardKind {
    TwoAgent { k: usize, d: usize },
    Line { m: usize, k: usize, d: usize, zeta: f64 },
}

/// Left-agent block matrix: `[1]` at the first coordinate, then 2x2 blocks
/// `[[1,-1],[-1,1]]` on coordinates `(2,3), (4,5), ...`, truncated to the
/// leading `k x k` corner and zero elsewhere.
pub fn split_matrix_left(k: usize, d: usize) -> DenseSym {
    split_matrix(k, d, 1)
}

/// Right-agent block matrix: 2x2 blocks on `(1,2), (3,4), ...`, truncated
/// to the leading `k x k` corner.
pub fn split_matrix_right(k: usize, d: usize) -> DenseSym {
    split_matrix(k, d, 0)
}

fn split_matrix(k: usize, d: usize, offset: usize) -> DenseSym {
    let mut a = DenseSym::zeros(d);
    let k = k.min(d);
    if offset == 1 && k >= 1 {
        a.set_sym(0, 0, 1.0);
    }
    let mut s = offset;
    while s < k {
        a.set_sym(s, s, 1.0);
        if s + 1 < k {
            a.set_sym(s + 1, s + 1, 1.0);
            a.set_sym(s, s + 1, -1.0);
        }
        s += 2;
    }
    a
}

fn hard_pair(k: usize, d: usize, lf: f64) -> (LocalObjective, LocalObjective) {
    let mut e1 = vec![0.0; d];
    e1[0] = -lf / 4.0;
    let left = LocalObjective::Quadratic {
        hessian: split_matrix_left(k, d).scaled(lf / 4.0),
        linear: e1,
    };
    let right = LocalObjective::Quadratic {
        hessian: split_matrix_right(k, d).scaled(lf / 4.0),
        linear: vec![0.0; d],
    };
    (left, right)
}

/// `x_star` of the hard function: `(k/(k+1), ..., 1/(k+1), 0, ...)`.
pub fn hard_minimizer(k: usize, d: usize) -> Vec<f64> {
    (0..d)
        .map(|t| if t < k { (k - t) as f64 / (k + 1) as f64 } else { 0.0 })
        .collect()
}

/// `f*_[k] = (L_f/8)(-1 + 1/(k+1))` for one left/right pair.
pub fn hard_optimum(lf: f64, k: usize) -> f64 {
    lf / 8.0 * (-1.0 + 1.0 / (k + 1) as f64)
}

/// Optimum of the shifted pair objective `f(x) - <grad f(x_star), x>` with
/// every copy restricted to the first `j` coordinates:
/// `-(L_f/8)(k^2 + j)/(k+1)^2` for `1 <= j <= k`. With `j = 0` only the
/// origin is feasible and the value is 0; for `j > k` the restriction no
/// longer binds and the value stays at `f*_[k]`.
pub fn hard_restricted_optimum(lf: f64, k: usize, j: usize) -> f64 {
    if j == 0 {
        return 0.0;
    }
    if j >= k {
        return hard_optimum(lf, k);
    }
    let k1 = (k + 1) as f64;
    -lf / 8.0 * ((k * k + j) as f64) / (k1 * k1)
}

/// Sizes of the hard line instance: `(|A_l|, first right agent (1-based), d_c)`.
pub fn line_layout(m: usize, zeta: f64) -> Result<(usize, usize, usize)> {
    if m < 3 {
        return Err(Error::InvalidSize(format!("hard line instance needs m >= 3, got {m}")));
    }
    if !(zeta > 0.0 && zeta < 0.5) {
        return Err(Error::InvalidParameter(format!("zeta must lie in (0, 1/2), got {zeta}")));
    }
    let left = (zeta * m as f64).ceil() as usize;
    let right_start = ((1.0 - zeta) * m as f64).floor() as usize + 1;
    if right_start <= left {
        return Err(Error::InvalidSize(format!(
            "m = {m}, zeta = {zeta} leaves no separator between the end groups"
        )));
    }
    Ok((left, right_start, right_start - left))
}

/// Splits the hard quadratic across agents and fills the closed-form optimum.
///
/// `lf` is stored as the instance's `L_f`; each local Hessian is
/// `(L_f/4) A` with `lambda_max(A) <= 2`, so it is a valid upper bound.
pub fn generate_hard_instance(kind: HardKind, lf: f64) -> Result<ObjectiveInstance> {
    if !(lf > 0.0 && lf.is_finite()) {
        return Err(Error::InvalidParameter(format!("L_f must be positive, got {lf}")));
    }
    let (k, d) = match kind {
        HardKind::TwoAgent { k, d } | HardKind::Line { k, d, .. } => (k, d),
    };
    if k == 0 {
        return Err(Error::InvalidParameter("hard instance order k must be >= 1".into()));
    }
    if 2 * k + 1 > d {
        return Err(Error::DimensionTooSmall(format!("need 2k + 1 <= d, got k = {k}, d = {d}")));
    }
    let (left, right) = hard_pair(k, d, lf);
    let (inst_kind, locals) = match kind {
        HardKind::TwoAgent { .. } => (InstanceKind::HardTwoAgent { k }, vec![left, right]),
        HardKind::Line { m, zeta, .. } => {
            let (pairs, right_start, separation) = line_layout(m, zeta)?;
            let locals = (1..=m)
                .map(|i| {
                    if i <= pairs {
                        left.clone()
                    } else if i >= right_start {
                        right.clone()
                    } else {
                        LocalObjective::Zero
                    }
                })
                .collect();
            let kind = InstanceKind::HardLine {
                k,
                zeta,
                pairs,
                separation,
            };
            (kind, locals)
        }
    };
    let mut inst = ObjectiveInstance {
        kind: inst_kind,
        d,
        locals,
        lf,
        closed_form: None,
    };
    inst.closed_form = Some(ReferenceSolution::at(&inst, hard_minimizer(k, d)));
    Ok(inst)
}

/// Centralized minimizer of `F`.
///
/// Hard instances use their closed form. Quadratic data (least squares,
/// quadratics, zero) solve the normal equations by Cholesky, falling back to
/// the minimum-norm pseudo-inverse solution. Anything with a logistic term
/// runs damped Newton from the origin until `||grad F|| <= 1e-10 max(1, ||grad F(0)||)`.
pub fn solve_reference(inst: &ObjectiveInstance) -> Result<ReferenceSolution> {
    if let Some(r) = &inst.closed_form {
        return Ok(r.clone());
    }
    let d = inst.d();
    let origin = vec![0.0; d];
    let newton_dir = |x: &[f64]| -> Result<Vec<f64>> {
        let h = inst.global_hessian(x);
        let g = inst.global_gradient(x);
        match cholesky_solve(&h, &g) {
            Some(s) => Ok(s),
            None => pinv_solve(&h, &g, PINV_CUTOFF),
        }
    };
    if inst.locals.iter().all(LocalObjective::is_quadratic) {
        let step = newton_dir(&origin)?;
        let x: Vec<f64> = step.iter().map(|s| -s).collect();
        return Ok(ReferenceSolution::at(inst, x));
    }

    let norm = |v: &[f64]| dot(v, v).sqrt();
    let tol = NEWTON_GRAD_TOL * norm(&inst.global_gradient(&origin)).max(1.0);
    let mut x = origin;
    for _ in 0..NEWTON_MAX_ITERS {
        let g = inst.global_gradient(&x);
        if norm(&g) <= tol {
            return Ok(ReferenceSolution::at(inst, x));
        }
        let dir = newton_dir(&x)?;
        let slope = -dot(&g, &dir);
        let f0 = inst.global_value(&x);
        let mut t = 1.0;
        let mut next: Vec<f64>;
        loop {
            next = x.iter().zip(&dir).map(|(xi, di)| xi - t * di).collect();
            if inst.global_value(&next) <= f0 + 1e-4 * t * slope || t < 1e-12 {
                break;
            }
            t *= 0.5;
        }
        x = next;
    }
    Err(Error::ReferenceSolveFailed(format!(
        "Newton did not reach gradient norm {tol:e} in {NEWTON_MAX_ITERS} iterations"
    )))
}

/// Parses a labelled CSV into logistic payloads split evenly over `m` agents.
///
/// The first row is a header; `label_column` names the label. Every other
/// column is a real feature. Labels `1` stay `1`; `0` and `-1` become `-1`.
/// When the row count is not a multiple of `m`, the first agents get one
/// extra row each.
pub fn parse_csv_dataset(text: &str, label_column: &str, m: usize) -> Result<ObjectiveInstance> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr
        .headers()
        .map_err(|e| Error::ParseError { line: 1, message: e.to_string() })?
        .clone();
    let label_idx = headers.iter().position(|h| h == label_column).ok_or_else(|| Error::ParseError {
        line: 1,
        message: format!("no column named `{label_column}`"),
    })?;
    let d = headers.len() - 1;
    let mut features = Vec::new();
    let mut labels = Vec::new();
    let mut raw_labels: Vec<f64> = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::ParseError {
            line: e.position().map(|p| p.line() as usize).unwrap_or(0),
            message: e.to_string(),
        })?;
        let line = rec.position().map(|p| p.line() as usize).unwrap_or(0);
        if rec.len() != headers.len() {
            return Err(Error::ParseError {
                line,
                message: format!("expected {} fields, found {}", headers.len(), rec.len()),
            });
        }
        for (c, field) in rec.iter().enumerate() {
            let v: f64 = field.parse().map_err(|_| Error::ParseError {
                line,
                message: format!("`{field}` is not a number"),
            })?;
            if !v.is_finite() {
                return Err(Error::ParseError { line, message: format!("non-finite value `{field}`") });
            }
            if c == label_idx {
                let y = if v == 1.0 {
                    1.0
                } else if v == 0.0 || v == -1.0 {
                    -1.0
                } else {
                    return Err(Error::LabelError {
                        line,
                        message: format!("label `{field}` is not one of 1, 0, -1"),
                    });
                };
                if !raw_labels.contains(&v) {
                    raw_labels.push(v);
                    if raw_labels.len() > 2 {
                        return Err(Error::LabelError {
                            line,
                            message: "more than two distinct label values".into(),
                        });
                    }
                }
                labels.push(y);
            } else {
                features.push(v);
            }
        }
    }
    let n = labels.len();
    if m == 0 || n < m {
        return Err(Error::InvalidSize(format!("{n} rows cannot be split over {m} agents")));
    }
    let (base, extra) = (n / m, n % m);
    let mut locals = Vec::with_capacity(m);
    let mut start = 0;
    for i in 0..m {
        let count = base + usize::from(i < extra);
        let u = DenseMatrix::new(count, d, features[start * d..(start + count) * d].to_vec())?;
        locals.push(LocalObjective::Logistic {
            u,
            y: labels[start..start + count].to_vec(),
        });
        start += count;
    }
    ObjectiveInstance::new(InstanceKind::Logistic, d, locals)
}

/// [`parse_csv_dataset`] on a file.
pub fn load_csv_dataset(path: &Path, label_column: &str, m: usize) -> Result<ObjectiveInstance> {
    let text = std::fs::read_to_string(path)?;
    parse_csv_dataset(&text, label_column, m)
}
