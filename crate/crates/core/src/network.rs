//! Communication graphs and the gossip matrices they induce.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{default_eigen_tol, jacobi_eigen, DenseSym, EigenDecomposition};
use crate::rng::Stream;

/// Eigenvalues at or below this are treated as zero when checking connectivity.
pub const NULL_EIGEN_TOL: f64 = 1e-10;

/// Reseeds tried by the Erdős–Rényi generator before giving up.
pub const ER_MAX_RESEEDS: u64 = 1000;

/// Undirected simple graph on nodes `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    m: usize,
    /// Unordered pairs stored as `(i, j)` with `i < j`.
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(m: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph {
            m,
            edges: BTreeSet::new(),
        };
        for (i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        if i == j {
            return Err(Error::InvalidParameter(format!("self-loop at node {i}")));
        }
        if i >= self.m || j >= self.m {
            return Err(Error::InvalidParameter(format!(
                "edge ({i},{j}) outside {} nodes",
                self.m
            )));
        }
        self.edges.insert((i.min(j), i.max(j)));
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == i {
                    Some(b)
                } else if b == i {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == i || b == i).count()
    }

    /// Breadth-first reachability from node 0.
    pub fn is_connected(&self) -> bool {
        if self.m == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); self.m];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.m];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.m
    }

    /// Edge-list text: one `i j` pair per line, 0-based.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "{a} {b}");
        }
        out
    }

    /// Parses the edge-list format. Blank lines and `#` comments are skipped.
    /// The node count is `nodes` when given, else one past the largest index.
    pub fn parse_edge_list(text: &str, nodes: Option<usize>) -> Result<Self> {
        let mut pairs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::ParseError {
                line: lineno + 1,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(parse_err(format!("expected `i j`, got `{line}`")));
            }
            let i: usize = fields[0]
                .parse()
                .map_err(|e| parse_err(format!("bad node `{}`: {e}", fields[0])))?;
            let j: usize = fields[1]
                .parse()
                .map_err(|e| parse_err(format!("bad node `{}`: {e}", fields[1])))?;
            if i == j {
                return Err(parse_err(format!("self-loop at node {i}")));
            }
            pairs.push((i, j));
        }
        let m = nodes.unwrap_or_else(|| pairs.iter().map(|&(i, j)| i.max(j) + 1).max().unwrap_or(0));
        Graph::new(m, pairs)
    }
}

/// Graph families the simulator can generate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TopologyKind {
    ErdosRenyi { p: f64 },
    Line,
    Ring,
    Complete,
    TwoAgent,
}

/// Generates a connected graph of the requested family.
///
/// Erdős–Rényi draws every pair independently with probability `p`; a
/// disconnected draw is discarded and the generator reseeded with
/// `seed + 1`, `seed + 2`, ... up to [`ER_MAX_RESEEDS`] times.
pub fn build_topology(kind: TopologyKind, m: usize, seed: u64) -> Result<Graph> {
    if m < 2 {
        return Err(Error::InvalidSize(format!("need at least 2 agents, got {m}")));
    }
    match kind {
        TopologyKind::Line => Graph::new(m, (0..m - 1).map(|i| (i, i + 1))),
        TopologyKind::Ring => {
            let mut edges: Vec<_> = (0..m - 1).map(|i| (i, i + 1)).collect();
            if m > 2 {
                edges.push((m - 1, 0));
            }
            Graph::new(m, edges)
        }
        TopologyKind::Complete => {
            Graph::new(m, (0..m).flat_map(|i| ((i + 1)..m).map(move |j| (i, j))))
        }
        TopologyKind::TwoAgent => {
            if m != 2 {
                return Err(Error::InvalidSize(format!(
                    "two-agent topology needs m = 2, got {m}"
                )));
            }
            Graph::new(2, [(0, 1)])
        }
        TopologyKind::ErdosRenyi { p } => {
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "edge probability must lie in (0, 1], got {p}"
                )));
            }
            for attempt in 0..ER_MAX_RESEEDS {
                let mut rng = Stream::new(seed.wrapping_add(attempt));
                let mut edges = Vec::new();
                for i in 0..m {
                    for j in (i + 1)..m {
                        if rng.uniform() < p {
                            edges.push((i, j));
                        }
                    }
                }
                let g = Graph::new(m, edges)?;
                if g.is_connected() {
                    return Ok(g);
                }
            }
            Err(Error::DisconnectedGraph(format!(
                "no connected Erdős–Rényi draw with m = {m}, p = {p} after {ER_MAX_RESEEDS} seeds"
            )))
        }
    }
}

/// Symmetric PSD gossip matrix with null space `span(1)` and cached spectrum.
#[derive(Debug, Clone)]
pub struct GossipMatrix {
    matrix: DenseSym,
    eigen: EigenDecomposition,
    lambda2: f64,
    lambda_max: f64,
    eigengap: f64,
}

impl GossipMatrix {
    /// Validates a candidate gossip matrix and caches its spectrum.
    pub fn from_matrix(matrix: DenseSym) -> Result<Self> {
        let scale = matrix.norm_inf().max(1.0);
        for (i, s) in matrix.row_sums().iter().enumerate() {
            if s.abs() > 1e-12 * scale {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} sums to {s}, so 1 is not in the null space"
                )));
            }
        }
        let eigen = jacobi_eigen(&matrix, default_eigen_tol(&matrix).max(f64::MIN_POSITIVE))?;
        Self::with_eigen(matrix, eigen)
    }

    fn with_eigen(matrix: DenseSym, eigen: EigenDecomposition) -> Result<Self> {
        let n = eigen.values.len();
        if n < 2 {
            return Err(Error::InvalidSize("gossip matrix needs at least 2 agents".into()));
        }
        let lambda1 = eigen.values[0];
        if lambda1.abs() > NULL_EIGEN_TOL {
            return Err(Error::InvalidMatrix(format!(
                "smallest eigenvalue {lambda1} is not zero"
            )));
        }
        let lambda2 = eigen.values[1];
        if lambda2 <= NULL_EIGEN_TOL {
            return Err(Error::DisconnectedGraph(format!("lambda_2 = {lambda2}")));
        }
        let lambda_max = eigen.values[n - 1];
        // A single repeated nonzero eigenvalue (complete graphs) is snapped to
        // eta = 1 so that rounding never produces 1 - 1e-16.
        let eigengap = if lambda_max - lambda2 <= 1e-10 * lambda_max {
            1.0
        } else {
            lambda2 / lambda_max
        };
        Ok(Self {
            matrix,
            eigen,
            lambda2,
            lambda_max,
            eigengap,
        })
    }

    pub fn matrix(&self) -> &DenseSym {
        &self.matrix
    }

    pub fn eigen(&self) -> &EigenDecomposition {
        &self.eigen
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    /// `eta = lambda_2 / lambda_max`, in `(0, 1]`.
    pub fn eigengap(&self) -> f64 {
        self.eigengap
    }

    pub fn m(&self) -> usize {
        self.matrix.n()
    }

    /// `c * L`; the eigenvectors are reused and the eigenvalues rescaled.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameter(format!("scale factor {c}")));
        }
        let mut eigen = self.eigen.clone();
        eigen.values.iter_mut().for_each(|v| *v *= c);
        Self::with_eigen(self.matrix.scaled(c), eigen)
    }

    /// True when every nonzero off-diagonal entry corresponds to an edge of `g`.
    pub fn is_induced_by(&self, g: &Graph) -> bool {
        let n = self.m();
        n == g.m()
            && (0..n).all(|i| {
                (0..n).all(|j| i == j || self.matrix.get(i, j) == 0.0 || g.has_edge(i, j))
            })
    }
}

/// Combinatorial Laplacian `D - Adj` of a connected graph.
pub fn laplacian(g: &Graph) -> Result<GossipMatrix> {
    let m = g.m();
    let mut l = DenseSym::zeros(m);
    for (i, j) in g.edges() {
        l.set_sym(i, j, -1.0);
    }
    for i in 0..m {
        l.set_sym(i, i, g.degree(i) as f64);
    }
    GossipMatrix::from_matrix(l)
}

/// Rescales by `2 / (lambda_2 + lambda_max)` so the nonzero spectrum is
/// centred on 1 and lies in `[1 - 1/c1, 1 + 1/c1]`, `c1 = (1 + eta) / (1 - eta)`.
pub fn scale_for_chebyshev(raw: &GossipMatrix) -> Result<GossipMatrix> {
    raw.scaled(2.0 / (raw.lambda2() + raw.lambda_max()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spectrum(g: &GossipMatrix) -> Vec<f64> {
        g.eigen().values.clone()
    }

    #[test]
    fn line_and_complete_edges() {
        let g = build_topology(TopologyKind::Line, 3, 0).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        let g = build_topology(TopologyKind::Complete, 4, 0).unwrap();
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn too_small_is_rejected() {
        assert!(matches!(
            build_topology(TopologyKind::Line, 1, 0),
            Err(Error::InvalidSize(_))
        ));
        assert!(matches!(
            build_topology(TopologyKind::TwoAgent, 3, 0),
            Err(Error::InvalidSize(_))
        ));
    }

    #[test]
    fn erdos_renyi_is_connected() {
        let g = build_topology(TopologyKind::ErdosRenyi { p: 0.1 }, 20, 1).unwrap();
        assert!(g.is_connected());
        assert!(g.edges().all(|(i, j)| i < j && j < 20));
    }

    #[test]
    fn erdos_renyi_gives_up() {
        let err = build_topology(TopologyKind::ErdosRenyi { p: 1e-9 }, 10, 3).unwrap_err();
        assert!(matches!(err, Error::DisconnectedGraph(_)));
    }

    #[test]
    fn path_three_laplacian() {
        let g = build_topology(TopologyKind::Line, 3, 0).unwrap();
        let l = laplacian(&g).unwrap();
        let expect = DenseSym::from_rows(&[
            vec![1.0, -1.0, 0.0],
            vec![-1.0, 2.0, -1.0],
            vec![0.0, -1.0, 1.0],
        ])
        .unwrap();
        assert_eq!(l.matrix(), &expect);
        let s = spectrum(&l);
        for (k, v) in s.iter().enumerate() {
            let closed = 2.0 - 2.0 * (k as f64 * PI / 3.0).cos();
            assert!((v - closed).abs() < 1e-12);
        }
        assert!((l.eigengap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn complete_two_has_unit_gap() {
        let g = build_topology(TopologyKind::Complete, 2, 0).unwrap();
        let l = laplacian(&g).unwrap();
        assert_eq!(l.eigengap(), 1.0);
        let s = scale_for_chebyshev(&l).unwrap();
        assert!(spectrum(&s)[0].abs() < 1e-15);
        assert!((spectrum(&s)[1] - 1.0).abs() < 1e-15);
        assert_eq!(s.eigengap(), 1.0);
    }

    #[test]
    fn ring_four() {
        let g = build_topology(TopologyKind::Ring, 4, 0).unwrap();
        let l = laplacian(&g).unwrap();
        assert!((l.lambda2() - 2.0).abs() < 1e-12);
        assert!((l.lambda_max() - 4.0).abs() < 1e-12);
        assert!((l.eigengap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn path_three_scaled() {
        let g = build_topology(TopologyKind::Line, 3, 0).unwrap();
        let s = scale_for_chebyshev(&laplacian(&g).unwrap()).unwrap();
        let v = spectrum(&s);
        assert!(v[0].abs() < 1e-12);
        assert!((v[1] - 0.5).abs() < 1e-12);
        assert!((v[2] - 1.5).abs() < 1e-12);
        assert!(s.is_induced_by(&g));
    }

    #[test]
    fn disconnected_laplacian_is_rejected() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        assert!(matches!(laplacian(&g), Err(Error::DisconnectedGraph(_))));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = build_topology(TopologyKind::ErdosRenyi { p: 0.3 }, 8, 5).unwrap();
        let back = Graph::parse_edge_list(&g.to_edge_list(), Some(8)).unwrap();
        assert_eq!(g, back);
        let err = Graph::parse_edge_list("0 1\n1 x\n", None).unwrap_err();
        assert!(matches!(err, Error::ParseError { line: 2, .. }));
    }
}
