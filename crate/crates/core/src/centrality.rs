//! Degree, closeness, betweenness and eigenvector centrality.
//!
//! Geodesics are hop-count shortest paths: edge weights never act as path
//! lengths. Weights only enter the weighted degree and the eigenvector
//! computation.
//!
//! [`betweenness_centrality`] uses Brandes' dependency accumulation.
//! [`brute_force_betweenness`] enumerates every geodesic explicitly and is
//! kept as a reference for small graphs.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::{CitationMatrix, JournalId};

/// Largest graph accepted by the brute-force oracle.
pub const ORACLE_MAX_NODES: usize = 64;

/// Relative change below which power iteration stops.
pub const EIGENVECTOR_TOLERANCE: f64 = 1e-10;
pub const EIGENVECTOR_MAX_ITERATIONS: usize = 10_000;

/// Sources handled per work unit in the parallel betweenness pass. Fixed so
/// that the reduction order does not depend on the thread count.
const SOURCES_PER_CHUNK: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Directedness {
    Directed,
    Undirected,
}

/// A simple weighted graph with labelled nodes. No self-loops, at most one
/// edge per ordered pair (directed) or unordered pair (undirected).
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    directedness: Directedness,
    labels: Vec<String>,
    lookup: HashMap<String, usize>,
    out: Vec<BTreeMap<usize, f64>>,
    /// Incoming adjacency; unused for undirected graphs.
    inc: Vec<BTreeMap<usize, f64>>,
}

impl Graph {
    pub fn new(directedness: Directedness) -> Self {
        Graph {
            directedness,
            labels: Vec::new(),
            lookup: HashMap::new(),
            out: Vec::new(),
            inc: Vec::new(),
        }
    }

    pub fn with_nodes<S: AsRef<str>>(directedness: Directedness, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut g = Graph::new(directedness);
        for label in labels {
            g.add_node(label.as_ref())?;
        }
        Ok(g)
    }

    /// Directed graph of a citation matrix: one edge per nonzero
    /// off-diagonal cell, weighted by the count. Self-citations are dropped.
    pub fn from_citation_matrix(m: &CitationMatrix) -> Self {
        let mut g = Graph::new(Directedness::Directed);
        for id in m.journal_ids() {
            g.add_node(id.as_str()).expect("matrix ids are unique");
        }
        for i in 0..m.len() {
            for &(j, c) in m.row_at(i) {
                if i != j {
                    g.add_edge_at(i, j, c as f64).expect("counts are positive");
                }
            }
        }
        g
    }

    pub fn add_node(&mut self, label: &str) -> Result<usize> {
        if self.lookup.contains_key(label) {
            return Err(Error::DuplicateNode(label.to_owned()));
        }
        let i = self.labels.len();
        self.labels.push(label.to_owned());
        self.lookup.insert(label.to_owned(), i);
        self.out.push(BTreeMap::new());
        self.inc.push(BTreeMap::new());
        Ok(i)
    }

    /// Adds (or re-weights) the edge `a → b` (`a — b` if undirected).
    pub fn add_edge(&mut self, a: &str, b: &str, weight: f64) -> Result<()> {
        let i = self.require(a)?;
        let j = self.require(b)?;
        self.add_edge_at(i, j, weight)
    }

    pub fn add_edge_at(&mut self, i: usize, j: usize, weight: f64) -> Result<()> {
        let n = self.len();
        if i >= n || j >= n {
            return Err(Error::UnknownNode(format!("#{}", i.max(j))));
        }
        if i == j {
            return Err(Error::SelfLoop(self.labels[i].clone()));
        }
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(Error::InvalidWeight(weight));
        }
        self.out[i].insert(j, weight);
        match self.directedness {
            Directedness::Directed => {
                self.inc[j].insert(i, weight);
            }
            Directedness::Undirected => {
                self.out[j].insert(i, weight);
            }
        }
        Ok(())
    }

    pub fn directedness(&self) -> Directedness {
        self.directedness
    }

    pub fn is_directed(&self) -> bool {
        self.directedness == Directedness::Directed
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_index(&self, label: &str) -> Option<usize> {
        self.lookup.get(label).copied()
    }

    /// Edges as `(i, j, weight)`; undirected pairs appear once with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(i, nbrs)| nbrs.iter().map(move |(&j, &w)| (i, j, w)))
            .filter(|&(i, j, _)| self.is_directed() || i < j)
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        let arcs: usize = self.out.iter().map(BTreeMap::len).sum();
        match self.directedness {
            Directedness::Directed => arcs,
            Directedness::Undirected => arcs / 2,
        }
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        self.out.get(i)?.get(&j).copied()
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.out[i].iter().map(|(&j, &w)| (j, w))
    }

    pub fn predecessors(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let adjacency = match self.directedness {
            Directedness::Directed => &self.inc[i],
            Directedness::Undirected => &self.out[i],
        };
        adjacency.iter().map(|(&j, &w)| (j, w))
    }

    /// Undirected copy; opposite arcs merge with summed weights.
    pub fn symmetrized(&self) -> Graph {
        if !self.is_directed() {
            return self.clone();
        }
        let mut g = Graph::with_nodes(Directedness::Undirected, &self.labels).expect("labels are unique");
        for (i, j, w) in self.edges() {
            let total = w + self.weight(j, i).unwrap_or(0.0);
            g.add_edge_at(i, j, total).expect("edge is valid");
        }
        g
    }

    /// Weakly connected component id of each node, numbered in order of
    /// each component's smallest node index.
    pub fn components(&self) -> Vec<usize> {
        let n = self.len();
        let mut component = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if component[start] != usize::MAX {
                continue;
            }
            component[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for (w, _) in self.successors(v).chain(self.predecessors(v)) {
                    if component[w] == usize::MAX {
                        component[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        component
    }

    fn require(&self, label: &str) -> Result<usize> {
        self.node_index(label)
            .ok_or_else(|| Error::UnknownNode(label.to_owned()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Degree {
    pub in_degree: usize,
    pub out_degree: usize,
}

/// Distinct predecessors and successors of `label`. Both equal the
/// neighbour count in an undirected graph.
pub fn degree_centrality(g: &Graph, label: &str) -> Result<Degree> {
    let i = g.require(label)?;
    Ok(Degree {
        in_degree: g.predecessors(i).count(),
        out_degree: g.successors(i).count(),
    })
}

/// Weighted variant of [`degree_centrality`]: sums of incoming and
/// outgoing edge weights.
pub fn weighted_degree_centrality(g: &Graph, label: &str) -> Result<(f64, f64)> {
    let i = g.require(label)?;
    Ok((
        g.predecessors(i).map(|(_, w)| w).sum(),
        g.successors(i).map(|(_, w)| w).sum(),
    ))
}

/// Distinct neighbours in either direction.
pub fn neighbor_count(g: &Graph, i: usize) -> usize {
    match g.directedness {
        Directedness::Undirected => g.out[i].len(),
        Directedness::Directed => {
            let mut all: Vec<usize> = g.out[i].keys().chain(g.inc[i].keys()).copied().collect();
            all.sort_unstable();
            all.dedup();
            all.len()
        }
    }
}

/// Hop distances from `source` along outgoing edges; `None` if unreachable.
fn hop_distances(g: &Graph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("queued nodes have a distance");
        for (w, _) in g.successors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Closeness of `label`: the number of nodes it reaches divided by the sum
/// of hop distances to them. A node that reaches nothing scores 0.
///
/// ```
/// use citenv::centrality::{closeness_centrality, Directedness, Graph};
///
/// let mut g = Graph::with_nodes(Directedness::Undirected, ["A", "B", "C"]).unwrap();
/// g.add_edge("A", "B", 1.0).unwrap();
/// g.add_edge("B", "C", 1.0).unwrap();
/// assert_eq!(closeness_centrality(&g, "B").unwrap(), 1.0);
/// assert_eq!(closeness_centrality(&g, "A").unwrap(), 2.0 / 3.0);
/// ```
pub fn closeness_centrality(g: &Graph, label: &str) -> Result<f64> {
    let i = g.require(label)?;
    Ok(closeness_at(g, i))
}

/// Closeness of every node, in node order.
pub fn closeness_all(g: &Graph) -> Vec<f64> {
    (0..g.len()).into_par_iter().map(|i| closeness_at(g, i)).collect()
}

fn closeness_at(g: &Graph, i: usize) -> f64 {
    let (reached, total) = hop_distances(g, i)
        .into_iter()
        .flatten()
        .filter(|&d| d > 0)
        .fold((0usize, 0usize), |(n, s), d| (n + 1, s + d));
    if reached == 0 {
        0.0
    } else {
        reached as f64 / total as f64
    }
}

/// Normalizing constant for betweenness: the number of (ordered, if
/// directed) pairs of nodes other than the one being scored.
fn betweenness_norm(g: &Graph) -> Option<f64> {
    let n = g.len();
    if n < 3 {
        return None;
    }
    let pairs = ((n - 1) * (n - 2)) as f64;
    Some(match g.directedness {
        Directedness::Directed => pairs,
        Directedness::Undirected => pairs / 2.0,
    })
}

/// Raw (unnormalized) betweenness: for each node `k`, the sum over pairs
/// `i ≠ k ≠ j` of the fraction of `i`–`j` geodesics passing through `k`.
/// Undirected pairs are counted once.
pub fn raw_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.len();
    let chunks: Vec<Vec<f64>> = (0..n)
        .collect::<Vec<_>>()
        .par_chunks(SOURCES_PER_CHUNK)
        .map(|sources| {
            let mut acc = vec![0.0; n];
            let mut scratch = BrandesScratch::new(n);
            for &s in sources {
                scratch.accumulate(g, s, &mut acc);
            }
            acc
        })
        .collect();

    let mut total = vec![0.0; n];
    for chunk in &chunks {
        for (t, v) in total.iter_mut().zip(chunk) {
            *t += v;
        }
    }
    if !g.is_directed() {
        for t in &mut total {
            *t /= 2.0;
        }
    }
    total
}

/// Betweenness of every node as a fraction of all pairs of other nodes:
/// raw scores divided by `(n−1)(n−2)` (directed) or `(n−1)(n−2)/2`
/// (undirected). Graphs with fewer than three nodes score 0 everywhere.
///
/// ```
/// use citenv::centrality::{betweenness_centrality, Directedness, Graph};
///
/// let mut g = Graph::with_nodes(Directedness::Undirected, ["A", "B", "C", "D"]).unwrap();
/// for (a, b) in [("A", "B"), ("B", "C"), ("C", "D"), ("D", "A")] {
///     g.add_edge(a, b, 1.0).unwrap();
/// }
/// for b in betweenness_centrality(&g) {
///     assert!((b - 1.0 / 6.0).abs() < 1e-12);
/// }
/// ```
pub fn betweenness_centrality(g: &Graph) -> Vec<f64> {
    match betweenness_norm(g) {
        None => vec![0.0; g.len()],
        Some(norm) => raw_betweenness(g).into_iter().map(|b| b / norm).collect(),
    }
}

struct BrandesScratch {
    stack: Vec<usize>,
    preds: Vec<Vec<usize>>,
    sigma: Vec<f64>,
    dist: Vec<i64>,
    delta: Vec<f64>,
    queue: VecDeque<usize>,
}

impl BrandesScratch {
    fn new(n: usize) -> Self {
        BrandesScratch {
            stack: Vec::with_capacity(n),
            preds: vec![Vec::new(); n],
            sigma: vec![0.0; n],
            dist: vec![-1; n],
            delta: vec![0.0; n],
            queue: VecDeque::with_capacity(n),
        }
    }

    /// Single-source pass: BFS counting shortest paths, then dependencies
    /// accumulated in reverse BFS order.
    fn accumulate(&mut self, g: &Graph, s: usize, acc: &mut [f64]) {
        for v in 0..g.len() {
            self.preds[v].clear();
            self.sigma[v] = 0.0;
            self.dist[v] = -1;
            self.delta[v] = 0.0;
        }
        self.stack.clear();
        self.sigma[s] = 1.0;
        self.dist[s] = 0;
        self.queue.push_back(s);

        while let Some(v) = self.queue.pop_front() {
            self.stack.push(v);
            for (w, _) in g.successors(v) {
                if self.dist[w] < 0 {
                    self.dist[w] = self.dist[v] + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == self.dist[v] + 1 {
                    self.sigma[w] += self.sigma[v];
                    self.preds[w].push(v);
                }
            }
        }

        while let Some(w) = self.stack.pop() {
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for &v in &self.preds[w] {
                self.delta[v] += self.sigma[v] * coeff;
            }
            if w != s {
                acc[w] += self.delta[w];
            }
        }
    }
}

/// Every geodesic between one ordered pair, as found by the oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct PairGeodesics {
    pub source: usize,
    pub target: usize,
    /// Hop length of the geodesics; `None` when `target` is unreachable.
    pub distance: Option<usize>,
    /// Number of distinct geodesics.
    pub paths: u64,
    /// `through[k]`: geodesics with `k` as an interior node.
    pub through: Vec<u64>,
}

/// Enumerates all geodesics of every pair by exhaustive search. Pairs are
/// ordered for directed graphs and taken once (`source < target`) for
/// undirected ones.
pub fn geodesic_ledger(g: &Graph) -> Result<Vec<PairGeodesics>> {
    if g.len() > ORACLE_MAX_NODES {
        return Err(Error::OracleScale {
            nodes: g.len(),
            limit: ORACLE_MAX_NODES,
        });
    }
    let n = g.len();
    let mut ledger = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if s == t || (!g.is_directed() && t < s) {
                continue;
            }
            ledger.push(enumerate_geodesics(g, s, t));
        }
    }
    Ok(ledger)
}

/// Iterative deepening over simple paths: the first length at which any
/// `s → t` path exists is the geodesic length, and every simple path of
/// that length is a geodesic.
fn enumerate_geodesics(g: &Graph, s: usize, t: usize) -> PairGeodesics {
    let n = g.len();
    let mut through = vec![0; n];
    let mut on_path = vec![false; n];
    let mut path = vec![s];
    on_path[s] = true;
    for length in 1..n {
        let mut paths = 0;
        walk(g, t, length, &mut path, &mut on_path, &mut paths, &mut through);
        if paths > 0 {
            return PairGeodesics {
                source: s,
                target: t,
                distance: Some(length),
                paths,
                through,
            };
        }
    }
    PairGeodesics {
        source: s,
        target: t,
        distance: None,
        paths: 0,
        through,
    }
}

fn walk(
    g: &Graph,
    target: usize,
    remaining: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    paths: &mut u64,
    through: &mut [u64],
) {
    let here = *path.last().expect("path starts at the source");
    for (next, _) in g.successors(here) {
        if on_path[next] {
            continue;
        }
        if remaining == 1 {
            if next == target {
                *paths += 1;
                for &k in &path[1..] {
                    through[k] += 1;
                }
            }
            continue;
        }
        if next == target {
            continue;
        }
        on_path[next] = true;
        path.push(next);
        walk(g, target, remaining - 1, path, on_path, paths, through);
        path.pop();
        on_path[next] = false;
    }
}

/// Reference betweenness from [`geodesic_ledger`], normalized like
/// [`betweenness_centrality`]. Limited to [`ORACLE_MAX_NODES`] nodes.
pub fn brute_force_betweenness(g: &Graph) -> Result<Vec<f64>> {
    let ledger = geodesic_ledger(g)?;
    let mut raw = vec![0.0; g.len()];
    for pair in ledger.iter().filter(|p| p.paths > 0) {
        for (k, &count) in pair.through.iter().enumerate() {
            raw[k] += count as f64 / pair.paths as f64;
        }
    }
    Ok(match betweenness_norm(g) {
        None => vec![0.0; g.len()],
        Some(norm) => raw.into_iter().map(|b| b / norm).collect(),
    })
}

/// Dominant eigenvector of the weighted adjacency matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenvector {
    /// Unit-norm, nonnegative loadings in node order.
    pub loadings: Vec<f64>,
    /// Rayleigh quotient `vᵀAv` of the loadings.
    pub eigenvalue: f64,
    pub iterations: usize,
}

/// Eigenvector centrality by power iteration from the uniform vector.
///
/// Directed graphs are symmetrized first (see [`Graph::symmetrized`]). The
/// iteration runs on `A + I`, which has the same eigenvectors as `A` but a
/// strictly dominant top eigenvalue on bipartite graphs such as stars and
/// even cycles, where plain iteration on `A` oscillates.
///
/// ```
/// use citenv::centrality::{eigenvector_centrality, Directedness, Graph};
///
/// let mut g = Graph::with_nodes(Directedness::Undirected, ["A", "B"]).unwrap();
/// g.add_edge("A", "B", 1.0).unwrap();
/// let ev = eigenvector_centrality(&g).unwrap();
/// assert!((ev.loadings[0] - 0.5f64.sqrt()).abs() < 1e-9);
/// assert!((ev.eigenvalue - 1.0).abs() < 1e-9);
/// ```
pub fn eigenvector_centrality(g: &Graph) -> Result<Eigenvector> {
    let sym;
    let g = if g.is_directed() {
        sym = g.symmetrized();
        &sym
    } else {
        g
    };
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let n = g.len();
    let adjacency_times =
        |v: &[f64]| -> Vec<f64> { (0..n).map(|i| g.successors(i).map(|(j, w)| w * v[j]).sum()).collect() };

    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut change = f64::INFINITY;
    for iteration in 1..=EIGENVECTOR_MAX_ITERATIONS {
        let mut next: Vec<f64> = adjacency_times(&v).into_iter().zip(&v).map(|(av, x)| av + x).collect();
        let norm = l2(&next);
        for x in &mut next {
            *x /= norm;
        }
        change = next.iter().zip(&v).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        v = next;
        if change <= EIGENVECTOR_TOLERANCE {
            let av = adjacency_times(&v);
            let eigenvalue = av.iter().zip(&v).map(|(a, b)| a * b).sum();
            return Ok(Eigenvector {
                loadings: v,
                eigenvalue,
                iterations: iteration,
            });
        }
    }
    Err(Error::NotConverged {
        iterations: EIGENVECTOR_MAX_ITERATIONS,
        residual: change,
    })
}

fn l2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Which graph a centrality value was computed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphBasis {
    /// Cosine-thresholded similarity graph of an environment.
    SimilarityGraph,
    /// Raw citation links among environment members.
    EnvironmentCitations,
    /// Raw citation links of the full matrix.
    CitationMatrix,
}

impl GraphBasis {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphBasis::SimilarityGraph => "similarity graph",
            GraphBasis::EnvironmentCitations => "environment citations",
            GraphBasis::CitationMatrix => "citation matrix",
        }
    }
}

impl fmt::Display for GraphBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeCentrality {
    pub journal: JournalId,
    /// Neighbours in the local graph.
    pub degree_local: usize,
    /// Distinct citing journals in the global graph.
    pub degree_in: usize,
    /// Distinct cited journals in the global graph.
    pub degree_out: usize,
    /// Local closeness, reachable-set formulation.
    pub closeness: f64,
    /// Local betweenness as a fraction (×100 for a percentage).
    pub betweenness: f64,
    /// Local eigenvector loading.
    pub eigenvector: f64,
    /// Connected component of the local graph.
    pub component: usize,
}

/// Local and global centralities for the nodes of a local graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityReport {
    pub local_basis: GraphBasis,
    pub global_basis: GraphBasis,
    pub eigenvalue: f64,
    pub nodes: Vec<NodeCentrality>,
}

impl CentralityReport {
    pub fn node(&self, journal: &JournalId) -> Option<&NodeCentrality> {
        self.nodes.iter().find(|n| &n.journal == journal)
    }
}

/// Runs every measure on `local` and looks each node's in/out degree up in
/// `global`. Every local node must exist in `global`.
pub fn centrality_report(
    local: &Graph,
    local_basis: GraphBasis,
    global: &Graph,
    global_basis: GraphBasis,
) -> Result<CentralityReport> {
    let closeness = closeness_all(local);
    let betweenness = betweenness_centrality(local);
    let eigen = eigenvector_centrality(local)?;
    let components = local.components();
    let nodes = local
        .labels()
        .iter()
        .enumerate()
        .map(|(i, label)| {
            let global_degree = degree_centrality(global, label)?;
            Ok(NodeCentrality {
                journal: JournalId::new(label.as_str())?,
                degree_local: neighbor_count(local, i),
                degree_in: global_degree.in_degree,
                degree_out: global_degree.out_degree,
                closeness: closeness[i],
                betweenness: betweenness[i],
                eigenvector: eigen.loadings[i],
                component: components[i],
            })
        })
        .collect::<Result<_>>()?;
    Ok(CentralityReport {
        local_basis,
        global_basis,
        eigenvalue: eigen.eigenvalue,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn undirected(labels: &[&str], edges: &[(&str, &str)]) -> Graph {
        let mut g = Graph::with_nodes(Directedness::Undirected, labels).unwrap();
        for (a, b) in edges {
            g.add_edge(a, b, 1.0).unwrap();
        }
        g
    }

    fn star() -> Graph {
        undirected(
            &["C", "L1", "L2", "L3", "L4"],
            &[("C", "L1"), ("C", "L2"), ("C", "L3"), ("C", "L4")],
        )
    }

    fn path3() -> Graph {
        undirected(&["A", "B", "C"], &[("A", "B"), ("B", "C")])
    }

    fn cycle4() -> Graph {
        undirected(&["A", "B", "C", "D"], &[("A", "B"), ("B", "C"), ("C", "D"), ("D", "A")])
    }

    #[test]
    fn graph_rejects_bad_input() {
        let mut g = Graph::with_nodes(Directedness::Directed, ["A", "B"]).unwrap();
        assert!(matches!(g.add_node("A"), Err(Error::DuplicateNode(_))));
        assert!(matches!(g.add_edge("A", "A", 1.0), Err(Error::SelfLoop(_))));
        assert!(matches!(g.add_edge("A", "Z", 1.0), Err(Error::UnknownNode(_))));
        assert!(matches!(g.add_edge("A", "B", 0.0), Err(Error::InvalidWeight(_))));
        assert!(matches!(g.add_edge("A", "B", f64::NAN), Err(Error::InvalidWeight(_))));
    }

    #[test]
    fn undirected_pairs_stored_once() {
        let g = cycle4();
        assert_eq!(g.edge_count(), 4);
        assert!(g.edges().iter().all(|&(i, j, _)| i < j));
    }

    #[test]
    fn degrees() {
        let g = star();
        let c = degree_centrality(&g, "C").unwrap();
        assert_eq!((c.in_degree, c.out_degree), (4, 4));
        let mut g = Graph::with_nodes(Directedness::Directed, ["A", "B", "C", "X"]).unwrap();
        g.add_edge("A", "B", 3.0).unwrap();
        g.add_edge("C", "B", 2.0).unwrap();
        let b = degree_centrality(&g, "B").unwrap();
        assert_eq!((b.in_degree, b.out_degree), (2, 0));
        assert_eq!(degree_centrality(&g, "X").unwrap(), Degree::default());
        assert_eq!(weighted_degree_centrality(&g, "B").unwrap(), (5.0, 0.0));
        assert!(degree_centrality(&g, "Q").is_err());
    }

    #[test]
    fn closeness_fixtures() {
        let g = path3();
        assert_eq!(closeness_centrality(&g, "B").unwrap(), 1.0);
        assert_abs_diff_eq!(closeness_centrality(&g, "A").unwrap(), 2.0 / 3.0, epsilon = 1e-15);
        let k4 = undirected(
            &["A", "B", "C", "D"],
            &[("A", "B"), ("A", "C"), ("A", "D"), ("B", "C"), ("B", "D"), ("C", "D")],
        );
        assert!(closeness_all(&k4).iter().all(|&c| c == 1.0));
    }

    #[test]
    fn closeness_of_isolate_is_zero() {
        let g = undirected(&["A", "B", "C"], &[("A", "B")]);
        assert_eq!(closeness_centrality(&g, "C").unwrap(), 0.0);
        // reachable-set formulation: A reaches only B at distance 1
        assert_eq!(closeness_centrality(&g, "A").unwrap(), 1.0);
    }

    #[test]
    fn betweenness_fixtures() {
        let b = betweenness_centrality(&star());
        assert_eq!(b[0], 1.0);
        assert!(b[1..].iter().all(|&x| x == 0.0));
        assert_eq!(betweenness_centrality(&path3())[1], 1.0);
        for x in betweenness_centrality(&cycle4()) {
            assert_abs_diff_eq!(x, 1.0 / 6.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn betweenness_small_graphs_are_zero() {
        let g = undirected(&["A", "B"], &[("A", "B")]);
        assert_eq!(betweenness_centrality(&g), [0.0, 0.0]);
        assert_eq!(brute_force_betweenness(&g).unwrap(), [0.0, 0.0]);
        assert!(betweenness_centrality(&Graph::new(Directedness::Directed)).is_empty());
    }

    #[test]
    fn directed_path_betweenness() {
        // A → B → C: B lies on the single A→C geodesic out of 2 ordered pairs
        let mut g = Graph::with_nodes(Directedness::Directed, ["A", "B", "C"]).unwrap();
        g.add_edge("A", "B", 1.0).unwrap();
        g.add_edge("B", "C", 1.0).unwrap();
        assert_eq!(betweenness_centrality(&g), [0.0, 0.5, 0.0]);
        assert_eq!(brute_force_betweenness(&g).unwrap(), [0.0, 0.5, 0.0]);
    }

    #[test]
    fn oracle_matches_fixtures() {
        for x in brute_force_betweenness(&cycle4()).unwrap() {
            assert_abs_diff_eq!(x, 1.0 / 6.0, epsilon = 1e-15);
        }
        assert_eq!(brute_force_betweenness(&star()).unwrap()[0], 1.0);
    }

    #[test]
    fn oracle_ledger_counts_paths() {
        let ledger = geodesic_ledger(&cycle4()).unwrap();
        let opposite = ledger.iter().find(|p| p.source == 0 && p.target == 2).unwrap();
        assert_eq!(opposite.distance, Some(2));
        assert_eq!(opposite.paths, 2);
        assert_eq!(opposite.through, [0, 1, 0, 1]);
    }

    #[test]
    fn oracle_refuses_large_graphs() {
        let labels: Vec<String> = (0..65).map(|i| format!("n{i}")).collect();
        let g = Graph::with_nodes(Directedness::Undirected, &labels).unwrap();
        assert!(matches!(
            brute_force_betweenness(&g),
            Err(Error::OracleScale { nodes: 65, .. })
        ));
    }

    #[test]
    fn eigenvector_fixtures() {
        let ev = eigenvector_centrality(&star()).unwrap();
        assert_abs_diff_eq!(ev.loadings[0], 2.0 / 8f64.sqrt(), epsilon = 1e-9);
        for &leaf in &ev.loadings[1..] {
            assert_abs_diff_eq!(leaf, 1.0 / 8f64.sqrt(), epsilon = 1e-9);
        }
        assert_abs_diff_eq!(ev.eigenvalue, 2.0, epsilon = 1e-9);

        let ev = eigenvector_centrality(&cycle4()).unwrap();
        for &x in &ev.loadings {
            assert_abs_diff_eq!(x, 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn eigenvector_errors() {
        let g = undirected(&["A", "B"], &[]);
        assert!(matches!(eigenvector_centrality(&g), Err(Error::NoEdges)));
    }

    #[test]
    fn eigenvector_symmetrizes_directed_input() {
        let mut g = Graph::with_nodes(Directedness::Directed, ["A", "B"]).unwrap();
        g.add_edge("A", "B", 2.0).unwrap();
        let ev = eigenvector_centrality(&g).unwrap();
        assert_abs_diff_eq!(ev.loadings[0], ev.loadings[1], epsilon = 1e-12);
        assert_abs_diff_eq!(ev.eigenvalue, 2.0, epsilon = 1e-9);
    }

    #[test]
    fn components_are_weak() {
        let mut g = Graph::with_nodes(Directedness::Directed, ["A", "B", "C", "D"]).unwrap();
        g.add_edge("B", "A", 1.0).unwrap();
        g.add_edge("D", "C", 1.0).unwrap();
        assert_eq!(g.components(), [0, 0, 1, 1]);
    }

    #[test]
    fn report_combines_local_and_global() {
        let local = path3();
        let mut global = Graph::with_nodes(Directedness::Directed, ["A", "B", "C", "Z"]).unwrap();
        global.add_edge("A", "B", 4.0).unwrap();
        global.add_edge("Z", "B", 1.0).unwrap();
        global.add_edge("B", "C", 1.0).unwrap();
        let report =
            centrality_report(&local, GraphBasis::SimilarityGraph, &global, GraphBasis::CitationMatrix).unwrap();
        let b = report.node(&JournalId::new("B").unwrap()).unwrap();
        assert_eq!((b.degree_local, b.degree_in, b.degree_out), (2, 2, 1));
        assert_eq!(b.betweenness, 1.0);
        assert_eq!(b.closeness, 1.0);
        assert!(report.nodes.iter().all(|n| n.component == 0));

        let orphan = undirected(&["A", "Q"], &[("A", "Q")]);
        assert!(matches!(
            centrality_report(
                &orphan,
                GraphBasis::SimilarityGraph,
                &global,
                GraphBasis::CitationMatrix
            ),
            Err(Error::UnknownNode(_))
        ));
    }

    #[test]
    fn citation_matrix_graph_drops_diagonal() {
        let m = crate::ingest::parse_citation_csv("A,B,5\nB,A,2\nA,A,7".as_bytes(), 2005).unwrap();
        let g = Graph::from_citation_matrix(&m);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.weight(0, 1), Some(5.0));
    }
}
