#![allow(dead_code)]

use citenv::centrality::{Directedness, Graph};
use citenv::ingest::{CitationMatrix, JournalId, MatrixBuilder};
use rand::Rng;

pub fn id(s: &str) -> JournalId {
    JournalId::new(s).unwrap()
}

/// Random simple graph on `n` nodes: each candidate pair becomes an edge
/// with probability `density`, weighted uniformly in [0.1, 1].
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, density: f64, directedness: Directedness) -> Graph {
    let labels: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
    let mut g = Graph::with_nodes(directedness, &labels).unwrap();
    for i in 0..n {
        for j in 0..n {
            let candidate = match directedness {
                Directedness::Directed => i != j,
                Directedness::Undirected => i < j,
            };
            if candidate && rng.gen_bool(density) {
                g.add_edge_at(i, j, rng.gen_range(0.1..=1.0)).unwrap();
            }
        }
    }
    g
}

/// Graph from an adjacency bitmask over candidate pairs, for proptest.
pub fn graph_from_mask(n: usize, directed: bool, mask: &[bool]) -> Graph {
    let directedness = if directed {
        Directedness::Directed
    } else {
        Directedness::Undirected
    };
    let labels: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
    let mut g = Graph::with_nodes(directedness, &labels).unwrap();
    let mut bits = mask.iter().cycle();
    for i in 0..n {
        for j in 0..n {
            let candidate = if directed { i != j } else { i < j };
            if candidate && *bits.next().unwrap() {
                g.add_edge_at(i, j, 1.0).unwrap();
            }
        }
    }
    g
}

/// Same graph with node `i` renamed and moved to position `perm[i]`.
pub fn permuted(g: &Graph, perm: &[usize]) -> Graph {
    let mut labels = vec![String::new(); g.len()];
    for (i, &p) in perm.iter().enumerate() {
        labels[p] = g.labels()[i].clone();
    }
    let mut out = Graph::with_nodes(g.directedness(), &labels).unwrap();
    for (i, j, w) in g.edges() {
        out.add_edge_at(perm[i], perm[j], w).unwrap();
    }
    out
}

/// Random citation matrix over journals `J000..` with the given cells.
pub fn matrix_from_cells(year: i32, cells: &[(usize, usize, u64)]) -> CitationMatrix {
    let mut b = MatrixBuilder::new(year);
    for &(i, j, c) in cells {
        b.add_citation(&id(&format!("J{i:03}")), &id(&format!("J{j:03}")), c)
            .unwrap();
    }
    b.build()
}

/// A minimal Pajek `.net` reader for round-trip checks.
#[derive(Debug, Default)]
pub struct PajekNet {
    /// (label, x_fact, y_fact)
    pub vertices: Vec<(String, f64, f64)>,
    /// (1-based i, 1-based j, weight)
    pub edges: Vec<(usize, usize, f64)>,
}

pub fn read_pajek(text: &str) -> PajekNet {
    enum Section {
        None,
        Vertices,
        Edges,
    }
    let mut net = PajekNet::default();
    let mut section = Section::None;
    for line in text.lines() {
        if line.starts_with("*Vertices") {
            section = Section::Vertices;
            continue;
        }
        if line.starts_with("*Edges") {
            section = Section::Edges;
            continue;
        }
        match section {
            Section::Vertices => {
                let open = line.find('"').unwrap();
                let close = open + 1 + line[open + 1..].find('"').unwrap();
                let index: usize = line[..open].trim().parse().unwrap();
                assert_eq!(index, net.vertices.len() + 1, "vertices are numbered consecutively");
                let label = line[open + 1..close].to_owned();
                let params: Vec<&str> = line[close + 1..].split_whitespace().collect();
                let value = |key: &str| -> f64 {
                    let k = params.iter().position(|p| *p == key).unwrap();
                    params[k + 1].parse().unwrap()
                };
                net.vertices.push((label, value("x_fact"), value("y_fact")));
            }
            Section::Edges => {
                let f: Vec<&str> = line.split_whitespace().collect();
                assert_eq!(f.len(), 3, "edge line {line:?}");
                net.edges
                    .push((f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap()));
            }
            Section::None => panic!("content before *Vertices: {line:?}"),
        }
    }
    net
}
