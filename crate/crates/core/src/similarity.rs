//! Cosine-normalized similarity between citation profiles.
//!
//! Each environment member gets a profile vector: its incoming citations
//! (cited basis) or outgoing references (citing basis) laid out over a set
//! of axis journals. Self-citations are zeroed before comparison. Pairs
//! whose cosine is strictly above the threshold become edges of an
//! undirected [`SimilarityGraph`].

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::centrality::{Directedness, Graph};
use crate::environment::{Direction, SeedEnvironment};
use crate::error::{Error, Result};
use crate::ingest::{CitationMatrix, JournalId};

/// Default visualization threshold: keep pairs with cosine above 0.2.
pub const DEFAULT_COSINE_THRESHOLD: f64 = 0.2;

/// Salton's cosine of two nonnegative vectors:
/// `Σxy / sqrt(Σx² · Σy²)`.
///
/// A zero vector has no direction, so the similarity is undefined and an
/// error is returned rather than 0.
///
/// ```
/// use citenv::similarity::cosine;
///
/// assert_eq!(cosine(&[1.0, 1.0, 0.0], &[1.0, 0.0, 1.0]).unwrap(), 0.5);
/// assert!(cosine(&[0.0, 0.0], &[1.0, 2.0]).is_err());
/// ```
pub fn cosine(x: &[f64], y: &[f64]) -> Result<f64> {
    check_lengths(x, y, 1)?;
    check_nonnegative(x)?;
    check_nonnegative(y)?;
    let (mut xy, mut xx, mut yy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        xy += a * b;
        xx += a * a;
        yy += b * b;
    }
    if xx == 0.0 || yy == 0.0 {
        return Err(Error::UndefinedSimilarity);
    }
    Ok((xy / (xx * yy).sqrt()).min(1.0))
}

/// Pearson product-moment correlation. Unlike [`cosine`] it centers both
/// vectors on their arithmetic means first.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    check_lengths(x, y, 2)?;
    for (i, &v) in x.iter().chain(y).enumerate() {
        if !v.is_finite() {
            return Err(Error::InvalidEntry {
                index: i % x.len(),
                value: v,
            });
        }
    }
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let (da, db) = (a - mean_x, b - mean_y);
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

fn check_lengths(x: &[f64], y: &[f64], needed: usize) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < needed {
        return Err(Error::TooShort { needed, found: x.len() });
    }
    Ok(())
}

fn check_nonnegative(v: &[f64]) -> Result<()> {
    match v.iter().position(|&a| !(a >= 0.0 && a.is_finite())) {
        Some(index) => Err(Error::InvalidEntry { index, value: v[index] }),
        None => Ok(()),
    }
}

/// Which citation profiles are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileBasis {
    /// Incoming citations (matrix columns).
    Cited,
    /// Outgoing references (matrix rows).
    Citing,
    /// Cited profile followed by citing profile.
    Both,
}

impl From<Direction> for ProfileBasis {
    fn from(d: Direction) -> Self {
        match d {
            Direction::Cited => ProfileBasis::Cited,
            Direction::Citing => ProfileBasis::Citing,
        }
    }
}

impl ProfileBasis {
    pub fn as_str(self) -> &'static str {
        match self {
            ProfileBasis::Cited => "cited",
            ProfileBasis::Citing => "citing",
            ProfileBasis::Both => "both",
        }
    }
}

impl fmt::Display for ProfileBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProfileBasis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "cited" => Ok(ProfileBasis::Cited),
            "citing" => Ok(ProfileBasis::Citing),
            "both" => Ok(ProfileBasis::Both),
            _ => Err(format!("unknown profile basis {s:?} (expected cited, citing or both)")),
        }
    }
}

/// Coordinate axes for the profile vectors.
#[derive(Debug, Clone, Copy, Default)]
pub enum Axes<'a> {
    /// The environment members, read from the environment submatrix.
    #[default]
    Members,
    /// Every journal of a full matrix (the one the environment came from).
    Full(&'a CitationMatrix),
}

#[derive(Debug, Clone, Copy)]
pub struct SimilarityOptions<'a> {
    pub threshold: f64,
    /// `None` follows the environment direction.
    pub basis: Option<ProfileBasis>,
    pub axes: Axes<'a>,
}

impl Default for SimilarityOptions<'_> {
    fn default() -> Self {
        SimilarityOptions {
            threshold: DEFAULT_COSINE_THRESHOLD,
            basis: None,
            axes: Axes::Members,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SimilarityWarning {
    /// The member's profile is all zeros; it is kept as an isolated node.
    ZeroProfile(JournalId),
}

impl fmt::Display for SimilarityWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimilarityWarning::ZeroProfile(id) => {
                write!(f, "{id} has an all-zero profile; kept without edges")
            }
        }
    }
}

/// An undirected edge between node indices `source < target`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityEdge {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
}

/// Undirected cosine-weighted graph over environment members.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityGraph {
    nodes: Vec<JournalId>,
    edges: Vec<SimilarityEdge>,
    threshold: f64,
    basis: ProfileBasis,
    warnings: Vec<SimilarityWarning>,
}

impl SimilarityGraph {
    /// Builds a graph from explicit weighted pairs. Each weight must lie in
    /// `(threshold, 1]`; pairs are stored once, whatever their orientation.
    pub fn from_edges<'e>(
        nodes: Vec<JournalId>,
        edges: impl IntoIterator<Item = (&'e JournalId, &'e JournalId, f64)>,
        threshold: f64,
        basis: ProfileBasis,
    ) -> Result<Self> {
        check_threshold(threshold)?;
        for (k, id) in nodes.iter().enumerate() {
            if nodes[..k].contains(id) {
                return Err(Error::DuplicateNode(id.to_string()));
            }
        }
        let position = |id: &JournalId| {
            nodes
                .iter()
                .position(|n| n == id)
                .ok_or_else(|| Error::UnknownNode(id.to_string()))
        };
        let mut stored: Vec<SimilarityEdge> = Vec::new();
        for (a, b, weight) in edges {
            let (i, j) = (position(a)?, position(b)?);
            if i == j {
                return Err(Error::SelfLoop(a.to_string()));
            }
            if !(weight > threshold && weight <= 1.0) {
                return Err(Error::InvalidWeight(weight));
            }
            let (source, target) = (i.min(j), i.max(j));
            if stored.iter().any(|e| e.source == source && e.target == target) {
                return Err(Error::DuplicateEdge(a.to_string(), b.to_string()));
            }
            stored.push(SimilarityEdge { source, target, weight });
        }
        stored.sort_by_key(|e| (e.source, e.target));
        Ok(SimilarityGraph {
            nodes,
            edges: stored,
            threshold,
            basis,
            warnings: Vec::new(),
        })
    }

    pub fn nodes(&self) -> &[JournalId] {
        &self.nodes
    }

    /// Edges sorted by `(source, target)`.
    pub fn edges(&self) -> &[SimilarityEdge] {
        &self.edges
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn basis(&self) -> ProfileBasis {
        self.basis
    }

    pub fn warnings(&self) -> &[SimilarityWarning] {
        &self.warnings
    }

    pub fn weight(&self, a: &JournalId, b: &JournalId) -> Option<f64> {
        let i = self.nodes.iter().position(|n| n == a)?;
        let j = self.nodes.iter().position(|n| n == b)?;
        let key = (i.min(j), i.max(j));
        self.edges
            .binary_search_by_key(&key, |e| (e.source, e.target))
            .ok()
            .map(|k| self.edges[k].weight)
    }

    /// The graph as an undirected weighted [`Graph`] for centrality analysis.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new(Directedness::Undirected);
        for id in &self.nodes {
            g.add_node(id.as_str()).expect("similarity nodes are distinct");
        }
        for e in &self.edges {
            g.add_edge_at(e.source, e.target, e.weight)
                .expect("similarity edges are valid");
        }
        g
    }
}

fn check_threshold(threshold: f64) -> Result<()> {
    if (0.0..1.0).contains(&threshold) {
        Ok(())
    } else {
        Err(Error::InvalidThreshold(threshold))
    }
}

/// Cosine graph of `env` over its own members, compared on the profiles of
/// the environment direction.
pub fn similarity_graph(env: &SeedEnvironment, threshold: f64) -> Result<SimilarityGraph> {
    similarity_graph_with(
        env,
        &SimilarityOptions {
            threshold,
            ..SimilarityOptions::default()
        },
    )
}

pub fn similarity_graph_with(env: &SeedEnvironment, options: &SimilarityOptions<'_>) -> Result<SimilarityGraph> {
    check_threshold(options.threshold)?;
    let members = env.members();
    if members.len() < 2 {
        return Err(Error::TooFewMembers(members.len()));
    }
    let basis = options.basis.unwrap_or_else(|| env.direction().into());
    let profiles = profiles(env, options.axes, basis)?;

    let mut warnings = Vec::new();
    let norms: Vec<bool> = profiles
        .iter()
        .zip(members)
        .map(|(p, id)| {
            let nonzero = p.iter().any(|&v| v > 0.0);
            if !nonzero {
                warnings.push(SimilarityWarning::ZeroProfile(id.clone()));
            }
            nonzero
        })
        .collect();

    let threshold = options.threshold;
    let edges: Vec<SimilarityEdge> = (0..members.len())
        .into_par_iter()
        .map(|i| {
            let mut row = Vec::new();
            if !norms[i] {
                return Ok(row);
            }
            for j in (i + 1)..members.len() {
                if !norms[j] {
                    continue;
                }
                let weight = cosine(&profiles[i], &profiles[j])?;
                if weight > threshold {
                    row.push(SimilarityEdge {
                        source: i,
                        target: j,
                        weight,
                    });
                }
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    Ok(SimilarityGraph {
        nodes: members.to_vec(),
        edges,
        threshold,
        basis,
        warnings,
    })
}

/// Dense profile vectors, one per member, diagonal entries zeroed.
fn profiles(env: &SeedEnvironment, axes: Axes<'_>, basis: ProfileBasis) -> Result<Vec<Vec<f64>>> {
    let members = env.members();
    let source = match axes {
        Axes::Members => env.submatrix(),
        Axes::Full(m) => m,
    };
    // axis position of each source-matrix index
    let (width, axis): (usize, Vec<Option<usize>>) = match axes {
        Axes::Members => {
            let mut axis = vec![None; source.len()];
            for (k, id) in members.iter().enumerate() {
                if let Some(i) = source.index_of(id) {
                    axis[i] = Some(k);
                }
            }
            (members.len(), axis)
        }
        Axes::Full(m) => (m.len(), (0..m.len()).map(Some).collect()),
    };

    let parts: &[ProfileBasis] = match basis {
        ProfileBasis::Both => &[ProfileBasis::Cited, ProfileBasis::Citing],
        ProfileBasis::Cited => &[ProfileBasis::Cited],
        ProfileBasis::Citing => &[ProfileBasis::Citing],
    };

    members
        .iter()
        .map(|id| {
            let own = source.index_of(id).ok_or_else(|| Error::UnknownJournal(id.clone()))?;
            let mut v = vec![0.0; width * parts.len()];
            for (p, part) in parts.iter().enumerate() {
                let entries = match part {
                    ProfileBasis::Cited => source.col_at(own),
                    _ => source.row_at(own),
                };
                for &(other, count) in entries {
                    if other == own {
                        continue;
                    }
                    if let Some(k) = axis[other] {
                        v[p * width + k] = count as f64;
                    }
                }
            }
            Ok(v)
        })
        .collect()
}
