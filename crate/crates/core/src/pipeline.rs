//! Environment → similarity graph → centralities → glyphs, in one call.

use crate::centrality::{centrality_report, CentralityReport, Graph, GraphBasis};
use crate::environment::{extract_environment, Direction, SeedEnvironment, DEFAULT_MIN_CONTRIBUTION};
use crate::error::Result;
use crate::export::{make_glyphs, NodeGlyph};
use crate::ingest::{CitationMatrix, JournalId};
use crate::similarity::{
    similarity_graph_with, Axes, ProfileBasis, SimilarityGraph, SimilarityOptions, DEFAULT_COSINE_THRESHOLD,
};

/// Which graph the local centralities are computed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LocalGraph {
    /// The cosine-thresholded similarity graph.
    #[default]
    Similarity,
    /// Raw directed citation links among the environment members.
    Citations,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOptions {
    pub seed: JournalId,
    pub direction: Direction,
    pub min_contribution: f64,
    pub cosine_threshold: f64,
    /// `None` compares profiles in the environment direction.
    pub basis: Option<ProfileBasis>,
    /// Lay profiles out over every journal of the matrix instead of the
    /// environment members.
    pub full_axes: bool,
    pub local_graph: LocalGraph,
}

impl PipelineOptions {
    /// Cited direction, 1% contribution threshold, cosine threshold 0.2.
    pub fn new(seed: JournalId) -> Self {
        PipelineOptions {
            seed,
            direction: Direction::Cited,
            min_contribution: DEFAULT_MIN_CONTRIBUTION,
            cosine_threshold: DEFAULT_COSINE_THRESHOLD,
            basis: None,
            full_axes: false,
            local_graph: LocalGraph::Similarity,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub environment: SeedEnvironment,
    pub graph: SimilarityGraph,
    pub glyphs: Vec<NodeGlyph>,
    pub report: CentralityReport,
}

pub fn analyze(matrix: &CitationMatrix, options: &PipelineOptions) -> Result<Analysis> {
    let global = Graph::from_citation_matrix(matrix);
    analyze_with_global(matrix, &global, options)
}

/// [`analyze`] with a prebuilt global citation graph, for running several
/// seeds against one matrix.
pub fn analyze_with_global(matrix: &CitationMatrix, global: &Graph, options: &PipelineOptions) -> Result<Analysis> {
    let environment = extract_environment(matrix, &options.seed, options.direction, options.min_contribution)?;
    let graph = similarity_graph_with(
        &environment,
        &SimilarityOptions {
            threshold: options.cosine_threshold,
            basis: options.basis,
            axes: if options.full_axes {
                Axes::Full(matrix)
            } else {
                Axes::Members
            },
        },
    )?;
    let (local, local_basis) = match options.local_graph {
        LocalGraph::Similarity => (graph.to_graph(), GraphBasis::SimilarityGraph),
        LocalGraph::Citations => (
            Graph::from_citation_matrix(environment.submatrix()),
            GraphBasis::EnvironmentCitations,
        ),
    };
    let local = reorder(&local, environment.members());
    let report = centrality_report(&local, local_basis, global, GraphBasis::CitationMatrix)?;
    let glyphs = make_glyphs(&environment);
    Ok(Analysis {
        environment,
        graph,
        glyphs,
        report,
    })
}

/// Copy of `g` with nodes in `order`, so reports follow environment order.
fn reorder(g: &Graph, order: &[JournalId]) -> Graph {
    let mut out = Graph::with_nodes(g.directedness(), order.iter().map(JournalId::as_str)).expect("members are unique");
    for (i, j, w) in g.edges() {
        let a = out.node_index(&g.labels()[i]).expect("same node set");
        let b = out.node_index(&g.labels()[j]).expect("same node set");
        out.add_edge_at(a, b, w).expect("edge copied from a valid graph");
    }
    out
}
