//! Serializers for similarity graphs and centrality reports.
//!
//! Every format is deterministic: nodes follow environment order, edges
//! follow `(source, target)` order, and floats are printed either with a
//! fixed number of decimals or in shortest round-trip form.
//!
//! Nodes are drawn as ellipses ([`NodeGlyph`]): the vertical extent grows
//! with the citations a journal receives inside the environment, the
//! horizontal extent with the same count net of self-citations. A round
//! glyph means no self-citations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::centrality::{CentralityReport, GraphBasis};
use crate::environment::SeedEnvironment;
use crate::error::{Error, Result};
use crate::ingest::JournalId;
use crate::similarity::{ProfileBasis, SimilarityGraph};

/// Pen width per unit of cosine weight.
pub const STROKE_SCALE: f64 = 5.0;

pub const JSON_FORMAT: &str = "citenv-network/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeGlyph {
    pub journal: JournalId,
    /// Citations in the environment direction, self-citations included.
    pub gross_cites: u64,
    pub net_of_self: u64,
    /// `log10(1 + gross_cites)`.
    pub y_extent: f64,
    /// `log10(1 + net_of_self)`.
    pub x_extent: f64,
}

impl NodeGlyph {
    /// # Panics
    ///
    /// If `net_of_self > gross_cites`.
    pub fn new(journal: JournalId, gross_cites: u64, net_of_self: u64) -> Self {
        assert!(net_of_self <= gross_cites, "net citations exceed gross citations");
        NodeGlyph {
            journal,
            gross_cites,
            net_of_self,
            y_extent: log_extent(gross_cites),
            x_extent: log_extent(net_of_self),
        }
    }

    /// `y_extent / x_extent`; infinite when every citation is a self-citation.
    pub fn ellipticity(&self) -> f64 {
        self.y_extent / self.x_extent
    }
}

fn log_extent(count: u64) -> f64 {
    (count as f64 + 1.0).log10()
}

/// One glyph per environment member, in member order.
pub fn make_glyphs(env: &SeedEnvironment) -> Vec<NodeGlyph> {
    env.members()
        .iter()
        .map(|id| {
            let totals = env.totals(id).expect("members have totals");
            NodeGlyph::new(id.clone(), totals.gross, totals.net_of_self)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeStroke {
    pub source: usize,
    pub target: usize,
    /// `STROKE_SCALE × weight`.
    pub width: f64,
}

pub fn edge_strokes(g: &SimilarityGraph) -> Vec<EdgeStroke> {
    g.edges()
        .iter()
        .map(|e| EdgeStroke {
            source: e.source,
            target: e.target,
            width: STROKE_SCALE * e.weight,
        })
        .collect()
}

fn glyphs_for<'a>(g: &SimilarityGraph, glyphs: &'a [NodeGlyph]) -> Result<Vec<&'a NodeGlyph>> {
    g.nodes()
        .iter()
        .map(|id| {
            glyphs
                .iter()
                .find(|glyph| &glyph.journal == id)
                .ok_or_else(|| Error::MissingGlyph(id.clone()))
        })
        .collect()
}

/// Pajek `.net` text: `*Vertices` with 1-based indices, quoted labels and
/// `x_fact`/`y_fact` set to the glyph extents, then `*Edges` with weights to
/// four decimals.
///
/// ```
/// use citenv::export::{export_pajek, NodeGlyph};
/// use citenv::ingest::JournalId;
/// use citenv::similarity::{ProfileBasis, SimilarityGraph};
///
/// let (a, b) = (JournalId::new("A").unwrap(), JournalId::new("B").unwrap());
/// let g = SimilarityGraph::from_edges(vec![a.clone(), b.clone()], [(&a, &b, 0.35)], 0.2, ProfileBasis::Cited).unwrap();
/// let glyphs = [NodeGlyph::new(a, 9, 9), NodeGlyph::new(b, 99, 9)];
/// let net = export_pajek(&g, &glyphs).unwrap();
/// assert_eq!(net, "*Vertices 2\n1 \"A\" ellipse x_fact 1 y_fact 1\n2 \"B\" ellipse x_fact 1 y_fact 2\n*Edges\n1 2 0.3500\n");
/// ```
pub fn export_pajek(g: &SimilarityGraph, glyphs: &[NodeGlyph]) -> Result<String> {
    let glyphs = glyphs_for(g, glyphs)?;
    let mut out = String::new();
    writeln!(out, "*Vertices {}", g.nodes().len()).unwrap();
    for (k, (id, glyph)) in g.nodes().iter().zip(&glyphs).enumerate() {
        writeln!(
            out,
            "{} \"{}\" ellipse x_fact {} y_fact {}",
            k + 1,
            id,
            glyph.x_extent,
            glyph.y_extent
        )
        .unwrap();
    }
    out.push_str("*Edges\n");
    for e in g.edges() {
        writeln!(out, "{} {} {:.4}", e.source + 1, e.target + 1, e.weight).unwrap();
    }
    Ok(out)
}

/// Graphviz DOT. Glyph extents become node width/height, cosine weights
/// become pen widths.
pub fn export_dot(g: &SimilarityGraph, glyphs: &[NodeGlyph]) -> Result<String> {
    let glyphs = glyphs_for(g, glyphs)?;
    let mut out = String::new();
    out.push_str("graph similarity {\n");
    writeln!(
        out,
        "  graph [threshold=\"{}\", basis=\"{}\"];",
        g.threshold(),
        g.basis()
    )
    .unwrap();
    out.push_str("  node [shape=ellipse, fixedsize=true];\n");
    for (id, glyph) in g.nodes().iter().zip(&glyphs) {
        writeln!(
            out,
            "  \"{id}\" [width={:.4}, height={:.4}, gross={}, net={}];",
            glyph.x_extent, glyph.y_extent, glyph.gross_cites, glyph.net_of_self
        )
        .unwrap();
    }
    let nodes = g.nodes();
    for (e, stroke) in g.edges().iter().zip(edge_strokes(g)) {
        writeln!(
            out,
            "  \"{}\" -- \"{}\" [cosine={:.4}, penwidth={:.4}];",
            nodes[e.source], nodes[e.target], e.weight, stroke.width
        )
        .unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

/// The JSON document written by [`export_json`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkDocument {
    pub format: String,
    pub threshold: f64,
    pub basis: ProfileBasis,
    pub nodes: Vec<NodeGlyph>,
    pub edges: Vec<JsonEdge>,
    pub report: CentralityReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonEdge {
    pub source: JournalId,
    pub target: JournalId,
    pub weight: f64,
}

pub fn network_document(
    g: &SimilarityGraph,
    glyphs: &[NodeGlyph],
    report: &CentralityReport,
) -> Result<NetworkDocument> {
    let glyphs = glyphs_for(g, glyphs)?;
    check_same_members(g.nodes(), report.nodes.iter().map(|n| &n.journal))?;
    let nodes = g.nodes();
    Ok(NetworkDocument {
        format: JSON_FORMAT.to_owned(),
        threshold: g.threshold(),
        basis: g.basis(),
        nodes: glyphs.into_iter().cloned().collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| JsonEdge {
                source: nodes[e.source].clone(),
                target: nodes[e.target].clone(),
                weight: e.weight,
            })
            .collect(),
        report: report.clone(),
    })
}

/// Pretty-printed [`NetworkDocument`]; floats keep full precision.
pub fn export_json(g: &SimilarityGraph, glyphs: &[NodeGlyph], report: &CentralityReport) -> Result<String> {
    let doc = network_document(g, glyphs, report)?;
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    Ok(text)
}

fn check_same_members<'a>(expected: &[JournalId], found: impl Iterator<Item = &'a JournalId>) -> Result<()> {
    let want: BTreeSet<&JournalId> = expected.iter().collect();
    let got: BTreeSet<&JournalId> = found.collect();
    if want == got {
        return Ok(());
    }
    let missing: Vec<&str> = want.difference(&got).map(|id| id.as_str()).collect();
    let extra: Vec<&str> = got.difference(&want).map(|id| id.as_str()).collect();
    Err(Error::MemberMismatch(format!(
        "missing [{}], unexpected [{}]",
        missing.join(", "),
        extra.join(", ")
    )))
}

/// One line of the centrality table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub journal: JournalId,
    /// Local betweenness as a fraction.
    pub betweenness: f64,
    pub degree_local: usize,
    pub degree_in: usize,
    pub degree_out: usize,
    pub impact_factor: Option<f64>,
}

impl TableRow {
    /// Betweenness in hundredths of a percent, the precision the table shows.
    fn betweenness_key(&self) -> i64 {
        (self.betweenness * 10_000.0).round() as i64
    }
}

/// Rows of the table for `env`, drawn from `report` and `impact_factors`.
/// Journals without an impact factor get an empty cell.
pub fn table_rows(
    env: &SeedEnvironment,
    report: &CentralityReport,
    impact_factors: &BTreeMap<JournalId, f64>,
) -> Result<Vec<TableRow>> {
    check_same_members(env.members(), report.nodes.iter().map(|n| &n.journal))?;
    Ok(report
        .nodes
        .iter()
        .map(|n| TableRow {
            journal: n.journal.clone(),
            betweenness: n.betweenness,
            degree_local: n.degree_local,
            degree_in: n.degree_in,
            degree_out: n.degree_out,
            impact_factor: impact_factors.get(&n.journal).copied(),
        })
        .collect())
}

/// Sorts rows by betweenness (as displayed), then local degree, then
/// global out-degree, all descending, then by journal id.
pub fn sort_rows(rows: &mut [TableRow]) {
    rows.sort_by(|a, b| {
        b.betweenness_key()
            .cmp(&a.betweenness_key())
            .then(b.degree_local.cmp(&a.degree_local))
            .then(b.degree_out.cmp(&a.degree_out))
            .then(a.journal.cmp(&b.journal))
    });
}

/// Aligned table body: journal, betweenness % (2 decimals), local degree,
/// global in-degree, global out-degree, impact factor (2 decimals). Columns
/// are separated by two spaces; the journal column is left-aligned, the
/// rest right-aligned. Rows must already be sorted.
///
/// ```
/// use citenv::export::{render_rows, TableRow};
/// use citenv::ingest::JournalId;
///
/// let row = TableRow {
///     journal: JournalId::new("JEvolEcon").unwrap(),
///     betweenness: 0.1587,
///     degree_local: 26,
///     degree_in: 41,
///     degree_out: 48,
///     impact_factor: Some(0.53),
/// };
/// assert_eq!(render_rows(&[row]), "JEvolEcon  15.87  26  41  48  0.53\n");
/// ```
pub fn render_rows(rows: &[TableRow]) -> String {
    let cells: Vec<[String; 6]> = rows
        .iter()
        .map(|r| {
            [
                r.journal.to_string(),
                format!("{:.2}", r.betweenness * 100.0),
                r.degree_local.to_string(),
                r.degree_in.to_string(),
                r.degree_out.to_string(),
                r.impact_factor.map(|v| format!("{v:.2}")).unwrap_or_default(),
            ]
        })
        .collect();
    let mut widths = [0usize; 6];
    for row in &cells {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in &cells {
        let mut line = format!("{:<width$}", row[0], width = widths[0]);
        for (cell, &width) in row.iter().zip(&widths).skip(1) {
            write!(line, "  {cell:>width$}").unwrap();
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Legend naming each numbered column and the graph it was computed on,
/// followed by the sorted, aligned rows.
pub fn render_table(rows: &[TableRow], local: GraphBasis, global: GraphBasis) -> String {
    let mut sorted = rows.to_vec();
    sort_rows(&mut sorted);
    let mut out = String::new();
    writeln!(out, "# (1) Betweenness Centrality (%) (Local: {local})").unwrap();
    writeln!(out, "# (2) Degree Centrality (#) (Local: {local})").unwrap();
    writeln!(out, "# (3) Degree Centrality (in) (Global: {global})").unwrap();
    writeln!(out, "# (4) Degree Centrality (out) (Global: {global})").unwrap();
    out.push_str("# (5) Impact Factor\n");
    out.push_str("# Journal (1) (2) (3) (4) (5); sorted by (1), then (2), then (4)\n");
    out.push_str(&render_rows(&sorted));
    out
}

/// [`table_rows`] rendered with [`render_table`].
pub fn report_table(
    env: &SeedEnvironment,
    report: &CentralityReport,
    impact_factors: &BTreeMap<JournalId, f64>,
) -> Result<String> {
    let rows = table_rows(env, report, impact_factors)?;
    Ok(render_table(&rows, report.local_basis, report.global_basis))
}
