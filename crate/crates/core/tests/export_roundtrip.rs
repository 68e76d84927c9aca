mod common;

use std::collections::BTreeMap;

use citenv::environment::Direction;
use citenv::export::{export_dot, export_json, export_pajek, NetworkDocument, NodeGlyph};
use citenv::ingest::JournalId;
use citenv::pipeline::{analyze, Analysis, PipelineOptions};
use common::{id, matrix_from_cells, read_pajek};
use proptest::prelude::*;
use serde_json::Value;

fn dense_analysis() -> Analysis {
    let cells: Vec<(usize, usize, u64)> = (0..30)
        .flat_map(|i| (0..30).map(move |j| (i, j, ((i * 31 + j * 17 + i * j) % 23) as u64)))
        .filter(|&(_, _, c)| c > 3)
        .collect();
    let m = matrix_from_cells(2005, &cells);
    let mut options = PipelineOptions::new(id("J000"));
    options.cosine_threshold = 0.75;
    analyze(&m, &options).unwrap()
}

#[test]
fn pajek_round_trip_is_exact() {
    let a = dense_analysis();
    assert!(a.graph.edges().len() > 10);
    assert!(a.report.nodes.iter().any(|n| n.betweenness > 0.0));
    let text = export_pajek(&a.graph, &a.glyphs).unwrap();
    let net = read_pajek(&text);

    let labels: Vec<&str> = net.vertices.iter().map(|v| v.0.as_str()).collect();
    let expected: Vec<&str> = a.graph.nodes().iter().map(JournalId::as_str).collect();
    assert_eq!(labels, expected);
    for ((_, x, y), glyph) in net.vertices.iter().zip(&a.glyphs) {
        assert_eq!(x.to_bits(), glyph.x_extent.to_bits());
        assert_eq!(y.to_bits(), glyph.y_extent.to_bits());
    }
    assert_eq!(net.edges.len(), a.graph.edges().len());
    for (&(i, j, w), e) in net.edges.iter().zip(a.graph.edges()) {
        assert_eq!((i, j), (e.source + 1, e.target + 1));
        // four decimals on the wire
        assert_eq!(w, (e.weight * 1e4).round() / 1e4);
    }
}

#[test]
fn json_round_trip_preserves_full_precision() {
    let a = dense_analysis();
    let text = export_json(&a.graph, &a.glyphs, &a.report).unwrap();

    let doc: NetworkDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.report, a.report);
    assert_eq!(doc.nodes, a.glyphs);

    // read again without the library types
    let raw: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(raw["format"], "citenv-network/1");
    let edges = raw["edges"].as_array().unwrap();
    assert_eq!(edges.len(), a.graph.edges().len());
    for (edge, e) in edges.iter().zip(a.graph.edges()) {
        assert_eq!(edge["source"], a.graph.nodes()[e.source].as_str());
        assert_eq!(edge["target"], a.graph.nodes()[e.target].as_str());
        assert_eq!(edge["weight"].as_f64().unwrap().to_bits(), e.weight.to_bits());
    }
    for (node, glyph) in raw["nodes"].as_array().unwrap().iter().zip(&a.glyphs) {
        assert_eq!(node["journal"], glyph.journal.as_str());
        assert_eq!(node["y_extent"].as_f64().unwrap().to_bits(), glyph.y_extent.to_bits());
        assert_eq!(node["x_extent"].as_f64().unwrap().to_bits(), glyph.x_extent.to_bits());
    }
    for (node, n) in raw["report"]["nodes"].as_array().unwrap().iter().zip(&a.report.nodes) {
        assert_eq!(node["betweenness"].as_f64().unwrap().to_bits(), n.betweenness.to_bits());
        assert_eq!(node["eigenvector"].as_f64().unwrap().to_bits(), n.eigenvector.to_bits());
        assert_eq!(node["closeness"].as_f64().unwrap().to_bits(), n.closeness.to_bits());
    }
}

#[test]
fn pajek_and_json_carry_the_same_edges() {
    let a = dense_analysis();
    let net = read_pajek(&export_pajek(&a.graph, &a.glyphs).unwrap());
    let raw: Value = serde_json::from_str(&export_json(&a.graph, &a.glyphs, &a.report).unwrap()).unwrap();
    let mut from_pajek: Vec<(String, String, String)> = net
        .edges
        .iter()
        .map(|&(i, j, w)| {
            (
                net.vertices[i - 1].0.clone(),
                net.vertices[j - 1].0.clone(),
                format!("{w:.4}"),
            )
        })
        .collect();
    let mut from_json: Vec<(String, String, String)> = raw["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e["source"].as_str().unwrap().to_owned(),
                e["target"].as_str().unwrap().to_owned(),
                format!("{:.4}", e["weight"].as_f64().unwrap()),
            )
        })
        .collect();
    from_pajek.sort();
    from_json.sort();
    assert_eq!(from_pajek, from_json);
}

#[test]
fn exports_are_byte_identical_across_runs() {
    let (a, b) = (dense_analysis(), dense_analysis());
    assert_eq!(
        export_pajek(&a.graph, &a.glyphs).unwrap(),
        export_pajek(&b.graph, &b.glyphs).unwrap()
    );
    assert_eq!(
        export_dot(&a.graph, &a.glyphs).unwrap(),
        export_dot(&b.graph, &b.glyphs).unwrap()
    );
    assert_eq!(
        export_json(&a.graph, &a.glyphs, &a.report).unwrap(),
        export_json(&b.graph, &b.glyphs, &b.report).unwrap()
    );
}

#[test]
fn citing_direction_pipeline_runs() {
    let a = {
        let cells: Vec<(usize, usize, u64)> = (0..12)
            .flat_map(|i| (0..12).map(move |j| (i, j, ((i + 2 * j) % 5) as u64)))
            .collect();
        let m = matrix_from_cells(2005, &cells);
        let mut options = PipelineOptions::new(id("J001"));
        options.direction = Direction::Citing;
        options.cosine_threshold = 0.1;
        analyze(&m, &options).unwrap()
    };
    assert_eq!(a.environment.direction(), Direction::Citing);
    assert_eq!(a.report.nodes.len(), a.environment.members().len());
    let names: BTreeMap<&str, usize> = a
        .report
        .nodes
        .iter()
        .map(|n| (n.journal.as_str(), n.degree_out))
        .collect();
    assert_eq!(names.len(), a.environment.members().len());
}

proptest! {
    #[test]
    fn glyph_extents_are_monotone(gross in 0u64..1_000_000, net_frac in 0.0f64..=1.0, more in 1u64..1000) {
        let net = (gross as f64 * net_frac) as u64;
        let g = NodeGlyph::new(id("A"), gross, net);
        prop_assert!(g.x_extent <= g.y_extent);
        prop_assert!(g.x_extent >= 0.0);
        prop_assert_eq!(g.x_extent == g.y_extent, net == gross);
        let bigger = NodeGlyph::new(id("A"), gross + more, net);
        prop_assert!(bigger.y_extent > g.y_extent);
    }
}
