//! Deterministic Graphviz export. Vertices and edges are emitted in
//! ascending id order so outputs are diffable; positive edges are solid,
//! negative edges dashed.

use std::fmt::Write;

use crate::classify::Analysis;
use crate::diagram::{Color, Sign};
use crate::error::{Error, Result};
use crate::graphs::{HeightSubgraph, LabeledSeifertGraph, SpatialGraph};

/// Which derived graph to export.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Spatial,
    Seifert,
    LabeledSeifert,
    HeightSubgraph(usize),
}

impl std::str::FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<GraphKind> {
        match s {
            "spatial" => Ok(GraphKind::Spatial),
            "seifert" => Ok(GraphKind::Seifert),
            "labeled-seifert" => Ok(GraphKind::LabeledSeifert),
            _ => {
                if let Some(rest) = s.strip_prefix('g') {
                    if let Ok(i) = rest.parse::<usize>() {
                        return Ok(GraphKind::HeightSubgraph(i));
                    }
                }
                Err(Error::Input(format!(
                    "unknown graph kind {s:?}; use spatial, seifert, labeled-seifert, or g<i>"
                )))
            }
        }
    }
}

fn sign_style(sign: Sign) -> &'static str {
    match sign {
        Sign::Positive => "solid",
        Sign::Negative => "dashed",
    }
}

/// The checkerboard digraph: filled black/white region vertices, one signed
/// arc per crossing.
pub fn spatial_dot(phi: &SpatialGraph) -> String {
    let mut out = String::from("digraph spatial {\n");
    for v in &phi.vertices {
        let (fill, font) = match v.color {
            Color::White => ("white", "black"),
            Color::Black => ("black", "white"),
        };
        writeln!(
            out,
            "  r{} [label=\"r{}\" style=filled fillcolor={} fontcolor={}];",
            v.region, v.region, fill, font
        )
        .unwrap();
    }
    for e in &phi.edges {
        writeln!(
            out,
            "  r{} -> r{} [label=\"x{}\" style={}];",
            e.from,
            e.to,
            e.crossing,
            sign_style(e.sign)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// The Seifert graph; with `labeled` the vertices carry their heights.
pub fn seifert_dot(graph: &LabeledSeifertGraph, labeled: bool) -> String {
    let mut out = String::from("graph seifert {\n");
    for v in 0..graph.vertex_count() {
        if labeled {
            writeln!(out, "  c{} [label=\"{}\"];", v, graph.heights[v]).unwrap();
        } else {
            writeln!(out, "  c{v} [label=\"c{v}\"];").unwrap();
        }
    }
    for e in &graph.edges {
        writeln!(
            out,
            "  c{} -- c{} [label=\"x{}\" style={}];",
            e.a,
            e.b,
            e.crossing,
            sign_style(e.sign)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// One height subgraph of the labeled Seifert graph.
pub fn height_subgraph_dot(graph: &LabeledSeifertGraph, sub: &HeightSubgraph) -> String {
    let mut out = format!("graph g{} {{\n", sub.index);
    for &v in &sub.vertices {
        writeln!(out, "  c{} [label=\"{}\"];", v, graph.heights[v]).unwrap();
    }
    for &ei in &sub.edges {
        let e = &graph.edges[ei];
        writeln!(
            out,
            "  c{} -- c{} [label=\"x{}\" style={}];",
            e.a,
            e.b,
            e.crossing,
            sign_style(e.sign)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Export one of the derived graphs of an analysis.
pub fn export(analysis: &Analysis, kind: GraphKind) -> Result<String> {
    match kind {
        GraphKind::Spatial => Ok(spatial_dot(&analysis.spatial)),
        GraphKind::Seifert => Ok(seifert_dot(&analysis.labeled, false)),
        GraphKind::LabeledSeifert => Ok(seifert_dot(&analysis.labeled, true)),
        GraphKind::HeightSubgraph(i) => {
            let sub = analysis.subgraphs.iter().find(|s| s.index == i).ok_or_else(|| {
                Error::Input(format!(
                    "subgraph g{i} out of range; maximum height is {}",
                    analysis.labeled.max_height()
                ))
            })?;
            Ok(height_subgraph_dot(&analysis.labeled, sub))
        }
    }
}
