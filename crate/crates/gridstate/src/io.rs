//! Graph file format (JSON: dims + edge list) and report serialization.

use crate::classify::ClassificationReport;
use crate::graph::{GraphError, GridGraph};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::fmt;

#[derive(Debug)]
pub enum IoError {
    Malformed(String),
    Invalid(GraphError),
}

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IoError::Malformed(m) => write!(f, "malformed graph file: {}", m),
            IoError::Invalid(e) => write!(f, "invalid graph: {}", e),
        }
    }
}

impl std::error::Error for IoError {}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    dims: Vec<usize>,
    edges: Vec<(Vec<usize>, Vec<usize>)>,
}

pub fn parse_graph(bytes: &[u8]) -> Result<GridGraph, IoError> {
    let doc: GraphDoc = serde_json::from_slice(bytes)
        .map_err(|e| IoError::Malformed(format!("{} (line {}, column {})", e, e.line(), e.column())))?;
    GridGraph::new(doc.dims, doc.edges).map_err(IoError::Invalid)
}

pub fn serialize_graph(g: &GridGraph) -> String {
    let doc = GraphDoc {
        dims: g.dims().to_vec(),
        edges: g
            .edges()
            .map(|e| {
                let (a, b) = e.ends();
                (a.clone(), b.clone())
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("graph serialization cannot fail")
}

pub fn report_to_json(r: &ClassificationReport) -> serde_json::Value {
    let cuts: Vec<_> = r
        .cuts
        .iter()
        .map(|c| {
            json!({
                "cut": c.ppt.cut.label(),
                "ppt": c.ppt.ppt,
                "witness_vertex": c.ppt.witness_vertex,
                "separable_2xq": c.separable_2xq,
                "axis_aligned": c.axis_aligned,
            })
        })
        .collect();
    let ccnr: serde_json::Map<String, serde_json::Value> = r
        .cuts
        .iter()
        .map(|c| (c.ppt.cut.label(), json!(c.ccnr_value)))
        .collect();
    let range: Vec<_> = r
        .cuts
        .iter()
        .map(|c| {
            json!({
                "cut": c.range.cut.label(),
                "root_rank": c.range.root_rank,
                "span_bound": c.range.span_bound,
                "entangled": c.range.entangled,
                "no_product_vectors": c.range.no_product_vectors,
            })
        })
        .collect();
    json!({
        "label": r.label.as_str(),
        "cuts": cuts,
        "ccnr": ccnr,
        "range": range,
        "gme": r.gme,
        "certificates": r.certificates,
    })
}
