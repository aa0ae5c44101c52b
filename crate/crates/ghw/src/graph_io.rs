use std::io::Write;

use ghw_core::bits::bit_indices;
use ghw_core::GhwGraph;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    /// Coordinates (1-based) of the functional whose kernel is the index-2
    /// subgroup of the holonomy.
    pub functional: Vec<usize>,
    /// Dropped coordinate, 1-based.
    pub coordinate: usize,
    pub normal: bool,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeRecord {
    pub from: String,
    pub to: String,
    pub witness: WitnessRecord,
}

/// Edges from the larger group to its subgroup of one lower dimension.
pub fn edge_list(graph: &GhwGraph) -> Vec<EdgeRecord> {
    graph
        .edges
        .iter()
        .map(|e| EdgeRecord {
            from: graph.vertices[e.upper].key.to_hex(),
            to: graph.vertices[e.lower].key.to_hex(),
            witness: WitnessRecord {
                functional: bit_indices(e.witness.functional).map(|i| i + 1).collect(),
                coordinate: e.witness.coordinate + 1,
                normal: e.normal,
                count: e.witness_count,
            },
        })
        .collect()
}

pub fn write_dot(graph: &GhwGraph, mut out: impl Write) -> std::io::Result<()> {
    out.write_all(graph.to_dot().as_bytes())
}
