use std::collections::BTreeSet;

use super::graph::{GameGraph, NodeIx};
use super::GameError;

/// Longest-path depth of every node, measured from the in-degree-0 nodes.
pub fn depths(graph: &GameGraph) -> Vec<usize> {
    let mut depth = vec![0usize; graph.node_count()];
    for &u in graph.topo_order() {
        for &e in graph.out_edges(u) {
            let v = graph.edge(e).dst;
            depth[v.0] = depth[v.0].max(depth[u.0] + 1);
        }
    }
    depth
}

/// Nodes sitting at the graph's maximum depth (the boundary level).
pub fn boundary_vertices(graph: &GameGraph) -> Result<BTreeSet<NodeIx>, GameError> {
    if graph.node_count() == 0 {
        return Err(GameError::EmptyGraph);
    }
    let depth = depths(graph);
    let max = depth.iter().copied().max().unwrap_or(0);
    Ok(depth
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d == max)
        .map(|(i, _)| NodeIx(i))
        .collect())
}
