use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::GameError;

/// Name of a node as it appears in instance files and reports.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub String);

/// Name of an edge. Parallel edges between the same pair of nodes are told
/// apart by this id alone.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub String);

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        NodeId(s.to_owned())
    }
}

impl From<&str> for EdgeId {
    fn from(s: &str) -> Self {
        EdgeId(s.to_owned())
    }
}

impl From<String> for NodeId {
    fn from(s: String) -> Self {
        NodeId(s)
    }
}

impl From<String> for EdgeId {
    fn from(s: String) -> Self {
        EdgeId(s)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Dense index of a node inside a [`GameGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeIx(pub usize);

/// Dense index of an edge inside a [`GameGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeIx(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeKind {
    DocumentRoot,
    Element,
    Attribute,
    Text,
    Abstract,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::DocumentRoot => "document-root",
            NodeKind::Element => "element",
            NodeKind::Attribute => "attribute",
            NodeKind::Text => "text",
            NodeKind::Abstract => "abstract",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: NodeId,
    pub kind: NodeKind,
}

impl Node {
    pub fn new(id: impl Into<String>, kind: NodeKind) -> Self {
        Node {
            id: NodeId(id.into()),
            kind,
        }
    }
}

/// Edge as supplied by a caller, endpoints named by id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: EdgeId,
    pub src: NodeId,
    pub dst: NodeId,
    pub cost: f64,
}

impl EdgeRecord {
    pub fn new(id: &str, src: &str, dst: &str, cost: f64) -> Self {
        EdgeRecord {
            id: id.into(),
            src: src.into(),
            dst: dst.into(),
            cost,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub id: EdgeId,
    pub src: NodeIx,
    pub dst: NodeIx,
    pub cost: f64,
}

/// Validated directed acyclic multigraph with non-negative edge costs.
///
/// Outgoing edge lists are kept sorted by edge id, so any depth-first walk
/// over them visits paths in lexicographic order of their edge-id sequences.
#[derive(Debug, Clone)]
pub struct GameGraph {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    node_lookup: HashMap<NodeId, NodeIx>,
    edge_lookup: HashMap<EdgeId, EdgeIx>,
    out_edges: Vec<Vec<EdgeIx>>,
    in_degree: Vec<usize>,
    topo_order: Vec<NodeIx>,
}

impl GameGraph {
    /// Validates the records and builds the graph.
    ///
    /// Rejects duplicate ids, dangling endpoints, negative or non-finite
    /// costs and directed cycles.
    pub fn build(nodes: Vec<Node>, edges: Vec<EdgeRecord>) -> Result<Self, GameError> {
        let mut node_lookup = HashMap::with_capacity(nodes.len());
        for (ix, node) in nodes.iter().enumerate() {
            if node_lookup.insert(node.id.clone(), NodeIx(ix)).is_some() {
                return Err(GameError::DuplicateNodeId(node.id.clone()));
            }
        }

        let mut edge_lookup = HashMap::with_capacity(edges.len());
        let mut built = Vec::with_capacity(edges.len());
        for (ix, rec) in edges.into_iter().enumerate() {
            if edge_lookup.insert(rec.id.clone(), EdgeIx(ix)).is_some() {
                return Err(GameError::DuplicateEdgeId(rec.id));
            }
            if rec.cost.is_nan() || rec.cost < 0.0 {
                return Err(GameError::NegativeCost(rec.id));
            }
            if !rec.cost.is_finite() {
                return Err(GameError::NonFiniteCost(rec.id));
            }
            let (Some(&src), Some(&dst)) = (node_lookup.get(&rec.src), node_lookup.get(&rec.dst))
            else {
                return Err(GameError::DanglingEndpoint(rec.id));
            };
            built.push(Edge {
                id: rec.id,
                src,
                dst,
                cost: rec.cost,
            });
        }

        let mut out_edges = vec![Vec::new(); nodes.len()];
        let mut in_degree = vec![0usize; nodes.len()];
        for (ix, e) in built.iter().enumerate() {
            out_edges[e.src.0].push(EdgeIx(ix));
            in_degree[e.dst.0] += 1;
        }
        for list in &mut out_edges {
            list.sort_by(|a, b| built[a.0].id.cmp(&built[b.0].id));
        }

        let topo_order =
            topological_order(nodes.len(), &built, &out_edges, &in_degree).map_err(|cycle| {
                GameError::CycleDetected(cycle.into_iter().map(|n| nodes[n.0].id.clone()).collect())
            })?;

        Ok(GameGraph {
            nodes,
            edges: built,
            node_lookup,
            edge_lookup,
            out_edges,
            in_degree,
            topo_order,
        })
    }

    pub fn empty() -> Self {
        GameGraph::build(Vec::new(), Vec::new()).expect("empty graph is valid")
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node(&self, ix: NodeIx) -> &Node {
        &self.nodes[ix.0]
    }

    pub fn edge(&self, ix: EdgeIx) -> &Edge {
        &self.edges[ix.0]
    }

    pub fn cost(&self, ix: EdgeIx) -> f64 {
        self.edges[ix.0].cost
    }

    pub fn node_ix(&self, id: &NodeId) -> Option<NodeIx> {
        self.node_lookup.get(id).copied()
    }

    pub fn edge_ix(&self, id: &EdgeId) -> Option<EdgeIx> {
        self.edge_lookup.get(id).copied()
    }

    /// Outgoing edges of `node`, sorted by edge id.
    pub fn out_edges(&self, node: NodeIx) -> &[EdgeIx] {
        &self.out_edges[node.0]
    }

    pub fn in_degree(&self, node: NodeIx) -> usize {
        self.in_degree[node.0]
    }

    /// Nodes in a topological order (every edge points forward).
    pub fn topo_order(&self) -> &[NodeIx] {
        &self.topo_order
    }

    pub fn edge_indices(&self) -> impl Iterator<Item = EdgeIx> {
        (0..self.edges.len()).map(EdgeIx)
    }

    /// Records that rebuild this graph through [`GameGraph::build`].
    pub fn edge_records(&self) -> Vec<EdgeRecord> {
        self.edges
            .iter()
            .map(|e| EdgeRecord {
                id: e.id.clone(),
                src: self.nodes[e.src.0].id.clone(),
                dst: self.nodes[e.dst.0].id.clone(),
                cost: e.cost,
            })
            .collect()
    }

    /// Whether some directed path leads from `from` to `to`.
    pub fn reaches(&self, from: NodeIx, to: NodeIx) -> bool {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![from];
        seen[from.0] = true;
        while let Some(n) = stack.pop() {
            if n == to {
                return true;
            }
            for &e in &self.out_edges[n.0] {
                let d = self.edges[e.0].dst;
                if !seen[d.0] {
                    seen[d.0] = true;
                    stack.push(d);
                }
            }
        }
        false
    }

    /// Checks that `path` is a simple directed walk from `root` to `leaf`.
    pub fn is_path_between(&self, path: &[EdgeIx], root: NodeIx, leaf: NodeIx) -> bool {
        if path.is_empty() {
            return root == leaf;
        }
        let mut visited = vec![false; self.nodes.len()];
        let mut at = root;
        visited[at.0] = true;
        for &e in path {
            let Some(edge) = self.edges.get(e.0) else {
                return false;
            };
            if edge.src != at || visited[edge.dst.0] {
                return false;
            }
            at = edge.dst;
            visited[at.0] = true;
        }
        at == leaf
    }
}

/// Kahn's algorithm. On failure returns one directed cycle.
fn topological_order(
    n: usize,
    edges: &[Edge],
    out_edges: &[Vec<EdgeIx>],
    in_degree: &[usize],
) -> Result<Vec<NodeIx>, Vec<NodeIx>> {
    let mut remaining = in_degree.to_vec();
    let mut ready: Vec<NodeIx> = (0..n)
        .rev()
        .filter(|&i| remaining[i] == 0)
        .map(NodeIx)
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = ready.pop() {
        order.push(u);
        for &e in &out_edges[u.0] {
            let v = edges[e.0].dst;
            remaining[v.0] -= 1;
            if remaining[v.0] == 0 {
                ready.push(v);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }

    // Every leftover node has a leftover predecessor; walk backwards until a
    // node repeats.
    let mut pred = vec![None; n];
    for e in edges {
        if remaining[e.src.0] > 0 && remaining[e.dst.0] > 0 {
            pred[e.dst.0] = Some(e.src);
        }
    }
    let start = (0..n).find(|&i| remaining[i] > 0).expect("leftover node");
    let mut seen_at = vec![usize::MAX; n];
    let mut walk = Vec::new();
    let mut at = NodeIx(start);
    while seen_at[at.0] == usize::MAX {
        seen_at[at.0] = walk.len();
        walk.push(at);
        at = pred[at.0].expect("leftover node has a leftover predecessor");
    }
    let mut cycle: Vec<NodeIx> = walk[seen_at[at.0]..].to_vec();
    cycle.reverse();
    Err(cycle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d1() -> GameGraph {
        GameGraph::build(
            vec![
                Node::new("r", NodeKind::Element),
                Node::new("l", NodeKind::Element),
            ],
            vec![
                EdgeRecord::new("a", "r", "l", 1.0),
                EdgeRecord::new("b", "r", "l", 3.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn empty_graph_is_valid() {
        let g = GameGraph::build(vec![], vec![]).unwrap();
        assert_eq!(g.node_count(), 0);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parallel_edges_are_kept() {
        let g = d1();
        assert_eq!(g.edge_count(), 2);
        let r = g.node_ix(&"r".into()).unwrap();
        assert_eq!(g.out_edges(r).len(), 2);
    }

    #[test]
    fn negative_cost_rejected() {
        let err = GameGraph::build(
            vec![
                Node::new("r", NodeKind::Element),
                Node::new("l", NodeKind::Element),
            ],
            vec![EdgeRecord::new("a", "r", "l", -1.0)],
        )
        .unwrap_err();
        assert_eq!(err, GameError::NegativeCost("a".into()));
    }

    #[test]
    fn nan_cost_rejected() {
        let err = GameGraph::build(
            vec![
                Node::new("r", NodeKind::Element),
                Node::new("l", NodeKind::Element),
            ],
            vec![EdgeRecord::new("a", "r", "l", f64::NAN)],
        )
        .unwrap_err();
        assert_eq!(err, GameError::NegativeCost("a".into()));
    }

    #[test]
    fn dangling_and_duplicate_rejected() {
        let nodes = vec![
            Node::new("r", NodeKind::Element),
            Node::new("l", NodeKind::Element),
        ];
        let err =
            GameGraph::build(nodes.clone(), vec![EdgeRecord::new("a", "r", "x", 1.0)]).unwrap_err();
        assert_eq!(err, GameError::DanglingEndpoint("a".into()));

        let err = GameGraph::build(
            nodes.clone(),
            vec![
                EdgeRecord::new("a", "r", "l", 1.0),
                EdgeRecord::new("a", "r", "l", 2.0),
            ],
        )
        .unwrap_err();
        assert_eq!(err, GameError::DuplicateEdgeId("a".into()));

        let mut dup = nodes;
        dup.push(Node::new("r", NodeKind::Text));
        assert_eq!(
            GameGraph::build(dup, vec![]).unwrap_err(),
            GameError::DuplicateNodeId("r".into())
        );
    }

    #[test]
    fn cycle_reported_with_its_nodes() {
        let err = GameGraph::build(
            vec![
                Node::new("s", NodeKind::Element),
                Node::new("x", NodeKind::Element),
                Node::new("y", NodeKind::Element),
                Node::new("z", NodeKind::Element),
            ],
            vec![
                EdgeRecord::new("e0", "s", "x", 1.0),
                EdgeRecord::new("e1", "x", "y", 1.0),
                EdgeRecord::new("e2", "y", "z", 1.0),
                EdgeRecord::new("e3", "z", "x", 1.0),
            ],
        )
        .unwrap_err();
        let GameError::CycleDetected(mut cycle) = err else {
            panic!("expected a cycle, got {err:?}");
        };
        cycle.sort();
        assert_eq!(cycle, vec!["x".into(), "y".into(), "z".into()]);
    }

    #[test]
    fn self_loop_is_a_cycle() {
        let err = GameGraph::build(
            vec![Node::new("x", NodeKind::Element)],
            vec![EdgeRecord::new("e", "x", "x", 0.0)],
        )
        .unwrap_err();
        assert_eq!(err, GameError::CycleDetected(vec!["x".into()]));
    }

    #[test]
    fn path_check() {
        let g = d1();
        let r = g.node_ix(&"r".into()).unwrap();
        let l = g.node_ix(&"l".into()).unwrap();
        let a = g.edge_ix(&"a".into()).unwrap();
        assert!(g.is_path_between(&[a], r, l));
        assert!(!g.is_path_between(&[a, a], r, l));
        assert!(!g.is_path_between(&[], r, l));
        assert!(g.reaches(r, l));
        assert!(!g.reaches(l, r));
    }
}
