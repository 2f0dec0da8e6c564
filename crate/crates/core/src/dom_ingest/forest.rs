use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::game_core::{depths, EdgeRecord, GameGraph, Node, NodeId, NodeKind};

use super::CostModel;

pub const DOCUMENT_ROOT: &str = "#document";

#[derive(Debug, Clone, PartialEq)]
pub struct DomNode {
    pub id: NodeId,
    pub kind: NodeKind,
    /// Tag name, attribute name, `#text`, `#document` or `device:<id>`.
    pub name: String,
    /// Attribute value or text content.
    pub value: Option<String>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// Parsed node tree plus, once devices are attached, one abstract tree root
/// per device hanging off the document root.
///
/// Node ids are slash-separated tag paths (`html/body/a`), with `[n]` for the
/// n-th sibling of the same name, `@name` for attributes and `#text` for
/// text. Attributes are children of their element, one level below it.
#[derive(Debug, Clone, PartialEq)]
pub struct DomForest {
    nodes: Vec<DomNode>,
    device_roots: BTreeMap<String, NodeId>,
    /// (device root, forest node) entry links of attached devices.
    mounts: Vec<(usize, usize)>,
}

impl Default for DomForest {
    fn default() -> Self {
        Self::new()
    }
}

impl DomForest {
    pub fn new() -> Self {
        DomForest {
            nodes: vec![DomNode {
                id: NodeId(DOCUMENT_ROOT.to_owned()),
                kind: NodeKind::DocumentRoot,
                name: DOCUMENT_ROOT.to_owned(),
                value: None,
                parent: None,
                children: Vec::new(),
            }],
            device_roots: BTreeMap::new(),
            mounts: Vec::new(),
        }
    }

    pub fn document_root(&self) -> &NodeId {
        &self.nodes[0].id
    }

    pub(crate) fn document_root_index(&self) -> usize {
        0
    }

    pub fn nodes(&self) -> &[DomNode] {
        &self.nodes
    }

    pub fn device_roots(&self) -> &BTreeMap<String, NodeId> {
        &self.device_roots
    }

    pub fn index_of(&self, id: &NodeId) -> Option<usize> {
        self.nodes.iter().position(|n| &n.id == id)
    }

    /// Parent-child edges plus device mount links.
    pub fn edge_count(&self) -> usize {
        self.nodes.len() - 1 + self.mounts.len()
    }

    pub(crate) fn mounts(&self) -> &[(usize, usize)] {
        &self.mounts
    }

    fn push(
        &mut self,
        parent: usize,
        kind: NodeKind,
        name: &str,
        value: Option<&str>,
        id: String,
    ) -> usize {
        let ix = self.nodes.len();
        self.nodes.push(DomNode {
            id: NodeId(id),
            kind,
            name: name.to_owned(),
            value: value.map(str::to_owned),
            parent: Some(parent),
            children: Vec::new(),
        });
        self.nodes[parent].children.push(ix);
        ix
    }

    fn child_id(&self, parent: usize, name: &str, sep: &str) -> String {
        let same = self.nodes[parent]
            .children
            .iter()
            .filter(|&&c| self.nodes[c].name == name && self.nodes[c].kind != NodeKind::Attribute)
            .count();
        let base = if parent == 0 {
            name.to_owned()
        } else {
            format!("{}{sep}{name}", self.nodes[parent].id)
        };
        if same == 0 {
            base
        } else {
            format!("{base}[{}]", same + 1)
        }
    }

    pub(crate) fn add_element(&mut self, parent: usize, tag: &str) -> usize {
        let id = self.child_id(parent, tag, "/");
        self.push(parent, NodeKind::Element, tag, None, id)
    }

    pub(crate) fn add_attribute(&mut self, element: usize, name: &str, value: &str) -> usize {
        let id = format!("{}@{name}", self.nodes[element].id);
        self.push(element, NodeKind::Attribute, name, Some(value), id)
    }

    pub(crate) fn add_text(&mut self, parent: usize, content: &str) -> usize {
        let id = self.child_id(parent, "#text", "/");
        self.push(parent, NodeKind::Text, "#text", Some(content), id)
    }

    /// Adds an abstract `device:<id>` node under the document root with entry
    /// links to `mounts`.
    pub(crate) fn attach_device(&mut self, device: &str, mounts: &[usize]) -> usize {
        let name = format!("device:{device}");
        let ix = self.push(0, NodeKind::Abstract, &name, None, name.clone());
        self.device_roots.insert(device.to_owned(), NodeId(name));
        self.mounts.extend(mounts.iter().map(|&m| (ix, m)));
        ix
    }

    /// Markup that parses back into an identical forest (devices excluded).
    pub fn to_markup(&self) -> String {
        let mut out = String::new();
        for &c in &self.nodes[0].children {
            self.write_markup(c, 0, &mut out);
        }
        out
    }

    fn write_markup(&self, ix: usize, indent: usize, out: &mut String) {
        let node = &self.nodes[ix];
        let pad = "  ".repeat(indent);
        match node.kind {
            NodeKind::Element => {
                let attr = node
                    .children
                    .iter()
                    .map(|&c| &self.nodes[c])
                    .find(|c| c.kind == NodeKind::Attribute);
                match attr {
                    Some(a) => {
                        let v = a.value.as_deref().unwrap_or("");
                        let q = if v.contains('"') { '\'' } else { '"' };
                        let _ = writeln!(out, "{pad}<{} {}={q}{v}{q}>", node.name, a.name);
                    }
                    None => {
                        let _ = writeln!(out, "{pad}<{}>", node.name);
                    }
                }
                for &c in &node.children {
                    self.write_markup(c, indent + 1, out);
                }
                let _ = writeln!(out, "{pad}</{}>", node.name);
            }
            NodeKind::Text => {
                let _ = writeln!(out, "{pad}{}", node.value.as_deref().unwrap_or(""));
            }
            _ => {}
        }
    }

    /// Node records in forest order.
    pub fn graph_nodes(&self) -> Vec<Node> {
        self.nodes
            .iter()
            .map(|n| Node {
                id: n.id.clone(),
                kind: n.kind,
            })
            .collect()
    }

    /// The forest as a game graph, every edge priced at the base cost of
    /// its child's kind.
    pub fn to_graph(&self, cost_model: &CostModel) -> GameGraph {
        let mut edges = Vec::with_capacity(self.edge_count());
        for (ix, n) in self.nodes.iter().enumerate().skip(1) {
            let parent = n.parent.expect("non-root node has a parent");
            edges.push(EdgeRecord {
                id: tree_edge_id(&n.id).into(),
                src: self.nodes[parent].id.clone(),
                dst: n.id.clone(),
                cost: cost_model.base_cost(self.nodes[ix].kind),
            });
        }
        for &(from, to) in &self.mounts {
            edges.push(EdgeRecord {
                id: mount_edge_id(&self.nodes[from].id, &self.nodes[to].id).into(),
                src: self.nodes[from].id.clone(),
                dst: self.nodes[to].id.clone(),
                cost: cost_model.base_cost(self.nodes[to].kind),
            });
        }
        GameGraph::build(self.graph_nodes(), edges).expect("forest is a valid DAG")
    }
}

pub(crate) fn tree_edge_id(child: &NodeId) -> String {
    format!("e:{child}")
}

pub(crate) fn mount_edge_id(device_root: &NodeId, target: &NodeId) -> String {
    format!("m:{device_root}->{target}")
}

/// Longest-path depth of every forest node from the document root.
pub fn classify_levels(forest: &DomForest) -> BTreeMap<NodeId, usize> {
    let graph = forest.to_graph(&CostModel::default());
    let depth = depths(&graph);
    graph
        .nodes()
        .iter()
        .zip(depth)
        .map(|(n, d)| (n.id.clone(), d))
        .collect()
}
