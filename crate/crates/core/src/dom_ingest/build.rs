use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::game_core::{
    Delta, EdgeRecord, Game, GameGraph, NodeId, NodeIx, NodeKind, Player, PlayerId,
};

use super::forest::{mount_edge_id, tree_edge_id, DomForest};
use super::IngestError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeviceClass {
    Pc,
    Tablet,
    Mobile,
}

impl DeviceClass {
    pub fn default_cost_factor(self) -> f64 {
        match self {
            DeviceClass::Pc => 1.0,
            DeviceClass::Tablet => 1.2,
            DeviceClass::Mobile => 1.5,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DeviceClass::Pc => "pc",
            DeviceClass::Tablet => "tablet",
            DeviceClass::Mobile => "mobile",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Landscape,
    Portrait,
}

/// A device that renders the page and needs some of its components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviceProfile {
    pub id: String,
    pub class: DeviceClass,
    #[serde(default)]
    pub orientation: Orientation,
    /// Defaults to the class factor when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost_factor: Option<f64>,
    /// Forest nodes the device tree enters the page at. Empty means the
    /// top-level elements.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mounts: Vec<NodeId>,
    pub required_components: Vec<NodeId>,
}

impl DeviceProfile {
    pub fn new(id: &str, class: DeviceClass) -> Self {
        DeviceProfile {
            id: id.to_owned(),
            class,
            orientation: Orientation::default(),
            cost_factor: None,
            mounts: Vec::new(),
            required_components: Vec::new(),
        }
    }

    pub fn factor(&self) -> f64 {
        self.cost_factor
            .unwrap_or_else(|| self.class.default_cost_factor())
    }
}

/// Base cost per node kind. An edge costs the base cost of the kind of its
/// child node times the factor of the device owning it; edges owned by
/// several devices use the smallest factor, unowned edges factor 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostModel {
    #[serde(default)]
    pub base_costs: BTreeMap<NodeKind, f64>,
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel {
            base_costs: BTreeMap::from([
                (NodeKind::Element, 1.0),
                (NodeKind::Text, 0.5),
                (NodeKind::Attribute, 0.25),
                (NodeKind::Abstract, 0.0),
                (NodeKind::DocumentRoot, 0.0),
            ]),
        }
    }
}

impl CostModel {
    /// Overrides on top of the defaults.
    pub fn with_overrides(overrides: &BTreeMap<NodeKind, f64>) -> Self {
        let mut model = CostModel::default();
        model
            .base_costs
            .extend(overrides.iter().map(|(&k, &v)| (k, v)));
        model
    }

    pub fn base_cost(&self, kind: NodeKind) -> f64 {
        self.base_costs.get(&kind).copied().unwrap_or(0.0)
    }
}

/// A game assembled from a document and its devices.
#[derive(Debug, Clone)]
pub struct BuiltGame {
    pub game: Game,
    pub delta: Delta,
    /// The document forest with device roots attached.
    pub forest: DomForest,
}

/// Merges every device tree into one DAG and creates one player per
/// (device, required component), numbered from 1 in device order.
///
/// Each device gets an abstract root `device:<id>` under the document root
/// and one entry edge per mount. Device `d` owns its entry edges and every
/// tree edge below its mounts.
pub fn build_game(
    forest: &DomForest,
    devices: &[DeviceProfile],
    cost_model: &CostModel,
    delta: Delta,
) -> Result<BuiltGame, IngestError> {
    if let Some((kind, &c)) = cost_model
        .base_costs
        .iter()
        .find(|(_, &c)| !(c >= 0.0 && c.is_finite()))
    {
        return Err(IngestError::InvalidBaseCost(*kind, c));
    }
    let mut seen = BTreeSet::new();
    for d in devices {
        if !seen.insert(d.id.as_str()) {
            return Err(IngestError::DuplicateDevice(d.id.clone()));
        }
        let f = d.factor();
        if !(f > 0.0 && f.is_finite()) {
            return Err(IngestError::InvalidCostFactor(d.id.clone(), f));
        }
    }

    let mut merged = forest.clone();
    let lookup = |id: &NodeId| {
        forest
            .index_of(id)
            .filter(|&i| {
                !matches!(
                    forest.nodes()[i].kind,
                    NodeKind::Abstract | NodeKind::DocumentRoot
                )
            })
            .ok_or_else(|| IngestError::UnknownNode(id.clone()))
    };

    // Smallest owning factor per tree child index.
    let mut owner_factor: Vec<Option<f64>> = vec![None; forest.nodes().len()];
    let mut device_nodes = Vec::with_capacity(devices.len());
    for d in devices {
        let mounts = if d.mounts.is_empty() {
            forest.nodes()[0].children.clone()
        } else {
            d.mounts.iter().map(lookup).collect::<Result<Vec<_>, _>>()?
        };
        for c in &d.required_components {
            lookup(c)?;
        }
        let mut stack = mounts.clone();
        let mut owned = BTreeSet::new();
        while let Some(n) = stack.pop() {
            if owned.insert(n) {
                stack.extend(forest.nodes()[n].children.iter().copied());
            }
        }
        for &n in &owned {
            if forest.nodes()[n].parent.is_some_and(|p| owned.contains(&p)) {
                let slot = &mut owner_factor[n];
                *slot = Some(slot.map_or(d.factor(), |f: f64| f.min(d.factor())));
            }
        }
        device_nodes.push(merged.attach_device(&d.id, &mounts));
    }

    let mut edges = Vec::with_capacity(merged.edge_count());
    let nodes = merged.nodes();
    for (ix, n) in nodes.iter().enumerate().skip(1) {
        let parent = n.parent.expect("non-root node has a parent");
        let factor = owner_factor.get(ix).copied().flatten().unwrap_or(1.0);
        edges.push(EdgeRecord {
            id: tree_edge_id(&n.id).into(),
            src: nodes[parent].id.clone(),
            dst: n.id.clone(),
            cost: cost_model.base_cost(n.kind) * factor,
        });
    }
    for (d, &dev_ix) in devices.iter().zip(&device_nodes) {
        for &(from, to) in merged.mounts().iter().filter(|(from, _)| *from == dev_ix) {
            edges.push(EdgeRecord {
                id: mount_edge_id(&nodes[from].id, &nodes[to].id).into(),
                src: nodes[from].id.clone(),
                dst: nodes[to].id.clone(),
                cost: cost_model.base_cost(nodes[to].kind) * d.factor(),
            });
        }
    }
    let graph = GameGraph::build(merged.graph_nodes(), edges)?;

    let mut players = Vec::new();
    for (d, &dev_ix) in devices.iter().zip(&device_nodes) {
        let root = NodeIx(dev_ix);
        for c in &d.required_components {
            let leaf = graph
                .node_ix(c)
                .ok_or_else(|| IngestError::UnknownNode(c.clone()))?;
            if !graph.reaches(root, leaf) {
                return Err(IngestError::UnreachableComponent {
                    device: d.id.clone(),
                    node: c.clone(),
                });
            }
            players.push(Player {
                id: PlayerId(players.len() as u32 + 1),
                root,
                leaf,
                label: format!(
                    "{} ({}, {}) -> {}",
                    d.id,
                    d.class.as_str(),
                    match d.orientation {
                        Orientation::Landscape => "landscape",
                        Orientation::Portrait => "portrait",
                    },
                    c
                ),
            });
        }
    }
    let game = Game::new(graph, players)?;
    Ok(BuiltGame {
        game,
        delta,
        forest: merged,
    })
}
