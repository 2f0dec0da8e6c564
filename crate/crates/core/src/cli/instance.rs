//! Instance file schema (JSON, `format_version` 1).
//!
//! Either the explicit form (`nodes`, `edges`, `players`) or the document
//! form (`devices`, optional `cost_model`, document text embedded as
//! `document` or supplied separately) must be present, never both.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dom_ingest::{build_game, parse_document, CostModel, DeviceProfile, DomForest};
use crate::game_core::{
    Delta, EdgeRecord, Game, GameGraph, Node, NodeId, NodeKind, Player, PlayerId,
};

use super::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nodes: Vec<NodeRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub players: Vec<PlayerRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub devices: Vec<DeviceProfile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost_model: Option<CostModelRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub document: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeRecord {
    pub id: NodeId,
    #[serde(default = "default_kind")]
    pub kind: NodeKind,
}

fn default_kind() -> NodeKind {
    NodeKind::Element
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlayerRecord {
    pub id: u32,
    pub root: NodeId,
    pub leaf: NodeId,
    #[serde(default)]
    pub label: String,
}

/// Base-cost overrides; kinds left out keep their defaults.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostModelRecord {
    #[serde(default)]
    pub base_costs: BTreeMap<NodeKind, f64>,
}

/// A validated instance ready for the engine.
#[derive(Debug, Clone)]
pub struct LoadedInstance {
    pub game: Game,
    pub delta: Delta,
    /// Present for the document form.
    pub forest: Option<DomForest>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: InstanceFile =
            serde_json::from_str(text).map_err(|e| CliError::Malformed(e.to_string()))?;
        if file.format_version != FORMAT_VERSION {
            return Err(CliError::Malformed(format!(
                "unsupported format_version {}",
                file.format_version
            )));
        }
        Ok(file)
    }

    fn is_explicit(&self) -> bool {
        !self.nodes.is_empty() || !self.edges.is_empty() || !self.players.is_empty()
    }

    fn is_document(&self) -> bool {
        !self.devices.is_empty() || self.cost_model.is_some() || self.document.is_some()
    }

    /// Validates and builds the game. `document` replaces any embedded
    /// document text; `delta` replaces the file's delta.
    pub fn load(
        &self,
        document: Option<&str>,
        delta: Option<f64>,
    ) -> Result<LoadedInstance, CliError> {
        let explicit = self.is_explicit();
        let doc_form = self.is_document() || document.is_some();
        if explicit && doc_form {
            return Err(CliError::Malformed(
                "instance mixes explicit nodes/edges/players with the document form".into(),
            ));
        }
        let delta = Delta::new(delta.or(self.delta).unwrap_or(0.0))
            .map_err(|e| CliError::Validation(e.to_string()))?;

        if doc_form {
            let text = document
                .or(self.document.as_deref())
                .ok_or_else(|| CliError::Malformed("document form without document text".into()))?;
            let forest = parse_document(text).map_err(|e| CliError::Malformed(e.to_string()))?;
            let cost_model = self
                .cost_model
                .as_ref()
                .map(|c| CostModel::with_overrides(&c.base_costs))
                .unwrap_or_default();
            let built = build_game(&forest, &self.devices, &cost_model, delta)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            return Ok(LoadedInstance {
                game: built.game,
                delta,
                forest: Some(built.forest),
            });
        }

        let nodes = self
            .nodes
            .iter()
            .map(|n| Node {
                id: n.id.clone(),
                kind: n.kind,
            })
            .collect();
        let graph = GameGraph::build(nodes, self.edges.clone())
            .map_err(|e| CliError::Validation(e.to_string()))?;
        let players = self
            .players
            .iter()
            .map(|p| {
                let find = |id: &NodeId| {
                    graph.node_ix(id).ok_or_else(|| {
                        CliError::Validation(format!("player {}: unknown node {id}", p.id))
                    })
                };
                Ok(Player {
                    id: PlayerId(p.id),
                    root: find(&p.root)?,
                    leaf: find(&p.leaf)?,
                    label: p.label.clone(),
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let game = Game::new(graph, players).map_err(|e| CliError::Validation(e.to_string()))?;
        Ok(LoadedInstance {
            game,
            delta,
            forest: None,
        })
    }

    /// Explicit-form file describing `game`.
    pub fn from_game(game: &Game, delta: Delta) -> Self {
        let graph = game.graph();
        InstanceFile {
            format_version: FORMAT_VERSION,
            delta: Some(delta.get()),
            nodes: graph
                .nodes()
                .iter()
                .map(|n| NodeRecord {
                    id: n.id.clone(),
                    kind: n.kind,
                })
                .collect(),
            edges: graph.edge_records(),
            players: game
                .players()
                .iter()
                .map(|p| PlayerRecord {
                    id: p.id.0,
                    root: graph.node(p.root).id.clone(),
                    leaf: graph.node(p.leaf).id.clone(),
                    label: p.label.clone(),
                })
                .collect(),
            devices: Vec::new(),
            cost_model: None,
            document: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes") + "\n"
    }
}
