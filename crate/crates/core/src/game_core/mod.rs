//! Graph representation and the cost/potential functions of the game.
//!
//! Players pick one root-to-leaf path each in a directed acyclic multigraph.
//! An edge used by `x` players costs each of them `c / x`; every player also
//! pays `delta` times the page cost (the cost of the union of all paths).

mod cost;
mod graph;
mod levels;
mod profile;

use thiserror::Error;

pub use cost::{
    load_map, load_map_excluding, page_cost, player_cost, potential, shapley_share, CostReport,
    LoadMap,
};
pub use graph::{Edge, EdgeId, EdgeIx, EdgeRecord, GameGraph, Node, NodeId, NodeIx, NodeKind};
pub use levels::{boundary_vertices, depths};
pub use profile::{Delta, Game, Path, Player, PlayerId, StrategyProfile};

/// Absolute tolerance for every floating-point comparison in the crate.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    #[error("edge {0} has a negative cost")]
    NegativeCost(EdgeId),
    #[error("edge {0} has a non-finite cost")]
    NonFiniteCost(EdgeId),
    #[error("directed cycle through {0:?}")]
    CycleDetected(Vec<NodeId>),
    #[error("edge {0} references an unknown node")]
    DanglingEndpoint(EdgeId),
    #[error("duplicate edge id {0}")]
    DuplicateEdgeId(EdgeId),
    #[error("duplicate node id {0}")]
    DuplicateNodeId(NodeId),
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown node id {0}")]
    UnknownNode(NodeId),
    #[error("player {0} references a node outside the graph")]
    UnknownNodeIndex(PlayerId),
    #[error("unknown player {0}")]
    UnknownPlayer(PlayerId),
    #[error("duplicate player {0}")]
    DuplicatePlayer(PlayerId),
    #[error("player {0} has root equal to leaf")]
    RootEqualsLeaf(PlayerId),
    #[error("no path from root to leaf for player {0}")]
    NoPath(PlayerId),
    #[error("profile has no path for player {0}")]
    MissingPath(PlayerId),
    #[error("path of player {0} is not a simple root-to-leaf path")]
    InvalidPath(PlayerId),
    #[error("delta must be a finite number >= 0, got {0}")]
    InvalidDelta(f64),
    #[error("shapley share with zero load")]
    ZeroLoad,
    #[error("graph has no nodes")]
    EmptyGraph,
}
