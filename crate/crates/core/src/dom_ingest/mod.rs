//! Markup parsing into a DOM forest and game construction from devices.

mod build;
mod forest;
mod parser;

use thiserror::Error;

use crate::game_core::{GameError, NodeId, NodeKind};

pub use build::{build_game, BuiltGame, CostModel, DeviceClass, DeviceProfile, Orientation};
pub use forest::{classify_levels, DomForest, DomNode, DOCUMENT_ROOT};
pub use parser::parse_document;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IngestError {
    #[error("malformed markup at byte {position}: {reason}")]
    MalformedMarkup { position: usize, reason: String },
    #[error("unsupported construct: {token}")]
    UnsupportedConstruct { token: String },
    #[error("component {node} is unreachable from device {device}")]
    UnreachableComponent { device: String, node: NodeId },
    #[error("unknown forest node {0}")]
    UnknownNode(NodeId),
    #[error("duplicate device id {0}")]
    DuplicateDevice(String),
    #[error("device {0} has invalid cost factor {1}")]
    InvalidCostFactor(String, f64),
    #[error("base cost for {0:?} must be finite and >= 0, got {1}")]
    InvalidBaseCost(NodeKind, f64),
    #[error(transparent)]
    Game(#[from] GameError),
}
