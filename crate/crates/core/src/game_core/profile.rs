use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::graph::{EdgeId, EdgeIx, GameGraph, NodeIx};
use super::GameError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlayerId(pub u32);

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A browser/device instance that needs one root-to-leaf path.
#[derive(Debug, Clone, PartialEq)]
pub struct Player {
    pub id: PlayerId,
    pub root: NodeIx,
    pub leaf: NodeIx,
    pub label: String,
}

/// Weight of the page-cost term in every player's cost. Always `>= 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Delta(f64);

impl Delta {
    pub const ZERO: Delta = Delta(0.0);

    pub fn new(value: f64) -> Result<Self, GameError> {
        if value.is_finite() && value >= 0.0 {
            Ok(Delta(value))
        } else {
            Err(GameError::InvalidDelta(value))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// A graph together with its validated set of players.
#[derive(Debug, Clone)]
pub struct Game {
    graph: GameGraph,
    players: Vec<Player>,
}

impl Game {
    /// Players are sorted by id; ids must be unique, roots distinct from
    /// leaves, and every leaf reachable from its root.
    pub fn new(graph: GameGraph, mut players: Vec<Player>) -> Result<Self, GameError> {
        players.sort_by_key(|p| p.id);
        for pair in players.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(GameError::DuplicatePlayer(pair[0].id));
            }
        }
        for p in &players {
            if p.root.0 >= graph.node_count() || p.leaf.0 >= graph.node_count() {
                return Err(GameError::UnknownNodeIndex(p.id));
            }
            if p.root == p.leaf {
                return Err(GameError::RootEqualsLeaf(p.id));
            }
            if !graph.reaches(p.root, p.leaf) {
                return Err(GameError::NoPath(p.id));
            }
        }
        Ok(Game { graph, players })
    }

    pub fn graph(&self) -> &GameGraph {
        &self.graph
    }

    pub fn players(&self) -> &[Player] {
        &self.players
    }

    pub fn player_count(&self) -> usize {
        self.players.len()
    }

    pub fn player(&self, id: PlayerId) -> Result<&Player, GameError> {
        self.players
            .binary_search_by_key(&id, |p| p.id)
            .map(|i| &self.players[i])
            .map_err(|_| GameError::UnknownPlayer(id))
    }
}

/// An ordered sequence of edges.
pub type Path = Vec<EdgeIx>;

/// One path per player.
///
/// A profile may be partial while it is being assembled (greedy warm
/// starts); [`StrategyProfile::validate`] checks completeness.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrategyProfile {
    paths: BTreeMap<PlayerId, Path>,
}

impl StrategyProfile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_paths(paths: impl IntoIterator<Item = (PlayerId, Path)>) -> Self {
        StrategyProfile {
            paths: paths.into_iter().collect(),
        }
    }

    /// Resolves edge ids against `graph`.
    pub fn from_edge_ids<'a>(
        graph: &GameGraph,
        paths: impl IntoIterator<Item = (PlayerId, &'a [EdgeId])>,
    ) -> Result<Self, GameError> {
        let mut out = BTreeMap::new();
        for (player, ids) in paths {
            let path = ids
                .iter()
                .map(|id| {
                    graph
                        .edge_ix(id)
                        .ok_or_else(|| GameError::UnknownEdge(id.clone()))
                })
                .collect::<Result<Path, _>>()?;
            if out.insert(player, path).is_some() {
                return Err(GameError::DuplicatePlayer(player));
            }
        }
        Ok(StrategyProfile { paths: out })
    }

    pub fn get(&self, player: PlayerId) -> Option<&Path> {
        self.paths.get(&player)
    }

    pub fn set(&mut self, player: PlayerId, path: Path) {
        self.paths.insert(player, path);
    }

    /// Copy of this profile with `player` switched to `path`.
    pub fn with_path(&self, player: PlayerId, path: Path) -> Self {
        let mut next = self.clone();
        next.set(player, path);
        next
    }

    pub fn iter(&self) -> impl Iterator<Item = (PlayerId, &Path)> {
        self.paths.iter().map(|(&p, path)| (p, path))
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Set of edges used by at least one player.
    pub fn edge_union(&self) -> BTreeSet<EdgeIx> {
        self.paths.values().flatten().copied().collect()
    }

    pub fn edge_ids(&self, graph: &GameGraph) -> BTreeMap<PlayerId, Vec<EdgeId>> {
        self.paths
            .iter()
            .map(|(&p, path)| (p, path.iter().map(|&e| graph.edge(e).id.clone()).collect()))
            .collect()
    }

    /// Every player of `game` has exactly one simple root-to-leaf path and
    /// nobody else appears.
    pub fn validate(&self, game: &Game) -> Result<(), GameError> {
        for &p in self.paths.keys() {
            game.player(p)?;
        }
        for player in game.players() {
            let path = self
                .paths
                .get(&player.id)
                .ok_or(GameError::MissingPath(player.id))?;
            if !game.graph().is_path_between(path, player.root, player.leaf) {
                return Err(GameError::InvalidPath(player.id));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game_core::graph::{EdgeRecord, Node, NodeKind};

    fn d1() -> Game {
        let g = GameGraph::build(
            vec![
                Node::new("r", NodeKind::Element),
                Node::new("l", NodeKind::Element),
            ],
            vec![
                EdgeRecord::new("a", "r", "l", 1.0),
                EdgeRecord::new("b", "r", "l", 3.0),
            ],
        )
        .unwrap();
        let players = (1..=2)
            .map(|i| Player {
                id: PlayerId(i),
                root: NodeIx(0),
                leaf: NodeIx(1),
                label: String::new(),
            })
            .collect();
        Game::new(g, players).unwrap()
    }

    #[test]
    fn delta_must_be_non_negative() {
        assert!(Delta::new(0.0).is_ok());
        assert!(Delta::new(2.5).is_ok());
        assert_eq!(Delta::new(-0.1), Err(GameError::InvalidDelta(-0.1)));
        assert!(Delta::new(f64::NAN).is_err());
    }

    #[test]
    fn root_equal_leaf_rejected() {
        let g = d1().graph().clone();
        let p = Player {
            id: PlayerId(1),
            root: NodeIx(0),
            leaf: NodeIx(0),
            label: String::new(),
        };
        assert_eq!(
            Game::new(g, vec![p]).unwrap_err(),
            GameError::RootEqualsLeaf(PlayerId(1))
        );
    }

    #[test]
    fn unreachable_leaf_rejected() {
        let g = d1().graph().clone();
        let p = Player {
            id: PlayerId(1),
            root: NodeIx(1),
            leaf: NodeIx(0),
            label: String::new(),
        };
        assert_eq!(
            Game::new(g, vec![p]).unwrap_err(),
            GameError::NoPath(PlayerId(1))
        );
    }

    #[test]
    fn profile_validation() {
        let game = d1();
        let a = EdgeIx(0);
        let ok = StrategyProfile::from_paths([(PlayerId(1), vec![a]), (PlayerId(2), vec![a])]);
        ok.validate(&game).unwrap();

        let missing = StrategyProfile::from_paths([(PlayerId(1), vec![a])]);
        assert_eq!(
            missing.validate(&game),
            Err(GameError::MissingPath(PlayerId(2)))
        );

        let stranger = ok.with_path(PlayerId(9), vec![a]);
        assert_eq!(
            stranger.validate(&game),
            Err(GameError::UnknownPlayer(PlayerId(9)))
        );

        let broken = ok.with_path(PlayerId(2), vec![]);
        assert_eq!(
            broken.validate(&game),
            Err(GameError::InvalidPath(PlayerId(2)))
        );
    }

    #[test]
    fn unknown_edge_id() {
        let game = d1();
        let ids: Vec<EdgeId> = vec!["zz".into()];
        let err = StrategyProfile::from_edge_ids(game.graph(), [(PlayerId(1), ids.as_slice())])
            .unwrap_err();
        assert_eq!(err, GameError::UnknownEdge("zz".into()));
    }
}
