//! Seeded random game instances for property checks and demos.

use crate::dynamics::SplitMix64;
use crate::game_core::{
    Delta, EdgeRecord, Game, GameGraph, Node, NodeIx, NodeKind, Player, PlayerId,
};

/// Size limits for [`random_instance`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceShape {
    pub max_nodes: usize,
    pub max_edges: usize,
    pub max_players: usize,
}

impl Default for InstanceShape {
    fn default() -> Self {
        InstanceShape {
            max_nodes: 6,
            max_edges: 10,
            max_players: 3,
        }
    }
}

/// Values of delta the generator draws from.
pub const DELTAS: [f64; 4] = [0.0, 0.5, 1.0, 2.0];

/// Random DAG on nodes `v0..`, edges `e0..` pointing from lower to higher
/// index (parallel edges allowed), costs in half-units from 0 to 4 so that
/// exact ties are common, and players on reachable node pairs.
pub fn random_instance(seed: u64, shape: InstanceShape) -> (Game, Delta) {
    let mut rng = SplitMix64::new(seed);
    loop {
        let n = 2 + rng.below(shape.max_nodes.max(2) as u64 - 1) as usize;
        let m = 1 + rng.below(shape.max_edges.max(1) as u64) as usize;
        let nodes: Vec<Node> = (0..n)
            .map(|i| Node::new(format!("v{i}"), NodeKind::Abstract))
            .collect();
        let edges: Vec<EdgeRecord> = (0..m)
            .map(|k| {
                let a = rng.below(n as u64) as usize;
                let mut b = rng.below(n as u64 - 1) as usize;
                if b >= a {
                    b += 1;
                }
                let (src, dst) = (a.min(b), a.max(b));
                let cost = if rng.below(10) == 0 {
                    0.0
                } else {
                    (1 + rng.below(8)) as f64 * 0.5
                };
                EdgeRecord::new(
                    &format!("e{k}"),
                    &format!("v{src}"),
                    &format!("v{dst}"),
                    cost,
                )
            })
            .collect();
        let graph = GameGraph::build(nodes, edges).expect("forward edges form a DAG");

        let pairs: Vec<(NodeIx, NodeIx)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (NodeIx(i), NodeIx(j))))
            .filter(|&(r, l)| r != l && graph.reaches(r, l))
            .collect();
        if pairs.is_empty() {
            continue;
        }
        let k = 1 + rng.below(shape.max_players.max(1) as u64) as usize;
        let players = (0..k)
            .map(|i| {
                let (root, leaf) = pairs[rng.below(pairs.len() as u64) as usize];
                Player {
                    id: PlayerId(i as u32 + 1),
                    root,
                    leaf,
                    label: format!("player {}", i + 1),
                }
            })
            .collect();
        let delta =
            Delta::new(DELTAS[rng.below(DELTAS.len() as u64) as usize]).expect("valid delta");
        return (
            Game::new(graph, players).expect("players on reachable pairs"),
            delta,
        );
    }
}
