use crate::game_core::{
    load_map_excluding, player_cost, Delta, EdgeIx, Game, GameError, GameGraph, NodeIx, Path,
    PlayerId, StrategyProfile, TOLERANCE,
};

use super::rng::SplitMix64;
use super::DynamicsError;

/// Per-edge weights seen by one player while the others stay put.
///
/// An edge already used by `k > 0` other players weighs `c / (k + 1)`; an
/// edge nobody else uses weighs `c * (1 + delta)`, because taking it also
/// grows the page cost. For any path `P`, the player's cost with `P` equals
/// the path weight plus [`ReweightedGraph::fixed_cost`].
#[derive(Debug, Clone, PartialEq)]
pub struct ReweightedGraph {
    weights: Vec<f64>,
    fixed_cost: f64,
}

impl ReweightedGraph {
    pub fn weight(&self, edge: EdgeIx) -> f64 {
        self.weights[edge.0]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `delta` times the cost of the edges the other players use.
    pub fn fixed_cost(&self) -> f64 {
        self.fixed_cost
    }

    pub fn path_weight(&self, path: &[EdgeIx]) -> f64 {
        path.iter().map(|&e| self.weights[e.0]).sum()
    }
}

/// Weights for `player` against the rest of `profile`. The player's own
/// current path, if any, is ignored.
pub fn reweight(
    game: &Game,
    profile: &StrategyProfile,
    player: PlayerId,
    delta: Delta,
) -> Result<ReweightedGraph, GameError> {
    game.player(player)?;
    Ok(reweight_unchecked(game.graph(), profile, player, delta))
}

fn reweight_unchecked(
    graph: &GameGraph,
    profile: &StrategyProfile,
    player: PlayerId,
    delta: Delta,
) -> ReweightedGraph {
    let others = load_map_excluding(profile, player);
    let d = delta.get();
    let weights = graph
        .edge_indices()
        .map(|e| {
            let c = graph.cost(e);
            match others.get(e) {
                0 => c * (d + 1.0),
                k => c / f64::from(k + 1),
            }
        })
        .collect();
    let fixed_cost = d * others.iter().map(|(e, _)| graph.cost(e)).sum::<f64>();
    ReweightedGraph {
        weights,
        fixed_cost,
    }
}

/// Shortest-path distances to `leaf` under `weights`, plus the number of
/// minimum-weight ("tight") paths from each node. Distances are `INFINITY`
/// for nodes that cannot reach `leaf`.
struct ShortestPaths {
    dist: Vec<f64>,
    count: Vec<u64>,
    leaf: NodeIx,
}

impl ShortestPaths {
    fn compute(graph: &GameGraph, weights: &ReweightedGraph, leaf: NodeIx) -> Self {
        let n = graph.node_count();
        let mut dist = vec![f64::INFINITY; n];
        let mut count = vec![0u64; n];
        dist[leaf.0] = 0.0;
        count[leaf.0] = 1;
        for &u in graph.topo_order().iter().rev() {
            if u == leaf {
                continue;
            }
            let best = graph
                .out_edges(u)
                .iter()
                .map(|&e| weights.weight(e) + dist[graph.edge(e).dst.0])
                .fold(f64::INFINITY, f64::min);
            dist[u.0] = best;
            if best.is_finite() {
                count[u.0] = graph
                    .out_edges(u)
                    .iter()
                    .filter(|&&e| is_tight(graph, weights, &dist, u, e))
                    .fold(0u64, |acc, &e| {
                        acc.saturating_add(count[graph.edge(e).dst.0])
                    });
            }
        }
        ShortestPaths { dist, count, leaf }
    }

    /// Draws one tight path from `root`, uniformly among all tight paths
    /// when `rng` is given, otherwise the lexicographically first one.
    fn sample(
        &self,
        graph: &GameGraph,
        weights: &ReweightedGraph,
        root: NodeIx,
        rng: Option<&mut SplitMix64>,
    ) -> Path {
        let mut pick = match rng {
            Some(rng) if self.count[root.0] > 1 => rng.below(self.count[root.0]),
            _ => 0,
        };
        let mut path = Vec::new();
        let mut at = root;
        while at != self.leaf {
            let tight: Vec<EdgeIx> = graph
                .out_edges(at)
                .iter()
                .copied()
                .filter(|&e| is_tight(graph, weights, &self.dist, at, e))
                .collect();
            let mut chosen = *tight.last().expect("tight edge out of a reachable node");
            for &e in &tight {
                let c = self.count[graph.edge(e).dst.0];
                if pick < c {
                    chosen = e;
                    break;
                }
                pick -= c;
            }
            path.push(chosen);
            at = graph.edge(chosen).dst;
        }
        path
    }
}

fn is_tight(
    graph: &GameGraph,
    weights: &ReweightedGraph,
    dist: &[f64],
    u: NodeIx,
    e: EdgeIx,
) -> bool {
    let d = dist[graph.edge(e).dst.0];
    d.is_finite() && weights.weight(e) + d <= dist[u.0] + TOLERANCE
}

/// A best response and its cost for the responding player.
#[derive(Debug, Clone, PartialEq)]
pub struct BestResponse {
    pub path: Path,
    pub cost: f64,
}

/// Cheapest path for `player` given everyone else's paths in `profile`.
///
/// Ties within [`TOLERANCE`] are broken uniformly at random with `rng`.
/// `profile` may omit players (including `player`); absent players simply
/// do not load any edge.
pub fn best_response(
    game: &Game,
    profile: &StrategyProfile,
    player: PlayerId,
    delta: Delta,
    rng: &mut SplitMix64,
) -> Result<BestResponse, DynamicsError> {
    respond(game, profile, player, delta, Some(rng))
}

/// [`best_response`] with a fresh generator seeded by `seed`.
pub fn best_response_seeded(
    game: &Game,
    profile: &StrategyProfile,
    player: PlayerId,
    delta: Delta,
    seed: u64,
) -> Result<BestResponse, DynamicsError> {
    best_response(game, profile, player, delta, &mut SplitMix64::new(seed))
}

pub(crate) fn respond(
    game: &Game,
    profile: &StrategyProfile,
    player: PlayerId,
    delta: Delta,
    rng: Option<&mut SplitMix64>,
) -> Result<BestResponse, DynamicsError> {
    let p = game.player(player)?;
    let graph = game.graph();
    let weights = reweight_unchecked(graph, profile, player, delta);
    let sp = ShortestPaths::compute(graph, &weights, p.leaf);
    if !sp.dist[p.root.0].is_finite() {
        return Err(DynamicsError::NoPath(player));
    }
    let path = sp.sample(graph, &weights, p.root, rng);
    let cost = player_cost(
        graph,
        &profile.with_path(player, path.clone()),
        player,
        delta,
    )?;
    Ok(BestResponse { path, cost })
}

/// Minimum cost `player` could reach by switching paths alone.
pub fn best_response_cost(
    game: &Game,
    profile: &StrategyProfile,
    player: PlayerId,
    delta: Delta,
) -> Result<f64, DynamicsError> {
    let p = game.player(player)?;
    let weights = reweight_unchecked(game.graph(), profile, player, delta);
    let sp = ShortestPaths::compute(game.graph(), &weights, p.leaf);
    let d = sp.dist[p.root.0];
    if d.is_finite() {
        Ok(d + weights.fixed_cost())
    } else {
        Err(DynamicsError::NoPath(player))
    }
}

/// A unilateral move that strictly lowers the mover's cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Deviation {
    pub player: PlayerId,
    pub path: Path,
    pub current_cost: f64,
    pub new_cost: f64,
}

/// First player (in id order) with a strictly improving deviation, if any.
/// The deviation path is the lexicographically first best response.
pub fn improving_deviation(
    game: &Game,
    profile: &StrategyProfile,
    delta: Delta,
) -> Result<Option<Deviation>, DynamicsError> {
    profile.validate(game)?;
    improving_deviation_unchecked(game, profile, delta)
}

pub(crate) fn improving_deviation_unchecked(
    game: &Game,
    profile: &StrategyProfile,
    delta: Delta,
) -> Result<Option<Deviation>, DynamicsError> {
    for p in game.players() {
        let current = player_cost(game.graph(), profile, p.id, delta)?;
        let best = best_response_cost(game, profile, p.id, delta)?;
        if best < current - TOLERANCE {
            let br = respond(game, profile, p.id, delta, None)?;
            return Ok(Some(Deviation {
                player: p.id,
                path: br.path,
                current_cost: current,
                new_cost: br.cost,
            }));
        }
    }
    Ok(None)
}

/// Pure Nash check: no player can lower its cost by more than
/// [`TOLERANCE`] on its own.
pub fn is_nash(
    game: &Game,
    profile: &StrategyProfile,
    delta: Delta,
) -> Result<bool, DynamicsError> {
    profile.validate(game)?;
    is_nash_unchecked(game, profile, delta)
}

pub(crate) fn is_nash_unchecked(
    game: &Game,
    profile: &StrategyProfile,
    delta: Delta,
) -> Result<bool, DynamicsError> {
    for p in game.players() {
        let current = player_cost(game.graph(), profile, p.id, delta)?;
        if best_response_cost(game, profile, p.id, delta)? < current - TOLERANCE {
            return Ok(false);
        }
    }
    Ok(true)
}
