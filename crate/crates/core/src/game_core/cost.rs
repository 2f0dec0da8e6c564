//! Page cost, Shapley shares, player costs and the exact potential.

use std::collections::BTreeMap;

use super::graph::{EdgeIx, GameGraph};
use super::profile::{Delta, PlayerId, StrategyProfile};
use super::GameError;

/// Number of chosen paths running through each used edge.
///
/// Edges no path uses are absent.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadMap {
    loads: BTreeMap<EdgeIx, u32>,
}

impl LoadMap {
    pub fn get(&self, edge: EdgeIx) -> u32 {
        self.loads.get(&edge).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeIx, u32)> + '_ {
        self.loads.iter().map(|(&e, &n)| (e, n))
    }

    pub fn len(&self) -> usize {
        self.loads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.loads.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.loads.values().map(|&n| u64::from(n)).sum()
    }
}

pub fn load_map(profile: &StrategyProfile) -> LoadMap {
    let mut loads = BTreeMap::new();
    for (_, path) in profile.iter() {
        for &e in path {
            *loads.entry(e).or_insert(0) += 1;
        }
    }
    LoadMap { loads }
}

/// Same as [`load_map`] but ignoring `player`'s own path.
pub fn load_map_excluding(profile: &StrategyProfile, player: PlayerId) -> LoadMap {
    let mut loads = BTreeMap::new();
    for (p, path) in profile.iter() {
        if p == player {
            continue;
        }
        for &e in path {
            *loads.entry(e).or_insert(0) += 1;
        }
    }
    LoadMap { loads }
}

/// Cost of the union of all chosen paths; shared edges count once.
pub fn page_cost(graph: &GameGraph, profile: &StrategyProfile) -> f64 {
    profile
        .edge_union()
        .into_iter()
        .map(|e| graph.cost(e))
        .sum()
}

/// Equal split of `cost` among `load` users.
pub fn shapley_share(cost: f64, load: u32) -> Result<f64, GameError> {
    if load == 0 {
        return Err(GameError::ZeroLoad);
    }
    Ok(cost / f64::from(load))
}

/// Shapley path cost of `player` plus `delta` times the page cost.
pub fn player_cost(
    graph: &GameGraph,
    profile: &StrategyProfile,
    player: PlayerId,
    delta: Delta,
) -> Result<f64, GameError> {
    let path = profile
        .get(player)
        .ok_or(GameError::UnknownPlayer(player))?;
    let loads = load_map(profile);
    let selfish = path_share_sum(graph, path, &loads);
    Ok(selfish + delta.get() * page_cost(graph, profile))
}

fn path_share_sum(graph: &GameGraph, path: &[EdgeIx], loads: &LoadMap) -> f64 {
    path.iter()
        .map(|&e| graph.cost(e) / f64::from(loads.get(e)))
        .sum()
}

/// Rosenthal-style potential: harmonic sum per used edge plus the social
/// term.
pub fn potential(graph: &GameGraph, profile: &StrategyProfile, delta: Delta) -> f64 {
    let loads = load_map(profile);
    let harmonic: f64 = loads
        .iter()
        .map(|(e, x)| {
            let c = graph.cost(e);
            (1..=x).map(|j| c / f64::from(j)).sum::<f64>()
        })
        .sum();
    harmonic + delta.get() * page_cost(graph, profile)
}

/// Everything the cost functions say about one profile.
#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    pub page_cost: f64,
    pub player_costs: BTreeMap<PlayerId, f64>,
    /// Per used edge: (load, share).
    pub shares: BTreeMap<EdgeIx, (u32, f64)>,
    pub potential: f64,
    pub delta: f64,
}

impl CostReport {
    pub fn compute(graph: &GameGraph, profile: &StrategyProfile, delta: Delta) -> Self {
        let loads = load_map(profile);
        let page = page_cost(graph, profile);
        let shares = loads
            .iter()
            .map(|(e, x)| (e, (x, graph.cost(e) / f64::from(x))))
            .collect();
        let player_costs = profile
            .iter()
            .map(|(p, path)| (p, path_share_sum(graph, path, &loads) + delta.get() * page))
            .collect();
        CostReport {
            page_cost: page,
            player_costs,
            shares,
            potential: potential(graph, profile, delta),
            delta: delta.get(),
        }
    }
}
