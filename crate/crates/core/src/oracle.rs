//! Brute-force ground truth for small games: every simple path, every pure
//! profile, every equilibrium, and the social optimum.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::dynamics::{is_nash_unchecked, DynamicsError};
use crate::game_core::{
    page_cost, CostReport, Delta, EdgeIx, Game, GameError, GameGraph, NodeIx, Path, PlayerId,
    StrategyProfile, TOLERANCE,
};

/// Default bound on the number of pure profiles an exhaustive search visits.
pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("search space of {0} profiles exceeds the cap")]
    SearchSpaceTooLarge(u128),
    #[error("no pure equilibrium found")]
    NoEquilibria,
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

/// All simple directed `root -> leaf` paths, in lexicographic order of their
/// edge-id sequences.
pub fn enumerate_paths(graph: &GameGraph, root: NodeIx, leaf: NodeIx) -> Vec<Path> {
    fn walk(
        graph: &GameGraph,
        at: NodeIx,
        leaf: NodeIx,
        on_path: &mut [bool],
        current: &mut Path,
        out: &mut Vec<Path>,
    ) {
        if at == leaf {
            out.push(current.clone());
            return;
        }
        for &e in graph.out_edges(at) {
            let next = graph.edge(e).dst;
            if on_path[next.0] {
                continue;
            }
            on_path[next.0] = true;
            current.push(e);
            walk(graph, next, leaf, on_path, current, out);
            current.pop();
            on_path[next.0] = false;
        }
    }

    let mut out = Vec::new();
    if root == leaf {
        return out;
    }
    let mut on_path = vec![false; graph.node_count()];
    on_path[root.0] = true;
    walk(graph, root, leaf, &mut on_path, &mut Vec::new(), &mut out);
    out
}

/// Cartesian product of every player's path set, indexed in mixed radix
/// with the first player as the most significant digit.
#[derive(Debug, Clone)]
pub struct StrategySpace {
    choices: Vec<(PlayerId, Vec<Path>)>,
    size: u64,
}

impl StrategySpace {
    pub fn new(game: &Game, cap: u64) -> Result<Self, OracleError> {
        let choices: Vec<(PlayerId, Vec<Path>)> = game
            .players()
            .iter()
            .map(|p| (p.id, enumerate_paths(game.graph(), p.root, p.leaf)))
            .collect();
        let size = choices.iter().fold(1u128, |acc, (_, paths)| {
            acc.saturating_mul(paths.len() as u128)
        });
        if size > u128::from(cap) {
            return Err(OracleError::SearchSpaceTooLarge(size));
        }
        Ok(StrategySpace {
            choices,
            size: size as u64,
        })
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn paths_of(&self, player: PlayerId) -> Option<&[Path]> {
        self.choices
            .iter()
            .find(|(p, _)| *p == player)
            .map(|(_, paths)| paths.as_slice())
    }

    pub fn profile_at(&self, mut index: u64) -> StrategyProfile {
        let mut picks = vec![0usize; self.choices.len()];
        for (slot, (_, paths)) in picks.iter_mut().zip(&self.choices).rev() {
            let n = paths.len() as u64;
            *slot = (index % n) as usize;
            index /= n;
        }
        StrategyProfile::from_paths(
            self.choices
                .iter()
                .zip(picks)
                .map(|((p, paths), i)| (*p, paths[i].clone())),
        )
    }
}

/// One pure equilibrium with its costs.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub profile: StrategyProfile,
    pub report: CostReport,
    /// Whether the union of chosen edges is acyclic as an undirected
    /// multigraph.
    pub forest: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumCatalog {
    pub equilibria: Vec<CatalogEntry>,
    pub optimum: StrategyProfile,
    pub optimum_cost: f64,
    pub poa: f64,
    pub pos: f64,
}

/// Every pure Nash equilibrium, ordered by profile index.
pub fn brute_force_equilibria(
    game: &Game,
    delta: Delta,
    cap: u64,
) -> Result<Vec<CatalogEntry>, OracleError> {
    let space = StrategySpace::new(game, cap)?;
    let hits: Vec<u64> = (0..space.size())
        .into_par_iter()
        .map(|i| is_nash_unchecked(game, &space.profile_at(i), delta).map(|ok| ok.then_some(i)))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(hits
        .into_iter()
        .map(|i| entry(game, space.profile_at(i), delta))
        .collect())
}

/// Single-threaded scan of a contiguous index range. The parallel search
/// must agree with the concatenation of these over any partition.
pub fn equilibria_in_range(
    game: &Game,
    delta: Delta,
    space: &StrategySpace,
    range: std::ops::Range<u64>,
) -> Result<Vec<u64>, OracleError> {
    let mut out = Vec::new();
    for i in range {
        if is_nash_unchecked(game, &space.profile_at(i), delta)? {
            out.push(i);
        }
    }
    Ok(out)
}

fn entry(game: &Game, profile: StrategyProfile, delta: Delta) -> CatalogEntry {
    let report = CostReport::compute(game.graph(), &profile, delta);
    let forest = is_forest(game.graph(), &profile.edge_union());
    CatalogEntry {
        profile,
        report,
        forest,
    }
}

/// Profile of least page cost; among ties (within tolerance) the one with
/// the smallest profile index wins.
pub fn social_optimum(game: &Game, cap: u64) -> Result<(StrategyProfile, f64), OracleError> {
    let space = StrategySpace::new(game, cap)?;
    let graph = game.graph();
    let best = (0..space.size())
        .into_par_iter()
        .map(|i| (page_cost(graph, &space.profile_at(i)), i))
        .reduce(
            || (f64::INFINITY, u64::MAX),
            |a, b| {
                if b.0 < a.0 - TOLERANCE || (b.0 <= a.0 + TOLERANCE && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    // The empty-player game has one (empty) profile.
    let index = if best.1 == u64::MAX { 0 } else { best.1 };
    let profile = space.profile_at(index);
    let cost = page_cost(graph, &profile);
    Ok((profile, cost))
}

/// Price of anarchy and price of stability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Efficiency {
    pub poa: f64,
    pub pos: f64,
}

/// Worst and best equilibrium page cost over the optimum. A zero optimum
/// gives ratio 1 for zero-cost equilibria and infinity otherwise.
pub fn efficiency_metrics(
    equilibria: &[CatalogEntry],
    optimum_cost: f64,
) -> Result<Efficiency, OracleError> {
    if equilibria.is_empty() {
        return Err(OracleError::NoEquilibria);
    }
    let costs = equilibria.iter().map(|e| e.report.page_cost);
    let worst = costs.clone().fold(f64::NEG_INFINITY, f64::max);
    let best = costs.fold(f64::INFINITY, f64::min);
    Ok(Efficiency {
        poa: ratio(worst, optimum_cost),
        pos: ratio(best, optimum_cost),
    })
}

fn ratio(cost: f64, optimum: f64) -> f64 {
    if optimum > 0.0 {
        cost / optimum
    } else if cost <= TOLERANCE {
        1.0
    } else {
        f64::INFINITY
    }
}

/// Equilibria, optimum and efficiency ratios in one pass.
pub fn equilibrium_catalog(
    game: &Game,
    delta: Delta,
    cap: u64,
) -> Result<EquilibriumCatalog, OracleError> {
    let equilibria = brute_force_equilibria(game, delta, cap)?;
    let (optimum, optimum_cost) = social_optimum(game, cap)?;
    let Efficiency { poa, pos } = efficiency_metrics(&equilibria, optimum_cost)?;
    Ok(EquilibriumCatalog {
        equilibria,
        optimum,
        optimum_cost,
        poa,
        pos,
    })
}

impl EquilibriumCatalog {
    pub fn efficiency(&self) -> Efficiency {
        Efficiency {
            poa: self.poa,
            pos: self.pos,
        }
    }

    pub fn contains(&self, profile: &StrategyProfile) -> bool {
        self.equilibria.iter().any(|e| &e.profile == profile)
    }
}

/// `H(k) = 1 + 1/2 + ... + 1/k`.
pub fn harmonic(k: usize) -> f64 {
    (1..=k).map(|j| 1.0 / j as f64).sum()
}

/// Undirected acyclicity of an edge subset (parallel edges form a cycle).
pub fn is_forest(graph: &GameGraph, edges: &BTreeSet<EdgeIx>) -> bool {
    let mut parent: Vec<usize> = (0..graph.node_count()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &e in edges {
        let edge = graph.edge(e);
        let (a, b) = (find(&mut parent, edge.src.0), find(&mut parent, edge.dst.0));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}
