#![allow(dead_code)]

use std::collections::HashSet;

use domgame::game_core::{Delta, EdgeIx, Game, GameGraph, NodeIx, Path, PlayerId, StrategyProfile};
use domgame::oracle::enumerate_paths;

pub const TOL: f64 = 1e-9;

pub const CODE_1: &str = r#"<html>
<head>
<title>My title</title>
</head>
<body>
<h1>My header</h1>
<a href="uri">My link</a>
</body>
</html>"#;

pub fn data(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

/// Player cost straight from the definition: per-edge tallies from a full
/// scan of every path, then shares plus delta times the union cost.
pub fn reference_cost(
    graph: &GameGraph,
    profile: &StrategyProfile,
    player: PlayerId,
    delta: f64,
) -> f64 {
    let mut union: HashSet<EdgeIx> = HashSet::new();
    for (_, path) in profile.iter() {
        union.extend(path.iter().copied());
    }
    let page: f64 = union.iter().map(|&e| graph.cost(e)).sum();
    let mine = profile.get(player).expect("player in profile");
    let selfish: f64 = mine
        .iter()
        .map(|&e| {
            let users = profile.iter().filter(|(_, p)| p.contains(&e)).count();
            graph.cost(e) / users as f64
        })
        .sum();
    selfish + delta * page
}

/// Minimum cost over every simple path, others fixed.
pub fn brute_force_best(
    game: &Game,
    profile: &StrategyProfile,
    player: PlayerId,
    delta: Delta,
) -> (f64, Vec<Path>) {
    let p = game.player(player).unwrap();
    let mut best = f64::INFINITY;
    let mut costs = Vec::new();
    for path in enumerate_paths(game.graph(), p.root, p.leaf) {
        let c = reference_cost(
            game.graph(),
            &profile.with_path(player, path.clone()),
            player,
            delta.get(),
        );
        best = best.min(c);
        costs.push((c, path));
    }
    let argmin = costs
        .into_iter()
        .filter(|(c, _)| *c <= best + TOL)
        .map(|(_, p)| p)
        .collect();
    (best, argmin)
}

/// Nash by exhaustive deviation search.
pub fn brute_force_is_nash(game: &Game, profile: &StrategyProfile, delta: Delta) -> bool {
    game.players().iter().all(|p| {
        let current = reference_cost(game.graph(), profile, p.id, delta.get());
        brute_force_best(game, profile, p.id, delta).0 >= current - TOL
    })
}

/// Profile with one uniformly drawn path per player.
pub fn random_profile(game: &Game, seed: u64) -> StrategyProfile {
    let mut rng = domgame::dynamics::SplitMix64::new(seed);
    StrategyProfile::from_paths(game.players().iter().map(|p| {
        let paths = enumerate_paths(game.graph(), p.root, p.leaf);
        let pick = rng.below(paths.len() as u64) as usize;
        (p.id, paths[pick].clone())
    }))
}

/// Memoized count of directed paths `from -> to`.
pub fn count_paths(graph: &GameGraph, from: NodeIx, to: NodeIx) -> u64 {
    fn go(graph: &GameGraph, at: NodeIx, to: NodeIx, memo: &mut Vec<Option<u64>>) -> u64 {
        if at == to {
            return 1;
        }
        if let Some(c) = memo[at.0] {
            return c;
        }
        let c = graph
            .out_edges(at)
            .iter()
            .map(|&e| go(graph, graph.edge(e).dst, to, memo))
            .sum();
        memo[at.0] = Some(c);
        c
    }
    go(graph, from, to, &mut vec![None; graph.node_count()])
}
