//! Engine against brute-force oracles on seeded random instances.

mod common;

use std::collections::{BTreeSet, HashMap, HashSet};

use proptest::prelude::*;

use common::*;
use domgame::dynamics::{best_response_seeded, is_nash, reweight, run_dynamics, Schedule};
use domgame::game_core::{
    boundary_vertices, load_map, page_cost, player_cost, potential, shapley_share, CostReport,
    Delta, NodeIx,
};
use domgame::oracle::{
    brute_force_equilibria, enumerate_paths, equilibria_in_range, equilibrium_catalog, harmonic,
    StrategySpace, DEFAULT_CAP,
};
use domgame::random::{random_instance, InstanceShape};

fn instance(seed: u64) -> (domgame::game_core::Game, Delta) {
    random_instance(seed, InstanceShape::default())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn loads_match_naive_scan(seed in any::<u64>(), pseed in any::<u64>()) {
        let (game, _) = instance(seed);
        let profile = random_profile(&game, pseed);
        let loads = load_map(&profile);
        for e in game.graph().edge_indices() {
            let naive = profile.iter().filter(|(_, p)| p.contains(&e)).count() as u32;
            prop_assert_eq!(loads.get(e), naive);
        }
        let total: usize = profile.iter().map(|(_, p)| p.len()).sum();
        prop_assert_eq!(loads.total(), total as u64);
    }

    #[test]
    fn page_cost_is_union_cost(seed in any::<u64>(), pseed in any::<u64>()) {
        let (game, _) = instance(seed);
        let profile = random_profile(&game, pseed);
        let names: HashSet<String> = profile
            .iter()
            .flat_map(|(_, p)| p.iter().map(|&e| game.graph().edge(e).id.0.clone()))
            .collect();
        let by_name: HashMap<&str, f64> =
            game.graph().edges().iter().map(|e| (e.id.0.as_str(), e.cost)).collect();
        let expected: f64 = names.iter().map(|n| by_name[n.as_str()]).sum();
        prop_assert!((page_cost(game.graph(), &profile) - expected).abs() <= TOL);
    }

    #[test]
    fn player_costs_match_definition(seed in any::<u64>(), pseed in any::<u64>()) {
        let (game, delta) = instance(seed);
        let profile = random_profile(&game, pseed);
        for p in game.players() {
            let got = player_cost(game.graph(), &profile, p.id, delta).unwrap();
            let want = reference_cost(game.graph(), &profile, p.id, delta.get());
            prop_assert!((got - want).abs() <= TOL);
        }
    }

    #[test]
    fn budget_balance_and_aggregation(seed in any::<u64>(), pseed in any::<u64>()) {
        let (game, delta) = instance(seed);
        let profile = random_profile(&game, pseed);
        let report = CostReport::compute(game.graph(), &profile, delta);
        let shares: f64 = profile
            .iter()
            .flat_map(|(_, p)| p.iter())
            .map(|e| report.shares[e].1)
            .sum();
        prop_assert!((shares - report.page_cost).abs() <= TOL);
        let total: f64 = report.player_costs.values().sum();
        let k = game.player_count() as f64;
        prop_assert!((total - report.page_cost * (1.0 + delta.get() * k)).abs() <= TOL);
    }

    #[test]
    fn share_bounds(seed in any::<u64>(), pseed in any::<u64>()) {
        let (game, _) = instance(seed);
        let profile = random_profile(&game, pseed);
        for (e, x) in load_map(&profile).iter() {
            let c = game.graph().cost(e);
            let share = shapley_share(c, x).unwrap();
            if c > 0.0 {
                prop_assert!(share > 0.0 && share <= c);
            }
            if x == 1 {
                prop_assert_eq!(share, c);
            }
        }
    }

    #[test]
    fn delta_zero_is_pure_shapley(seed in any::<u64>(), pseed in any::<u64>()) {
        let (game, _) = instance(seed);
        let profile = random_profile(&game, pseed);
        let loads = load_map(&profile);
        for (p, path) in profile.iter() {
            let shapley: f64 = path.iter().map(|&e| game.graph().cost(e) / f64::from(loads.get(e))).sum();
            prop_assert_eq!(player_cost(game.graph(), &profile, p, Delta::ZERO).unwrap(), shapley);
        }
    }

    #[test]
    fn exact_potential(seed in any::<u64>(), pseed in any::<u64>()) {
        let (game, delta) = instance(seed);
        let profile = random_profile(&game, pseed);
        let g = game.graph();
        for p in game.players() {
            for alt in enumerate_paths(g, p.root, p.leaf) {
                let next = profile.with_path(p.id, alt);
                let dphi = potential(g, &profile, delta) - potential(g, &next, delta);
                let dz = player_cost(g, &profile, p.id, delta).unwrap()
                    - player_cost(g, &next, p.id, delta).unwrap();
                prop_assert!((dphi - dz).abs() <= TOL, "dphi {} dz {}", dphi, dz);
            }
        }
    }

    #[test]
    fn reweighting_is_exact(seed in any::<u64>(), pseed in any::<u64>()) {
        let (game, delta) = instance(seed);
        let profile = random_profile(&game, pseed);
        let g = game.graph();
        for p in game.players() {
            let w = reweight(&game, &profile, p.id, delta).unwrap();
            for alt in enumerate_paths(g, p.root, p.leaf) {
                let z = reference_cost(g, &profile.with_path(p.id, alt.clone()), p.id, delta.get());
                prop_assert!((w.path_weight(&alt) + w.fixed_cost() - z).abs() <= TOL);
            }
            for e in g.edge_indices() {
                prop_assert!(w.weight(e) >= 0.0);
                prop_assert!(w.weight(e) <= g.cost(e) * (delta.get() + 1.0) + TOL);
            }
        }
    }

    #[test]
    fn best_response_attains_brute_force_minimum(seed in any::<u64>(), pseed in any::<u64>(), tie in any::<u64>()) {
        let (game, delta) = instance(seed);
        let profile = random_profile(&game, pseed);
        for p in game.players() {
            let br = best_response_seeded(&game, &profile, p.id, delta, tie).unwrap();
            let (best, argmin) = brute_force_best(&game, &profile, p.id, delta);
            prop_assert!((br.cost - best).abs() <= TOL);
            prop_assert!(argmin.contains(&br.path));
        }
    }

    #[test]
    fn boundary_matches_dfs_longest_path(seed in any::<u64>()) {
        let (game, _) = instance(seed);
        let g = game.graph();
        // Longest path ending at each node, by recursion over predecessors.
        fn longest(g: &domgame::game_core::GameGraph, v: NodeIx, memo: &mut Vec<Option<usize>>) -> usize {
            if let Some(d) = memo[v.0] {
                return d;
            }
            let d = g
                .edges()
                .iter()
                .filter(|e| e.dst == v)
                .map(|e| e.src)
                .collect::<Vec<_>>()
                .into_iter()
                .map(|u| longest(g, u, memo) + 1)
                .max()
                .unwrap_or(0);
            memo[v.0] = Some(d);
            d
        }
        let mut memo = vec![None; g.node_count()];
        let depth: Vec<usize> = (0..g.node_count()).map(|i| longest(g, NodeIx(i), &mut memo)).collect();
        let max = *depth.iter().max().unwrap();
        let expected: BTreeSet<NodeIx> =
            (0..g.node_count()).filter(|&i| depth[i] == max).map(NodeIx).collect();
        prop_assert_eq!(boundary_vertices(g).unwrap(), expected);
    }

    #[test]
    fn path_enumeration_count_and_order(seed in any::<u64>()) {
        let (game, _) = instance(seed);
        let g = game.graph();
        for p in game.players() {
            let paths = enumerate_paths(g, p.root, p.leaf);
            prop_assert_eq!(paths.len() as u64, count_paths(g, p.root, p.leaf));
            let named: Vec<Vec<&str>> = paths
                .iter()
                .map(|path| path.iter().map(|&e| g.edge(e).id.0.as_str()).collect())
                .collect();
            let mut sorted = named.clone();
            sorted.sort();
            prop_assert_eq!(named, sorted);
        }
    }
}

#[test]
fn dynamics_converge_to_cataloged_equilibria() {
    for seed in 0..150u64 {
        let (game, delta) = instance(seed);
        let catalog = equilibrium_catalog(&game, delta, DEFAULT_CAP).unwrap();
        for entry in &catalog.equilibria {
            assert!(
                brute_force_is_nash(&game, &entry.profile, delta),
                "seed {seed}"
            );
        }
        for schedule in [Schedule::round_robin(seed), Schedule::random(seed)] {
            let trace = run_dynamics(&game, delta, schedule, 10_000, None).unwrap();
            assert!(trace.converged);
            assert!(is_nash(&game, &trace.final_profile, delta).unwrap());
            assert!(catalog.contains(&trace.final_profile), "seed {seed}");
            assert_eq!(trace.replay(), trace.final_profile);
            let mut last =
                domgame::game_core::potential(game.graph(), &trace.initial_profile, delta);
            for step in &trace.steps {
                assert!(step.potential_after <= last + TOL);
                if step.path_changed {
                    assert!(step.new_cost < step.previous_cost);
                    // The potential drops by exactly the mover's gain.
                    let gain = step.previous_cost - step.new_cost;
                    assert!(
                        (last - step.potential_after - gain).abs() <= TOL,
                        "seed {seed}"
                    );
                }
                last = step.potential_after;
            }
        }
    }
}

#[test]
fn efficiency_bounds() {
    for seed in 0..150u64 {
        let (game, delta) = instance(seed);
        let catalog = equilibrium_catalog(&game, delta, DEFAULT_CAP).unwrap();
        assert!(catalog.pos <= catalog.poa);
        assert!(catalog.pos >= 1.0 - TOL);
        for e in &catalog.equilibria {
            assert!(catalog.optimum_cost <= e.report.page_cost + TOL);
        }
        let zero = equilibrium_catalog(&game, Delta::ZERO, DEFAULT_CAP).unwrap();
        assert!(
            zero.pos <= harmonic(game.player_count()) + TOL,
            "seed {seed}"
        );
    }
}

#[test]
fn parallel_search_matches_any_partition() {
    for seed in 0..40u64 {
        let (game, delta) = instance(seed);
        let space = StrategySpace::new(&game, DEFAULT_CAP).unwrap();
        let parallel: Vec<_> = brute_force_equilibria(&game, delta, DEFAULT_CAP)
            .unwrap()
            .into_iter()
            .map(|e| e.profile)
            .collect();
        let n = space.size();
        for parts in [1u64, 2, 3, 7] {
            let mut merged = Vec::new();
            for k in 0..parts {
                let range = (n * k / parts)..(n * (k + 1) / parts);
                merged.extend(equilibria_in_range(&game, delta, &space, range).unwrap());
            }
            let profiles: Vec<_> = merged.into_iter().map(|i| space.profile_at(i)).collect();
            assert_eq!(profiles, parallel, "seed {seed}, {parts} parts");
        }
    }
}

#[test]
fn catalog_is_stable_across_runs() {
    let (game, delta) = instance(17);
    let a = equilibrium_catalog(&game, delta, DEFAULT_CAP).unwrap();
    let b = equilibrium_catalog(&game, delta, DEFAULT_CAP).unwrap();
    assert_eq!(a, b);
}
