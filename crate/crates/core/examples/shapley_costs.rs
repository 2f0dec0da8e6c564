//! Two players, two parallel edges: compare every profile's costs.

use domgame::game_core::{
    CostReport, Delta, EdgeId, EdgeRecord, Game, GameGraph, Node, NodeKind, Player, PlayerId,
    StrategyProfile,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let graph = GameGraph::build(
        vec![
            Node::new("r", NodeKind::Element),
            Node::new("l", NodeKind::Element),
        ],
        vec![
            EdgeRecord::new("a", "r", "l", 1.0),
            EdgeRecord::new("b", "r", "l", 3.0),
        ],
    )?;
    let r = graph.node_ix(&"r".into()).unwrap();
    let l = graph.node_ix(&"l".into()).unwrap();
    let players = (1..=2)
        .map(|i| Player {
            id: PlayerId(i),
            root: r,
            leaf: l,
            label: format!("p{i}"),
        })
        .collect();
    let game = Game::new(graph, players)?;

    for delta in [0.0, 0.5] {
        let delta = Delta::new(delta)?;
        println!("delta = {}", delta.get());
        for (p1, p2) in [("a", "a"), ("a", "b"), ("b", "b")] {
            let (p1_ids, p2_ids) = ([EdgeId::from(p1)], [EdgeId::from(p2)]);
            let profile = StrategyProfile::from_edge_ids(
                game.graph(),
                [(PlayerId(1), &p1_ids[..]), (PlayerId(2), &p2_ids[..])],
            )?;
            let report = CostReport::compute(game.graph(), &profile, delta);
            let z: Vec<f64> = report.player_costs.values().copied().collect();
            println!(
                "  ({p1},{p2})  C = {:<4} Z = {:?}  potential = {}",
                report.page_cost, z, report.potential
            );
        }
    }
    Ok(())
}
