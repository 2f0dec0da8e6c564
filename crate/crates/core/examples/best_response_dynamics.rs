//! Runs both schedules on a seeded random instance and prints the trace.

use domgame::dynamics::{run_dynamics, Schedule};
use domgame::random::{random_instance, InstanceShape};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(23);
    let (game, delta) = random_instance(seed, InstanceShape::default());
    println!(
        "instance {seed}: {} nodes, {} edges, {} players, delta {}",
        game.graph().node_count(),
        game.graph().edge_count(),
        game.player_count(),
        delta.get()
    );

    for schedule in [Schedule::round_robin(seed), Schedule::random(seed)] {
        let trace = run_dynamics(&game, delta, schedule, 10_000, None)?;
        println!(
            "{:?}: {} activations, {} moves",
            schedule.kind,
            trace.iterations(),
            trace.moves().count()
        );
        for step in trace.moves() {
            println!(
                "  #{:<3} player {} {:.3} -> {:.3}  potential {:.3}",
                step.iteration,
                step.player.0,
                step.previous_cost,
                step.new_cost,
                step.potential_after
            );
        }
        for (player, path) in trace.final_profile.edge_ids(game.graph()) {
            let names: Vec<&str> = path.iter().map(|e| e.0.as_str()).collect();
            println!("  player {} -> {}", player.0, names.join(" "));
        }
    }
    Ok(())
}
