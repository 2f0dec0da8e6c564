//! Exhaustive equilibrium search with price of anarchy and stability.

use domgame::game_core::Delta;
use domgame::oracle::{equilibrium_catalog, harmonic, DEFAULT_CAP};
use domgame::random::{random_instance, InstanceShape};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for seed in 0..8 {
        let (game, delta) = random_instance(seed, InstanceShape::default());
        let deltas = if delta == Delta::ZERO {
            vec![delta]
        } else {
            vec![Delta::ZERO, delta]
        };
        for delta in deltas {
            let catalog = equilibrium_catalog(&game, delta, DEFAULT_CAP)?;
            let forests = catalog.equilibria.iter().filter(|e| e.forest).count();
            println!(
                "seed {seed} delta {:<3} k={} equilibria {:>2} ({forests} forests)  opt {:<4} PoA {:.3} PoS {:.3} H(k) {:.3}",
                delta.get(),
                game.player_count(),
                catalog.equilibria.len(),
                catalog.optimum_cost,
                catalog.poa,
                catalog.pos,
                harmonic(game.player_count()),
            );
        }
    }
    Ok(())
}
