//! Builds a game from one page and three devices, then solves it.

use domgame::dom_ingest::{
    build_game, parse_document, CostModel, DeviceClass, DeviceProfile, Orientation,
};
use domgame::dynamics::{run_dynamics, Schedule};
use domgame::game_core::{CostReport, Delta};

const PAGE: &str = r#"<html><head><title>Shop</title></head><body><h1>Deals</h1><ul><li>One</li><li>Two</li></ul><a href="/cart">Cart</a></body></html>"#;

fn device(id: &str, class: DeviceClass, wants: &[&str]) -> DeviceProfile {
    let mut d = DeviceProfile::new(id, class);
    d.mounts = vec!["html".into(), "html/body".into()];
    d.required_components = wants.iter().map(|&w| w.into()).collect();
    d
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let forest = parse_document(PAGE)?;
    let mut phone = device(
        "phone",
        DeviceClass::Mobile,
        &["html/body/a", "html/body/ul/li[2]"],
    );
    phone.orientation = Orientation::Portrait;
    let devices = [
        device(
            "desktop",
            DeviceClass::Pc,
            &["html/head/title", "html/body/ul/li[2]/#text"],
        ),
        device("tablet", DeviceClass::Tablet, &["html/body/h1/#text"]),
        phone,
    ];
    let built = build_game(&forest, &devices, &CostModel::default(), Delta::new(0.25)?)?;
    let game = &built.game;
    println!(
        "{} players over {} edges",
        game.player_count(),
        game.graph().edge_count()
    );

    let trace = run_dynamics(game, built.delta, Schedule::round_robin(1), 10_000, None)?;
    let report = CostReport::compute(game.graph(), &trace.final_profile, built.delta);
    println!(
        "converged after {} activations, page cost {}",
        trace.iterations(),
        report.page_cost
    );
    for player in game.players() {
        println!(
            "  {:<45} Z = {:.3}",
            player.label, report.player_costs[&player.id]
        );
    }
    Ok(())
}
