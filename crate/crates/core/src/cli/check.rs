use crate::dynamics::improving_deviation_unchecked;
use crate::game_core::{
    load_map, page_cost, player_cost, potential, Delta, Game, StrategyProfile, TOLERANCE,
};
use crate::oracle::enumerate_paths;

use super::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub property: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(property: &'static str, passed: bool, detail: String) -> Self {
        CheckOutcome {
            property,
            passed,
            detail,
        }
    }

    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!("{verdict} {}: {}", self.property, self.detail)
    }
}

/// Nash stability, budget balance, cost aggregation and the exact potential
/// identity over every unilateral deviation.
pub fn check_profile(
    game: &Game,
    profile: &StrategyProfile,
    delta: Delta,
) -> Result<Vec<CheckOutcome>, CliError> {
    profile
        .validate(game)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let graph = game.graph();
    let ids = |path: &[crate::game_core::EdgeIx]| {
        path.iter()
            .map(|&e| graph.edge(e).id.0.clone())
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut out = Vec::new();

    let nash = improving_deviation_unchecked(game, profile, delta)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    out.push(match nash {
        None => CheckOutcome::new("nash", true, "no player can improve unilaterally".into()),
        Some(d) => CheckOutcome::new(
            "nash",
            false,
            format!(
                "player {} -> [{}] lowers its cost from {} to {}",
                d.player,
                ids(&d.path),
                d.current_cost,
                d.new_cost
            ),
        ),
    });

    let page = page_cost(graph, profile);
    let loads = load_map(profile);
    let shares: f64 = profile
        .iter()
        .flat_map(|(_, path)| path.iter())
        .map(|&e| graph.cost(e) / f64::from(loads.get(e)))
        .sum();
    out.push(CheckOutcome::new(
        "budget-balance",
        (shares - page).abs() <= TOLERANCE,
        format!("sum of shares {shares} vs page cost {page}"),
    ));

    let mut total = 0.0;
    for p in game.players() {
        total += player_cost(graph, profile, p.id, delta)
            .map_err(|e| CliError::Validation(e.to_string()))?;
    }
    let expected = page * (1.0 + delta.get() * game.player_count() as f64);
    out.push(CheckOutcome::new(
        "cost-aggregation",
        (total - expected).abs() <= TOLERANCE,
        format!("sum of player costs {total} vs {expected}"),
    ));

    let phi = potential(graph, profile, delta);
    let mut worst: Option<(f64, String)> = None;
    let mut deviations = 0usize;
    for p in game.players() {
        let z = player_cost(graph, profile, p.id, delta)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        for alt in enumerate_paths(graph, p.root, p.leaf) {
            if profile.get(p.id) == Some(&alt) {
                continue;
            }
            deviations += 1;
            let next = profile.with_path(p.id, alt.clone());
            let dz = z - player_cost(graph, &next, p.id, delta)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let dphi = phi - potential(graph, &next, delta);
            let gap = (dphi - dz).abs();
            if worst.as_ref().is_none_or(|(w, _)| gap > *w) {
                worst = Some((gap, format!("player {} -> [{}]", p.id, ids(&alt))));
            }
        }
    }
    out.push(match worst {
        None => CheckOutcome::new("potential", true, "no alternative paths".into()),
        Some((gap, at)) => CheckOutcome::new(
            "potential",
            gap <= TOLERANCE,
            format!("{deviations} deviations, largest |dPhi - dZ| = {gap:e} at {at}"),
        ),
    });
    Ok(out)
}
