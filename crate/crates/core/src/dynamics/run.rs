use serde::{Deserialize, Serialize};

use crate::game_core::{
    player_cost, potential, Delta, Game, Path, PlayerId, StrategyProfile, TOLERANCE,
};

use super::best_response::respond;
use super::rng::SplitMix64;
use super::DynamicsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScheduleKind {
    /// Players in id order, every pass.
    #[default]
    RoundRobin,
    /// A fresh seeded shuffle of the players for every pass.
    Random,
}

/// Activation order plus the seed that drives shuffles and tie-breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Schedule {
    pub kind: ScheduleKind,
    pub seed: u64,
}

impl Schedule {
    pub fn round_robin(seed: u64) -> Self {
        Schedule {
            kind: ScheduleKind::RoundRobin,
            seed,
        }
    }

    pub fn random(seed: u64) -> Self {
        Schedule {
            kind: ScheduleKind::Random,
            seed,
        }
    }
}

/// One player activation.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub iteration: usize,
    pub player: PlayerId,
    pub previous_cost: f64,
    /// Cost of the best response found (equal to the previous cost up to
    /// tolerance when the player stays).
    pub new_cost: f64,
    pub potential_after: f64,
    pub path_changed: bool,
    /// Path held by the player after this step.
    pub path: Path,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsTrace {
    pub initial_profile: StrategyProfile,
    pub steps: Vec<TraceStep>,
    pub converged: bool,
    pub final_profile: StrategyProfile,
}

impl DynamicsTrace {
    pub fn iterations(&self) -> usize {
        self.steps.len()
    }

    pub fn moves(&self) -> impl Iterator<Item = &TraceStep> {
        self.steps.iter().filter(|s| s.path_changed)
    }

    /// Applies the recorded moves to the initial profile.
    pub fn replay(&self) -> StrategyProfile {
        let mut profile = self.initial_profile.clone();
        for step in self.moves() {
            profile.set(step.player, step.path.clone());
        }
        profile
    }
}

/// Sequential warm start: each player, in id order, best-responds to the
/// players placed before it.
pub fn greedy_profile(
    game: &Game,
    delta: Delta,
    rng: &mut SplitMix64,
) -> Result<StrategyProfile, DynamicsError> {
    let mut profile = StrategyProfile::new();
    for p in game.players() {
        let br = respond(game, &profile, p.id, delta, Some(&mut *rng))?;
        profile.set(p.id, br.path);
    }
    Ok(profile)
}

/// Best-response dynamics until a full pass produces no move.
///
/// A player switches only when its cost drops by more than [`TOLERANCE`].
/// Each activation counts as one iteration. Running out of `max_iters`
/// yields [`DynamicsError::NotConverged`] carrying the partial trace.
pub fn run_dynamics(
    game: &Game,
    delta: Delta,
    schedule: Schedule,
    max_iters: usize,
    initial: Option<StrategyProfile>,
) -> Result<DynamicsTrace, DynamicsError> {
    if max_iters == 0 {
        return Err(DynamicsError::InvalidMaxIters);
    }
    let mut rng = SplitMix64::new(schedule.seed);
    let mut profile = match initial {
        Some(p) => {
            p.validate(game)?;
            p
        }
        None => greedy_profile(game, delta, &mut rng)?,
    };
    let initial_profile = profile.clone();
    let graph = game.graph();

    let mut order: Vec<PlayerId> = game.players().iter().map(|p| p.id).collect();
    let mut steps = Vec::new();
    let mut converged = order.is_empty();

    'passes: while !converged {
        if schedule.kind == ScheduleKind::Random {
            rng.shuffle(&mut order);
        }
        let mut moved = false;
        for &player in &order {
            if steps.len() == max_iters {
                break 'passes;
            }
            let previous_cost = player_cost(graph, &profile, player, delta)?;
            let br = respond(game, &profile, player, delta, Some(&mut rng))?;
            let path_changed = br.cost < previous_cost - TOLERANCE;
            if path_changed {
                profile.set(player, br.path);
                moved = true;
            }
            steps.push(TraceStep {
                iteration: steps.len() + 1,
                player,
                previous_cost,
                new_cost: br.cost,
                potential_after: potential(graph, &profile, delta),
                path_changed,
                path: profile.get(player).cloned().unwrap_or_default(),
            });
        }
        converged = !moved;
    }

    let trace = DynamicsTrace {
        initial_profile,
        steps,
        converged,
        final_profile: profile,
    };
    if trace.converged {
        Ok(trace)
    } else {
        Err(DynamicsError::NotConverged {
            max_iters,
            trace: Box::new(trace),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::is_nash;
    use crate::game_core::{EdgeIx, EdgeRecord, GameGraph, Node, NodeIx, NodeKind, Player};

    const A: EdgeIx = EdgeIx(0);
    const B: EdgeIx = EdgeIx(1);

    fn d1(players: u32) -> Game {
        let g = GameGraph::build(
            vec![
                Node::new("r", NodeKind::Element),
                Node::new("l", NodeKind::Element),
            ],
            vec![
                EdgeRecord::new("a", "r", "l", 1.0),
                EdgeRecord::new("b", "r", "l", 3.0),
            ],
        )
        .unwrap();
        let ps = (1..=players)
            .map(|i| Player {
                id: PlayerId(i),
                root: NodeIx(0),
                leaf: NodeIx(1),
                label: String::new(),
            })
            .collect();
        Game::new(g, ps).unwrap()
    }

    #[test]
    fn d1_from_bb_converges_to_aa() {
        let game = d1(2);
        let start = StrategyProfile::from_paths([(PlayerId(1), vec![B]), (PlayerId(2), vec![B])]);
        let trace = run_dynamics(
            &game,
            Delta::ZERO,
            Schedule::round_robin(0),
            100,
            Some(start),
        )
        .unwrap();
        assert!(trace.converged);
        assert_eq!(trace.final_profile.get(PlayerId(1)), Some(&vec![A]));
        assert_eq!(trace.final_profile.get(PlayerId(2)), Some(&vec![A]));

        let first = &trace.steps[0];
        assert!(first.path_changed);
        assert_eq!((first.previous_cost, first.new_cost), (1.5, 1.0));
        let second = &trace.steps[1];
        assert!(second.path_changed);
        assert_eq!((second.previous_cost, second.new_cost), (3.0, 0.5));
        // One clean pass after the two moves.
        assert_eq!(trace.iterations(), 4);
        assert!(is_nash(&game, &trace.final_profile, Delta::ZERO).unwrap());
        assert_eq!(trace.replay(), trace.final_profile);
    }

    #[test]
    fn single_player_converges_in_one_pass() {
        let game = d1(1);
        let trace = run_dynamics(
            &game,
            Delta::new(1.0).unwrap(),
            Schedule::random(3),
            10,
            None,
        )
        .unwrap();
        assert_eq!(trace.iterations(), 1);
        assert_eq!(trace.final_profile.get(PlayerId(1)), Some(&vec![A]));
    }

    #[test]
    fn zero_iterations_rejected() {
        assert_eq!(
            run_dynamics(&d1(2), Delta::ZERO, Schedule::default(), 0, None).unwrap_err(),
            DynamicsError::InvalidMaxIters
        );
    }

    #[test]
    fn budget_exhaustion_returns_partial_trace() {
        let game = d1(2);
        let start = StrategyProfile::from_paths([(PlayerId(1), vec![B]), (PlayerId(2), vec![B])]);
        let err =
            run_dynamics(&game, Delta::ZERO, Schedule::round_robin(0), 1, Some(start)).unwrap_err();
        let DynamicsError::NotConverged { max_iters, trace } = err else {
            panic!("expected NotConverged");
        };
        assert_eq!(max_iters, 1);
        assert!(!trace.converged);
        assert_eq!(trace.steps.len(), 1);
    }

    #[test]
    fn same_seed_same_trace() {
        let game = d1(2);
        let run =
            |seed| run_dynamics(&game, Delta::ZERO, Schedule::random(seed), 50, None).unwrap();
        assert_eq!(run(11), run(11));
    }
}
