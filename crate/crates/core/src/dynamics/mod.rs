//! Best responses and best-response dynamics.

mod best_response;
mod rng;
mod run;

use thiserror::Error;

use crate::game_core::{GameError, PlayerId};

pub use best_response::{
    best_response, best_response_cost, best_response_seeded, improving_deviation, is_nash,
    reweight, BestResponse, Deviation, ReweightedGraph,
};
pub(crate) use best_response::{improving_deviation_unchecked, is_nash_unchecked};
pub use rng::SplitMix64;
pub use run::{greedy_profile, run_dynamics, DynamicsTrace, Schedule, ScheduleKind, TraceStep};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("no root-to-leaf path for player {0}")]
    NoPath(PlayerId),
    #[error("max_iters must be at least 1")]
    InvalidMaxIters,
    #[error("no equilibrium reached within {max_iters} iterations")]
    NotConverged {
        max_iters: usize,
        trace: Box<DynamicsTrace>,
    },
}
