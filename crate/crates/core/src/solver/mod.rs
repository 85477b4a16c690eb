//! Exact game-tree search and strategy verification.

mod minimax;
mod verify;

use serde::Serialize;
use thiserror::Error;

use crate::game::{GameError, Outcome, Player, Point, PointSet};

pub use minimax::{best_move, earliest_forced_loss, earliest_forced_loss_with, solve, solve_plus, solve_with};
pub use verify::{verify_strategy, Goal, Mode, Verdict, VerifyReport};

/// Largest board the exact solver accepts by default.
pub const DEFAULT_SOLVE_CAP: usize = 16;
/// Largest board for the plus variant, whose branching is exponential.
pub const DEFAULT_PLUS_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub cap: usize,
    pub use_table: bool,
    /// Try moves from the highest point down.
    pub reverse_order: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            cap: DEFAULT_SOLVE_CAP,
            use_table: true,
            reverse_order: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub outcome: Outcome,
    /// One claimed set per move; singletons outside the plus variant.
    pub principal_variation: Vec<PointSet>,
    pub states_visited: u64,
    pub table_size: usize,
}

impl SolveReport {
    /// The principal variation as points, for single-point moves.
    pub fn moves(&self) -> Option<Vec<Point>> {
        self.principal_variation
            .iter()
            .map(|s| if s.len() == 1 { s.first() } else { None })
            .collect()
    }
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("board of {n} points exceeds the solver cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("the first player does not win (outcome {0:?})")]
    NotFirstPlayerWin(Outcome),
    #[error("strategy {strategy} does not belong to {owner}")]
    OwnerMismatch { strategy: String, owner: Player },
    #[error(transparent)]
    Game(#[from] GameError),
}
