use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use super::SolverError;
use crate::game::{Game, Player, Point, Position};
use crate::strategies::Strategy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Goal {
    /// The opponent completes a line first in every play-out.
    Win,
    /// The owner never completes a line first.
    NeverLose,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled { playouts: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    Pass,
    Counterexample { history: Vec<Point>, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub leaves_explored: u64,
    /// Opponent-to-move nodes stored in the transposition set.
    pub states: u64,
    pub mode: Mode,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

struct Failure {
    reason: String,
}

struct Run<'g> {
    game: &'g Game,
    goal: Goal,
    history: Vec<Point>,
    leaves: u64,
    seen: FxHashSet<(u64, u64, Vec<u32>)>,
}

impl Run<'_> {
    fn fail(&self, reason: impl Into<String>) -> Result<(), Failure> {
        Err(Failure { reason: reason.into() })
    }

    /// A full board without a loss.
    fn drawn(&mut self) -> Result<(), Failure> {
        self.leaves += 1;
        match self.goal {
            Goal::Win => self.fail("the game was drawn"),
            Goal::NeverLose => Ok(()),
        }
    }

    /// Plays the strategy's move; `Ok(None)` when the game ended.
    fn owner_step(
        &mut self,
        pos: &Position,
        strat: &mut dyn Strategy,
        last: Option<Point>,
    ) -> Result<Option<Position>, Failure> {
        let x = match strat.next_move(pos, last) {
            Ok(x) => x,
            Err(e) => return Err(Failure { reason: e.to_string() }),
        };
        self.history.push(x);
        let (next, lost) = match self.game.apply_move(pos, x) {
            Ok(r) => r,
            Err(e) => {
                return Err(Failure {
                    reason: format!("illegal move {x}: {e}"),
                })
            }
        };
        if lost {
            return Err(Failure {
                reason: "the strategy's owner completed a line".into(),
            });
        }
        if next.moves_played() == self.game.n {
            self.drawn()?;
            return Ok(None);
        }
        Ok(Some(next))
    }

    fn owner_turn(&mut self, pos: &Position, mut strat: Box<dyn Strategy>, last: Option<Point>) -> Result<(), Failure> {
        let depth = self.history.len();
        if let Some(next) = self.owner_step(pos, strat.as_mut(), last)? {
            self.opponent_turn(&next, strat)?;
        }
        self.history.truncate(depth);
        Ok(())
    }

    fn opponent_turn(&mut self, pos: &Position, strat: Box<dyn Strategy>) -> Result<(), Failure> {
        let mut state = Vec::new();
        strat.state_key(&mut state);
        let key = (pos.a.bits(), pos.b.bits(), state);
        if self.seen.contains(&key) {
            return Ok(());
        }
        for x in pos.free(self.game.n).iter() {
            self.history.push(x);
            let (next, lost) = self.game.apply_move(pos, x).expect("free point");
            if lost {
                self.leaves += 1;
            } else if next.moves_played() == self.game.n {
                self.drawn()?;
            } else {
                self.owner_turn(&next, strat.clone(), Some(x))?;
            }
            self.history.pop();
        }
        self.seen.insert(key);
        Ok(())
    }

    fn playout(&mut self, strat: &mut dyn Strategy, owner: Player, rng: &mut ChaCha8Rng) -> Result<(), Failure> {
        self.history.clear();
        let mut pos = Position::empty();
        let mut last = None;
        loop {
            if pos.to_move == owner {
                match self.owner_step(&pos, strat, last)? {
                    Some(next) => pos = next,
                    None => return Ok(()),
                }
            } else {
                let free = pos.free(self.game.n);
                let x = free.iter().nth(rng.gen_range(0..free.len())).expect("free point");
                self.history.push(x);
                let (next, lost) = self.game.apply_move(&pos, x).expect("free point");
                if lost {
                    self.leaves += 1;
                    return Ok(());
                }
                if next.moves_played() == self.game.n {
                    return self.drawn();
                }
                pos = next;
                last = Some(x);
            }
        }
    }
}

/// Checks a strategy against every opponent (exhaustive mode, memoized on
/// position and strategy state) or against seeded uniformly random
/// opponents.
pub fn verify_strategy(
    game: &Game,
    strategy: &dyn Strategy,
    owner: Player,
    goal: Goal,
    mode: Mode,
) -> Result<VerifyReport, SolverError> {
    if strategy.owner() != owner {
        return Err(SolverError::OwnerMismatch {
            strategy: strategy.name().to_string(),
            owner,
        });
    }
    let mut run = Run {
        game,
        goal,
        history: Vec::new(),
        leaves: 0,
        seen: FxHashSet::default(),
    };
    let result = match mode {
        Mode::Exhaustive => match owner {
            Player::First => run.owner_turn(&Position::empty(), strategy.clone_box(), None),
            Player::Second => run.opponent_turn(&Position::empty(), strategy.clone_box()),
        },
        Mode::Sampled { playouts, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..playouts).try_for_each(|_| run.playout(strategy.clone_box().as_mut(), owner, &mut rng))
        }
    };
    let verdict = match result {
        Ok(()) => Verdict::Pass,
        Err(f) => Verdict::Counterexample {
            history: run.history.clone(),
            reason: f.reason,
        },
    };
    Ok(VerifyReport {
        verdict,
        leaves_explored: run.leaves,
        states: run.seen.len() as u64,
        mode,
    })
}
