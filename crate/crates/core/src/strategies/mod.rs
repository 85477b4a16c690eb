//! Scripted strategies as explicit state machines.
//!
//! A strategy is asked for a move only on its owner's turns, in order, and
//! is told the opponent's latest move. Its internal state is exposed through
//! [`Strategy::state_key`] so the verifier can merge transpositions.

mod bucket;
mod even;
mod fill;
mod mirror;
mod pairing;
mod pairs;

use thiserror::Error;

use crate::constructions::{pairs_game, Construction, ConstructionError};
use crate::game::{find_fpf_involution, FpfSearch, Game, Player, Point, Position, DEFAULT_GROUP_CAP};

pub use bucket::OddBucketStrategy;
pub use even::EvenGeneralStrategy;
pub use mirror::MirrorStrategy;
pub use pairing::{InvolutionPairingStrategy, TorusPairingStrategy};
pub use pairs::PairsStrategy;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("no move satisfies the strategy's rules: {0}")]
    NoMove(String),
    /// An internal invariant of the strategy failed.
    #[error("strategy invariant violated: {0}")]
    Contradiction(String),
    #[error("strategy {strategy} does not apply to {game}: {why}")]
    Mismatch {
        strategy: String,
        game: String,
        why: String,
    },
    #[error("unknown strategy {0:?}")]
    Unknown(String),
}

pub trait Strategy: Send {
    fn name(&self) -> &str;

    fn owner(&self) -> Player;

    /// The owner's next move. `last` is the opponent's latest move, `None`
    /// only for the first player's opening move.
    fn next_move(&mut self, pos: &Position, last: Option<Point>) -> Result<Point, StrategyError>;

    /// Appends a complete encoding of the internal state.
    fn state_key(&self, out: &mut Vec<u32>);

    fn clone_box(&self) -> Box<dyn Strategy>;
}

impl Clone for Box<dyn Strategy> {
    fn clone(&self) -> Self {
        self.clone_box()
    }
}

/// Takes the lowest free point.
#[derive(Clone, Debug)]
pub struct LowestFreeStrategy {
    n: usize,
    owner: Player,
}

impl LowestFreeStrategy {
    pub fn new(n: usize, owner: Player) -> Self {
        LowestFreeStrategy { n, owner }
    }
}

impl Strategy for LowestFreeStrategy {
    fn name(&self) -> &str {
        "naive"
    }

    fn owner(&self) -> Player {
        self.owner
    }

    fn next_move(&mut self, pos: &Position, _last: Option<Point>) -> Result<Point, StrategyError> {
        pos.free(self.n)
            .first()
            .ok_or_else(|| StrategyError::NoMove("board is full".into()))
    }

    fn state_key(&self, _out: &mut Vec<u32>) {}

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Strategy names accepted by [`strategy_for`].
pub const STRATEGY_NAMES: [&str; 9] = [
    "auto",
    "odd-bucket",
    "pairs",
    "even-general",
    "torus-pairing",
    "involution-pairing",
    "copy-mirror",
    "product",
    "naive",
];

fn mismatch(strategy: &str, game: &Game, why: impl Into<String>) -> StrategyError {
    StrategyError::Mismatch {
        strategy: strategy.into(),
        game: game.name.clone(),
        why: why.into(),
    }
}

fn built(r: Result<Game, ConstructionError>) -> Result<Game, StrategyError> {
    r.map_err(|e| StrategyError::Contradiction(format!("cannot rebuild base game: {e}")))
}

/// Default strategy for a construction: the scripted first-player win where
/// one exists, otherwise the pairing strategy.
fn auto_name(c: &Construction) -> &'static str {
    match c {
        Construction::OddComposite { .. } => "odd-bucket",
        Construction::Pairs { .. } | Construction::PairsImplicit { .. } => "pairs",
        Construction::EvenGeneral { .. } => "even-general",
        Construction::Torus { q, .. } if q % 2 == 1 => "torus-pairing",
        Construction::Copies { .. } => "copy-mirror",
        Construction::ProductTorus { .. } => "product",
        _ => "involution-pairing",
    }
}

/// Builds the named strategy for `game`.
pub fn strategy_for(name: &str, game: &Game) -> Result<Box<dyn Strategy>, StrategyError> {
    let origin = game.origin.as_ref();
    let name = if name == "auto" {
        match origin {
            Some(c) => auto_name(c),
            None => "involution-pairing",
        }
    } else {
        name
    };
    match (name, origin) {
        ("naive", _) => Ok(Box::new(LowestFreeStrategy::new(game.n, Player::First))),
        ("odd-bucket", Some(Construction::OddComposite { p, q })) => Ok(Box::new(OddBucketStrategy::new(*p, *q))),
        ("pairs", Some(Construction::Pairs { b } | Construction::PairsImplicit { b })) => {
            Ok(Box::new(PairsStrategy::new(*b)))
        }
        ("even-general", Some(Construction::EvenGeneral { a, b })) => Ok(Box::new(EvenGeneralStrategy::new(*a, *b))),
        ("torus-pairing", Some(Construction::Torus { q, d })) => {
            if q % 2 == 0 {
                return Err(mismatch(
                    name,
                    game,
                    "x -> -x has fixed points besides 0 when q is even",
                ));
            }
            Ok(Box::new(TorusPairingStrategy::new(*q, *d)))
        }
        ("involution-pairing", _) => match find_fpf_involution(game, DEFAULT_GROUP_CAP) {
            FpfSearch::Found(g) => Ok(Box::new(InvolutionPairingStrategy::new(g))),
            FpfSearch::NoneExists { group_order } => Err(mismatch(
                name,
                game,
                format!("the generated group (order {group_order}) has no fixed-point-free involution"),
            )),
            FpfSearch::Inconclusive { visited } => Err(mismatch(
                name,
                game,
                format!("group search stopped after {visited} elements"),
            )),
        },
        ("copy-mirror", Some(Construction::Copies { base, c })) => {
            let base_game = built(base.build())?;
            let inner = strategy_for("auto", &base_game)?;
            if inner.owner() != Player::First {
                return Err(mismatch(
                    name,
                    game,
                    "the base strategy must belong to the first player",
                ));
            }
            Ok(Box::new(MirrorStrategy::copies("copy-mirror", inner, base_game.n, *c)))
        }
        ("product", Some(Construction::ProductTorus { d })) => {
            let base_game = built(pairs_game(3))?;
            let inner = strategy_for("pairs", &base_game)?;
            Ok(Box::new(MirrorStrategy::product("product", inner, *d)))
        }
        ("odd-bucket" | "pairs" | "even-general" | "torus-pairing" | "copy-mirror" | "product", _) => Err(mismatch(
            name,
            game,
            "the game was not built by the matching construction",
        )),
        _ => Err(StrategyError::Unknown(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::odd_composite;

    #[test]
    fn auto_picks_by_origin() {
        let g = odd_composite(3, 3).unwrap();
        assert_eq!(strategy_for("auto", &g).unwrap().name(), "odd-bucket");
        let p = pairs_game(3).unwrap();
        assert_eq!(strategy_for("auto", &p).unwrap().name(), "pairs");
        assert!(matches!(
            strategy_for("odd-bucket", &p),
            Err(StrategyError::Mismatch { .. })
        ));
        assert!(matches!(strategy_for("bogus", &p), Err(StrategyError::Unknown(_))));
    }

    #[test]
    fn naive_takes_lowest() {
        let mut s = LowestFreeStrategy::new(6, Player::First);
        let pos = Position::new([0].into_iter().collect(), [1].into_iter().collect()).unwrap();
        assert_eq!(s.next_move(&pos, Some(1)).unwrap(), 2);
    }
}
