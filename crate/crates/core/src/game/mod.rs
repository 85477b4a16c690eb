//! Game model: boards, line stores, positions and the automorphism checks.
//!
//! Points are indexed `0..n`. Structured boards (bins, tori, copies) carry a
//! [`Layout`] that maps an index to its coordinates in row-major order.

mod group;
mod json;
mod lines;
mod perm;
mod pointset;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::Construction;

pub use group::{find_fpf_involution, is_transitive, orbit, validate_generators, FpfSearch, DEFAULT_GROUP_CAP};
pub use json::GameJson;
pub use lines::{ExplicitLines, LineOracle, LineStore};
pub use perm::Permutation;
pub use pointset::{binomial, k_subsets, Point, PointSet, MAX_POINTS};

#[derive(Debug, Error)]
pub enum GameError {
    #[error("board of {0} points exceeds the {MAX_POINTS}-point limit")]
    BoardTooLarge(usize),
    #[error("empty line")]
    EmptyLine,
    #[error("duplicate line {0}")]
    DuplicateLine(PointSet),
    #[error("set {set} has points outside a board of {n}")]
    PointOutOfRange { set: PointSet, n: usize },
    #[error("not a bijection: {image:?}")]
    NotABijection { image: Vec<Point> },
    #[error("generator {index} acts on {len} points, board has {n}")]
    GeneratorSize { index: usize, len: usize, n: usize },
    #[error("generator {generator} maps line {line} to non-line {image}")]
    GeneratorBreaksLine {
        generator: usize,
        line: PointSet,
        image: PointSet,
    },
    #[error("line validation needs {0} subset checks, above the desk limit")]
    ValidationTooLarge(u64),
    #[error("point {0} is already claimed")]
    Claimed(Point),
    #[error("point {point} is off a board of {n}")]
    OffBoard { point: Point, n: usize },
    #[error("invalid position: {0}")]
    BadPosition(String),
    #[error("malformed game JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot rebuild implicit game: {0}")]
    Rebuild(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    #[serde(rename = "PI")]
    First,
    #[serde(rename = "PII")]
    Second,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::First => Player::Second,
            Player::Second => Player::First,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::First => "PI",
            Player::Second => "PII",
        })
    }
}

/// Claimed points of both players and the side to move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Position {
    pub a: PointSet,
    pub b: PointSet,
    pub to_move: Player,
}

impl Position {
    pub fn empty() -> Self {
        Position {
            a: PointSet::EMPTY,
            b: PointSet::EMPTY,
            to_move: Player::First,
        }
    }

    /// Builds a position, deriving the side to move from the set sizes.
    pub fn new(a: PointSet, b: PointSet) -> Result<Self, GameError> {
        if !a.is_disjoint(b) {
            return Err(GameError::BadPosition(format!("{a} and {b} overlap")));
        }
        let to_move = match a.len().checked_sub(b.len()) {
            Some(0) => Player::First,
            Some(1) => Player::Second,
            _ => return Err(GameError::BadPosition(format!("|a| = {}, |b| = {}", a.len(), b.len()))),
        };
        Ok(Position { a, b, to_move })
    }

    pub fn claimed(&self) -> PointSet {
        self.a.union(self.b)
    }

    pub fn free(&self, n: usize) -> PointSet {
        self.claimed().complement(n)
    }

    pub fn set_of(&self, p: Player) -> PointSet {
        match p {
            Player::First => self.a,
            Player::Second => self.b,
        }
    }

    /// Number of moves played so far.
    pub fn moves_played(&self) -> usize {
        self.a.len() + self.b.len()
    }

    /// Claims `x` for the side to move without checking for a loss.
    pub fn play(&self, x: Point) -> Position {
        let mut next = *self;
        match self.to_move {
            Player::First => next.a.insert(x),
            Player::Second => next.b.insert(x),
        }
        next.to_move = self.to_move.other();
        next
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Winner {
    PIWin,
    PIIWin,
    Draw,
}

/// Result of a game: the winner and, unless drawn, the index (from 1) of
/// the move on which the loser first contained a line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Outcome {
    pub winner: Winner,
    pub loss_time: Option<u32>,
}

impl Outcome {
    pub fn draw() -> Self {
        Outcome {
            winner: Winner::Draw,
            loss_time: None,
        }
    }

    /// The player moving at `time` completed a line.
    pub fn lost_at(time: u32) -> Self {
        let winner = if time % 2 == 1 { Winner::PIIWin } else { Winner::PIWin };
        Outcome {
            winner,
            loss_time: Some(time),
        }
    }
}

/// Mixed-radix coordinates of board indices, most significant first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Layout {
    pub dims: Vec<usize>,
    pub labels: Vec<String>,
}

impl Layout {
    pub fn flat(n: usize) -> Self {
        Layout {
            dims: vec![n],
            labels: vec!["point".into()],
        }
    }

    pub fn grid(dims: Vec<usize>, labels: &[&str]) -> Self {
        debug_assert_eq!(dims.len(), labels.len());
        Layout {
            dims,
            labels: labels.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn coords(&self, mut x: Point) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = x % d;
            x /= d;
        }
        out
    }

    pub fn index(&self, coords: &[usize]) -> Point {
        coords.iter().zip(&self.dims).fold(0, |acc, (&c, &d)| acc * d + c % d)
    }
}

/// A board with its losing lines and a set of line-preserving generators.
#[derive(Clone, Debug)]
pub struct Game {
    pub n: usize,
    pub name: String,
    pub lines: LineStore,
    pub generators: Vec<Permutation>,
    pub layout: Layout,
    /// The construction this game was built from, if any.
    pub origin: Option<Construction>,
}

impl Game {
    pub fn new(
        n: usize,
        name: impl Into<String>,
        lines: LineStore,
        generators: Vec<Permutation>,
    ) -> Result<Self, GameError> {
        if n > MAX_POINTS {
            return Err(GameError::BoardTooLarge(n));
        }
        for (index, g) in generators.iter().enumerate() {
            if g.len() != n {
                return Err(GameError::GeneratorSize { index, len: g.len(), n });
            }
        }
        Ok(Game {
            n,
            name: name.into(),
            lines,
            generators,
            layout: Layout::flat(n),
            origin: None,
        })
    }

    pub fn with_layout(mut self, layout: Layout) -> Self {
        debug_assert_eq!(layout.dims.iter().product::<usize>(), self.n);
        self.layout = layout;
        self
    }

    pub fn with_origin(mut self, origin: Construction) -> Self {
        self.origin = Some(origin);
        self
    }

    pub fn board(&self) -> PointSet {
        PointSet::full(self.n)
    }

    pub fn contains_line(&self, s: PointSet) -> bool {
        self.lines.contains_line(s)
    }

    /// Claims `x` for the side to move; `lost` reports whether the mover's
    /// new set contains a line. Losing moves are legal.
    pub fn apply_move(&self, pos: &Position, x: Point) -> Result<(Position, bool), GameError> {
        if x >= self.n {
            return Err(GameError::OffBoard { point: x, n: self.n });
        }
        if pos.claimed().contains(x) {
            return Err(GameError::Claimed(x));
        }
        let next = pos.play(x);
        let lost = self.lines.completes_line(next.set_of(pos.to_move), x);
        Ok((next, lost))
    }

    /// Replays a move list from the empty board, stopping at the first loss.
    pub fn replay(&self, moves: &[Point]) -> Result<(Position, Option<Outcome>), GameError> {
        let mut pos = Position::empty();
        for (i, &x) in moves.iter().enumerate() {
            let (next, lost) = self.apply_move(&pos, x)?;
            pos = next;
            if lost {
                if i + 1 != moves.len() {
                    return Err(GameError::BadPosition(format!(
                        "moves continue after the loss at move {}",
                        i + 1
                    )));
                }
                return Ok((pos, Some(Outcome::lost_at(i as u32 + 1))));
            }
        }
        let done = (pos.moves_played() == self.n).then(Outcome::draw);
        Ok((pos, done))
    }

    pub fn to_json(&self) -> GameJson {
        GameJson::from_game(self)
    }

    pub fn from_json(json: &GameJson) -> Result<Self, GameError> {
        json.to_game()
    }
}
