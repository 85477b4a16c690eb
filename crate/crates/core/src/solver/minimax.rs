use rustc_hash::FxHashMap;

use super::{SolveOptions, SolveReport, SolverError};
use crate::game::{k_subsets, Game, Outcome, Player, Point, PointSet, Position, Winner};

const WIN: i8 = 1;
const DRAW: i8 = 0;
const LOSS: i8 = -1;

/// Memoized negamax over `(mover's set, opponent's set)`. Values are from
/// the mover's side: a move completing one of the mover's lines scores as
/// a loss, a full board without lines as a draw.
struct Search<'g> {
    game: &'g Game,
    opts: SolveOptions,
    table: FxHashMap<(u64, u64), i8>,
    states: u64,
}

impl<'g> Search<'g> {
    fn new(game: &'g Game, opts: SolveOptions) -> Self {
        Search {
            game,
            opts,
            table: FxHashMap::default(),
            states: 0,
        }
    }

    fn moves(&self, free: PointSet) -> Vec<Point> {
        let mut v = free.to_vec();
        if self.opts.reverse_order {
            v.reverse();
        }
        v
    }

    /// Value of the move `x` for the mover.
    fn move_value(&mut self, mover: PointSet, other: PointSet, x: Point, free_left: usize) -> i8 {
        let next = mover.with(x);
        if self.game.lines.completes_line(next, x) {
            LOSS
        } else if free_left == 0 {
            DRAW
        } else {
            -self.value(other, next)
        }
    }

    fn value(&mut self, mover: PointSet, other: PointSet) -> i8 {
        self.states += 1;
        let key = (mover.bits(), other.bits());
        if self.opts.use_table {
            if let Some(&v) = self.table.get(&key) {
                return v;
            }
        }
        let free = mover.union(other).complement(self.game.n);
        let mut best = if free.is_empty() { DRAW } else { LOSS };
        for x in self.moves(free) {
            let v = self.move_value(mover, other, x, free.len() - 1);
            if v > best {
                best = v;
                if best == WIN {
                    break;
                }
            }
        }
        if self.opts.use_table {
            self.table.insert(key, best);
        }
        best
    }

    /// Follows the first move achieving the value at every step.
    fn principal_variation(&mut self) -> (Vec<Point>, Option<u32>) {
        let (mut mover, mut other) = (PointSet::EMPTY, PointSet::EMPTY);
        let mut pv = Vec::new();
        loop {
            let free = mover.union(other).complement(self.game.n);
            if free.is_empty() {
                return (pv, None);
            }
            let target = self.value(mover, other);
            let x = self
                .moves(free)
                .into_iter()
                .find(|&x| self.move_value(mover, other, x, free.len() - 1) == target)
                .expect("the value is achieved by some move");
            pv.push(x);
            let next = mover.with(x);
            if self.game.lines.completes_line(next, x) {
                return (pv.clone(), Some(pv.len() as u32));
            }
            (mover, other) = (other, next);
        }
    }
}

fn check_cap(game: &Game, cap: usize) -> Result<(), SolverError> {
    if game.n > cap {
        Err(SolverError::TooLarge { n: game.n, cap })
    } else {
        Ok(())
    }
}

fn winner_of(root: i8) -> Winner {
    match root {
        WIN => Winner::PIWin,
        LOSS => Winner::PIIWin,
        _ => Winner::Draw,
    }
}

/// Exact outcome of the game under optimal play.
pub fn solve_with(game: &Game, opts: SolveOptions) -> Result<SolveReport, SolverError> {
    check_cap(game, opts.cap)?;
    let mut s = Search::new(game, opts);
    let root = s.value(PointSet::EMPTY, PointSet::EMPTY);
    let (pv, loss_time) = s.principal_variation();
    let outcome = Outcome {
        winner: winner_of(root),
        loss_time,
    };
    debug_assert_eq!(
        loss_time.map(Outcome::lost_at).map_or(Winner::Draw, |o| o.winner),
        outcome.winner
    );
    Ok(SolveReport {
        outcome,
        principal_variation: pv.into_iter().map(PointSet::singleton).collect(),
        states_visited: s.states,
        table_size: s.table.len(),
    })
}

pub fn solve(game: &Game) -> Result<SolveReport, SolverError> {
    solve_with(game, SolveOptions::default())
}

/// An optimal move for the side to move, or `None` on a full board.
pub fn best_move(game: &Game, pos: &Position, cap: usize) -> Result<Option<Point>, SolverError> {
    check_cap(game, cap)?;
    let (mover, other) = match pos.to_move {
        Player::First => (pos.a, pos.b),
        Player::Second => (pos.b, pos.a),
    };
    let free = pos.free(game.n);
    if free.is_empty() {
        return Ok(None);
    }
    let mut s = Search::new(
        game,
        SolveOptions {
            cap,
            ..Default::default()
        },
    );
    let target = s.value(mover, other);
    Ok(free
        .iter()
        .find(|&x| s.move_value(mover, other, x, free.len() - 1) == target))
}

/// In a first-player win, the index of the second player's losing move
/// when the first player hurries (among moves that keep the win) and the
/// second player stalls.
pub fn earliest_forced_loss(game: &Game) -> Result<u32, SolverError> {
    earliest_forced_loss_with(game, SolveOptions::default())
}

pub fn earliest_forced_loss_with(game: &Game, opts: SolveOptions) -> Result<u32, SolverError> {
    check_cap(game, opts.cap)?;
    let mut s = Search::new(
        game,
        SolveOptions {
            use_table: true,
            ..opts
        },
    );
    let root = s.value(PointSet::EMPTY, PointSet::EMPTY);
    if root != WIN {
        let report = solve_with(game, opts)?;
        return Err(SolverError::NotFirstPlayerWin(report.outcome));
    }
    let mut memo = FxHashMap::default();
    Ok(delay(&mut s, &mut memo, PointSet::EMPTY, PointSet::EMPTY, true))
}

fn delay(
    s: &mut Search<'_>,
    memo: &mut FxHashMap<(u64, u64), u32>,
    mover: PointSet,
    other: PointSet,
    first_to_move: bool,
) -> u32 {
    let key = (mover.bits(), other.bits());
    if let Some(&t) = memo.get(&key) {
        return t;
    }
    let free = mover.union(other).complement(s.game.n);
    let played = (mover.len() + other.len()) as u32;
    let mut best: Option<u32> = None;
    for x in free.iter() {
        let next = mover.with(x);
        let t = if first_to_move {
            if s.move_value(mover, other, x, free.len() - 1) != WIN {
                continue;
            }
            delay(s, memo, other, next, false)
        } else if s.game.lines.completes_line(next, x) {
            played + 1
        } else {
            delay(s, memo, other, next, true)
        };
        best = Some(match best {
            None => t,
            Some(b) if first_to_move => b.min(t),
            Some(b) => b.max(t),
        });
    }
    let t = best.expect("a won position has a winning continuation");
    memo.insert(key, t);
    t
}

/// Memoized search of the variant where a move claims any nonempty set of
/// free points; moves are tried by increasing size.
struct PlusSearch<'g> {
    game: &'g Game,
    table: FxHashMap<(u64, u64), i8>,
    states: u64,
}

impl<'g> PlusSearch<'g> {
    fn moves(free: PointSet) -> impl Iterator<Item = PointSet> {
        (1..=free.len()).flat_map(move |k| k_subsets(free, k))
    }

    fn move_value(&mut self, mover: PointSet, other: PointSet, m: PointSet, n: usize) -> i8 {
        let next = mover.union(m);
        if self.game.contains_line(next) {
            LOSS
        } else if next.union(other).len() == n {
            DRAW
        } else {
            -self.value(other, next)
        }
    }

    fn value(&mut self, mover: PointSet, other: PointSet) -> i8 {
        self.states += 1;
        let key = (mover.bits(), other.bits());
        if let Some(&v) = self.table.get(&key) {
            return v;
        }
        let n = self.game.n;
        let free = mover.union(other).complement(n);
        let mut best = if free.is_empty() { DRAW } else { LOSS };
        for m in Self::moves(free) {
            let v = self.move_value(mover, other, m, n);
            if v > best {
                best = v;
                if best == WIN {
                    break;
                }
            }
        }
        self.table.insert(key, best);
        best
    }
}

/// Exact outcome of the plus variant.
pub fn solve_plus(game: &Game, cap: usize) -> Result<SolveReport, SolverError> {
    check_cap(game, cap)?;
    let mut s = PlusSearch {
        game,
        table: FxHashMap::default(),
        states: 0,
    };
    let root = s.value(PointSet::EMPTY, PointSet::EMPTY);
    let (mut mover, mut other) = (PointSet::EMPTY, PointSet::EMPTY);
    let mut pv = Vec::new();
    let mut loss_time = None;
    while mover.union(other).len() < game.n {
        let target = s.value(mover, other);
        let free = mover.union(other).complement(game.n);
        let m = PlusSearch::moves(free)
            .find(|&m| s.move_value(mover, other, m, game.n) == target)
            .expect("the value is achieved by some move");
        pv.push(m);
        let next = mover.union(m);
        if game.contains_line(next) {
            loss_time = Some(pv.len() as u32);
            break;
        }
        (mover, other) = (other, next);
    }
    Ok(SolveReport {
        outcome: Outcome {
            winner: winner_of(root),
            loss_time,
        },
        principal_variation: pv,
        states_visited: s.states,
        table_size: s.table.len(),
    })
}
