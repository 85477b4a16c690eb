use super::fill::DirectFill;
use super::{Strategy, StrategyError};
use crate::game::{Player, Point, Position};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Phase {
    /// After each own move the position is `(A + extra, opp(A))`.
    Building {
        extra: Option<Point>,
    },
    Direct(DirectFill),
}

/// First-player strategy for the pairs game on `Z_b x Z_2`.
///
/// Keeps one unanswered extra point `(x, y)`. An opponent move in a pair
/// `z` with `1 <= z - x <= b'` is a direct win; any other move except the
/// opposite of the extra point is mirrored. When the position is balanced
/// the first empty pair is opened at side 0, and in the last empty pair the
/// side is chosen to make the number of side-1 points odd.
#[derive(Clone, Debug)]
pub struct PairsStrategy {
    b: usize,
    phase: Phase,
}

impl PairsStrategy {
    pub fn new(b: usize) -> Self {
        PairsStrategy {
            b,
            phase: Phase::Building { extra: None },
        }
    }

    fn balanced_move(&self, pos: &Position) -> Result<Point, StrategyError> {
        let n = 2 * self.b;
        let free = pos.free(n);
        let empty: Vec<usize> = (0..self.b)
            .filter(|&x| free.contains(2 * x) && free.contains(2 * x + 1))
            .collect();
        if empty.len() * 2 != free.len() {
            return Err(StrategyError::Contradiction(format!(
                "expected a balanced position, got {} / {}",
                pos.a, pos.b
            )));
        }
        let x = *empty
            .first()
            .ok_or_else(|| StrategyError::NoMove("no empty pair left".into()))?;
        let half = (self.b - 1) / 2;
        let y = if x >= half && empty.len() == 1 {
            let ones = pos.a.iter().filter(|p| p % 2 == 1).count();
            usize::from(ones % 2 == 0)
        } else {
            0
        };
        Ok(2 * x + y)
    }
}

impl Strategy for PairsStrategy {
    fn name(&self) -> &str {
        "pairs"
    }

    fn owner(&self) -> Player {
        Player::First
    }

    fn next_move(&mut self, pos: &Position, last: Option<Point>) -> Result<Point, StrategyError> {
        let n = 2 * self.b;
        let extra = match self.phase {
            Phase::Direct(fill) => return fill.reply(pos, last, n, |p| p ^ 1),
            Phase::Building { extra } => extra,
        };
        if let (Some(e), Some(l)) = (extra, last) {
            let d = (l / 2 + self.b - e / 2) % self.b;
            if (1..=(self.b - 1) / 2).contains(&d) {
                self.phase = Phase::Direct(DirectFill { forbidden: l });
                return Ok(e ^ 1);
            }
            if l != e ^ 1 {
                if pos.claimed().contains(l ^ 1) {
                    return Err(StrategyError::Contradiction(format!("mirror point {} is taken", l ^ 1)));
                }
                return Ok(l ^ 1);
            }
        }
        let p = self.balanced_move(pos)?;
        self.phase = Phase::Building { extra: Some(p) };
        Ok(p)
    }

    fn state_key(&self, out: &mut Vec<u32>) {
        match self.phase {
            Phase::Building { extra } => {
                out.push(0);
                out.push(extra.map_or(u32::MAX, |e| e as u32));
            }
            Phase::Direct(f) => {
                out.push(1);
                f.key(out);
            }
        }
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
