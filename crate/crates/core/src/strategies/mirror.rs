use super::{Strategy, StrategyError};
use crate::constructions::torus_negation;
use crate::game::{Player, Point, PointSet, Position};

/// First player on a board with a distinguished base copy `Z` and an
/// involution fixing `Z` point-wise: runs the base strategy inside `Z` and
/// answers every move outside `Z` with its mirror image.
#[derive(Clone)]
pub struct MirrorStrategy {
    name: &'static str,
    base: Box<dyn Strategy>,
    /// `embed[i]` is the board point of base point `i`.
    embed: Vec<Point>,
    mirror: Vec<Point>,
}

impl MirrorStrategy {
    /// `c` copies of a base board of `base_n` points, copy `2i+1` mirrored
    /// onto copy `2i+2`.
    pub fn copies(name: &'static str, base: Box<dyn Strategy>, base_n: usize, c: usize) -> Self {
        let mirror = (0..base_n * c)
            .map(|p| {
                let (copy, x) = (p / base_n, p % base_n);
                let other = match copy {
                    0 => 0,
                    k if k % 2 == 1 => k + 1,
                    k => k - 1,
                };
                other * base_n + x
            })
            .collect();
        MirrorStrategy {
            name,
            base,
            embed: (0..base_n).collect(),
            mirror,
        }
    }

    /// `Z_3^d x H` with `H` on 6 points: `(t, h) -> (-t, h)`, base copy
    /// `t = 0`.
    pub fn product(name: &'static str, base: Box<dyn Strategy>, d: usize) -> Self {
        let neg = torus_negation(3, d);
        let tn = 3usize.pow(d as u32);
        let mirror = (0..6 * tn).map(|p| 6 * neg(p / 6) + p % 6).collect();
        MirrorStrategy {
            name,
            base,
            embed: (0..6).collect(),
            mirror,
        }
    }

    fn project(&self, s: PointSet) -> PointSet {
        self.embed
            .iter()
            .enumerate()
            .filter(|(_, &p)| s.contains(p))
            .map(|(i, _)| i)
            .collect()
    }
}

impl Strategy for MirrorStrategy {
    fn name(&self) -> &str {
        self.name
    }

    fn owner(&self) -> Player {
        Player::First
    }

    fn next_move(&mut self, pos: &Position, last: Option<Point>) -> Result<Point, StrategyError> {
        let local = match last {
            None => None,
            Some(l) => match self.embed.iter().position(|&p| p == l) {
                Some(i) => Some(i),
                None => {
                    let reply = self.mirror[l];
                    if reply == l || pos.claimed().contains(reply) {
                        return Err(StrategyError::Contradiction(format!("mirror of {l} is unavailable")));
                    }
                    return Ok(reply);
                }
            },
        };
        let inner = Position::new(self.project(pos.a), self.project(pos.b))
            .map_err(|e| StrategyError::Contradiction(format!("base copy out of step: {e}")))?;
        let x = self.base.next_move(&inner, local)?;
        Ok(self.embed[x])
    }

    fn state_key(&self, out: &mut Vec<u32>) {
        self.base.state_key(out);
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
