use super::{Strategy, StrategyError};
use crate::game::{Permutation, Player, Point, Position};

/// First player on `Z_q^d` (`q` odd): take the origin, then answer `y`
/// with `-y`.
#[derive(Clone, Debug)]
pub struct TorusPairingStrategy {
    neg: Vec<Point>,
}

impl TorusPairingStrategy {
    pub fn new(q: usize, d: usize) -> Self {
        let n = q.pow(d as u32);
        let neg = (0..n)
            .map(|x| {
                let mut rest = x;
                let mut out = 0;
                let mut scale = 1;
                for _ in 0..d {
                    out += (q - rest % q) % q * scale;
                    rest /= q;
                    scale *= q;
                }
                out
            })
            .collect();
        TorusPairingStrategy { neg }
    }
}

impl Strategy for TorusPairingStrategy {
    fn name(&self) -> &str {
        "torus-pairing"
    }

    fn owner(&self) -> Player {
        Player::First
    }

    fn next_move(&mut self, pos: &Position, last: Option<Point>) -> Result<Point, StrategyError> {
        let Some(y) = last else { return Ok(0) };
        let reply = self.neg[y];
        if pos.claimed().contains(reply) {
            return Err(StrategyError::Contradiction(format!("-{y} = {reply} is already taken")));
        }
        Ok(reply)
    }

    fn state_key(&self, _out: &mut Vec<u32>) {}

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Second player answering every move `x` with `g(x)` for a fixed-point-free
/// involution `g` of the game.
#[derive(Clone, Debug)]
pub struct InvolutionPairingStrategy {
    g: Permutation,
}

impl InvolutionPairingStrategy {
    pub fn new(g: Permutation) -> Self {
        InvolutionPairingStrategy { g }
    }

    pub fn involution(&self) -> &Permutation {
        &self.g
    }
}

impl Strategy for InvolutionPairingStrategy {
    fn name(&self) -> &str {
        "involution-pairing"
    }

    fn owner(&self) -> Player {
        Player::Second
    }

    fn next_move(&mut self, pos: &Position, last: Option<Point>) -> Result<Point, StrategyError> {
        let x = last.ok_or_else(|| StrategyError::Contradiction("the second player never opens".into()))?;
        let reply = self.g.apply(x);
        if pos.claimed().contains(reply) {
            return Err(StrategyError::Contradiction(format!(
                "g({x}) = {reply} is already taken"
            )));
        }
        Ok(reply)
    }

    fn state_key(&self, _out: &mut Vec<u32>) {}

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
