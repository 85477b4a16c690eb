use super::StrategyError;
use crate::game::{Point, PointSet, Position};

/// Continuation after a direct win: take one point of every opposite pair
/// except the pair of `forbidden`, answering the opponent inside untouched
/// pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct DirectFill {
    pub forbidden: Point,
}

impl DirectFill {
    pub fn reply(
        self,
        pos: &Position,
        last: Option<Point>,
        n: usize,
        opposite: impl Fn(Point) -> Point,
    ) -> Result<Point, StrategyError> {
        let free: PointSet = pos.free(n);
        let banned = |p: Point| p == self.forbidden || opposite(p) == self.forbidden;
        if let Some(l) = last {
            let o = opposite(l);
            if !banned(l) && free.contains(o) {
                return Ok(o);
            }
        }
        free.iter()
            .find(|&p| !banned(p) && free.contains(opposite(p)))
            .ok_or_else(|| StrategyError::NoMove("direct-win fill found no untouched pair".into()))
    }

    pub fn key(self, out: &mut Vec<u32>) {
        out.push(self.forbidden as u32);
    }
}
