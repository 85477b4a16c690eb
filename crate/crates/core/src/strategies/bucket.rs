use super::{Strategy, StrategyError};
use crate::game::{Player, Point, PointSet, Position};

/// First-player strategy for the bucket game on `q` buckets of `p` points.
///
/// A bucket is active while the owner holds between 1 and `p' - 1` of its
/// points and full at `p'`. Rules, first match wins: answer in the bucket
/// the opponent just played in if it is active; open an untouched bucket
/// while fewer than `q'` buckets are active or full; play in the lowest
/// active bucket. Ties go to the lowest index.
#[derive(Clone, Debug)]
pub struct OddBucketStrategy {
    p: usize,
    q: usize,
}

impl OddBucketStrategy {
    pub fn new(p: usize, q: usize) -> Self {
        OddBucketStrategy { p, q }
    }

    fn bucket(&self, i: usize) -> PointSet {
        PointSet::from_bits(((1u64 << self.p) - 1) << (i * self.p))
    }
}

impl Strategy for OddBucketStrategy {
    fn name(&self) -> &str {
        "odd-bucket"
    }

    fn owner(&self) -> Player {
        Player::First
    }

    fn next_move(&mut self, pos: &Position, last: Option<Point>) -> Result<Point, StrategyError> {
        let (hp, hq) = ((self.p + 1) / 2, (self.q + 1) / 2);
        let free = pos.free(self.p * self.q);
        let mine = |i: usize| pos.a.intersection(self.bucket(i)).len();
        let active = |i: usize| (1..hp).contains(&mine(i));
        let lowest_free = |i: usize| free.intersection(self.bucket(i)).first();

        if let Some(l) = last {
            let i = l / self.p;
            if active(i) {
                return lowest_free(i)
                    .ok_or_else(|| StrategyError::Contradiction(format!("active bucket {i} has no free point")));
            }
        }
        let committed = (0..self.q).filter(|&i| mine(i) >= 1).count();
        if committed < hq {
            if let Some(i) = (0..self.q).find(|&i| pos.claimed().is_disjoint(self.bucket(i))) {
                return Ok(i * self.p);
            }
        }
        (0..self.q)
            .filter(|&i| active(i))
            .find_map(lowest_free)
            .ok_or_else(|| StrategyError::NoMove("no active bucket with a free point".into()))
    }

    fn state_key(&self, _out: &mut Vec<u32>) {}

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(a: &[usize], b: &[usize]) -> Position {
        Position::new(a.iter().copied().collect(), b.iter().copied().collect()).unwrap()
    }

    #[test]
    fn opens_bucket_zero() {
        let mut s = OddBucketStrategy::new(3, 3);
        assert_eq!(s.next_move(&Position::empty(), None).unwrap(), 0);
    }

    #[test]
    fn answers_in_active_bucket() {
        let mut s = OddBucketStrategy::new(3, 3);
        assert_eq!(s.next_move(&pos(&[0], &[1]), Some(1)).unwrap(), 2);
    }

    #[test]
    fn opens_second_bucket_when_opponent_plays_elsewhere() {
        let mut s = OddBucketStrategy::new(3, 3);
        // bucket 1 is touched by the opponent, so bucket 2 is opened
        assert_eq!(s.next_move(&pos(&[0], &[3]), Some(3)).unwrap(), 6);
    }
}
