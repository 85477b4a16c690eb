use std::sync::Arc;

use super::{params, Construction, ConstructionError};
use crate::game::{Game, Layout, LineOracle, LineStore, Permutation, PointSet, MAX_POINTS};

/// Lines of the bucket game: every `p'q'`-set that does not hold exactly
/// `p'` points in each of exactly `q'` buckets.
#[derive(Clone, Debug)]
pub struct OddCompositeLines {
    p: usize,
    q: usize,
    bucket_masks: Vec<u64>,
}

impl OddCompositeLines {
    pub fn new(p: usize, q: usize) -> Self {
        let bucket_masks = (0..q).map(|i| ((1u64 << p) - 1) << (i * p)).collect();
        OddCompositeLines { p, q, bucket_masks }
    }

    pub fn half_p(&self) -> usize {
        (self.p + 1) / 2
    }

    pub fn half_q(&self) -> usize {
        (self.q + 1) / 2
    }

    /// Membership in the winning family.
    pub fn is_winning(&self, s: PointSet) -> bool {
        let (hp, hq) = (self.half_p(), self.half_q());
        if s.len() != hp * hq {
            return false;
        }
        let mut used = 0;
        for &mask in &self.bucket_masks {
            match (s.bits() & mask).count_ones() as usize {
                0 => {}
                c if c == hp => used += 1,
                _ => return false,
            }
        }
        used == hq
    }
}

impl LineOracle for OddCompositeLines {
    fn line_size(&self) -> usize {
        self.half_p() * self.half_q()
    }

    fn is_line(&self, s: PointSet) -> bool {
        s.len() == self.line_size() && !self.is_winning(s)
    }

    fn contains_line(&self, s: PointSet) -> bool {
        let k = self.line_size();
        s.len() > k || (s.len() == k && !self.is_winning(s))
    }
}

/// The bucket game on `pq` points: `q` buckets of `p`, index
/// `bucket * p + slot`.
pub fn odd_composite(p: usize, q: usize) -> Result<Game, ConstructionError> {
    params(p % 2 == 1 && q % 2 == 1 && p >= 3 && q >= 3, || {
        format!("odd-composite needs odd p, q >= 3, got ({p},{q})")
    })?;
    let n = p * q;
    if n > MAX_POINTS {
        return Err(ConstructionError::TooLarge(n));
    }
    let bucket_cycle = Permutation::from_fn(n, |x| (x + p) % n)?;
    let slot_cycle = Permutation::from_fn(n, |x| if x < p { (x + 1) % p } else { x })?;
    let store = LineStore::Implicit(Arc::new(OddCompositeLines::new(p, q)));
    let origin = Construction::OddComposite { p, q };
    Ok(Game::new(n, origin.to_string(), store, vec![bucket_cycle, slot_cycle])?
        .with_layout(Layout::grid(vec![q, p], &["bucket", "slot"]))
        .with_origin(origin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::k_subsets;

    fn brute_contains(o: &OddCompositeLines, s: PointSet) -> bool {
        k_subsets(s, o.line_size()).any(|t| o.is_line(t))
    }

    #[test]
    fn three_by_three_counts() {
        let o = OddCompositeLines::new(3, 3);
        let board = PointSet::full(9);
        let winning = k_subsets(board, 4).filter(|&s| o.is_winning(s)).count();
        let lines = k_subsets(board, 4).filter(|&s| o.is_line(s)).count();
        assert_eq!(winning, 27);
        assert_eq!(lines, 99);
    }

    #[test]
    fn winning_sets_pairwise_meet() {
        let o = OddCompositeLines::new(3, 3);
        let w: Vec<_> = k_subsets(PointSet::full(9), 4).filter(|&s| o.is_winning(s)).collect();
        for &a in &w {
            assert!(!o.contains_line(a));
            for &b in &w {
                assert!(!a.is_disjoint(b));
            }
        }
    }

    #[test]
    fn analytic_containment_matches_enumeration_exhaustively() {
        let o = OddCompositeLines::new(3, 3);
        for bits in 0u64..1 << 9 {
            let s = PointSet::from_bits(bits);
            assert_eq!(o.contains_line(s), brute_contains(&o, s), "{s}");
        }
    }

    #[test]
    fn three_in_a_bucket_is_a_line_at_size_four() {
        let o = OddCompositeLines::new(3, 3);
        let s: PointSet = [0, 1, 2, 3].into_iter().collect();
        assert!(o.is_line(s));
    }

    #[test]
    fn rejects_even_parameters() {
        assert!(odd_composite(4, 3).is_err());
        assert!(odd_composite(3, 1).is_err());
        assert!(matches!(odd_composite(9, 9), Err(ConstructionError::TooLarge(81))));
    }
}
