use std::sync::Arc;

use super::{contains_complement_of_winning, params, Construction, ConstructionError};
use crate::game::{Game, Layout, LineOracle, LineStore, Permutation, PointSet, MAX_POINTS};
use crate::pairset::PairSet;

/// Winning family on `Z_b x Z_m` (`m = 2^a`, point `(x, y)` at `x*m + y`).
///
/// Condition 1: each bin is a full pair set and the maximal points sum to
/// a value in `[0, m/2)` mod `m`. Condition 2: exactly one pair `{y, y+m/2}`
/// of bin `j` is doubly held and exactly one pair is empty, either in bin
/// `j + d` with `1 <= d <= (b-1)/2` or in bin `j` at displacement
/// `1..m/4 - 1` (mod `m/2`) after the full pair. Every other pair holds one
/// point.
#[derive(Clone, Debug)]
pub struct EvenGeneralLines {
    a: usize,
    b: usize,
    m: usize,
}

/// Per-bin pair census.
struct BinCensus {
    full: Vec<(usize, usize)>,
    empty: Vec<(usize, usize)>,
}

impl EvenGeneralLines {
    pub fn new(a: usize, b: usize) -> Self {
        EvenGeneralLines { a, b, m: 1 << a }
    }

    pub fn bins(&self) -> usize {
        self.b
    }

    pub fn modulus(&self) -> usize {
        self.m
    }

    pub fn exponent(&self) -> usize {
        self.a
    }

    pub fn bin_bits(&self, s: PointSet, bin: usize) -> u64 {
        let mask = if self.m == 64 { u64::MAX } else { (1u64 << self.m) - 1 };
        (s.bits() >> (bin * self.m)) & mask
    }

    fn census(&self, s: PointSet) -> BinCensus {
        let h = self.m / 2;
        let mut c = BinCensus {
            full: Vec::new(),
            empty: Vec::new(),
        };
        for bin in 0..self.b {
            let bits = self.bin_bits(s, bin);
            let (lo, hi) = (bits & ((1 << h) - 1), bits >> h);
            for p in 0..h {
                match (lo >> p & 1, hi >> p & 1) {
                    (1, 1) => c.full.push((bin, p)),
                    (0, 0) => c.empty.push((bin, p)),
                    _ => {}
                }
            }
        }
        c
    }

    /// Sum of the per-bin maximal points mod `m`, for a set that is a full
    /// pair set in every bin.
    pub fn peak_sum(&self, s: PointSet) -> usize {
        (0..self.b)
            .map(|bin| {
                PairSet::from_bits(self.m, self.bin_bits(s, bin))
                    .and_then(PairSet::maximal_point)
                    .expect("full pair set has a unique maximal point")
            })
            .sum::<usize>()
            % self.m
    }

    pub fn is_winning(&self, s: PointSet) -> bool {
        let (m, b) = (self.m, self.b);
        if s.len() != b * m / 2 {
            return false;
        }
        let c = self.census(s);
        match (c.full.as_slice(), c.empty.as_slice()) {
            ([], []) => self.peak_sum(s) < m / 2,
            ([(j, y)], [(k, z)]) => {
                if j == k {
                    let d = (z + m / 2 - y) % (m / 2);
                    d >= 1 && d < m / 4
                } else {
                    let d = (k + b - j) % b;
                    d >= 1 && d <= (b - 1) / 2
                }
            }
            _ => false,
        }
    }
}

impl LineOracle for EvenGeneralLines {
    fn line_size(&self) -> usize {
        self.b * self.m / 2
    }

    fn is_line(&self, s: PointSet) -> bool {
        s.len() == self.line_size() && self.is_winning(s.complement(self.b * self.m))
    }

    fn contains_line(&self, s: PointSet) -> bool {
        let n = self.b * self.m;
        contains_complement_of_winning(n, n / 2, s, |w| self.is_winning(w))
    }
}

/// The general even game on `b * 2^a` points.
pub fn even_general(a: usize, b: usize) -> Result<Game, ConstructionError> {
    params(a >= 2 && b % 2 == 1 && b >= 3, || {
        format!("even-general needs a >= 2 and odd b >= 3, got ({a},{b})")
    })?;
    let n = b.saturating_mul(1 << a.min(32));
    if n > MAX_POINTS {
        return Err(ConstructionError::TooLarge(n));
    }
    let m = 1 << a;
    let bin_cycle = Permutation::from_fn(n, |p| (p + m) % n)?;
    let twist = Permutation::from_fn(n, |p| {
        let (x, y) = (p / m, p % m);
        match x {
            0 => (y + 1) % m,
            1 => m + (y + m - 1) % m,
            _ => p,
        }
    })?;
    let origin = Construction::EvenGeneral { a, b };
    let store = LineStore::Implicit(Arc::new(EvenGeneralLines::new(a, b)));
    Ok(Game::new(n, origin.to_string(), store, vec![bin_cycle, twist])?
        .with_layout(Layout::grid(vec![b, m], &["bin", "pos"]))
        .with_origin(origin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Peak by comparing every rotation as a '0'/'1' string, where '1'
    /// sorts above '0' at the first difference.
    fn peak_by_strings(bits: u64, m: usize) -> usize {
        let word = |x: usize| -> String {
            (0..m)
                .map(|i| if bits >> ((x + i) % m) & 1 == 1 { '1' } else { '0' })
                .collect()
        };
        let best = (0..m).map(word).max().unwrap();
        let hits: Vec<usize> = (0..m).filter(|&x| word(x) == best).collect();
        assert_eq!(hits.len(), 1);
        hits[0]
    }

    fn random_transversal(rng: &mut ChaCha8Rng, b: usize, m: usize) -> PointSet {
        let mut s = PointSet::EMPTY;
        for bin in 0..b {
            for p in 0..m / 2 {
                let y = if rng.gen() { p } else { p + m / 2 };
                s.insert(bin * m + y);
            }
        }
        s
    }

    #[test]
    fn condition_one_matches_string_oracle() {
        let o = EvenGeneralLines::new(2, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let s = random_transversal(&mut rng, 3, 4);
            let sum: usize = (0..3).map(|bin| peak_by_strings(o.bin_bits(s, bin), 4)).sum();
            assert_eq!(o.is_winning(s), sum % 4 < 2, "{s}");
        }
        let o = EvenGeneralLines::new(3, 3);
        for _ in 0..1000 {
            let s = random_transversal(&mut rng, 3, 8);
            let sum: usize = (0..3).map(|bin| peak_by_strings(o.bin_bits(s, bin), 8)).sum();
            assert_eq!(o.is_winning(s), sum % 8 < 4, "{s}");
        }
    }

    #[test]
    fn complement_flips_condition_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (a, b) in [(2, 3), (3, 3), (2, 5)] {
            let o = EvenGeneralLines::new(a, b);
            let n = b << a;
            for _ in 0..300 {
                let s = random_transversal(&mut rng, b, 1 << a);
                assert_ne!(o.is_winning(s), o.is_winning(s.complement(n)));
            }
        }
    }

    #[test]
    fn winning_family_is_intersecting_at_n12() {
        let o = EvenGeneralLines::new(2, 3);
        let w: Vec<PointSet> = crate::game::k_subsets(PointSet::full(12), 6)
            .filter(|&s| o.is_winning(s))
            .collect();
        // 32 transversals plus 3*2*2*16 full/empty-pair sets
        assert_eq!(w.len(), 224);
        assert!(w.iter().all(|s| !o.is_winning(s.complement(12))));
        for (i, &x) in w.iter().enumerate() {
            for &y in &w[i + 1..] {
                assert!(!x.is_disjoint(y));
            }
        }
    }

    #[test]
    fn condition_two_windows() {
        // m = 8: full pair {0,4} in bin 0, empty pair {1,5} in bin 0 is
        // displacement 1 < 2, allowed; displacement 2 is not.
        let o = EvenGeneralLines::new(3, 3);
        let base = |empty: usize| -> PointSet {
            let mut s = PointSet::EMPTY;
            s.insert(0);
            s.insert(4);
            for p in 1..4 {
                if p != empty {
                    s.insert(p);
                }
            }
            for p in 8..24 {
                if p % 8 < 4 {
                    s.insert(p);
                }
            }
            s
        };
        assert!(o.is_winning(base(1)));
        assert!(!o.is_winning(base(2)));
    }

    #[test]
    fn contains_line_matches_enumeration_at_n12() {
        let g = even_general(2, 3).unwrap();
        let o = EvenGeneralLines::new(2, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let s = PointSet::from_bits(rng.gen::<u64>() & 0xfff);
            let brute = crate::game::k_subsets(s, 6).any(|t| o.is_line(t));
            assert_eq!(g.contains_line(s), brute, "{s}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(even_general(1, 3).is_err());
        assert!(even_general(2, 4).is_err());
        assert!(matches!(even_general(4, 5), Err(ConstructionError::TooLarge(80))));
    }
}
