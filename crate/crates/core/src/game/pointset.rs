use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest board the bitset representation can hold.
pub const MAX_POINTS: usize = 64;

/// A point of the board, canonically indexed `0..n`.
pub type Point = usize;

/// A finite set of board points stored as a 64-bit mask.
///
/// The board size is not stored; callers that need a complement pass `n`
/// explicitly.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        PointSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The full board `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_POINTS);
        if n == MAX_POINTS {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(x: Point) -> Self {
        debug_assert!(x < MAX_POINTS);
        PointSet(1u64 << x)
    }

    #[inline]
    pub fn contains(self, x: Point) -> bool {
        x < MAX_POINTS && self.0 >> x & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: Point) {
        self.0 |= 1u64 << x;
    }

    #[inline]
    pub fn remove(&mut self, x: Point) {
        self.0 &= !(1u64 << x);
    }

    #[inline]
    #[must_use]
    pub fn with(self, x: Point) -> Self {
        PointSet(self.0 | 1u64 << x)
    }

    #[inline]
    #[must_use]
    pub fn union(self, other: Self) -> Self {
        PointSet(self.0 | other.0)
    }

    #[inline]
    #[must_use]
    pub fn intersection(self, other: Self) -> Self {
        PointSet(self.0 & other.0)
    }

    #[inline]
    #[must_use]
    pub fn difference(self, other: Self) -> Self {
        PointSet(self.0 & !other.0)
    }

    #[inline]
    #[must_use]
    pub fn complement(self, n: usize) -> Self {
        PointSet(!self.0).intersection(Self::full(n))
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Smallest member, if any.
    #[inline]
    pub fn first(self) -> Option<Point> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest point index plus one; 0 for the empty set.
    #[inline]
    pub fn bound(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<Point> {
        self.iter().collect()
    }

    /// Image of the set under a point map.
    pub fn map(self, f: impl Fn(Point) -> Point) -> Self {
        self.iter().map(f).collect()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = Point;

    #[inline]
    fn next(&mut self) -> Option<Point> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for PointSet {
    type Item = Point;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<Point> for PointSet {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        let mut s = PointSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for PointSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let points = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = points.iter().find(|&&x| x >= MAX_POINTS) {
            return Err(serde::de::Error::custom(format!(
                "point {bad} exceeds the {MAX_POINTS}-point board limit"
            )));
        }
        Ok(points.into_iter().collect())
    }
}

/// All `k`-subsets of `set`, in colexicographic order of their masks.
pub fn k_subsets(set: PointSet, k: usize) -> impl Iterator<Item = PointSet> {
    let members = set.to_vec();
    let n = members.len();
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out: PointSet = idx.iter().map(|&i| members[i]).collect();
        // advance the index combination
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_algebra() {
        let a: PointSet = [0, 2, 5].into_iter().collect();
        let b: PointSet = [2, 3].into_iter().collect();
        assert_eq!(a.union(b).to_vec(), vec![0, 2, 3, 5]);
        assert_eq!(a.intersection(b).to_vec(), vec![2]);
        assert_eq!(a.difference(b).to_vec(), vec![0, 5]);
        assert_eq!(a.complement(6).to_vec(), vec![1, 3, 4]);
        assert_eq!(a.len(), 3);
        assert!(PointSet::singleton(2).is_subset(a));
        assert_eq!(PointSet::full(64).len(), 64);
        assert_eq!(a.bound(), 6);
    }

    #[test]
    fn k_subsets_counts() {
        let full = PointSet::full(9);
        assert_eq!(k_subsets(full, 4).count(), 126);
        assert_eq!(k_subsets(full, 0).count(), 1);
        assert_eq!(k_subsets(full, 10).count(), 0);
        assert!(k_subsets(full, 4).all(|s| s.len() == 4 && s.is_subset(full)));
        assert_eq!(binomial(20, 10), 184_756);
    }

    #[test]
    fn json_shape() {
        let a: PointSet = [1, 4].into_iter().collect();
        assert_eq!(serde_json::to_string(&a).unwrap(), "[1,4]");
        let back: PointSet = serde_json::from_str("[4,1]").unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<PointSet>("[64]").is_err());
    }
}
