use serde::{Deserialize, Serialize};

use super::pointset::{Point, PointSet};
use super::GameError;

/// A bijection on `{0, .., n-1}` given by its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<Point>);

impl Permutation {
    pub fn new(image: Vec<Point>) -> Result<Self, GameError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &y in &image {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return Err(GameError::NotABijection { image });
            }
        }
        Ok(Permutation(image))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Builds a permutation from a point map, validating bijectivity.
    pub fn from_fn(n: usize, f: impl Fn(Point) -> Point) -> Result<Self, GameError> {
        Self::new((0..n).map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: Point) -> Point {
        self.0[x]
    }

    pub fn image(&self) -> &[Point] {
        &self.0
    }

    pub fn apply_set(&self, s: PointSet) -> PointSet {
        s.map(|x| self.0[x])
    }

    /// `self` after `other`: x -> self(other(x)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&y| self.0[y]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn is_involution(&self) -> bool {
        self.0.iter().enumerate().all(|(x, &y)| self.0[y] == x)
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.0.iter().enumerate().all(|(x, &y)| x != y)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let image = Vec::<Point>::deserialize(d)?;
        Permutation::new(image).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!(Permutation::new(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn compose_and_invert() {
        let c = Permutation::from_fn(4, |x| (x + 1) % 4).unwrap();
        let c2 = c.compose(&c);
        assert_eq!(c2.image(), &[2, 3, 0, 1]);
        assert!(c2.is_involution() && c2.is_fixed_point_free());
        assert!(c.compose(&c.inverse()).is_identity());
        assert!(!c.is_involution());
    }
}
