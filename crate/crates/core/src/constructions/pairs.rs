use std::sync::Arc;

use super::{contains_complement_of_winning, params, Construction, ConstructionError};
use crate::game::{Game, Layout, LineOracle, LineStore, Permutation, PointSet, MAX_POINTS};

// Largest b for which the explicit line list stays desk-sized.
const MAX_EXPLICIT_B: usize = 13;

fn check_b(b: usize) -> Result<(), ConstructionError> {
    params(b % 2 == 1 && b >= 3, || format!("pairs needs odd b >= 3, got {b}"))?;
    if 2 * b > MAX_POINTS {
        return Err(ConstructionError::TooLarge(2 * b));
    }
    Ok(())
}

/// Winning sets on `Z_b x Z_2` (point `(x, y)` has index `2x + y`):
/// one point per pair with an odd number of `y = 1`, or both points of a
/// pair `i` and neither of a pair `j` with `1 <= j - i <= (b-1)/2`.
pub fn pairs_winning_sets(b: usize) -> Vec<PointSet> {
    let half = (b - 1) / 2;
    let mut out = Vec::new();
    for choice in 0u64..1 << b {
        if choice.count_ones() % 2 == 1 {
            out.push((0..b).map(|x| 2 * x + (choice >> x & 1) as usize).collect());
        }
    }
    for full in 0..b {
        for d in 1..=half {
            let empty = (full + d) % b;
            let others: Vec<usize> = (0..b).filter(|&x| x != full && x != empty).collect();
            for choice in 0u64..1 << others.len() {
                let mut s = PointSet::EMPTY;
                s.insert(2 * full);
                s.insert(2 * full + 1);
                for (i, &x) in others.iter().enumerate() {
                    s.insert(2 * x + (choice >> i & 1) as usize);
                }
                out.push(s);
            }
        }
    }
    out
}

/// The same family, decided analytically.
#[derive(Clone, Debug)]
pub struct PairsLines {
    b: usize,
}

impl PairsLines {
    pub fn new(b: usize) -> Self {
        PairsLines { b }
    }

    pub fn is_winning(&self, s: PointSet) -> bool {
        let b = self.b;
        if s.len() != b {
            return false;
        }
        let mut full = Vec::new();
        let mut empty = Vec::new();
        let mut ones = 0;
        for x in 0..b {
            match (s.contains(2 * x), s.contains(2 * x + 1)) {
                (true, true) => full.push(x),
                (false, false) => empty.push(x),
                (false, true) => ones += 1,
                (true, false) => {}
            }
        }
        match (full.as_slice(), empty.as_slice()) {
            ([], []) => ones % 2 == 1,
            ([i], [j]) => {
                let d = (j + b - i) % b;
                (1..=(b - 1) / 2).contains(&d)
            }
            _ => false,
        }
    }
}

impl LineOracle for PairsLines {
    fn line_size(&self) -> usize {
        self.b
    }

    fn is_line(&self, s: PointSet) -> bool {
        s.len() == self.b && self.is_winning(s.complement(2 * self.b))
    }

    fn contains_line(&self, s: PointSet) -> bool {
        contains_complement_of_winning(2 * self.b, self.b, s, |w| self.is_winning(w))
    }
}

fn pairs_generators(b: usize) -> Result<Vec<Permutation>, ConstructionError> {
    let n = 2 * b;
    let cycle = Permutation::from_fn(n, |x| (x + 2) % n)?;
    let double_swap = Permutation::from_fn(n, |x| if x < 4 { x ^ 1 } else { x })?;
    Ok(vec![cycle, double_swap])
}

fn pairs_layout(b: usize) -> Layout {
    Layout::grid(vec![b, 2], &["pair", "side"])
}

/// The pairs game on `2b` points with explicitly listed lines.
pub fn pairs_game(b: usize) -> Result<Game, ConstructionError> {
    check_b(b)?;
    if b > MAX_EXPLICIT_B {
        return Err(ConstructionError::Params(format!(
            "pairs({b}) has too many lines to list; use pairs-implicit({b})"
        )));
    }
    let n = 2 * b;
    let lines = pairs_winning_sets(b).into_iter().map(|w| w.complement(n)).collect();
    let origin = Construction::Pairs { b };
    Ok(Game::new(
        n,
        origin.to_string(),
        LineStore::explicit(n, lines)?,
        pairs_generators(b)?,
    )?
    .with_layout(pairs_layout(b))
    .with_origin(origin))
}

/// The pairs game with an analytic line store.
pub fn pairs_game_implicit(b: usize) -> Result<Game, ConstructionError> {
    check_b(b)?;
    let n = 2 * b;
    let origin = Construction::PairsImplicit { b };
    let store = LineStore::Implicit(Arc::new(PairsLines::new(b)));
    Ok(Game::new(n, origin.to_string(), store, pairs_generators(b)?)?
        .with_layout(pairs_layout(b))
        .with_origin(origin))
}
