use std::collections::VecDeque;

use rustc_hash::FxHashSet;

use super::pointset::{binomial, k_subsets, Point, PointSet};
use super::{Game, GameError, LineStore, Permutation};

/// Default bound on group elements visited by [`find_fpf_involution`].
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

// Subset-image checks allowed when validating an implicit store.
const IMPLICIT_VALIDATION_CAP: u64 = 50_000_000;

/// Closure of `{x}` under the generators (and, the group being finite,
/// their inverses).
pub fn orbit(generators: &[Permutation], x: Point) -> PointSet {
    let mut seen = PointSet::singleton(x);
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for g in generators {
            let z = g.apply(y);
            if !seen.contains(z) {
                seen.insert(z);
                stack.push(z);
            }
        }
    }
    seen
}

/// Checks that every generator maps lines to lines.
///
/// Explicit stores are checked line by line. Implicit stores are checked by
/// enumerating every set of the line size, which is refused above a desk
/// limit.
pub fn validate_generators(game: &Game) -> Result<(), GameError> {
    match &game.lines {
        LineStore::Explicit(e) => {
            for (gi, g) in game.generators.iter().enumerate() {
                for &line in e.lines() {
                    let image = g.apply_set(line);
                    if !e.is_line(image) {
                        return Err(GameError::GeneratorBreaksLine {
                            generator: gi,
                            line,
                            image,
                        });
                    }
                }
            }
        }
        LineStore::Implicit(o) => {
            let k = o.line_size();
            let work = binomial(game.n, k).saturating_mul(game.generators.len() as u64);
            if work > IMPLICIT_VALIDATION_CAP {
                return Err(GameError::ValidationTooLarge(work));
            }
            for s in k_subsets(game.board(), k) {
                if !o.is_line(s) {
                    continue;
                }
                for (gi, g) in game.generators.iter().enumerate() {
                    let image = g.apply_set(s);
                    if !o.is_line(image) {
                        return Err(GameError::GeneratorBreaksLine {
                            generator: gi,
                            line: s,
                            image,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Validates the generators, then tests whether they act transitively.
pub fn is_transitive(game: &Game) -> Result<bool, GameError> {
    validate_generators(game)?;
    if game.n == 0 {
        return Ok(true);
    }
    Ok(orbit(&game.generators, 0) == game.board())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FpfSearch {
    Found(Permutation),
    /// The whole generated group was enumerated without finding one.
    NoneExists {
        group_order: usize,
    },
    /// The cap was reached first; nothing can be concluded.
    Inconclusive {
        visited: usize,
    },
}

/// Breadth-first enumeration of the generated group looking for a
/// fixed-point-free involution.
pub fn find_fpf_involution(game: &Game, cap: usize) -> FpfSearch {
    let n = game.n;
    let id: Vec<u8> = (0..n as u8).collect();
    let gens: Vec<Vec<u8>> = game
        .generators
        .iter()
        .map(|g| g.image().iter().map(|&y| y as u8).collect())
        .collect();
    let mut seen: FxHashSet<Vec<u8>> = FxHashSet::default();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(el) = queue.pop_front() {
        let fpf_involution = el
            .iter()
            .enumerate()
            .all(|(x, &y)| y as usize != x && el[y as usize] as usize == x);
        if fpf_involution {
            let image = el.iter().map(|&y| y as usize).collect();
            return FpfSearch::Found(Permutation::new(image).expect("group element is a bijection"));
        }
        for g in &gens {
            let next: Vec<u8> = el.iter().map(|&y| g[y as usize]).collect();
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return FpfSearch::Inconclusive { visited: seen.len() };
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    FpfSearch::NoneExists {
        group_order: seen.len(),
    }
}
