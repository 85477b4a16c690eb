use std::sync::Arc;

use super::torus::{torus_lines, torus_maps, torus_size};
use super::{pairs_game, params, Construction, ConstructionError};
use crate::game::{binomial, k_subsets, Game, Layout, LineOracle, LineStore, Permutation, PointSet, MAX_POINTS};

// Largest number of r-subsets enumerated when listing superset lines.
const SUPERSET_ENUM_CAP: u64 = 2_000_000;

/// Lines of `c` disjoint copies of an implicit base game.
#[derive(Debug)]
struct CopiesLines {
    base: LineStore,
    base_n: usize,
    copies: usize,
}

impl CopiesLines {
    fn slice(&self, s: PointSet, copy: usize) -> PointSet {
        let mask = PointSet::full(self.base_n).bits();
        PointSet::from_bits((s.bits() >> (copy * self.base_n)) & mask)
    }
}

impl LineOracle for CopiesLines {
    fn line_size(&self) -> usize {
        self.base.min_line_size()
    }

    fn is_line(&self, s: PointSet) -> bool {
        let hit: Vec<usize> = (0..self.copies).filter(|&c| !self.slice(s, c).is_empty()).collect();
        match hit.as_slice() {
            [c] => {
                let t = self.slice(s, *c);
                t.len() == self.line_size() && self.base.contains_line(t)
            }
            _ => false,
        }
    }

    fn contains_line(&self, s: PointSet) -> bool {
        (0..self.copies).any(|c| self.base.contains_line(self.slice(s, c)))
    }
}

fn child_name(
    base: &Game,
    f: impl FnOnce(Box<Construction>) -> Construction,
    fallback: String,
) -> (String, Option<Construction>) {
    match &base.origin {
        Some(o) => {
            let c = f(Box::new(o.clone()));
            (c.to_string(), Some(c))
        }
        None => (fallback, None),
    }
}

/// `c` disjoint copies of `base`; point `x` of copy `i` has index
/// `i * n + x`.
pub fn disjoint_copies(base: &Game, c: usize) -> Result<Game, ConstructionError> {
    params(c % 2 == 1, || format!("copies needs an odd count, got {c}"))?;
    let bn = base.n;
    let n = bn
        .checked_mul(c)
        .filter(|&n| n <= MAX_POINTS)
        .ok_or(ConstructionError::TooLarge(bn * c))?;
    let store = match &base.lines {
        LineStore::Explicit(e) => {
            let lines = (0..c)
                .flat_map(|i| e.lines().iter().map(move |l| l.map(|x| i * bn + x)))
                .collect();
            LineStore::explicit(n, lines)?
        }
        LineStore::Implicit(_) => LineStore::Implicit(Arc::new(CopiesLines {
            base: base.lines.clone(),
            base_n: bn,
            copies: c,
        })),
    };
    let mut generators = Vec::new();
    for g in &base.generators {
        generators.push(Permutation::from_fn(n, |x| if x < bn { g.apply(x) } else { x })?);
    }
    if c > 1 {
        generators.push(Permutation::from_fn(n, |x| (x + bn) % n)?);
    }
    let (name, origin) = child_name(
        base,
        |b| Construction::Copies { base: b, c },
        format!("copies({},{c})", base.name),
    );
    let mut dims = vec![c];
    dims.extend(&base.layout.dims);
    let mut labels = vec!["copy".to_string()];
    labels.extend(base.layout.labels.iter().cloned());
    let mut game = Game::new(n, name, store, generators)?.with_layout(Layout { dims, labels });
    game.origin = origin;
    Ok(game)
}

/// Lines of size `r` containing a base line, decided by containment.
#[derive(Debug)]
struct SupersetLines {
    base: LineStore,
    r: usize,
}

impl LineOracle for SupersetLines {
    fn line_size(&self) -> usize {
        self.r
    }

    fn is_line(&self, s: PointSet) -> bool {
        s.len() == self.r && self.base.contains_line(s)
    }

    fn contains_line(&self, s: PointSet) -> bool {
        s.len() >= self.r && self.base.contains_line(s)
    }
}

/// All `r`-subsets of the board that contain a line of `base`.
pub fn superset_lines(base: &Game, r: usize) -> Result<Game, ConstructionError> {
    let n = base.n;
    let largest = base.lines.max_line_size();
    params(r >= largest && r <= n, || {
        format!("superset needs {largest} <= r <= {n}, got {r}")
    })?;
    let (name, origin) = child_name(
        base,
        |b| Construction::Superset { base: b, r },
        format!("superset({},{r})", base.name),
    );
    let store = if binomial(n, r) <= SUPERSET_ENUM_CAP {
        let lines: Vec<PointSet> = k_subsets(base.board(), r).filter(|&s| base.contains_line(s)).collect();
        LineStore::explicit(n, lines)?
    } else if origin.is_some() {
        LineStore::Implicit(Arc::new(SupersetLines {
            base: base.lines.clone(),
            r,
        }))
    } else {
        return Err(ConstructionError::Params(format!(
            "superset of {} has too many {r}-sets to list and no construction to rebuild from",
            base.name
        )));
    };
    let mut game = Game::new(n, name, store, base.generators.clone())?.with_layout(base.layout.clone());
    game.origin = origin;
    Ok(game)
}

/// `Z_3^d x H` with `H = pairs(3)`: point `(t, h)` at index `6t + h`.
/// Lines are `{t} x L` for lines `L` of `H` and `L x {h}` for lines `L` of
/// the torus.
pub fn product_torus(d: usize) -> Result<Game, ConstructionError> {
    params(d >= 1, || "product-torus needs d >= 1".to_string())?;
    let tn = torus_size(3, d)
        .filter(|&t| t * 6 <= MAX_POINTS)
        .ok_or(ConstructionError::TooLarge(6 * 3usize.saturating_pow(d as u32)))?;
    let h = pairs_game(3)?;
    let h_lines = h.lines.as_explicit().expect("pairs(3) is explicit").lines().to_vec();
    let n = 6 * tn;
    let mut lines = Vec::new();
    for t in 0..tn {
        for l in &h_lines {
            lines.push(l.map(|x| 6 * t + x));
        }
    }
    for l in torus_lines(3, d)? {
        for y in 0..6 {
            lines.push(l.map(|t| 6 * t + y));
        }
    }
    let mut generators = Vec::new();
    for f in torus_maps(3, d) {
        generators.push(Permutation::from_fn(n, |x| 6 * f(x / 6) + x % 6)?);
    }
    for g in &h.generators {
        generators.push(Permutation::from_fn(n, |x| 6 * (x / 6) + g.apply(x % 6))?);
    }
    let origin = Construction::ProductTorus { d };
    let mut dims = vec![3; d];
    dims.extend([3, 2]);
    let mut labels: Vec<String> = (0..d).map(|i| format!("x{i}")).collect();
    labels.extend(["pair".to_string(), "side".to_string()]);
    Ok(
        Game::new(n, origin.to_string(), LineStore::explicit(n, lines)?, generators)?
            .with_layout(Layout { dims, labels })
            .with_origin(origin),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{odd_composite, torus};
    use crate::game::is_transitive;

    #[test]
    fn copies_counts() {
        let g = pairs_game(3).unwrap();
        let c1 = disjoint_copies(&g, 1).unwrap();
        assert_eq!(c1.n, 6);
        assert_eq!(c1.lines.as_explicit().unwrap().lines().len(), 10);
        let c3 = disjoint_copies(&g, 3).unwrap();
        assert_eq!(c3.n, 18);
        assert_eq!(c3.lines.as_explicit().unwrap().lines().len(), 30);
        assert!(c3.lines.as_explicit().unwrap().lines().iter().all(|l| l.len() == 3));
        assert!(is_transitive(&c3).unwrap());
        assert!(disjoint_copies(&g, 2).is_err());
    }

    #[test]
    fn copies_of_implicit_base() {
        let g = odd_composite(3, 3).unwrap();
        let c = disjoint_copies(&g, 3).unwrap();
        assert_eq!(c.name, "copies(odd-composite(3,3),3)");
        let line: PointSet = [9, 10, 11, 12].into_iter().collect();
        assert!(c.contains_line(line));
        assert!(!c.contains_line([0, 1, 9, 10].into_iter().collect()));
    }

    #[test]
    fn single_line_superset() {
        let base = Game::new(
            5,
            "one-line",
            LineStore::explicit(5, vec![[0, 1, 2].into_iter().collect()]).unwrap(),
            vec![],
        )
        .unwrap();
        let g = superset_lines(&base, 4).unwrap();
        assert_eq!(g.lines.as_explicit().unwrap().lines().len(), 2);
        assert!(superset_lines(&base, 2).is_err());
    }

    #[test]
    fn superset_containment_rule() {
        let t = torus(3, 2).unwrap();
        let g = superset_lines(&t, 4).unwrap();
        for bits in 0u64..1 << 9 {
            let s = PointSet::from_bits(bits);
            assert_eq!(g.contains_line(s), s.len() >= 4 && t.contains_line(s), "{s}");
        }
    }

    #[test]
    fn product_counts() {
        let g = product_torus(1).unwrap();
        assert_eq!(g.n, 18);
        let lines = g.lines.as_explicit().unwrap().lines();
        assert_eq!(lines.len(), 36);
        assert!(lines.iter().all(|l| l.len() == 3));
        assert!(is_transitive(&g).unwrap());
        // antipodal map on the torus factor
        for l in lines {
            let flipped = l.map(|x| 6 * ((3 - x / 6) % 3) + x % 6);
            assert!(g.lines.as_explicit().unwrap().is_line(flipped));
        }
        assert!(product_torus(3).is_err());
    }
}
