//! Games whose lines are small translation-invariant sets on `Z_n`: graph
//! edges and circulant families.

use super::{params, Construction, ConstructionError};
use crate::game::{Game, LineStore, Permutation, PointSet, MAX_POINTS};

fn check_n(n: usize, min: usize, what: &str) -> Result<(), ConstructionError> {
    params(n >= min, || format!("{what} needs n >= {min}, got {n}"))?;
    if n > MAX_POINTS {
        return Err(ConstructionError::TooLarge(n));
    }
    Ok(())
}

fn finish(
    n: usize,
    lines: Vec<PointSet>,
    generators: Vec<Permutation>,
    origin: Construction,
) -> Result<Game, ConstructionError> {
    let mut lines = lines;
    lines.sort_unstable();
    lines.dedup();
    Ok(Game::new(n, origin.to_string(), LineStore::explicit(n, lines)?, generators)?.with_origin(origin))
}

/// The cycle `C_n`: lines are the edges `{i, i+1}`.
pub fn cycle_graph(n: usize) -> Result<Game, ConstructionError> {
    check_n(n, 3, "cycle")?;
    let lines = (0..n).map(|i| [i, (i + 1) % n].into_iter().collect()).collect();
    let generators = vec![
        Permutation::from_fn(n, |x| (x + 1) % n)?,
        Permutation::from_fn(n, |x| (n - x) % n)?,
    ];
    finish(n, lines, generators, Construction::Cycle { n })
}

/// The complete graph `K_n`: every pair is a line.
pub fn complete_graph(n: usize) -> Result<Game, ConstructionError> {
    check_n(n, 2, "complete")?;
    let lines = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| [i, j].into_iter().collect()))
        .collect();
    let generators = vec![
        Permutation::from_fn(n, |x| (x + 1) % n)?,
        Permutation::from_fn(n, |x| match x {
            0 => 1,
            1 => 0,
            _ => x,
        })?,
    ];
    finish(n, lines, generators, Construction::Complete { n })
}

/// Every translate of every base set.
pub fn circulant(n: usize, bases: &[PointSet]) -> Result<Game, ConstructionError> {
    check_n(n, 2, "circulant")?;
    params(!bases.is_empty(), || {
        "circulant needs at least one base set".to_string()
    })?;
    for b in bases {
        params(!b.is_empty() && b.bound() <= n, || {
            format!("circulant base {b} is not a nonempty subset of Z_{n}")
        })?;
    }
    let lines = bases
        .iter()
        .flat_map(|&b| (0..n).map(move |c| b.map(|x| (x + c) % n)))
        .collect();
    let origin = Construction::Circulant {
        n,
        bases: bases.iter().map(|b| b.to_vec()).collect(),
    };
    finish(n, lines, vec![Permutation::from_fn(n, |x| (x + 1) % n)?], origin)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_counts() {
        assert_eq!(cycle_graph(5).unwrap().lines.as_explicit().unwrap().lines().len(), 5);
        assert_eq!(complete_graph(4).unwrap().lines.as_explicit().unwrap().lines().len(), 6);
        assert_eq!(cycle_graph(3).unwrap().lines.as_explicit().unwrap().lines().len(), 3);
        assert!(cycle_graph(2).is_err());
    }

    #[test]
    fn circulant_dedups_translates() {
        let b: PointSet = [0, 4].into_iter().collect();
        let g = circulant(8, &[b]).unwrap();
        assert_eq!(g.lines.as_explicit().unwrap().lines().len(), 4);
        assert!(circulant(4, &[[0, 5].into_iter().collect()]).is_err());
    }
}
