use super::{params, Construction, ConstructionError};
use crate::game::{k_subsets, Game, LineStore, Permutation, PointSet, MAX_POINTS};

/// Base sets whose affine images form the shipped winning families.
pub fn default_bases(n: usize) -> Option<Vec<Vec<usize>>> {
    match n {
        11 => Some(vec![vec![0, 1, 2, 4, 5]]),
        13 => Some(vec![
            vec![0, 1, 2, 4, 5, 6],
            vec![0, 1, 2, 4, 5, 7],
            vec![0, 1, 3, 4, 5, 7],
        ]),
        _ => None,
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn primitive_root(p: usize) -> usize {
    (2..p)
        .find(|&g| {
            let mut x = 1;
            (1..p - 1).all(|_| {
                x = x * g % p;
                x != 1
            })
        })
        .unwrap_or(1)
}

/// Every `a*B + c` (`a != 0`) for `B` among `bases`, deduplicated.
pub fn winning_family(n: usize, bases: &[PointSet]) -> Vec<PointSet> {
    let mut out = Vec::new();
    for &base in bases {
        for a in 1..n {
            for c in 0..n {
                out.push(base.map(|x| (a * x + c) % n));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Prime board `Z_n`; lines are the `(n-1)/2`-sets that are not affine
/// images of a base set.
pub fn affine_game(n: usize, bases: &[PointSet]) -> Result<Game, ConstructionError> {
    params(is_prime(n) && n >= 3, || {
        format!("affine needs a prime n >= 3, got {n}")
    })?;
    if n > MAX_POINTS {
        return Err(ConstructionError::TooLarge(n));
    }
    let k = (n - 1) / 2;
    params(!bases.is_empty(), || "affine needs at least one base set".to_string())?;
    for b in bases {
        params(b.len() == k && b.bound() <= n, || {
            format!("affine({n}) base sets must be {k}-subsets of Z_{n}, got {b}")
        })?;
    }
    let w = winning_family(n, bases);
    for (i, &x) in w.iter().enumerate() {
        if let Some(&y) = w[i + 1..].iter().find(|y| x.is_disjoint(**y)) {
            return Err(ConstructionError::NotIntersecting(x, y));
        }
    }
    let lines: Vec<PointSet> = k_subsets(PointSet::full(n), k)
        .filter(|s| w.binary_search(s).is_err())
        .collect();
    let g = primitive_root(n);
    let generators = vec![
        Permutation::from_fn(n, |x| (x + 1) % n)?,
        Permutation::from_fn(n, |x| x * g % n)?,
    ];
    let origin = Construction::Affine {
        n,
        bases: bases.iter().map(|b| b.to_vec()).collect(),
    };
    Ok(Game::new(n, origin.to_string(), LineStore::explicit(n, lines)?, generators)?.with_origin(origin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{binomial, is_transitive};

    fn sets(v: Vec<Vec<usize>>) -> Vec<PointSet> {
        v.into_iter().map(|b| b.into_iter().collect()).collect()
    }

    #[test]
    fn eleven_and_thirteen_build() {
        for n in [11, 13] {
            let bases = sets(default_bases(n).unwrap());
            let g = affine_game(n, &bases).unwrap();
            let w = winning_family(n, &bases);
            let lines = g.lines.as_explicit().unwrap().lines().len() as u64;
            assert_eq!(lines + w.len() as u64, binomial(n, (n - 1) / 2));
            assert!(is_transitive(&g).unwrap());
            assert_eq!(g.name, format!("affine({n})"));
        }
    }

    #[test]
    fn rejects_disjoint_family() {
        let err = affine_game(5, &sets(vec![vec![0, 1]])).unwrap_err();
        match err {
            ConstructionError::NotIntersecting(x, y) => assert!(x.is_disjoint(y)),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(affine_game(9, &sets(vec![vec![0, 1, 2, 3]])).is_err());
        assert!(affine_game(11, &sets(vec![vec![0, 1]])).is_err());
        assert_eq!(primitive_root(11), 2);
        assert_eq!(primitive_root(13), 2);
    }
}
