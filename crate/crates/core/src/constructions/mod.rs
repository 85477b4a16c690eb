//! Factories for every game family, each returning a [`Game`] with its line
//! store, board layout and a transitive set of generators.

mod affine;
mod even;
mod expr;
mod graphs;
mod odd;
mod pairs;
mod products;
mod torus;

use thiserror::Error;

use crate::game::{k_subsets, Game, GameError, PointSet};

pub use affine::{affine_game, default_bases as affine_default_bases, winning_family as affine_winning_family};
pub use even::{even_general, EvenGeneralLines};
pub use expr::Construction;
pub use graphs::{circulant, complete_graph, cycle_graph};
pub use odd::{odd_composite, OddCompositeLines};
pub use pairs::{pairs_game, pairs_game_implicit, pairs_winning_sets, PairsLines};
pub use products::{disjoint_copies, product_torus, superset_lines};
pub(crate) use torus::negation as torus_negation;
pub use torus::{torus, torus_lines};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("board of {0} points is over the 64-point limit")]
    TooLarge(usize),
    #[error("winning family is not intersecting: {0} and {1} are disjoint")]
    NotIntersecting(PointSet, PointSet),
    #[error("unknown construction {0:?}")]
    Unknown(String),
    #[error("cannot parse construction: {0}")]
    Parse(String),
    #[error(transparent)]
    Game(#[from] GameError),
}

fn params(ok: bool, msg: impl FnOnce() -> String) -> Result<(), ConstructionError> {
    if ok {
        Ok(())
    } else {
        Err(ConstructionError::Params(msg()))
    }
}

impl Construction {
    pub fn build(&self) -> Result<Game, ConstructionError> {
        match self {
            Construction::OddComposite { p, q } => odd_composite(*p, *q),
            Construction::Pairs { b } => pairs_game(*b),
            Construction::PairsImplicit { b } => pairs_game_implicit(*b),
            Construction::EvenGeneral { a, b } => even_general(*a, *b),
            Construction::Torus { q, d } => torus(*q, *d),
            Construction::Copies { base, c } => disjoint_copies(&base.build()?, *c),
            Construction::Superset { base, r } => superset_lines(&base.build()?, *r),
            Construction::ProductTorus { d } => product_torus(*d),
            Construction::Affine { n, bases } => {
                let sets = bases
                    .iter()
                    .map(|b| b.iter().copied().collect())
                    .collect::<Vec<PointSet>>();
                affine_game(*n, &sets)
            }
            Construction::Cycle { n } => cycle_graph(*n),
            Construction::Complete { n } => complete_graph(*n),
            Construction::Circulant { n, bases } => {
                let sets = bases
                    .iter()
                    .map(|b| b.iter().copied().collect())
                    .collect::<Vec<PointSet>>();
                circulant(*n, &sets)
            }
        }
    }
}

/// One catalog entry: expression template and accepted parameter ranges.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub usage: &'static str,
    pub params: &'static str,
    pub lines: &'static str,
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "odd-composite",
            usage: "odd-composite(p,q)",
            params: "p, q odd >= 3, pq <= 64",
            lines: "implicit: (p'q')-sets not holding p' points in each of q' buckets",
        },
        CatalogEntry {
            name: "pairs",
            usage: "pairs(b)",
            params: "b odd >= 3, b <= 13",
            lines: "explicit: complements of the parity and full/empty-pair winning sets",
        },
        CatalogEntry {
            name: "pairs-implicit",
            usage: "pairs-implicit(b)",
            params: "b odd >= 3, 2b <= 64",
            lines: "implicit: same family as pairs(b)",
        },
        CatalogEntry {
            name: "even-general",
            usage: "even-general(a,b)",
            params: "a >= 2, b odd >= 3, b*2^a <= 64",
            lines: "implicit: complements of the peak-sum and full/empty-pair winning sets",
        },
        CatalogEntry {
            name: "torus",
            usage: "torus(q,d)",
            params: "q >= 2, d >= 1, q^d <= 64",
            lines: "explicit: progressions {x, x+y, .., x+(q-1)y}, y != 0",
        },
        CatalogEntry {
            name: "copies",
            usage: "copies(<game>,c)",
            params: "c odd >= 1",
            lines: "lines of the base game inside each copy",
        },
        CatalogEntry {
            name: "superset",
            usage: "superset(<game>,r)",
            params: "r >= largest base line",
            lines: "r-sets containing a base line",
        },
        CatalogEntry {
            name: "product-torus",
            usage: "product-torus(d)",
            params: "1 <= d <= 2",
            lines: "explicit: {x} x L for pairs(3) lines, L x {y} for torus(3,d) lines",
        },
        CatalogEntry {
            name: "affine",
            usage: "affine(n[,[base],..])",
            params: "n prime; bases of size (n-1)/2; defaults for n = 11, 13",
            lines: "explicit: (n-1)/2-sets that are not affine images of a base",
        },
        CatalogEntry {
            name: "cycle",
            usage: "cycle(n)",
            params: "n >= 3",
            lines: "explicit: edges {i, i+1}",
        },
        CatalogEntry {
            name: "complete",
            usage: "complete(n)",
            params: "n >= 2",
            lines: "explicit: all pairs",
        },
        CatalogEntry {
            name: "circulant",
            usage: "circulant(n,[base],..)",
            params: "n >= 2",
            lines: "explicit: all translates of the base sets",
        },
    ]
}

/// Whether `s` contains the complement of some winning `k`-set, i.e.
/// whether `s` contains a line when lines are the complements of the
/// winning family.
pub(crate) fn contains_complement_of_winning(
    n: usize,
    k: usize,
    s: PointSet,
    is_winning: impl Fn(PointSet) -> bool,
) -> bool {
    if s.len() < k {
        return false;
    }
    // a line T ⊆ s has complement W ⊇ s^c with |W| = n - k
    let base = s.complement(n);
    let extra = (n - k).saturating_sub(base.len());
    if base.len() > n - k {
        return false;
    }
    k_subsets(s, extra).any(|add| is_winning(base.union(add)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::is_transitive;

    #[test]
    fn every_catalog_example_builds_transitively() {
        for expr in [
            "odd-composite(3,3)",
            "pairs(3)",
            "pairs(5)",
            "pairs-implicit(3)",
            "even-general(2,3)",
            "torus(3,2)",
            "torus(2,3)",
            "copies(pairs(3),3)",
            "superset(pairs(3),4)",
            "product-torus(1)",
            "affine(11)",
            "cycle(6)",
            "complete(4)",
            "circulant(8,[0,1,3])",
        ] {
            let c: Construction = expr.parse().unwrap();
            let g = c.build().unwrap();
            assert_eq!(g.name, expr);
            assert!(is_transitive(&g).unwrap(), "{expr}");
            assert_eq!(g.layout.dims.iter().product::<usize>(), g.n, "{expr}");
        }
    }

    #[test]
    fn catalog_names_parse() {
        for e in catalog() {
            assert!(e.usage.starts_with(e.name));
        }
    }
}
