use super::{params, Construction, ConstructionError};
use crate::game::{Game, Layout, LineStore, Permutation, PointSet, MAX_POINTS};

pub(crate) fn torus_size(q: usize, d: usize) -> Option<usize> {
    q.checked_pow(d as u32).filter(|&n| n <= MAX_POINTS)
}

fn coords(mut x: usize, q: usize, d: usize) -> Vec<usize> {
    let mut c = vec![0; d];
    for slot in c.iter_mut().rev() {
        *slot = x % q;
        x /= q;
    }
    c
}

fn index(c: &[usize], q: usize) -> usize {
    c.iter().fold(0, |acc, &v| acc * q + v % q)
}

/// Deduplicated progressions `{x, x+y, .., x+(q-1)y}` over all `x` and
/// `y != 0` in `Z_q^d`.
pub fn torus_lines(q: usize, d: usize) -> Result<Vec<PointSet>, ConstructionError> {
    let n = torus_size(q, d).ok_or(ConstructionError::TooLarge(usize::MAX))?;
    let mut lines: Vec<PointSet> = Vec::new();
    for x in 0..n {
        let cx = coords(x, q, d);
        for y in 1..n {
            let cy = coords(y, q, d);
            let line: PointSet = (0..q)
                .map(|i| {
                    let c: Vec<usize> = cx.iter().zip(&cy).map(|(a, b)| a + i * b).collect();
                    index(&c, q)
                })
                .collect();
            lines.push(line);
        }
    }
    lines.sort_unstable();
    lines.dedup();
    Ok(lines)
}

/// Point-wise map `x -> -x` on `Z_q^d`.
pub(crate) fn negation(q: usize, d: usize) -> impl Fn(usize) -> usize {
    move |x| {
        let c: Vec<usize> = coords(x, q, d).iter().map(|&v| (q - v) % q).collect();
        index(&c, q)
    }
}

/// Translations, negation (`q > 2`) and adjacent coordinate swaps of
/// `Z_q^d`, as maps on indices.
pub(crate) fn torus_maps(q: usize, d: usize) -> Vec<Box<dyn Fn(usize) -> usize>> {
    let mut maps: Vec<Box<dyn Fn(usize) -> usize>> = Vec::new();
    for axis in 0..d {
        maps.push(Box::new(move |x| {
            let mut c = coords(x, q, d);
            c[axis] = (c[axis] + 1) % q;
            index(&c, q)
        }));
    }
    if q > 2 {
        maps.push(Box::new(negation(q, d)));
    }
    for axis in 1..d {
        maps.push(Box::new(move |x| {
            let mut c = coords(x, q, d);
            c.swap(axis - 1, axis);
            index(&c, q)
        }));
    }
    maps
}

/// The torus game `T_q(d)` on `Z_q^d`, indexed row-major.
pub fn torus(q: usize, d: usize) -> Result<Game, ConstructionError> {
    params(q >= 2 && d >= 1, || {
        format!("torus needs q >= 2 and d >= 1, got ({q},{d})")
    })?;
    let n = torus_size(q, d).ok_or(ConstructionError::TooLarge(q.saturating_pow(d as u32)))?;
    let generators = torus_maps(q, d)
        .iter()
        .map(|f| Permutation::from_fn(n, f))
        .collect::<Result<Vec<_>, _>>()?;
    let origin = Construction::Torus { q, d };
    let labels: Vec<String> = (0..d).map(|i| format!("x{i}")).collect();
    Ok(Game::new(
        n,
        origin.to_string(),
        LineStore::explicit(n, torus_lines(q, d)?)?,
        generators,
    )?
    .with_layout(Layout {
        dims: vec![q; d],
        labels,
    })
    .with_origin(origin))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_counts() {
        assert_eq!(torus_lines(3, 1).unwrap(), vec![PointSet::full(3)]);
        let l = torus_lines(3, 2).unwrap();
        assert_eq!(l.len(), 12);
        assert!(l.iter().all(|s| s.len() == 3));
        assert_eq!(torus_lines(3, 3).unwrap().len(), 27 * 26 / 6);
        // over Z_2 every pair of points is a line
        assert_eq!(torus_lines(2, 2).unwrap().len(), 6);
        assert_eq!(torus_lines(2, 3).unwrap().len(), 28);
    }

    #[test]
    fn negation_preserves_lines() {
        let l = torus_lines(3, 2).unwrap();
        let neg = negation(3, 2);
        for &line in &l {
            assert!(l.contains(&line.map(&neg)));
        }
    }

    #[test]
    fn diagonal_is_a_line() {
        let g = torus(3, 2).unwrap();
        let diag: PointSet = [0, 4, 8].into_iter().collect();
        assert!(g.contains_line(diag));
        assert!(!g.contains_line([0, 4].into_iter().collect()));
    }

    #[test]
    fn rejects_large_boards() {
        assert!(torus(3, 4).is_err());
        assert!(torus(1, 2).is_err());
    }
}
