use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashSet;

use super::pointset::{Point, PointSet};
use super::GameError;

/// Analytic description of a line family too large to list.
///
/// `is_line` is only asked about sets of exactly `line_size()` points;
/// `contains_line` must answer for arbitrary sets and agree with
/// "some `line_size()`-subset satisfies `is_line`".
pub trait LineOracle: Send + Sync + fmt::Debug {
    fn line_size(&self) -> usize;

    fn is_line(&self, s: PointSet) -> bool;

    fn contains_line(&self, s: PointSet) -> bool;
}

/// Explicitly listed lines with a per-point incidence index.
#[derive(Clone, Debug)]
pub struct ExplicitLines {
    lines: Vec<PointSet>,
    set: FxHashSet<PointSet>,
    // lines through each point, with that point removed
    through: Vec<Vec<PointSet>>,
    min_size: usize,
}

impl ExplicitLines {
    pub fn new(n: usize, lines: Vec<PointSet>) -> Result<Self, GameError> {
        let board = PointSet::full(n);
        let mut set = FxHashSet::default();
        let mut through = vec![Vec::new(); n];
        for &line in &lines {
            if line.is_empty() {
                return Err(GameError::EmptyLine);
            }
            if !line.is_subset(board) {
                return Err(GameError::PointOutOfRange { set: line, n });
            }
            if !set.insert(line) {
                return Err(GameError::DuplicateLine(line));
            }
            for x in line {
                let mut rest = line;
                rest.remove(x);
                through[x].push(rest);
            }
        }
        let min_size = lines.iter().map(|l| l.len()).min().unwrap_or(usize::MAX);
        Ok(ExplicitLines {
            lines,
            set,
            through,
            min_size,
        })
    }

    pub fn lines(&self) -> &[PointSet] {
        &self.lines
    }

    pub fn is_line(&self, s: PointSet) -> bool {
        self.set.contains(&s)
    }

    pub fn min_size(&self) -> usize {
        self.min_size
    }

    pub fn contains_line(&self, s: PointSet) -> bool {
        s.len() >= self.min_size && self.lines.iter().any(|l| l.is_subset(s))
    }

    #[inline]
    fn contains_line_through(&self, s: PointSet, x: Point) -> bool {
        s.len() >= self.min_size && self.through[x].iter().any(|rest| rest.is_subset(s))
    }
}

/// The family of losing lines of a game.
#[derive(Clone, Debug)]
pub enum LineStore {
    Explicit(ExplicitLines),
    Implicit(Arc<dyn LineOracle>),
}

impl LineStore {
    pub fn explicit(n: usize, lines: Vec<PointSet>) -> Result<Self, GameError> {
        ExplicitLines::new(n, lines).map(LineStore::Explicit)
    }

    pub fn contains_line(&self, s: PointSet) -> bool {
        match self {
            LineStore::Explicit(e) => e.contains_line(s),
            LineStore::Implicit(o) => o.contains_line(s),
        }
    }

    /// `contains_line(s)` given that `s` minus `x` contains no line.
    #[inline]
    pub fn completes_line(&self, s: PointSet, x: Point) -> bool {
        match self {
            LineStore::Explicit(e) => e.contains_line_through(s, x),
            LineStore::Implicit(o) => o.contains_line(s),
        }
    }

    /// Smallest line size (the uniform size for implicit stores).
    pub fn min_line_size(&self) -> usize {
        match self {
            LineStore::Explicit(e) => e.min_size(),
            LineStore::Implicit(o) => o.line_size(),
        }
    }

    pub fn max_line_size(&self) -> usize {
        match self {
            LineStore::Explicit(e) => e.lines().iter().map(|l| l.len()).max().unwrap_or(0),
            LineStore::Implicit(o) => o.line_size(),
        }
    }

    pub fn as_explicit(&self) -> Option<&ExplicitLines> {
        match self {
            LineStore::Explicit(e) => Some(e),
            LineStore::Implicit(_) => None,
        }
    }
}
