//! Subsets of Z_m (m a power of two) under rotation.
//!
//! A *pair set* holds at most one point of each opposite pair
//! `{x, x + m/2}`; it is *full* when it holds exactly one. Words are read
//! from an interval start `x` forwards, and at the first differing position
//! the word with a member is the greater one. An `r`-maximal point starts a
//! greatest length-`r` word; a *maximal* point is `m`-maximal.

mod key;
pub mod suites;
mod word;

use thiserror::Error;

pub use key::{key_params, verify_key_params, KeyCheck, KeyParams};
pub use word::{lex_compare, IntervalWord, MAX_WORD};

use word::mask;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PairSetError {
    #[error("modulus {0} is not a power of two in [4, 64]")]
    BadModulus(usize),
    #[error("point {point} is outside Z_{m}")]
    OutOfRange { point: usize, m: usize },
    #[error("set holds both {0} and its opposite {1}")]
    OppositePair(usize, usize),
    #[error("partial pair sets are nonempty")]
    Empty,
    #[error("interval length {0} outside [1, 64]")]
    BadLength(usize),
    #[error("word lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("malformed word {0:?}")]
    BadWord(String),
    #[error("maximal point is not unique: {0:?}")]
    TiedMaximum(Vec<usize>),
    #[error("internal contradiction: {0}")]
    Contradiction(String),
}

fn check_modulus(m: usize) -> Result<(), PairSetError> {
    if m.is_power_of_two() && (4..=64).contains(&m) {
        Ok(())
    } else {
        Err(PairSetError::BadModulus(m))
    }
}

/// An arbitrary subset of Z_m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicSet {
    m: usize,
    bits: u64,
}

impl CyclicSet {
    pub fn new(m: usize, points: impl IntoIterator<Item = usize>) -> Result<Self, PairSetError> {
        check_modulus(m)?;
        let mut bits = 0u64;
        for p in points {
            if p >= m {
                return Err(PairSetError::OutOfRange { point: p, m });
            }
            bits |= 1 << p;
        }
        Ok(CyclicSet { m, bits })
    }

    pub fn from_bits(m: usize, bits: u64) -> Result<Self, PairSetError> {
        check_modulus(m)?;
        Ok(CyclicSet {
            m,
            bits: bits & mask(m),
        })
    }

    pub fn m(self) -> usize {
        self.m
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn contains(self, x: usize) -> bool {
        self.bits >> (x % self.m) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn points(self) -> Vec<usize> {
        (0..self.m).filter(|&x| self.contains(x)).collect()
    }

    /// Complement within Z_m.
    pub fn complement(self) -> CyclicSet {
        CyclicSet {
            m: self.m,
            bits: !self.bits & mask(self.m),
        }
    }

    /// The set shifted by `k`: `x` becomes `x + k`.
    pub fn rotate(self, k: usize) -> CyclicSet {
        let k = k % self.m;
        let bits = if k == 0 {
            self.bits
        } else {
            (self.bits << k | self.bits >> (self.m - k)) & mask(self.m)
        };
        CyclicSet { m: self.m, bits }
    }

    /// Word of the set on `[x, x + r)`, cyclically.
    pub fn restrict(self, x: usize, r: usize) -> Result<IntervalWord, PairSetError> {
        if r == 0 || r > MAX_WORD {
            return Err(PairSetError::BadLength(r));
        }
        Ok(self.word(x, r))
    }

    #[inline]
    fn word(self, x: usize, r: usize) -> IntervalWord {
        let m = self.m;
        // rotate so that x sits at bit 0
        let base = self.rotate(m - x % m).bits;
        let mut bits = 0u64;
        let mut filled = 0;
        while filled < r {
            bits |= base << filled;
            filled += m;
        }
        IntervalWord::new(bits, r).expect("length already checked")
    }

    fn keys(self, r: usize) -> Vec<u64> {
        (0..self.m).map(|x| self.word(x, r).key()).collect()
    }

    /// All `r`-maximal points, ascending.
    pub fn r_maximal_points(self, r: usize) -> Result<Vec<usize>, PairSetError> {
        self.restrict(0, r)?;
        let keys = self.keys(r);
        let best = *keys.iter().max().expect("m >= 4");
        Ok((0..self.m).filter(|&x| keys[x] == best).collect())
    }

    /// All `r`-minimal points, ascending.
    pub fn r_minimal_points(self, r: usize) -> Result<Vec<usize>, PairSetError> {
        self.restrict(0, r)?;
        let keys = self.keys(r);
        let worst = *keys.iter().min().expect("m >= 4");
        Ok((0..self.m).filter(|&x| keys[x] == worst).collect())
    }

    pub fn is_r_maximal(self, x: usize, r: usize) -> Result<bool, PairSetError> {
        let own = self.restrict(x, r)?.key();
        Ok((0..self.m).all(|y| self.word(y, r).key() <= own))
    }

    pub fn is_r_minimal(self, x: usize, r: usize) -> Result<bool, PairSetError> {
        let own = self.restrict(x, r)?.key();
        Ok((0..self.m).all(|y| self.word(y, r).key() >= own))
    }

    /// The unique `m`-maximal point, or the tie.
    pub fn unique_maximal_point(self) -> Result<usize, PairSetError> {
        let pts = self.r_maximal_points(self.m)?;
        match pts.as_slice() {
            [x] => Ok(*x),
            _ => Err(PairSetError::TiedMaximum(pts)),
        }
    }
}

/// A subset of Z_m with at most one point of each opposite pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairSet(CyclicSet);

impl PairSet {
    /// A nonempty partial (or full) pair set.
    pub fn new(m: usize, points: impl IntoIterator<Item = usize>) -> Result<Self, PairSetError> {
        Self::from_set(CyclicSet::new(m, points)?)
    }

    pub fn from_bits(m: usize, bits: u64) -> Result<Self, PairSetError> {
        Self::from_set(CyclicSet::from_bits(m, bits)?)
    }

    pub fn from_set(set: CyclicSet) -> Result<Self, PairSetError> {
        if set.is_empty() {
            return Err(PairSetError::Empty);
        }
        let h = set.m / 2;
        let low = set.bits & mask(h);
        let high = set.bits >> h;
        if low & high != 0 {
            let x = (low & high).trailing_zeros() as usize;
            return Err(PairSetError::OppositePair(x, x + h));
        }
        Ok(PairSet(set))
    }

    pub fn as_set(self) -> CyclicSet {
        self.0
    }

    pub fn m(self) -> usize {
        self.0.m
    }

    /// `m / 4`, the window length of the key lemma.
    pub fn quarter(self) -> usize {
        self.0.m / 4
    }

    pub fn bits(self) -> u64 {
        self.0.bits
    }

    pub fn contains(self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn opposite(self, x: usize) -> usize {
        (x + self.0.m / 2) % self.0.m
    }

    /// Points with neither themselves nor their opposite in the set.
    pub fn free_points(self) -> CyclicSet {
        let h = self.0.m / 2;
        let taken_pairs = (self.0.bits | self.0.bits >> h) & mask(h);
        let free_pairs = !taken_pairs & mask(h);
        CyclicSet {
            m: self.0.m,
            bits: free_pairs | free_pairs << h,
        }
    }

    pub fn free_pair_count(self) -> usize {
        self.free_points().len() / 2
    }

    pub fn is_full(self) -> bool {
        self.free_points().is_empty()
    }

    pub fn rotate(self, k: usize) -> PairSet {
        PairSet(self.0.rotate(k))
    }

    pub fn restrict(self, x: usize, r: usize) -> Result<IntervalWord, PairSetError> {
        self.0.restrict(x, r)
    }

    pub fn is_r_maximal(self, x: usize, r: usize) -> Result<bool, PairSetError> {
        self.0.is_r_maximal(x, r)
    }

    /// The unique maximal point; a tie is reported as an error.
    pub fn maximal_point(self) -> Result<usize, PairSetError> {
        self.0.unique_maximal_point()
    }

    /// Complement of a full pair set (itself a full pair set).
    pub fn complement(self) -> Option<PairSet> {
        self.is_full().then(|| PairSet(self.0.complement()))
    }

    /// The set with every free point added; generally not a pair set.
    pub fn a_max(self) -> CyclicSet {
        CyclicSet {
            m: self.0.m,
            bits: self.0.bits | self.free_points().bits,
        }
    }

    /// Adds the free points of `[x, x + r)` in order, skipping any point
    /// whose opposite was added earlier in the same fill.
    pub fn fill_interval(self, x: usize, r: usize) -> PairSet {
        let m = self.0.m;
        let mut out = self;
        for i in 0..r {
            let p = (x + i) % m;
            if out.free_points().contains(p) {
                out.0.bits |= 1 << p;
            }
        }
        out
    }

    /// Every full pair set containing this one.
    pub fn completions(self) -> Vec<PairSet> {
        let h = self.0.m / 2;
        let free: Vec<usize> = (0..h).filter(|&p| self.free_points().contains(p)).collect();
        (0u64..1 << free.len())
            .map(|choice| {
                let mut bits = self.0.bits;
                for (i, &p) in free.iter().enumerate() {
                    bits |= 1 << if choice >> i & 1 == 1 { p + h } else { p };
                }
                PairSet(CyclicSet { m: self.0.m, bits })
            })
            .collect()
    }
}

/// All nonempty partial pair sets of Z_m (`3^(m/2) - 1` of them).
pub fn all_partial_pair_sets(m: usize) -> Result<Vec<PairSet>, PairSetError> {
    check_modulus(m)?;
    let h = m / 2;
    let total = 3u64.pow(h as u32);
    Ok((1..total)
        .map(|mut code| {
            let mut bits = 0u64;
            for p in 0..h {
                match code % 3 {
                    1 => bits |= 1 << p,
                    2 => bits |= 1 << (p + h),
                    _ => {}
                }
                code /= 3;
            }
            PairSet(CyclicSet { m, bits })
        })
        .collect())
}

/// All full pair sets of Z_m (`2^(m/2)` of them).
pub fn all_full_pair_sets(m: usize) -> Result<Vec<PairSet>, PairSetError> {
    check_modulus(m)?;
    let h = m / 2;
    Ok((0u64..1 << h)
        .map(|choice| {
            let bits = (0..h).fold(0u64, |acc, p| acc | 1 << if choice >> p & 1 == 1 { p + h } else { p });
            PairSet(CyclicSet { m, bits })
        })
        .collect())
}
