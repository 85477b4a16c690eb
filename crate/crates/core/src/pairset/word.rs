use std::cmp::Ordering;

use super::PairSetError;

/// Longest interval word supported.
pub const MAX_WORD: usize = 64;

/// Presence indicators of a set on an interval, rotated to start at 0:
/// bit `i` records whether `x + i` is a member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntervalWord {
    bits: u64,
    len: usize,
}

impl IntervalWord {
    pub fn new(bits: u64, len: usize) -> Result<Self, PairSetError> {
        if len == 0 || len > MAX_WORD {
            return Err(PairSetError::BadLength(len));
        }
        Ok(IntervalWord {
            bits: bits & mask(len),
            len,
        })
    }

    /// Parses a word such as `"1100"` (first character is position 0).
    pub fn parse(s: &str) -> Result<Self, PairSetError> {
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '1' if i < MAX_WORD => bits |= 1 << i,
                '0' if i < MAX_WORD => {}
                _ => return Err(PairSetError::BadWord(s.to_string())),
            }
        }
        Self::new(bits, s.chars().count())
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.len
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn get(self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    /// Order key: larger key means lexicographically greater word.
    #[inline]
    pub(crate) fn key(self) -> u64 {
        self.bits.reverse_bits() >> (64 - self.len)
    }
}

impl std::fmt::Display for IntervalWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// Lexicographic comparison: at the first differing position, the word
/// holding a 1 is the greater one.
pub fn lex_compare(u: IntervalWord, v: IntervalWord) -> Result<Ordering, PairSetError> {
    if u.len != v.len {
        return Err(PairSetError::LengthMismatch(u.len, v.len));
    }
    Ok(u.key().cmp(&v.key()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> IntervalWord {
        IntervalWord::parse(s).unwrap()
    }

    #[test]
    fn first_presence_wins() {
        assert_eq!(lex_compare(w("1100"), w("1001")).unwrap(), Ordering::Greater);
        assert_eq!(lex_compare(w("0011"), w("0011")).unwrap(), Ordering::Equal);
        assert_eq!(lex_compare(w("0111"), w("1000")).unwrap(), Ordering::Less);
        assert!(lex_compare(w("01"), w("011")).is_err());
    }

    #[test]
    fn display_round_trip() {
        assert_eq!(w("10110").to_string(), "10110");
        assert!(IntervalWord::parse("10a").is_err());
        assert!(IntervalWord::parse("").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn superset_compares_at_least(a in any::<u64>(), extra in any::<u64>(), len in 1usize..=64) {
                let sub = IntervalWord::new(a, len).unwrap();
                let sup = IntervalWord::new(a | extra, len).unwrap();
                prop_assert_ne!(lex_compare(sup, sub).unwrap(), Ordering::Less);
            }

            #[test]
            fn agrees_with_first_difference(a in any::<u64>(), b in any::<u64>(), len in 1usize..=64) {
                let (u, v) = (IntervalWord::new(a, len).unwrap(), IntervalWord::new(b, len).unwrap());
                let expected = (0..len)
                    .find(|&i| u.get(i) != v.get(i))
                    .map_or(Ordering::Equal, |i| if u.get(i) { Ordering::Greater } else { Ordering::Less });
                prop_assert_eq!(lex_compare(u, v).unwrap(), expected);
            }
        }
    }
}
