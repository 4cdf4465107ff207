//! Words over the generators z0, z1, …, ordered degree-lexicographically.

use crate::error::Error;
use std::cmp::Ordering;
use std::fmt;

/// A word in the free monoid: a finite sequence of generator indices.
///
/// `Ord` is deglex with the natural generator order z0 < z1 < …: shorter
/// words come first, equal lengths compare lexicographically. This is the
/// monomial order used for leading terms throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn gen(i: u8) -> Word {
        Word(vec![i])
    }

    pub fn from_letters(letters: impl Into<Vec<u8>>) -> Word {
        Word(letters.into())
    }

    /// Parse compact letter spelling: 'a' is generator 0, 'b' is 1, ….
    pub fn parse_letters(s: &str) -> Result<Word, Error> {
        if s.is_empty() {
            return Err(Error::EmptyWord);
        }
        let mut v = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                'a'..='z' => v.push(ch as u8 - b'a'),
                _ => return Err(Error::EmptyWord),
            }
        }
        Ok(Word(v))
    }

    /// Compact letter spelling; the empty word prints as "1".
    pub fn letter_str(&self) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0.iter().map(|&g| (b'a' + g) as char).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn max_letter(&self) -> Option<u8> {
        self.0.iter().copied().max()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, e: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() * e);
        for _ in 0..e {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix(&self, from: usize) -> Word {
        Word(self.0[from..].to_vec())
    }

    /// True when `self` is `base` repeated `e` times.
    pub fn is_power_of(&self, base: &Word, e: usize) -> bool {
        base.len() * e == self.len()
            && self.0.chunks(base.len().max(1)).all(|c| c == &base.0[..])
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.letter_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse_letters(s).unwrap()
    }

    #[test]
    fn deglex_order() {
        // 1 < a < b < aa < ab < ba < bb
        let seq = [
            Word::empty(),
            w("a"),
            w("b"),
            w("aa"),
            w("ab"),
            w("ba"),
            w("bb"),
        ];
        for pair in seq.windows(2) {
            assert!(pair[0] < pair[1], "{:?} < {:?}", pair[0], pair[1]);
        }
    }

    #[test]
    fn concat_and_pow() {
        assert_eq!(w("ab").concat(&w("ba")), w("abba"));
        assert_eq!(w("ab").pow(3), w("ababab"));
        assert_eq!(w("ab").pow(0), Word::empty());
        assert!(w("ababab").is_power_of(&w("ab"), 3));
        assert!(!w("ababab").is_power_of(&w("ba"), 3));
    }

    #[test]
    fn letter_spelling() {
        assert_eq!(w("cab").letters(), &[2, 0, 1]);
        assert_eq!(w("cab").letter_str(), "cab");
        assert_eq!(Word::empty().letter_str(), "1");
        assert_eq!(Word::parse_letters(""), Err(Error::EmptyWord));
        assert!(Word::parse_letters("a b").is_err());
    }
}
