use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{add_scaled_assign, words_for, Trit, Word};
use crate::error::{bail, Result};

/// A vector over GF(3) in packed form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TritVector {
    len: usize,
    words: Vec<Word>,
}

impl TritVector {
    pub fn zeros(len: usize) -> Self {
        TritVector {
            len,
            words: alloc::vec![Word::ZERO; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, Trit::ONE);
        }
        v
    }

    /// Builds a vector from residues; values are reduced mod 3.
    pub fn from_values(values: &[u8]) -> Self {
        let mut v = Self::zeros(values.len());
        for (i, &x) in values.iter().enumerate() {
            v.set(i, Trit::new(x));
        }
        v
    }

    pub(crate) fn from_words(len: usize, words: Vec<Word>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        TritVector { len, words }
    }

    /// Parses a string of the digits `0`, `1`, `2`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut v = Self::zeros(s.len());
        for (i, ch) in s.bytes().enumerate() {
            match ch {
                b'0'..=b'2' => v.set(i, Trit::new(ch - b'0')),
                _ => bail!(Parameter, "invalid trit character {:?}", ch as char),
            }
        }
        Ok(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    #[inline]
    pub(crate) fn words_mut(&mut self) -> &mut [Word] {
        &mut self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> Trit {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        self.words[i / 64].get(i % 64)
    }

    #[inline]
    pub fn set(&mut self, i: usize, t: Trit) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        self.words[i / 64].set(i % 64, t)
    }

    pub fn weight(&self) -> usize {
        super::weight(&self.words)
    }

    /// Indices of nonzero entries, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| !self.get(i).is_zero()).collect()
    }

    pub fn dot(&self, other: &TritVector) -> Trit {
        assert_eq!(self.len, other.len);
        super::dot(&self.words, &other.words)
    }

    pub fn add_scaled(&mut self, other: &TritVector, c: Trit) {
        assert_eq!(self.len, other.len);
        add_scaled_assign(&mut self.words, &other.words, c);
    }

    pub fn scaled(&self, c: Trit) -> TritVector {
        TritVector {
            len: self.len,
            words: self.words.iter().map(|w| w.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| w.support() == 0)
    }

    pub fn to_values(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i).value()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = Trit> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// The lexicographically smaller of `self` and `-self` (compared as
    /// digit strings), used to represent a projective point.
    pub fn normalized_sign(&self) -> TritVector {
        match self.iter().find(|t| !t.is_zero()) {
            Some(Trit::TWO) => self.scaled(Trit::TWO),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for TritVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|t| (b'0' + t.value()) as char).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for TritVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TritVector({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_display_weight() {
        let v = TritVector::parse("1201").unwrap();
        assert_eq!(alloc::format!("{v}"), "1201");
        assert_eq!(v.weight(), 3);
        assert_eq!(v.support(), alloc::vec![0, 1, 3]);
        assert!(TritVector::parse("13").is_err());
    }

    #[test]
    fn long_vectors_span_words() {
        let mut v = TritVector::zeros(130);
        v.set(129, Trit::TWO);
        v.set(64, Trit::ONE);
        assert_eq!(v.weight(), 2);
        assert_eq!(v.get(129), Trit::TWO);
        let w = v.scaled(Trit::TWO);
        assert_eq!(w.get(64), Trit::TWO);
        assert_eq!(v.dot(&v), Trit::TWO);
    }

    #[test]
    fn sign_normalization() {
        let v = TritVector::parse("0210").unwrap();
        assert_eq!(v.normalized_sign().to_values(), alloc::vec![0, 1, 2, 0]);
    }
}
