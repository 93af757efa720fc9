//! Arithmetic over GF(3) with a packed, word-parallel representation.
//!
//! Each trit occupies one bit in each of two 64-bit planes: `ones` marks
//! entries equal to 1 and `twos` marks entries equal to 2. A slot with both
//! bits set is never produced. Vectors and matrix rows are sequences of
//! [`Word`]s, so a length-48 row costs two machine words.

mod matrix;
pub mod naive;
mod vector;

use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

pub use matrix::{Rref, TritMatrix};
pub use vector::TritVector;

/// An element of GF(3), stored as its residue 0, 1 or 2.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Trit(u8);

impl Trit {
    pub const ZERO: Trit = Trit(0);
    pub const ONE: Trit = Trit(1);
    pub const TWO: Trit = Trit(2);

    /// Reduces an arbitrary integer modulo 3.
    #[inline]
    pub const fn new(v: u8) -> Trit {
        Trit(v % 3)
    }

    #[inline]
    pub fn from_i64(v: i64) -> Trit {
        Trit(v.rem_euclid(3) as u8)
    }

    #[inline]
    pub const fn value(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Multiplicative inverse; every nonzero element is its own inverse.
    #[inline]
    pub const fn inverse(self) -> Option<Trit> {
        if self.0 == 0 {
            None
        } else {
            Some(self)
        }
    }
}

impl fmt::Display for Trit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Trit {
    type Output = Trit;
    #[inline]
    fn add(self, rhs: Trit) -> Trit {
        Trit((self.0 + rhs.0) % 3)
    }
}

impl AddAssign for Trit {
    #[inline]
    fn add_assign(&mut self, rhs: Trit) {
        *self = *self + rhs;
    }
}

impl Sub for Trit {
    type Output = Trit;
    #[inline]
    fn sub(self, rhs: Trit) -> Trit {
        self + (-rhs)
    }
}

impl Mul for Trit {
    type Output = Trit;
    #[inline]
    fn mul(self, rhs: Trit) -> Trit {
        Trit((self.0 * rhs.0) % 3)
    }
}

impl Neg for Trit {
    type Output = Trit;
    #[inline]
    fn neg(self) -> Trit {
        Trit((3 - self.0) % 3)
    }
}

/// 64 packed trits.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub ones: u64,
    pub twos: u64,
}

impl Word {
    pub const ZERO: Word = Word { ones: 0, twos: 0 };

    #[inline(always)]
    pub fn add(self, o: Word) -> Word {
        let t = (self.ones | o.twos) ^ (self.twos | o.ones);
        Word {
            ones: (self.twos | o.twos) ^ t,
            twos: (self.ones | o.ones) ^ t,
        }
    }

    #[inline(always)]
    pub fn neg(self) -> Word {
        Word {
            ones: self.twos,
            twos: self.ones,
        }
    }

    #[inline(always)]
    pub fn sub(self, o: Word) -> Word {
        self.add(o.neg())
    }

    #[inline(always)]
    pub fn scale(self, c: Trit) -> Word {
        match c.0 {
            0 => Word::ZERO,
            1 => self,
            _ => self.neg(),
        }
    }

    /// Support mask.
    #[inline(always)]
    pub fn support(self) -> u64 {
        self.ones | self.twos
    }

    #[inline(always)]
    pub fn weight(self) -> u32 {
        self.support().count_ones()
    }

    #[inline(always)]
    pub fn masked(self, mask: u64) -> Word {
        Word {
            ones: self.ones & mask,
            twos: self.twos & mask,
        }
    }

    /// Inner product contribution as a pair (number of +1 products,
    /// number of -1 products).
    #[inline(always)]
    pub fn dot_counts(self, o: Word) -> (u32, u32) {
        let plus = (self.ones & o.ones) | (self.twos & o.twos);
        let minus = (self.ones & o.twos) | (self.twos & o.ones);
        (plus.count_ones(), minus.count_ones())
    }

    #[inline]
    pub fn get(self, i: usize) -> Trit {
        let b = 1u64 << i;
        if self.ones & b != 0 {
            Trit::ONE
        } else if self.twos & b != 0 {
            Trit::TWO
        } else {
            Trit::ZERO
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, t: Trit) {
        let b = 1u64 << i;
        self.ones &= !b;
        self.twos &= !b;
        match t.0 {
            1 => self.ones |= b,
            2 => self.twos |= b,
            _ => {}
        }
    }
}

/// Number of words needed for `len` trits.
#[inline]
pub const fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

/// `dst += c * src`, word by word.
#[inline]
pub fn add_scaled_assign(dst: &mut [Word], src: &[Word], c: Trit) {
    match c.0 {
        0 => {}
        1 => dst.iter_mut().zip(src).for_each(|(d, s)| *d = d.add(*s)),
        _ => dst.iter_mut().zip(src).for_each(|(d, s)| *d = d.sub(*s)),
    }
}

#[inline]
pub fn scale_assign(dst: &mut [Word], c: Trit) {
    dst.iter_mut().for_each(|d| *d = d.scale(c));
}

#[inline]
pub fn weight(words: &[Word]) -> usize {
    words.iter().map(|w| w.weight() as usize).sum()
}

#[inline]
pub fn dot(a: &[Word], b: &[Word]) -> Trit {
    let (mut plus, mut minus) = (0u32, 0u32);
    for (x, y) in a.iter().zip(b) {
        let (p, m) = x.dot_counts(*y);
        plus += p;
        minus += m;
    }
    Trit::new(((plus % 3) + 2 * (minus % 3)) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_words() -> impl Iterator<Item = (Trit, Word)> {
        (0..3u8).map(|v| {
            let mut w = Word::ZERO;
            w.set(5, Trit::new(v));
            (Trit::new(v), w)
        })
    }

    #[test]
    fn field_tables() {
        for a in 0..3u8 {
            for b in 0..3u8 {
                let (x, y) = (Trit::new(a), Trit::new(b));
                assert_eq!((x + y).value(), (a + b) % 3);
                assert_eq!((x * y).value(), (a * b) % 3);
                assert_eq!((x - y).value(), (3 + a - b) % 3);
            }
        }
        assert_eq!(-Trit::ZERO, Trit::ZERO);
        assert_eq!(-Trit::ONE, Trit::TWO);
        assert_eq!(-Trit::TWO, Trit::ONE);
    }

    #[test]
    fn word_ops_match_scalar() {
        for (a, wa) in all_words() {
            for (b, wb) in all_words() {
                assert_eq!(wa.add(wb).get(5), a + b);
                assert_eq!(wa.sub(wb).get(5), a - b);
                assert_eq!(wa.neg().get(5), -a);
                for c in 0..3 {
                    assert_eq!(wa.scale(Trit::new(c)).get(5), a * Trit::new(c));
                }
                let s = wa.add(wb);
                assert_eq!(s.ones & s.twos, 0);
                assert_eq!(dot(&[wa], &[wb]), a * b);
            }
        }
    }
}
