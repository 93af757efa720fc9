//! Permutations of `{0, .., n-1}`.

use alloc::vec::Vec;

use crate::error::{bail, Result};

/// A permutation stored as its image list: `self.apply(i) = images[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = alloc::vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                bail!(Parameter, "not a permutation: image {x} repeated or out of range");
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    pub fn pow(&self, e: usize) -> Permutation {
        let mut out = Permutation::identity(self.len());
        for _ in 0..e {
            out = self.compose(&out);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Orbits of the cyclic group generated by `self`, ordered by their
    /// smallest element; each lists `p, g(p), g²(p), …`.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = alloc::vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                orbit.push(x);
                x = self.0[x];
            }
            out.push(orbit);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.orbits().iter().fold(1, |acc, o| lcm(acc, o.len()))
    }
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn identity_orbits_are_singletons() {
        let o = Permutation::identity(5).orbits();
        assert_eq!(o.len(), 5);
        assert!(o.iter().all(|x| x.len() == 1));
    }

    #[test]
    fn six_cycle_is_one_orbit() {
        let p = Permutation::new(vec![1, 2, 3, 4, 5, 0]).unwrap();
        assert_eq!(p.orbits(), vec![vec![0, 1, 2, 3, 4, 5]]);
        assert_eq!(p.order(), 6);
        assert!(p.pow(6).is_identity());
        assert!(!p.pow(3).is_identity());
    }

    #[test]
    fn compose_and_inverse() {
        let p = Permutation::new(vec![2, 0, 1, 3]).unwrap();
        let q = Permutation::new(vec![1, 0, 3, 2]).unwrap();
        assert_eq!(p.compose(&q).apply(0), p.apply(q.apply(0)));
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
    }
}
