//! Ternary linear codes, monomial maps, and the code spanned by a symmetric
//! design's incidence matrix augmented with an all-one column.

use alloc::vec::Vec;
use core::fmt;

use crate::design::{validate_symmetric_design, DesignParams, IncidenceStructure};
use crate::error::{bail, Result};
use crate::gf3::{Rref, Trit, TritMatrix, TritVector};
use crate::perm::Permutation;

/// A linear code over GF(3), held as a full-rank generator in reduced
/// row-echelon form. Two codes are equal iff their generators are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TernaryCode {
    generator: TritMatrix,
    pivots: Vec<usize>,
}

impl TernaryCode {
    /// The row space of `g`.
    pub fn from_generator(g: &TritMatrix) -> Self {
        let Rref {
            matrix,
            rank,
            pivots,
        } = g.rref();
        let rows: Vec<usize> = (0..rank).collect();
        TernaryCode {
            generator: matrix.select_rows(&rows),
            pivots,
        }
    }

    /// Like [`from_generator`](Self::from_generator) but rejects dependent rows.
    pub fn from_full_rank_generator(g: &TritMatrix) -> Result<Self> {
        let c = Self::from_generator(g);
        if c.dimension() != g.rows() {
            bail!(Parameter, "generator rows are dependent: rank {} of {}", c.dimension(), g.rows());
        }
        Ok(c)
    }

    #[inline]
    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    #[inline]
    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    /// Generator in reduced row-echelon form.
    #[inline]
    pub fn generator(&self) -> &TritMatrix {
        &self.generator
    }

    #[inline]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &TritVector) -> bool {
        if v.len() != self.length() {
            return false;
        }
        let mut r = v.clone();
        for (row, &p) in self.pivots.iter().enumerate() {
            let a = r.get(p);
            if !a.is_zero() {
                r.add_scaled(&self.generator.row_vector(row), -a);
            }
        }
        r.is_zero()
    }

    /// The codeword `Σ m_i g_i`.
    pub fn encode(&self, message: &[Trit]) -> TritVector {
        assert_eq!(message.len(), self.dimension());
        let mut out = TritVector::zeros(self.length());
        for (i, &m) in message.iter().enumerate() {
            out.add_scaled(&self.generator.row_vector(i), m);
        }
        out
    }

    /// A generator of the dual code.
    pub fn parity_check(&self) -> TritMatrix {
        self.generator.kernel_basis()
    }

    pub fn dual(&self) -> TernaryCode {
        TernaryCode::from_generator(&self.parity_check())
    }

    pub fn image(&self, map: &Monomial) -> TernaryCode {
        let rows: Vec<TritVector> = self.generator.row_vectors().iter().map(|r| map.apply(r)).collect();
        let g = TritMatrix::from_vectors(self.length(), &rows).expect("lengths agree");
        TernaryCode::from_generator(&g)
    }
}

impl fmt::Debug for TernaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TernaryCode [{}, {}]\n{}", self.length(), self.dimension(), self.generator)
    }
}

/// True iff the dimension is `n/2` and all generator rows, including each
/// row with itself, are orthogonal.
pub fn is_self_dual(c: &TernaryCode) -> bool {
    2 * c.dimension() == c.length()
        && c
            .generator()
            .mul_transpose(c.generator())
            .map(|m| m.is_zero())
            .unwrap_or(false)
}

/// The code spanned by `[M | 1]` where `M` is the incidence matrix of `d`
/// over GF(3); the all-one column is the last coordinate.
pub fn augmented_design_code(d: &IncidenceStructure) -> TernaryCode {
    let m = d.to_trit_matrix();
    let ones = TritMatrix::from_fn(m.rows(), 1, |_, _| Trit::ONE);
    TernaryCode::from_generator(&m.hstack(&ones).expect("row counts agree"))
}

/// The self-dual `[48, 24]` code of a symmetric 2-(47,23,11) design.
pub fn code_from_design(d: &IncidenceStructure) -> Result<TernaryCode> {
    let p = DesignParams::SYM_47_23_11;
    if d.points() != p.v || d.blocks() != p.v || !validate_symmetric_design(d, &p)? {
        bail!(Parameter, "input is not a symmetric 2-(47,23,11) design");
    }
    let c = augmented_design_code(d);
    if c.dimension() != 24 {
        bail!(Invariant, "augmented incidence matrix has GF(3) rank {}, expected 24", c.dimension());
    }
    if !is_self_dual(&c) {
        bail!(Invariant, "augmented design code is not self-orthogonal");
    }
    Ok(c)
}

/// A monomial map `x ↦ y` with `y[perm(i)] = signs[i] · x[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub perm: Permutation,
    pub signs: Vec<Trit>,
}

impl Monomial {
    pub fn identity(n: usize) -> Self {
        Monomial {
            perm: Permutation::identity(n),
            signs: alloc::vec![Trit::ONE; n],
        }
    }

    pub fn new(perm: Permutation, signs: Vec<Trit>) -> Result<Self> {
        if perm.len() != signs.len() || signs.iter().any(|s| s.is_zero()) {
            bail!(Parameter, "signs must be nonzero and match the permutation length");
        }
        Ok(Monomial { perm, signs })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn apply(&self, x: &TritVector) -> TritVector {
        let mut y = TritVector::zeros(x.len());
        for i in 0..x.len() {
            y.set(self.perm.apply(i), self.signs[i] * x.get(i));
        }
        y
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Monomial) -> Monomial {
        let perm = self.perm.compose(&other.perm);
        let signs = (0..self.len())
            .map(|i| other.signs[i] * self.signs[other.perm.apply(i)])
            .collect();
        Monomial { perm, signs }
    }

    pub fn inverse(&self) -> Monomial {
        let perm = self.perm.inverse();
        let signs = (0..self.len()).map(|j| self.signs[perm.apply(j)]).collect();
        Monomial { perm, signs }
    }

    /// True iff the map carries every generator row of `a` into `b` and the
    /// dimensions agree.
    pub fn maps_code(&self, a: &TernaryCode, b: &TernaryCode) -> bool {
        a.length() == self.len()
            && b.length() == self.len()
            && a.dimension() == b.dimension()
            && a.generator().row_vectors().iter().all(|r| b.contains(&self.apply(r)))
    }
}

/// The `[4, 2, 3]` tetracode.
pub fn tetracode() -> TernaryCode {
    TernaryCode::from_generator(&TritMatrix::from_rows(&[[1u8, 1, 1, 0], [0, 1, 2, 1]]).unwrap())
}

/// The extended ternary Golay code `[12, 6, 6]`, generated by `[I | A]`
/// with `A` the bordered Paley matrix of order 6 built from the squares
/// modulo 5.
pub fn golay12() -> TernaryCode {
    let a: [[u8; 6]; 6] = [
        [0, 1, 1, 1, 1, 1],
        [1, 0, 1, 2, 2, 1],
        [1, 1, 0, 1, 2, 2],
        [1, 2, 1, 0, 1, 2],
        [1, 2, 2, 1, 0, 1],
        [1, 1, 2, 2, 1, 0],
    ];
    let g = TritMatrix::from_fn(6, 12, |r, c| {
        if c < 6 {
            Trit::new((r == c) as u8)
        } else {
            Trit::new(a[r][c - 6])
        }
    });
    TernaryCode::from_generator(&g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::paley_type1_design;
    use alloc::vec;

    #[test]
    fn tetracode_is_self_dual() {
        assert!(is_self_dual(&tetracode()));
        let small = TernaryCode::from_generator(&TritMatrix::from_rows(&[[1u8, 0, 0, 0]]).unwrap());
        assert!(!is_self_dual(&small));
    }

    #[test]
    fn golay_is_self_dual() {
        assert!(is_self_dual(&golay12()));
        assert_eq!(golay12().dimension(), 6);
    }

    #[test]
    fn paley47_code() {
        let c = code_from_design(&paley_type1_design(47).unwrap()).unwrap();
        assert_eq!((c.length(), c.dimension()), (48, 24));
        assert!(is_self_dual(&c));
        assert!(c.contains(&TritVector::ones(48)));
        assert_eq!(c.dual(), c);
    }

    #[test]
    fn rejects_non_design() {
        let mut d = paley_type1_design(47).unwrap();
        d.flip(0, 0);
        assert!(matches!(code_from_design(&d), Err(crate::Error::Parameter(_))));
    }

    #[test]
    fn monomial_algebra() {
        let m = Monomial::new(
            Permutation::new(vec![2, 0, 3, 1]).unwrap(),
            vec![Trit::ONE, Trit::TWO, Trit::TWO, Trit::ONE],
        )
        .unwrap();
        let x = TritVector::from_values(&[1, 2, 0, 1]);
        assert_eq!(m.inverse().apply(&m.apply(&x)), x);
        let sq = m.compose(&m);
        assert_eq!(sq.apply(&x), m.apply(&m.apply(&x)));
        let t = tetracode();
        let img = t.image(&m);
        assert!(m.maps_code(&t, &img));
        assert!(m.inverse().maps_code(&img, &t));
    }
}
