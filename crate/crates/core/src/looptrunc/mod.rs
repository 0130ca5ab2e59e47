//! Degree-truncated loop algebras `ℂ[t, t⁻¹] ⊗ 𝔤`, the quotient `𝔟̃ / (t − ε)𝔫̃`
//! with its normal-form reduction, and lifts of extended diagram automorphisms
//! to the loop algebra.

mod borel;
mod lift;

pub use borel::*;
pub use lift::*;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::linalg::SparseVec;
use crate::scalar::Scalar;

/// An element `Σ c · tᵈ b` of the loop algebra, with `d` restricted to a window.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyVector<T> {
    terms: BTreeMap<(i64, usize), T>,
    lo: i64,
    hi: i64,
}

impl<T: Scalar> PolyVector<T> {
    pub fn zero(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInput(format!("empty degree window [{lo}, {hi}]")));
        }
        Ok(Self { terms: BTreeMap::new(), lo, hi })
    }

    /// `c · tᵈ b_k`.
    pub fn monomial(lo: i64, hi: i64, degree: i64, index: usize, c: T) -> Result<Self> {
        let mut p = Self::zero(lo, hi)?;
        p.add_term(degree, index, c)?;
        Ok(p)
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, usize, &T)> {
        self.terms.iter().map(|((d, k), c)| (*d, *k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, degree: i64, index: usize) -> T {
        self.terms.get(&(degree, index)).cloned().unwrap_or_else(T::zero)
    }

    pub fn add_term(&mut self, degree: i64, index: usize, c: T) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if degree < self.lo || degree > self.hi {
            return Err(Error::WindowOverflow { degree, lo: self.lo, hi: self.hi });
        }
        let e = self.terms.entry((degree, index)).or_insert_with(T::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(degree, index));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (d, k, c) in other.terms() {
            out.add_term(d, k, c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self { terms: BTreeMap::new(), lo: self.lo, hi: self.hi };
        if !s.is_zero() {
            out.terms = self.terms.iter().map(|(key, c)| (*key, c.clone() * s)).collect();
        }
        out
    }

    /// Multiplication by `tᵏ`.
    pub fn shift(&self, k: i64) -> Result<Self> {
        let mut out = Self::zero(self.lo, self.hi)?;
        for (d, i, c) in self.terms() {
            out.add_term(d + k, i, c.clone())?;
        }
        Ok(out)
    }

    /// The same element in another window.
    pub fn rewindow(&self, lo: i64, hi: i64) -> Result<Self> {
        let mut out = Self::zero(lo, hi)?;
        for (d, i, c) in self.terms() {
            out.add_term(d, i, c.clone())?;
        }
        Ok(out)
    }

    /// Coordinates in the flattened basis `(d - lo) · dim + k`.
    pub fn to_flat(&self, dim: usize) -> SparseVec<T> {
        self.terms
            .iter()
            .map(|((d, k), c)| (((d - self.lo) as usize) * dim + k, c.clone()))
            .collect()
    }

    pub fn from_flat(lo: i64, hi: i64, dim: usize, v: &SparseVec<T>) -> Result<Self> {
        let mut out = Self::zero(lo, hi)?;
        for (i, c) in v {
            out.add_term(lo + (i / dim) as i64, i % dim, c.clone())?;
        }
        Ok(out)
    }

    /// Largest and smallest degree carrying a term.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let first = self.terms.keys().next()?.0;
        let last = self.terms.keys().next_back()?.0;
        Some((first, last))
    }
}

/// `[tⁱx, tʲy] = t^{i+j}[x, y]`, extended bilinearly. The result lives in the
/// window of `p`; a nonzero term outside it is an error.
pub fn poly_bracket<T: Scalar>(g: &LieAlgebra<T>, p: &PolyVector<T>, q: &PolyVector<T>) -> Result<PolyVector<T>> {
    let mut out = PolyVector::zero(p.lo, p.hi)?;
    for (di, i, a) in p.terms() {
        for (dj, j, b) in q.terms() {
            let ab = a.clone() * b;
            for (k, c) in g.bracket_basis(i, j) {
                out.add_term(di + dj, *k, ab.clone() * c)?;
            }
        }
    }
    Ok(out)
}

/// The same bracket on flattened coordinates of a common window `[lo, hi]`.
pub(crate) fn flat_bracket<T: Scalar>(
    g: &LieAlgebra<T>,
    lo: i64,
    hi: i64,
    a: &SparseVec<T>,
    b: &SparseVec<T>,
) -> Result<SparseVec<T>> {
    let dim = g.dim();
    let mut acc: BTreeMap<usize, T> = BTreeMap::new();
    for (x, cx) in a {
        let (dx, ix) = (lo + (x / dim) as i64, x % dim);
        for (y, cy) in b {
            let (dy, iy) = (lo + (y / dim) as i64, y % dim);
            let br = g.bracket_basis(ix, iy);
            if br.is_empty() {
                continue;
            }
            let d = dx + dy;
            if d < lo || d > hi {
                return Err(Error::WindowOverflow { degree: d, lo, hi });
            }
            let base = ((d - lo) as usize) * dim;
            let cc = cx.clone() * cy;
            for (k, c) in br {
                let e = acc.entry(base + k).or_insert_with(T::zero);
                *e += cc.clone() * c;
            }
        }
    }
    Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_simple;
    use crate::rootsys::RootSystem;
    use crate::scalar::q;

    #[test]
    fn bracket_of_monomials() {
        let g = build_simple::<crate::Q>(&RootSystem::from_type_str("A1").unwrap()).unwrap();
        let a = g.algebra();
        let te = PolyVector::monomial(-2, 2, 1, g.e(0), q(1, 1)).unwrap();
        let tf = PolyVector::monomial(-2, 2, 1, g.f(0), q(1, 1)).unwrap();
        let r = poly_bracket(a, &te, &tf).unwrap();
        assert_eq!(r, PolyVector::monomial(-2, 2, 2, g.h(0), q(1, 1)).unwrap());
        let t2e = te.shift(1).unwrap();
        assert!(matches!(poly_bracket(a, &t2e, &tf), Err(Error::WindowOverflow { degree: 3, .. })));
        let x = PolyVector::monomial(-2, 2, 0, g.e(0), q(1, 1)).unwrap();
        let y = PolyVector::monomial(-2, 2, 0, g.f(0), q(1, 1)).unwrap();
        let xy = poly_bracket(a, &x, &y).unwrap();
        assert_eq!(xy.to_flat(3), vec![(2 * 3 + g.h(0), q(1, 1))]);
        let flat = flat_bracket(a, -2, 2, &x.to_flat(3), &y.to_flat(3)).unwrap();
        assert_eq!(flat, xy.to_flat(3));
        assert_eq!(PolyVector::from_flat(-2, 2, 3, &flat).unwrap(), xy);
    }

    #[test]
    fn zero_products_do_not_overflow() {
        let g = build_simple::<crate::Q>(&RootSystem::from_type_str("A1").unwrap()).unwrap();
        let te = PolyVector::monomial(0, 1, 1, g.e(0), q(1, 1)).unwrap();
        assert!(poly_bracket(g.algebra(), &te, &te).unwrap().is_zero());
    }
}
