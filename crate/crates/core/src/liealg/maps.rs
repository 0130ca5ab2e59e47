use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{sparse_from_dense, Matrix, SparseVec};
use crate::scalar::Scalar;

use super::structure::is_ad_nilpotent;
use super::LieAlgebra;

/// Linear map between two Lie algebras, stored as a `target.dim × source.dim`
/// matrix whose column `j` is the image of `b_j`.
///
/// The verification flags start false and are only set by
/// [`check_homomorphism`].
#[derive(Clone)]
pub struct AlgebraMap<T> {
    source: Arc<LieAlgebra<T>>,
    target: Arc<LieAlgebra<T>>,
    matrix: Matrix<T>,
    verified_homomorphism: bool,
    verified_bijective: bool,
}

impl<T: Scalar> AlgebraMap<T> {
    pub fn new(source: Arc<LieAlgebra<T>>, target: Arc<LieAlgebra<T>>, matrix: Matrix<T>) -> Result<Self> {
        if matrix.rows() != target.dim() {
            return Err(Error::DimensionMismatch { expected: target.dim(), found: matrix.rows() });
        }
        if matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch { expected: source.dim(), found: matrix.cols() });
        }
        Ok(Self { source, target, matrix, verified_homomorphism: false, verified_bijective: false })
    }

    /// Builds the map from the images of the source basis vectors.
    pub fn from_images(source: Arc<LieAlgebra<T>>, target: Arc<LieAlgebra<T>>, images: &[Vec<T>]) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::DimensionMismatch { expected: source.dim(), found: images.len() });
        }
        let m = Matrix::from_columns(target.dim(), images)?;
        Self::new(source, target, m)
    }

    pub fn identity(g: Arc<LieAlgebra<T>>) -> Self {
        let n = g.dim();
        Self::new(g.clone(), g, Matrix::identity(n)).expect("square identity")
    }

    pub fn source(&self) -> &Arc<LieAlgebra<T>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<LieAlgebra<T>> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn verified_homomorphism(&self) -> bool {
        self.verified_homomorphism
    }

    pub fn verified_bijective(&self) -> bool {
        self.verified_bijective
    }

    /// True once both flags have been set by a full check.
    pub fn is_verified_isomorphism(&self) -> bool {
        self.verified_homomorphism && self.verified_bijective
    }

    pub fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        self.matrix.mul_vec(x)
    }

    /// Image of the basis vector `b_j`.
    pub fn image_of_basis(&self, j: usize) -> Vec<T> {
        self.matrix.column(j)
    }

    /// `self ∘ other`; flags are reset.
    pub fn compose(&self, other: &AlgebraMap<T>) -> Result<Self> {
        if other.target.dim() != self.source.dim() {
            return Err(Error::DimensionMismatch { expected: self.source.dim(), found: other.target.dim() });
        }
        Self::new(other.source.clone(), self.target.clone(), self.matrix.mul(&other.matrix)?)
    }

    /// Inverse map, when the matrix is invertible; flags are reset.
    pub fn inverse(&self) -> Option<Self> {
        let inv = self.matrix.inverse()?;
        Self::new(self.target.clone(), self.source.clone(), inv).ok()
    }

    /// `self^k` for an endomorphism.
    pub fn power(&self, k: usize) -> Result<Self> {
        let mut acc = Self::new(self.source.clone(), self.source.clone(), Matrix::identity(self.source.dim()))?;
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// Restricts attention to a subset of the source basis: true when
    /// `m([b_i, b_j]) = [m(b_i), m(b_j)]` for all listed pairs.
    pub fn respects_brackets_on(&self, indices: &[usize]) -> bool {
        self.first_failure(indices).is_none()
    }

    fn first_failure(&self, indices: &[usize]) -> Option<(usize, usize)> {
        let images: Vec<SparseVec<T>> =
            (0..self.source.dim()).map(|j| sparse_from_dense(&self.matrix.column(j))).collect();
        for (a, &i) in indices.iter().enumerate() {
            for &j in &indices[a + 1..] {
                let lhs = self.apply_sparse(self.source.bracket_basis(i, j));
                let rhs = self.target.bracket_sparse(&images[i], &images[j]);
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    fn apply_sparse(&self, x: &SparseVec<T>) -> SparseVec<T> {
        let n = self.target.dim();
        let mut out = vec![T::zero(); n];
        for (j, c) in x {
            for (i, o) in out.iter_mut().enumerate() {
                let m = &self.matrix[(i, *j)];
                if !m.is_zero() {
                    *o += c.clone() * m;
                }
            }
        }
        sparse_from_dense(&out)
    }
}

impl<T: Scalar> std::fmt::Debug for AlgebraMap<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AlgebraMap")
            .field("source_dim", &self.source.dim())
            .field("target_dim", &self.target.dim())
            .field("matrix", &self.matrix)
            .field("verified_homomorphism", &self.verified_homomorphism)
            .field("verified_bijective", &self.verified_bijective)
            .finish()
    }
}

/// First basis pair `(i, j)` with `m([b_i, b_j]) ≠ [m(b_i), m(b_j)]`.
pub fn homomorphism_witness<T: Scalar>(m: &AlgebraMap<T>) -> Option<(usize, usize)> {
    let all: Vec<usize> = (0..m.source.dim()).collect();
    m.first_failure(&all)
}

/// Full-basis bracket-compatibility check. Sets `verified_homomorphism` and
/// `verified_bijective` and returns whether the map is a homomorphism.
pub fn check_homomorphism<T: Scalar>(m: &mut AlgebraMap<T>) -> bool {
    m.verified_homomorphism = homomorphism_witness(m).is_none();
    m.verified_bijective = m.matrix.rows() == m.matrix.cols() && m.matrix.inverse().is_some();
    m.verified_homomorphism
}

/// `exp(ad x) = Σ (ad x)^k / k!` for an ad-nilpotent `x`, checked to be an automorphism.
pub fn exp_ad<T: Scalar>(g: &Arc<LieAlgebra<T>>, x: &[T]) -> Result<AlgebraMap<T>> {
    if x.len() != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: x.len() });
    }
    if !is_ad_nilpotent(g, x) {
        return Err(Error::NotNilpotent);
    }
    let ad = g.ad_matrix(x)?;
    let n = g.dim();
    let mut sum = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=n {
        term = ad.mul(&term)?.scale(&(T::one() / T::from_int(k as i64)));
        if term.is_zero() {
            break;
        }
        sum = sum.add(&term)?;
    }
    let mut m = AlgebraMap::new(g.clone(), g.clone(), sum)?;
    if !check_homomorphism(&mut m) || !m.verified_bijective() {
        return Err(Error::ConstructionBug("exp(ad x) failed the automorphism check".into()));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use num_rational::BigRational;

    fn sl2() -> Arc<LieAlgebra<BigRational>> {
        Arc::new(crate::liealg::tests::sl2())
    }

    #[test]
    fn identity_is_verified() {
        let mut id = AlgebraMap::identity(sl2());
        assert!(!id.verified_homomorphism());
        assert!(check_homomorphism(&mut id));
        assert!(id.is_verified_isomorphism());
    }

    #[test]
    fn generic_map_fails() {
        let g = sl2();
        let m = Matrix::from_fn(3, 3, |i, j| q((i * 3 + j + 1) as i64, 1 + (i == j) as i64));
        let mut map = AlgebraMap::new(g.clone(), g, m).unwrap();
        assert!(!check_homomorphism(&mut map));
        assert!(homomorphism_witness(&map).is_some());
    }

    #[test]
    fn exp_ad_e_on_sl2() {
        let g = sl2();
        let e = g.basis_vector(0);
        let m = exp_ad(&g, &e).unwrap();
        let ad = g.ad_matrix(&e).unwrap();
        let expected = Matrix::identity(3).add(&ad).unwrap().add(&ad.mul(&ad).unwrap().scale(&q(1, 2))).unwrap();
        assert_eq!(m.matrix(), &expected);
        // exp(ad e)(f) = f + h - e
        assert_eq!(m.image_of_basis(2), vec![q(-1, 1), q(1, 1), q(1, 1)]);
        assert!(exp_ad(&g, &vec![q(0, 1); 3]).unwrap().is_identity());
        assert!(matches!(exp_ad(&g, &g.basis_vector(1)), Err(Error::NotNilpotent)));
    }
}
