//! Finite-dimensional Lie algebras given by a labeled basis and a sparse
//! structure-constant table, together with generic structural queries.

mod derivations;
mod maps;
mod structure;
mod weights;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{sparse_axpy, Matrix, SparseVec};
use crate::scalar::Scalar;

pub use derivations::{derivations, is_derivation, DEFAULT_DERIVATION_CAP};
pub use maps::{check_homomorphism, exp_ad, homomorphism_witness, AlgebraMap};
pub use structure::{
    center, centralizer, check_jacobi, derived_subalgebra, generated_subalgebra, is_ad_nilpotent, normalizer,
    GeneratedSubalgebra, JacobiWitness, Provenance,
};
pub use weights::{weight_decomposition, WeightDecomposition};

/// A Lie algebra with basis `b_0, ..., b_{dim-1}`.
///
/// `table[i * dim + j]` holds `[b_i, b_j]` as a sorted sparse vector. The
/// table is kept antisymmetric by construction.
#[derive(Clone, PartialEq)]
pub struct LieAlgebra<T> {
    labels: Vec<String>,
    table: Vec<SparseVec<T>>,
    named: BTreeMap<String, Vec<usize>>,
}

impl<T: Scalar> LieAlgebra<T> {
    /// Abelian algebra on the given labels; brackets are filled in with
    /// [`LieAlgebra::set_bracket`].
    pub fn abelian(labels: Vec<String>) -> Self {
        let n = labels.len();
        Self { labels, table: vec![Vec::new(); n * n], named: BTreeMap::new() }
    }

    /// Sets `[b_i, b_j] = v` and `[b_j, b_i] = -v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: SparseVec<T>) -> Result<()> {
        let n = self.dim();
        if i >= n || j >= n || v.iter().any(|(k, _)| *k >= n) {
            return Err(Error::InvalidInput(format!("bracket index out of range in [{i},{j}]")));
        }
        let v: SparseVec<T> = v.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        if i == j && !v.is_empty() {
            return Err(Error::InvalidInput(format!("[b_{i}, b_{i}] must vanish")));
        }
        debug_assert!(v.windows(2).all(|w| w[0].0 < w[1].0), "sparse vectors are sorted");
        self.table[j * n + i] = v.iter().map(|(k, x)| (*k, -x.clone())).collect();
        self.table[i * n + j] = v;
        Ok(())
    }

    /// Builds an algebra from a full set of basis brackets. Every unordered
    /// pair may be given once; both orders of the same pair must agree.
    pub fn from_brackets(labels: Vec<String>, brackets: impl IntoIterator<Item = (usize, usize, SparseVec<T>)>) -> Result<Self> {
        let mut g = Self::abelian(labels);
        let n = g.dim();
        let mut seen = vec![false; n * n];
        for (i, j, v) in brackets {
            let v = normalize_sparse(v);
            if i < n && j < n && seen[i * n + j] {
                if g.table[i * n + j] != v {
                    return Err(Error::InvalidInput(format!("conflicting values for [b_{i}, b_{j}]")));
                }
                continue;
            }
            g.set_bracket(i, j, v)?;
            if i < n && j < n {
                seen[i * n + j] = true;
                seen[j * n + i] = true;
            }
        }
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `[b_i, b_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec<T> {
        &self.table[i * self.dim() + j]
    }

    /// Bracket of two sparse vectors.
    pub fn bracket_sparse(&self, x: &SparseVec<T>, y: &SparseVec<T>) -> SparseVec<T> {
        let mut acc: BTreeMap<usize, T> = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                let entry = self.bracket_basis(*i, *j);
                if entry.is_empty() {
                    continue;
                }
                let s = a.clone() * b;
                for (k, c) in entry {
                    *acc.entry(*k).or_insert_with(T::zero) += s.clone() * c;
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Bracket of two dense vectors.
    pub fn bracket(&self, x: &[T], y: &[T]) -> Result<Vec<T>> {
        self.check_len(x)?;
        self.check_len(y)?;
        let xs = crate::linalg::sparse_from_dense(x);
        let ys = crate::linalg::sparse_from_dense(y);
        Ok(crate::linalg::dense_from_sparse(self.dim(), &self.bracket_sparse(&xs, &ys)))
    }

    /// Matrix of `ad x` in the standard basis.
    pub fn ad_matrix(&self, x: &[T]) -> Result<Matrix<T>> {
        self.check_len(x)?;
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.bracket_basis(i, j) {
                    m[(*k, j)] += a.clone() * c;
                }
            }
        }
        Ok(m)
    }

    /// Matrix of `ad b_i`.
    pub fn ad_basis(&self, i: usize) -> Matrix<T> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for (k, c) in self.bracket_basis(i, j) {
                m[(*k, j)] = c.clone();
            }
        }
        m
    }

    /// Unit vector `b_i`.
    pub fn basis_vector(&self, i: usize) -> Vec<T> {
        let mut v = vec![T::zero(); self.dim()];
        v[i] = T::one();
        v
    }

    pub fn named_subspace(&self, name: &str) -> Option<&[usize]> {
        self.named.get(name).map(Vec::as_slice)
    }

    pub fn named_subspaces(&self) -> &BTreeMap<String, Vec<usize>> {
        &self.named
    }

    pub fn set_named_subspace(&mut self, name: &str, mut indices: Vec<usize>) {
        indices.sort_unstable();
        indices.dedup();
        self.named.insert(name.to_string(), indices);
    }

    /// True when the span of the given basis vectors is closed under bracket.
    pub fn is_subalgebra(&self, indices: &[usize]) -> bool {
        let mut inside = vec![false; self.dim()];
        indices.iter().for_each(|&i| inside[i] = true);
        indices.iter().all(|&i| indices.iter().all(|&j| self.bracket_basis(i, j).iter().all(|(k, _)| inside[*k])))
    }

    /// True when the span of the given basis vectors is an ideal.
    pub fn is_ideal(&self, indices: &[usize]) -> bool {
        let mut inside = vec![false; self.dim()];
        indices.iter().for_each(|&i| inside[i] = true);
        indices.iter().all(|&i| (0..self.dim()).all(|j| self.bracket_basis(i, j).iter().all(|(k, _)| inside[*k])))
    }

    /// True when all brackets between the given basis vectors vanish.
    pub fn is_abelian_on(&self, indices: &[usize]) -> bool {
        indices.iter().all(|&i| indices.iter().all(|&j| self.bracket_basis(i, j).is_empty()))
    }

    /// True when every structure constant is an integer.
    pub fn has_integral_constants(&self) -> bool {
        self.table.iter().all(|v| v.iter().all(|(_, c)| c.is_integral()))
    }

    /// Largest absolute value among the structure constants.
    pub fn max_abs_constant(&self) -> T {
        let mut best = T::zero();
        for v in &self.table {
            for (_, c) in v {
                if c.abs() > best {
                    best = c.abs();
                }
            }
        }
        best
    }

    /// Quotient by an ideal spanned by basis vectors: those vectors are
    /// dropped and the remaining brackets are projected.
    pub fn quotient_by_basis(&self, ideal: &[usize]) -> Result<(Self, Vec<usize>)> {
        if !self.is_ideal(ideal) {
            return Err(Error::InvalidInput("quotient requires an ideal".into()));
        }
        let keep: Vec<usize> = (0..self.dim()).filter(|i| !ideal.contains(i)).collect();
        let mut new_index = vec![usize::MAX; self.dim()];
        for (n, &o) in keep.iter().enumerate() {
            new_index[o] = n;
        }
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let mut q = Self::abelian(labels);
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a + 1) {
                let v: SparseVec<T> = self
                    .bracket_basis(i, j)
                    .iter()
                    .filter(|(k, _)| new_index[*k] != usize::MAX)
                    .map(|(k, c)| (new_index[*k], c.clone()))
                    .collect();
                q.set_bracket(a, b, v)?;
            }
        }
        for (name, idx) in &self.named {
            let mapped: Vec<usize> =
                idx.iter().filter(|&&i| new_index[i] != usize::MAX).map(|&i| new_index[i]).collect();
            q.set_named_subspace(name, mapped);
        }
        Ok((q, keep))
    }

    /// Same algebra with a different (exact) scalar type.
    pub fn convert<U: Scalar>(&self) -> Option<LieAlgebra<U>> {
        let table = self
            .table
            .iter()
            .map(|v| v.iter().map(|(k, c)| c.to_rational().map(|q| (*k, U::from_rational(&q)))).collect())
            .collect::<Option<Vec<SparseVec<U>>>>()?;
        Some(LieAlgebra { labels: self.labels.clone(), table, named: self.named.clone() })
    }

    fn check_len(&self, x: &[T]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() });
        }
        Ok(())
    }

    /// Flips the sign of one stored structure constant without restoring
    /// antisymmetry. Used to test that corrupted tables are caught.
    #[doc(hidden)]
    pub fn corrupt_entry(&mut self, i: usize, j: usize) {
        let n = self.dim();
        if let Some(e) = self.table[i * n + j].first_mut() {
            e.1 = -e.1.clone();
        }
        let v = self.table[i * n + j].clone();
        self.table[j * n + i] = v.iter().map(|(k, x)| (*k, -x.clone())).collect();
    }
}

impl<T: fmt::Display> fmt::Debug for LieAlgebra<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.labels.len();
        writeln!(f, "LieAlgebra(dim {n}) {{")?;
        for i in 0..n {
            for j in i + 1..n {
                let v = &self.table[i * n + j];
                if v.is_empty() {
                    continue;
                }
                let terms: Vec<String> = v.iter().map(|(k, c)| format!("{c}*{}", self.labels[*k])).collect();
                writeln!(f, "  [{}, {}] = {}", self.labels[i], self.labels[j], terms.join(" + "))?;
            }
        }
        write!(f, "}}")
    }
}

/// Sorts a sparse vector, merges duplicate indices and drops zeros.
pub fn normalize_sparse<T: Scalar>(v: SparseVec<T>) -> SparseVec<T> {
    let mut acc: BTreeMap<usize, T> = BTreeMap::new();
    for (k, c) in v {
        *acc.entry(k).or_insert_with(T::zero) += c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `Σ s_i v_i` over sparse vectors.
pub fn sparse_combination<T: Scalar>(terms: &[(T, &SparseVec<T>)]) -> SparseVec<T> {
    terms.iter().fold(Vec::new(), |acc, (s, v)| sparse_axpy(&acc, s, v))
}

/// Evaluates the bracket of two dense vectors. Free-function form of
/// [`LieAlgebra::bracket`].
pub fn bracket_of<T: Scalar>(g: &LieAlgebra<T>, x: &[T], y: &[T]) -> Result<Vec<T>> {
    g.bracket(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use num_rational::BigRational;

    pub(crate) fn sl2() -> LieAlgebra<BigRational> {
        // basis e, h, f
        LieAlgebra::from_brackets(
            vec!["e".into(), "h".into(), "f".into()],
            vec![(1, 0, vec![(0, q(2, 1))]), (1, 2, vec![(2, q(-2, 1))]), (0, 2, vec![(1, q(1, 1))])],
        )
        .unwrap()
    }

    #[test]
    fn sl2_relations() {
        let g = sl2();
        assert_eq!(g.bracket_basis(1, 0), &vec![(0, q(2, 1))]);
        assert_eq!(g.bracket_basis(0, 1), &vec![(0, q(-2, 1))]);
        assert_eq!(g.bracket_basis(2, 0), &vec![(1, q(-1, 1))]);
        let x = vec![q(1, 2), q(3, 1), q(-1, 1)];
        assert!(g.bracket(&x, &x).unwrap().iter().all(|c| c == &q(0, 1)));
        assert!(g.has_integral_constants());
    }

    #[test]
    fn rejects_bad_input() {
        let mut g = sl2();
        assert!(g.set_bracket(0, 0, vec![(1, q(1, 1))]).is_err());
        assert!(g.set_bracket(0, 7, vec![]).is_err());
        assert!(g.bracket(&[q(1, 1)], &[q(1, 1)]).is_err());
        let conflict = LieAlgebra::from_brackets(
            vec!["a".into(), "b".into()],
            vec![(0, 1, vec![(0, q(1, 1))]), (0, 1, vec![(1, q(1, 1))])],
        );
        assert!(conflict.is_err());
    }

    #[test]
    fn subspace_predicates() {
        let g = sl2();
        assert!(g.is_subalgebra(&[0, 1]));
        assert!(!g.is_subalgebra(&[0, 2]));
        assert!(!g.is_ideal(&[0, 1]));
        assert!(g.is_ideal(&[0, 1, 2]));
        assert!(g.is_abelian_on(&[0]));
    }

    #[test]
    fn ad_matrix_matches_bracket() {
        let g = sl2();
        let x = vec![q(1, 1), q(2, 1), q(-3, 1)];
        let y = vec![q(0, 1), q(5, 1), q(1, 7)];
        let ad = g.ad_matrix(&x).unwrap();
        assert_eq!(ad.mul_vec(&y).unwrap(), g.bracket(&x, &y).unwrap());
        assert_eq!(g.ad_basis(1), g.ad_matrix(&g.basis_vector(1)).unwrap());
    }
}
