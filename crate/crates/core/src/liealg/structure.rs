use std::collections::BTreeMap;

use crate::linalg::{dense_from_sparse, kernel_basis, sparse_from_dense, Matrix, SparseReducer, SparseVec};
use crate::scalar::Scalar;

use super::LieAlgebra;

/// A basis triple on which the Jacobi identity fails, with the nonzero cyclic sum.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiWitness<T> {
    pub triple: (usize, usize, usize),
    pub cyclic_sum: SparseVec<T>,
}

/// Exhaustive Jacobi check over basis triples `i < j < k`.
pub fn check_jacobi<T: Scalar>(g: &LieAlgebra<T>) -> std::result::Result<(), JacobiWitness<T>> {
    let n = g.dim();
    // [[b_a, b_b], b_c] as a sparse vector
    let nested = |a: usize, b: usize, c: usize| -> BTreeMap<usize, T> {
        let mut acc = BTreeMap::new();
        for (l, x) in g.bracket_basis(a, b) {
            for (m, y) in g.bracket_basis(*l, c) {
                *acc.entry(*m).or_insert_with(T::zero) += x.clone() * y;
            }
        }
        acc
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut sum = nested(i, j, k);
                for (a, b, c) in [(j, k, i), (k, i, j)] {
                    for (m, v) in nested(a, b, c) {
                        *sum.entry(m).or_insert_with(T::zero) += v;
                    }
                }
                let sum: SparseVec<T> = sum.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !sum.is_empty() {
                    return Err(JacobiWitness { triple: (i, j, k), cyclic_sum: sum });
                }
            }
        }
    }
    Ok(())
}

fn reducer_basis<T: Scalar>(red: &SparseReducer<T>) -> Vec<Vec<T>> {
    let mut rows: Vec<&SparseVec<T>> = red.rows().iter().map(|(r, _)| r).collect();
    rows.sort_by_key(|r| r[0].0);
    rows.into_iter().map(|r| dense_from_sparse(red.ncols(), r)).collect()
}

fn kernel_of_rows<T: Scalar>(ncols: usize, rows: impl IntoIterator<Item = SparseVec<T>>) -> Vec<Vec<T>> {
    let mut red = SparseReducer::new(ncols);
    for r in rows {
        if !r.is_empty() {
            red.push(r);
        }
    }
    red.kernel_basis()
}

/// Elements commuting with every element of the span of `subspace`.
pub fn centralizer<T: Scalar>(g: &LieAlgebra<T>, subspace: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = g.dim();
    let mut rows: BTreeMap<(usize, usize), SparseVec<T>> = BTreeMap::new();
    for (s_idx, s) in subspace.iter().enumerate() {
        let s = sparse_from_dense(s);
        for i in 0..n {
            for (k, c) in g.bracket_sparse(&vec![(i, T::one())], &s) {
                rows.entry((s_idx, k)).or_default().push((i, c));
            }
        }
    }
    kernel_of_rows(n, rows.into_values())
}

/// Center: kernel of the stacked adjoint matrices.
pub fn center<T: Scalar>(g: &LieAlgebra<T>) -> Vec<Vec<T>> {
    let n = g.dim();
    let mut rows: BTreeMap<(usize, usize), SparseVec<T>> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in g.bracket_basis(i, j) {
                rows.entry((j, *k)).or_default().push((i, c.clone()));
            }
        }
    }
    kernel_of_rows(n, rows.into_values())
}

/// Elements `x` with `[x, S] ⊆ S` for `S` the span of `subspace`.
pub fn normalizer<T: Scalar>(g: &LieAlgebra<T>, subspace: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = g.dim();
    if subspace.is_empty() {
        return (0..n).map(|i| g.basis_vector(i)).collect();
    }
    let annihilator = kernel_basis(&Matrix::from_rows(subspace).expect("vectors share a length"));
    let mut rows = Vec::new();
    for s in subspace {
        let s = sparse_from_dense(s);
        let images: Vec<SparseVec<T>> = (0..n).map(|i| g.bracket_sparse(&vec![(i, T::one())], &s)).collect();
        for p in &annihilator {
            let row: SparseVec<T> = images
                .iter()
                .enumerate()
                .filter_map(|(i, img)| {
                    let v = img.iter().fold(T::zero(), |acc, (k, c)| acc + p[*k].clone() * c);
                    (!v.is_zero()).then_some((i, v))
                })
                .collect();
            rows.push(row);
        }
    }
    kernel_of_rows(n, rows)
}

/// Span of all brackets `[b_i, b_j]`, as a reduced echelon basis.
pub fn derived_subalgebra<T: Scalar>(g: &LieAlgebra<T>) -> Vec<Vec<T>> {
    let n = g.dim();
    let mut red = SparseReducer::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let v = g.bracket_basis(i, j);
            if !v.is_empty() && red.rank() < n {
                red.push(v.clone());
            }
        }
    }
    reducer_basis(&red)
}

/// `(ad x)^dim = 0`, decided by repeated squaring.
pub fn is_ad_nilpotent<T: Scalar>(g: &LieAlgebra<T>, x: &[T]) -> bool {
    let Ok(mut m) = g.ad_matrix(x) else { return false };
    let mut power = 1;
    while power < g.dim() {
        if m.is_zero() {
            return true;
        }
        m = m.mul(&m).expect("square matrices");
        power *= 2;
    }
    m.is_zero()
}

/// How a basis vector of a generated subalgebra was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// The seed with this index in the input list.
    Seed(usize),
    /// `[basis[left], basis[right]]`, where `basis[left]` is a seed.
    Bracket(usize, usize),
}

/// Subalgebra generated by seed vectors, with the bracket word of each basis vector.
#[derive(Debug, Clone)]
pub struct GeneratedSubalgebra<T> {
    pub basis: Vec<Vec<T>>,
    pub provenance: Vec<Provenance>,
}

impl<T> GeneratedSubalgebra<T> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Closure of the span of `seeds` under bracket, built from left-normed words
/// `[s, w]` with `s` a seed.
pub fn generated_subalgebra<T: Scalar>(g: &LieAlgebra<T>, seeds: &[Vec<T>]) -> GeneratedSubalgebra<T> {
    let n = g.dim();
    let mut red = SparseReducer::new(n);
    let mut basis: Vec<Vec<T>> = Vec::new();
    let mut sparse: Vec<SparseVec<T>> = Vec::new();
    let mut provenance = Vec::new();
    let mut seed_positions = Vec::new();
    for (idx, s) in seeds.iter().enumerate() {
        let sv = sparse_from_dense(s);
        if !sv.is_empty() && red.push(sv.clone()) {
            seed_positions.push(basis.len());
            basis.push(s.clone());
            sparse.push(sv);
            provenance.push(Provenance::Seed(idx));
        }
    }
    let mut k = 0;
    while k < basis.len() && basis.len() < n {
        for &sp in &seed_positions {
            let v = g.bracket_sparse(&sparse[sp], &sparse[k]);
            if !v.is_empty() && red.push(v.clone()) {
                basis.push(dense_from_sparse(n, &v));
                sparse.push(v);
                provenance.push(Provenance::Bracket(sp, k));
            }
        }
        k += 1;
    }
    GeneratedSubalgebra { basis, provenance }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::span_dim;
    use crate::scalar::q;
    use num_rational::BigRational;

    fn sl2() -> LieAlgebra<BigRational> {
        crate::liealg::tests::sl2()
    }

    #[test]
    fn sl2_structure() {
        let g = sl2();
        assert!(check_jacobi(&g).is_ok());
        assert!(center(&g).is_empty());
        assert_eq!(derived_subalgebra(&g).len(), 3);
        assert!(is_ad_nilpotent(&g, &g.basis_vector(0)));
        assert!(!is_ad_nilpotent(&g, &g.basis_vector(1)));
        let h = vec![g.basis_vector(1)];
        assert_eq!(centralizer(&g, &h), h);
        assert_eq!(span_dim(&normalizer(&g, &h)), 1);
        let b = vec![g.basis_vector(0), g.basis_vector(1)];
        assert_eq!(span_dim(&normalizer(&g, &b)), 2);
    }

    #[test]
    fn corrupted_table_is_caught() {
        let mut g = sl2();
        g.corrupt_entry(1, 0);
        let w = check_jacobi(&g).unwrap_err();
        assert_eq!(w.triple, (0, 1, 2));
        assert!(!w.cyclic_sum.is_empty());
    }

    #[test]
    fn generation() {
        let g = sl2();
        let e = generated_subalgebra(&g, &[g.basis_vector(0)]);
        assert_eq!(e.dim(), 1);
        let all = generated_subalgebra(&g, &[g.basis_vector(0), g.basis_vector(2)]);
        assert_eq!(all.dim(), 3);
        assert_eq!(all.provenance[2], Provenance::Bracket(1, 0));
        assert_eq!(all.basis[2], vec![q(0, 1), q(-1, 1), q(0, 1)]);
    }
}
