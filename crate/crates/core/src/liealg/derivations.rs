use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseReducer, SparseVec};
use crate::scalar::Scalar;

use super::LieAlgebra;

/// Largest dimension for which [`derivations`] runs without an explicit cap.
pub const DEFAULT_DERIVATION_CAP: usize = 24;

/// Basis of `Der(g)`, as `dim × dim` matrices acting on column vectors.
///
/// The unknown `D` has entries `D[m][l]` (coefficient of `b_m` in `D b_l`).
/// For every pair `i < j` and output coordinate `m` the Leibniz rule gives
/// `Σ_l c_ij^l D[m][l] - Σ_k D[k][i] c_kj^m - Σ_k D[k][j] c_ik^m = 0`.
/// The system is reduced sparsely; algebras larger than `cap` are refused.
pub fn derivations<T: Scalar>(g: &LieAlgebra<T>, cap: usize) -> Result<Vec<Matrix<T>>> {
    let n = g.dim();
    if n > cap {
        return Err(Error::TooLarge { dim: n, cap });
    }
    // by_right[j][m] lists (k, c_kj^m); by_left[i][m] lists (k, c_ik^m)
    let mut by_right: Vec<BTreeMap<usize, Vec<(usize, T)>>> = vec![BTreeMap::new(); n];
    let mut by_left: Vec<BTreeMap<usize, Vec<(usize, T)>>> = vec![BTreeMap::new(); n];
    for a in 0..n {
        for b in 0..n {
            for (m, c) in g.bracket_basis(a, b) {
                by_right[b].entry(*m).or_default().push((a, c.clone()));
                by_left[a].entry(*m).or_default().push((b, c.clone()));
            }
        }
    }
    let var = |row: usize, col: usize| row * n + col;
    let mut red = SparseReducer::new(n * n);
    for i in 0..n {
        for j in i + 1..n {
            for m in 0..n {
                let mut row: BTreeMap<usize, T> = BTreeMap::new();
                for (l, c) in g.bracket_basis(i, j) {
                    *row.entry(var(m, *l)).or_insert_with(T::zero) += c.clone();
                }
                if let Some(list) = by_right[j].get(&m) {
                    for (k, c) in list {
                        *row.entry(var(*k, i)).or_insert_with(T::zero) -= c.clone();
                    }
                }
                if let Some(list) = by_left[i].get(&m) {
                    for (k, c) in list {
                        *row.entry(var(*k, j)).or_insert_with(T::zero) -= c.clone();
                    }
                }
                let row: SparseVec<T> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !row.is_empty() {
                    red.push(row);
                }
            }
        }
    }
    Ok(red
        .kernel_basis()
        .into_iter()
        .map(|v| Matrix::from_fn(n, n, |r, c| v[var(r, c)].clone()))
        .collect())
}

/// Exact Leibniz check `D[b_i, b_j] = [D b_i, b_j] + [b_i, D b_j]` on all basis pairs.
pub fn is_derivation<T: Scalar>(g: &LieAlgebra<T>, d: &Matrix<T>) -> bool {
    let n = g.dim();
    if d.rows() != n || d.cols() != n {
        return false;
    }
    let cols: Vec<Vec<T>> = (0..n).map(|j| d.column(j)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = d.mul_vec(&crate::linalg::dense_from_sparse(n, g.bracket_basis(i, j))).expect("square");
            let a = g.bracket(&cols[i], &g.basis_vector(j)).expect("dims");
            let b = g.bracket(&g.basis_vector(i), &cols[j]).expect("dims");
            if lhs.iter().zip(a.iter().zip(&b)).any(|(l, (x, y))| *l != x.clone() + y) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_derivations_are_inner() {
        let g = crate::liealg::tests::sl2();
        let ders = derivations(&g, DEFAULT_DERIVATION_CAP).unwrap();
        assert_eq!(ders.len(), 3);
        assert!(ders.iter().all(|d| is_derivation(&g, d)));
        assert!(is_derivation(&g, &g.ad_basis(0)));
        assert!(!is_derivation(&g, &Matrix::identity(3)));
        assert!(matches!(derivations(&g, 2), Err(Error::TooLarge { dim: 3, cap: 2 })));
    }

    #[test]
    fn abelian_derivations_are_everything() {
        let g = LieAlgebra::<num_rational::BigRational>::abelian(vec!["a".into(), "b".into()]);
        assert_eq!(derivations(&g, 10).unwrap().len(), 4);
    }
}
