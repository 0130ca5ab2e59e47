use ibdouble::linalg::{kernel_basis, solve_system, span_dim, Matrix, SparseReducer};
use ibdouble::scalar::q;
use ibdouble::Q;
use num_traits::Zero;
use proptest::prelude::*;

/// A `rows × cols` matrix of small integers whose rank is at most `rank`,
/// built as a product of two random factors.
fn low_rank_matrix() -> impl Strategy<Value = Matrix<Q>> {
    (1usize..6, 1usize..6, 0usize..5).prop_flat_map(|(rows, cols, rank)| {
        let k = rank.min(rows).min(cols).max(1);
        (
            prop::collection::vec(-3i64..=3, rows * k),
            prop::collection::vec(-3i64..=3, k * cols),
        )
            .prop_map(move |(a, b)| {
                let a = Matrix::from_fn(rows, k, |i, j| q(a[i * k + j], 1));
                let b = Matrix::from_fn(k, cols, |i, j| q(b[i * cols + j], 1));
                a.mul(&b).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_nullity(m in low_rank_matrix()) {
        let ker = kernel_basis(&m);
        prop_assert_eq!(ker.len() + m.rank(), m.cols());
        for v in &ker {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        prop_assert_eq!(span_dim(&ker), ker.len());
    }

    #[test]
    fn rank_is_transpose_invariant(m in low_rank_matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let (red, _) = m.rref();
        prop_assert_eq!(red.rref().0, red);
    }

    #[test]
    fn consistent_systems_are_solved(m in low_rank_matrix(), x in prop::collection::vec(-4i64..=4, 5)) {
        let x0: Vec<Q> = x.iter().take(m.cols()).map(|&v| q(v, 1)).collect();
        let b = m.mul_vec(&x0).unwrap();
        let sol = solve_system(&m, &b).unwrap().expect("b lies in the column space");
        prop_assert_eq!(m.mul_vec(&sol).unwrap(), b);
    }

    #[test]
    fn sparse_reducer_matches_dense_rank(m in low_rank_matrix()) {
        let mut red = SparseReducer::<Q>::new(m.cols());
        for i in 0..m.rows() {
            let row: Vec<(usize, Q)> = m.row(i).iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect();
            red.push(row);
        }
        prop_assert_eq!(red.rank(), m.rank());
    }

    #[test]
    fn inverse_of_unimodular(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3) {
        let m = Matrix::from_rows(&[
            vec![q(1, 1), q(a, 1), q(b, 1)],
            vec![q(0, 1), q(1, 1), q(c, 1)],
            vec![q(a, 1), q(a * a + 1, 1), q(a * b + a * c + 2, 1)],
        ]).unwrap();
        let inv = m.inverse();
        if m.rank() == 3 {
            prop_assert!(inv.unwrap().mul(&m).unwrap().is_identity());
        } else {
            prop_assert!(inv.is_none());
        }
    }
}
