use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{coordinates, kernel_basis, sparse_from_dense, Matrix, SparseReducer};
use crate::scalar::Scalar;

use super::LieAlgebra;

/// Simultaneous eigenspace decomposition under an abelian subalgebra `c`.
///
/// `weights[k]` lists the eigenvalues of `ad c_1, ..., ad c_m` on
/// `spaces[k]`; the zero weight is kept separately in `zero_space`.
#[derive(Debug, Clone)]
pub struct WeightDecomposition<T> {
    pub weights: Vec<Vec<T>>,
    pub spaces: Vec<Vec<Vec<T>>>,
    pub zero_space: Vec<Vec<T>>,
}

impl<T: Scalar> WeightDecomposition<T> {
    /// Total dimension of all spaces, zero space included.
    pub fn total_dim(&self) -> usize {
        self.zero_space.len() + self.spaces.iter().map(Vec::len).sum::<usize>()
    }

    /// Index of the given weight, if present.
    pub fn position(&self, weight: &[T]) -> Option<usize> {
        self.weights.iter().position(|w| w.as_slice() == weight)
    }
}

/// Decomposes `g` under `ad c` for `c` the span of the given commuting
/// vectors. Only actions diagonalizable with rational eigenvalues are supported.
pub fn weight_decomposition<T: Scalar>(g: &LieAlgebra<T>, c: &[Vec<T>]) -> Result<WeightDecomposition<T>> {
    let n = g.dim();
    for (a, x) in c.iter().enumerate() {
        for y in &c[a + 1..] {
            if g.bracket(x, y)?.iter().any(|v| !v.is_zero()) {
                return Err(Error::InvalidInput("weight decomposition needs an abelian subalgebra".into()));
            }
        }
    }
    let ads: Vec<Matrix<BigRational>> = c
        .iter()
        .map(|x| to_rational_matrix(&g.ad_matrix(x)?))
        .collect::<Result<Vec<_>>>()?;

    let mut pieces: BTreeMap<Vec<BigRational>, Vec<Vec<BigRational>>> = BTreeMap::new();
    if ads.iter().all(is_diagonal) {
        for i in 0..n {
            let w: Vec<BigRational> = ads.iter().map(|a| a[(i, i)].clone()).collect();
            let mut v = vec![BigRational::zero(); n];
            v[i] = BigRational::one();
            pieces.entry(w).or_default().push(v);
        }
    } else {
        let standard: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        let mut current = vec![(Vec::new(), standard)];
        for a in &ads {
            let mut next = Vec::new();
            for (w, basis) in current {
                for (lambda, vecs) in split_space(a, &basis)? {
                    let mut w2: Vec<BigRational> = w.clone();
                    w2.push(lambda);
                    next.push((w2, vecs));
                }
            }
            current = next;
        }
        for (w, vecs) in current {
            pieces.entry(w).or_default().extend(vecs);
        }
    }

    let back = |v: &Vec<BigRational>| v.iter().map(T::from_rational).collect::<Vec<T>>();
    let mut out = WeightDecomposition { weights: Vec::new(), spaces: Vec::new(), zero_space: Vec::new() };
    for (w, vecs) in pieces {
        if w.iter().all(Zero::is_zero) {
            out.zero_space = vecs.iter().map(back).collect();
        } else {
            out.weights.push(back(&w));
            out.spaces.push(vecs.iter().map(back).collect());
        }
    }
    Ok(out)
}

fn to_rational_matrix<T: Scalar>(m: &Matrix<T>) -> Result<Matrix<BigRational>> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out[(i, j)] = m[(i, j)]
                .to_rational()
                .ok_or_else(|| Error::NotDiagonalizable("entry has no exact rational value".into()))?;
        }
    }
    Ok(out)
}

fn is_diagonal(m: &Matrix<BigRational>) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m[(i, j)].is_zero()))
}

/// Splits the invariant subspace spanned by `basis` into eigenspaces of `a`.
fn split_space(
    a: &Matrix<BigRational>,
    basis: &[Vec<BigRational>],
) -> Result<Vec<(BigRational, Vec<Vec<BigRational>>)>> {
    let k = basis.len();
    let mut restricted = Matrix::zeros(k, k);
    for (j, b) in basis.iter().enumerate() {
        let image = a.mul_vec(b)?;
        let coords = coordinates(basis, &image)
            .ok_or_else(|| Error::NotDiagonalizable("subspace is not invariant".into()))?;
        for (i, c) in coords.into_iter().enumerate() {
            restricted[(i, j)] = c;
        }
    }
    let poly = minimal_polynomial(&restricted);
    let roots = rational_roots(&poly)?;
    if roots.len() != poly.len() - 1 {
        return Err(Error::NotDiagonalizable("minimal polynomial does not split into distinct rational roots".into()));
    }
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in roots {
        let shifted = restricted.sub(&Matrix::identity(k).scale(&lambda))?;
        let kernel = kernel_basis(&shifted);
        total += kernel.len();
        let vecs = kernel
            .iter()
            .map(|coords| {
                let mut v = vec![BigRational::zero(); a.rows()];
                for (c, b) in coords.iter().zip(basis) {
                    if c.is_zero() {
                        continue;
                    }
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi += c * bi;
                    }
                }
                v
            })
            .collect();
        out.push((lambda, vecs));
    }
    if total != k {
        return Err(Error::NotDiagonalizable("eigenspaces do not fill the space".into()));
    }
    Ok(out)
}

/// Coefficients `c_0, ..., c_d` (monic, `c_d = 1`) of the minimal polynomial,
/// found as the first linear dependence among `I, M, M^2, ...`.
pub(crate) fn minimal_polynomial(m: &Matrix<BigRational>) -> Vec<BigRational> {
    let k = m.rows();
    let mut red = SparseReducer::new(k * k);
    let mut power = Matrix::identity(k);
    for d in 0..=k {
        let row = sparse_from_dense(power.as_slice());
        if let Some(payload) = red.insert(row, vec![(d, BigRational::one())]) {
            // payload is e_d minus the combination of lower powers
            let mut coeffs = vec![BigRational::zero(); d + 1];
            for (i, c) in payload {
                coeffs[i] = c;
            }
            let lead = coeffs[d].clone();
            return coeffs.into_iter().map(|c| c / &lead).collect();
        }
        power = m.mul(&power).expect("square matrices");
    }
    unreachable!("Cayley-Hamilton bounds the degree by the size")
}

const MAX_CANDIDATE: u64 = 1 << 40;

/// Distinct rational roots of a polynomial given by its coefficients
/// `c_0, ..., c_d`.
pub(crate) fn rational_roots(poly: &[BigRational]) -> Result<Vec<BigRational>> {
    let mut roots = Vec::new();
    let mut coeffs: Vec<BigRational> = poly.to_vec();
    while coeffs.len() > 1 && coeffs[0].is_zero() {
        if roots.is_empty() {
            roots.push(BigRational::zero());
        }
        coeffs.remove(0);
    }
    if coeffs.len() <= 1 {
        return Ok(roots);
    }
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let a0 = ints[0].abs().to_u64().filter(|v| *v <= MAX_CANDIDATE);
    let ad = ints[ints.len() - 1].abs().to_u64().filter(|v| *v <= MAX_CANDIDATE);
    let (Some(a0), Some(ad)) = (a0, ad) else {
        return Err(Error::NotDiagonalizable("polynomial coefficients too large for root search".into()));
    };
    let eval = |x: &BigRational| coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c);
    let mut found = Vec::new();
    for p in divisors(a0) {
        for q in divisors(ad) {
            for sign in [1i64, -1] {
                let x = BigRational::new(BigInt::from(p) * sign, BigInt::from(q));
                if !found.contains(&x) && eval(&x).is_zero() {
                    found.push(x);
                }
            }
        }
    }
    found.sort();
    roots.extend(found);
    Ok(roots)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
