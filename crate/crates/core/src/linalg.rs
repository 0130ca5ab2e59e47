//! Exact linear algebra over a [`Scalar`] field.
//!
//! Dense [`Matrix`] covers everything up to a few thousand entries per side;
//! [`SparseReducer`] keeps an incrementally maintained reduced row echelon
//! form for the tall, very sparse systems produced by derivation solves and
//! by map lifting, where rows carry a payload that undergoes the same row
//! operations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must share a length.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    /// Builds a `len × columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns(len: usize, columns: &[Vec<T>]) -> Result<Self> {
        let mut m = Self::zeros(len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != len {
                return Err(Error::DimensionMismatch { expected: len, found: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a.clone() * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a.clone() * b;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b).collect(),
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * s).collect() }
    }

    /// Flattens the matrix row by row.
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        Ok(())
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = m.pivot_row(r, c) else { continue };
            m.swap_rows(r, p);
            let inv = T::one() / &m[(r, c)];
            for j in c..m.cols {
                let v = m[(r, j)].clone() * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let d = f.clone() * &m[(r, j)];
                    m[(i, j)] -= d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    // Largest absolute value wins; for exact types any nonzero entry would do.
    fn pivot_row(&self, from: usize, col: usize) -> Option<usize> {
        let mut best: Option<(usize, T)> = None;
        for i in from..self.rows {
            let a = self[(i, col)].abs();
            if a.is_zero() {
                continue;
            }
            match &best {
                Some((_, b)) if *b >= a => {}
                _ => best = Some((i, a)),
            }
        }
        best.map(|(i, _)| i)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| red[(i, j + n)].clone()))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols].iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Basis of the null space of `m`, one column vector per free variable.
pub fn kernel_basis<T: Scalar>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let (red, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![T::zero(); m.cols()];
            v[f] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -red[(r, f)].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `m·x = b`, or `None` when the system is inconsistent.
pub fn solve_system<T: Scalar>(m: &Matrix<T>, b: &[T]) -> Result<Option<Vec<T>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: b.len() });
    }
    let n = m.cols();
    let aug = Matrix::from_fn(m.rows(), n + 1, |i, j| if j < n { m[(i, j)].clone() } else { b[i].clone() });
    let (red, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![T::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = red[(r, n)].clone();
    }
    Ok(Some(x))
}

/// Linearly independent subset spanning the same space, as an echelon basis.
pub fn span_basis<T: Scalar>(len: usize, vectors: &[Vec<T>]) -> Vec<Vec<T>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors).expect("vectors share a length");
    debug_assert_eq!(m.cols(), len);
    let (red, pivots) = m.rref();
    (0..pivots.len()).map(|r| red.row(r).to_vec()).collect()
}

/// Dimension of the span of the given vectors.
pub fn span_dim<T: Scalar>(vectors: &[Vec<T>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors).expect("vectors share a length").rank()
}

/// Coordinates of `v` in the (independent) family `basis`, if `v` lies in its span.
pub fn coordinates<T: Scalar>(basis: &[Vec<T>], v: &[T]) -> Option<Vec<T>> {
    if basis.is_empty() {
        return v.iter().all(T::is_zero).then(Vec::new);
    }
    let m = Matrix::from_columns(v.len(), basis).ok()?;
    solve_system(&m, v).ok().flatten()
}

/// Sorted sparse vector.
pub type SparseVec<T> = Vec<(usize, T)>;

pub(crate) fn sparse_from_dense<T: Scalar>(v: &[T]) -> SparseVec<T> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub(crate) fn dense_from_sparse<T: Scalar>(len: usize, v: &SparseVec<T>) -> Vec<T> {
    let mut out = vec![T::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a + s·b` for sorted sparse vectors.
pub(crate) fn sparse_axpy<T: Scalar>(a: &SparseVec<T>, s: &T, b: &SparseVec<T>) -> SparseVec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, s.clone() * &b[j].1));
            j += 1;
        } else {
            let v = a[i].1.clone() + s.clone() * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn sparse_get<'a, T>(v: &'a SparseVec<T>, col: usize) -> Option<&'a T> {
    v.binary_search_by_key(&col, |(c, _)| *c).ok().map(|k| &v[k].1)
}

/// Incremental reduced row echelon form over sparse rows.
///
/// Every stored row has a unit pivot, and no other stored row has an entry in
/// that pivot column. Each row carries a payload vector that receives the same
/// row operations, so a row reduced to zero exposes the payload combination
/// that a consistent linear map must also send to zero.
#[derive(Clone, Debug)]
pub struct SparseReducer<T> {
    ncols: usize,
    rows: Vec<(SparseVec<T>, SparseVec<T>)>,
    pivot_row: BTreeMap<usize, usize>,
}

impl<T: Scalar> SparseReducer<T> {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new(), pivot_row: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `(row, payload)` against the stored rows without inserting.
    pub fn reduce(&self, row: &SparseVec<T>, payload: &SparseVec<T>) -> (SparseVec<T>, SparseVec<T>) {
        let hits: Vec<(usize, T)> = row
            .iter()
            .filter_map(|(c, v)| self.pivot_row.get(c).map(|&r| (r, v.clone())))
            .collect();
        let mut acc: BTreeMap<usize, T> = row.iter().cloned().collect();
        let mut pay: BTreeMap<usize, T> = payload.iter().cloned().collect();
        for (r, v) in hits {
            let (prow, ppay) = &self.rows[r];
            for (c, x) in prow {
                let e = acc.entry(*c).or_insert_with(T::zero);
                *e -= v.clone() * x;
            }
            for (c, x) in ppay {
                let e = pay.entry(*c).or_insert_with(T::zero);
                *e -= v.clone() * x;
            }
        }
        let strip = |m: BTreeMap<usize, T>| m.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        (strip(acc), strip(pay))
    }

    /// Inserts a row. Returns `None` when the rank grew, otherwise the
    /// reduced payload of the dependent row.
    pub fn insert(&mut self, row: SparseVec<T>, payload: SparseVec<T>) -> Option<SparseVec<T>> {
        let (mut r, mut p) = self.reduce(&row, &payload);
        if r.is_empty() {
            return Some(p);
        }
        let (pc, pv) = r[0].clone();
        let inv = T::one() / pv;
        for e in r.iter_mut() {
            e.1 *= &inv;
        }
        for e in p.iter_mut() {
            e.1 *= &inv;
        }
        for (row_k, pay_k) in self.rows.iter_mut() {
            if let Some(f) = sparse_get(row_k, pc) {
                let f = -f.clone();
                *row_k = sparse_axpy(row_k, &f, &r);
                *pay_k = sparse_axpy(pay_k, &f, &p);
            }
        }
        self.pivot_row.insert(pc, self.rows.len());
        self.rows.push((r, p));
        None
    }

    /// Inserts a row without payload; returns true when it was independent.
    pub fn push(&mut self, row: SparseVec<T>) -> bool {
        self.insert(row, Vec::new()).is_none()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Null space basis of the accumulated row system.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let mut free_entries: BTreeMap<usize, Vec<(usize, T)>> = BTreeMap::new();
        for (&pc, &r) in &self.pivot_row {
            for (c, x) in self.rows[r].0.iter().filter(|(c, _)| *c != pc) {
                free_entries.entry(*c).or_default().push((pc, x.clone()));
            }
        }
        (0..self.ncols)
            .filter(|c| !self.is_pivot(*c))
            .map(|f| {
                let mut v = vec![T::zero(); self.ncols];
                v[f] = T::one();
                if let Some(es) = free_entries.get(&f) {
                    for (pc, x) in es {
                        v[*pc] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }

    /// Stored rows with their payloads.
    pub fn rows(&self) -> &[(SparseVec<T>, SparseVec<T>)] {
        &self.rows
    }
}
