//! Simple Lie algebras in a Chevalley basis.
//!
//! The basis is ordered `e_α (α ∈ Φ⁺), h_1, ..., h_r, f_α (α ∈ Φ⁺)` with the
//! positive roots in the order of [`RootSystem::positive_roots`]. Writing
//! `x_α = e_α` and `x_{-α} = f_α`, the brackets are `[x_α, x_β] = N_{α,β} x_{α+β}`,
//! `[e_α, f_α] = h_α` (the coroot) and `[h_i, x_β] = <β, α_i^vee> x_β`.
//! The constants `N_{α,β}` are fixed by requiring `N_{α,β} = p + 1 > 0` on
//! extraspecial pairs and `N_{-α,-β} = -N_{α,β}`; all others follow from the
//! standard identities between them.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::liealg::{check_homomorphism, check_jacobi, AlgebraMap, LieAlgebra};
use crate::linalg::{Matrix, SparseVec};
use crate::rootsys::{Root, RootSystem};
use crate::scalar::Scalar;

/// A simple Lie algebra in its Chevalley basis, with the root data used to build it.
#[derive(Clone)]
pub struct SimpleLieAlgebra<T> {
    roots: RootSystem,
    algebra: Arc<LieAlgebra<T>>,
}

impl<T: Scalar> std::fmt::Debug for SimpleLieAlgebra<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SimpleLieAlgebra({}, dim {})", self.roots.simple_type(), self.dim())
    }
}

/// Basis-index lists of the standard subalgebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardSubalgebras {
    pub h: Vec<usize>,
    pub n: Vec<usize>,
    pub b: Vec<usize>,
    pub n_minus: Vec<usize>,
    pub b_minus: Vec<usize>,
}

impl<T: Scalar> SimpleLieAlgebra<T> {
    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra<T>> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.num_positive()
    }

    /// Index of `e_α` for the `k`-th positive root.
    pub fn e(&self, k: usize) -> usize {
        k
    }

    /// Index of `h_i`.
    pub fn h(&self, i: usize) -> usize {
        self.num_positive() + i
    }

    /// Index of `f_α` for the `k`-th positive root.
    pub fn f(&self, k: usize) -> usize {
        self.num_positive() + self.rank() + k
    }

    /// Index of the root vector `x_α` for a root of either sign.
    pub fn root_vector(&self, a: &Root) -> Option<usize> {
        if let Some(k) = self.roots.positive_index(a) {
            return Some(self.e(k));
        }
        self.roots.positive_index(&a.neg()).map(|k| self.f(k))
    }

    /// Root of the basis vector `b_i`, or `None` for the Cartan part.
    pub fn root_of(&self, i: usize) -> Option<Root> {
        let (n, r) = (self.num_positive(), self.rank());
        if i < n {
            Some(self.roots.positive_roots()[i].clone())
        } else if i < n + r {
            None
        } else {
            Some(self.roots.positive_roots()[i - n - r].neg())
        }
    }

    /// The coroot `h_α = [e_α, f_α]` for a root of either sign, as a sparse vector.
    pub fn coroot_vector(&self, a: &Root) -> SparseVec<T> {
        let sign = if a.is_positive() { 1 } else { -1 };
        let pos = if a.is_positive() { a.clone() } else { a.neg() };
        self.roots
            .coroot_coords(&pos)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != 0)
            .map(|(i, c)| (self.h(i), T::from_int(sign * c)))
            .collect()
    }

    pub fn subalgebras(&self) -> StandardSubalgebras {
        let (n, r) = (self.num_positive(), self.rank());
        let h: Vec<usize> = (n..n + r).collect();
        let e: Vec<usize> = (0..n).collect();
        let f: Vec<usize> = (n + r..2 * n + r).collect();
        StandardSubalgebras {
            b: e.iter().chain(&h).copied().collect(),
            b_minus: h.iter().chain(&f).copied().collect(),
            h,
            n: e,
            n_minus: f,
        }
    }
}

/// Structure constants `N_{α,β}` for arbitrary roots, memoized.
struct StructureConstants<'a> {
    rs: &'a RootSystem,
    memo: HashMap<(Root, Root), Rational64>,
}

impl<'a> StructureConstants<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        Self { rs, memo: HashMap::new() }
    }

    fn len2(&self, a: &Root) -> Rational64 {
        Rational64::from_integer(self.rs.inner(a, a))
    }

    /// `p = max{ m : β - mα ∈ Φ }`.
    fn p(&self, a: &Root, b: &Root) -> i64 {
        let mut m = 0;
        while self.rs.is_root(&b.scaled_add(-(m + 1), a)) {
            m += 1;
        }
        m
    }

    /// The extraspecial pair of a non-simple positive root.
    fn extraspecial(&self, xi: &Root) -> (Root, Root) {
        let r = self.rs.rank();
        for i in 0..r {
            let a = Root::simple(r, i);
            let rest = xi.sub(&a);
            if self.rs.positive_index(&rest).is_some() {
                return (a, rest);
            }
        }
        unreachable!("every non-simple positive root has a simple summand")
    }

    fn n(&mut self, a: &Root, b: &Root) -> Rational64 {
        let sum = a.add(b);
        if sum.is_zero() || !self.rs.is_root(&sum) {
            return Rational64::zero();
        }
        let key = (a.clone(), b.clone());
        if let Some(v) = self.memo.get(&key) {
            return *v;
        }
        let value = match (a.is_positive(), b.is_positive()) {
            (true, true) => {
                let (g, d) = self.extraspecial(&sum);
                if *a == g {
                    Rational64::from_integer(self.p(a, b) + 1)
                } else if *b == g {
                    -self.n(b, a)
                } else {
                    // four-root identity for α + β - γ - δ = 0
                    let mut rhs = Rational64::zero();
                    let bg = b.sub(&g);
                    if self.rs.is_root(&bg) {
                        let t = self.n(b, &g.neg()) * self.n(a, &d.neg());
                        rhs += t / self.len2(&bg);
                    }
                    let ag = a.sub(&g);
                    if self.rs.is_root(&ag) {
                        let t = self.n(&g.neg(), a) * self.n(b, &d.neg());
                        rhs += t / self.len2(&ag);
                    }
                    rhs * self.len2(&sum) / self.n(&g, &d)
                }
            }
            (false, false) => -self.n(&a.neg(), &b.neg()),
            (true, false) => {
                if sum.is_positive() {
                    // α + β + (-ξ) = 0 with ξ > 0
                    self.len2(&sum) / self.len2(a) * self.n(&sum, &b.neg())
                } else {
                    self.len2(&sum) / self.len2(b) * self.n(&sum.neg(), a)
                }
            }
            (false, true) => -self.n(b, a),
        };
        self.memo.insert(key, value);
        value
    }
}

/// Builds `𝔤` in its Chevalley basis and verifies the Jacobi identity.
pub fn build_simple<T: Scalar>(rs: &RootSystem) -> Result<SimpleLieAlgebra<T>> {
    let r = rs.rank();
    let np = rs.num_positive();
    let dim = 2 * np + r;
    let mut labels = Vec::with_capacity(dim);
    labels.extend(rs.positive_roots().iter().map(|a| format!("e{a}")));
    labels.extend((1..=r).map(|i| format!("h{i}")));
    labels.extend(rs.positive_roots().iter().map(|a| format!("f{a}")));

    let shell = SimpleLieAlgebra { roots: rs.clone(), algebra: Arc::new(LieAlgebra::<T>::abelian(Vec::new())) };
    let root_of: Vec<Option<Root>> = (0..dim).map(|i| shell.root_of(i)).collect();
    let mut consts = StructureConstants::new(rs);
    let mut g = LieAlgebra::abelian(labels);
    for i in 0..dim {
        for j in i + 1..dim {
            let v: SparseVec<T> = match (&root_of[i], &root_of[j]) {
                (Some(a), Some(b)) => {
                    let s = a.add(b);
                    if s.is_zero() {
                        shell.coroot_vector(a)
                    } else if rs.is_root(&s) {
                        let n = consts.n(a, b);
                        if !n.is_integer() || n.is_zero() {
                            return Err(Error::ConstructionBug(format!("N({a},{b}) = {n}")));
                        }
                        vec![(shell.root_vector(&s).expect("root"), T::from_int(*n.numer()))]
                    } else {
                        Vec::new()
                    }
                }
                (None, Some(b)) => {
                    let k = i - np;
                    vec![(j, T::from_int(rs.pairing(b, k)))]
                }
                (Some(a), None) => {
                    let k = j - np;
                    vec![(i, T::from_int(-rs.pairing(a, k)))]
                }
                (None, None) => Vec::new(),
            };
            let v = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            g.set_bracket(i, j, v)?;
        }
    }
    let subs = shell.subalgebras();
    g.set_named_subspace("h", subs.h.clone());
    g.set_named_subspace("n", subs.n.clone());
    g.set_named_subspace("b", subs.b.clone());
    g.set_named_subspace("n_minus", subs.n_minus.clone());
    g.set_named_subspace("b_minus", subs.b_minus.clone());
    if let Err(w) = check_jacobi(&g) {
        return Err(Error::ConstructionBug(format!("Jacobi fails on basis triple {:?}", w.triple)));
    }
    Ok(SimpleLieAlgebra { roots: rs.clone(), algebra: Arc::new(g) })
}

/// Standard subalgebras `𝔥, 𝔫, 𝔟, 𝔫⁻, 𝔟⁻`, each checked to be closed, with `𝔫 = [𝔟, 𝔟]`.
pub fn standard_subalgebras<T: Scalar>(g: &SimpleLieAlgebra<T>) -> Result<StandardSubalgebras> {
    let s = g.subalgebras();
    let alg = g.algebra();
    for (name, idx) in [("h", &s.h), ("n", &s.n), ("b", &s.b), ("n_minus", &s.n_minus), ("b_minus", &s.b_minus)] {
        if !alg.is_subalgebra(idx) {
            return Err(Error::ConstructionBug(format!("{name} is not closed under bracket")));
        }
    }
    let mut red = crate::linalg::SparseReducer::new(alg.dim());
    for (a, &i) in s.b.iter().enumerate() {
        for &j in &s.b[a + 1..] {
            let v = alg.bracket_basis(i, j);
            if v.iter().any(|(k, _)| !s.n.contains(k)) {
                return Err(Error::ConstructionBug("[b, b] leaves n".into()));
            }
            if !v.is_empty() {
                red.push(v.clone());
            }
        }
    }
    if red.rank() != s.n.len() {
        return Err(Error::ConstructionBug("[b, b] does not fill n".into()));
    }
    Ok(s)
}

/// `κ(x, y) = tr(ad x ∘ ad y)` in the standard basis.
pub fn killing_form<T: Scalar>(g: &LieAlgebra<T>) -> Matrix<T> {
    let n = g.dim();
    let mut kappa = Matrix::zeros(n, n);
    // (ad b_i)_{k l} = coefficient of b_k in [b_i, b_l]
    for i in 0..n {
        for j in i..n {
            let mut tr = T::zero();
            for l in 0..n {
                for (k, c) in g.bracket_basis(i, l) {
                    if let Some((_, d)) = g.bracket_basis(j, *k).iter().find(|(m, _)| *m == l) {
                        tr += c.clone() * d;
                    }
                }
            }
            kappa[(i, j)] = tr.clone();
            kappa[(j, i)] = tr;
        }
    }
    kappa
}

/// The Cartan involution `e_α ↦ -f_α`, `f_α ↦ -e_α`, `h ↦ -h`, verified to be
/// an automorphism of order two.
pub fn cartan_involution<T: Scalar>(g: &SimpleLieAlgebra<T>) -> Result<AlgebraMap<T>> {
    let dim = g.dim();
    let (np, r) = (g.num_positive(), g.rank());
    let mut m = Matrix::zeros(dim, dim);
    for k in 0..np {
        m[(g.f(k), g.e(k))] = -T::one();
        m[(g.e(k), g.f(k))] = -T::one();
    }
    for i in 0..r {
        m[(g.h(i), g.h(i))] = -T::one();
    }
    let mut map = AlgebraMap::new(g.algebra().clone(), g.algebra().clone(), m)?;
    if !check_homomorphism(&mut map) || !map.matrix().mul(map.matrix())?.is_identity() {
        return Err(Error::ConstructionBug("Cartan involution is not an involutive automorphism".into()));
    }
    Ok(map)
}

/// Largest `|N_{α,β}|` in the table, as an integer.
pub fn max_structure_constant<T: Scalar>(g: &SimpleLieAlgebra<T>) -> T {
    g.algebra().max_abs_constant().abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kernel_basis;
    use crate::rootsys::RootSystem;
    use crate::scalar::q;
    use num_rational::BigRational;
    use num_traits::Signed;

    fn build(t: &str) -> SimpleLieAlgebra<BigRational> {
        build_simple(&RootSystem::from_type_str(t).unwrap()).unwrap()
    }

    #[test]
    fn sl2_relations() {
        let g = build("A1");
        let a = g.algebra();
        assert_eq!(a.labels(), &["e[1]", "h1", "f[1]"]);
        assert_eq!(a.bracket_basis(1, 0), &vec![(0, q(2, 1))]);
        assert_eq!(a.bracket_basis(1, 2), &vec![(2, q(-2, 1))]);
        assert_eq!(a.bracket_basis(0, 2), &vec![(1, q(1, 1))]);
    }

    #[test]
    fn a2_constants() {
        let g = build("A2");
        assert_eq!(g.dim(), 8);
        let v = g.algebra().bracket_basis(g.e(0), g.e(1));
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].0, g.e(2));
        assert_eq!(v[0].1.abs(), q(1, 1));
    }

    #[test]
    fn g2_constants() {
        let g = build("G2");
        assert_eq!(g.dim(), 14);
        assert!(g.algebra().has_integral_constants());
        assert_eq!(max_structure_constant(&g), q(3, 1));
    }

    #[test]
    fn all_small_types_build() {
        for t in ["A3", "B2", "B3", "C3", "D4", "G2", "F4"] {
            let g = build(t);
            assert!(g.algebra().has_integral_constants(), "{t}");
            assert_eq!(g.dim(), g.roots().algebra_dim());
            standard_subalgebras(&g).unwrap();
        }
    }

    #[test]
    fn root_brackets_vanish_exactly_off_roots() {
        for t in ["B2", "G2", "A3"] {
            let g = build(t);
            let a = g.algebra();
            for i in 0..g.dim() {
                for j in 0..g.dim() {
                    let (Some(x), Some(y)) = (g.root_of(i), g.root_of(j)) else { continue };
                    let s = x.add(&y);
                    let expect_zero = !s.is_zero() && !g.roots().is_root(&s);
                    assert_eq!(a.bracket_basis(i, j).is_empty(), expect_zero, "{t} {x} {y}");
                }
            }
        }
    }

    #[test]
    fn subalgebra_dims() {
        let a1 = standard_subalgebras(&build("A1")).unwrap();
        assert_eq!((a1.n.clone(), a1.h.clone(), a1.b.clone(), a1.b_minus.clone()), (vec![0], vec![1], vec![0, 1], vec![1, 2]));
        let a2 = standard_subalgebras(&build("A2")).unwrap();
        assert_eq!((a2.b.len(), a2.n.len()), (5, 3));
        let b2 = standard_subalgebras(&build("B2")).unwrap();
        assert_eq!((b2.b.len(), b2.n.len()), (6, 4));
    }

    #[test]
    fn killing_form_sl2() {
        let g = build("A1");
        let k = killing_form(g.algebra());
        assert_eq!(k[(1, 1)], q(8, 1));
        assert_eq!(k[(0, 2)], q(4, 1));
        assert_eq!(k[(0, 0)], q(0, 1));
    }

    #[test]
    fn killing_form_properties() {
        for t in ["A2", "B2", "G2"] {
            let g = build(t);
            let k = killing_form(g.algebra());
            assert_eq!(k, k.transpose());
            assert!(kernel_basis(&k).is_empty(), "{t}");
            let s = g.subalgebras();
            for &i in &s.b {
                for &j in &s.n {
                    assert_eq!(k[(i, j)], q(0, 1));
                }
            }
            // the orthogonal complement of b has dimension dim n
            let rows: Vec<Vec<BigRational>> = s.b.iter().map(|&i| k.row(i).to_vec()).collect();
            assert_eq!(kernel_basis(&Matrix::from_rows(&rows).unwrap()).len(), s.n.len());
        }
    }

    #[test]
    fn cartan_involution_checks() {
        let g = build("A1");
        let w = cartan_involution(&g).unwrap();
        assert_eq!(w.image_of_basis(0), vec![q(0, 1), q(0, 1), q(-1, 1)]);
        assert_eq!(w.image_of_basis(1), vec![q(0, 1), q(-1, 1), q(0, 1)]);
        for t in ["A2", "G2"] {
            let w = cartan_involution(&build(t)).unwrap();
            assert!(w.is_verified_isomorphism());
            assert!(w.power(2).unwrap().is_identity());
        }
    }
}
