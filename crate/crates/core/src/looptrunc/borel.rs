use std::sync::Arc;

use super::{poly_bracket, PolyVector};
use crate::chevalley::SimpleLieAlgebra;
use crate::doubles::{build_g_eps_plus, build_ib};
use crate::error::{Error, Result};
use crate::liealg::{check_homomorphism, check_jacobi, AlgebraMap, LieAlgebra};
use crate::linalg::{sparse_from_dense, Matrix};
use crate::scalar::Scalar;

/// The quotient `𝔟̃ / (t − ε)𝔫̃` in the normal basis `{x, h, th, ty}`
/// (`x ∈ 𝔫`, `h ∈ 𝔥`, `y ∈ 𝔫⁻`), in that order.
#[derive(Clone)]
pub struct BorelQuotient<T> {
    epsilon: T,
    source: SimpleLieAlgebra<T>,
    algebra: Arc<LieAlgebra<T>>,
}

impl<T: Scalar> std::fmt::Debug for BorelQuotient<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BorelQuotient({:?}, ε = {})", self.source, self.epsilon)
    }
}

impl<T: Scalar> BorelQuotient<T> {
    pub fn epsilon(&self) -> &T {
        &self.epsilon
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra<T>> {
        &self.algebra
    }

    pub fn source_simple(&self) -> &SimpleLieAlgebra<T> {
        &self.source
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn x(&self, k: usize) -> usize {
        k
    }

    pub fn h(&self, i: usize) -> usize {
        self.source.num_positive() + i
    }

    pub fn th(&self, i: usize) -> usize {
        self.source.num_positive() + self.source.rank() + i
    }

    pub fn ty(&self, k: usize) -> usize {
        self.source.num_positive() + 2 * self.source.rank() + k
    }

    /// The loop-algebra representative of a normal basis vector, in the window `[0, 2]`.
    pub fn normal_element(&self, idx: usize) -> Result<PolyVector<T>> {
        normal_element(&self.source, idx)
    }

    /// Normal form of an element of `𝔟̃` using the closed form of the rules
    /// `t^{j+1}x ≡ ε tʲx` (`x ∈ 𝔫`, `j ≥ 0`) and `t^{j+1}y ≡ ε tʲy` (`y ∈ 𝔟⁻`, `j ≥ 1`).
    pub fn reduce(&self, p: &PolyVector<T>) -> Result<Vec<T>> {
        reduce_closed(&self.source, &self.epsilon, p)
    }

    /// Applies single rewriting steps, choosing the term to rewrite with `pick`
    /// among the currently reducible ones, until the element is in normal form.
    pub fn reduce_stepwise(
        &self,
        p: &PolyVector<T>,
        pick: &mut dyn FnMut(&[(i64, usize)]) -> usize,
    ) -> Result<Vec<T>> {
        let np = self.source.num_positive();
        let mut cur = p.clone();
        loop {
            let reducible: Vec<(i64, usize)> = cur
                .terms()
                .filter(|(d, k, _)| if *k < np { *d >= 1 } else { *d >= 2 })
                .map(|(d, k, _)| (d, k))
                .collect();
            if reducible.is_empty() {
                break;
            }
            let (d, k) = reducible[pick(&reducible) % reducible.len()];
            let c = cur.coefficient(d, k);
            cur.add_term(d, k, -c.clone())?;
            cur.add_term(d - 1, k, c * &self.epsilon)?;
        }
        reduce_closed(&self.source, &self.epsilon, &cur)
    }
}

fn normal_element<T: Scalar>(g: &SimpleLieAlgebra<T>, idx: usize) -> Result<PolyVector<T>> {
    let (np, r) = (g.num_positive(), g.rank());
    let (deg, gi) = if idx < np + r {
        (0, idx)
    } else if idx < np + 2 * r {
        (1, g.h(idx - np - r))
    } else if idx < 2 * np + 2 * r {
        (1, g.f(idx - np - 2 * r))
    } else {
        return Err(Error::InvalidInput(format!("normal basis index {idx} out of range")));
    };
    PolyVector::monomial(0, 2, deg, gi, T::one())
}

fn reduce_closed<T: Scalar>(g: &SimpleLieAlgebra<T>, eps: &T, p: &PolyVector<T>) -> Result<Vec<T>> {
    let (np, r) = (g.num_positive(), g.rank());
    let mut out = vec![T::zero(); 2 * np + 2 * r];
    let pow = |n: i64| crate::scalar::pow(eps, n);
    for (d, k, c) in p.terms() {
        if k < np {
            if d < 0 {
                return Err(Error::InvalidInput(format!("t^{d} x is not in the Borel loop subalgebra")));
            }
            out[k] += c.clone() * pow(d);
        } else if k < np + r {
            match d {
                0 => out[k] += c.clone(),
                d if d >= 1 => out[np + r + (k - np)] += c.clone() * pow(d - 1),
                _ => return Err(Error::InvalidInput(format!("t^{d} h is not in the Borel loop subalgebra"))),
            }
        } else {
            if d < 1 {
                return Err(Error::InvalidInput(format!("t^{d} y is not in the Borel loop subalgebra")));
            }
            out[np + 2 * r + (k - np - r)] += c.clone() * pow(d - 1);
        }
    }
    Ok(out)
}

/// Builds `𝔟̃ / (t − ε)𝔫̃`: brackets of normal forms are taken in the loop
/// algebra (degrees at most 2) and then reduced. Jacobi-checked.
pub fn build_borel_quotient<T: Scalar>(g: &SimpleLieAlgebra<T>, eps: T) -> Result<BorelQuotient<T>> {
    let (np, r) = (g.num_positive(), g.rank());
    let src = g.algebra();
    let dim = 2 * np + 2 * r;
    let mut labels: Vec<String> = (0..np + r).map(|i| src.label(i).to_string()).collect();
    labels.extend((0..r).map(|i| format!("t{}", src.label(g.h(i)))));
    labels.extend((0..np).map(|k| format!("t{}", src.label(g.f(k)))));
    let elems: Vec<PolyVector<T>> = (0..dim).map(|i| normal_element(g, i)).collect::<Result<_>>()?;
    let mut alg = LieAlgebra::abelian(labels);
    for i in 0..dim {
        for j in i + 1..dim {
            let p = poly_bracket(src, &elems[i], &elems[j])?;
            alg.set_bracket(i, j, sparse_from_dense(&reduce_closed(g, &eps, &p)?))?;
        }
    }
    alg.set_named_subspace("n", (0..np).collect());
    alg.set_named_subspace("h", (np..np + r).collect());
    alg.set_named_subspace("th", (np + r..np + 2 * r).collect());
    alg.set_named_subspace("tn_minus", (np + 2 * r..dim).collect());
    if let Err(w) = check_jacobi(&alg) {
        return Err(Error::Falsified(format!("Jacobi identity fails in the Borel quotient on {:?}", w.triple)));
    }
    Ok(BorelQuotient { epsilon: eps, source: g.clone(), algebra: Arc::new(alg) })
}

/// `γ_ε : 𝔤ᵉ₊ → 𝔟̃/(t − ε)𝔫̃`: `x ↦ x`, `y ↦ ty`, `(a, b) ↦ (a − εb) + 2tb`.
/// Returned as a verified isomorphism.
pub fn gamma_eps<T: Scalar>(g: &SimpleLieAlgebra<T>, eps: &T) -> Result<AlgebraMap<T>> {
    let ge = build_g_eps_plus(g, eps.clone())?;
    let bq = build_borel_quotient(g, eps.clone())?;
    let (np, r) = (g.num_positive(), g.rank());
    let mut m = Matrix::zeros(bq.dim(), ge.dim());
    for k in 0..np {
        m[(bq.x(k), ge.e(k))] = T::one();
        m[(bq.ty(k), ge.f_minus(k))] = T::one();
    }
    for i in 0..r {
        let hm = ge.h_minus(i).expect("𝔤ᵉ₊ has a second Cartan copy");
        m[(bq.h(i), ge.h(i))] = T::one();
        m[(bq.h(i), hm)] = -eps.clone();
        m[(bq.th(i), hm)] = T::from_int(2);
    }
    verified_map(AlgebraMap::new(ge.algebra().clone(), bq.algebra().clone(), m)?, "γ_ε")
}

/// The inverse of `γ_ε` on normal forms: `x ↦ (x, 0)`, `h ↦ (h, 0)`,
/// `th ↦ (εh/2, h/2)`, `ty ↦ (0, y)`. Returned as a verified isomorphism.
pub fn theta_retraction<T: Scalar>(g: &SimpleLieAlgebra<T>, eps: &T) -> Result<AlgebraMap<T>> {
    let ge = build_g_eps_plus(g, eps.clone())?;
    let bq = build_borel_quotient(g, eps.clone())?;
    let (np, r) = (g.num_positive(), g.rank());
    let half = T::half();
    let mut m = Matrix::zeros(ge.dim(), bq.dim());
    for k in 0..np {
        m[(ge.e(k), bq.x(k))] = T::one();
        m[(ge.f_minus(k), bq.ty(k))] = T::one();
    }
    for i in 0..r {
        let hm = ge.h_minus(i).expect("𝔤ᵉ₊ has a second Cartan copy");
        m[(ge.h(i), bq.h(i))] = T::one();
        m[(ge.h(i), bq.th(i))] = eps.clone() * &half;
        m[(hm, bq.th(i))] = half.clone();
    }
    verified_map(AlgebraMap::new(bq.algebra().clone(), ge.algebra().clone(), m)?, "θ")
}

/// `I𝔟 → 𝔟̃/t𝔫̃`, `(x, y) ↦ x + ty`, as a verified isomorphism.
pub fn ib_to_borel_quotient<T: Scalar>(g: &SimpleLieAlgebra<T>) -> Result<AlgebraMap<T>> {
    let ib = build_ib(g)?;
    let bq = build_borel_quotient(g, T::zero())?;
    verified_map(AlgebraMap::new(ib.algebra().clone(), bq.algebra().clone(), Matrix::identity(ib.dim()))?, "x + ty")
}

fn verified_map<T: Scalar>(mut m: AlgebraMap<T>, what: &str) -> Result<AlgebraMap<T>> {
    if !check_homomorphism(&mut m) || !m.verified_bijective() {
        return Err(Error::Falsified(format!("{what} is not an isomorphism")));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_simple;
    use crate::doubles::build_ib;
    use crate::rootsys::RootSystem;
    use crate::scalar::q;
    use crate::Q;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn simple(t: &str) -> SimpleLieAlgebra<Q> {
        build_simple(&RootSystem::from_type_str(t).unwrap()).unwrap()
    }

    #[test]
    fn epsilon_zero_matches_ib() {
        for t in ["A1", "A2", "B2"] {
            let g = simple(t);
            let bq = build_borel_quotient(&g, q(0, 1)).unwrap();
            let ib = build_ib(&g).unwrap();
            assert_eq!(bq.algebra().labels(), ib.algebra().labels());
            for i in 0..bq.dim() {
                for j in 0..bq.dim() {
                    assert_eq!(bq.algebra().bracket_basis(i, j), ib.algebra().bracket_basis(i, j));
                }
            }
            assert!(ib_to_borel_quotient(&g).unwrap().is_verified_isomorphism());
        }
    }

    #[test]
    fn reduction_instances() {
        let g = simple("A1");
        let bq = build_borel_quotient(&g, q(1, 1)).unwrap();
        let t2h = PolyVector::monomial(0, 2, 2, g.h(0), q(1, 1)).unwrap();
        let mut expected = vec![q(0, 1); 4];
        expected[bq.th(0)] = q(1, 1);
        assert_eq!(bq.reduce(&t2h).unwrap(), expected);
        let f0 = PolyVector::monomial(0, 2, 0, g.f(0), q(1, 1)).unwrap();
        assert!(bq.reduce(&f0).is_err());
        let bq3 = build_borel_quotient(&simple("A2"), q(1, 3)).unwrap();
        assert_eq!(bq3.dim(), 10);
    }

    #[test]
    fn reduction_is_confluent() {
        let g = simple("A2");
        let bq = build_borel_quotient(&g, q(-2, 3)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (np, r) = (g.num_positive(), g.rank());
        for _ in 0..30 {
            let mut p = PolyVector::zero(0, 2).unwrap();
            for _ in 0..6 {
                let k = rng.gen_range(0..g.dim());
                let lo = if k < np { 0 } else if k < np + r { 0 } else { 1 };
                let d = rng.gen_range(lo..=2);
                p.add_term(d, k, q(rng.gen_range(-5..=5), rng.gen_range(1..4))).unwrap();
            }
            let closed = bq.reduce(&p).unwrap();
            let first = bq.reduce_stepwise(&p, &mut |_| 0).unwrap();
            let last = bq.reduce_stepwise(&p, &mut |c| c.len() - 1).unwrap();
            let random = bq.reduce_stepwise(&p, &mut |c| rng.gen_range(0..c.len())).unwrap();
            assert_eq!(closed, first);
            assert_eq!(closed, last);
            assert_eq!(closed, random);
        }
    }

    #[test]
    fn gamma_and_theta() {
        let g = simple("A1");
        let g0 = gamma_eps(&g, &q(0, 1)).unwrap();
        // γ₀(h_a, h_b) = h_a + 2t h_b
        assert_eq!(g0.image_of_basis(1), vec![q(0, 1), q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(g0.image_of_basis(2), vec![q(0, 1), q(0, 1), q(2, 1), q(0, 1)]);
        for e in [q(0, 1), q(1, 1), q(3, 5)] {
            let gm = gamma_eps(&g, &e).unwrap();
            assert_eq!(gm.image_of_basis(0), vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)]);
            let th = theta_retraction(&g, &e).unwrap();
            assert!(th.compose(&gm).unwrap().is_identity());
        }
        let th0 = theta_retraction(&g, &q(0, 1)).unwrap();
        assert_eq!(th0.image_of_basis(2), vec![q(0, 1), q(0, 1), q(1, 2), q(0, 1)]);
        let a2 = simple("A2");
        let e = q(-2, 1);
        let rt = theta_retraction(&a2, &e).unwrap().compose(&gamma_eps(&a2, &e).unwrap()).unwrap();
        assert_eq!(rt.matrix().rows(), 10);
        assert!(rt.is_identity());
        assert!(gamma_eps(&simple("B2"), &q(3, 5)).unwrap().is_verified_isomorphism());
    }
}
