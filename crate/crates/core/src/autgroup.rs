//! The subgroup families of `Aut(I𝔟)`: the loop rescalings `δ_τ`, the central
//! translations `ū`, the adjoint maps `exp ad x` and the torus, together with
//! the derivation-level decomposition and the component-separation check.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagaut::{diagram_automorphism_group, lift_diagram_automorphism};
use crate::doubles::{DoubleAlgebra, DoubleKind};
use crate::error::{Error, Result};
use crate::liealg::{center, check_homomorphism, derivations, derived_subalgebra, exp_ad, is_derivation, AlgebraMap, LieAlgebra};
use crate::linalg::{coordinates, span_basis, span_dim, Matrix};
use crate::scalar::{pow, Scalar};

fn require_ib<T: Scalar>(ib: &DoubleAlgebra<T>) -> Result<()> {
    if *ib.kind() != DoubleKind::Ib {
        return Err(Error::InvalidInput("expected the double I𝔟".into()));
    }
    Ok(())
}

fn verified<T: Scalar>(mut m: AlgebraMap<T>, what: &str) -> Result<AlgebraMap<T>> {
    if !check_homomorphism(&mut m) || !m.verified_bijective() {
        return Err(Error::Falsified(format!("{what} is not an automorphism")));
    }
    Ok(m)
}

/// `δ_τ`: identity on `𝔟`, multiplication by `τ` on `t𝔟⁻` (the substitution `t ↦ τt`).
pub fn delta_tau<T: Scalar>(ib: &DoubleAlgebra<T>, tau: &T) -> Result<AlgebraMap<T>> {
    require_ib(ib)?;
    if tau.is_zero() {
        return Err(Error::InvalidInput("δ_τ needs τ ≠ 0".into()));
    }
    let mut m = Matrix::identity(ib.dim());
    for &i in ib.part_minus() {
        m[(i, i)] = tau.clone();
    }
    verified(AlgebraMap::new(ib.algebra().clone(), ib.algebra().clone(), m)?, "δ_τ")
}

/// `ū(x) = x + u(x̄)`, where `x̄` is the class of `x` in `I𝔟/[I𝔟, I𝔟] ≅ 𝔥` and
/// `u` is given by its matrix `u[i][j]` = coefficient of `th_i` in `u(h̄_j)`.
pub fn u_bar_automorphism<T: Scalar>(ib: &DoubleAlgebra<T>, u: &Matrix<T>) -> Result<AlgebraMap<T>> {
    let r = ib.rank();
    if u.rows() != r || u.cols() != r {
        return Err(Error::DimensionMismatch { expected: r, found: u.rows().max(u.cols()) });
    }
    let columns: Vec<Vec<T>> = (0..r)
        .map(|j| {
            let mut v = vec![T::zero(); ib.dim()];
            for i in 0..r {
                if let Some(p) = ib.h_minus(i) {
                    v[p] = u[(i, j)].clone();
                }
            }
            v
        })
        .collect();
    u_bar_from_images(ib, &columns)
}

/// `ū` from the images `u(h̄_j) ∈ I𝔟` of the classes of `h_1, …, h_r`; every
/// image must be central.
pub fn u_bar_from_images<T: Scalar>(ib: &DoubleAlgebra<T>, images: &[Vec<T>]) -> Result<AlgebraMap<T>> {
    require_ib(ib)?;
    let alg = ib.algebra();
    let r = ib.rank();
    if images.len() != r {
        return Err(Error::DimensionMismatch { expected: r, found: images.len() });
    }
    let z = center(alg);
    let dz = span_dim(&z);
    let derived = derived_subalgebra(alg);
    let dd = span_dim(&derived);
    if span_dim(&[derived.clone(), z.clone()].concat()) != dd {
        return Err(Error::NotApplicable("the center is not contained in the derived algebra".into()));
    }
    for v in images {
        if v.len() != alg.dim() || span_dim(&[z.clone(), vec![v.clone()]].concat()) != dz {
            return Err(Error::InvalidInput("u must take values in the center".into()));
        }
    }
    let proj = quotient_projection(ib)?;
    let mut m = Matrix::identity(alg.dim());
    for col in 0..alg.dim() {
        for (j, img) in images.iter().enumerate() {
            let c = proj[(j, col)].clone();
            if c.is_zero() {
                continue;
            }
            for (row, x) in img.iter().enumerate() {
                m[(row, col)] += c.clone() * x;
            }
        }
    }
    verified(AlgebraMap::new(alg.clone(), alg.clone(), m)?, "ū")
}

/// The `r × dim` matrix of `I𝔟 → I𝔟/[I𝔟, I𝔟]`, in the basis of classes of `h_1, …, h_r`.
fn quotient_projection<T: Scalar>(ib: &DoubleAlgebra<T>) -> Result<Matrix<T>> {
    let alg = ib.algebra();
    let dim = alg.dim();
    let r = ib.rank();
    let mut basis: Vec<Vec<T>> = (0..r).map(|i| alg.basis_vector(ib.h(i))).collect();
    basis.extend(derived_subalgebra(alg));
    if basis.len() != dim || span_dim(&basis) != dim {
        return Err(Error::Falsified("𝔥 is not a complement of the derived algebra".into()));
    }
    let mut p = Matrix::zeros(r, dim);
    for col in 0..dim {
        let c = coordinates(&basis, &alg.basis_vector(col))
            .ok_or_else(|| Error::ConstructionBug("basis does not span".into()))?;
        for i in 0..r {
            p[(i, col)] = c[i].clone();
        }
    }
    Ok(p)
}

/// The torus element with weights `w`: `e_α ↦ χ(α) e_α`, `tf_α ↦ χ(α)⁻¹ tf_α`,
/// where `χ(α) = Π w_j^{a_j}` for `α = Σ a_j α_j`; the Cartan part is fixed.
pub fn torus_automorphism<T: Scalar>(ib: &DoubleAlgebra<T>, weights: &[T]) -> Result<AlgebraMap<T>> {
    require_ib(ib)?;
    if weights.len() != ib.rank() {
        return Err(Error::DimensionMismatch { expected: ib.rank(), found: weights.len() });
    }
    if weights.iter().any(|w| w.is_zero()) {
        return Err(Error::InvalidInput("torus weights must be nonzero".into()));
    }
    let rs = ib.source_simple().roots();
    let mut m = Matrix::identity(ib.dim());
    for (k, a) in rs.positive_roots().iter().enumerate() {
        let chi = a.coords().iter().zip(weights).fold(T::one(), |acc, (&c, w)| acc * pow(w, c));
        m[(ib.e(k), ib.e(k))] = chi.clone();
        m[(ib.f_minus(k), ib.f_minus(k))] = T::one() / chi;
    }
    verified(AlgebraMap::new(ib.algebra().clone(), ib.algebra().clone(), m)?, "the torus map")
}

/// Origin of a derivation in [`DerivationSpace`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DerivationTag {
    /// Derivative of `δ_τ` at `τ = 1`.
    DLine,
    /// `ad x`.
    Inner,
    /// `x ↦ u(x̄)` with `u` valued in the center.
    UType,
}

impl DerivationTag {
    pub fn name(self) -> &'static str {
        match self {
            DerivationTag::DLine => "d-line",
            DerivationTag::Inner => "inner",
            DerivationTag::UType => "u-type",
        }
    }
}

/// Explicit derivation families with their tags.
#[derive(Clone, Debug)]
pub struct DerivationSpace<T: Scalar> {
    pub algebra: Arc<LieAlgebra<T>>,
    pub basis: Vec<Matrix<T>>,
    pub tags: Vec<DerivationTag>,
}

impl<T: Scalar> DerivationSpace<T> {
    pub fn count(&self, tag: DerivationTag) -> usize {
        self.tags.iter().filter(|&&t| t == tag).count()
    }
}

/// Result of comparing the tagged families with the full derivation algebra.
#[derive(Clone, Debug)]
pub struct DerDecomposition<T: Scalar> {
    pub families: DerivationSpace<T>,
    pub der_dim: usize,
    pub expected_dim: usize,
    /// Every family member satisfies the Leibniz rule.
    pub all_derivations: bool,
    /// The families together are linearly independent.
    pub independent: bool,
    /// The families span `Der`.
    pub spans: bool,
    /// `dim ad(algebra) = dim − dim center`.
    pub inner_dim_matches: bool,
}

impl<T: Scalar> DerDecomposition<T> {
    pub fn holds(&self) -> bool {
        self.der_dim == self.expected_dim && self.all_derivations && self.independent && self.spans && self.inner_dim_matches
    }

    /// `Err(Falsified)` describing the first failed clause.
    pub fn verify(&self) -> Result<()> {
        if self.der_dim != self.expected_dim {
            return Err(Error::Falsified(format!("dim Der = {}, expected {}", self.der_dim, self.expected_dim)));
        }
        if !self.all_derivations {
            return Err(Error::Falsified("a family member is not a derivation".into()));
        }
        if !self.independent {
            return Err(Error::Falsified("the tagged families are linearly dependent".into()));
        }
        if !self.spans {
            return Err(Error::Falsified("the tagged families do not span Der".into()));
        }
        if !self.inner_dim_matches {
            return Err(Error::Falsified("ad has the wrong rank".into()));
        }
        Ok(())
    }
}

/// Computes `Der` of `I𝔟` or `I̅𝔟` and compares it with the `d`-line, inner and
/// `u`-type families. Expected dimension: `1 + dim 𝔤 + r²` for `I𝔟` and
/// `1 + dim 𝔤` for `I̅𝔟`.
pub fn der_decomposition_check<T: Scalar>(double: &DoubleAlgebra<T>, cap: usize) -> Result<DerDecomposition<T>> {
    let alg = double.algebra();
    let dim = alg.dim();
    let r = double.rank();
    let gdim = double.source_simple().dim();
    let expected_dim = match double.kind() {
        DoubleKind::Ib => 1 + gdim + r * r,
        DoubleKind::IbBar => 1 + gdim,
        _ => return Err(Error::InvalidInput("expected I𝔟 or its quotient by t𝔥".into())),
    };
    let der = derivations(alg, cap)?;
    let mut basis = Vec::new();
    let mut tags = Vec::new();
    let mut d = Matrix::zeros(dim, dim);
    for &i in double.part_minus() {
        d[(i, i)] = T::one();
    }
    basis.push(d);
    tags.push(DerivationTag::DLine);
    let ads: Vec<Vec<T>> = (0..dim).map(|i| alg.ad_basis(i).as_slice().to_vec()).collect();
    let inner = span_basis(dim * dim, &ads);
    let inner_dim_matches = inner.len() == dim - span_dim(&center(alg));
    for v in inner {
        basis.push(Matrix::from_rows(&v.chunks(dim).map(|c| c.to_vec()).collect::<Vec<_>>())?);
        tags.push(DerivationTag::Inner);
    }
    if *double.kind() == DoubleKind::Ib {
        let proj = quotient_projection(double)?;
        for i in 0..r {
            let th = double.h_minus(i).expect("I𝔟 has t𝔥");
            for j in 0..r {
                let mut m = Matrix::zeros(dim, dim);
                for col in 0..dim {
                    m[(th, col)] = proj[(j, col)].clone();
                }
                basis.push(m);
                tags.push(DerivationTag::UType);
            }
        }
    }
    let all_derivations = basis.iter().all(|m| is_derivation(alg, m));
    let flat: Vec<Vec<T>> = basis.iter().map(|m| m.as_slice().to_vec()).collect();
    let fam_rank = span_dim(&flat);
    let independent = fam_rank == flat.len();
    let der_flat: Vec<Vec<T>> = der.iter().map(|m| m.as_slice().to_vec()).collect();
    let spans = span_dim(&[flat, der_flat].concat()) == der.len() && fam_rank == der.len();
    Ok(DerDecomposition {
        families: DerivationSpace { algebra: alg.clone(), basis, tags },
        der_dim: der.len(),
        expected_dim,
        all_derivations,
        independent,
        spans,
        inner_dim_matches,
    })
}

/// Which family a sampled automorphism came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    D,
    U,
    ExpAd,
    Torus,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::D => "D",
            Family::U => "U",
            Family::ExpAd => "exp-ad",
            Family::Torus => "torus",
        }
    }
}

fn random_rational<T: Scalar>(rng: &mut ChaCha8Rng, nonzero: bool) -> T {
    loop {
        let n: i64 = rng.gen_range(-5..=5);
        let d: i64 = rng.gen_range(1..=4);
        if n != 0 || !nonzero {
            return T::from_int(n) / T::from_int(d);
        }
    }
}

/// `per_family` seeded samples from each of `D`, `U`, `exp ad` and the torus.
/// The `exp ad` samples alternate between `x ∈ 𝔫` and `x ∈ t𝔟⁻`.
pub fn sample_family_elements<T: Scalar>(
    ib: &DoubleAlgebra<T>,
    per_family: usize,
    seed: u64,
) -> Result<Vec<(Family, AlgebraMap<T>)>> {
    require_ib(ib)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = ib.rank();
    let dim = ib.dim();
    let mut out = Vec::new();
    for _ in 0..per_family {
        out.push((Family::D, delta_tau(ib, &random_rational(&mut rng, true))?));
    }
    for _ in 0..per_family {
        let u = Matrix::from_fn(r, r, |_, _| random_rational(&mut rng, false));
        out.push((Family::U, u_bar_automorphism(ib, &u)?));
    }
    for s in 0..per_family {
        let support: Vec<usize> = if s % 2 == 0 { ib.n_indices() } else { ib.part_minus().to_vec() };
        let mut x = vec![T::zero(); dim];
        for i in support {
            x[i] = random_rational(&mut rng, false);
        }
        out.push((Family::ExpAd, exp_ad(ib.algebra(), &x)?));
    }
    for _ in 0..per_family {
        let w: Vec<T> = (0..r).map(|_| random_rational(&mut rng, true)).collect();
        out.push((Family::Torus, torus_automorphism(ib, &w)?));
    }
    Ok(out)
}

/// Induced action `p(g)` on `I𝔟/[I𝔟, I𝔟]`, in the basis of classes of `h_i`.
pub fn induced_on_abelianization<T: Scalar>(ib: &DoubleAlgebra<T>, g: &AlgebraMap<T>) -> Result<Matrix<T>> {
    let proj = quotient_projection(ib)?;
    let r = ib.rank();
    let mut m = Matrix::zeros(r, r);
    for j in 0..r {
        let img = g.apply(&ib.algebra().basis_vector(ib.h(j)))?;
        let c = proj.mul_vec(&img)?;
        for i in 0..r {
            m[(i, j)] = c[i].clone();
        }
    }
    Ok(m)
}

/// Outcome of the component-separation check.
#[derive(Clone, Debug)]
pub struct SeparationReport<T: Scalar> {
    /// `(family, p(g) = id)` per sample.
    pub samples: Vec<(Family, bool)>,
    /// `p` of each lift of a diagram automorphism.
    pub gamma_images: Vec<Matrix<T>>,
    /// Distinct diagram automorphisms have distinct `p`-images.
    pub injective_on_gamma: bool,
}

impl<T: Scalar> SeparationReport<T> {
    pub fn families_trivial(&self) -> bool {
        self.samples.iter().all(|(_, ok)| *ok)
    }

    pub fn holds(&self) -> bool {
        self.families_trivial() && self.injective_on_gamma
    }
}

/// Checks that `p` is trivial on every family sample and injective on the lifts.
pub fn component_separation_check<T: Scalar>(
    ib: &DoubleAlgebra<T>,
    lifts: &[AlgebraMap<T>],
    samples: &[(Family, AlgebraMap<T>)],
) -> Result<SeparationReport<T>> {
    require_ib(ib)?;
    let mut sample_out = Vec::new();
    for (fam, g) in samples {
        sample_out.push((*fam, induced_on_abelianization(ib, g)?.is_identity()));
    }
    let gamma_images: Vec<Matrix<T>> = lifts.iter().map(|l| induced_on_abelianization(ib, l)).collect::<Result<_>>()?;
    let injective_on_gamma = (0..gamma_images.len())
        .all(|i| (i + 1..gamma_images.len()).all(|j| gamma_images[i] != gamma_images[j]));
    Ok(SeparationReport { samples: sample_out, gamma_images, injective_on_gamma })
}

/// Lifts of every extended diagram automorphism, in the order of
/// [`diagram_automorphism_group`].
pub fn gamma_lifts<T: Scalar>(ib: &DoubleAlgebra<T>) -> Result<Vec<AlgebraMap<T>>> {
    diagram_automorphism_group(ib.source_simple().roots().extended_cartan())
        .iter()
        .map(|s| lift_diagram_automorphism(ib, s))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_simple;
    use crate::doubles::{build_ib, build_ib_bar};
    use crate::liealg::DEFAULT_DERIVATION_CAP;
    use crate::rootsys::RootSystem;
    use crate::scalar::q;
    use crate::Q;

    fn ib(t: &str) -> DoubleAlgebra<Q> {
        build_ib(&build_simple(&RootSystem::from_type_str(t).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn delta() {
        let a1 = ib("A1");
        assert!(delta_tau(&a1, &q(1, 1)).unwrap().is_identity());
        let d2 = delta_tau(&a1, &q(2, 1)).unwrap();
        assert_eq!(d2.image_of_basis(3), vec![q(0, 1), q(0, 1), q(0, 1), q(2, 1)]);
        assert_eq!(d2.image_of_basis(2), vec![q(0, 1), q(0, 1), q(2, 1), q(0, 1)]);
        let a = delta_tau(&a1, &q(3, 7)).unwrap();
        let b = delta_tau(&a1, &q(7, 3)).unwrap();
        assert!(a.compose(&b).unwrap().is_identity());
        assert!(delta_tau(&a1, &q(0, 1)).is_err());
    }

    #[test]
    fn u_bar() {
        let a1 = ib("A1");
        let zero = Matrix::zeros(1, 1);
        assert!(u_bar_automorphism(&a1, &zero).unwrap().is_identity());
        let one = Matrix::identity(1);
        let u = u_bar_automorphism(&a1, &one).unwrap();
        assert_eq!(u.image_of_basis(1), vec![q(0, 1), q(1, 1), q(1, 1), q(0, 1)]);
        assert_eq!(u.image_of_basis(0), a1.algebra().basis_vector(0));
        let bad = vec![a1.algebra().basis_vector(0)];
        assert!(matches!(u_bar_from_images(&a1, &bad), Err(Error::InvalidInput(_))));

        let a2 = ib("A2");
        let mut maps = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                let mut m = Matrix::zeros(2, 2);
                m[(i, j)] = q(1, 1);
                maps.push(u_bar_automorphism(&a2, &m).unwrap());
            }
        }
        let id = Matrix::identity(a2.dim());
        let diffs: Vec<Vec<Q>> = maps.iter().map(|m| m.matrix().sub(&id).unwrap().as_slice().to_vec()).collect();
        assert_eq!(span_dim(&diffs), 4);
        let u = Matrix::from_fn(2, 2, |i, j| q((i + 2 * j) as i64, 3));
        let v = Matrix::from_fn(2, 2, |i, j| q(1 - (i * j) as i64, 2));
        let uv = u_bar_automorphism(&a2, &u).unwrap().compose(&u_bar_automorphism(&a2, &v).unwrap()).unwrap();
        let vu = u_bar_automorphism(&a2, &v).unwrap().compose(&u_bar_automorphism(&a2, &u).unwrap()).unwrap();
        let sum = u_bar_automorphism(&a2, &u.add(&v).unwrap()).unwrap();
        assert_eq!(uv.matrix(), sum.matrix());
        assert_eq!(vu.matrix(), sum.matrix());
    }

    #[test]
    fn torus() {
        let a1 = ib("A1");
        assert!(torus_automorphism(&a1, &[q(1, 1)]).unwrap().is_identity());
        let t = torus_automorphism(&a1, &[q(2, 1)]).unwrap();
        assert!(t.is_verified_isomorphism());
        let a2 = ib("A2");
        let s = torus_automorphism(&a2, &[q(2, 1), q(-1, 3)]).unwrap();
        let u = torus_automorphism(&a2, &[q(5, 1), q(3, 1)]).unwrap();
        let prod = torus_automorphism(&a2, &[q(10, 1), q(-1, 1)]).unwrap();
        assert_eq!(s.compose(&u).unwrap().matrix(), prod.matrix());
        assert!(torus_automorphism(&a2, &[q(0, 1), q(1, 1)]).is_err());
    }

    #[test]
    fn derivation_counts() {
        for (t, n) in [("A1", 5), ("A2", 13), ("B2", 15)] {
            let rep = der_decomposition_check(&ib(t), DEFAULT_DERIVATION_CAP).unwrap();
            assert_eq!(rep.der_dim, n, "{t}");
            rep.verify().unwrap();
        }
        for (t, n) in [("A1", 4), ("A2", 9)] {
            let g = build_simple(&RootSystem::from_type_str(t).unwrap()).unwrap();
            let rep = der_decomposition_check(&build_ib_bar::<Q>(&g).unwrap(), DEFAULT_DERIVATION_CAP).unwrap();
            assert_eq!(rep.der_dim, n, "{t}");
            assert_eq!(rep.families.count(DerivationTag::UType), 0);
            rep.verify().unwrap();
        }
    }

    #[test]
    fn separation() {
        let a2 = ib("A2");
        let lifts = gamma_lifts(&a2).unwrap();
        assert_eq!(lifts.len(), 6);
        let samples = sample_family_elements(&a2, 5, 11).unwrap();
        assert_eq!(samples.len(), 20);
        let rep = component_separation_check(&a2, &lifts, &samples).unwrap();
        assert!(rep.holds());
        let cyc = lift_diagram_automorphism(&a2, &crate::diagaut::DiagramAutomorphism::new(vec![1, 2, 0]).unwrap()).unwrap();
        let p = induced_on_abelianization(&a2, &cyc).unwrap();
        assert!(!p.is_identity());
        assert!(p.mul(&p).unwrap().mul(&p).unwrap().is_identity());
        let a1 = ib("A1");
        let e = exp_ad(a1.algebra(), &a1.algebra().basis_vector(0)).unwrap();
        assert!(induced_on_abelianization(&a1, &e).unwrap().is_identity());
    }
}
