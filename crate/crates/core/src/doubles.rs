//! The double `I𝔟 = 𝔟 ⋉ t𝔟⁻`, its contraction family `𝔤ᵉ₊` on `𝔟 ⊕ 𝔟⁻`,
//! the smaller family `𝔤ᵉ` on `𝔟 ⊕ 𝔫⁻`, and the quotient `I̅𝔟 = I𝔟 / t𝔥`.
//!
//! All four share one basis layout: the `𝔟` copy (`e_α`, then `h_i`), followed
//! by the second copy (`h_i` when present, then `f_α`). For `x ∈ 𝔟`, `y` in the
//! second copy, write `[x, y] = X + H + Y` in `𝔤` with `X ∈ 𝔫`, `H ∈ 𝔥`,
//! `Y ∈ 𝔫⁻`. The brackets are
//!
//! | algebra | `[x, x']` | `[y, y']` | `[x, y]` |
//! |---------|-----------|-----------|----------|
//! | `𝔤ᵉ₊`   | `[x, x']` | `ε[y, y']` | `(εX + εH/2, H/2 + Y)` |
//! | `𝔤ᵉ`    | `[x, x']` | `ε[y, y']` | `(εX + εH, Y)` |
//! | `I𝔟`    | `[x, x']` | `0`        | `t(H + Y)` |

use std::sync::Arc;

use crate::chevalley::{killing_form, SimpleLieAlgebra};
use crate::error::{Error, Result};
use crate::liealg::{center, check_homomorphism, check_jacobi, AlgebraMap, LieAlgebra};
use crate::linalg::{solve_system, span_dim, Matrix, SparseVec};
use crate::scalar::Scalar;

/// Which member of the family an algebra is.
#[derive(Clone, Debug, PartialEq)]
pub enum DoubleKind<T> {
    GEpsPlus(T),
    GEps(T),
    Ib,
    IbBar,
}

/// One of the doubles, with the index sets of its two halves.
#[derive(Clone)]
pub struct DoubleAlgebra<T> {
    algebra: Arc<LieAlgebra<T>>,
    kind: DoubleKind<T>,
    part_b: Vec<usize>,
    part_minus: Vec<usize>,
    source: SimpleLieAlgebra<T>,
    minus_has_h: bool,
}

impl<T: Scalar> std::fmt::Debug for DoubleAlgebra<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DoubleAlgebra({:?}, {:?}, dim {})", self.kind, self.source, self.dim())
    }
}

impl<T: Scalar> DoubleAlgebra<T> {
    pub fn algebra(&self) -> &Arc<LieAlgebra<T>> {
        &self.algebra
    }

    pub fn kind(&self) -> &DoubleKind<T> {
        &self.kind
    }

    pub fn part_b(&self) -> &[usize] {
        &self.part_b
    }

    pub fn part_minus(&self) -> &[usize] {
        &self.part_minus
    }

    pub fn source_simple(&self) -> &SimpleLieAlgebra<T> {
        &self.source
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn rank(&self) -> usize {
        self.source.rank()
    }

    /// True when the second half contains a copy of `𝔥`.
    pub fn minus_has_h(&self) -> bool {
        self.minus_has_h
    }

    /// Index of `e_α` (`k`-th positive root) in the `𝔟` half.
    pub fn e(&self, k: usize) -> usize {
        k
    }

    /// Index of `h_i` in the `𝔟` half.
    pub fn h(&self, i: usize) -> usize {
        self.source.num_positive() + i
    }

    /// Index of `h_i` in the second half (`th_i` for `I𝔟`).
    pub fn h_minus(&self, i: usize) -> Option<usize> {
        self.minus_has_h.then(|| self.source.num_positive() + self.rank() + i)
    }

    /// Index of `f_α` in the second half (`tf_α` for `I𝔟`).
    pub fn f_minus(&self, k: usize) -> usize {
        let r = self.rank();
        self.source.num_positive() + r + if self.minus_has_h { r } else { 0 } + k
    }

    /// Position of a `𝔤` basis index of `𝔟` inside the double.
    pub fn from_b(&self, gi: usize) -> usize {
        debug_assert!(gi < self.source.num_positive() + self.rank());
        gi
    }

    /// Position of a `𝔤` basis index of `𝔟⁻` (or `𝔫⁻`) inside the second half.
    pub fn from_minus(&self, gi: usize) -> Option<usize> {
        let (np, r) = (self.source.num_positive(), self.rank());
        if gi < np {
            None
        } else if gi < np + r {
            self.h_minus(gi - np)
        } else {
            Some(self.f_minus(gi - np - r))
        }
    }

    /// The Cartan subalgebra `𝔥 ⊕ t𝔥` (or `𝔥` when the second half has no `𝔥`).
    pub fn cartan_indices(&self) -> Vec<usize> {
        let r = self.rank();
        (0..r).map(|i| self.h(i)).chain((0..r).filter_map(|i| self.h_minus(i))).collect()
    }

    /// Indices of `𝔫` in the `𝔟` half.
    pub fn n_indices(&self) -> Vec<usize> {
        (0..self.source.num_positive()).collect()
    }

    /// Indices of the `𝔫⁻` copy in the second half.
    pub fn n_minus_indices(&self) -> Vec<usize> {
        (0..self.source.num_positive()).map(|k| self.f_minus(k)).collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rule {
    Plus,
    Small,
    Double,
}

fn assemble<T: Scalar>(
    g: &SimpleLieAlgebra<T>,
    kind: DoubleKind<T>,
) -> Result<DoubleAlgebra<T>> {
    let (rule, eps) = match &kind {
        DoubleKind::GEpsPlus(e) => (Rule::Plus, e.clone()),
        DoubleKind::GEps(e) => (Rule::Small, e.clone()),
        DoubleKind::Ib => (Rule::Double, T::zero()),
        DoubleKind::IbBar => return build_ib_bar_from(g),
    };
    let minus_has_h = rule != Rule::Small;
    let (np, r) = (g.num_positive(), g.rank());
    let src = g.algebra();
    let b_part: Vec<usize> = (0..np + r).collect();
    let minus_src: Vec<usize> = if minus_has_h { (np..2 * np + r).collect() } else { (np + r..2 * np + r).collect() };

    let mut labels: Vec<String> = b_part.iter().map(|&i| src.label(i).to_string()).collect();
    for &i in &minus_src {
        labels.push(match rule {
            Rule::Double => format!("t{}", src.label(i)),
            _ => format!("{}'", src.label(i)),
        });
    }
    let mut shell = DoubleAlgebra {
        algebra: Arc::new(LieAlgebra::abelian(Vec::new())),
        kind: kind.clone(),
        part_b: b_part.clone(),
        part_minus: (np + r..np + r + minus_src.len()).collect(),
        source: g.clone(),
        minus_has_h,
    };
    let half = T::half();
    let to_b = |v: &SparseVec<T>, scale: &T, x: bool, h: bool| -> SparseVec<T> {
        v.iter()
            .filter(|(k, _)| (x && *k < np) || (h && (np..np + r).contains(k)))
            .map(|(k, c)| (*k, c.clone() * scale))
            .collect()
    };
    let to_minus = |shell: &DoubleAlgebra<T>, v: &SparseVec<T>, h_scale: &T, y_scale: &T| -> SparseVec<T> {
        v.iter()
            .filter_map(|(k, c)| {
                if *k < np {
                    None
                } else if *k < np + r {
                    shell.h_minus(*k - np).map(|p| (p, c.clone() * h_scale))
                } else {
                    Some((shell.f_minus(*k - np - r), c.clone() * y_scale))
                }
            })
            .collect()
    };

    let mut alg = LieAlgebra::abelian(labels);
    let nb = b_part.len();
    let dim = nb + minus_src.len();
    for i in 0..dim {
        for j in i + 1..dim {
            let v: SparseVec<T> = if j < nb {
                src.bracket_basis(i, j).clone()
            } else if i >= nb {
                let (gi, gj) = (minus_src[i - nb], minus_src[j - nb]);
                match rule {
                    Rule::Double => Vec::new(),
                    _ => to_minus(&shell, src.bracket_basis(gi, gj), &eps, &eps),
                }
            } else {
                let w = src.bracket_basis(i, minus_src[j - nb]);
                let mut out = match rule {
                    Rule::Plus => {
                        let mut o = to_b(w, &eps, true, false);
                        o.extend(to_b(w, &(eps.clone() * &half), false, true));
                        o
                    }
                    Rule::Small => to_b(w, &eps, true, true),
                    Rule::Double => Vec::new(),
                };
                out.extend(match rule {
                    Rule::Plus => to_minus(&shell, w, &half, &T::one()),
                    _ => to_minus(&shell, w, &T::one(), &T::one()),
                });
                out
            };
            alg.set_bracket(i, j, crate::liealg::normalize_sparse(v))?;
        }
    }
    let n: Vec<usize> = (0..np).collect();
    let h: Vec<usize> = (np..np + r).collect();
    alg.set_named_subspace("b", b_part.clone());
    alg.set_named_subspace("n", n);
    alg.set_named_subspace("h", h);
    let minus_name = match rule {
        Rule::Double => "tb_minus",
        Rule::Plus => "b_minus",
        Rule::Small => "n_minus",
    };
    alg.set_named_subspace(minus_name, shell.part_minus.clone());
    if minus_has_h {
        let hm: Vec<usize> = (0..r).filter_map(|i| shell.h_minus(i)).collect();
        let nm: Vec<usize> = (0..np).map(|k| shell.f_minus(k)).collect();
        let (hn, nn) = if rule == Rule::Double { ("th", "tn_minus") } else { ("h_minus", "n_minus") };
        alg.set_named_subspace(hn, hm);
        alg.set_named_subspace(nn, nm);
    }
    if let Err(w) = check_jacobi(&alg) {
        return Err(Error::Falsified(format!("Jacobi identity fails on basis triple {:?}", w.triple)));
    }
    shell.algebra = Arc::new(alg);
    Ok(shell)
}

/// `𝔤ᵉ₊` on `𝔟 ⊕ 𝔟⁻`, Jacobi-checked.
pub fn build_g_eps_plus<T: Scalar>(g: &SimpleLieAlgebra<T>, eps: T) -> Result<DoubleAlgebra<T>> {
    assemble(g, DoubleKind::GEpsPlus(eps))
}

/// `𝔤ᵉ` on `𝔟 ⊕ 𝔫⁻`, Jacobi-checked.
pub fn build_g_eps<T: Scalar>(g: &SimpleLieAlgebra<T>, eps: T) -> Result<DoubleAlgebra<T>> {
    assemble(g, DoubleKind::GEps(eps))
}

/// `I𝔟 = 𝔟 ⊕ t𝔟⁻` with `t𝔟⁻` an abelian ideal, Jacobi-checked.
pub fn build_ib<T: Scalar>(g: &SimpleLieAlgebra<T>) -> Result<DoubleAlgebra<T>> {
    assemble(g, DoubleKind::Ib)
}

/// `I̅𝔟 = I𝔟 / t𝔥`, the quotient by the center.
pub fn build_ib_bar<T: Scalar>(g: &SimpleLieAlgebra<T>) -> Result<DoubleAlgebra<T>> {
    build_ib_bar_from(g)
}

fn build_ib_bar_from<T: Scalar>(g: &SimpleLieAlgebra<T>) -> Result<DoubleAlgebra<T>> {
    let ib = build_ib(g)?;
    let th: Vec<usize> = (0..ib.rank()).filter_map(|i| ib.h_minus(i)).collect();
    let (mut q, _keep) = ib.algebra().quotient_by_basis(&th)?;
    let (np, r) = (g.num_positive(), g.rank());
    q.set_named_subspace("tn_minus", (np + r..2 * np + r).collect());
    q.set_named_subspace("th", Vec::new());
    let mut named = q.named_subspaces().clone();
    named.remove("tb_minus");
    named.remove("th");
    let mut q2 = q.clone();
    for (k, v) in named {
        q2.set_named_subspace(&k, v);
    }
    Ok(DoubleAlgebra {
        algebra: Arc::new(q2),
        kind: DoubleKind::IbBar,
        part_b: (0..np + r).collect(),
        part_minus: (np + r..2 * np + r).collect(),
        source: g.clone(),
        minus_has_h: false,
    })
}

/// Checks `[X, Y]_ε = φ_ε⁻¹([φ_ε X, φ_ε Y]_1)` on all basis pairs, where `φ_ε`
/// scales the second half by `ε`.
pub fn phi_eps_check<T: Scalar>(g: &SimpleLieAlgebra<T>, eps: &T) -> Result<bool> {
    if eps.is_zero() {
        return Err(Error::InvalidInput("φ_ε is not invertible at ε = 0".into()));
    }
    let ge = build_g_eps_plus(g, eps.clone())?;
    let g1 = build_g_eps_plus(g, T::one())?;
    let dim = ge.dim();
    let minus: Vec<bool> = (0..dim).map(|i| ge.part_minus().contains(&i)).collect();
    let scale = |i: usize| if minus[i] { eps.clone() } else { T::one() };
    for i in 0..dim {
        for j in i + 1..dim {
            let s = scale(i) * scale(j);
            let rhs: SparseVec<T> = g1
                .algebra()
                .bracket_basis(i, j)
                .iter()
                .map(|(k, c)| (*k, c.clone() * &s / scale(*k)))
                .collect();
            if &rhs != ge.algebra().bracket_basis(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The embeddings `ι¹_𝔤 : 𝔤 → 𝔤¹₊` and `ι¹_𝔥 : 𝔥 → 𝔤¹₊` and the facts checked about them.
#[derive(Clone, Debug)]
pub struct IotaEmbeddings<T: Scalar> {
    pub iota_g: AlgebraMap<T>,
    pub iota_h: AlgebraMap<T>,
    /// `ι¹_𝔤` is an injective homomorphism.
    pub iota_g_injective_hom: bool,
    /// The image of `ι¹_𝔤` is an ideal.
    pub iota_g_image_is_ideal: bool,
    /// `ι¹_𝔥` is an injective homomorphism.
    pub iota_h_injective_hom: bool,
    /// The image of `ι¹_𝔥` is the center of `𝔤¹₊`.
    pub iota_h_image_is_center: bool,
    /// The two images together span `𝔤¹₊` with zero intersection.
    pub direct_sum: bool,
}

impl<T: Scalar> IotaEmbeddings<T> {
    pub fn all_hold(&self) -> bool {
        self.iota_g_injective_hom
            && self.iota_g_image_is_ideal
            && self.iota_h_injective_hom
            && self.iota_h_image_is_center
            && self.direct_sum
    }
}

/// `ι¹_𝔤(ξ + α + ζ) = (ξ + α/2, α/2 + ζ)` and `ι¹_𝔥(α) = (-α, α)`.
pub fn iota_embeddings<T: Scalar>(g: &SimpleLieAlgebra<T>) -> Result<IotaEmbeddings<T>> {
    let g1 = build_g_eps_plus(g, T::one())?;
    let target = g1.algebra().clone();
    let (np, r) = (g.num_positive(), g.rank());
    let dim = target.dim();
    let half = T::half();
    let mut mg = Matrix::zeros(dim, g.dim());
    for k in 0..np {
        mg[(g1.e(k), g.e(k))] = T::one();
        mg[(g1.f_minus(k), g.f(k))] = T::one();
    }
    for i in 0..r {
        mg[(g1.h(i), g.h(i))] = half.clone();
        mg[(g1.h_minus(i).expect("h copy"), g.h(i))] = half.clone();
    }
    let mut iota_g = AlgebraMap::new(g.algebra().clone(), target.clone(), mg)?;
    let g_hom = check_homomorphism(&mut iota_g);
    let g_inj = iota_g.matrix().rank() == g.dim();

    let h_alg = Arc::new(LieAlgebra::abelian((1..=r).map(|i| format!("h{i}")).collect()));
    let mut mh = Matrix::zeros(dim, r);
    for i in 0..r {
        mh[(g1.h(i), i)] = -T::one();
        mh[(g1.h_minus(i).expect("h copy"), i)] = T::one();
    }
    let mut iota_h = AlgebraMap::new(h_alg, target.clone(), mh)?;
    let h_hom = check_homomorphism(&mut iota_h);
    let h_inj = iota_h.matrix().rank() == r;

    let img_g: Vec<Vec<T>> = (0..g.dim()).map(|j| iota_g.image_of_basis(j)).collect();
    let img_h: Vec<Vec<T>> = (0..r).map(|j| iota_h.image_of_basis(j)).collect();
    let dim_g = span_dim(&img_g);
    let ideal = (0..dim).all(|b| {
        img_g.iter().all(|v| {
            let w = target.bracket(&target.basis_vector(b), v).expect("dims");
            span_dim(&[img_g.clone(), vec![w]].concat()) == dim_g
        })
    });
    let z = center(&target);
    let both = [z.clone(), img_h.clone()].concat();
    let is_center = span_dim(&z) == r && span_dim(&img_h) == r && span_dim(&both) == r;
    let all = [img_g.clone(), img_h.clone()].concat();
    let direct_sum = span_dim(&all) == dim && dim_g + r == dim;
    Ok(IotaEmbeddings {
        iota_g,
        iota_h,
        iota_g_injective_hom: g_hom && g_inj,
        iota_g_image_is_ideal: ideal,
        iota_h_injective_hom: h_hom && h_inj,
        iota_h_image_is_center: is_center,
        direct_sum,
    })
}

/// `η : 𝔤⁰₊ → I𝔟`, `(x, y) ↦ x + t·z` where `z ∈ 𝔟⁻` represents the functional
/// `κ(2h + y_n, ·)|_𝔟` for `y = h + y_n`. Returned verified.
pub fn eta_iso<T: Scalar>(g: &SimpleLieAlgebra<T>) -> Result<AlgebraMap<T>> {
    let g0 = build_g_eps_plus(g, T::zero())?;
    let ib = build_ib(g)?;
    let kappa = killing_form(g.algebra());
    let subs = g.subalgebras();
    let (np, r) = (g.num_positive(), g.rank());
    // pairing matrix P[a][c] = κ(b⁻_c, b_a) for b⁻ basis c and 𝔟 basis a
    let pairing = Matrix::from_fn(subs.b.len(), subs.b_minus.len(), |a, c| kappa[(subs.b[a], subs.b_minus[c])].clone());
    let mut m = Matrix::zeros(ib.dim(), g0.dim());
    for j in 0..np + r {
        m[(ib.from_b(j), g0.from_b(j))] = T::one();
    }
    for (c, &gi) in subs.b_minus.iter().enumerate() {
        // functional κ(w, ·) on 𝔟 with w = 2h or w = y
        let factor = if gi < np + r { T::from_int(2) } else { T::one() };
        let functional: Vec<T> = (0..subs.b.len()).map(|a| pairing[(a, c)].clone() * &factor).collect();
        let z = solve_system(&pairing, &functional)?
            .ok_or_else(|| Error::ConstructionBug("κ does not pair 𝔟⁻ with 𝔟".into()))?;
        let col = g0.from_minus(gi).expect("second half");
        for (c2, &gk) in subs.b_minus.iter().enumerate() {
            if !z[c2].is_zero() {
                m[(ib.from_minus(gk).expect("second half"), col)] = z[c2].clone();
            }
        }
    }
    let mut eta = AlgebraMap::new(g0.algebra().clone(), ib.algebra().clone(), m)?;
    if !check_homomorphism(&mut eta) || !eta.verified_bijective() {
        return Err(Error::Falsified("η is not an isomorphism 𝔤⁰₊ → I𝔟".into()));
    }
    Ok(eta)
}

/// For `ε ≠ 0`, the isomorphism `𝔤ᵉ → 𝔤`, `(x, y) ↦ x + εy`; for `ε = 0`, the
/// basis identification `𝔤⁰ → I̅𝔟`. Returned with its flags set.
pub fn g_eps_isomorphism<T: Scalar>(g: &SimpleLieAlgebra<T>, eps: &T) -> Result<AlgebraMap<T>> {
    let ge = build_g_eps(g, eps.clone())?;
    let (np, r) = (g.num_positive(), g.rank());
    let mut map = if eps.is_zero() {
        let bar = build_ib_bar(g)?;
        AlgebraMap::new(ge.algebra().clone(), bar.algebra().clone(), Matrix::identity(ge.dim()))?
    } else {
        let mut m = Matrix::zeros(g.dim(), ge.dim());
        for j in 0..np + r {
            m[(j, j)] = T::one();
        }
        for k in 0..np {
            m[(g.f(k), ge.f_minus(k))] = eps.clone();
        }
        AlgebraMap::new(ge.algebra().clone(), g.algebra().clone(), m)?
    };
    check_homomorphism(&mut map);
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_simple;
    use crate::liealg::derived_subalgebra;
    use crate::rootsys::RootSystem;
    use crate::scalar::q;
    use num_rational::BigRational;

    fn simple(t: &str) -> SimpleLieAlgebra<BigRational> {
        build_simple(&RootSystem::from_type_str(t).unwrap()).unwrap()
    }

    #[test]
    fn ib_a1_brackets() {
        let g = simple("A1");
        let ib = build_ib(&g).unwrap();
        let a = ib.algebra();
        assert_eq!(a.labels(), &["e[1]", "h1", "th1", "tf[1]"]);
        let (e, h, th, tf) = (0, 1, 2, 3);
        assert_eq!(a.bracket_basis(e, tf), &vec![(th, q(1, 1))]);
        assert_eq!(a.bracket_basis(h, tf), &vec![(tf, q(-2, 1))]);
        assert!(a.bracket_basis(e, th).is_empty());
        assert!(a.bracket_basis(th, tf).is_empty());
        assert!(a.is_ideal(ib.part_minus()));
        assert!(a.is_abelian_on(ib.part_minus()));
    }

    #[test]
    fn g_eps_plus_a1() {
        let g = simple("A1");
        let g1 = build_g_eps_plus(&g, q(1, 1)).unwrap();
        let a = g1.algebra();
        assert_eq!(a.labels(), &["e[1]", "h1", "h1'", "f[1]'"]);
        // [e, f]_1 = (h/2, h/2)
        assert_eq!(a.bracket_basis(0, 3), &vec![(1, q(1, 2)), (2, q(1, 2))]);
        let g0 = build_g_eps_plus(&g, q(0, 1)).unwrap();
        assert!(g0.algebra().is_abelian_on(g0.part_minus()));
        assert_eq!(g0.dim(), 4);
    }

    #[test]
    fn family_dimensions_and_jacobi() {
        for t in ["A1", "A2", "B2"] {
            let g = simple(t);
            for e in [q(0, 1), q(1, 1), q(1, 2), q(-2, 1)] {
                let gp = build_g_eps_plus(&g, e.clone()).unwrap();
                assert_eq!(gp.dim(), g.dim() + g.rank());
                assert_eq!(center(gp.algebra()).len(), g.rank(), "{t} {e}");
                assert_eq!(derived_subalgebra(gp.algebra()).len(), g.dim(), "{t} {e}");
                let ge = build_g_eps(&g, e.clone()).unwrap();
                assert_eq!(ge.dim(), g.dim());
                assert!(ge.algebra().is_subalgebra(ge.part_b()));
            }
        }
    }

    #[test]
    fn g_eps_isomorphisms() {
        let g = simple("A1");
        let m = g_eps_isomorphism(&g, &q(1, 1)).unwrap();
        assert!(m.is_verified_isomorphism());
        let g0 = build_g_eps(&g, q(0, 1)).unwrap();
        assert!(center(g0.algebra()).is_empty());
        let a2 = simple("A2");
        assert!(g_eps_isomorphism(&a2, &q(0, 1)).unwrap().is_verified_isomorphism());
        assert!(g_eps_isomorphism(&a2, &q(-3, 5)).unwrap().is_verified_isomorphism());
    }

    #[test]
    fn ib_bar() {
        let g = simple("A1");
        let bar = build_ib_bar(&g).unwrap();
        assert_eq!(bar.dim(), 3);
        assert!(center(bar.algebra()).is_empty());
        assert_eq!(bar.algebra().labels(), &["e[1]", "h1", "tf[1]"]);
        assert!(check_jacobi(bar.algebra()).is_ok());
    }

    #[test]
    fn phi_eps() {
        assert!(phi_eps_check(&simple("A1"), &q(2, 1)).unwrap());
        assert!(phi_eps_check(&simple("A2"), &q(-1, 3)).unwrap());
        assert!(phi_eps_check(&simple("A2"), &q(1, 1)).unwrap());
        assert!(phi_eps_check(&simple("A1"), &q(0, 1)).is_err());
    }

    #[test]
    fn iota() {
        let g = simple("A1");
        let io = iota_embeddings(&g).unwrap();
        assert!(io.all_hold());
        assert_eq!(io.iota_g.image_of_basis(1), vec![q(0, 1), q(1, 2), q(1, 2), q(0, 1)]);
        assert_eq!(io.iota_h.image_of_basis(0), vec![q(0, 1), q(-1, 1), q(1, 1), q(0, 1)]);
        assert!(iota_embeddings(&simple("A2")).unwrap().all_hold());
    }

    #[test]
    fn eta() {
        for t in ["A1", "B2"] {
            let g = simple(t);
            let eta = eta_iso(&g).unwrap();
            assert!(eta.is_verified_isomorphism());
            let zero = vec![q(0, 1); eta.source().dim()];
            assert!(eta.apply(&zero).unwrap().iter().all(|c| *c == q(0, 1)));
        }
        // on A1 the Cartan copy is doubled
        let eta = eta_iso(&simple("A1")).unwrap();
        assert_eq!(eta.image_of_basis(2), vec![q(0, 1), q(0, 1), q(2, 1), q(0, 1)]);
        assert_eq!(eta.image_of_basis(3), vec![q(0, 1), q(0, 1), q(0, 1), q(1, 1)]);
    }
}
