//! Automorphisms of the extended Dynkin diagram, the embedding of the roots of
//! `I𝔟` into the affine root system, recovery of the extended Cartan matrix
//! from `I𝔟`, and lifts of diagram automorphisms to automorphisms of `I𝔟`.

use std::collections::HashSet;
use std::fmt;

use crate::doubles::{DoubleAlgebra, DoubleKind};
use crate::error::{Error, Result};
use crate::liealg::{
    center, check_homomorphism, derived_subalgebra, generated_subalgebra, is_ad_nilpotent, normalizer, weight_decomposition,
    AlgebraMap, Provenance,
};
use crate::linalg::{dense_from_sparse, span_dim, Matrix};
use crate::rootsys::Root;
use crate::scalar::Scalar;

/// A permutation of the extended diagram nodes; node 0 is the `α₀` node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramAutomorphism {
    perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidInput(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(Self { perm })
    }

    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect() }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { perm: other.perm.iter().map(|&i| self.perm[i]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        Self { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn order(&self) -> usize {
        let mut cur = self.clone();
        let mut k = 1;
        while !cur.is_identity() {
            cur = self.compose(&cur);
            k += 1;
        }
        k
    }

    /// True when `a_{σ(i), σ(j)} = a_{ij}` for all nodes.
    pub fn preserves(&self, ext_cartan: &[Vec<i64>]) -> bool {
        let n = self.perm.len();
        ext_cartan.len() == n
            && (0..n).all(|i| (0..n).all(|j| ext_cartan[self.perm[i]][self.perm[j]] == ext_cartan[i][j]))
    }

    /// Disjoint cycles of length at least 2.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.perm.len()];
        let mut out = Vec::new();
        for s in 0..self.perm.len() {
            if seen[s] {
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let mut c = self.perm[s];
            while c != s {
                seen[c] = true;
                cyc.push(c);
                c = self.perm[c];
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }
}

impl fmt::Display for DiagramAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|i| i.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// All node permutations preserving the generalized Cartan matrix, found by
/// backtracking; sorted with the identity first.
pub fn diagram_automorphism_group(ext_cartan: &[Vec<i64>]) -> Vec<DiagramAutomorphism> {
    let n = ext_cartan.len();
    let degree = |i: usize| (0..n).filter(|&j| j != i && ext_cartan[i][j] != 0).count();
    let profile = |i: usize| {
        let mut row: Vec<(i64, i64)> = (0..n).filter(|&j| j != i).map(|j| (ext_cartan[i][j], ext_cartan[j][i])).collect();
        row.sort_unstable();
        (ext_cartan[i][i], row)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(degree(i)));
    let profiles: Vec<_> = (0..n).map(profile).collect();
    let mut out = Vec::new();
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    fn search(
        pos: usize,
        order: &[usize],
        a: &[Vec<i64>],
        profiles: &[(i64, Vec<(i64, i64)>)],
        assign: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        out: &mut Vec<DiagramAutomorphism>,
    ) {
        if pos == order.len() {
            out.push(DiagramAutomorphism { perm: assign.iter().map(|p| p.expect("complete")).collect() });
            return;
        }
        let i = order[pos];
        for c in 0..order.len() {
            if used[c] || profiles[c] != profiles[i] {
                continue;
            }
            let consistent = order[..pos].iter().all(|&k| {
                let pk = assign[k].expect("assigned");
                a[c][pk] == a[i][k] && a[pk][c] == a[k][i]
            });
            if !consistent {
                continue;
            }
            assign[i] = Some(c);
            used[c] = true;
            search(pos + 1, order, a, profiles, assign, used, out);
            used[c] = false;
            assign[i] = None;
        }
    }
    search(0, &order, ext_cartan, &profiles, &mut assign, &mut used, &mut out);
    out.sort();
    out
}

/// True when the list is closed under composition and inverses and contains the identity.
pub fn is_group(elements: &[DiagramAutomorphism]) -> bool {
    let set: HashSet<&DiagramAutomorphism> = elements.iter().collect();
    let Some(first) = elements.first() else { return false };
    set.contains(&DiagramAutomorphism::identity(first.len()))
        && elements.iter().all(|a| set.contains(&a.inverse()))
        && elements.iter().all(|a| elements.iter().all(|b| set.contains(&a.compose(b))))
}

/// One root of `I𝔟` and its image in the affine root system.
#[derive(Clone, Debug)]
pub struct PhiEntry<T> {
    /// The root as an `𝔥`-weight, in simple-root coordinates.
    pub root: Root,
    /// Coefficient of `δ` in the image.
    pub delta: i64,
    /// Image in the coordinates of the affine simple roots `α₀, …, α_r`.
    pub node_coords: Vec<i64>,
    /// Basis of the weight space in `I𝔟`.
    pub space: Vec<Vec<T>>,
}

/// The embedding `φ : Φ(I𝔟) → Φ̃`, `α ↦ α` on `Φ⁺` and `α ↦ δ + α` on `Φ⁻`.
#[derive(Clone, Debug)]
pub struct RootEmbedding<T> {
    pub entries: Vec<PhiEntry<T>>,
    /// Every nonzero weight has zero component on `t𝔥`.
    pub zero_on_th: bool,
    /// The zero weight space is `𝔥 ⊕ t𝔥`.
    pub zero_space_dim: usize,
}

impl<T: Scalar> RootEmbedding<T> {
    pub fn is_injective(&self) -> bool {
        let set: HashSet<&Vec<i64>> = self.entries.iter().map(|e| &e.node_coords).collect();
        set.len() == self.entries.len()
    }

    /// Every root space is one-dimensional, as for real affine roots.
    pub fn dims_match(&self) -> bool {
        self.entries.iter().all(|e| e.space.len() == 1)
    }

    /// The entries whose images are affine simple roots, in node order.
    pub fn simple_entries(&self) -> Vec<&PhiEntry<T>> {
        let image: HashSet<&Vec<i64>> = self.entries.iter().map(|e| &e.node_coords).collect();
        let decomposable = |c: &Vec<i64>| {
            image.iter().any(|a| {
                let b: Vec<i64> = c.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                b.iter().all(|&x| x >= 0) && b.iter().any(|&x| x > 0) && image.contains(&b)
            })
        };
        let mut simple: Vec<&PhiEntry<T>> = self.entries.iter().filter(|e| !decomposable(&e.node_coords)).collect();
        simple.sort_by_key(|e| e.node_coords.iter().position(|&x| x != 0));
        simple
    }
}

fn require_ib<T: Scalar>(ib: &DoubleAlgebra<T>) -> Result<()> {
    if *ib.kind() != DoubleKind::Ib {
        return Err(Error::InvalidInput("expected the double I𝔟".into()));
    }
    Ok(())
}

/// Computes `Φ(I𝔟)` from the weights of `𝔠 = 𝔥 ⊕ t𝔥` and embeds it into `Φ̃`.
pub fn phi_root_embedding<T: Scalar>(ib: &DoubleAlgebra<T>) -> Result<RootEmbedding<T>> {
    require_ib(ib)?;
    let alg = ib.algebra();
    let rs = ib.source_simple().roots();
    let r = ib.rank();
    let cartan: Vec<Vec<T>> = ib.cartan_indices().into_iter().map(|i| alg.basis_vector(i)).collect();
    let wd = weight_decomposition(alg, &cartan)?;
    let theta = rs.highest_root();
    let mut entries = Vec::new();
    let mut zero_on_th = true;
    for (w, space) in wd.weights.iter().zip(wd.spaces.iter()) {
        zero_on_th &= w[r..].iter().all(|x| x.is_zero());
        let pairings: Vec<crate::Q> = w[..r]
            .iter()
            .map(|x| x.to_rational().ok_or_else(|| Error::InvalidInput("weight is not rational".into())))
            .collect::<Result<_>>()?;
        let root = rs
            .root_from_pairings(&pairings)
            .ok_or_else(|| Error::Falsified(format!("weight {w:?} of I𝔟 is not a root")))?;
        let delta = if root.is_positive() { 0 } else { 1 };
        let mut node_coords = vec![delta];
        node_coords.extend(root.coords().iter().zip(theta.coords()).map(|(b, t)| b + delta * t));
        entries.push(PhiEntry { root, delta, node_coords, space: space.clone() });
    }
    Ok(RootEmbedding { entries, zero_on_th, zero_space_dim: wd.zero_space.len() })
}

/// Structural facts about `I𝔟` with Cartan subalgebra `𝔠 = 𝔥 ⊕ t𝔥`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IbStructure {
    pub rank: usize,
    pub simple_dim: usize,
    pub center_dim: usize,
    pub derived_dim: usize,
    /// `𝔠` is abelian and equals its normalizer.
    pub cartan_self_normalizing: bool,
    /// The nonzero `𝔠`-weights are exactly `Φ`, each with multiplicity one.
    pub weights_biject_with_roots: bool,
    /// Every nonzero weight vanishes on `t𝔥`.
    pub weights_zero_on_th: bool,
    /// Every basis vector of `𝔫 ⊕ t𝔟⁻` is ad-nilpotent.
    pub nilpotent_basis: bool,
    /// Number of sampled elements with nonzero `𝔥`-part.
    pub samples: usize,
    /// How many of them were found not ad-nilpotent.
    pub samples_rejected: usize,
}

impl IbStructure {
    pub fn holds(&self) -> bool {
        self.center_dim == self.rank
            && self.derived_dim == self.simple_dim
            && self.cartan_self_normalizing
            && self.weights_biject_with_roots
            && self.weights_zero_on_th
            && self.nilpotent_basis
            && self.samples_rejected == self.samples
    }
}

/// Computes the center, derived algebra, Cartan subalgebra, weights and
/// ad-nilpotent elements of `I𝔟`; `samples` seeded random elements with
/// nonzero `𝔥`-part are tested for ad-nilpotency.
pub fn ib_structure_check<T: Scalar>(ib: &DoubleAlgebra<T>, samples: usize, seed: u64) -> Result<IbStructure> {
    use rand::{Rng, SeedableRng};
    require_ib(ib)?;
    let alg = ib.algebra();
    let dim = alg.dim();
    let r = ib.rank();
    let rs = ib.source_simple().roots();
    let c_idx = ib.cartan_indices();
    let c: Vec<Vec<T>> = c_idx.iter().map(|&i| alg.basis_vector(i)).collect();
    let norm = normalizer(alg, &c);
    let cartan_self_normalizing = alg.is_abelian_on(&c_idx) && span_dim(&norm) == c.len();
    let emb = phi_root_embedding(ib)?;
    let found: HashSet<Root> = emb.entries.iter().map(|e| e.root.clone()).collect();
    let all: HashSet<Root> = rs.all_roots().into_iter().collect();
    let weights_biject_with_roots = found == all && emb.entries.len() == all.len() && emb.dims_match();
    let nilpotent_idx: Vec<usize> = ib.n_indices().into_iter().chain(ib.part_minus().iter().copied()).collect();
    let nilpotent_basis = nilpotent_idx.iter().all(|&i| is_ad_nilpotent(alg, &alg.basis_vector(i)));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut rejected = 0;
    for _ in 0..samples {
        let mut x: Vec<T> = (0..dim).map(|_| T::from_int(rng.gen_range(-3..=3))).collect();
        let i = rng.gen_range(0..r);
        if x[ib.h(i)].is_zero() {
            x[ib.h(i)] = T::from_int(if rng.gen_bool(0.5) { 1 } else { -1 });
        }
        if !is_ad_nilpotent(alg, &x) {
            rejected += 1;
        }
    }
    Ok(IbStructure {
        rank: r,
        simple_dim: ib.source_simple().dim(),
        center_dim: span_dim(&center(alg)),
        derived_dim: span_dim(&derived_subalgebra(alg)),
        cartan_self_normalizing,
        weights_biject_with_roots,
        weights_zero_on_th: emb.zero_on_th,
        nilpotent_basis,
        samples,
        samples_rejected: rejected,
    })
}

/// The extended Cartan matrix recovered from `I𝔟` along two independent paths.
#[derive(Clone, Debug, PartialEq)]
pub struct RecoveredCartan {
    /// `a_{αβ} = −max{n : β + nα ∈ φ(Φ(I𝔟))}` over `Δ(I𝔟)`.
    pub from_strings: Vec<Vec<i64>>,
    /// `a_{αβ} = −max{n : (ad X_α)ⁿ X_β ≠ 0}`.
    pub from_ad: Vec<Vec<i64>>,
}

/// Recovers the extended Cartan matrix from `I𝔟`, nodes ordered as `α₀, α₁, …`.
/// Refused for `𝔰𝔩₂`, where the string rule does not apply.
pub fn recover_extended_cartan<T: Scalar>(ib: &DoubleAlgebra<T>) -> Result<RecoveredCartan> {
    require_ib(ib)?;
    if ib.source_simple().roots().simple_type().is_sl2() {
        return Err(Error::NotApplicable(
            "the string rule does not apply to sl2: both nodes are joined by a double edge of type A1~".into(),
        ));
    }
    let emb = phi_root_embedding(ib)?;
    let image: HashSet<Vec<i64>> = emb.entries.iter().map(|e| e.node_coords.clone()).collect();
    let simple = emb.simple_entries();
    let n = simple.len();
    if n != ib.rank() + 1 {
        return Err(Error::Falsified(format!("Δ(I𝔟) has {n} elements, expected {}", ib.rank() + 1)));
    }
    let alg = ib.algebra();
    let mut from_strings = vec![vec![0i64; n]; n];
    let mut from_ad = vec![vec![0i64; n]; n];
    for (i, a) in simple.iter().enumerate() {
        for (j, b) in simple.iter().enumerate() {
            if i == j {
                from_strings[i][j] = 2;
                from_ad[i][j] = 2;
                continue;
            }
            let mut k = 0i64;
            loop {
                let c: Vec<i64> = b.node_coords.iter().zip(&a.node_coords).map(|(x, y)| x + (k + 1) * y).collect();
                if !image.contains(&c) {
                    break;
                }
                k += 1;
            }
            from_strings[i][j] = -k;
            let xa = &a.space[0];
            let mut v = b.space[0].clone();
            let mut m = 0i64;
            loop {
                v = alg.bracket(xa, &v)?;
                if v.iter().all(|x| x.is_zero()) {
                    break;
                }
                m += 1;
                if m > 8 {
                    return Err(Error::Falsified("ad X_α is not nilpotent on a root vector".into()));
                }
            }
            from_ad[i][j] = -m;
        }
    }
    Ok(RecoveredCartan { from_strings, from_ad })
}

/// Root vectors `X_α` for the nodes: `e_{α_i}` and `t·f_θ` for node 0, as basis indices of `I𝔟`.
pub fn node_root_vectors<T: Scalar>(ib: &DoubleAlgebra<T>) -> Vec<usize> {
    let rs = ib.source_simple().roots();
    let theta = rs.positive_index(&rs.highest_root()).expect("highest root is positive");
    let mut out = vec![ib.f_minus(theta)];
    out.extend((0..ib.rank()).map(|i| ib.e(i)));
    out
}

/// Lifts `σ` to the automorphism of `I𝔟` with `X_α ↦ X_{σ(α)}`, acting on `𝔥` by the
/// dual of `α ↦ σ(α)|_𝔥` over `Δ`, and on `[I𝔟, I𝔟]` by replaying bracket words.
/// Returned verified.
pub fn lift_diagram_automorphism<T: Scalar>(ib: &DoubleAlgebra<T>, sigma: &DiagramAutomorphism) -> Result<AlgebraMap<T>> {
    require_ib(ib)?;
    let g = ib.source_simple();
    let rs = g.roots();
    let r = ib.rank();
    if sigma.len() != r + 1 || !sigma.preserves(rs.extended_cartan()) {
        return Err(Error::InvalidInput(format!("{sigma} is not an automorphism of the extended diagram")));
    }
    let alg = ib.algebra();
    let dim = alg.dim();
    let nodes = rs.extended_nodes();
    let x = node_root_vectors(ib);

    // 𝔥 part: Σ_k G_kj σ(α_i)(h_k) = α_i(h_j) for i = 1..r
    let w = Matrix::from_fn(r, r, |i, k| T::from_int(rs.pairing(&nodes[sigma.apply(i + 1)], k)));
    let a = Matrix::from_fn(r, r, |i, j| T::from_int(rs.pairing(&nodes[i + 1], j)));
    let g_mat = w
        .inverse()
        .ok_or_else(|| Error::Falsified(format!("{sigma} does not act invertibly on 𝔥*")))?
        .mul(&a)?;

    let seeds: Vec<Vec<T>> = x.iter().map(|&i| alg.basis_vector(i)).collect();
    let gen = generated_subalgebra(alg, &seeds);
    if gen.dim() + r != dim {
        return Err(Error::ConstructionBug(format!(
            "node root vectors generate {} dimensions, expected {}",
            gen.dim(),
            dim - r
        )));
    }
    let mut images: Vec<Vec<T>> = Vec::with_capacity(gen.dim());
    for p in &gen.provenance {
        let img = match p {
            Provenance::Seed(idx) => alg.basis_vector(x[sigma.apply(*idx)]),
            Provenance::Bracket(sp, k) => alg.bracket(&images[*sp], &images[*k])?,
        };
        images.push(img);
    }
    let mut src_cols: Vec<Vec<T>> = (0..r).map(|i| alg.basis_vector(ib.h(i))).collect();
    let mut img_cols: Vec<Vec<T>> = (0..r)
        .map(|j| {
            let mut v = vec![T::zero(); dim];
            for k in 0..r {
                v[ib.h(k)] = g_mat[(k, j)].clone();
            }
            v
        })
        .collect();
    src_cols.extend(gen.basis.iter().cloned());
    img_cols.extend(images);
    let b = Matrix::from_columns(dim, &src_cols)?;
    let im = Matrix::from_columns(dim, &img_cols)?;
    let b_inv = b.inverse().ok_or_else(|| Error::ConstructionBug("generated basis is singular".into()))?;
    let mut map = AlgebraMap::new(alg.clone(), alg.clone(), im.mul(&b_inv)?)?;
    if !check_homomorphism(&mut map) || !map.verified_bijective() {
        return Err(Error::Falsified(format!("the lift of {sigma} is not an automorphism of I𝔟")));
    }
    for (i, node) in nodes.iter().enumerate() {
        let h = dense_from_sparse(dim, &g.coroot_vector(node));
        let target = dense_from_sparse(dim, &g.coroot_vector(&nodes[sigma.apply(i)]));
        if map.apply(&h)? != target {
            return Err(Error::Falsified(format!("the lift of {sigma} does not permute the coroots")));
        }
    }
    Ok(map)
}
