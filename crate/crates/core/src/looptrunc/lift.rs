use std::collections::VecDeque;

use super::{flat_bracket, PolyVector};
use crate::chevalley::{cartan_involution, SimpleLieAlgebra};
use crate::diagaut::DiagramAutomorphism;
use crate::error::{Error, Result};
use crate::linalg::{SparseReducer, SparseVec};
use crate::scalar::Scalar;

/// A diagram automorphism lifted to the loop algebra on the span of bracket
/// words in the Chevalley generators `e_i, f_i` (`e₀ = t·f_θ`, `f₀ = t⁻¹·e_θ`)
/// whose degrees stay in `[-N, N]`.
#[derive(Clone)]
pub struct LoopLift<T> {
    source: SimpleLieAlgebra<T>,
    sigma: DiagramAutomorphism,
    window: i64,
    reducer: SparseReducer<T>,
}

impl<T: Scalar> std::fmt::Debug for LoopLift<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LoopLift({}, N = {}, domain dim {})", self.sigma, self.window, self.domain_dim())
    }
}

impl<T: Scalar> LoopLift<T> {
    pub fn sigma(&self) -> &DiagramAutomorphism {
        &self.sigma
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    /// Window holding the images.
    pub fn image_window(&self) -> (i64, i64) {
        (-self.window - 1, self.window + 1)
    }

    pub fn domain_dim(&self) -> usize {
        self.reducer.rank()
    }

    /// True when `t^d b_k` lies in the domain for every `d ∈ [lo, hi]` and every `k`.
    pub fn covers_degrees(&self, lo: i64, hi: i64) -> bool {
        let dim = self.source.dim();
        (lo..=hi).all(|d| {
            (0..dim).all(|k| self.contains(&PolyVector::monomial(-self.window, self.window, d, k, T::one()).expect("window")))
        })
    }

    pub fn contains(&self, p: &PolyVector<T>) -> bool {
        matches!(p.rewindow(-self.window, self.window), Ok(q) if self.reducer.reduce(&q.to_flat(self.source.dim()), &Vec::new()).0.is_empty())
    }

    /// `θ̃(p)`, or `None` when `p` is outside the generated span.
    pub fn apply(&self, p: &PolyVector<T>) -> Result<Option<PolyVector<T>>> {
        let dim = self.source.dim();
        let Ok(q) = p.rewindow(-self.window, self.window) else { return Ok(None) };
        let (rest, pay) = self.reducer.reduce(&q.to_flat(dim), &Vec::new());
        if !rest.is_empty() {
            return Ok(None);
        }
        let (lo, hi) = self.image_window();
        let neg: SparseVec<T> = pay.into_iter().map(|(i, c)| (i, -c)).collect();
        Ok(Some(PolyVector::from_flat(lo, hi, dim, &neg)?))
    }
}

fn generators<T: Scalar>(g: &SimpleLieAlgebra<T>, lo: i64, hi: i64) -> Result<Vec<(PolyVector<T>, PolyVector<T>)>> {
    let rs = g.roots();
    let theta = rs.positive_index(&rs.highest_root()).expect("highest root is positive");
    let mut out = vec![(
        PolyVector::monomial(lo, hi, 1, g.f(theta), T::one())?,
        PolyVector::monomial(lo, hi, -1, g.e(theta), T::one())?,
    )];
    for i in 0..g.rank() {
        out.push((
            PolyVector::monomial(lo, hi, 0, g.e(i), T::one())?,
            PolyVector::monomial(lo, hi, 0, g.f(i), T::one())?,
        ));
    }
    Ok(out)
}

/// Lifts `σ` to `θ̃` with `e_i ↦ e_{σ(i)}`, `f_i ↦ f_{σ(i)}`, extended along bracket
/// words. Dependent words are checked for consistent images; a conflict is a
/// falsification.
pub fn lift_to_loop<T: Scalar>(g: &SimpleLieAlgebra<T>, sigma: &DiagramAutomorphism, n: i64) -> Result<LoopLift<T>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("window N = {n} is below 2")));
    }
    let r = g.rank();
    if sigma.len() != r + 1 || !sigma.preserves(g.roots().extended_cartan()) {
        return Err(Error::InvalidInput(format!("{sigma} is not an automorphism of the extended diagram")));
    }
    let dim = g.dim();
    let (ilo, ihi) = (-n - 1, n + 1);
    let src_gens = generators(g, -n, n)?;
    let img_gens = generators(g, ilo, ihi)?;
    // seeds: (domain vector, domain degree, image vector)
    let mut seeds: Vec<(SparseVec<T>, i64, SparseVec<T>)> = Vec::new();
    for (i, (e, f)) in src_gens.iter().enumerate() {
        let (ie, if_) = &img_gens[sigma.apply(i)];
        let deg = if i == 0 { 1 } else { 0 };
        seeds.push((e.to_flat(dim), deg, ie.to_flat(dim)));
        seeds.push((f.to_flat(dim), -deg, if_.to_flat(dim)));
    }
    let a = g.algebra();
    let mut reducer = SparseReducer::new((2 * n as usize + 1) * dim);
    let mut queue: VecDeque<(SparseVec<T>, i64, SparseVec<T>)> = VecDeque::new();
    let mut record = |v: SparseVec<T>, d: i64, img: SparseVec<T>, queue: &mut VecDeque<_>| -> Result<()> {
        match reducer.insert(v.clone(), img.clone()) {
            None => queue.push_back((v, d, img)),
            Some(residual) if !residual.is_empty() => {
                return Err(Error::Falsified(format!(
                    "the lift of {sigma} is inconsistent: a dependent bracket word has a nonzero image residual"
                )))
            }
            Some(_) => {}
        }
        Ok(())
    };
    for (v, d, img) in &seeds {
        record(v.clone(), *d, img.clone(), &mut queue)?;
    }
    while let Some((w, dw, iw)) = queue.pop_front() {
        for (s, ds, is) in &seeds {
            let d = ds + dw;
            if d < -n || d > n {
                continue;
            }
            let v = flat_bracket(a, -n, n, s, &w)?;
            let img = flat_bracket(a, ilo, ihi, is, &iw)?;
            record(v, d, img, &mut queue)?;
        }
    }
    Ok(LoopLift { source: g.clone(), sigma: sigma.clone(), window: n, reducer })
}

/// `λ` with `θ̃(tx) = λ·t·θ̃(x)`, computed on every basis vector `tᵈb` for which
/// both sides are defined. Disagreeing ratios, `λ ∉ {±1}`, or `λ ≠ 1` for an
/// odd-order `σ` are falsifications.
pub fn semilinearity_lambda<T: Scalar>(lift: &LoopLift<T>) -> Result<T> {
    let n = lift.window;
    let dim = lift.source.dim();
    let (ilo, ihi) = lift.image_window();
    let mut lambda: Option<T> = None;
    for d in -n..n {
        for k in 0..dim {
            let x = PolyVector::monomial(-n, n, d, k, T::one())?;
            let tx = PolyVector::monomial(-n, n, d + 1, k, T::one())?;
            let (Some(ix), Some(itx)) = (lift.apply(&x)?, lift.apply(&tx)?) else { continue };
            let t_ix = ix.rewindow(ilo - 1, ihi + 1)?.shift(1)?;
            let itx = itx.rewindow(ilo - 1, ihi + 1)?;
            let Some((dd, kk, c)) = t_ix.terms().next() else {
                return Err(Error::Falsified("θ̃ sends a nonzero vector to zero".into()));
            };
            let ratio = itx.coefficient(dd, kk) / c;
            if t_ix.scale(&ratio) != itx {
                return Err(Error::Falsified(format!("θ̃(t·t^{d}b_{k}) is not proportional to t·θ̃(t^{d}b_{k})")));
            }
            match &lambda {
                None => lambda = Some(ratio),
                Some(l) if *l != ratio => {
                    return Err(Error::Falsified(format!("semilinearity ratios disagree: {l} and {ratio}")));
                }
                _ => {}
            }
        }
    }
    let lambda = lambda.ok_or_else(|| Error::InvalidInput("no basis vector is testable in this window".into()))?;
    if lambda != T::one() && lambda != -T::one() {
        return Err(Error::Falsified(format!("λ = {lambda} is not ±1")));
    }
    if lift.sigma.order() % 2 == 1 && lambda != T::one() {
        return Err(Error::Falsified(format!("λ = {lambda} for an automorphism of odd order")));
    }
    Ok(lambda)
}

/// Checks `ω ∘ θ̃ ∘ ω = θ̃` on every domain basis vector `tᵈb`, where
/// `ω(tⁱx) = t⁻ⁱ ω̊(x)` and `ω̊` is the Chevalley involution.
pub fn omega_compatible<T: Scalar>(lift: &LoopLift<T>) -> Result<bool> {
    let g = &lift.source;
    let w = cartan_involution(g)?;
    let n = lift.window;
    let dim = g.dim();
    let (ilo, ihi) = lift.image_window();
    let omega = |p: &PolyVector<T>, lo: i64, hi: i64| -> Result<PolyVector<T>> {
        let mut out = PolyVector::zero(lo, hi)?;
        for (d, k, c) in p.terms() {
            for (j, x) in w.image_of_basis(k).into_iter().enumerate() {
                if !x.is_zero() {
                    out.add_term(-d, j, x * c)?;
                }
            }
        }
        Ok(out)
    };
    for d in -n..=n {
        for k in 0..dim {
            let x = PolyVector::monomial(-n, n, d, k, T::one())?;
            let Some(ix) = lift.apply(&x)? else { continue };
            let Some(iwx) = lift.apply(&omega(&x, -n, n)?)? else { continue };
            if omega(&iwx, ilo, ihi)? != ix {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_simple;
    use crate::diagaut::diagram_automorphism_group;
    use crate::rootsys::RootSystem;
    use crate::scalar::q;
    use crate::Q;

    fn simple(t: &str) -> SimpleLieAlgebra<Q> {
        build_simple(&RootSystem::from_type_str(t).unwrap()).unwrap()
    }

    #[test]
    fn identity_lift() {
        let g = simple("A2");
        let id = DiagramAutomorphism::identity(3);
        let l = lift_to_loop(&g, &id, 2).unwrap();
        assert!(l.covers_degrees(-2, 2));
        let x = PolyVector::monomial(-2, 2, 1, g.h(0), q(3, 1)).unwrap();
        assert_eq!(l.apply(&x).unwrap().unwrap(), x.rewindow(-3, 3).unwrap());
        assert_eq!(semilinearity_lambda(&l).unwrap(), q(1, 1));
        assert!(omega_compatible(&l).unwrap());
    }

    #[test]
    fn a1_swap() {
        let g = simple("A1");
        let swap = DiagramAutomorphism::new(vec![1, 0]).unwrap();
        let l = lift_to_loop(&g, &swap, 2).unwrap();
        let e = PolyVector::monomial(-2, 2, 0, g.e(0), q(1, 1)).unwrap();
        let tf = PolyVector::monomial(-3, 3, 1, g.f(0), q(1, 1)).unwrap();
        assert_eq!(l.apply(&e).unwrap().unwrap(), tf);
        let lam = semilinearity_lambda(&l).unwrap();
        assert!(lam == q(1, 1) || lam == q(-1, 1));
        assert!(omega_compatible(&l).unwrap());
    }

    #[test]
    fn a2_cycle_covers_and_has_lambda_one() {
        let g = simple("A2");
        let cyc = DiagramAutomorphism::new(vec![1, 2, 0]).unwrap();
        let l = lift_to_loop(&g, &cyc, 2).unwrap();
        assert!(l.covers_degrees(-1, 1));
        assert_eq!(semilinearity_lambda(&l).unwrap(), q(1, 1));
        for s in diagram_automorphism_group(g.roots().extended_cartan()) {
            let l = lift_to_loop(&g, &s, 2).unwrap();
            let lam = semilinearity_lambda(&l).unwrap();
            assert!(lam == q(1, 1) || lam == q(-1, 1));
            assert!(omega_compatible(&l).unwrap());
        }
    }

    #[test]
    fn rejects_small_windows() {
        let g = simple("A1");
        assert!(lift_to_loop(&g, &DiagramAutomorphism::identity(2), 1).is_err());
        assert!(lift_to_loop(&g, &DiagramAutomorphism::identity(3), 2).is_err());
    }
}
