// SPDX-License-Identifier: Apache-2.0

//! Finite-dimensional endofunctions of `A^ω`: sequences `(φ₀, φ₁, …)` of
//! top extensions, equal to `(e₀, e₁, …)` outside a finite support, acting
//! by `φ(s)ᵢ = φᵢ(s)` and multiplied by composition.

use std::sync::Arc;

use super::{Flavor, MMonoid};
use crate::clonealg::{fca, CloneAlgebra, Fca, FcaElement};
use crate::finop::FinOpError;
use crate::merge::{MergeAlgebra, MergeTag, PointedMerge};
use crate::seq::{enumerate_seqs, BaseSeq, Enumeration, FinPerm, OmegaSeq};

#[derive(Clone)]
pub struct FdimEndoCm {
    fca: Fca,
    base: Arc<BaseSeq<FcaElement>>,
    values: Arc<Vec<FcaElement>>,
    support_bound: usize,
}

/// Components have arity `≤ arity_bound`; the enumerated fragment overrides
/// positions below `support_bound`.
pub fn fdim_endo_cm(domain: u8, arity_bound: usize, support_bound: usize) -> Result<FdimEndoCm, FinOpError> {
    let f = fca(domain, arity_bound)?;
    let g = f.clone();
    let base = BaseSeq::indexed(format!("proj:{domain}"), move |k| g.e(k));
    let values = f.enumerate(usize::MAX).items;
    Ok(FdimEndoCm { fca: f, base, values: Arc::new(values), support_bound })
}

impl FdimEndoCm {
    pub fn fca(&self) -> &Fca {
        &self.fca
    }

    pub fn base(&self) -> &Arc<BaseSeq<FcaElement>> {
        &self.base
    }

    pub fn seq(&self, prefix: impl IntoIterator<Item = FcaElement>) -> OmegaSeq<FcaElement> {
        OmegaSeq::from_prefix(&self.base, prefix)
    }

    /// `φ(s)`, first `len` entries.
    pub fn apply(&self, phi: &OmegaSeq<FcaElement>, s: &[u8], len: usize) -> Vec<u8> {
        (0..len).map(|i| phi.entry(i).eval(s)).collect()
    }

    /// `D_ω(φ,n,m)` holds iff every `φᵢ` with `i < n` reads only coordinates below `m`.
    pub fn d_omega_exact(&self, phi: &OmegaSeq<FcaElement>, n: usize, m: usize) -> bool {
        (0..n).all(|i| phi.entry(i).arity() <= m)
    }
}

impl MergeAlgebra for FdimEndoCm {
    type Elem = OmegaSeq<FcaElement>;

    fn name(&self) -> String {
        format!("fdim_endo({},{},L={})", self.fca.domain(), self.fca.arity_bound(), self.support_bound)
    }

    fn star(&self, n: usize, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        x.splice(n, y)
    }

    fn permute(&self, sigma: &FinPerm, x: &Self::Elem) -> Self::Elem {
        x.permute(sigma)
    }

    fn enumerate(&self, budget: usize) -> Enumeration<Self::Elem> {
        enumerate_seqs(&self.base, &self.values, self.support_bound, budget)
    }

    fn tag(&self) -> MergeTag {
        MergeTag::Canonical
    }
}

impl PointedMerge for FdimEndoCm {
    fn one(&self) -> Self::Elem {
        OmegaSeq::new(&self.base)
    }

    fn rank(&self, x: &Self::Elem, bound: usize) -> Option<usize> {
        let r = x.support_bound();
        (r <= bound).then_some(r)
    }
}

impl MMonoid for FdimEndoCm {
    /// `(φ·ψ)ᵢ = φᵢ ∘ ψ = q_k(φᵢ, ψ₀..ψ_{k-1})` with `k` the arity of `φᵢ`.
    fn mul(&self, phi: &Self::Elem, psi: &Self::Elem) -> Self::Elem {
        let idx: std::collections::BTreeSet<usize> = phi.support().chain(psi.support()).collect();
        OmegaSeq::from_entries(
            &self.base,
            idx.into_iter().map(|i| {
                let f = phi.entry(i);
                let args: Vec<FcaElement> = (0..f.arity()).map(|j| psi.entry(j)).collect();
                (i, self.fca.q(&f, &args))
            }),
        )
    }

    fn flavor(&self) -> Flavor {
        Flavor::Cm
    }

    fn dim_oracle(&self, a: &Self::Elem, n: usize, m: usize) -> Option<bool> {
        Some(self.d_omega_exact(a, n, m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finop::FinOp;
    use crate::mmonoid::{dim_predicate, is_extensional, DimBounds, DimMode};

    fn m() -> FdimEndoCm {
        fdim_endo_cm(2, 2, 2).unwrap()
    }

    fn all_inputs(len: usize) -> Vec<Vec<u8>> {
        FinOp::inputs(2, len).collect()
    }

    #[test]
    fn product_is_composition() {
        let m = m();
        let elems = m.enumerate(64).items;
        for phi in &elems {
            for psi in elems.iter().rev().take(20) {
                let prod = m.mul(phi, psi);
                for s in all_inputs(4) {
                    let inner = m.apply(psi, &s, 4);
                    assert_eq!(m.apply(&prod, &s, 4), m.apply(phi, &inner, 4));
                }
            }
        }
        assert_eq!(m.mul(&m.one(), &elems[5]), elems[5]);
    }

    #[test]
    fn coordinates() {
        let m = m();
        for phi in m.enumerate(40).items {
            for n in 0..3 {
                let c = m.coordinate(&phi, n);
                assert_eq!(c.entry(0), phi.entry(n));
                for i in 1..4 {
                    assert_eq!(c.entry(i), m.fca().e(i));
                }
            }
        }
        assert!(is_extensional(&m, 64, 4).is_pass());
    }

    #[test]
    fn d_omega_matches_arity() {
        let m = m();
        let bounds = DimBounds { budget: 400, k_bound: 3 };
        for phi in m.enumerate(24).items {
            for n in 0..3 {
                for mm in 0..3 {
                    let v = dim_predicate(&m, &phi, n, mm, DimMode::DOmega, bounds);
                    assert_eq!(v.is_pass(), m.d_omega_exact(&phi, n, mm), "{phi:?} {n} {mm}: {v:?}");
                    // Failures must come with an enumerated b, not only the oracle.
                    if let Some(w) = v.witness() {
                        assert!(w.get("b").is_some(), "{w:?}");
                    }
                }
            }
        }
    }
}
