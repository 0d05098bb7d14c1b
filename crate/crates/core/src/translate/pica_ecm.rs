// SPDX-License-Identifier: Apache-2.0

//! `(_)^ecm : PICA → ECM` and `(_)^pica : ECM → PICA`.

use std::collections::HashSet;
use std::sync::Arc;

use super::{cm_morphism_check, hat_unchecked, mismatch, ca_to_cm, RoundTrip, TranslateBounds, TranslateError};
use crate::clonealg::CloneAlgebra;
use crate::merge::{coord_base, coord_map_over, MergeAlgebra, MergeTag, PointedMerge};
use crate::mmonoid::{is_extensional, Flavor, MMonoid};
use crate::pica::{pica_from_ca, pica_homomorphism, Pica};
use crate::seq::{BaseSeq, Enumeration, FinPerm, OmegaSeq};
use crate::translate::Morphism;
use crate::verdict::{assignment_grid, Verdict};

/// `A^ecm`: carrier `D`, canonical merge part, `1 = (e₀, e₁, …)` and
/// `b·a = (q(b₀, a), q(b₁, a), …)`.
#[derive(Clone)]
pub struct PicaToEcm<P> {
    pica: P,
}

pub fn pica_to_ecm<P: Pica>(p: P) -> PicaToEcm<P> {
    PicaToEcm { pica: p }
}

impl<P: Pica> PicaToEcm<P> {
    pub fn pica(&self) -> &P {
        &self.pica
    }

    /// `⟨a⟩ = (a, e₁, e₂, …)`.
    pub fn bracket(&self, a: &P::Elem) -> OmegaSeq<P::Elem> {
        OmegaSeq::new(&self.pica.domain_base()).with(0, a.clone())
    }
}

impl<P: Pica> MergeAlgebra for PicaToEcm<P> {
    type Elem = OmegaSeq<P::Elem>;

    fn name(&self) -> String {
        format!("ecm({})", self.pica.name())
    }

    fn star(&self, n: usize, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        x.splice(n, y)
    }

    fn permute(&self, sigma: &FinPerm, x: &Self::Elem) -> Self::Elem {
        x.permute(sigma)
    }

    fn enumerate(&self, budget: usize) -> Enumeration<Self::Elem> {
        self.pica.enumerate_domain(budget)
    }

    fn tag(&self) -> MergeTag {
        MergeTag::Canonical
    }
}

impl<P: Pica> PointedMerge for PicaToEcm<P> {
    fn one(&self) -> Self::Elem {
        OmegaSeq::new(&self.pica.domain_base())
    }

    fn rank(&self, x: &Self::Elem, bound: usize) -> Option<usize> {
        Some(x.support_bound()).filter(|&r| r <= bound)
    }
}

impl<P: Pica> MMonoid for PicaToEcm<P> {
    fn mul(&self, b: &Self::Elem, a: &Self::Elem) -> Self::Elem {
        self.pica.componentwise(b, a)
    }

    fn flavor(&self) -> Flavor {
        Flavor::Cm
    }

    fn enumerate_rank_le1(&self, budget: usize) -> Enumeration<Self::Elem> {
        let values = self.pica.enumerate(budget);
        let mut seen = HashSet::new();
        let items = values.items.iter().map(|a| self.bracket(a)).filter(|x| seen.insert(x.clone())).collect();
        Enumeration::flat(items, budget, values.exhaustive)
    }
}

/// `M^pica`: carrier `M_{|1}`, `eₖ = 1[k]`, `D = M_[]` and
/// `q(a, b_[]) = (a·b)_{<1}`.
#[derive(Clone)]
pub struct EcmToPica<M: MMonoid> {
    m: M,
    coords: Arc<BaseSeq<M::Elem>>,
    rank_bound: usize,
}

/// Requires an extensionality pass on the enumerated fragment; both a
/// failure and an undecided search are rejected.
pub fn ecm_to_pica<M: MMonoid>(m: M, bounds: TranslateBounds) -> Result<EcmToPica<M>, TranslateError> {
    match is_extensional(&m, bounds.budget, bounds.index_bound) {
        v if v.is_pass() => {
            let coords = coord_base(&m);
            Ok(EcmToPica { m, coords, rank_bound: bounds.index_bound })
        }
        Verdict::Fail(w) => Err(TranslateError::NotExtensional(format!("{} and {} share all coordinates", w.lhs, w.rhs))),
        other => Err(TranslateError::NotExtensional(format!("undecided: {other:?}"))),
    }
}

impl<M: MMonoid> EcmToPica<M> {
    pub fn mmonoid(&self) -> &M {
        &self.m
    }

    /// `x_[]` over the domain base.
    pub fn coords_of(&self, x: &M::Elem) -> Option<OmegaSeq<M::Elem>> {
        coord_map_over(&self.m, x, self.rank_bound, &self.coords).ok()
    }
}

impl<M: MMonoid> Pica for EcmToPica<M> {
    type Elem = M::Elem;

    fn name(&self) -> String {
        format!("pica({})", self.m.name())
    }

    fn domain_base(&self) -> Arc<BaseSeq<M::Elem>> {
        self.coords.clone()
    }

    fn e(&self, n: usize) -> M::Elem {
        self.coords.at(n)
    }

    /// `z = b_[]` is inverted by `b = ẑ`.
    fn q_unchecked(&self, a: &M::Elem, z: &OmegaSeq<M::Elem>) -> M::Elem {
        let b = hat_unchecked(&self.m, &z.prefix(z.support_bound().max(1)));
        self.m.restrict_lt(&self.m.mul(a, &b), 1)
    }

    fn enumerate(&self, budget: usize) -> Enumeration<M::Elem> {
        self.m.enumerate_rank_le1(budget)
    }

    fn enumerate_domain(&self, budget: usize) -> Enumeration<OmegaSeq<M::Elem>> {
        let en = self.m.enumerate(budget);
        let items: Vec<_> = en.items.iter().filter_map(|x| self.coords_of(x)).collect();
        let complete = en.exhaustive && items.len() == en.items.len();
        Enumeration::flat(items, budget, complete)
    }
}

/// `x ↦ x_[] : M → (M^pica)^ecm`.
pub fn roundtrip_ecm<M: MMonoid>(
    m: &M,
    bounds: TranslateBounds,
) -> Result<RoundTrip<M::Elem, OmegaSeq<M::Elem>>, TranslateError> {
    let pica = ecm_to_pica(m.clone(), bounds)?;
    let target = pica_to_ecm(pica.clone());
    let elems = m.enumerate(bounds.budget);
    if let Some(x) = elems.items.iter().find(|x| pica.coords_of(x).is_none()) {
        let morphism = Morphism::new(m.name(), target.name(), |_: &M::Elem| unreachable!("not finitely ranked"));
        let verdict = Verdict::Unknown(format!("{x:?} has rank above {}", bounds.index_bound));
        return Ok(RoundTrip { morphism, verdict });
    }
    let f = {
        let pica = pica.clone();
        move |x: &M::Elem| pica.coords_of(x).expect("rank checked")
    };
    let hom = cm_morphism_check(m, &target, &f, bounds);
    let images: HashSet<_> = elems.items.iter().map(&f).collect();
    let injective = if images.len() == elems.len() {
        Verdict::pass(elems.len() as u64, elems.exhaustive)
    } else {
        Verdict::Unknown("x ↦ x_[] not injective on the fragment".into())
    };
    Ok(RoundTrip { morphism: Morphism::new(m.name(), target.name(), f), verdict: hom.and(injective) })
}

/// `a ↦ ⟨a⟩ : A → (A^ecm)^pica`, with inverse `(a, e₁, …) ↦ a`.
pub fn roundtrip_pica<P: Pica>(
    p: &P,
    bounds: TranslateBounds,
) -> Result<RoundTrip<P::Elem, OmegaSeq<P::Elem>>, TranslateError> {
    let ecm = pica_to_ecm(p.clone());
    let target = ecm_to_pica(ecm.clone(), bounds)?;
    let f = {
        let ecm = ecm.clone();
        move |a: &P::Elem| ecm.bracket(a)
    };
    let hom = pica_homomorphism(p, &target, &f, bounds.budget, bounds.n_bound);
    let src = p.enumerate(bounds.budget);
    let mut count = 0u64;
    let mut inv = Verdict::pass(0, true);
    for (i, a) in src.items.iter().enumerate() {
        count += 1;
        let back = f(a).entry(0);
        if back != *a {
            inv = mismatch(vec![("a".into(), format!("{a:?}"))], &back, a, vec![i]);
            break;
        }
    }
    if inv.is_pass() {
        let dst = target.enumerate(bounds.budget);
        for (i, x) in dst.items.iter().enumerate() {
            count += 1;
            let there = f(&x.entry(0));
            if there != *x {
                inv = mismatch(vec![("x".into(), format!("{x:?}"))], &there, x, vec![i]);
                break;
            }
        }
        if inv.is_pass() {
            inv = Verdict::pass(count, src.exhaustive && dst.exhaustive);
        }
    }
    Ok(RoundTrip { morphism: Morphism::new(p.name(), target.name(), f), verdict: hom.and(inv) })
}

/// `pica_from_ca` followed by `(_)^ecm` has the same product as `(_)^cm`.
pub fn ecm_agrees_with_cm<C: CloneAlgebra>(c: &C, bounds: TranslateBounds) -> Verdict {
    let cm = ca_to_cm(c.clone(), bounds.support_bound);
    let ecm = pica_to_ecm(pica_from_ca(c.clone(), bounds.support_bound));
    let elems = cm.enumerate(bounds.budget);
    let (pairs, full) = assignment_grid(elems.len(), 2, bounds.cap, bounds.seed);
    if ecm.one() != cm.one() {
        return mismatch(vec![("x".into(), "1".into())], &ecm.one(), &cm.one(), vec![]);
    }
    for t in &pairs {
        let (b, a) = (&elems.items[t[0]], &elems.items[t[1]]);
        let (l, r) = (ecm.mul(b, a), cm.mul(b, a));
        if l != r {
            return mismatch(vec![("b".into(), format!("{b:?}")), ("a".into(), format!("{a:?}"))], &l, &r, t.clone());
        }
    }
    Verdict::pass(pairs.len() as u64 + 1, full && elems.exhaustive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clonealg::{fca, projection_algebra};
    use crate::mmonoid::{fdim_endo_cm, oplus};
    use crate::pica::{quantale_pica, FiniteQuantale};
    use crate::seq::perms_upto;

    #[test]
    fn ecm_unit_and_right_identity() {
        let e = pica_to_ecm(quantale_pica(FiniteQuantale::boolean(), 2));
        for x in e.enumerate(100).items {
            assert_eq!(e.mul(&x, &e.one()), x);
            assert_eq!(e.mul(&e.one(), &x), x);
        }
    }

    #[test]
    fn quantale_permutations() {
        let p = quantale_pica(FiniteQuantale::boolean(), 2);
        let e = pica_to_ecm(p.clone());
        for sigma in perms_upto(2).unwrap() {
            let s1 = e.permute(&sigma, &e.one());
            for m in e.enumerate(1000).items {
                assert_eq!(e.mul(&s1, &m), e.permute(&sigma, &m));
                let rows = OmegaSeq::from_entries(
                    &p.domain_base(),
                    (0..2).map(|i| (i, m.entry(i).permute(&sigma.inverse()))),
                );
                assert_eq!(e.mul(&m, &s1), rows);
            }
        }
    }

    #[test]
    fn ecm_matches_cm() {
        let b = TranslateBounds { budget: 300, cap: 50_000, ..TranslateBounds::default() };
        assert!(ecm_agrees_with_cm(&projection_algebra(5), b).is_exhaustive());
        assert!(ecm_agrees_with_cm(&fca(2, 2).unwrap(), TranslateBounds { support_bound: 2, ..b }).is_pass());
    }

    #[test]
    fn pica_of_fdim() {
        let m = fdim_endo_cm(2, 2, 2).unwrap();
        let p = ecm_to_pica(m.clone(), TranslateBounds::default()).unwrap();
        let z = p.enumerate_domain(40).items;
        for a in p.enumerate(40).items {
            assert_eq!(p.q(&a, &OmegaSeq::new(&p.domain_base())).unwrap(), a);
        }
        for k in 0..3 {
            for zz in &z {
                assert_eq!(p.q(&p.e(k), zz).unwrap(), zz.entry(k));
            }
        }
    }

    #[test]
    fn oplus_rejected() {
        let m = oplus(fdim_endo_cm(2, 1, 1).unwrap());
        assert!(matches!(ecm_to_pica(m, TranslateBounds::default()), Err(TranslateError::NotExtensional(_))));
    }

    #[test]
    fn pica_roundtrips() {
        let b = TranslateBounds { budget: 200, ..TranslateBounds::default() };
        let rt = roundtrip_pica(&quantale_pica(FiniteQuantale::boolean(), 2), b).unwrap();
        assert!(rt.verdict.is_pass(), "{:?}", rt.verdict);
        let rt = roundtrip_ecm(&fdim_endo_cm(2, 1, 2).unwrap(), b).unwrap();
        assert!(rt.verdict.is_pass(), "{:?}", rt.verdict);
    }
}
