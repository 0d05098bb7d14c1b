// SPDX-License-Identifier: Apache-2.0

//! `(_)^cm : CA → CM` and `(_)^ca : CM → CA`, their action on morphisms,
//! the isomorphisms `a ↦ ⟨a⟩` and `x ↦ x_[]`, and the adjunction.

use std::collections::HashSet;
use std::sync::Arc;

use super::{cm_law, cm_morphism_check, hat_unchecked, mismatch, RoundTrip, TranslateBounds, TranslateError, Triangular};
use crate::clonealg::{is_homomorphism, CloneAlgebra};
use crate::merge::{coord_map_over, MergeAlgebra, MergeTag, PointedMerge};
use crate::mmonoid::{Flavor, MMonoid};
use crate::seq::{enumerate_seqs, BaseSeq, Enumeration, FinPerm, OmegaSeq};
use crate::translate::Morphism;
use crate::verdict::{assignment_grid, Verdict};

/// `A^cm`: the basic trace of `(e₀, e₁, …)` with
/// `b·a = (q_k(b₀, a₀..a_{k-1}), q_k(b₁, a₀..a_{k-1}), …)`.
#[derive(Clone)]
pub struct CaToCm<C: CloneAlgebra> {
    ca: C,
    base: Arc<BaseSeq<C::Elem>>,
    support_bound: usize,
}

/// `support_bound` bounds the enumerated fragment only.
pub fn ca_to_cm<C: CloneAlgebra>(c: C, support_bound: usize) -> CaToCm<C> {
    let g = c.clone();
    let base = BaseSeq::indexed(format!("e:{}", c.name()), move |k| g.e(k));
    CaToCm { ca: c, base, support_bound }
}

impl<C: CloneAlgebra> CaToCm<C> {
    pub fn clone_algebra(&self) -> &C {
        &self.ca
    }

    pub fn base(&self) -> &Arc<BaseSeq<C::Elem>> {
        &self.base
    }

    pub fn support_bound(&self) -> usize {
        self.support_bound
    }

    pub fn seq(&self, prefix: impl IntoIterator<Item = C::Elem>) -> OmegaSeq<C::Elem> {
        OmegaSeq::from_prefix(&self.base, prefix)
    }

    /// `⟨a⟩ = (a, e₁, e₂, …)`.
    pub fn bracket(&self, a: &C::Elem) -> OmegaSeq<C::Elem> {
        OmegaSeq::new(&self.base).with(0, a.clone())
    }
}

impl<C: CloneAlgebra> MergeAlgebra for CaToCm<C> {
    type Elem = OmegaSeq<C::Elem>;

    fn name(&self) -> String {
        format!("cm({})", self.ca.name())
    }

    fn star(&self, n: usize, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        x.splice(n, y)
    }

    fn permute(&self, sigma: &FinPerm, x: &Self::Elem) -> Self::Elem {
        x.permute(sigma)
    }

    fn enumerate(&self, budget: usize) -> Enumeration<Self::Elem> {
        let values = self.ca.enumerate(budget);
        let mut en = enumerate_seqs(&self.base, &values.items, self.support_bound, budget);
        en.exhaustive &= values.exhaustive;
        en
    }

    fn tag(&self) -> MergeTag {
        MergeTag::Canonical
    }
}

impl<C: CloneAlgebra> PointedMerge for CaToCm<C> {
    fn one(&self) -> Self::Elem {
        OmegaSeq::new(&self.base)
    }

    /// `1` is the base itself, so the rank is the support bound.
    fn rank(&self, x: &Self::Elem, bound: usize) -> Option<usize> {
        Some(x.support_bound()).filter(|&r| r <= bound)
    }
}

impl<C: CloneAlgebra> MMonoid for CaToCm<C> {
    fn mul(&self, b: &Self::Elem, a: &Self::Elem) -> Self::Elem {
        let k = a.support_bound();
        let args = a.prefix(k);
        // Past both supports bᵢ = eᵢ and i ≥ k, so q_k(eᵢ, a⃗) = eᵢ.
        let idx: std::collections::BTreeSet<usize> = b.support().chain(a.support()).collect();
        OmegaSeq::from_entries(&self.base, idx.into_iter().map(|i| (i, self.ca.q(&b.entry(i), &args))))
    }

    fn flavor(&self) -> Flavor {
        Flavor::Cm
    }

    fn enumerate_rank_le1(&self, budget: usize) -> Enumeration<Self::Elem> {
        let values = self.ca.enumerate(budget);
        let mut seen = HashSet::new();
        let items = values.items.iter().map(|a| self.bracket(a)).filter(|x| seen.insert(x.clone())).collect();
        Enumeration::flat(items, budget, values.exhaustive)
    }
}

/// `f^cm(a) = (f(a₀), …, f(a_{n-1}), eₙ, …)`.
pub fn cm_functor<C: CloneAlgebra, D: CloneAlgebra>(
    src: &CaToCm<C>,
    dst: &CaToCm<D>,
    f: impl Fn(&C::Elem) -> D::Elem + Send + Sync + 'static,
) -> Morphism<OmegaSeq<C::Elem>, OmegaSeq<D::Elem>> {
    let base = dst.base.clone();
    Morphism::new(src.name(), dst.name(), move |a: &OmegaSeq<C::Elem>| a.map_onto(&base, &f))
}

/// `M^ca`: the rank-`≤ 1` elements, `eₙ = 1[n]`,
/// `qₙ(a, b⃗) = (a · b̂_{n-1})_{<1}`.
#[derive(Clone)]
pub struct CmToCa<M: MMonoid> {
    m: M,
    coords: Arc<BaseSeq<M::Elem>>,
}

/// Runs L2 on the enumerated fragment first; a failure is a `FlavorViolation`.
pub fn cm_to_ca<M: MMonoid>(m: M, bounds: TranslateBounds) -> Result<CmToCa<M>, TranslateError> {
    match cm_law(&m, bounds.budget, bounds.perm_bound, bounds.cap, bounds.seed) {
        Verdict::Fail(w) => Err(TranslateError::FlavorViolation(format!("L2 fails: {} != {}", w.lhs, w.rhs))),
        _ => Ok(CmToCa::assume(m)),
    }
}

impl<M: MMonoid> CmToCa<M> {
    /// Skips the L2 check; for inputs that are cm-monoids by construction.
    pub fn assume(m: M) -> Self {
        let coords = crate::merge::coord_base(&m);
        CmToCa { m, coords }
    }

    pub fn mmonoid(&self) -> &M {
        &self.m
    }
}

impl<M: MMonoid> CloneAlgebra for CmToCa<M> {
    type Elem = M::Elem;

    fn name(&self) -> String {
        format!("ca({})", self.m.name())
    }

    fn q(&self, a: &M::Elem, args: &[M::Elem]) -> M::Elem {
        self.m.restrict_lt(&self.m.mul(a, &hat_unchecked(&self.m, args)), 1)
    }

    fn e(&self, n: usize) -> M::Elem {
        self.coords.at(n)
    }

    fn enumerate(&self, budget: usize) -> Enumeration<M::Elem> {
        self.m.enumerate_rank_le1(budget)
    }
}

/// `a ↦ ⟨a⟩ : C → (C^cm)^ca`, checked for `eₙ`, `qₙ` and bijectivity on
/// the enumerated fragments.
pub fn roundtrip_ca<C: CloneAlgebra>(c: &C, bounds: TranslateBounds) -> RoundTrip<C::Elem, OmegaSeq<C::Elem>> {
    let cm = ca_to_cm(c.clone(), bounds.support_bound);
    let target = CmToCa::assume(cm.clone());
    let f = {
        let cm = cm.clone();
        move |a: &C::Elem| cm.bracket(a)
    };
    let hom = is_homomorphism(c, &target, &f, bounds.budget, bounds.n_bound, bounds.cap, bounds.seed);
    let src = c.enumerate(bounds.budget);
    let dst = target.enumerate(bounds.budget);
    let images: HashSet<OmegaSeq<C::Elem>> = src.items.iter().map(&f).collect();
    let mut count = src.len() as u64;
    let bij = if images.len() != src.len() {
        non_injective(&src.items, &f)
    } else {
        let preimages: HashSet<&C::Elem> = src.items.iter().collect();
        let stray = dst.items.iter().enumerate().find(|(_, x)| !preimages.contains(&x.entry(0)) || f(&x.entry(0)) != **x);
        count += dst.len() as u64;
        match stray {
            Some((i, x)) => mismatch(vec![("x".into(), format!("{x:?}"))], x, &f(&x.entry(0)), vec![i]),
            None => Verdict::pass(count, src.exhaustive && dst.exhaustive),
        }
    };
    RoundTrip { morphism: Morphism::new(c.name(), target.name(), f), verdict: hom.and(bij) }
}

fn non_injective<A: crate::seq::Element, B: crate::seq::Element>(items: &[A], f: impl Fn(&A) -> B) -> Verdict {
    let mut seen = std::collections::HashMap::new();
    for (i, a) in items.iter().enumerate() {
        if let Some(&j) = seen.get(&f(a)) {
            return mismatch(vec![("a".into(), format!("{a:?}")), ("b".into(), format!("{:?}", items[j]))], &f(a), &f(&items[j]), vec![i, j]);
        }
        seen.insert(f(a), i);
    }
    Verdict::pass(items.len() as u64, false)
}

/// `g(t) = t̂`, inverse of `x ↦ x_[]` on finitely ranked `x`.
fn from_coords<M: MMonoid>(m: &M, t: &OmegaSeq<M::Elem>) -> M::Elem {
    hat_unchecked(m, &t.prefix(t.support_bound().max(1)))
}

/// `x ↦ x_[] : M → (M^ca)^cm`, checked as a cm-morphism and a bijection.
/// Elements of rank above `index_bound` make the verdict `Unknown`.
pub fn roundtrip_cm<M: MMonoid>(
    m: &M,
    bounds: TranslateBounds,
) -> Result<RoundTrip<M::Elem, OmegaSeq<M::Elem>>, TranslateError> {
    let ca = cm_to_ca(m.clone(), bounds)?;
    let target = ca_to_cm(ca, bounds.support_bound);
    let elems = m.enumerate(bounds.budget);
    if let Some(x) = elems.items.iter().find(|x| m.rank(x, bounds.index_bound).is_none()) {
        let morphism = Morphism::new(m.name(), target.name(), |_: &M::Elem| unreachable!("not finitely ranked"));
        let verdict = Verdict::Unknown(format!("{x:?} has rank above {}", bounds.index_bound));
        return Ok(RoundTrip { morphism, verdict });
    }
    let f = {
        let (m, base, bound) = (m.clone(), target.base().clone(), bounds.index_bound);
        move |x: &M::Elem| coord_map_over(&m, x, bound, &base).expect("rank checked")
    };
    let hom = cm_morphism_check(m, &target, &f, bounds);
    let dst = target.enumerate(bounds.budget);
    let mut count = 0u64;
    let mut bij = non_injective(&elems.items, &f);
    for (i, x) in elems.items.iter().enumerate() {
        count += 1;
        let back = from_coords(m, &f(x));
        if back != *x {
            bij = mismatch(vec![("x".into(), format!("{x:?}"))], &back, x, vec![i]);
            break;
        }
    }
    if bij.is_pass() {
        for (i, t) in dst.items.iter().enumerate() {
            count += 1;
            let there = f(&from_coords(m, t));
            if there != *t {
                bij = mismatch(vec![("t".into(), format!("{t:?}"))], &there, t, vec![i]);
                break;
            }
        }
        if bij.is_pass() {
            bij = Verdict::pass(count, elems.exhaustive && dst.exhaustive);
        }
    }
    Ok(RoundTrip { morphism: Morphism::new(m.name(), target.name(), f), verdict: hom.and(bij) })
}

/// Both triangular identities of `(_)^cm ⊣ (_)^ca`, with unit `⟨·⟩` and
/// counit `g = (x ↦ x_[])⁻¹`:
/// `g_M ∘ ⟨·⟩_{M^ca} = id` on `M^ca` and `g_{A^cm} ∘ (⟨·⟩_A)^cm = id` on `A^cm`.
pub fn triangular_ca_cm<C: CloneAlgebra, M: MMonoid>(
    a: &C,
    m: &M,
    bounds: TranslateBounds,
) -> Result<Triangular, TranslateError> {
    let mca = cm_to_ca(m.clone(), bounds)?;
    let mcacm = ca_to_cm(mca.clone(), bounds.support_bound);
    let xs = mca.enumerate(bounds.budget);
    let mut first = Verdict::pass(xs.len() as u64, xs.exhaustive);
    for (i, x) in xs.items.iter().enumerate() {
        let back = from_coords(m, &mcacm.bracket(x));
        if back != *x {
            first = mismatch(vec![("x".into(), format!("{x:?}"))], &back, x, vec![i]);
            break;
        }
    }
    let acm = ca_to_cm(a.clone(), bounds.support_bound);
    let acmca = CmToCa::assume(acm.clone());
    let acmcacm = ca_to_cm(acmca, bounds.support_bound);
    let unit_cm = cm_functor(&acm, &acmcacm, {
        let acm = acm.clone();
        move |x: &C::Elem| acm.bracket(x)
    });
    let ys = acm.enumerate(bounds.budget);
    let mut second = Verdict::pass(ys.len() as u64, ys.exhaustive);
    for (i, y) in ys.items.iter().enumerate() {
        let back = from_coords(&acm, &unit_cm.apply(y));
        if back != *y {
            second = mismatch(vec![("a".into(), format!("{y:?}"))], &back, y, vec![i]);
            break;
        }
    }
    Ok(Triangular { first, second })
}

/// `(g∘f)^cm = g^cm ∘ f^cm` on `A^cm`, plus `f^cm` being a cm-morphism.
pub fn functoriality_cm<A, B, C>(
    a: &A,
    b: &B,
    c: &C,
    f: impl Fn(&A::Elem) -> B::Elem + Clone + Send + Sync + 'static,
    g: impl Fn(&B::Elem) -> C::Elem + Clone + Send + Sync + 'static,
    bounds: TranslateBounds,
) -> Verdict
where
    A: CloneAlgebra,
    B: CloneAlgebra,
    C: CloneAlgebra,
{
    let (acm, bcm, ccm) =
        (ca_to_cm(a.clone(), bounds.support_bound), ca_to_cm(b.clone(), bounds.support_bound), ca_to_cm(c.clone(), bounds.support_bound));
    let fcm = cm_functor(&acm, &bcm, f.clone());
    let gcm = cm_functor(&bcm, &ccm, g.clone());
    let gfcm = cm_functor(&acm, &ccm, move |x: &A::Elem| g(&f(x)));
    let elems = acm.enumerate(bounds.budget);
    let (singles, _) = assignment_grid(elems.len(), 1, bounds.cap, bounds.seed);
    for t in &singles {
        let x = &elems.items[t[0]];
        let (l, r) = (gfcm.apply(x), gcm.apply(&fcm.apply(x)));
        if l != r {
            return mismatch(vec![("a".into(), format!("{x:?}"))], &l, &r, t.clone());
        }
    }
    let fcm2 = fcm.clone();
    let comp = Verdict::pass(singles.len() as u64, elems.exhaustive && singles.len() == elems.len());
    comp.and(cm_morphism_check(&acm, &bcm, move |x| fcm2.apply(x), bounds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clonealg::{fca, projection_algebra, FcaElement};
    use crate::finop::FinOp;
    use crate::mmonoid::{degenerate_mmonoid, fdim_endo_cm, product_mmonoid, FiniteMonoid, MonoidFamily};

    #[test]
    fn product_on_projection_algebra() {
        let cm = ca_to_cm(projection_algebra(9), 3);
        let b = cm.seq([5, 1, 2]);
        let a = cm.seq([7, 9]);
        // Oracle: q₂(5,7,9) = 5 since 5 ≥ 2; q₂(e₁,7,9) = 9; e₂ stays.
        assert_eq!(cm.mul(&b, &a), cm.seq([5, 9]));
        for x in cm.enumerate(100).items {
            assert_eq!(cm.mul(&x, &cm.one()), x);
            assert_eq!(cm.mul(&cm.one(), &x), x);
        }
    }

    #[test]
    fn product_independent_of_padding() {
        let f = fca(2, 2).unwrap();
        let cm = ca_to_cm(f.clone(), 2);
        for b in cm.enumerate(60).items {
            for a in cm.enumerate(60).items {
                let k = a.support_bound();
                let want = cm.mul(&b, &a);
                for extra in 0..2 {
                    let args = a.prefix(k + extra);
                    for i in 0..4 {
                        assert_eq!(want.entry(i), f.q(&b.entry(i), &args));
                    }
                }
            }
        }
    }

    #[test]
    fn ca_of_cm_laws() {
        let cm = ca_to_cm(projection_algebra(6), 3);
        let ca = cm_to_ca(cm.clone(), TranslateBounds::default()).unwrap();
        let elems = ca.enumerate(64).items;
        assert_eq!(elems.len(), 7);
        for a in &elems {
            let es: Vec<_> = (0..3).map(|i| ca.e(i)).collect();
            assert_eq!(ca.q(a, &es), *a);
            for k in 0..3 {
                assert_eq!(ca.q(&ca.e(k), &elems[..3]), elems[k]);
            }
        }
    }

    #[test]
    fn product_family_is_not_cm() {
        let p = product_mmonoid(MonoidFamily::constant(FiniteMonoid::cyclic(2)), 3).unwrap();
        assert!(matches!(cm_to_ca(p, TranslateBounds::default()), Err(TranslateError::FlavorViolation(_))));
    }

    #[test]
    fn roundtrips() {
        let b = TranslateBounds { budget: 400, ..TranslateBounds::default() };
        let rt = roundtrip_ca(&projection_algebra(6), b);
        assert!(rt.verdict.is_exhaustive(), "{:?}", rt.verdict);
        let rt = roundtrip_ca(&fca(2, 2).unwrap(), TranslateBounds { n_bound: 2, ..b });
        assert!(rt.verdict.is_exhaustive(), "{:?}", rt.verdict);
        let m = ca_to_cm(projection_algebra(4), 2);
        let rt = roundtrip_cm(&m, b).unwrap();
        assert!(rt.verdict.is_pass(), "{:?}", rt.verdict);
        assert_eq!(rt.morphism.apply(&m.one()), OmegaSeq::new(&ca_to_cm(CmToCa::assume(m.clone()), 2).base));
    }

    #[test]
    fn triangles() {
        let b = TranslateBounds { budget: 200, ..TranslateBounds::default() };
        let p = projection_algebra(5);
        let t = triangular_ca_cm(&p, &ca_to_cm(p.clone(), 3), b).unwrap();
        assert!(t.verdict().is_pass(), "{t:?}");
        let d = degenerate_mmonoid(FiniteMonoid::new("one", 1, vec![0], 0).unwrap());
        let t = triangular_ca_cm(&p, &d, b).unwrap();
        assert!(t.first.is_exhaustive(), "{t:?}");
    }

    #[test]
    fn fdim_recovers_fca() {
        let m = fdim_endo_cm(2, 2, 2).unwrap();
        let ca = cm_to_ca(m.clone(), TranslateBounds::default()).unwrap();
        let f = m.fca().clone();
        let bracket = |a: &FcaElement| OmegaSeq::new(m.base()).with(0, a.clone());
        let elems = f.enumerate(16).items;
        for a in &elems {
            for b0 in &elems {
                for b1 in elems.iter().step_by(3) {
                    let got = ca.q(&bracket(a), &[bracket(b0), bracket(b1)]);
                    assert_eq!(got, bracket(&f.q(a, &[b0.clone(), b1.clone()])));
                }
            }
        }
    }

    #[test]
    fn functoriality_under_negation() {
        let f = fca(2, 2).unwrap();
        // Base entries such as e₂ have arity 3, so results live in a wider FCA.
        let g = fca(2, 4).unwrap();
        let neg = move |a: &FcaElement| {
            let op = a.op();
            let table = FinOp::inputs(2, op.arity()).map(|row| {
                let flipped: Vec<u8> = row.iter().map(|v| 1 - v).collect();
                1 - op.eval(&flipped)
            });
            g.from_table(op.arity(), table.collect()).unwrap_or_else(|e| panic!("{a:?}: {e}"))
        };
        let b = TranslateBounds { budget: 100, cap: 2000, ..TranslateBounds::default() };
        let v = functoriality_cm(&f, &f, &f, neg.clone(), neg, b);
        assert!(v.is_pass(), "{v:?}");
    }
}
