// SPDX-License-Identifier: Apache-2.0

//! Constructions between the categories: clone algebras and cm-monoids,
//! PICAs and extensional cm-monoids, abstract clones and clone algebras.
//! Functor laws and adjunctions are checked elementwise on instances.

mod ac_ca;
mod ca_cm;
mod pica_ecm;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::merge::{perms_graded, PointedMerge};
use crate::mmonoid::MMonoid;
use crate::seq::FinPerm;
use crate::verdict::{assignment_grid, Verdict, Witness};

pub use ac_ca::{composite_fdr_check, triangular_ac_ca};
pub use ca_cm::{
    ca_to_cm, cm_functor, cm_to_ca, functoriality_cm, roundtrip_ca, roundtrip_cm, triangular_ca_cm, CaToCm, CmToCa,
};
pub use pica_ecm::{ecm_agrees_with_cm, ecm_to_pica, pica_to_ecm, roundtrip_ecm, roundtrip_pica, EcmToPica, PicaToEcm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TranslateError {
    #[error("argument {index} has rank above 1")]
    RankViolation { index: usize },
    #[error("not a cm-monoid: {0}")]
    FlavorViolation(String),
    #[error("not extensional: {0}")]
    NotExtensional(String),
}

/// Bounds shared by the round-trip and adjunction batteries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TranslateBounds {
    pub budget: usize,
    /// Support bound of enumerated sequences in the derived cm-monoids.
    pub support_bound: usize,
    /// Largest `n` for `qₙ` and `eₙ`.
    pub n_bound: usize,
    /// Largest `n` for `⋆ₙ`, and the rank bound for coordinate maps.
    pub index_bound: usize,
    pub perm_bound: usize,
    /// Tuples per law before switching to seeded sampling.
    pub cap: usize,
    pub seed: u64,
}

impl Default for TranslateBounds {
    fn default() -> Self {
        TranslateBounds { budget: 64, support_bound: 3, n_bound: 3, index_bound: 4, perm_bound: 3, cap: 4096, seed: 0 }
    }
}

/// A structure map together with the names of its ends.
#[derive(Clone)]
pub struct Morphism<A, B> {
    pub source: String,
    pub target: String,
    map: Arc<dyn Fn(&A) -> B + Send + Sync>,
}

impl<A, B> Morphism<A, B> {
    pub fn new(source: impl Into<String>, target: impl Into<String>, map: impl Fn(&A) -> B + Send + Sync + 'static) -> Self {
        Morphism { source: source.into(), target: target.into(), map: Arc::new(map) }
    }

    pub fn apply(&self, a: &A) -> B {
        (self.map)(a)
    }
}

impl<A, B> fmt::Debug for Morphism<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.source, self.target)
    }
}

/// A morphism and the verdict of the battery run on it.
#[derive(Debug, Clone)]
pub struct RoundTrip<A, B> {
    pub morphism: Morphism<A, B>,
    pub verdict: Verdict,
}

/// The two triangular identities, kept apart for reporting.
#[derive(Debug, Clone)]
pub struct Triangular {
    pub first: Verdict,
    pub second: Verdict,
}

impl Triangular {
    pub fn verdict(&self) -> Verdict {
        self.first.clone().and(self.second.clone())
    }
}

/// `â_{n-1}` for `a₀..a_{n-1}` of rank `≤ 1`: `â₀ = a₀`,
/// `âₙ = â_{n-1} ⋆ₙ τ̄ⁿ₀(aₙ)`. The empty hat is `1`.
pub fn hat<P: PointedMerge>(p: &P, args: &[P::Elem]) -> Result<P::Elem, TranslateError> {
    if let Some(index) = args.iter().position(|a| p.rank(a, 1).is_none()) {
        return Err(TranslateError::RankViolation { index });
    }
    Ok(hat_unchecked(p, args))
}

pub(crate) fn hat_unchecked<P: PointedMerge>(p: &P, args: &[P::Elem]) -> P::Elem {
    let Some(first) = args.first() else {
        return p.one();
    };
    let mut acc = first.clone();
    for (n, a) in args.iter().enumerate().skip(1) {
        acc = p.star(n, &acc, &p.permute(&FinPerm::transposition(n, 0), a));
    }
    acc
}

/// L2, `σ̄(x)·y = σ̄(x·y)`, over enumerated pairs and permutations with
/// domain inside `{0..perm_bound-1}`.
pub fn cm_law<M: MMonoid>(m: &M, budget: usize, perm_bound: usize, cap: usize, seed: u64) -> Verdict {
    let elems = m.enumerate(budget);
    let perms = perms_graded(perm_bound);
    let (pairs, full) = assignment_grid(elems.len(), 2, cap, seed);
    let mut count = 0u64;
    for (si, sigma) in perms.iter().enumerate() {
        for t in &pairs {
            count += 1;
            let (x, y) = (&elems.items[t[0]], &elems.items[t[1]]);
            let lhs = m.mul(&m.permute(sigma, x), y);
            let rhs = m.permute(sigma, &m.mul(x, y));
            if lhs != rhs {
                return Verdict::fail(
                    Witness::new(
                        vec![
                            ("sigma".into(), format!("{sigma:?}")),
                            ("x".into(), format!("{x:?}")),
                            ("y".into(), format!("{y:?}")),
                        ],
                        format!("{lhs:?}"),
                        format!("{rhs:?}"),
                    )
                    .with_assignment(vec![si, t[0], t[1]]),
                );
            }
        }
    }
    Verdict::pass(count, full && elems.exhaustive && perm_bound <= 6)
}

/// Preservation of `1`, `⋆ₙ` (`n ≤ index_bound`), `σ̄` and `·` by `f`.
pub fn cm_morphism_check<M: MMonoid, N: MMonoid>(
    m: &M,
    n: &N,
    f: impl Fn(&M::Elem) -> N::Elem + Sync,
    bounds: TranslateBounds,
) -> Verdict {
    let mut count = 1u64;
    let (l, r) = (f(&m.one()), n.one());
    if l != r {
        return mismatch(vec![("x".into(), "1".into())], &l, &r, vec![]);
    }
    let elems = m.enumerate(bounds.budget);
    let items = &elems.items;
    for (si, sigma) in perms_graded(bounds.perm_bound).iter().enumerate() {
        for (xi, x) in items.iter().enumerate() {
            count += 1;
            let (l, r) = (f(&m.permute(sigma, x)), n.permute(sigma, &f(x)));
            if l != r {
                return mismatch(vec![("sigma".into(), format!("{sigma:?}")), ("x".into(), format!("{x:?}"))], &l, &r, vec![si, xi]);
            }
        }
    }
    let (pairs, full) = assignment_grid(items.len(), 2, bounds.cap, bounds.seed);
    for t in &pairs {
        let (x, y) = (&items[t[0]], &items[t[1]]);
        let (fx, fy) = (f(x), f(y));
        count += 1;
        let (l, r) = (f(&m.mul(x, y)), n.mul(&fx, &fy));
        if l != r {
            return mismatch(vec![("op".into(), "mul".into()), ("x".into(), format!("{x:?}")), ("y".into(), format!("{y:?}"))], &l, &r, t.clone());
        }
        for k in 0..=bounds.index_bound {
            count += 1;
            let (l, r) = (f(&m.star(k, x, y)), n.star(k, &fx, &fy));
            if l != r {
                return mismatch(
                    vec![("n".into(), k.to_string()), ("x".into(), format!("{x:?}")), ("y".into(), format!("{y:?}"))],
                    &l,
                    &r,
                    t.clone(),
                );
            }
        }
    }
    Verdict::pass(count, full && elems.exhaustive)
}

pub(crate) fn mismatch<T: fmt::Debug>(bindings: Vec<(String, String)>, lhs: &T, rhs: &T, assignment: Vec<usize>) -> Verdict {
    Verdict::fail(Witness::new(bindings, format!("{lhs:?}"), format!("{rhs:?}")).with_assignment(assignment))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::merge::CanonicalMerge;
    use crate::seq::{BaseSeq, Carrier};

    fn seq_merge() -> CanonicalMerge<u32> {
        let base = BaseSeq::indexed("eps", |k| 100 + k as u32);
        let carrier = Carrier::effective("N", (0..4).collect(), |_| true);
        CanonicalMerge::new(&base, carrier, 3).unwrap()
    }

    #[test]
    fn hat_of_rank_one_elements() {
        let p = seq_merge();
        let a: Vec<_> = [7u32, 8, 9].iter().map(|&v| p.seq([v])).collect();
        assert_eq!(hat(&p, &a).unwrap(), p.seq([7, 8, 9]));
        assert_eq!(hat(&p, &a[..1]).unwrap(), a[0]);
        assert_eq!(hat(&p, &[]).unwrap(), p.one());
    }

    #[test]
    fn hat_of_unit_coordinates_is_one() {
        let p = seq_merge();
        for k in 1..5 {
            let es: Vec<_> = (0..k).map(|i| p.coordinate(&p.one(), i)).collect();
            assert_eq!(hat(&p, &es).unwrap(), p.one());
        }
    }

    #[test]
    fn hat_rejects_rank_two() {
        let p = seq_merge();
        let bad = p.seq([1, 2]);
        assert_eq!(hat(&p, &[p.seq([1]), bad]), Err(TranslateError::RankViolation { index: 1 }));
    }

    #[test]
    fn hat_coordinates() {
        // âₙ[k] = (aₖ)_{<1} for k ≤ n and 1[k] beyond.
        let p = seq_merge();
        let a: Vec<_> = [3u32, 1, 2].iter().map(|&v| p.seq([v])).collect();
        let h = hat(&p, &a).unwrap();
        assert_eq!(p.restrict_lt(&h, 3), h);
        for k in 0..5 {
            let want = a.get(k).map_or_else(|| p.coordinate(&p.one(), k), |ak| p.restrict_lt(ak, 1));
            assert_eq!(p.coordinate(&h, k), want);
        }
    }
}
