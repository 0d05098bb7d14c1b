// SPDX-License-Identifier: Apache-2.0

//! Partial infinitary clone algebras: `q(a, z)` defined for `z` in a trace
//! `D`, represented as the finitely supported sequences over a base.

mod quantale;

use std::sync::Arc;

use thiserror::Error;

use crate::clonealg::CloneAlgebra;
use crate::seq::{enumerate_seqs, BaseSeq, Element, Enumeration, OmegaSeq};
use crate::verdict::{Verdict, Witness};

pub use quantale::{quantale_pica, FiniteQuantale, QuantalePica};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PicaError {
    #[error("sequence over `{got}` is outside the domain over `{expected}`")]
    OutsideDomain { expected: String, got: String },
    #[error("not a quantale: {0}")]
    NotAQuantale(String),
}

pub trait Pica: Clone + Send + Sync + 'static {
    type Elem: Element;

    fn name(&self) -> String;

    /// `D` is the basic trace of this sequence; it must be `(e₀, e₁, …)`.
    fn domain_base(&self) -> Arc<BaseSeq<Self::Elem>>;

    fn e(&self, n: usize) -> Self::Elem;

    /// `q(a, z)` for `z ∈ D`, without the domain check.
    fn q_unchecked(&self, a: &Self::Elem, z: &OmegaSeq<Self::Elem>) -> Self::Elem;

    fn enumerate(&self, budget: usize) -> Enumeration<Self::Elem>;

    /// A graded fragment of `D`.
    fn enumerate_domain(&self, budget: usize) -> Enumeration<OmegaSeq<Self::Elem>>;

    /// Whether closure of `D` under componentwise images is proved for the
    /// instance rather than sampled.
    fn p3_certified(&self) -> bool {
        false
    }

    fn q(&self, a: &Self::Elem, z: &OmegaSeq<Self::Elem>) -> Result<Self::Elem, PicaError> {
        let base = self.domain_base();
        if z.base().id() != base.id() {
            return Err(PicaError::OutsideDomain { expected: base.id().to_string(), got: z.base().id().to_string() });
        }
        Ok(self.q_unchecked(a, z))
    }

    /// `(q(y₀, z), q(y₁, z), …)`. Outside both supports the entry is
    /// `q(eᵢ, z) = zᵢ = eᵢ`, so only supported indices are evaluated.
    fn componentwise(&self, y: &OmegaSeq<Self::Elem>, z: &OmegaSeq<Self::Elem>) -> OmegaSeq<Self::Elem> {
        let idx: std::collections::BTreeSet<usize> = y.support().chain(z.support()).collect();
        OmegaSeq::from_entries(&self.domain_base(), idx.into_iter().map(|i| (i, self.q_unchecked(&y.entry(i), z))))
    }
}

/// The PICA of a clone algebra: `D = [(e₀, e₁, …)]`, `q(a, z) = q_k(a, z₀..z_{k-1})`
/// with `k` the support bound of `z`.
#[derive(Clone)]
pub struct PicaFromCa<C: CloneAlgebra> {
    ca: C,
    base: Arc<BaseSeq<C::Elem>>,
    support_bound: usize,
}

pub fn pica_from_ca<C: CloneAlgebra>(c: C, support_bound: usize) -> PicaFromCa<C> {
    let g = c.clone();
    let base = BaseSeq::indexed(format!("e:{}", c.name()), move |k| g.e(k));
    PicaFromCa { ca: c, base, support_bound }
}

impl<C: CloneAlgebra> PicaFromCa<C> {
    pub fn clone_algebra(&self) -> &C {
        &self.ca
    }

    pub fn seq(&self, prefix: impl IntoIterator<Item = C::Elem>) -> OmegaSeq<C::Elem> {
        OmegaSeq::from_prefix(&self.base, prefix)
    }
}

impl<C: CloneAlgebra> Pica for PicaFromCa<C> {
    type Elem = C::Elem;

    fn name(&self) -> String {
        format!("pica({})", self.ca.name())
    }

    fn domain_base(&self) -> Arc<BaseSeq<C::Elem>> {
        self.base.clone()
    }

    fn e(&self, n: usize) -> C::Elem {
        self.ca.e(n)
    }

    fn q_unchecked(&self, a: &C::Elem, z: &OmegaSeq<C::Elem>) -> C::Elem {
        self.ca.q(a, &z.prefix(z.support_bound()))
    }

    fn enumerate(&self, budget: usize) -> Enumeration<C::Elem> {
        self.ca.enumerate(budget)
    }

    fn enumerate_domain(&self, budget: usize) -> Enumeration<OmegaSeq<C::Elem>> {
        let values = self.ca.enumerate(budget);
        let mut en = enumerate_seqs(&self.base, &values.items, self.support_bound, budget);
        en.exhaustive &= values.exhaustive;
        en
    }

    /// For `i` past both supports, `q(eᵢ, z) = zᵢ = eᵢ`.
    fn p3_certified(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone)]
pub struct OmegaFinDim {
    /// Least `n ≤ bound` for which the identity held on the fragment.
    pub n: Option<usize>,
    pub verdict: Verdict,
}

/// Searches `n ≤ bound` with `q(a, z[e₀..e_{n-1}]) = a` for every enumerated `z ∈ D`.
pub fn omega_findim_pica<P: Pica>(p: &P, a: &P::Elem, bound: usize, budget: usize) -> OmegaFinDim {
    let zs = p.enumerate_domain(budget);
    let mut count = 0u64;
    let mut last_witness = None;
    for n in 0..=bound {
        let es: Vec<P::Elem> = (0..n).map(|i| p.e(i)).collect();
        let bad = zs.items.iter().enumerate().find_map(|(zi, z)| {
            let r = p.q_unchecked(a, &z.update(&es));
            (r != *a).then(|| (zi, z.clone(), r))
        });
        count += zs.len() as u64;
        match bad {
            None => return OmegaFinDim { n: Some(n), verdict: Verdict::pass(count, zs.exhaustive) },
            Some((zi, z, r)) => {
                last_witness = Some(
                    Witness::new(
                        vec![("n".into(), n.to_string()), ("z".into(), format!("{z:?}"))],
                        format!("{r:?}"),
                        format!("{a:?}"),
                    )
                    .with_assignment(vec![n, zi]),
                )
            }
        }
    }
    let note = last_witness.map_or(String::new(), |w| format!("; at n={bound}: z={}", w.get("z").unwrap_or("?")));
    OmegaFinDim { n: None, verdict: Verdict::Unknown(format!("no n ≤ {bound} found{note}")) }
}

/// `f(q(a, s)) = q(f(a), f^ω(s))` on enumerated `a` and `s ∈ D`, plus `f(eₙ) = eₙ`.
pub fn pica_homomorphism<A: Pica, B: Pica>(
    a: &A,
    b: &B,
    f: impl Fn(&A::Elem) -> B::Elem,
    budget: usize,
    e_bound: usize,
) -> Verdict {
    let mut count = 0u64;
    for n in 0..=e_bound {
        count += 1;
        let (l, r) = (f(&a.e(n)), b.e(n));
        if l != r {
            return Verdict::fail(Witness::new(vec![("n".into(), n.to_string())], format!("{l:?}"), format!("{r:?}")));
        }
    }
    let elems = a.enumerate(budget);
    let zs = a.enumerate_domain(budget);
    let bbase = b.domain_base();
    for (ai, x) in elems.items.iter().enumerate() {
        for (zi, z) in zs.items.iter().enumerate() {
            count += 1;
            let lhs = f(&a.q_unchecked(x, z));
            let rhs = b.q_unchecked(&f(x), &z.map_onto(&bbase, &f));
            if lhs != rhs {
                return Verdict::fail(
                    Witness::new(
                        vec![("a".into(), format!("{x:?}")), ("s".into(), format!("{z:?}"))],
                        format!("{lhs:?}"),
                        format!("{rhs:?}"),
                    )
                    .with_assignment(vec![ai, zi]),
                );
            }
        }
    }
    Verdict::pass(count, elems.exhaustive && zs.exhaustive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clonealg::{fca, projection_algebra};

    #[test]
    fn projection_pica_identities() {
        let p = pica_from_ca(projection_algebra(6), 3);
        let zs = p.enumerate_domain(400).items;
        let one = p.seq([]);
        for a in 0..7u64 {
            assert_eq!(p.q(&a, &one).unwrap(), a);
            for z in &zs {
                if (a as usize) < 4 {
                    assert_eq!(p.q(&p.e(a as usize), z).unwrap(), z.entry(a as usize));
                }
                for y in zs.iter().take(30) {
                    let lhs = p.q(&p.q(&a, y).unwrap(), z).unwrap();
                    let rhs = p.q(&a, &p.componentwise(y, z)).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn outside_domain() {
        let p = pica_from_ca(projection_algebra(4), 2);
        let other = BaseSeq::constant("zero", 0u64);
        assert!(matches!(p.q(&1, &OmegaSeq::new(&other)), Err(PicaError::OutsideDomain { .. })));
    }

    #[test]
    fn padding_invariance() {
        // q over z with support below k agrees with q_{k'} for k' ≥ k.
        let f = fca(2, 2).unwrap();
        let p = pica_from_ca(f.clone(), 2);
        for a in f.enumerate(16).items {
            for z in p.enumerate_domain(64).items {
                let k = z.support_bound();
                for extra in 0..3 {
                    assert_eq!(f.q(&a, &z.prefix(k + extra)), p.q(&a, &z).unwrap());
                }
            }
        }
    }

    #[test]
    fn omega_findim_on_fca() {
        let f = fca(2, 2).unwrap();
        let p = pica_from_ca(f.clone(), 3);
        for a in f.enumerate(16).items {
            let r = omega_findim_pica(&p, &a, 4, 512);
            assert_eq!(r.n, Some(a.arity()), "{a:?}");
        }
        for i in 0..3 {
            assert_eq!(omega_findim_pica(&p, &p.e(i), 4, 512).n, Some(i + 1));
        }
    }
}
