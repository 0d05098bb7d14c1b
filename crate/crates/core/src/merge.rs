// SPDX-License-Identifier: Apache-2.0

//! Merge algebras: splice operations `⋆ₙ` and permutation actions `σ̄`,
//! canonical instances on basic traces, degenerate instances, and the
//! pointed vocabulary (restrictions, rank, coordinates, abstract trace).

use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::seq::{enumerate_seqs, perms_upto, BaseSeq, Carrier, Element, Enumeration, FinPerm, OmegaSeq};
use crate::verdict::{Verdict, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MergeError {
    #[error("base entry {index} is not in carrier `{carrier}`")]
    CarrierMismatch { index: usize, carrier: String },
    #[error("coordinate sequence not representable: rank unknown below {bound}")]
    NotRepresentable { bound: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MergeTag {
    Canonical,
    Degenerate,
    Derived,
}

/// A merge algebra over an effective carrier.
pub trait MergeAlgebra: Clone + Send + Sync + 'static {
    type Elem: Element;

    fn name(&self) -> String;

    /// `x ⋆ₙ y`.
    fn star(&self, n: usize, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    /// `σ̄(x)`.
    fn permute(&self, sigma: &FinPerm, x: &Self::Elem) -> Self::Elem;

    /// Deterministic, graded listing of (a fragment of) the carrier.
    fn enumerate(&self, budget: usize) -> Enumeration<Self::Elem>;

    fn tag(&self) -> MergeTag {
        MergeTag::Derived
    }

    /// Random element for sampled checks on carriers without a useful
    /// enumeration order; `None` means "sample from the enumeration".
    fn sample(&self, _rng: &mut ChaCha8Rng) -> Option<Self::Elem> {
        None
    }
}

/// A merge algebra with a distinguished coordinator `1`.
pub trait PointedMerge: MergeAlgebra {
    fn one(&self) -> Self::Elem;

    /// `x_{<n} = x ⋆ₙ 1`.
    fn restrict_lt(&self, x: &Self::Elem, n: usize) -> Self::Elem {
        self.star(n, x, &self.one())
    }

    /// `x_{≥n} = 1 ⋆ₙ x`.
    fn restrict_ge(&self, x: &Self::Elem, n: usize) -> Self::Elem {
        self.star(n, &self.one(), x)
    }

    /// Least `n ≤ bound` with `x_{<n} = x`.
    fn rank(&self, x: &Self::Elem, bound: usize) -> Option<usize> {
        (0..=bound).find(|&n| self.restrict_lt(x, n) == *x)
    }

    /// Some `K ≤ bound` with `x[n] = 1[n]` for every `n ≥ K`, when provable.
    /// The default uses the rank: `x = x ⋆ᵣ 1` forces the tail.
    fn coordinate_tail(&self, x: &Self::Elem, bound: usize) -> Option<usize> {
        self.rank(x, bound)
    }

    /// `x[n] = τ̄ⁿ₀(x) ⋆₁ 1`.
    fn coordinate(&self, x: &Self::Elem, n: usize) -> Self::Elem {
        if n == 0 {
            return self.restrict_lt(x, 1);
        }
        self.restrict_lt(&self.permute(&FinPerm::transposition(n, 0), x), 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lt,
    Ge,
}

pub fn restrict<P: PointedMerge>(p: &P, x: &P::Elem, n: usize, side: Side) -> P::Elem {
    match side {
        Side::Lt => p.restrict_lt(x, n),
        Side::Ge => p.restrict_ge(x, n),
    }
}

/// Permutations with domain inside `{0..k-1}`, ordered by the largest
/// moved point, so `τ¹₀` precedes everything moving 2.
pub fn perms_graded(k: usize) -> Vec<FinPerm> {
    let mut all = perms_upto(k.min(6)).expect("k ≤ 6");
    all.sort_by_key(|p| (p.dom_bound(), p.graph().values().copied().collect::<Vec<_>>()));
    all
}

/// The base sequence `k ↦ 1[k]` of coordinate maps over `p`.
pub fn coord_base<P: PointedMerge>(p: &P) -> Arc<BaseSeq<P::Elem>> {
    let q = p.clone();
    let one = p.one();
    BaseSeq::indexed(format!("coords:{}", p.name()), move |k| q.coordinate(&one, k))
}

/// `x_[] = (x[0], x[1], …)` over the given coordinate base. Exact when
/// `rank(x) ≤ bound`, since then `x[k] = 1[k]` for `k ≥ rank(x)`.
pub fn coord_map_over<P: PointedMerge>(
    p: &P,
    x: &P::Elem,
    bound: usize,
    base: &Arc<BaseSeq<P::Elem>>,
) -> Result<OmegaSeq<P::Elem>, MergeError> {
    let r = p.rank(x, bound).ok_or(MergeError::NotRepresentable { bound })?;
    Ok(OmegaSeq::from_prefix(base, (0..r).map(|k| p.coordinate(x, k))))
}

pub fn coord_map<P: PointedMerge>(p: &P, x: &P::Elem, bound: usize) -> Result<OmegaSeq<P::Elem>, MergeError> {
    coord_map_over(p, x, bound, &coord_base(p))
}

/// `a ∼ω b`: returns the least `n ≤ bound` with `b ⋆ₙ a = b`.
pub fn abstract_trace_equiv<M: MergeAlgebra>(m: &M, a: &M::Elem, b: &M::Elem, bound: usize) -> Option<usize> {
    (0..=bound).find(|&n| m.star(n, b, a) == *b)
}

/// Degeneracy test `σ̄(x) = x` over enumerated elements and permutations
/// with domain inside `{0..perm_bound-1}`.
pub fn is_degenerate<M: MergeAlgebra>(m: &M, budget: usize, perm_bound: usize) -> Verdict {
    let elems = m.enumerate(budget);
    let perms = perms_graded(perm_bound);
    let mut count = 0u64;
    for (si, sigma) in perms.iter().enumerate() {
        for (xi, x) in elems.items.iter().enumerate() {
            count += 1;
            let y = m.permute(sigma, x);
            if y != *x {
                return Verdict::fail(
                    Witness::new(
                        vec![("sigma".into(), format!("{sigma:?}")), ("x".into(), format!("{x:?}"))],
                        format!("{y:?}"),
                        format!("{x:?}"),
                    )
                    .with_assignment(vec![si, xi]),
                );
            }
        }
    }
    Verdict::pass(count, elems.exhaustive && perm_bound <= 6)
}

/// `Seq(A)` restricted to the basic trace of `base`.
#[derive(Clone)]
pub struct CanonicalMerge<E> {
    base: Arc<BaseSeq<E>>,
    carrier: Carrier<E>,
    support_bound: usize,
    one: OmegaSeq<E>,
}

impl<E: Element> CanonicalMerge<E> {
    /// `support_bound` bounds the enumerated fragment only.
    pub fn new(base: &Arc<BaseSeq<E>>, carrier: Carrier<E>, support_bound: usize) -> Result<Self, MergeError> {
        for i in 0..support_bound.max(1) {
            if !carrier.contains(&base.at(i)) {
                return Err(MergeError::CarrierMismatch { index: i, carrier: carrier.name.clone() });
            }
        }
        Ok(CanonicalMerge { base: base.clone(), carrier, support_bound, one: OmegaSeq::new(base) })
    }

    /// Points the algebra at a different coordinator in the same trace.
    pub fn with_one(mut self, one: OmegaSeq<E>) -> Self {
        debug_assert_eq!(one.base().id(), self.base.id());
        self.one = one;
        self
    }

    pub fn base(&self) -> &Arc<BaseSeq<E>> {
        &self.base
    }

    pub fn carrier(&self) -> &Carrier<E> {
        &self.carrier
    }

    pub fn support_bound(&self) -> usize {
        self.support_bound
    }

    pub fn seq(&self, prefix: impl IntoIterator<Item = E>) -> OmegaSeq<E> {
        OmegaSeq::from_prefix(&self.base, prefix)
    }
}

/// `canonical_merge(base, carrier)` with the default enumeration fragment.
pub fn canonical_merge<E: Element>(base: &Arc<BaseSeq<E>>, carrier: Carrier<E>) -> Result<CanonicalMerge<E>, MergeError> {
    CanonicalMerge::new(base, carrier, 3)
}

impl<E: Element> MergeAlgebra for CanonicalMerge<E> {
    type Elem = OmegaSeq<E>;

    fn name(&self) -> String {
        format!("seq({},{},L={})", self.carrier.name, self.base.literal(), self.support_bound)
    }

    fn star(&self, n: usize, x: &OmegaSeq<E>, y: &OmegaSeq<E>) -> OmegaSeq<E> {
        x.splice(n, y)
    }

    fn permute(&self, sigma: &FinPerm, x: &OmegaSeq<E>) -> OmegaSeq<E> {
        x.permute(sigma)
    }

    fn enumerate(&self, budget: usize) -> Enumeration<OmegaSeq<E>> {
        enumerate_seqs(&self.base, &self.carrier.fragment, self.support_bound, budget)
    }

    fn tag(&self) -> MergeTag {
        MergeTag::Canonical
    }
}

impl<E: Element> PointedMerge for CanonicalMerge<E> {
    fn one(&self) -> OmegaSeq<E> {
        self.one.clone()
    }

    fn rank(&self, x: &OmegaSeq<E>, bound: usize) -> Option<usize> {
        // x_{<n} = x iff x agrees with 1 from n on.
        let diff = x
            .support()
            .chain(self.one.support())
            .filter(|&i| x.entry(i) != self.one.entry(i))
            .max()
            .map_or(0, |i| i + 1);
        (diff <= bound).then_some(diff)
    }
}

/// `x ⋆ₙ y = y`, `σ̄ = id`.
#[derive(Clone)]
pub struct DegenerateMerge<E> {
    name: String,
    elements: Arc<Vec<E>>,
    one: E,
}

impl<E: Element> DegenerateMerge<E> {
    pub fn new(name: impl Into<String>, elements: Vec<E>, one: E) -> Self {
        DegenerateMerge { name: name.into(), elements: Arc::new(elements), one }
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }
}

/// `degenerate_merge(carrier)`, pointed at the first listed element.
pub fn degenerate_merge<E: Element>(carrier: Carrier<E>) -> DegenerateMerge<E> {
    let one = carrier.fragment.first().cloned().expect("nonempty carrier");
    DegenerateMerge::new(format!("degenerate({})", carrier.name), carrier.fragment, one)
}

impl<E: Element> MergeAlgebra for DegenerateMerge<E> {
    type Elem = E;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn star(&self, _n: usize, _x: &E, y: &E) -> E {
        y.clone()
    }

    fn permute(&self, _sigma: &FinPerm, x: &E) -> E {
        x.clone()
    }

    fn enumerate(&self, budget: usize) -> Enumeration<E> {
        Enumeration::flat(self.elements.to_vec(), budget, true)
    }

    fn tag(&self) -> MergeTag {
        MergeTag::Degenerate
    }
}

impl<E: Element> PointedMerge for DegenerateMerge<E> {
    fn one(&self) -> E {
        self.one.clone()
    }

    /// Every coordinate is `y ⋆₁ 1 = 1`.
    fn coordinate_tail(&self, _x: &E, _bound: usize) -> Option<usize> {
        Some(0)
    }
}
