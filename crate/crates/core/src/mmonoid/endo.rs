// SPDX-License-Identifier: Apache-2.0

//! `End(A)`: all endofunctions of a small merge algebra, pointwise merge
//! structure, composition as product.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use super::{Flavor, MMonoid, MonoidError};
use crate::merge::{MergeAlgebra, MergeTag, PointedMerge};
use crate::seq::{Element, Enumeration, FinPerm};

/// Largest carrier accepted; `4⁴ = 256` functions.
pub const ENDO_CARRIER_LIMIT: usize = 4;

/// An endofunction, listed as its images in the domain order of the algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Endo<E>(pub Arc<Vec<E>>);

impl<E: fmt::Debug> fmt::Debug for Endo<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v:?}")?;
        }
        write!(f, ">")
    }
}

#[derive(Clone)]
pub struct EndofunctionCm<A: MergeAlgebra> {
    inner: A,
    domain: Arc<Vec<A::Elem>>,
    index: Arc<HashMap<A::Elem, usize>>,
}

pub fn endofunction_cm<A: MergeAlgebra>(a: A) -> Result<EndofunctionCm<A>, MonoidError> {
    let en = a.enumerate(ENDO_CARRIER_LIMIT + 1);
    if !en.exhaustive || en.len() > ENDO_CARRIER_LIMIT {
        return Err(MonoidError::BudgetExceeded(format!(
            "endofunctions need a carrier of at most {ENDO_CARRIER_LIMIT} elements"
        )));
    }
    let index: HashMap<A::Elem, usize> = en.items.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
    // Finite carriers must be closed; probe small indices and permutations.
    let perms = crate::merge::perms_graded(3);
    for x in &en.items {
        for y in &en.items {
            if (0..4).any(|n| !index.contains_key(&a.star(n, x, y))) {
                return Err(MonoidError::BudgetExceeded("carrier is not closed under the splices".into()));
            }
        }
        if perms.iter().any(|s| !index.contains_key(&a.permute(s, x))) {
            return Err(MonoidError::BudgetExceeded("carrier is not closed under permutations".into()));
        }
    }
    Ok(EndofunctionCm { inner: a, domain: Arc::new(en.items), index: Arc::new(index) })
}

impl<A: MergeAlgebra> EndofunctionCm<A> {
    pub fn domain(&self) -> &[A::Elem] {
        &self.domain
    }

    pub fn inner(&self) -> &A {
        &self.inner
    }

    pub fn from_images(&self, images: Vec<A::Elem>) -> Endo<A::Elem> {
        assert_eq!(images.len(), self.domain.len());
        Endo(Arc::new(images))
    }

    pub fn apply(&self, f: &Endo<A::Elem>, x: &A::Elem) -> A::Elem {
        let i = self.index.get(x).expect("operations of a finite merge algebra stay in its carrier");
        f.0[*i].clone()
    }

    fn pointwise(&self, f: impl Fn(&A::Elem) -> A::Elem) -> Endo<A::Elem> {
        Endo(Arc::new(self.domain.iter().map(f).collect()))
    }
}

fn all_functions<E: Element>(domain: &[E]) -> Vec<Endo<E>> {
    (0..domain.len())
        .map(|_| domain.iter().cloned())
        .multi_cartesian_product()
        .map(|v| Endo(Arc::new(v)))
        .collect()
}

impl<A: MergeAlgebra> MergeAlgebra for EndofunctionCm<A> {
    type Elem = Endo<A::Elem>;

    fn name(&self) -> String {
        format!("endo({})", self.inner.name())
    }

    fn star(&self, n: usize, f: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        Endo(Arc::new(f.0.iter().zip(g.0.iter()).map(|(x, y)| self.inner.star(n, x, y)).collect()))
    }

    fn permute(&self, sigma: &FinPerm, f: &Self::Elem) -> Self::Elem {
        Endo(Arc::new(f.0.iter().map(|x| self.inner.permute(sigma, x)).collect()))
    }

    fn enumerate(&self, budget: usize) -> Enumeration<Self::Elem> {
        let mut all = all_functions(&self.domain);
        // Identity first so the unit is always inside small fragments.
        let id = self.one();
        all.retain(|f| *f != id);
        all.insert(0, id);
        Enumeration::flat(all, budget, true)
    }

    fn tag(&self) -> MergeTag {
        match self.inner.tag() {
            MergeTag::Degenerate => MergeTag::Degenerate,
            _ => MergeTag::Derived,
        }
    }
}

impl<A: MergeAlgebra> PointedMerge for EndofunctionCm<A> {
    fn one(&self) -> Self::Elem {
        self.pointwise(|x| x.clone())
    }
}

impl<A: MergeAlgebra> MMonoid for EndofunctionCm<A> {
    /// `f·g = f ∘ g`.
    fn mul(&self, f: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        Endo(Arc::new(g.0.iter().map(|y| self.apply(f, y)).collect()))
    }

    fn flavor(&self) -> Flavor {
        Flavor::Cm
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::merge::{degenerate_merge, CanonicalMerge, DegenerateMerge};
    use crate::seq::{BaseSeq, Carrier};

    fn two() -> DegenerateMerge<u8> {
        degenerate_merge(Carrier::finite("bit", vec![0, 1]))
    }

    #[test]
    fn unit_and_pointwise_splice() {
        let e = endofunction_cm(two()).unwrap();
        let all = e.enumerate(1000);
        assert_eq!(all.len(), 4);
        assert!(all.exhaustive);
        for f in &all.items {
            assert_eq!(e.mul(&e.one(), f), *f);
            assert_eq!(e.mul(f, &e.one()), *f);
            for g in &all.items {
                for n in 0..3 {
                    let h = e.star(n, f, g);
                    for a in e.domain() {
                        assert_eq!(e.apply(&h, a), e.inner().star(n, &e.apply(f, a), &e.apply(g, a)));
                    }
                }
            }
        }
    }

    #[test]
    fn composition_order() {
        let e = endofunction_cm(two()).unwrap();
        let d = e.domain().to_vec();
        let swap = e.from_images(vec![d[1], d[0]]);
        let konst = e.from_images(vec![d[0], d[0]]);
        assert_eq!(e.mul(&swap, &konst), e.from_images(vec![d[1], d[1]]));
        assert_eq!(e.mul(&konst, &swap), konst);
    }

    #[test]
    fn carrier_guard() {
        let five = degenerate_merge(Carrier::finite("five", vec![0u8, 1, 2, 3, 4]));
        assert!(matches!(endofunction_cm(five), Err(MonoidError::BudgetExceeded(_))));
        // Seq over two values is infinite; its one-entry fragment is not closed.
        let base = BaseSeq::constant("zero", 0u8);
        let seq = CanonicalMerge::new(&base, Carrier::finite("bit", vec![0, 1]), 1).unwrap();
        assert!(matches!(endofunction_cm(seq), Err(MonoidError::BudgetExceeded(_))));
    }
}
