// SPDX-License-Identifier: Apache-2.0

//! `R_C`: the concrete clone on the carrier of a clone algebra whose
//! `k`-ary part is `{ã⁽ᵏ⁾ : dim a ≤ k}`, `ã⁽ᵏ⁾(x⃗) = q_k(a, x⃗)`.

use std::collections::HashSet;
use std::fmt;

use super::AbstractClone;
use crate::clonealg::{dimension_ca, CloneAlgebra, Dimension};
use crate::seq::Enumeration;

/// `ã⁽ᵏ⁾`, determined by `a` since `a = ã⁽ᵏ⁾(e₀..e_{k-1})`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tilde<E> {
    pub k: usize,
    pub a: E,
}

impl<E: fmt::Debug> fmt::Debug for Tilde<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "~{:?}^({})", self.a, self.k)
    }
}

#[derive(Clone)]
pub struct CaToAc<C> {
    ca: C,
    arity_bound: usize,
}

pub fn ca_to_ac<C: CloneAlgebra>(c: C, arity_bound: usize) -> CaToAc<C> {
    CaToAc { ca: c, arity_bound }
}

impl<C: CloneAlgebra> CaToAc<C> {
    pub fn clone_algebra(&self) -> &C {
        &self.ca
    }

    fn dim(&self, a: &C::Elem) -> Option<usize> {
        match dimension_ca(&self.ca, a, self.arity_bound) {
            Dimension::Finite(d) => Some(d),
            _ => None,
        }
    }

    /// `ã⁽ᵏ⁾` when `a` is certified of dimension `≤ k`.
    pub fn tilde(&self, a: &C::Elem, k: usize) -> Option<Tilde<C::Elem>> {
        self.dim(a).filter(|&d| d <= k).map(|_| Tilde { k, a: a.clone() })
    }

    /// Evaluates `ã⁽ᵏ⁾` on carrier elements.
    pub fn apply(&self, t: &Tilde<C::Elem>, xs: &[C::Elem]) -> C::Elem {
        assert_eq!(xs.len(), t.k);
        self.ca.q(&t.a, xs)
    }
}

impl<C: CloneAlgebra> AbstractClone for CaToAc<C> {
    type Elem = Tilde<C::Elem>;

    fn name(&self) -> String {
        format!("R({})", self.ca.name())
    }

    fn sort_bound(&self) -> usize {
        self.arity_bound
    }

    /// Enumerated elements of dimension `≤ n`, plus `e₀..e_{n-1}`.
    fn sort(&self, n: usize, budget: usize) -> Enumeration<Self::Elem> {
        let en = self.ca.enumerate(budget);
        let mut seen = HashSet::new();
        let mut items = Vec::new();
        for a in (0..n).map(|i| self.ca.e(i)).chain(en.items) {
            if self.dim(&a).is_some_and(|d| d <= n) && seen.insert(a.clone()) {
                items.push(Tilde { k: n, a });
            }
        }
        Enumeration::flat(items, budget, en.exhaustive)
    }

    fn sort_of(&self, x: &Self::Elem) -> usize {
        x.k
    }

    /// `ã⁽ⁿ⁾(b̃₀⁽ᵏ⁾, …) = c̃⁽ᵏ⁾` with `c = qₙ(a, b⃗)`.
    fn q(&self, k: usize, x: &Self::Elem, ys: &[Self::Elem]) -> Self::Elem {
        let bs: Vec<C::Elem> = ys.iter().map(|y| y.a.clone()).collect();
        Tilde { k, a: self.ca.q(&x.a, &bs) }
    }

    fn e(&self, n: usize, i: usize) -> Self::Elem {
        Tilde { k: n, a: self.ca.e(i) }
    }

    fn unlift(&self, x: &Self::Elem) -> Option<Self::Elem> {
        if x.k == 0 {
            return None;
        }
        match self.dim(&x.a) {
            Some(d) => (d < x.k).then(|| Tilde { k: x.k - 1, a: x.a.clone() }),
            None => {
                let args: Vec<C::Elem> = (0..x.k - 1).map(|i| self.ca.e(i)).collect();
                let mut probe = args.clone();
                probe.push(self.ca.e(0));
                let y = self.ca.q(&x.a, &probe);
                (self.ca.q(&y, &args) == x.a).then(|| Tilde { k: x.k - 1, a: y })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clonealg::projection_algebra;

    #[test]
    fn tilde_applied_to_projections() {
        let p = projection_algebra(6);
        let r = ca_to_ac(p.clone(), 4);
        for a in 0..3u64 {
            let t = r.tilde(&a, 3).unwrap();
            let es: Vec<u64> = (0..3).map(|i| p.e(i)).collect();
            assert_eq!(r.apply(&t, &es), a);
        }
        assert!(r.tilde(&5, 3).is_none());
    }

    #[test]
    fn sorts_of_projection_algebra() {
        let r = ca_to_ac(projection_algebra(6), 4);
        for k in 0..=4 {
            let s = r.sort(k, 64);
            let vals: Vec<u64> = s.items.iter().map(|t| t.a).collect();
            assert_eq!(vals, (0..k as u64).collect::<Vec<_>>());
        }
    }

    #[test]
    fn composite_represents_q() {
        let p = projection_algebra(6);
        let r = ca_to_ac(p.clone(), 4);
        let x = r.e(2, 1);
        let ys = vec![Tilde { k: 3, a: 2u64 }, Tilde { k: 3, a: 0 }];
        assert_eq!(r.q(3, &x, &ys), Tilde { k: 3, a: 0 });
        assert_eq!(r.unlift(&Tilde { k: 3, a: 1 }), Some(Tilde { k: 2, a: 1 }));
        assert_eq!(r.unlift(&Tilde { k: 2, a: 1 }), None);
    }
}
