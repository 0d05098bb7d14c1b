// SPDX-License-Identifier: Apache-2.0

//! `B/≈` as a clone algebra. Each class is stored by its unique
//! representative of least sort; that sort is the arity of the class.

use std::fmt;

use super::{lift_plus, minimal_representative, AbstractClone};
use crate::clonealg::{independent, CloneAlgebra, Dimension};
use crate::seq::{Element, Enumeration};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AcClass<E> {
    arity: usize,
    rep: E,
}

impl<E: Element> AcClass<E> {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn representative(&self) -> &E {
        &self.rep
    }
}

impl<E: fmt::Debug> fmt::Debug for AcClass<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}]", self.rep)
    }
}

#[derive(Clone)]
pub struct AcToCa<B> {
    clone: B,
    sort_bound: usize,
}

/// Classes of arity `≤ sort_bound` form the enumerated fragment.
pub fn ac_to_ca<B: AbstractClone>(b: B, sort_bound: usize) -> AcToCa<B> {
    AcToCa { clone: b, sort_bound }
}

impl<B: AbstractClone> AcToCa<B> {
    pub fn abstract_clone(&self) -> &B {
        &self.clone
    }

    pub fn class_of(&self, x: &B::Elem) -> AcClass<B::Elem> {
        let rep = minimal_representative(&self.clone, x);
        AcClass { arity: self.clone.sort_of(&rep), rep }
    }

    /// The member of the class in sort `k ≥ arity`.
    pub fn member(&self, c: &AcClass<B::Elem>, k: usize) -> B::Elem {
        lift_plus(&self.clone, &c.rep, k - c.arity)
    }
}

impl<B: AbstractClone> CloneAlgebra for AcToCa<B> {
    type Elem = AcClass<B::Elem>;

    fn name(&self) -> String {
        format!("ac_ca({})", self.clone.name())
    }

    /// `[q_k^k(x, x₀..x_{n-1}, eₙ..e_{k-1})]` with every argument lifted to
    /// sort `k`. Arguments past the arity `s` of `a` are never read, so
    /// `q_s^{k'}` at the least sort `k'` holding `a` and `b₀..b_{min(n,s)-1}`
    /// gives the same class.
    fn q(&self, a: &Self::Elem, args: &[Self::Elem]) -> Self::Elem {
        let s = a.arity;
        let used = args.len().min(s);
        let k = args[..used].iter().map(|b| b.arity).chain([s]).max().unwrap_or(0);
        let ys: Vec<B::Elem> =
            (0..s).map(|i| if i < used { self.member(&args[i], k) } else { self.clone.e(k, i) }).collect();
        self.class_of(&self.clone.q(k, &a.rep, &ys))
    }

    fn e(&self, n: usize) -> Self::Elem {
        self.class_of(&self.clone.e(n + 1, n))
    }

    fn enumerate(&self, budget: usize) -> Enumeration<Self::Elem> {
        let mut grades = Vec::new();
        let mut complete = true;
        let mut produced = 0usize;
        for n in 0..=self.sort_bound.min(self.clone.sort_bound()) {
            if produced > budget {
                complete = false;
                break;
            }
            let sort = self.clone.sort(n, budget.saturating_mul(4).max(budget));
            complete &= sort.exhaustive;
            let grade: Vec<Self::Elem> = sort
                .items
                .into_iter()
                .filter(|x| self.clone.unlift(x).is_none())
                .map(|rep| AcClass { arity: n, rep })
                .collect();
            produced += grade.len();
            grades.push(grade);
        }
        complete &= self.sort_bound <= self.clone.sort_bound();
        Enumeration::from_grades(grades, budget, complete)
    }

    /// Independence of `eₖ` for `k ≥ arity` is automatic; the finitely many
    /// `k` below the arity are checked exactly.
    fn dimension_certificate(&self, a: &Self::Elem) -> Option<Dimension> {
        let mut m = a.arity;
        while m > 0 && independent(self, a, m - 1) {
            m -= 1;
        }
        Some(Dimension::Finite(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absclone::{clone_generate, DEFAULT_OP_GUARD};
    use crate::clonealg::{dimension_ca, fca};
    use crate::finop::FinOp;

    fn bool_ops() -> Vec<FinOp> {
        vec![
            FinOp::new(2, 2, vec![0, 0, 0, 1]).unwrap(),
            FinOp::new(2, 2, vec![0, 1, 1, 1]).unwrap(),
            FinOp::constant(2, 0, 0).unwrap(),
            FinOp::constant(2, 0, 1).unwrap(),
        ]
    }

    #[test]
    fn classes_are_top_extensions() {
        let b = clone_generate(2, &bool_ops(), 3, DEFAULT_OP_GUARD).unwrap();
        let ca = ac_to_ca(b.clone(), 3);
        let classes = ca.enumerate(1000);
        assert!(classes.exhaustive);
        // Monotone functions with last coordinate essential: 2, 1, 3, 14.
        assert_eq!(classes.len(), 2 + 1 + 3 + 14);
        let and = ca.class_of(&bool_ops()[0]);
        assert_eq!(and.arity(), 2);
        assert_eq!(dimension_ca(&ca, &and, 4), Dimension::Finite(2));
        // Same results as the FCA on trimmed tables.
        let f = fca(2, 3).unwrap();
        let to_fca = |c: &AcClass<FinOp>| f.element(c.representative().clone()).unwrap();
        for a in classes.items.iter().take(12) {
            for x in classes.items.iter().take(8) {
                for y in classes.items.iter().skip(4).take(8) {
                    let lhs = to_fca(&ca.q(a, &[x.clone(), y.clone()]));
                    let rhs = f.q(&to_fca(a), &[to_fca(x), to_fca(y)]);
                    assert_eq!(lhs, rhs);
                }
            }
        }
        assert_eq!(ca.q(&ca.e(1), &[and.clone(), ca.e(0)]), ca.e(0));
    }

    #[test]
    fn unary_constant_without_nullary() {
        // Clone of the unary constant 0: B₀ is empty, so the class keeps
        // arity 1 although it is independent of e₀.
        let c = FinOp::constant(2, 1, 0).unwrap();
        let b = clone_generate(2, std::slice::from_ref(&c), 2, DEFAULT_OP_GUARD).unwrap();
        assert!(b.ops(0).is_empty());
        let ca = ac_to_ca(b, 2);
        let k = ca.class_of(&c);
        assert_eq!(k.arity(), 1);
        assert_eq!(dimension_ca(&ca, &k, 4), Dimension::Finite(0));
    }
}
