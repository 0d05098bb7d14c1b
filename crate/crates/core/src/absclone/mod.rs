// SPDX-License-Identifier: Apache-2.0

//! Abstract clones: sorted families `Bₙ` with `q_n^k` and `eᵢⁿ`. Concrete
//! clones on finite sets, the quotient `B/≈` as a clone algebra, and the
//! abstract clone `R_C` of a clone algebra.

mod acca;
mod concrete;
mod rc;

use crate::seq::{Element, Enumeration};

pub use crate::finop::{FinOp, FinOpError};
pub use acca::{ac_to_ca, AcClass, AcToCa};
pub use concrete::{clone_generate, CloneError, ConcreteClone, DEFAULT_OP_GUARD};
pub use rc::{ca_to_ac, CaToAc, Tilde};

pub trait AbstractClone: Clone + Send + Sync + 'static {
    type Elem: Element;

    fn name(&self) -> String;

    /// Sorts `0..=sort_bound()` can be listed.
    fn sort_bound(&self) -> usize;

    fn sort(&self, n: usize, budget: usize) -> Enumeration<Self::Elem>;

    fn sort_of(&self, x: &Self::Elem) -> usize;

    /// `q_n^k(x, y₀..y_{n-1})` with `x ∈ Bₙ`, `yᵢ ∈ Bₖ`.
    fn q(&self, k: usize, x: &Self::Elem, ys: &[Self::Elem]) -> Self::Elem;

    /// `eᵢⁿ ∈ Bₙ`, `i < n`.
    fn e(&self, n: usize, i: usize) -> Self::Elem;

    /// Some `y` with `y^{+1} = x`. At most one exists. For `n ≥ 2` the
    /// candidate `q_n^{n-1}(x, e₀..e_{n-2}, e₀)` is checked; sort 1 is
    /// searched in `B₀`.
    fn unlift(&self, x: &Self::Elem) -> Option<Self::Elem> {
        let n = self.sort_of(x);
        let candidate = match n {
            0 => return None,
            1 => {
                let b0 = self.sort(0, usize::MAX);
                return b0.items.into_iter().find(|y| lift_plus(self, y, 1) == *x);
            }
            _ => {
                let mut args: Vec<Self::Elem> = (0..n - 1).map(|i| self.e(n - 1, i)).collect();
                args.push(self.e(n - 1, 0));
                self.q(n - 1, x, &args)
            }
        };
        (lift_plus(self, &candidate, 1) == *x).then_some(candidate)
    }
}

/// `x^{+k} = q_n^{n+k}(x, e₀^{n+k}..e_{n-1}^{n+k})`.
pub fn lift_plus<B: AbstractClone>(b: &B, x: &B::Elem, k: usize) -> B::Elem {
    if k == 0 {
        return x.clone();
    }
    let n = b.sort_of(x);
    let args: Vec<B::Elem> = (0..n).map(|i| b.e(n + k, i)).collect();
    b.q(n + k, x, &args)
}

/// `x ≈ y`: one is a lift of the other.
pub fn approx_equiv<B: AbstractClone>(b: &B, x: &B::Elem, y: &B::Elem) -> bool {
    let (n, m) = (b.sort_of(x), b.sort_of(y));
    if m >= n {
        lift_plus(b, x, m - n) == *y
    } else {
        lift_plus(b, y, n - m) == *x
    }
}

/// Descends through sorts while an unlift exists.
pub fn minimal_representative<B: AbstractClone>(b: &B, x: &B::Elem) -> B::Elem {
    let mut cur = x.clone();
    while let Some(y) = b.unlift(&cur) {
        cur = y;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bool_clone() -> ConcreteClone {
        let and = FinOp::new(2, 2, vec![0, 0, 0, 1]).unwrap();
        let or = FinOp::new(2, 2, vec![0, 1, 1, 1]).unwrap();
        let c0 = FinOp::constant(2, 0, 0).unwrap();
        let c1 = FinOp::constant(2, 0, 1).unwrap();
        clone_generate(2, &[and, or, c0, c1], 3, DEFAULT_OP_GUARD).unwrap()
    }

    #[test]
    fn lifting() {
        let b = bool_clone();
        let and = FinOp::new(2, 2, vec![0, 0, 0, 1]).unwrap();
        assert_eq!(lift_plus(&b, &and, 0), and);
        assert_eq!(lift_plus(&b, &and, 1), and.pad(3).unwrap());
        let twice = lift_plus(&b, &lift_plus(&b, &b.e(1, 0), 1), 1);
        assert_eq!(twice, lift_plus(&b, &b.e(1, 0), 2));
        for n in 1..3 {
            for i in 0..n {
                assert_eq!(lift_plus(&b, &b.e(n, i), 1), b.e(n + 1, i));
            }
        }
    }

    #[test]
    fn approx_matches_top_extension() {
        let b = bool_clone();
        let all: Vec<FinOp> = (0..=3).flat_map(|n| b.sort(n, usize::MAX).items).collect();
        for x in &all {
            assert!(approx_equiv(&b, x, x));
            if x.arity() == 0 {
                assert!(approx_equiv(&b, x, &lift_plus(&b, x, 3)));
            }
            for y in &all {
                assert_eq!(approx_equiv(&b, x, y), x.trim() == y.trim(), "{x:?} {y:?}");
            }
        }
    }

    #[test]
    fn generic_unlift_agrees_with_dummy_detection() {
        #[derive(Clone)]
        struct Generic(ConcreteClone);
        impl AbstractClone for Generic {
            type Elem = FinOp;
            fn name(&self) -> String {
                self.0.name()
            }
            fn sort_bound(&self) -> usize {
                self.0.sort_bound()
            }
            fn sort(&self, n: usize, budget: usize) -> Enumeration<FinOp> {
                self.0.sort(n, budget)
            }
            fn sort_of(&self, x: &FinOp) -> usize {
                self.0.sort_of(x)
            }
            fn q(&self, k: usize, x: &FinOp, ys: &[FinOp]) -> FinOp {
                self.0.q(k, x, ys)
            }
            fn e(&self, n: usize, i: usize) -> FinOp {
                self.0.e(n, i)
            }
        }
        let b = bool_clone();
        let g = Generic(b.clone());
        for n in 0..=3 {
            for x in b.sort(n, usize::MAX).items {
                assert_eq!(g.unlift(&x), b.unlift(&x));
                assert_eq!(minimal_representative(&g, &x), x.trim());
            }
        }
    }
}
