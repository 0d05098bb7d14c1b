// SPDX-License-Identifier: Apache-2.0

//! Clone algebras: a carrier with constants `eₙ` and operations
//! `qₙ(a, b₀..b_{n-1})`, and the instances used throughout the crate.

mod fca;
mod proj;
mod term;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::seq::{Element, Enumeration};
use crate::verdict::{Verdict, Witness};

pub use fca::{fca, Fca, FcaElement};
pub use proj::{projection_algebra, ProjectionAlgebra};
pub use term::{term_clone_algebra, Signature, Term, TermCloneAlgebra, TermNode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    Finite(usize),
    Omega,
    Unknown,
}

pub trait CloneAlgebra: Clone + Send + Sync + 'static {
    type Elem: Element;

    fn name(&self) -> String;

    /// `qₙ(a, b₀..b_{n-1})` with `n = args.len()`.
    fn q(&self, a: &Self::Elem, args: &[Self::Elem]) -> Self::Elem;

    fn e(&self, n: usize) -> Self::Elem;

    /// Deterministic graded listing of a declared fragment.
    fn enumerate(&self, budget: usize) -> Enumeration<Self::Elem>;

    /// Structural dimension, when the representation makes it evident.
    fn dimension_certificate(&self, _a: &Self::Elem) -> Option<Dimension> {
        None
    }

    fn sample(&self, _rng: &mut ChaCha8Rng) -> Option<Self::Elem> {
        None
    }
}

/// `a` is independent of `eₙ`: `q_{n+1}(a, e₀..e_{n-1}, e_{n+1}) = a`.
pub fn independent<C: CloneAlgebra>(c: &C, a: &C::Elem, n: usize) -> bool {
    let args: Vec<C::Elem> = (0..n).map(|i| c.e(i)).chain([c.e(n + 1)]).collect();
    c.q(a, &args) == *a
}

/// Least `m` with `a` independent of every `eₖ`, `k ≥ m`. Only structural
/// certificates count; independence observed on finitely many `k` is not
/// a proof, so without one the answer is `Unknown`.
pub fn dimension_ca<C: CloneAlgebra>(c: &C, a: &C::Elem, bound: usize) -> Dimension {
    match c.dimension_certificate(a) {
        Some(Dimension::Finite(d)) => {
            debug_assert!((d..=bound.max(d) + 1).all(|k| independent(c, a, k)));
            Dimension::Finite(d)
        }
        Some(other) => other,
        None => Dimension::Unknown,
    }
}

/// `C_Fin`: elements with a certified finite dimension.
#[derive(Clone)]
pub struct FinSubalgebra<C> {
    inner: C,
}

pub fn fin_subalgebra<C: CloneAlgebra>(c: C) -> FinSubalgebra<C> {
    FinSubalgebra { inner: c }
}

impl<C: CloneAlgebra> FinSubalgebra<C> {
    pub fn inner(&self) -> &C {
        &self.inner
    }

    pub fn contains(&self, a: &C::Elem) -> bool {
        matches!(self.inner.dimension_certificate(a), Some(Dimension::Finite(_)))
    }

    /// Every `eₙ` and every `qₙ` over enumerated members stays inside.
    pub fn closure_check(&self, budget: usize, n_bound: usize) -> Verdict {
        let elems = self.enumerate(budget).items;
        let mut count = 0u64;
        for n in 0..=n_bound {
            count += 1;
            if !self.contains(&self.inner.e(n)) {
                return Verdict::fail(Witness::new(vec![("n".into(), n.to_string())], "e_n".into(), "finite".into()));
            }
            for a in &elems {
                for args in (0..n).map(|_| elems.iter().cloned()).multi_cartesian_product().take(budget) {
                    count += 1;
                    let r = self.inner.q(a, &args);
                    if !self.contains(&r) {
                        return Verdict::fail(Witness::new(
                            vec![("a".into(), format!("{a:?}")), ("args".into(), format!("{args:?}"))],
                            format!("{r:?}"),
                            "finite".into(),
                        ));
                    }
                }
            }
        }
        Verdict::PassSampled { count }
    }
}

impl<C: CloneAlgebra> CloneAlgebra for FinSubalgebra<C> {
    type Elem = C::Elem;

    fn name(&self) -> String {
        format!("fin({})", self.inner.name())
    }

    fn q(&self, a: &C::Elem, args: &[C::Elem]) -> C::Elem {
        self.inner.q(a, args)
    }

    fn e(&self, n: usize) -> C::Elem {
        self.inner.e(n)
    }

    fn enumerate(&self, budget: usize) -> Enumeration<C::Elem> {
        let en = self.inner.enumerate(budget);
        let mut bounds = en.grades.clone();
        bounds.push(en.items.len());
        let grades = bounds
            .windows(2)
            .map(|w| en.items[w[0]..w[1]].iter().filter(|a| self.contains(a)).cloned().collect::<Vec<_>>());
        Enumeration::from_grades(grades, budget, en.exhaustive)
    }

    fn dimension_certificate(&self, a: &C::Elem) -> Option<Dimension> {
        self.inner.dimension_certificate(a)
    }
}

/// Checks that `f` preserves `eₙ` for `n ≤ n_bound` and `qₙ` on tuples
/// over the enumerated fragment of `c`; beyond `cap` tuples per arity the
/// tuples are drawn at random from `seed`.
pub fn is_homomorphism<C: CloneAlgebra, D: CloneAlgebra>(
    c: &C,
    d: &D,
    f: impl Fn(&C::Elem) -> D::Elem,
    budget: usize,
    n_bound: usize,
    cap: usize,
    seed: u64,
) -> Verdict {
    let elems = c.enumerate(budget);
    let items = &elems.items;
    let mut count = 0u64;
    let mut exhaustive = elems.exhaustive;
    for n in 0..=n_bound {
        count += 1;
        let (l, r) = (f(&c.e(n)), d.e(n));
        if l != r {
            return Verdict::fail(Witness::new(vec![("n".into(), n.to_string())], format!("{l:?}"), format!("{r:?}")));
        }
    }
    if items.is_empty() {
        return Verdict::pass(count, exhaustive);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 0..=n_bound {
        let total = (items.len() as f64).powi(n as i32 + 1);
        let tuples: Vec<Vec<usize>> = if total <= cap as f64 {
            (0..=n).map(|_| 0..items.len()).multi_cartesian_product().collect()
        } else {
            exhaustive = false;
            (0..cap).map(|_| (0..=n).map(|_| rng.gen_range(0..items.len())).collect()).collect()
        };
        for t in tuples {
            count += 1;
            let a = &items[t[0]];
            let args: Vec<C::Elem> = t[1..].iter().map(|&i| items[i].clone()).collect();
            let lhs = f(&c.q(a, &args));
            let rhs = d.q(&f(a), &args.iter().map(&f).collect::<Vec<_>>());
            if lhs != rhs {
                return Verdict::fail(
                    Witness::new(
                        vec![("a".into(), format!("{a:?}")), ("args".into(), format!("{args:?}"))],
                        format!("{lhs:?}"),
                        format!("{rhs:?}"),
                    )
                    .with_assignment(t),
                );
            }
        }
    }
    Verdict::pass(count, exhaustive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finop::FinOp;

    #[test]
    fn independence_in_projection_algebra() {
        let p = projection_algebra(8);
        for i in 0..6u64 {
            for n in 0..6 {
                assert_eq!(independent(&p, &i, n), i as usize != n);
            }
        }
    }

    #[test]
    fn independence_collapses_q() {
        // If a is independent of e_n..e_{k-1}, q_k(a, b, b_n..) = q_n(a, b).
        let f = fca(2, 3).unwrap();
        let elems = f.enumerate(256).items;
        for a in elems.iter().filter(|a| a.arity() <= 1) {
            for b0 in elems.iter().take(6) {
                for b1 in elems.iter().skip(3).take(6) {
                    let short = f.q(a, std::slice::from_ref(b0));
                    let long = f.q(a, &[b0.clone(), b1.clone(), b0.clone()]);
                    assert_eq!(short, long);
                }
            }
        }
    }

    #[test]
    fn dimensions() {
        let f = fca(2, 3).unwrap();
        let and = f.element(FinOp::new(2, 2, vec![0, 0, 0, 1]).unwrap()).unwrap();
        let konst = f.element(FinOp::constant(2, 3, 1).unwrap()).unwrap();
        assert_eq!(dimension_ca(&f, &and, 4), Dimension::Finite(2));
        assert_eq!(dimension_ca(&f, &konst, 4), Dimension::Finite(0));
        assert_eq!(dimension_ca(&f, &f.e(0), 4), Dimension::Finite(1));
        let p = projection_algebra(8);
        let sig = Signature::new([("f", 2)]);
        let t = term_clone_algebra(sig, 3, 1);
        for n in 0..4 {
            assert_eq!(dimension_ca(&p, &p.e(n), 8), Dimension::Finite(n + 1));
            assert_eq!(dimension_ca(&f, &f.e(n), 8), Dimension::Finite(n + 1));
            assert_eq!(dimension_ca(&t, &t.e(n), 8), Dimension::Finite(n + 1));
        }
    }

    #[test]
    fn fin_subalgebras_are_whole() {
        let p = fin_subalgebra(projection_algebra(5));
        assert_eq!(p.enumerate(64).len(), 6);
        assert!(p.closure_check(64, 2).is_pass());
        let f = fin_subalgebra(fca(2, 2).unwrap());
        assert_eq!(f.enumerate(64).len(), 16);
        assert!(f.closure_check(64, 2).is_pass());
        let t = fin_subalgebra(term_clone_algebra(Signature::new([("f", 2), ("c", 0)]), 2, 1));
        assert!(t.closure_check(16, 2).is_pass());
    }

    #[test]
    fn identity_is_a_homomorphism() {
        let f = fca(2, 2).unwrap();
        assert!(is_homomorphism(&f, &f, |x| x.clone(), 16, 2, 2000, 7).is_pass());
        let p = projection_algebra(4);
        let bad = is_homomorphism(&p, &p, |x| x + 1, 16, 2, 2000, 7);
        assert!(bad.is_fail());
    }
}
