// SPDX-License-Identifier: Apache-2.0

//! The adjunction `(_)^{ac-ca} ⊣ R_(_)` and the composite ac → ca → cm.

use super::{ca_to_cm, mismatch, TranslateBounds, Triangular};
use crate::absclone::{ac_to_ca, ca_to_ac, AbstractClone, Tilde};
use crate::clonealg::{dimension_ca, CloneAlgebra, Dimension};
use crate::merge::{MergeAlgebra, PointedMerge};
use crate::verdict::Verdict;

/// With unit `η_B(x) = ~[x]^(k)` and counit `ε_C = f_C⁻¹`, `f_C(a) = [ã^(k)]`:
/// `R_{ε_C} ∘ η_{R_C} = id` on `R_C`, and `ε_{B^{ac-ca}} ∘ (η_B)^{ac-ca} = id`
/// on `B^{ac-ca}`. Sorts run up to `bounds.n_bound`.
pub fn triangular_ac_ca<B: AbstractClone, C: CloneAlgebra>(b: &B, c: &C, bounds: TranslateBounds) -> Triangular {
    let k_max = bounds.n_bound;
    // First identity, on R_C.
    let rc = ca_to_ac(c.clone(), k_max);
    let rc_acca = ac_to_ca(rc.clone(), k_max);
    let mut count = 0u64;
    let mut exhaustive = true;
    let mut first = None;
    'outer: for k in 0..=k_max {
        let sort = rc.sort(k, bounds.budget);
        exhaustive &= sort.exhaustive;
        for (i, t) in sort.items.iter().enumerate() {
            count += 1;
            let cls = rc_acca.class_of(t);
            // η_{R_C}(t) = ~[t]^(k) needs dim [t] ≤ k.
            if !matches!(dimension_ca(&rc_acca, &cls, k_max), Dimension::Finite(d) if d <= k) {
                first = Some(mismatch(vec![("t".into(), format!("{t:?}"))], &format!("dim {cls:?}"), &format!("≤ {k}"), vec![k, i]));
                break 'outer;
            }
            let back = Tilde { k, a: cls.representative().a.clone() };
            if back != *t {
                first = Some(mismatch(vec![("t".into(), format!("{t:?}"))], &back, t, vec![k, i]));
                break 'outer;
            }
        }
    }
    let first = first.unwrap_or(Verdict::pass(count, exhaustive));

    // Second identity, on B^{ac-ca}.
    let acca = ac_to_ca(b.clone(), k_max);
    let r_acca = ca_to_ac(acca.clone(), k_max);
    let r_acca_acca = ac_to_ca(r_acca, k_max);
    let classes = acca.enumerate(bounds.budget);
    let mut second = Verdict::pass(classes.len() as u64, classes.exhaustive);
    for (i, cls) in classes.items.iter().enumerate() {
        let eta = Tilde { k: cls.arity(), a: cls.clone() };
        let back = r_acca_acca.class_of(&eta).representative().a.clone();
        if back != *cls {
            second = mismatch(vec![("x".into(), format!("{cls:?}"))], &back, cls, vec![i]);
            break;
        }
    }
    Triangular { first, second }
}

/// `(B^{ac-ca})^cm` is finite dimensional and finitely ranked: every
/// enumerated element has a rank within the support bound and every entry
/// a certified finite dimension.
pub fn composite_fdr_check<B: AbstractClone>(b: &B, bounds: TranslateBounds) -> Verdict {
    let cm = ca_to_cm(ac_to_ca(b.clone(), bounds.n_bound), bounds.support_bound);
    let ca = cm.clone_algebra().clone();
    let elems = cm.enumerate(bounds.budget);
    for (i, x) in elems.items.iter().enumerate() {
        if cm.rank(x, bounds.support_bound).is_none() {
            return mismatch(vec![("x".into(), format!("{x:?}"))], &"no rank".to_string(), &"rank".to_string(), vec![i]);
        }
        if let Some(j) = (0..x.support_bound()).find(|&j| !matches!(dimension_ca(&ca, &x.entry(j), bounds.n_bound), Dimension::Finite(_))) {
            return mismatch(
                vec![("x".into(), format!("{x:?}")), ("i".into(), j.to_string())],
                &"no dimension".to_string(),
                &"finite dimension".to_string(),
                vec![i],
            );
        }
    }
    Verdict::pass(elems.len() as u64, elems.exhaustive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absclone::{clone_generate, DEFAULT_OP_GUARD};
    use crate::clonealg::projection_algebra;
    use crate::finop::FinOp;

    fn bool_clone() -> crate::absclone::ConcreteClone {
        let and = FinOp::new(2, 2, vec![0, 0, 0, 1]).unwrap();
        let or = FinOp::new(2, 2, vec![0, 1, 1, 1]).unwrap();
        let c0 = FinOp::constant(2, 0, 0).unwrap();
        let c1 = FinOp::constant(2, 0, 1).unwrap();
        clone_generate(2, &[and, or, c0, c1], 3, DEFAULT_OP_GUARD).unwrap()
    }

    #[test]
    fn triangles_on_monotone_clone() {
        let b = bool_clone();
        let bounds = TranslateBounds { budget: 200, ..TranslateBounds::default() };
        let t = triangular_ac_ca(&b, &ac_to_ca(b.clone(), 3), bounds);
        assert!(t.first.is_exhaustive(), "{t:?}");
        assert!(t.second.is_exhaustive(), "{t:?}");
        let t = triangular_ac_ca(&b, &projection_algebra(6), bounds);
        assert!(t.verdict().is_pass(), "{t:?}");
    }

    #[test]
    fn composite_is_fdr() {
        let bounds = TranslateBounds { budget: 300, support_bound: 2, ..TranslateBounds::default() };
        assert!(composite_fdr_check(&bool_clone(), bounds).is_pass());
    }
}
