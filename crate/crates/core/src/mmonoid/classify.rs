// SPDX-License-Identifier: Apache-2.0

//! Extensionality, the four-way type classification, and noncommutativity
//! witnesses.

use serde::Serialize;

use super::MMonoid;
use crate::merge::{is_degenerate, perms_graded, PointedMerge};
use crate::verdict::{Verdict, Witness};

/// Searches pairs `x ≠ y` whose coordinates agree at every index up to
/// `index_bound`. A pair is a genuine failure only when both coordinate
/// tails are provably equal to those of `1` within the bound.
pub fn is_extensional<P: PointedMerge>(p: &P, budget: usize, index_bound: usize) -> Verdict {
    let elems = p.enumerate(budget);
    let coords: Vec<Vec<P::Elem>> =
        elems.items.iter().map(|x| (0..=index_bound).map(|k| p.coordinate(x, k)).collect()).collect();
    let mut count = 0u64;
    let mut undecided = None;
    for i in 0..elems.items.len() {
        for j in i + 1..elems.items.len() {
            count += 1;
            if coords[i] != coords[j] {
                continue;
            }
            let (x, y) = (&elems.items[i], &elems.items[j]);
            let certified = match (p.coordinate_tail(x, index_bound), p.coordinate_tail(y, index_bound)) {
                (Some(a), Some(b)) => a.max(b) <= index_bound,
                _ => false,
            };
            if certified {
                return Verdict::fail(
                    Witness::new(
                        vec![("x".into(), format!("{x:?}")), ("y".into(), format!("{y:?}"))],
                        format!("{:?}", coords[i]),
                        format!("{:?}", coords[j]),
                    )
                    .with_assignment(vec![i, j]),
                );
            }
            undecided.get_or_insert((i, j));
        }
    }
    match undecided {
        Some((i, j)) => Verdict::Unknown(format!(
            "coordinates of {:?} and {:?} agree up to {index_bound}; tails not certified",
            elems.items[i], elems.items[j]
        )),
        None => Verdict::pass(count, elems.exhaustive),
    }
}

/// How a type verdict was reached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TypeEvidence {
    /// `σ̄(x) = x` held on every enumerated instance.
    Degenerate { exhaustive: bool },
    /// `1[0..=bound]` are pairwise distinct values.
    DistinctCoordinates { bound: usize },
    /// `1[k] = 1` for `k ≤ bound` and `a[n] ≠ 1` for the recorded pair.
    TrivialUnitCoordinates { bound: usize, element: String, index: usize },
    /// `1[i] = 1[j]` with `1[k] ≠ 1` for some `k`; certain.
    Mixed { equal: (usize, usize), nontrivial: usize },
    Undecided(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeClass {
    /// `1..=4`, or `None` when no decision was reached.
    pub ty: Option<u8>,
    pub evidence: TypeEvidence,
}

/// Classifies a pointed merge algebra by the coordinates of its coordinator.
pub fn classify_type<P: PointedMerge>(p: &P, budget: usize, index_bound: usize, perm_bound: usize) -> TypeClass {
    let deg = is_degenerate(p, budget, perm_bound);
    if deg.is_pass() {
        return TypeClass { ty: Some(1), evidence: TypeEvidence::Degenerate { exhaustive: deg.is_exhaustive() } };
    }
    let one = p.one();
    let unit_coords: Vec<P::Elem> = (0..=index_bound).map(|k| p.coordinate(&one, k)).collect();
    let nontrivial = unit_coords.iter().position(|c| *c != one);
    let mut equal = None;
    'outer: for i in 0..unit_coords.len() {
        for j in i + 1..unit_coords.len() {
            if unit_coords[i] == unit_coords[j] {
                equal = Some((i, j));
                break 'outer;
            }
        }
    }
    match (nontrivial, equal) {
        (Some(k), Some(eq)) => TypeClass { ty: Some(4), evidence: TypeEvidence::Mixed { equal: eq, nontrivial: k } },
        (Some(_), None) => TypeClass { ty: Some(2), evidence: TypeEvidence::DistinctCoordinates { bound: index_bound } },
        (None, _) => {
            let elems = p.enumerate(budget);
            for a in &elems.items {
                for n in 0..=index_bound {
                    if p.coordinate(a, n) != one {
                        return TypeClass {
                            ty: Some(3),
                            evidence: TypeEvidence::TrivialUnitCoordinates {
                                bound: index_bound,
                                element: format!("{a:?}"),
                                index: n,
                            },
                        };
                    }
                }
            }
            TypeClass {
                ty: None,
                evidence: TypeEvidence::Undecided(format!(
                    "1[k] = 1 for k ≤ {index_bound} and no a[n] ≠ 1 found among {} elements",
                    elems.len()
                )),
            }
        }
    }
}

/// A pair with `x·y ≠ y·x`, trying `σ̄(1)·τ̄(1)` pairs before enumerated ones.
pub fn noncomm_witness<M: MMonoid>(m: &M, budget: usize, perm_bound: usize) -> Option<(M::Elem, M::Elem)> {
    let one = m.one();
    let units: Vec<M::Elem> = perms_graded(perm_bound).iter().map(|s| m.permute(s, &one)).collect();
    let elems = m.enumerate(budget).items;
    for pool in [&units, &elems] {
        for x in pool.iter() {
            for y in pool.iter() {
                if m.mul(x, y) != m.mul(y, x) {
                    return Some((x.clone(), y.clone()));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::merge::{CanonicalMerge, MergeAlgebra};
    use crate::mmonoid::{degenerate_mmonoid, oplus, product_mmonoid, FiniteMonoid, MonoidFamily};
    use crate::seq::{BaseSeq, Carrier};

    fn z2_product() -> crate::mmonoid::ProductMMonoid {
        product_mmonoid(MonoidFamily::constant(FiniteMonoid::cyclic(2)), 2).unwrap()
    }

    #[test]
    fn degenerate_is_type_one_and_not_extensional() {
        let d = degenerate_mmonoid(FiniteMonoid::cyclic(3));
        assert_eq!(classify_type(&d, 64, 4, 4).ty, Some(1));
        let v = is_extensional(&d, 64, 4);
        assert!(v.is_fail(), "{v:?}");
        assert!(noncomm_witness(&d, 64, 4).is_none());
    }

    #[test]
    fn oplus_is_not_extensional() {
        let o = oplus(z2_product());
        let v = is_extensional(&o, 64, 4);
        let w = v.witness().expect("(x,0) and (x,1) share coordinates");
        let x = w.get("x").unwrap();
        let y = w.get("y").unwrap();
        assert_eq!(x.trim_end_matches("0)"), y.trim_end_matches("1)"));
    }

    #[test]
    fn product_of_z2_is_type_three() {
        let t = classify_type(&z2_product(), 64, 4, 4);
        assert_eq!(t.ty, Some(3));
        assert!(is_extensional(&z2_product(), 64, 4).is_pass());
    }

    #[test]
    fn shifted_unit_is_type_four() {
        let base = BaseSeq::constant("eps", 'z');
        let m = CanonicalMerge::new(&base, Carrier::finite("ez", vec!['e', 'z']), 2).unwrap();
        let one = m.seq(['e']);
        let m = m.with_one(one);
        let t = classify_type(&m, 64, 4, 4);
        assert_eq!(t.ty, Some(4));
        assert!(matches!(t.evidence, TypeEvidence::Mixed { .. }));
        assert_eq!(m.enumerate(64).len(), 4);
    }

    #[test]
    fn indexed_unit_is_type_two() {
        let base = BaseSeq::indexed("nat", |k| k as u32);
        let m = CanonicalMerge::new(&base, Carrier::effective("nat", vec![0, 1, 2], |_| true), 2).unwrap();
        assert_eq!(classify_type(&m, 64, 5, 4).ty, Some(2));
    }
}
