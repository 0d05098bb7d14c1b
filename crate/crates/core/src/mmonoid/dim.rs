// SPDX-License-Identifier: Apache-2.0

//! Dimension predicates `D(a,n,m)` and `D_ω(a,n,m)`, and the induced
//! membership report for `M_Fin` and `M_ωFin`.

use serde::Serialize;

use super::MMonoid;
use crate::verdict::{Verdict, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DimMode {
    /// `∀b ∀k. (a·(1 ⋆ₘ b ⋆_{m+k} 1)) ⋆ₙ a = a`
    D,
    /// `∀b. (a·(1 ⋆ₘ b)) ⋆ₙ a = a`
    DOmega,
}

/// Bounds for the quantifiers: `b` ranges over the first `budget`
/// enumerated elements, `k` over `0..=k_bound`.
#[derive(Debug, Clone, Copy)]
pub struct DimBounds {
    pub budget: usize,
    pub k_bound: usize,
}

fn instance<M: MMonoid>(mm: &M, a: &M::Elem, n: usize, m: usize, b: &M::Elem, k: Option<usize>) -> M::Elem {
    let one = mm.one();
    let mut arg = mm.star(m, &one, b);
    if let Some(k) = k {
        arg = mm.star(m + k, &arg, &one);
    }
    mm.star(n, &mm.mul(a, &arg), a)
}

fn search<M: MMonoid>(
    mm: &M,
    bs: &[M::Elem],
    a: &M::Elem,
    n: usize,
    m: usize,
    mode: DimMode,
    k_bound: usize,
) -> Result<u64, Box<Witness>> {
    let ks: Vec<Option<usize>> = match mode {
        DimMode::D => (0..=k_bound).map(Some).collect(),
        DimMode::DOmega => vec![None],
    };
    let mut count = 0;
    for (bi, b) in bs.iter().enumerate() {
        for k in &ks {
            count += 1;
            let lhs = instance(mm, a, n, m, b, *k);
            if lhs != *a {
                let mut bind = vec![("b".to_string(), format!("{b:?}"))];
                if let Some(k) = k {
                    bind.push(("k".into(), k.to_string()));
                }
                return Err(Box::new(
                    Witness::new(bind, format!("{lhs:?}"), format!("{a:?}")).with_assignment(vec![bi, k.unwrap_or(0)]),
                ));
            }
        }
    }
    Ok(count)
}

/// Decides the predicate over the enumerated range. If the instance has an
/// exact oracle the answer is exact, and a disagreement is reported as a
/// failure of the enumeration.
pub fn dim_predicate<M: MMonoid>(
    mm: &M,
    a: &M::Elem,
    n: usize,
    m: usize,
    mode: DimMode,
    bounds: DimBounds,
) -> Verdict {
    let bs = mm.enumerate(bounds.budget);
    let found = search(mm, &bs.items, a, n, m, mode, bounds.k_bound);
    match (mm.dim_oracle(a, n, m), found) {
        (_, Err(w)) => Verdict::Fail(w),
        (Some(true), Ok(count)) => Verdict::PassExhaustive { count },
        (Some(false), Ok(_)) => Verdict::fail(Witness::new(
            vec![("a".into(), format!("{a:?}")), ("n".into(), n.to_string()), ("m".into(), m.to_string())],
            "some component below n reads a coordinate ≥ m".into(),
            "components below n read only coordinates < m".into(),
        )),
        (None, Ok(count)) => Verdict::pass(count, bs.exhaustive && mode == DimMode::DOmega),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionRow {
    pub element: String,
    /// Least `m ≤ m_bound` with `D(a,n,m)`, per `n ≤ n_bound`.
    pub fin: Vec<Option<usize>>,
    /// Least `m ≤ m_bound` with `D_ω(a,n,m)`, per `n ≤ n_bound`.
    pub omega_fin: Vec<Option<usize>>,
    pub rank: Option<usize>,
}

impl DimensionRow {
    pub fn in_fin(&self) -> bool {
        self.fin.iter().all(Option::is_some)
    }

    pub fn in_omega_fin(&self) -> bool {
        self.omega_fin.iter().all(Option::is_some)
    }
}

#[derive(Debug, Clone)]
pub struct DimensionSets {
    pub rows: Vec<DimensionRow>,
    /// `D_ω(a,n,m) ⇒ D(a,n,m)` on every row.
    pub inclusion: Verdict,
    /// Agreement of both columns when every element has rank `≤ k_bound`;
    /// `None` when the instance is not visibly finitely ranked.
    pub equality: Option<Verdict>,
    /// Coordinates `a[i]`, `i ≤ n_bound`, of `ωFin` rows are again `ωFin`.
    pub coordinates: Verdict,
}

#[derive(Debug, Clone, Copy)]
pub struct DimSetBounds {
    pub budget: usize,
    pub n_bound: usize,
    pub m_bound: usize,
    pub k_bound: usize,
}

fn least_m<M: MMonoid>(mm: &M, bs: &[M::Elem], a: &M::Elem, n: usize, mode: DimMode, b: DimSetBounds) -> Option<usize> {
    (0..=b.m_bound).find(|&m| search(mm, bs, a, n, m, mode, b.k_bound).is_ok())
}

fn row<M: MMonoid>(mm: &M, bs: &[M::Elem], a: &M::Elem, b: DimSetBounds) -> DimensionRow {
    DimensionRow {
        element: format!("{a:?}"),
        fin: (0..=b.n_bound).map(|n| least_m(mm, bs, a, n, DimMode::D, b)).collect(),
        omega_fin: (0..=b.n_bound).map(|n| least_m(mm, bs, a, n, DimMode::DOmega, b)).collect(),
        rank: mm.rank(a, b.k_bound),
    }
}

pub fn dimension_sets<M: MMonoid>(mm: &M, bounds: DimSetBounds) -> DimensionSets {
    let elems = mm.enumerate(bounds.budget);
    let bs = &elems.items;
    let rows: Vec<DimensionRow> = bs.iter().map(|a| row(mm, bs, a, bounds)).collect();
    let count = rows.len() as u64;

    let mut inclusion = Verdict::pass(count, elems.exhaustive);
    'inc: for (i, r) in rows.iter().enumerate() {
        for n in 0..=bounds.n_bound {
            if let Some(mw) = r.omega_fin[n] {
                if r.fin[n].is_none_or(|mf| mf > mw) {
                    inclusion = Verdict::fail(
                        Witness::new(
                            vec![("a".into(), r.element.clone()), ("n".into(), n.to_string())],
                            format!("D_omega at m={mw}"),
                            format!("D least m = {:?}", r.fin[n]),
                        )
                        .with_assignment(vec![i, n]),
                    );
                    break 'inc;
                }
            }
        }
    }

    let finitely_ranked = rows.iter().all(|r| r.rank.is_some());
    let equality = finitely_ranked.then(|| {
        match rows.iter().enumerate().find(|(_, r)| r.fin != r.omega_fin) {
            Some((i, r)) => Verdict::fail(
                Witness::new(
                    vec![("a".into(), r.element.clone())],
                    format!("fin {:?}", r.fin),
                    format!("omega_fin {:?}", r.omega_fin),
                )
                .with_assignment(vec![i]),
            ),
            None => Verdict::pass(count, elems.exhaustive),
        }
    });

    let mut coordinates = Verdict::pass(0, elems.exhaustive);
    let mut checked = 0u64;
    'coord: for (i, (a, r)) in bs.iter().zip(&rows).enumerate() {
        if !r.in_omega_fin() {
            continue;
        }
        for idx in 0..=bounds.n_bound {
            checked += 1;
            let c = mm.coordinate(a, idx);
            let cr = row(mm, bs, &c, bounds);
            if !cr.in_omega_fin() {
                coordinates = Verdict::fail(
                    Witness::new(
                        vec![("a".into(), r.element.clone()), ("i".into(), idx.to_string())],
                        format!("{c:?} omega_fin {:?}", cr.omega_fin),
                        "member of M_omegaFin".into(),
                    )
                    .with_assignment(vec![i, idx]),
                );
                break 'coord;
            }
        }
    }
    if coordinates.is_pass() {
        coordinates = Verdict::pass(checked, elems.exhaustive);
    }

    DimensionSets { rows, inclusion, equality, coordinates }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::merge::{MergeAlgebra, PointedMerge};
    use crate::mmonoid::{product_mmonoid, FiniteMonoid, MonoidFamily};

    #[test]
    fn unit_satisfies_d_omega_diagonal() {
        let p = product_mmonoid(MonoidFamily::constant(FiniteMonoid::cyclic(2)), 3).unwrap();
        let bounds = DimBounds { budget: 64, k_bound: 3 };
        for n in 0..4 {
            assert!(dim_predicate(&p, &p.one(), n, n, DimMode::DOmega, bounds).is_pass());
        }
    }

    #[test]
    fn monotone_in_n() {
        let p = product_mmonoid(MonoidFamily::constant(FiniteMonoid::cyclic(2)), 3).unwrap();
        let bounds = DimBounds { budget: 64, k_bound: 3 };
        for a in p.enumerate(64).items {
            for n in 0..4 {
                for m in 0..4 {
                    if dim_predicate(&p, &a, n, m, DimMode::D, bounds).is_pass() {
                        for n2 in 0..n {
                            assert!(dim_predicate(&p, &a, n2, m, DimMode::D, bounds).is_pass());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn product_sets_agree() {
        let p = product_mmonoid(MonoidFamily::constant(FiniteMonoid::cyclic(2)), 2).unwrap();
        let sets = dimension_sets(&p, DimSetBounds { budget: 16, n_bound: 2, m_bound: 3, k_bound: 3 });
        assert!(sets.inclusion.is_pass());
        assert!(sets.equality.as_ref().unwrap().is_pass());
        assert!(sets.coordinates.is_pass());
        assert!(sets.rows[0].in_omega_fin());
    }
}
