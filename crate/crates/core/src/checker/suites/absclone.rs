// SPDX-License-Identifier: Apache-2.0

//! ABSCLONE: associativity, right unit and left unit of `q_n^k`, and the
//! `+k` lifting identities.

use std::collections::HashMap;
use std::sync::Arc;

use super::super::engine::{bind, digits, eq_or, Blocks, Entry, Law};
use super::super::TestDomain;
use super::{assoc_first_failure, intern, tabulate, AssocShape};
use crate::absclone::{lift_plus, AbstractClone};

pub(crate) fn suite<'a, B: AbstractClone>(b: &'a B, dom: &TestDomain) -> Vec<Entry<'a>> {
    let top = b.sort_bound().min(dom.index_bound);
    let sorts: Vec<_> = (0..=top).map(|s| b.sort(s, dom.budget)).collect();
    let complete = sorts.iter().all(|s| s.exhaustive);
    let sorts: Arc<Vec<Vec<B::Elem>>> = Arc::new(sorts.into_iter().map(|s| s.items).collect());
    let size = |s: usize| sorts[s].len() as u64;
    let mut out: Vec<Entry<'a>> = Vec::new();

    // Associativity with x ∈ B_m, yᵢ ∈ B_n, zⱼ ∈ B_k; stream order z⃗, x, y⃗.
    let triples: Vec<(usize, usize, usize)> =
        (0..=top).flat_map(|m| (0..=top).flat_map(move |n| (0..=top).map(move |k| (m, n, k)))).collect();
    let shape = |(m, n, k): (usize, usize, usize)| AssocShape {
        nx: size(m) as usize,
        ny: size(n) as usize,
        nz: size(k) as usize,
        m,
        n,
    };
    let blocks = Blocks::new(triples.iter().map(|&t| shape(t).points()));
    let (bl, v, tr) = (blocks.clone(), sorts.clone(), triples.clone());
    let mut assoc = Law::new("associativity", vec![blocks.total() as usize], complete, move |a| {
        let (bi, r) = bl.locate(a[0] as u64);
        let (m, n, k) = tr[bi];
        let (nm, nn, nk) = (v[m].len(), v[n].len(), v[k].len());
        let ym = (nn as u64).pow(m as u32);
        let (yi, rest) = (r % ym, r / ym);
        let (x, zi) = (&v[m][(rest % nm as u64) as usize], rest / nm as u64);
        let ys: Vec<B::Elem> = digits(yi, nn, m).into_iter().map(|d| v[n][d].clone()).collect();
        let zs: Vec<B::Elem> = digits(zi, nk, n).into_iter().map(|d| v[k][d].clone()).collect();
        let lhs = b.q(k, &b.q(n, x, &ys), &zs);
        let inner: Vec<B::Elem> = ys.iter().map(|y| b.q(k, y, &zs)).collect();
        eq_or(lhs, b.q(k, x, &inner), || {
            vec![bind("m", &m), bind("n", &n), bind("k", &k), bind("x", x), bind("y", &ys), bind("z", &zs)]
        })
    });
    if complete {
        let ids: Vec<_> = sorts.iter().map(|s| intern(s)).collect();
        let mut tables: HashMap<(usize, usize), Vec<u32>> = HashMap::new();
        let mut ok = true;
        'build: for s in 0..=top {
            for t in 0..=top {
                match tabulate(&sorts[s], &sorts[t], s, &ids[t], |x, ys| b.q(t, x, ys)) {
                    Some(tab) => {
                        tables.insert((s, t), tab);
                    }
                    None => {
                        ok = false;
                        break 'build;
                    }
                }
            }
        }
        if ok {
            let shapes: Vec<AssocShape> = triples.iter().map(|&t| shape(t)).collect();
            assoc = assoc.with_fast(move || {
                for (bi, &(m, n, k)) in triples.iter().enumerate() {
                    let (txy, tyz, txz) = (&tables[&(m, n)], &tables[&(n, k)], &tables[&(m, k)]);
                    if let Some(off) = assoc_first_failure(shapes[bi], txy, tyz, txz) {
                        return Err(blocks.start(bi) + off);
                    }
                }
                Ok(())
            });
        }
    }
    out.push(assoc.into());

    let blocks = Blocks::new((0..=top).map(size));
    let (bl, v) = (blocks.clone(), sorts.clone());
    out.push(
        Law::new("right_unit", vec![blocks.total() as usize], complete, move |a| {
            let (n, r) = bl.locate(a[0] as u64);
            let x = &v[n][r as usize];
            let es: Vec<B::Elem> = (0..n).map(|i| b.e(n, i)).collect();
            eq_or(b.q(n, x, &es), x.clone(), || vec![bind("n", &n), bind("x", x)])
        })
        .into(),
    );

    // Left unit over (n ≥ 1, k, i < n, y⃗ ∈ B_kⁿ).
    let pairs: Vec<(usize, usize)> = (1..=top).flat_map(|n| (0..=top).map(move |k| (n, k))).collect();
    let blocks = Blocks::new(pairs.iter().map(|&(n, k)| n as u64 * size(k).pow(n as u32)));
    let (bl, v) = (blocks.clone(), sorts.clone());
    out.push(
        Law::new("left_unit", vec![blocks.total() as usize], complete, move |a| {
            let (bi, r) = bl.locate(a[0] as u64);
            let (n, k) = pairs[bi];
            let per = (v[k].len() as u64).pow(n as u32);
            let i = (r / per) as usize;
            let ys: Vec<B::Elem> = digits(r % per, v[k].len(), n).into_iter().map(|d| v[k][d].clone()).collect();
            eq_or(b.q(k, &b.e(n, i), &ys), ys[i].clone(), || vec![bind("n", &n), bind("k", &k), bind("i", &i), bind("y", &ys)])
        })
        .into(),
    );

    let lifts: Vec<(usize, usize, usize)> = (0..=top)
        .flat_map(|n| (0..=top - n).flat_map(move |k| (0..=top - n - k).map(move |l| (n, k, l))))
        .collect();
    let blocks = Blocks::new(lifts.iter().map(|&(n, _, _)| size(n)));
    let (bl, v) = (blocks.clone(), sorts.clone());
    out.push(
        Law::new("lift_compose", vec![blocks.total() as usize], complete, move |a| {
            let (bi, r) = bl.locate(a[0] as u64);
            let (n, k, l) = lifts[bi];
            let x = &v[n][r as usize];
            eq_or(lift_plus(b, &lift_plus(b, x, k), l), lift_plus(b, x, k + l), || {
                vec![bind("n", &n), bind("k", &k), bind("l", &l), bind("x", x)]
            })
        })
        .into(),
    );

    let projs: Vec<(usize, usize, usize)> =
        (1..=top).flat_map(|n| (0..n).flat_map(move |i| (0..=top - n).map(move |k| (n, i, k)))).collect();
    out.push(
        Law::new("lift_projection", vec![projs.len()], true, move |a| {
            let (n, i, k) = projs[a[0]];
            eq_or(lift_plus(b, &b.e(n, i), k), b.e(n + k, i), || vec![bind("n", &n), bind("i", &i), bind("k", &k)])
        })
        .into(),
    );
    out
}
