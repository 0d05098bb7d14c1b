// SPDX-License-Identifier: Apache-2.0

//! CA_C: the clone-algebra identities for `qₙ` and `eₙ`.

use std::sync::Arc;

use super::super::engine::{bind, digits, eq_or, pool, Blocks, Entry, Law};
use super::super::TestDomain;
use super::{assoc_first_failure, intern, tabulate, AssocShape};
use crate::clonealg::CloneAlgebra;

pub(crate) fn suite<'a, C: CloneAlgebra>(c: &'a C, dom: &TestDomain) -> Vec<Entry<'a>> {
    let (xs, complete) = pool(c.enumerate(dom.budget), dom.budget, dom.seed, |r| c.sample(r));
    let xs = Arc::new(xs);
    let nx = xs.len();
    let ni = dom.index_bound + 1;
    let pw = move |n: usize| (nx as u64).saturating_pow(n as u32);
    let mut out: Vec<Entry<'a>> = Vec::new();

    // C1: n ≥ 1, i < n, x⃗ ∈ Cⁿ.
    let blocks = Blocks::new((0..ni).map(|n| n as u64 * pw(n)));
    let (b, v) = (blocks.clone(), xs.clone());
    out.push(
        Law::new("C1", vec![blocks.total() as usize], complete, move |a| {
            let (n, r) = b.locate(a[0] as u64);
            let (i, args) = ((r / pw(n)) as usize, pick(&v, digits(r % pw(n), v.len(), n)));
            eq_or(c.q(&c.e(i), &args), args[i].clone(), || vec![bind("n", &n), bind("i", &i), bind("x", &args)])
        })
        .into(),
    );

    // C2: j ∈ n..n+ni.
    let blocks = Blocks::new((0..ni).map(|n| ni as u64 * pw(n)));
    let (b, v) = (blocks.clone(), xs.clone());
    out.push(
        Law::new("C2", vec![blocks.total() as usize], complete, move |a| {
            let (n, r) = b.locate(a[0] as u64);
            let (j, args) = (n + (r / pw(n)) as usize, pick(&v, digits(r % pw(n), v.len(), n)));
            eq_or(c.q(&c.e(j), &args), c.e(j), || vec![bind("n", &n), bind("j", &j), bind("x", &args)])
        })
        .into(),
    );

    let v = xs.clone();
    out.push(
        Law::new("C3", vec![ni, nx], complete, move |a| {
            let (n, x) = (a[0], &v[a[1]]);
            let es: Vec<C::Elem> = (0..n).map(|i| c.e(i)).collect();
            eq_or(c.q(x, &es), x.clone(), || vec![bind("n", &n), bind("x", x)])
        })
        .into(),
    );

    // C4: n < k ≤ ni, with x and y⃗ ∈ Cⁿ.
    let pairs: Vec<(usize, usize)> = (0..ni).flat_map(|n| (n + 1..=ni).map(move |k| (n, k))).collect();
    let blocks = Blocks::new(pairs.iter().map(|&(n, _)| pw(n + 1)));
    let (b, v) = (blocks.clone(), xs.clone());
    out.push(
        Law::new("C4", vec![blocks.total() as usize], complete, move |a| {
            let (bi, r) = b.locate(a[0] as u64);
            let (n, k) = pairs[bi];
            let d = digits(r, v.len(), n + 1);
            let (x, ys) = (&v[d[0]], pick(&v, d[1..].to_vec()));
            let padded: Vec<C::Elem> = ys.iter().cloned().chain((n..k).map(|i| c.e(i))).collect();
            eq_or(c.q(x, &ys), c.q(x, &padded), || vec![bind("n", &n), bind("k", &k), bind("x", x), bind("y", &ys)])
        })
        .into(),
    );

    // C5, stream order per n: z⃗, x, y⃗.
    let blocks = Blocks::new((0..ni).map(|n| pw(2 * n + 1)));
    let (b, v) = (blocks.clone(), xs.clone());
    let mut c5 = Law::new("C5", vec![blocks.total() as usize], complete, move |a| {
        let (n, r) = b.locate(a[0] as u64);
        let d = digits(r, v.len(), 2 * n + 1);
        let (zs, x, ys) = (pick(&v, d[..n].to_vec()), &v[d[n]], pick(&v, d[n + 1..].to_vec()));
        let lhs = c.q(&c.q(x, &ys), &zs);
        let inner: Vec<C::Elem> = ys.iter().map(|y| c.q(y, &zs)).collect();
        eq_or(lhs, c.q(x, &inner), || vec![bind("n", &n), bind("x", x), bind("y", &ys), bind("z", &zs)])
    });
    if complete {
        let ids = intern(&xs);
        let tables: Option<Vec<Vec<u32>>> = (0..ni).map(|n| tabulate(&xs, &xs, n, &ids, |x, ys| c.q(x, ys))).collect();
        if let Some(tables) = tables {
            c5 = c5.with_fast(move || {
                for (n, t) in tables.iter().enumerate() {
                    let shape = AssocShape { nx, ny: nx, nz: nx, m: n, n };
                    if let Some(off) = assoc_first_failure(shape, t, t, t) {
                        return Err(blocks.start(n) + off);
                    }
                }
                Ok(())
            });
        }
    }
    out.push(c5.into());
    out
}

fn pick<E: Clone>(v: &[E], idx: Vec<usize>) -> Vec<E> {
    idx.into_iter().map(|i| v[i].clone()).collect()
}
