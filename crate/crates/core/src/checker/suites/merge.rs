// SPDX-License-Identifier: Apache-2.0

//! MERGE_B: the merge-algebra axioms and the derived splice, restriction
//! and coordinate identities.

use std::sync::Arc;

use super::super::engine::{bind, eq_or, pool, Entry, Law};
use super::super::TestDomain;
use crate::merge::{perms_graded, PointedMerge};
use crate::seq::FinPerm;

/// Elements, splice indices and permutations shared by the merge laws.
pub(crate) struct MergeGrid<E> {
    pub xs: Arc<Vec<E>>,
    pub complete: bool,
    pub idx: usize,
    pub perms: Arc<Vec<FinPerm>>,
}

pub(crate) fn merge_grid<P: PointedMerge>(p: &P, dom: &TestDomain) -> MergeGrid<P::Elem> {
    let (xs, complete) = pool(p.enumerate(dom.budget), dom.budget, dom.seed, |r| p.sample(r));
    MergeGrid { xs: Arc::new(xs), complete, idx: dom.index_bound + 1, perms: Arc::new(perms_graded(dom.perm_bound)) }
}

/// `(((σ̄f₀ ⋆₁ σ̄f₁) ⋆₂ …) ⋆_{k-1} σ̄f_{k-1}) ⋆ₖ y` with `fᵢ = x` iff
/// `σ(i) < n`. The fold over `k = 0` is empty and the result is `y`.
fn b6_rhs<P: PointedMerge>(p: &P, n: usize, k: usize, sigma: &FinPerm, x: &P::Elem, y: &P::Elem) -> P::Elem {
    let f = |i: usize| if sigma.apply(i) < n { x } else { y };
    if k == 0 {
        return y.clone();
    }
    let mut acc = p.permute(sigma, f(0));
    for i in 1..k {
        acc = p.star(i, &acc, &p.permute(sigma, f(i)));
    }
    p.star(k, &acc, y)
}

pub(crate) fn suite<'a, P: PointedMerge>(p: &'a P, dom: &TestDomain) -> Vec<Entry<'a>> {
    let g = merge_grid(p, dom);
    let (nx, ni, np) = (g.xs.len(), g.idx, g.perms.len());
    let c = g.complete;
    let mut out: Vec<Entry<'a>> = Vec::new();

    let xs = g.xs.clone();
    out.push(
        Law::new("B1.associative", vec![ni, nx, nx, nx], c, move |a| {
            let (n, x, y, z) = (a[0], &xs[a[1]], &xs[a[2]], &xs[a[3]]);
            eq_or(p.star(n, &p.star(n, x, y), z), p.star(n, x, &p.star(n, y, z)), || {
                vec![bind("n", &n), bind("x", x), bind("y", y), bind("z", z)]
            })
        })
        .into(),
    );
    let xs = g.xs.clone();
    out.push(
        Law::new("B1.idempotent", vec![ni, nx], c, move |a| {
            let (n, x) = (a[0], &xs[a[1]]);
            eq_or(p.star(n, x, x), x.clone(), || vec![bind("n", &n), bind("x", x)])
        })
        .into(),
    );
    let xs = g.xs.clone();
    out.push(
        Law::new("B2", vec![nx, nx], c, move |a| {
            let (x, y) = (&xs[a[0]], &xs[a[1]]);
            eq_or(p.star(0, x, y), y.clone(), || vec![bind("x", x), bind("y", y)])
        })
        .into(),
    );

    let ge: Arc<Vec<(usize, usize)>> =
        Arc::new((0..ni).flat_map(|n| (n..ni).map(move |k| (n, k))).collect());
    let lt: Arc<Vec<(usize, usize)>> =
        Arc::new((0..ni).flat_map(|n| (0..n).map(move |k| (n, k))).collect());
    let (xs, pairs) = (g.xs.clone(), ge.clone());
    out.push(
        Law::new("B3.left", vec![pairs.len(), nx, nx, nx], c, move |a| {
            let ((n, k), x, y, z) = (pairs[a[0]], &xs[a[1]], &xs[a[2]], &xs[a[3]]);
            eq_or(p.star(n, &p.star(k, x, y), z), p.star(n, x, z), || {
                vec![bind("n", &n), bind("k", &k), bind("x", x), bind("y", y), bind("z", z)]
            })
        })
        .into(),
    );
    let (xs, pairs) = (g.xs.clone(), ge);
    out.push(
        Law::new("B3.right", vec![pairs.len(), nx, nx, nx], c, move |a| {
            let ((n, k), x, y, z) = (pairs[a[0]], &xs[a[1]], &xs[a[2]], &xs[a[3]]);
            eq_or(p.star(k, x, &p.star(n, y, z)), p.star(k, x, z), || {
                vec![bind("n", &n), bind("k", &k), bind("x", x), bind("y", y), bind("z", z)]
            })
        })
        .into(),
    );
    let (xs, pairs) = (g.xs.clone(), lt);
    out.push(
        Law::new("B4", vec![pairs.len(), nx, nx, nx], c, move |a| {
            let ((n, k), x, y, z) = (pairs[a[0]], &xs[a[1]], &xs[a[2]], &xs[a[3]]);
            eq_or(p.star(n, &p.star(k, x, y), z), p.star(k, x, &p.star(n, y, z)), || {
                vec![bind("n", &n), bind("k", &k), bind("x", x), bind("y", y), bind("z", z)]
            })
        })
        .into(),
    );

    let (xs, perms) = (g.xs.clone(), g.perms.clone());
    out.push(
        Law::new("B5.compose", vec![np, np, nx], c, move |a| {
            let (s, t, x) = (&perms[a[0]], &perms[a[1]], &xs[a[2]]);
            eq_or(p.permute(s, &p.permute(t, x)), p.permute(&t.compose(s), x), || {
                vec![bind("sigma", s), bind("tau", t), bind("x", x)]
            })
        })
        .into(),
    );
    let xs = g.xs.clone();
    out.push(
        Law::new("B5.identity", vec![nx], c, move |a| {
            let x = &xs[a[0]];
            eq_or(p.permute(&FinPerm::identity(), x), x.clone(), || vec![bind("x", x)])
        })
        .into(),
    );

    // σ ranges over permutations of k, restricted to the domain bound.
    let b6: Arc<Vec<(usize, usize, FinPerm)>> = Arc::new(
        (0..ni)
            .flat_map(|k| {
                let ps = perms_graded(k.min(dom.perm_bound));
                (0..=k).flat_map(move |n| ps.clone().into_iter().map(move |s| (n, k, s)))
            })
            .collect(),
    );
    let xs = g.xs.clone();
    out.push(
        Law::new("B6", vec![b6.len(), nx, nx], c, move |a| {
            let ((n, k, s), x, y) = (&b6[a[0]], &xs[a[1]], &xs[a[2]]);
            eq_or(p.permute(s, &p.star(*n, x, y)), b6_rhs(p, *n, *k, s, x, y), || {
                vec![bind("n", n), bind("k", k), bind("sigma", s), bind("x", x), bind("y", y)]
            })
        })
        .into(),
    );

    // σ and τ agree on the band m ≤ i < n.
    let mut b7 = Vec::new();
    for m in 0..ni {
        for n in 0..ni {
            for (i, s) in g.perms.iter().enumerate() {
                for (j, t) in g.perms.iter().enumerate() {
                    if (m..n).all(|t_| s.apply(t_) == t.apply(t_)) {
                        b7.push((m, n, i, j));
                    }
                }
            }
        }
    }
    let b7 = Arc::new(b7);
    let (xs, perms) = (g.xs.clone(), g.perms.clone());
    out.push(
        Law::new("B7", vec![b7.len(), nx, nx, nx], c, move |a| {
            let ((m, n, si, ti), x, y, z) = (b7[a[0]], &xs[a[1]], &xs[a[2]], &xs[a[3]]);
            let (s, t) = (&perms[si], &perms[ti]);
            eq_or(p.star(n, &p.star(m, z, &p.permute(s, x)), y), p.star(n, &p.star(m, z, &p.permute(t, x)), y), || {
                vec![bind("m", &m), bind("n", &n), bind("sigma", s), bind("tau", t), bind("x", x), bind("y", y), bind("z", z)]
            })
        })
        .into(),
    );

    derived_laws(p, &g, &mut out);
    out
}

fn derived_laws<'a, P: PointedMerge>(p: &'a P, g: &MergeGrid<P::Elem>, out: &mut Vec<Entry<'a>>) {
    let (nx, ni) = (g.xs.len(), g.idx);
    let c = g.complete;

    let xs = g.xs.clone();
    out.push(
        Law::new("interchange", vec![ni, ni, nx, nx, nx, nx], c, move |a| {
            let (n, k) = (a[0], a[1]);
            let (x, y, x2, y2) = (&xs[a[2]], &xs[a[3]], &xs[a[4]], &xs[a[5]]);
            let lhs = p.star(k, &p.star(n, x, y), &p.star(n, x2, y2));
            let rhs = p.star(n, &p.star(k, x, x2), &p.star(k, y, y2));
            eq_or(lhs, rhs, || vec![bind("n", &n), bind("k", &k), bind("x", x), bind("y", y), bind("x'", x2), bind("y'", y2)])
        })
        .into(),
    );

    // (n, σ, σ permutes n) and (n, σ, σ fixes n pointwise).
    let split: Arc<Vec<(usize, usize, bool)>> = Arc::new(
        (0..ni)
            .flat_map(|n| {
                g.perms.iter().enumerate().filter_map(move |(i, s)| {
                    let inside = s.dom_bound() <= n;
                    let outside = s.graph().keys().all(|&j| j >= n);
                    (inside || outside).then_some((n, i, inside))
                })
            })
            .collect(),
    );
    let (xs, perms, sp) = (g.xs.clone(), g.perms.clone(), split.clone());
    out.push(
        Law::new("perm_splice_one_side", vec![sp.len(), nx, nx], c, move |a| {
            let ((n, si, inside), x, y) = (sp[a[0]], &xs[a[1]], &xs[a[2]]);
            let s = &perms[si];
            let rhs = if inside { p.star(n, &p.permute(s, x), y) } else { p.star(n, x, &p.permute(s, y)) };
            eq_or(p.permute(s, &p.star(n, x, y)), rhs, || vec![bind("n", &n), bind("sigma", s), bind("x", x), bind("y", y)])
        })
        .into(),
    );
    let (xs, perms, sp) = (g.xs.clone(), g.perms.clone(), split);
    out.push(
        Law::new("perm_splice_both", vec![sp.len(), nx, nx], c, move |a| {
            let ((n, si, _), x, y) = (sp[a[0]], &xs[a[1]], &xs[a[2]]);
            let s = &perms[si];
            eq_or(p.permute(s, &p.star(n, x, y)), p.star(n, &p.permute(s, x), &p.permute(s, y)), || {
                vec![bind("n", &n), bind("sigma", s), bind("x", x), bind("y", y)]
            })
        })
        .into(),
    );

    let xs = g.xs.clone();
    out.push(
        Law::new("restrict_nested", vec![ni, ni, nx], c, move |a| {
            let (n, k, x) = (a[0], a[1], &xs[a[2]]);
            let inner = p.restrict_lt(x, n);
            eq_or(p.restrict_lt(&inner, n + k), inner.clone(), || vec![bind("n", &n), bind("k", &k), bind("x", x)])
        })
        .into(),
    );
    out.push(
        Law::new("restrict_one", vec![ni], true, move |a| {
            let one = p.one();
            eq_or((p.restrict_lt(&one, a[0]), p.restrict_ge(&one, a[0])), (one.clone(), one.clone()), || vec![bind("n", &a[0])])
        })
        .into(),
    );

    let (xs, perms) = (g.xs.clone(), g.perms.clone());
    out.push(
        Law::new("coord_perm", vec![perms.len(), ni, nx], c, move |a| {
            let (s, k, x) = (&perms[a[0]], a[1], &xs[a[2]]);
            eq_or(p.coordinate(&p.permute(s, x), k), p.coordinate(x, s.apply(k)), || {
                vec![bind("sigma", s), bind("k", &k), bind("x", x)]
            })
        })
        .into(),
    );
    let xs = g.xs.clone();
    out.push(
        Law::new("coord_splice", vec![ni, ni, nx, nx], c, move |a| {
            let (k, n, x, y) = (a[0], a[1], &xs[a[2]], &xs[a[3]]);
            let want = if n < k { p.coordinate(x, n) } else { p.coordinate(y, n) };
            eq_or(p.coordinate(&p.star(k, x, y), n), want, || vec![bind("k", &k), bind("n", &n), bind("x", x), bind("y", y)])
        })
        .into(),
    );
    let xs = g.xs.clone();
    out.push(
        Law::new("coord_decomposition", vec![ni, nx, nx], c, move |a| {
            let (n, x, y) = (a[0], &xs[a[1]], &xs[a[2]]);
            let rhs = if n == 0 {
                y.clone()
            } else {
                let mut acc = p.coordinate(x, 0);
                for i in 1..n {
                    acc = p.star(i, &acc, &p.permute(&FinPerm::transposition(i, 0), &p.coordinate(x, i)));
                }
                p.star(n, &acc, y)
            };
            eq_or(p.star(n, x, y), rhs, || vec![bind("n", &n), bind("x", x), bind("y", y)])
        })
        .into(),
    );
}
