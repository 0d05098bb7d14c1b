// SPDX-License-Identifier: Apache-2.0

//! MONOID, MMON_L1, CM_L2, AM_L3 and AM_L4.

use super::super::engine::{bind, eq_or, Entry, Law};
use super::super::TestDomain;
use super::merge::merge_grid;
use crate::mmonoid::MMonoid;

pub(crate) fn monoid<'a, M: MMonoid>(m: &'a M, dom: &TestDomain) -> Vec<Entry<'a>> {
    let g = merge_grid(m, dom);
    let (nx, c) = (g.xs.len(), g.complete);
    let xs = g.xs.clone();
    let assoc = Law::new("associative", vec![nx, nx, nx], c, move |a| {
        let (x, y, z) = (&xs[a[0]], &xs[a[1]], &xs[a[2]]);
        eq_or(m.mul(&m.mul(x, y), z), m.mul(x, &m.mul(y, z)), || vec![bind("x", x), bind("y", y), bind("z", z)])
    });
    let xs = g.xs.clone();
    let unit = Law::new("unit", vec![nx], c, move |a| {
        let (x, one) = (&xs[a[0]], m.one());
        eq_or((m.mul(&one, x), m.mul(x, &one)), (x.clone(), x.clone()), || vec![bind("x", x)])
    });
    vec![assoc.into(), unit.into()]
}

pub(crate) fn l1<'a, M: MMonoid>(m: &'a M, dom: &TestDomain) -> Vec<Entry<'a>> {
    let g = merge_grid(m, dom);
    let (nx, ni, c) = (g.xs.len(), g.idx, g.complete);
    let xs = g.xs.clone();
    let l1 = Law::new("L1", vec![ni, nx, nx, nx], c, move |a| {
        let (n, x, y, z) = (a[0], &xs[a[1]], &xs[a[2]], &xs[a[3]]);
        eq_or(m.mul(&m.star(n, x, y), z), m.star(n, &m.mul(x, z), &m.mul(y, z)), || {
            vec![bind("n", &n), bind("x", x), bind("y", y), bind("z", z)]
        })
    });
    let xs = g.xs.clone();
    let left = Law::new("restrict_mul_left", vec![ni, nx, nx], c, move |a| {
        let (n, x, y) = (a[0], &xs[a[1]], &xs[a[2]]);
        eq_or(m.restrict_lt(&m.mul(&m.restrict_lt(x, n), y), n), m.restrict_lt(&m.mul(x, y), n), || {
            vec![bind("n", &n), bind("x", x), bind("y", y)]
        })
    });
    let xs = g.xs.clone();
    let both = Law::new("restrict_mul_both", vec![ni, nx, nx], c, move |a| {
        let (n, x, y) = (a[0], &xs[a[1]], &xs[a[2]]);
        let yn = m.restrict_lt(y, n);
        eq_or(m.mul(&m.restrict_lt(x, n), &yn), m.restrict_lt(&m.mul(x, &yn), n), || {
            vec![bind("n", &n), bind("x", x), bind("y", y)]
        })
    });
    vec![l1.into(), left.into(), both.into()]
}

pub(crate) fn l2<'a, M: MMonoid>(m: &'a M, dom: &TestDomain) -> Vec<Entry<'a>> {
    let g = merge_grid(m, dom);
    let (nx, ni, np, c) = (g.xs.len(), g.idx, g.perms.len(), g.complete);
    let (xs, perms) = (g.xs.clone(), g.perms.clone());
    let l2 = Law::new("L2", vec![np, nx, nx], c, move |a| {
        let (s, x, y) = (&perms[a[0]], &xs[a[1]], &xs[a[2]]);
        eq_or(m.mul(&m.permute(s, x), y), m.permute(s, &m.mul(x, y)), || vec![bind("sigma", s), bind("x", x), bind("y", y)])
    });
    let (xs, perms) = (g.xs.clone(), g.perms.clone());
    let unit_form = Law::new("L2.unit_form", vec![np, nx], c, move |a| {
        let (s, x) = (&perms[a[0]], &xs[a[1]]);
        eq_or(m.permute(s, x), m.mul(&m.permute(s, &m.one()), x), || vec![bind("sigma", s), bind("x", x)])
    });
    let xs = g.xs.clone();
    let coord_unit = Law::new("coord_via_unit", vec![ni, nx], c, move |a| {
        let (n, x) = (a[0], &xs[a[1]]);
        let one_n = m.coordinate(&m.one(), n);
        eq_or(m.coordinate(x, n), m.restrict_lt(&m.mul(&one_n, x), 1), || vec![bind("n", &n), bind("x", x)])
    });
    let xs = g.xs.clone();
    let coord_mul = Law::new("coord_mul", vec![ni, nx, nx], c, move |a| {
        let (n, x, y) = (a[0], &xs[a[1]], &xs[a[2]]);
        eq_or(m.coordinate(&m.mul(x, y), n), m.restrict_lt(&m.mul(&m.coordinate(x, n), y), 1), || {
            vec![bind("n", &n), bind("x", x), bind("y", y)]
        })
    });
    // σ̄(1)·τ̄(1) = (τ∘σ)‾(1) and σ̄(1)·(σ⁻¹)‾(1) = 1.
    let perms = g.perms.clone();
    let group = Law::new("unit_perms_group", vec![np, np], true, move |a| {
        let (s, t) = (&perms[a[0]], &perms[a[1]]);
        let one = m.one();
        let lhs = (m.mul(&m.permute(s, &one), &m.permute(t, &one)), m.mul(&m.permute(s, &one), &m.permute(&s.inverse(), &one)));
        let rhs = (m.permute(&t.compose(s), &one), one.clone());
        eq_or(lhs, rhs, || vec![bind("sigma", s), bind("tau", t)])
    });
    vec![l2.into(), unit_form.into(), coord_unit.into(), coord_mul.into(), group.into()]
}

pub(crate) fn l3<'a, M: MMonoid>(m: &'a M, dom: &TestDomain) -> Vec<Entry<'a>> {
    let g = merge_grid(m, dom);
    let (nx, np, c) = (g.xs.len(), g.perms.len(), g.complete);
    let (xs, perms) = (g.xs.clone(), g.perms.clone());
    let l3 = Law::new("L3", vec![np, nx, nx], c, move |a| {
        let (s, x, y) = (&perms[a[0]], &xs[a[1]], &xs[a[2]]);
        eq_or(m.permute(s, &m.mul(x, y)), m.mul(&m.permute(s, x), &m.permute(s, y)), || {
            vec![bind("sigma", s), bind("x", x), bind("y", y)]
        })
    });
    vec![l3.into()]
}

pub(crate) fn l4<'a, M: MMonoid>(m: &'a M, dom: &TestDomain) -> Vec<Entry<'a>> {
    let g = merge_grid(m, dom);
    let (nx, ni, c) = (g.xs.len(), g.idx, g.complete);
    let xs = g.xs.clone();
    let l4 = Law::new("L4", vec![ni, nx, nx], c, move |a| {
        let (n, x, y) = (a[0], &xs[a[1]], &xs[a[2]]);
        eq_or(m.restrict_lt(&m.mul(x, y), n), m.mul(&m.restrict_lt(x, n), &m.restrict_lt(y, n)), || {
            vec![bind("n", &n), bind("x", x), bind("y", y)]
        })
    });
    vec![l4.into()]
}
