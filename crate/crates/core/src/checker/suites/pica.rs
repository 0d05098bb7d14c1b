// SPDX-License-Identifier: Apache-2.0

//! PICA (P1–P4, I1–I3) and NEUMANN_N. Neumann's axioms index the
//! constants from 1; over a PICA they are read on the domain `D`, with
//! `εᵢ = e_{i-1}` and `xᵢ = z_{i-1}`.

use std::sync::Arc;

use rayon::prelude::*;

use super::super::engine::{bind, eq_or, Entry, Law};
use super::super::TestDomain;
use super::intern;
use crate::pica::Pica;
use crate::seq::OmegaSeq;

struct Pools<P: Pica> {
    xs: Arc<Vec<P::Elem>>,
    zs: Arc<Vec<OmegaSeq<P::Elem>>>,
    complete: bool,
}

fn pools<P: Pica>(p: &P, dom: &TestDomain) -> Pools<P> {
    let xs = p.enumerate(dom.budget);
    let zs = p.enumerate_domain(dom.budget);
    Pools { complete: xs.exhaustive && zs.exhaustive, xs: Arc::new(xs.items), zs: Arc::new(zs.items) }
}

pub(crate) fn suite<'a, P: Pica>(p: &'a P, dom: &TestDomain) -> Vec<Entry<'a>> {
    let g = pools(p, dom);
    let (nx, nz, ni, c) = (g.xs.len(), g.zs.len(), dom.index_bound + 1, g.complete);
    let id = p.domain_base().id().to_string();
    let mut out: Vec<Entry<'a>> = Vec::new();

    let (xs, zs, id1) = (g.xs.clone(), g.zs.clone(), id.clone());
    out.push(
        Law::new("P1", vec![nz, ni, nx], c, move |a| {
            let (z, i, x) = (&zs[a[0]], a[1], &xs[a[2]]);
            let w = z.with(i, x.clone());
            eq_or(w.base().id(), id1.as_str(), || vec![bind("z", z), bind("i", &i), bind("a", x)])
        })
        .into(),
    );
    let (xs, zs) = (g.xs.clone(), g.zs.clone());
    out.push(
        Law::new("P2", vec![nx, nz], c, move |a| {
            let (x, z) = (&xs[a[0]], &zs[a[1]]);
            eq_or(p.q(x, z).is_ok(), true, || vec![bind("a", x), bind("z", z)])
        })
        .into(),
    );
    // The componentwise image lies over the domain base and agrees with a
    // direct evaluation past both supports.
    let (zs, id3) = (g.zs.clone(), id);
    out.push(
        Law::new("P3", vec![nz, nz], c, move |a| {
            let (y, z) = (&zs[a[0]], &zs[a[1]]);
            let w = p.componentwise(y, z);
            let reach = y.support_bound().max(z.support_bound()) + ni;
            let direct: Vec<P::Elem> = (0..reach).map(|i| p.q_unchecked(&y.entry(i), z)).collect();
            eq_or((w.base().id(), w.prefix(reach)), (id3.as_str(), direct), || vec![bind("y", y), bind("z", z)])
        })
        .into(),
    );
    out.push(
        Law::new("P4", vec![ni], true, move |a| {
            let i = a[0];
            eq_or(p.domain_base().at(i), p.e(i), || vec![bind("i", &i)])
        })
        .into(),
    );
    out.extend(identities(p, &g, ni, ["I1", "I2", "I3"], 0));
    out
}

pub(crate) fn neumann<'a, P: Pica>(p: &'a P, dom: &TestDomain) -> Vec<Entry<'a>> {
    let g = pools(p, dom);
    identities(p, &g, dom.index_bound + 1, ["N1", "N2", "N3"], 1)
}

/// The three identities, with index labels shifted by `offset`.
fn identities<'a, P: Pica>(p: &'a P, g: &Pools<P>, ni: usize, names: [&str; 3], offset: usize) -> Vec<Entry<'a>> {
    let (nx, nz, c) = (g.xs.len(), g.zs.len(), g.complete);
    let zs = g.zs.clone();
    let first = Law::new(names[0], vec![ni, nz], c, move |a| {
        let (i, y) = (a[0], &zs[a[1]]);
        eq_or(p.q_unchecked(&p.e(i), y), y.entry(i), || vec![bind("i", &(i + offset)), bind("y", y)])
    });
    let xs = g.xs.clone();
    let second = Law::new(names[1], vec![nx], c, move |a| {
        let x = &xs[a[0]];
        eq_or(p.q_unchecked(x, &OmegaSeq::new(&p.domain_base())), x.clone(), || vec![bind("a", x)])
    });
    let (xs, zs) = (g.xs.clone(), g.zs.clone());
    let mut third = Law::new(names[2], vec![nx, nz, nz], c, move |a| {
        let (x, y, z) = (&xs[a[0]], &zs[a[1]], &zs[a[2]]);
        eq_or(p.q_unchecked(&p.q_unchecked(x, y), z), p.q_unchecked(x, &p.componentwise(y, z)), || {
            vec![bind("a", x), bind("y", y), bind("z", z)]
        })
    });
    if c {
        if let Some(fast) = tabulated_third(p, &g.xs, &g.zs) {
            third = third.with_fast(fast);
        }
    }
    vec![first.into(), second.into(), third.into()]
}

/// Tables for `q` on `A × D` and for the componentwise image on `D × D`,
/// when both stay inside the pools.
fn tabulated_third<'a, P: Pica>(
    p: &'a P,
    xs: &[P::Elem],
    zs: &[OmegaSeq<P::Elem>],
) -> Option<impl Fn() -> Result<(), u64> + Send + Sync + 'a> {
    let (nx, nz) = (xs.len(), zs.len());
    let xid = intern(xs);
    let zid = intern(zs);
    let q: Option<Vec<u32>> =
        (0..nx * nz).into_par_iter().map(|i| xid.get(&p.q_unchecked(&xs[i / nz], &zs[i % nz])).copied()).collect();
    let cw: Option<Vec<u32>> =
        (0..nz * nz).into_par_iter().map(|i| zid.get(&p.componentwise(&zs[i / nz], &zs[i % nz])).copied()).collect();
    let (q, cw) = (q?, cw?);
    Some(move || {
        let hit = (0..nx * nz).into_par_iter().find_first(|&xy| {
            let (x, y) = (xy / nz, xy % nz);
            let qxy = q[xy] as usize;
            (0..nz).any(|z| q[qxy * nz + z] != q[x * nz + cw[y * nz + z] as usize])
        });
        match hit {
            None => Ok(()),
            Some(xy) => {
                let (x, y) = (xy / nz, xy % nz);
                let qxy = q[xy] as usize;
                let z = (0..nz).find(|&z| q[qxy * nz + z] != q[x * nz + cw[y * nz + z] as usize]).expect("hit");
                Err((xy * nz + z) as u64)
            }
        }
    })
}
