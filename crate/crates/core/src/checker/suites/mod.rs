// SPDX-License-Identifier: Apache-2.0

//! Law suites, one builder per suite id.

pub(crate) mod absclone;
pub(crate) mod clone;
pub(crate) mod merge;
pub(crate) mod monoid;
pub(crate) mod pica;

use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;

use super::engine::digits;

/// Index of every element of a finite pool.
pub(crate) fn intern<E: Clone + Eq + Hash>(xs: &[E]) -> HashMap<E, u32> {
    xs.iter().enumerate().map(|(i, x)| (x.clone(), i as u32)).collect()
}

/// Table of `f(x, y₀..y_{m-1})` as indices into the target pool, laid out
/// as `x·|Y|^m + Σ yᵢ·|Y|^{m-1-i}`. `None` when a value leaves the pool.
pub(crate) fn tabulate<E, F>(xs: &[E], ys: &[E], m: usize, target: &HashMap<F, u32>, f: impl Fn(&E, &[E]) -> F + Sync) -> Option<Vec<u32>>
where
    E: Clone + Sync,
    F: Eq + Hash + Sync,
{
    let ny = ys.len();
    let per = ny.checked_pow(m as u32)?;
    (0..xs.len() * per)
        .into_par_iter()
        .map(|i| {
            let args: Vec<E> = digits((i % per) as u64, ny, m).into_iter().map(|d| ys[d].clone()).collect();
            target.get(&f(&xs[i / per], &args)).copied()
        })
        .collect()
}

/// Sizes of the three sorts in `h(f(x, y⃗), z⃗) = g(x, h(y₀, z⃗), …)`.
#[derive(Clone, Copy)]
pub(crate) struct AssocShape {
    /// `|X|`, `|Y|`, `|Z|`, the sorts of `x`, `yᵢ`, `zⱼ`.
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
    /// Lengths of `y⃗` and `z⃗`.
    pub m: usize,
    pub n: usize,
}

impl AssocShape {
    pub fn points(&self) -> u64 {
        (self.nz as u64).pow(self.n as u32) * self.nx as u64 * (self.ny as u64).pow(self.m as u32)
    }
}

/// Exhaustive associativity over tables, in the stream order `z⃗, x, y⃗`.
/// `t_xy` tabulates `x, y⃗ ↦ Y`, `t_yz` tabulates `y, z⃗ ↦ Z` and `t_xz`
/// tabulates `x, w⃗ ↦ Z`. Returns the offset of the first failure.
pub(crate) fn assoc_first_failure(s: AssocShape, t_xy: &[u32], t_yz: &[u32], t_xz: &[u32]) -> Option<u64> {
    let zs = (s.nz as u64).pow(s.n as u32) as usize;
    let ym = s.ny.pow(s.m as u32);
    let zm = s.nz.pow(s.m as u32);
    (0..zs).into_par_iter().find_map_first(|zi| {
        // φ(y) = h(y, z⃗), and ψ(y⃗) is the index of φ∘y⃗ among Z^m.
        let phi: Vec<u32> = (0..s.ny).map(|y| t_yz[y * zs + zi]).collect();
        let mut psi = vec![0u32; ym];
        for (yi, slot) in psi.iter_mut().enumerate() {
            // Digits of yi, most significant first, mapped through φ.
            let mut r = yi;
            let mut acc = 0usize;
            let mut place = 1usize;
            for _ in 0..s.m {
                acc += phi[r % s.ny] as usize * place;
                place *= s.nz;
                r /= s.ny;
            }
            *slot = acc as u32;
        }
        for x in 0..s.nx {
            for yi in 0..ym {
                let lhs = phi[t_xy[x * ym + yi] as usize];
                let rhs = t_xz[x * zm + psi[yi] as usize];
                if lhs != rhs {
                    return Some(((zi * s.nx + x) * ym + yi) as u64);
                }
            }
        }
        None
    })
}
