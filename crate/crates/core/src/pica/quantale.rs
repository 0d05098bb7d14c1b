// SPDX-License-Identifier: Apache-2.0

//! Finite quantales and the PICA of finitely supported `Q`-columns acted
//! on by column-indexed matrices.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Pica, PicaError};
use crate::seq::{enumerate_seqs, BaseSeq, Enumeration, OmegaSeq};

/// `(Q, ∨, •, 1, 0)` on `{0..size-1}` with `0` the bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuantale {
    size: u8,
    join: Arc<Vec<u8>>,
    mul: Arc<Vec<u8>>,
    unit: u8,
    bottom: u8,
}

impl FiniteQuantale {
    pub fn new(size: u8, join: Vec<u8>, mul: Vec<u8>, unit: u8, bottom: u8) -> Result<Self, PicaError> {
        let n = size as usize;
        let bad = |m: String| Err(PicaError::NotAQuantale(m));
        if join.len() != n * n || mul.len() != n * n {
            return bad("tables must have size² entries".into());
        }
        if unit >= size || bottom >= size || join.iter().chain(&mul).any(|&v| v >= size) {
            return bad("value outside the carrier".into());
        }
        let q = FiniteQuantale { size, join: Arc::new(join), mul: Arc::new(mul), unit, bottom };
        for a in 0..size {
            if q.join(a, a) != a || q.join(a, bottom) != a {
                return bad(format!("join is not idempotent with bottom {bottom} at {a}"));
            }
            if q.mul(a, unit) != a || q.mul(unit, a) != a {
                return bad(format!("{unit} is not a unit at {a}"));
            }
            if q.mul(a, bottom) != bottom || q.mul(bottom, a) != bottom {
                return bad(format!("bottom does not annihilate {a}"));
            }
            for b in 0..size {
                if q.join(a, b) != q.join(b, a) {
                    return bad(format!("join not commutative at ({a},{b})"));
                }
                for c in 0..size {
                    if q.join(q.join(a, b), c) != q.join(a, q.join(b, c)) {
                        return bad(format!("join not associative at ({a},{b},{c})"));
                    }
                    if q.mul(q.mul(a, b), c) != q.mul(a, q.mul(b, c)) {
                        return bad(format!("• not associative at ({a},{b},{c})"));
                    }
                    if q.mul(a, q.join(b, c)) != q.join(q.mul(a, b), q.mul(a, c))
                        || q.mul(q.join(b, c), a) != q.join(q.mul(b, a), q.mul(c, a))
                    {
                        return bad(format!("• does not distribute over joins at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(q)
    }

    /// `({0,1}, ∨, ∧, 1, 0)`.
    pub fn boolean() -> Self {
        FiniteQuantale::new(2, vec![0, 1, 1, 1], vec![0, 0, 0, 1], 1, 0).expect("boolean quantale")
    }

    pub fn size(&self) -> u8 {
        self.size
    }

    pub fn unit(&self) -> u8 {
        self.unit
    }

    pub fn bottom(&self) -> u8 {
        self.bottom
    }

    pub fn join(&self, a: u8, b: u8) -> u8 {
        self.join[a as usize * self.size as usize + b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.size as usize + b as usize]
    }
}

pub type Column = OmegaSeq<u8>;

/// Carrier: finitely supported columns. Domain: matrices `M = (M⁰, M¹, …)`
/// equal to the unit columns outside finitely many positions.
#[derive(Clone)]
pub struct QuantalePica {
    q: FiniteQuantale,
    zero: Arc<BaseSeq<u8>>,
    units: Arc<BaseSeq<Column>>,
    support_bound: usize,
}

pub fn quantale_pica(q: FiniteQuantale, support_bound: usize) -> QuantalePica {
    let zero = BaseSeq::constant(format!("q{}:bottom", q.size), q.bottom);
    let (z, u) = (zero.clone(), q.unit);
    let units = BaseSeq::indexed(format!("q{}:units", q.size), move |k| OmegaSeq::new(&z).with(k, u));
    QuantalePica { q, zero, units, support_bound }
}

impl QuantalePica {
    pub fn quantale(&self) -> &FiniteQuantale {
        &self.q
    }

    pub fn column(&self, prefix: impl IntoIterator<Item = u8>) -> Column {
        OmegaSeq::from_prefix(&self.zero, prefix)
    }

    /// A matrix from its first columns; later columns are unit columns.
    pub fn matrix(&self, cols: impl IntoIterator<Item = Column>) -> OmegaSeq<Column> {
        OmegaSeq::from_prefix(&self.units, cols)
    }

    pub fn identity(&self) -> OmegaSeq<Column> {
        OmegaSeq::new(&self.units)
    }
}

impl Pica for QuantalePica {
    type Elem = Column;

    fn name(&self) -> String {
        format!("quantale({},L={})", self.q.size, self.support_bound)
    }

    fn domain_base(&self) -> Arc<BaseSeq<Column>> {
        self.units.clone()
    }

    fn e(&self, n: usize) -> Column {
        self.units.at(n)
    }

    /// `q(s, M)ᵢ = ⋁_k Mᵏᵢ • s_k`, a finite join over the support of `s`.
    fn q_unchecked(&self, s: &Column, m: &OmegaSeq<Column>) -> Column {
        let mut acc: BTreeMap<usize, u8> = BTreeMap::new();
        for (&k, &sk) in s.overrides() {
            let col = m.entry(k);
            for (&i, &mki) in col.overrides() {
                let v = self.q.mul(mki, sk);
                let slot = acc.entry(i).or_insert(self.q.bottom);
                *slot = self.q.join(*slot, v);
            }
        }
        OmegaSeq::from_entries(&self.zero, acc)
    }

    fn enumerate(&self, budget: usize) -> Enumeration<Column> {
        let values: Vec<u8> = (0..self.q.size).collect();
        enumerate_seqs(&self.zero, &values, self.support_bound, budget)
    }

    fn enumerate_domain(&self, budget: usize) -> Enumeration<OmegaSeq<Column>> {
        let cols = self.enumerate(usize::MAX);
        enumerate_seqs(&self.units, &cols.items, self.support_bound, budget)
    }

    /// Columns past both supports are unit columns and `q(eᵢ, M) = Mⁱ`.
    fn p3_certified(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(FiniteQuantale::new(2, vec![0, 1, 1, 1], vec![0, 0, 0, 1], 1, 0).is_ok());
        // Addition mod 2 is not a join.
        assert!(FiniteQuantale::new(2, vec![0, 1, 1, 0], vec![0, 0, 0, 1], 1, 0).is_err());
        // Three-element chain with • = min is a quantale.
        let min = (0..3u8).flat_map(|a| (0..3u8).map(move |b| a.min(b))).collect::<Vec<_>>();
        let max = (0..3u8).flat_map(|a| (0..3u8).map(move |b| a.max(b))).collect::<Vec<_>>();
        assert!(FiniteQuantale::new(3, max, min, 2, 0).is_ok());
    }

    #[test]
    fn unit_column_selects_matrix_column() {
        let p = quantale_pica(FiniteQuantale::boolean(), 3);
        let m = p.matrix([p.column([0, 1]), p.column([1, 1, 1])]);
        assert_eq!(p.q(&p.e(0), &m).unwrap(), p.column([0, 1]));
        assert_eq!(p.q(&p.e(1), &m).unwrap(), p.column([1, 1, 1]));
        assert_eq!(p.q(&p.e(5), &m).unwrap(), p.e(5));
        let s = p.column([1, 1]);
        assert_eq!(p.q(&s, &m).unwrap(), p.column([1, 1, 1]));
        assert_eq!(p.q(&s, &p.identity()).unwrap(), s);
    }

    #[test]
    fn fragment_sizes() {
        let p = quantale_pica(FiniteQuantale::boolean(), 3);
        assert_eq!(p.enumerate(1000).len(), 8);
        let d = p.enumerate_domain(10_000);
        assert_eq!(d.len(), 512);
        assert!(d.exhaustive);
    }
}
