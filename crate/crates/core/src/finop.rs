// SPDX-License-Identifier: Apache-2.0

//! Finitary operations on `{0..d-1}` as lookup tables.
//!
//! Inputs are ordered lexicographically with coordinate 0 most significant,
//! so the prefix `(x₀..x_{k-1})` of an `r`-tuple with index `i` has index
//! `i / d^(r-k)`. Padding and trimming rely on this.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest table accepted by constructors.
pub const TABLE_LIMIT: usize = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FinOpError {
    #[error("table has {got} entries, expected {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("value {value} outside domain of size {domain}")]
    ValueOutOfDomain { value: u8, domain: u8 },
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("domain mismatch: {0} vs {1}")]
    DomainMismatch(u8, u8),
    #[error("table of arity {arity} over {domain} values is too large")]
    TooLarge { domain: u8, arity: usize },
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinOp {
    domain: u8,
    arity: u8,
    table: Arc<[u8]>,
}

fn table_len(domain: u8, arity: usize) -> Result<usize, FinOpError> {
    (domain as usize)
        .checked_pow(arity as u32)
        .filter(|&n| n <= TABLE_LIMIT)
        .ok_or(FinOpError::TooLarge { domain, arity })
}

impl FinOp {
    pub fn new(domain: u8, arity: usize, table: Vec<u8>) -> Result<Self, FinOpError> {
        let expected = table_len(domain, arity)?;
        if table.len() != expected {
            return Err(FinOpError::TableLength { expected, got: table.len() });
        }
        if let Some(&value) = table.iter().find(|&&v| v >= domain) {
            return Err(FinOpError::ValueOutOfDomain { value, domain });
        }
        Ok(FinOp { domain, arity: arity as u8, table: table.into() })
    }

    fn from_fn(domain: u8, arity: usize, f: impl FnMut(usize) -> u8) -> Result<Self, FinOpError> {
        let len = table_len(domain, arity)?;
        Ok(FinOp { domain, arity: arity as u8, table: (0..len).map(f).collect() })
    }

    /// `p⁽ⁿ⁾ᵢ`.
    pub fn projection(domain: u8, n: usize, i: usize) -> Result<Self, FinOpError> {
        if i >= n {
            return Err(FinOpError::ArityMismatch(format!("projection {i} of arity {n}")));
        }
        let d = domain as usize;
        let shift = d.pow((n - 1 - i) as u32);
        FinOp::from_fn(domain, n, |idx| ((idx / shift) % d) as u8)
    }

    pub fn constant(domain: u8, arity: usize, value: u8) -> Result<Self, FinOpError> {
        if value >= domain {
            return Err(FinOpError::ValueOutOfDomain { value, domain });
        }
        FinOp::from_fn(domain, arity, |_| value)
    }

    pub fn domain(&self) -> u8 {
        self.domain
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn index_of(&self, args: &[u8]) -> usize {
        args.iter().fold(0, |acc, &x| acc * self.domain as usize + x as usize)
    }

    pub fn eval(&self, args: &[u8]) -> u8 {
        debug_assert_eq!(args.len(), self.arity());
        self.table[self.index_of(args)]
    }

    /// `f^⊤(s) = f(s₀..s_{k-1})`; `s` must have at least `arity` entries.
    pub fn eval_top(&self, s: &[u8]) -> u8 {
        self.eval(&s[..self.arity()])
    }

    /// The value at the `idx`-th input of arity `r ≥ arity`, reading only the prefix.
    pub fn eval_prefix_index(&self, r: usize, idx: usize) -> u8 {
        let shift = (self.domain as usize).pow((r - self.arity()) as u32);
        self.table[idx / shift]
    }

    /// Appends dummy coordinates up to arity `k ≥ arity`.
    pub fn pad(&self, k: usize) -> Result<Self, FinOpError> {
        if k < self.arity() {
            return Err(FinOpError::ArityMismatch(format!("cannot pad arity {} down to {k}", self.arity())));
        }
        FinOp::from_fn(self.domain, k, |idx| self.eval_prefix_index(k, idx))
    }

    /// Whether the output depends on coordinate `i`.
    pub fn essential(&self, i: usize) -> bool {
        if i >= self.arity() {
            return false;
        }
        let d = self.domain as usize;
        let stride = d.pow((self.arity() - 1 - i) as u32);
        (0..self.table.len()).any(|idx| {
            let digit = (idx / stride) % d;
            digit == 0 && (1..d).any(|v| self.table[idx + v * stride] != self.table[idx])
        })
    }

    /// One more than the last essential coordinate.
    pub fn essential_arity(&self) -> usize {
        (0..self.arity()).rev().find(|&i| self.essential(i)).map_or(0, |i| i + 1)
    }

    /// Drops trailing dummy coordinates.
    pub fn trim(&self) -> Self {
        let k = self.essential_arity();
        if k == self.arity() {
            return self.clone();
        }
        let shift = (self.domain as usize).pow((self.arity() - k) as u32);
        FinOp { domain: self.domain, arity: k as u8, table: (0..self.table.len() / shift).map(|i| self.table[i * shift]).collect() }
    }

    /// `f(g₀,…,g_{n-1})` with every `gᵢ` of arity `k`.
    pub fn compose(&self, gs: &[FinOp], k: usize) -> Result<Self, FinOpError> {
        if gs.len() != self.arity() {
            return Err(FinOpError::ArityMismatch(format!("{} arguments for arity {}", gs.len(), self.arity())));
        }
        for g in gs {
            if g.domain != self.domain {
                return Err(FinOpError::DomainMismatch(self.domain, g.domain));
            }
            if g.arity() != k {
                return Err(FinOpError::ArityMismatch(format!("argument of arity {} in a composite of arity {k}", g.arity())));
            }
        }
        let mut args = vec![0u8; gs.len()];
        FinOp::from_fn(self.domain, k, |idx| {
            for (a, g) in args.iter_mut().zip(gs) {
                *a = g.table[idx];
            }
            self.table[self.index_of(&args)]
        })
    }

    /// All inputs of arity `k` in table order.
    pub fn inputs(domain: u8, k: usize) -> impl Iterator<Item = Vec<u8>> {
        let d = domain as usize;
        let total = d.pow(k as u32);
        (0..total).map(move |mut idx| {
            let mut v = vec![0u8; k];
            for slot in v.iter_mut().rev() {
                *slot = (idx % d) as u8;
                idx /= d;
            }
            v
        })
    }
}

impl fmt::Debug for FinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "op{}{:?}", self.arity, &self.table[..])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn and() -> FinOp {
        FinOp::new(2, 2, vec![0, 0, 0, 1]).unwrap()
    }
    fn or() -> FinOp {
        FinOp::new(2, 2, vec![0, 1, 1, 1]).unwrap()
    }
    fn xor() -> FinOp {
        FinOp::new(2, 2, vec![0, 1, 1, 0]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(matches!(FinOp::new(2, 2, vec![0, 1]), Err(FinOpError::TableLength { .. })));
        assert!(matches!(FinOp::new(2, 1, vec![0, 2]), Err(FinOpError::ValueOutOfDomain { .. })));
    }

    #[test]
    fn projections_pick_coordinates() {
        for n in 1..4 {
            for i in 0..n {
                let p = FinOp::projection(3, n, i).unwrap();
                for x in FinOp::inputs(3, n) {
                    assert_eq!(p.eval(&x), x[i]);
                }
            }
        }
    }

    #[test]
    fn composition_by_brute_force() {
        let c = and().compose(&[or(), xor()], 2).unwrap();
        for x in FinOp::inputs(2, 2) {
            let want = and().eval(&[or().eval(&x), xor().eval(&x)]);
            assert_eq!(c.eval(&x), want);
        }
        assert_eq!(c.table(), &[0, 1, 1, 0]);
        let ps: Vec<FinOp> = (0..2).map(|i| FinOp::projection(2, 2, i).unwrap()).collect();
        assert_eq!(and().compose(&ps, 2).unwrap(), and());
        assert_eq!(ps[1].compose(&[or(), xor()], 2).unwrap(), xor());
        let one = FinOp::constant(2, 0, 1).unwrap();
        assert_eq!(one.compose(&[], 3).unwrap(), FinOp::constant(2, 3, 1).unwrap());
        assert!(and().compose(&[or()], 2).is_err());
    }

    #[test]
    fn padding_and_trimming() {
        let padded = and().pad(3).unwrap();
        for x in FinOp::inputs(2, 3) {
            assert_eq!(padded.eval(&x), and().eval(&x[..2]));
        }
        assert_eq!(padded.trim(), and());
        assert_eq!(padded.essential_arity(), 2);
        let second = FinOp::projection(2, 2, 1).unwrap();
        assert!(!second.essential(0));
        assert_eq!(second.trim(), second);
        assert_eq!(FinOp::constant(2, 2, 1).unwrap().trim().arity(), 0);
    }
}
