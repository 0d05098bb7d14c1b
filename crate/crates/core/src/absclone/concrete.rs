// SPDX-License-Identifier: Apache-2.0

//! Concrete clones on `{0..d-1}`, truncated at a maximal arity.

use std::collections::HashSet;

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use super::AbstractClone;
use crate::finop::{FinOp, FinOpError};
use crate::seq::Enumeration;

pub const DEFAULT_OP_GUARD: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CloneError {
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error(transparent)]
    Op(#[from] FinOpError),
}

#[derive(Clone, Debug)]
pub struct ConcreteClone {
    domain: u8,
    max_arity: usize,
    ops: Vec<Vec<FinOp>>,
}

/// The `k`-ary part of a generated clone is the closure of the `k`-ary
/// projections under the generators, so each arity is closed on its own.
pub fn clone_generate(domain: u8, gens: &[FinOp], max_arity: usize, op_guard: usize) -> Result<ConcreteClone, CloneError> {
    for g in gens {
        if g.domain() != domain {
            return Err(FinOpError::DomainMismatch(domain, g.domain()).into());
        }
        if g.arity() > max_arity {
            return Err(FinOpError::ArityMismatch(format!("generator of arity {} above {max_arity}", g.arity())).into());
        }
    }
    let mut ops = Vec::with_capacity(max_arity + 1);
    let mut total = 0usize;
    for k in 0..=max_arity {
        let mut seen: HashSet<FinOp> = HashSet::new();
        let mut list: Vec<FinOp> = Vec::new();
        for i in 0..k {
            let p = FinOp::projection(domain, k, i)?;
            if seen.insert(p.clone()) {
                list.push(p);
            }
        }
        // Semi-naive rounds: each tuple must use something from the frontier.
        let mut frontier_start = 0usize;
        let mut first = true;
        loop {
            let old = frontier_start;
            let len = list.len();
            let fresh: Vec<FinOp> = gens
                .par_iter()
                .flat_map_iter(|g| {
                    let list = &list;
                    (0..g.arity())
                        .map(|_| 0..len)
                        .multi_cartesian_product()
                        .filter(move |t| first || t.iter().any(|&i| i >= old))
                        .map(move |t| {
                            let args: Vec<FinOp> = t.iter().map(|&i| list[i].clone()).collect();
                            g.compose(&args, k).expect("arities agree")
                        })
                })
                .collect();
            first = false;
            frontier_start = len;
            for f in fresh {
                if seen.insert(f.clone()) {
                    list.push(f);
                }
            }
            if total + list.len() > op_guard {
                return Err(CloneError::BudgetExceeded(format!("more than {op_guard} operations")));
            }
            if list.len() == len {
                break;
            }
        }
        list.sort_by(|a, b| a.table().cmp(b.table()));
        // Projections first, in index order, so eᵢⁿ are easy to find.
        let projections: Vec<FinOp> = (0..k).map(|i| FinOp::projection(domain, k, i).expect("projection")).collect();
        list.retain(|f| !projections.contains(f));
        let mut sorted = projections;
        sorted.extend(list);
        total += sorted.len();
        ops.push(sorted);
    }
    Ok(ConcreteClone { domain, max_arity, ops })
}

impl ConcreteClone {
    pub fn domain(&self) -> u8 {
        self.domain
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn ops(&self, n: usize) -> &[FinOp] {
        &self.ops[n]
    }

    pub fn counts(&self) -> Vec<usize> {
        self.ops.iter().map(Vec::len).collect()
    }
}

impl AbstractClone for ConcreteClone {
    type Elem = FinOp;

    fn name(&self) -> String {
        format!("clone({},≤{})", self.domain, self.max_arity)
    }

    fn sort_bound(&self) -> usize {
        self.max_arity
    }

    fn sort(&self, n: usize, budget: usize) -> Enumeration<FinOp> {
        match self.ops.get(n) {
            Some(v) => Enumeration::flat(v.clone(), budget, true),
            None => Enumeration::flat(Vec::new(), budget, false),
        }
    }

    fn sort_of(&self, x: &FinOp) -> usize {
        x.arity()
    }

    fn q(&self, k: usize, x: &FinOp, ys: &[FinOp]) -> FinOp {
        x.compose(ys, k).expect("well-sorted arguments")
    }

    fn e(&self, n: usize, i: usize) -> FinOp {
        FinOp::projection(self.domain, n, i).expect("i < n")
    }

    /// Exact: `x = y^{+1}` iff the last coordinate of `x` is a dummy and
    /// the trimmed operation lies in the clone. Membership is automatic from
    /// sort 1 upward (substitute `e₀` for the dummy) but not for `B₀`.
    fn unlift(&self, x: &FinOp) -> Option<FinOp> {
        let n = x.arity();
        if n == 0 || x.essential(n - 1) {
            return None;
        }
        let shift = self.domain as usize;
        let table = (0..x.table().len() / shift).map(|i| x.table()[i * shift]).collect();
        let y = FinOp::new(self.domain, n - 1, table).expect("trimmed table");
        (n > 1 || self.ops[0].contains(&y)).then_some(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn and() -> FinOp {
        FinOp::new(2, 2, vec![0, 0, 0, 1]).unwrap()
    }

    #[test]
    fn projections_only() {
        let c = clone_generate(2, &[], 3, DEFAULT_OP_GUARD).unwrap();
        assert_eq!(c.counts(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn and_generates_three_binary() {
        let c = clone_generate(2, &[and()], 2, DEFAULT_OP_GUARD).unwrap();
        assert_eq!(c.counts()[2], 3);
    }

    #[test]
    fn monotone_counts() {
        let or = FinOp::new(2, 2, vec![0, 1, 1, 1]).unwrap();
        let c0 = FinOp::constant(2, 0, 0).unwrap();
        let c1 = FinOp::constant(2, 0, 1).unwrap();
        let c = clone_generate(2, &[and(), or, c0, c1], 3, DEFAULT_OP_GUARD).unwrap();
        // Oracle: monotone Boolean functions of arity 0..3 number 2, 3, 6, 20.
        let brute: Vec<usize> = (0..=3)
            .map(|k| {
                let rows: Vec<Vec<u8>> = FinOp::inputs(2, k).collect();
                (0..1u32 << rows.len())
                    .filter(|code| {
                        let f = |r: usize| (code >> r) & 1;
                        (0..rows.len()).all(|a| {
                            (0..rows.len()).all(|b| {
                                let le = rows[a].iter().zip(&rows[b]).all(|(x, y)| x <= y);
                                !le || f(a) <= f(b)
                            })
                        })
                    })
                    .count()
            })
            .collect();
        assert_eq!(brute, vec![2, 3, 6, 20]);
        assert_eq!(c.counts(), brute);
    }

    #[test]
    fn guard() {
        let xor = FinOp::new(2, 2, vec![0, 1, 1, 0]).unwrap();
        let nand = FinOp::new(2, 2, vec![1, 1, 1, 0]).unwrap();
        assert!(matches!(clone_generate(2, &[nand, xor], 3, 50), Err(CloneError::BudgetExceeded(_))));
    }
}
