// SPDX-License-Identifier: Apache-2.0

use super::{CloneAlgebra, Dimension};
use crate::seq::Enumeration;

/// The minimal clone algebra on `ω`: `eₙ = n`, `qₙ(i, k⃗) = kᵢ` if `i < n`, else `i`.
#[derive(Clone, Debug)]
pub struct ProjectionAlgebra {
    value_bound: u64,
}

/// `value_bound` fixes the enumerated fragment `{0..=value_bound}`.
pub fn projection_algebra(value_bound: u64) -> ProjectionAlgebra {
    ProjectionAlgebra { value_bound }
}

impl ProjectionAlgebra {
    pub fn value_bound(&self) -> u64 {
        self.value_bound
    }
}

impl CloneAlgebra for ProjectionAlgebra {
    type Elem = u64;

    fn name(&self) -> String {
        format!("proj(≤{})", self.value_bound)
    }

    fn q(&self, a: &u64, args: &[u64]) -> u64 {
        args.get(*a as usize).copied().unwrap_or(*a)
    }

    fn e(&self, n: usize) -> u64 {
        n as u64
    }

    fn enumerate(&self, budget: usize) -> Enumeration<u64> {
        Enumeration::flat((0..=self.value_bound).collect(), budget, true)
    }

    fn dimension_certificate(&self, a: &u64) -> Option<Dimension> {
        Some(Dimension::Finite(*a as usize + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula() {
        let p = projection_algebra(8);
        assert_eq!(p.q(&1, &[5, 7]), 7);
        assert_eq!(p.q(&4, &[5, 7]), 4);
        assert_eq!(p.q(&3, &[]), 3);
    }
}
