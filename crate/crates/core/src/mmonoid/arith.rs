// SPDX-License-Identifier: Apache-2.0

//! `ℕ*` under multiplication, read as the trace of exponent sequences
//! `(n₀, n₁, …)` with `n = ∏ pᵢ^{nᵢ}`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Flavor, MMonoid, MonoidError};
use crate::merge::{MergeAlgebra, MergeTag, PointedMerge};
use crate::seq::{Enumeration, FinPerm};

/// The `i`-th prime, `p₀ = 2`.
pub fn nth_prime(i: usize) -> u64 {
    static PRIMES: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();
    let mut ps = PRIMES.get_or_init(|| Mutex::new(vec![2, 3])).lock().expect("prime table");
    let mut c = *ps.last().expect("seeded");
    while ps.len() <= i {
        c += 2;
        if ps.iter().take_while(|&&p| p * p <= c).all(|&p| !c.is_multiple_of(p)) {
            ps.push(c);
        }
    }
    ps[i]
}

/// Splits off the exponents of `p₀..p_{k-1}`; returns them and the cofactor.
fn split(n: &BigUint, k: usize) -> (Vec<u32>, BigUint) {
    let mut rest = n.clone();
    let mut exps = Vec::with_capacity(k);
    for i in 0..k {
        let p = BigUint::from(nth_prime(i));
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        exps.push(e);
    }
    (exps, rest)
}

fn prime_power_product(exps: &[u32]) -> BigUint {
    exps.iter().enumerate().fold(BigUint::one(), |acc, (i, &e)| acc * BigUint::from(nth_prime(i)).pow(e))
}

#[derive(Clone, Debug, Default)]
pub struct ArithAm;

impl ArithAm {
    pub fn new() -> Self {
        ArithAm
    }

    pub fn element(&self, n: u64) -> Result<BigUint, MonoidError> {
        if n == 0 {
            return Err(MonoidError::ZeroInput);
        }
        Ok(BigUint::from(n))
    }

    /// Exponent of `p_i` in `n`.
    pub fn exponent(&self, n: &BigUint, i: usize) -> u32 {
        let (exps, _) = split(n, i + 1);
        exps[i]
    }
}

impl MergeAlgebra for ArithAm {
    type Elem = BigUint;

    fn name(&self) -> String {
        "arith".into()
    }

    /// `n ⋆ₖ m = ∏_{i<k} pᵢ^{nᵢ} · ∏_{j≥k} pⱼ^{mⱼ}`.
    fn star(&self, k: usize, n: &BigUint, m: &BigUint) -> BigUint {
        let (low, _) = split(n, k);
        let (_, high) = split(m, k);
        prime_power_product(&low) * high
    }

    /// Exponent at `i` of `σ̄(n)` is the exponent of `n` at `σ(i)`.
    fn permute(&self, sigma: &FinPerm, n: &BigUint) -> BigUint {
        let d = sigma.dom_bound();
        let (exps, rest) = split(n, d);
        let moved: Vec<u32> = (0..d).map(|i| exps[sigma.apply(i)]).collect();
        prime_power_product(&moved) * rest
    }

    fn enumerate(&self, budget: usize) -> Enumeration<BigUint> {
        let n = budget.min(1 << 20) as u64;
        Enumeration::flat((1..=n).map(BigUint::from).collect(), budget, false)
    }

    fn tag(&self) -> MergeTag {
        MergeTag::Derived
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Option<BigUint> {
        Some(BigUint::from(rng.gen_range(1u64..1_000_000)))
    }
}

impl PointedMerge for ArithAm {
    fn one(&self) -> BigUint {
        BigUint::one()
    }

    fn rank(&self, x: &BigUint, bound: usize) -> Option<usize> {
        let (exps, rest) = split(x, bound);
        if !rest.is_one() {
            return None;
        }
        Some(exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1))
    }
}

impl MMonoid for ArithAm {
    fn mul(&self, x: &BigUint, y: &BigUint) -> BigUint {
        x * y
    }

    fn flavor(&self) -> Flavor {
        Flavor::AmStrong
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..10).map(nth_prime).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn splice_and_swap() {
        let a = ArithAm::new();
        // Oracle: 12 = 2²·3, 18 = 2·3²; splicing at 1 keeps 2² and takes 3².
        assert_eq!(a.star(1, &n(12), &n(18)), n(36));
        assert_eq!(a.permute(&FinPerm::transposition(1, 0), &n(12)), n(18));
        assert_eq!(a.star(0, &n(12), &n(18)), n(18));
        assert_eq!(a.star(2, &n(12), &n(18)), n(12));
        assert_eq!(a.star(2, &n(60), &n(77)), n(12 * 7 * 11));
        for s in crate::merge::perms_graded(4) {
            assert_eq!(a.permute(&s, &n(1)), n(1));
        }
    }

    #[test]
    fn rank_and_zero() {
        let a = ArithAm::new();
        assert_eq!(a.rank(&n(1), 3), Some(0));
        assert_eq!(a.rank(&n(10), 4), Some(3));
        assert_eq!(a.rank(&n(14), 3), None);
        assert_eq!(a.element(0), Err(MonoidError::ZeroInput));
        assert_eq!(a.exponent(&n(72), 1), 2);
    }
}
