// SPDX-License-Identifier: Apache-2.0

//! Functional clone algebras of top extensions `f^⊤` over a finite value
//! domain. Elements are stored trimmed, so the stored arity is the
//! dimension.

use std::fmt;

use super::{CloneAlgebra, Dimension};
use crate::finop::{FinOp, FinOpError};
use crate::seq::Enumeration;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FcaElement(FinOp);

impl FcaElement {
    pub fn op(&self) -> &FinOp {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.arity()
    }

    /// `f^⊤(s)`; coordinates past the end of `s` are never read.
    pub fn eval(&self, s: &[u8]) -> u8 {
        self.0.eval_top(s)
    }
}

impl fmt::Debug for FcaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct Fca {
    domain: u8,
    arity_bound: usize,
}

pub fn fca(domain: u8, arity_bound: usize) -> Result<Fca, FinOpError> {
    if domain == 0 {
        return Err(FinOpError::ValueOutOfDomain { value: 0, domain });
    }
    // The full carrier must be listable.
    let tables = (domain as f64).powf((domain as f64).powi(arity_bound as i32));
    if tables > crate::finop::TABLE_LIMIT as f64 {
        return Err(FinOpError::TooLarge { domain, arity: arity_bound });
    }
    Ok(Fca { domain, arity_bound })
}

impl Fca {
    pub fn domain(&self) -> u8 {
        self.domain
    }

    pub fn arity_bound(&self) -> usize {
        self.arity_bound
    }

    /// Trims `op` and checks it against the arity bound.
    pub fn element(&self, op: FinOp) -> Result<FcaElement, FinOpError> {
        if op.domain() != self.domain {
            return Err(FinOpError::DomainMismatch(self.domain, op.domain()));
        }
        let t = op.trim();
        if t.arity() > self.arity_bound {
            return Err(FinOpError::TooLarge { domain: self.domain, arity: t.arity() });
        }
        Ok(FcaElement(t))
    }

    /// Builds an element of arity `≤ arity_bound` from its table at that arity.
    pub fn from_table(&self, arity: usize, table: Vec<u8>) -> Result<FcaElement, FinOpError> {
        self.element(FinOp::new(self.domain, arity, table)?)
    }
}

impl CloneAlgebra for Fca {
    type Elem = FcaElement;

    fn name(&self) -> String {
        format!("fca({},{})", self.domain, self.arity_bound)
    }

    /// `qₙ(φ, ψ⃗)(s) = φ(s[ψ₀(s),…,ψ_{n-1}(s)])`, evaluated at the largest
    /// arity among the inputs; nothing past it is read.
    fn q(&self, a: &FcaElement, args: &[FcaElement]) -> FcaElement {
        let r = args.iter().map(FcaElement::arity).chain([a.arity()]).max().unwrap_or(0);
        let d = self.domain as usize;
        let k = a.arity();
        let stride: Vec<usize> = (0..k).map(|j| d.pow((r - 1 - j) as u32)).collect();
        let mut point = vec![0u8; k];
        let table: Vec<u8> = (0..d.pow(r as u32))
            .map(|idx| {
                for j in 0..k {
                    point[j] = match args.get(j) {
                        Some(psi) => psi.0.eval_prefix_index(r, idx),
                        None => ((idx / stride[j]) % d) as u8,
                    };
                }
                a.0.eval(&point)
            })
            .collect();
        FcaElement(FinOp::new(self.domain, r, table).expect("composite table").trim())
    }

    /// The projection onto coordinate `n`, of arity `n + 1`.
    fn e(&self, n: usize) -> FcaElement {
        FcaElement(FinOp::projection(self.domain, n + 1, n).expect("projection"))
    }

    /// Every element of arity `≤ arity_bound`, graded by arity.
    fn enumerate(&self, budget: usize) -> Enumeration<FcaElement> {
        let d = self.domain;
        let k = self.arity_bound;
        let rows = (d as usize).pow(k as u32);
        let mut grades: Vec<Vec<FcaElement>> = vec![Vec::new(); k + 1];
        let total = (d as usize).pow(rows as u32);
        let mut table = vec![0u8; rows];
        for mut code in 0..total {
            for slot in table.iter_mut().rev() {
                *slot = (code % d as usize) as u8;
                code /= d as usize;
            }
            let op = FinOp::new(d, k, table.clone()).expect("table").trim();
            grades[op.arity()].push(FcaElement(op));
        }
        Enumeration::from_grades(grades, budget, true)
    }

    fn dimension_certificate(&self, a: &FcaElement) -> Option<Dimension> {
        Some(Dimension::Finite(a.arity()))
    }

    fn sample(&self, rng: &mut rand_chacha::ChaCha8Rng) -> Option<FcaElement> {
        use rand::Rng;
        let rows = (self.domain as usize).pow(self.arity_bound as u32);
        let table = (0..rows).map(|_| rng.gen_range(0..self.domain)).collect();
        Some(FcaElement(FinOp::new(self.domain, self.arity_bound, table).ok()?.trim()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin(f: &Fca, t: [u8; 4]) -> FcaElement {
        f.from_table(2, t.to_vec()).unwrap()
    }

    #[test]
    fn composite_matches_brute_force() {
        let f = fca(2, 2).unwrap();
        let and = bin(&f, [0, 0, 0, 1]);
        let or = bin(&f, [0, 1, 1, 1]);
        let xor = bin(&f, [0, 1, 1, 0]);
        let c = f.q(&and, &[or.clone(), xor.clone()]);
        for x in 0..2u8 {
            for y in 0..2u8 {
                let s = [x, y, 0, 1];
                assert_eq!(c.eval(&s), and.eval(&[or.eval(&s), xor.eval(&s)]));
            }
        }
    }

    #[test]
    fn laws_on_small_cases() {
        let f = fca(2, 2).unwrap();
        let all = f.enumerate(64);
        assert_eq!(all.len(), 16);
        assert!(all.exhaustive);
        let es: Vec<FcaElement> = (0..3).map(|i| f.e(i)).collect();
        for a in &all.items {
            assert_eq!(f.q(a, &es), *a);
            for b in &all.items {
                assert_eq!(f.q(&f.e(0), &[b.clone(), a.clone()]), *b);
                assert_eq!(f.q(&f.e(1), &[b.clone(), a.clone()]), *a);
            }
        }
        assert_eq!(f.q(&f.e(3), &[f.e(0)]), f.e(3));
    }

    #[test]
    fn element_normalization() {
        let f = fca(2, 2).unwrap();
        let dummy_last = bin(&f, [0, 0, 1, 1]);
        assert_eq!(dummy_last.arity(), 1);
        assert_eq!(dummy_last, f.e(0));
        assert!(f.element(FinOp::projection(2, 3, 2).unwrap()).is_err());
    }
}
