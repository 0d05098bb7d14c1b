// SPDX-License-Identifier: Apache-2.0

//! Verdicts and witnesses shared by the checker and the module-level
//! semi-decision procedures.

use serde::{Deserialize, Serialize};

/// One variable binding inside a counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binding {
    pub var: String,
    pub value: String,
}

/// A counterexample: the bound variables, both sides of the failed
/// equation, and the assignment tuple that replays it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub bindings: Vec<Binding>,
    pub lhs: String,
    pub rhs: String,
    /// Positions inside the assignment stream, one per variable.
    pub assignment: Vec<usize>,
}

impl Witness {
    pub fn new(bindings: Vec<(String, String)>, lhs: String, rhs: String) -> Self {
        Witness {
            bindings: bindings.into_iter().map(|(var, value)| Binding { var, value }).collect(),
            lhs,
            rhs,
            assignment: Vec::new(),
        }
    }

    pub fn with_assignment(mut self, assignment: Vec<usize>) -> Self {
        self.assignment = assignment;
        self
    }

    pub fn get(&self, var: &str) -> Option<&str> {
        self.bindings.iter().find(|b| b.var == var).map(|b| b.value.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Every instance of the declared fragment was evaluated.
    PassExhaustive { count: u64 },
    /// Only part of the instance space was evaluated.
    PassSampled { count: u64 },
    Fail(Box<Witness>),
    /// No decision within the budget.
    Unknown(String),
}

impl Verdict {
    pub fn fail(w: Witness) -> Self {
        Verdict::Fail(Box::new(w))
    }

    pub fn pass(count: u64, exhaustive: bool) -> Self {
        if exhaustive {
            Verdict::PassExhaustive { count }
        } else {
            Verdict::PassSampled { count }
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::PassExhaustive { .. } | Verdict::PassSampled { .. })
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self, Verdict::PassExhaustive { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fail(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::PassExhaustive { .. } => "pass_exhaustive",
            Verdict::PassSampled { .. } => "pass_sampled",
            Verdict::Fail(_) => "fail",
            Verdict::Unknown(_) => "unknown",
        }
    }

    /// Conjunction: the first failure wins, sampled beats exhaustive.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (f @ Verdict::Fail(_), _) | (_, f @ Verdict::Fail(_)) => f,
            (u @ Verdict::Unknown(_), _) | (_, u @ Verdict::Unknown(_)) => u,
            (Verdict::PassExhaustive { count: a }, Verdict::PassExhaustive { count: b }) => {
                Verdict::PassExhaustive { count: a + b }
            }
            (a, b) => Verdict::PassSampled { count: a.count() + b.count() },
        }
    }

    pub fn count(&self) -> u64 {
        match self {
            Verdict::PassExhaustive { count } | Verdict::PassSampled { count } => *count,
            _ => 0,
        }
    }
}

/// Index tuples of the given arity over `0..len`: all of them when there
/// are at most `cap`, otherwise `cap` seeded draws. The flag says which.
pub fn assignment_grid(len: usize, arity: usize, cap: usize, seed: u64) -> (Vec<Vec<usize>>, bool) {
    use itertools::Itertools;
    use rand::{Rng, SeedableRng};

    if len == 0 {
        return (if arity == 0 { vec![Vec::new()] } else { Vec::new() }, true);
    }
    let total = (len as f64).powi(arity as i32);
    if total <= cap as f64 {
        let all = (0..arity).map(|_| 0..len).multi_cartesian_product().collect::<Vec<_>>();
        // multi_cartesian_product yields nothing for arity 0.
        return (if arity == 0 { vec![Vec::new()] } else { all }, true);
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    ((0..cap).map(|_| (0..arity).map(|_| rng.gen_range(0..len)).collect()).collect(), false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_exhaustive_below_cap() {
        let (g, ex) = assignment_grid(3, 2, 9, 0);
        assert!(ex);
        assert_eq!(g.len(), 9);
        let (g, ex) = assignment_grid(3, 3, 9, 0);
        assert!(!ex);
        assert_eq!(g.len(), 9);
        assert_eq!(assignment_grid(3, 3, 9, 0), assignment_grid(3, 3, 9, 0));
        assert_eq!(assignment_grid(5, 0, 1, 0).0, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn conjunction() {
        let a = Verdict::pass(2, true);
        assert!(a.clone().and(Verdict::pass(3, true)).is_exhaustive());
        assert_eq!(a.clone().and(Verdict::pass(3, false)), Verdict::PassSampled { count: 5 });
        assert!(a.and(Verdict::fail(Witness::new(vec![], "x".into(), "y".into()))).is_fail());
    }
}
