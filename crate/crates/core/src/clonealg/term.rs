// SPDX-License-Identifier: Apache-2.0

//! The term clone algebra of an absolutely free algebra: terms over
//! variables `v₀, v₁, …`, with `qₙ` as simultaneous substitution.

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use super::{CloneAlgebra, Dimension};
use crate::seq::Enumeration;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    symbols: Arc<Vec<(String, usize)>>,
}

impl Signature {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = (S, usize)>) -> Self {
        Signature { symbols: Arc::new(symbols.into_iter().map(|(s, a)| (s.into(), a)).collect()) }
    }

    pub fn symbols(&self) -> &[(String, usize)] {
        &self.symbols
    }

    pub fn lookup(&self, name: &str) -> Option<(usize, usize)> {
        self.symbols.iter().position(|(s, _)| s == name).map(|i| (i, self.symbols[i].1))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermNode {
    Var(usize),
    App(usize, Vec<Term>),
}

/// A term; symbol names are resolved through the signature when printing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    node: Arc<TermNode>,
    names: Option<Arc<Vec<(String, usize)>>>,
}

impl Term {
    pub fn var(i: usize) -> Self {
        Term { node: Arc::new(TermNode::Var(i)), names: None }
    }

    /// Panics if the arity does not match the signature.
    pub fn app(sig: &Signature, symbol: &str, args: Vec<Term>) -> Self {
        let (idx, arity) = sig.lookup(symbol).unwrap_or_else(|| panic!("unknown symbol {symbol}"));
        assert_eq!(arity, args.len(), "arity of {symbol}");
        Term { node: Arc::new(TermNode::App(idx, args)), names: Some(sig.symbols.clone()) }
    }

    pub fn node(&self) -> &TermNode {
        &self.node
    }

    /// One more than the largest variable index; `0` for closed terms.
    pub fn var_bound(&self) -> usize {
        match &*self.node {
            TermNode::Var(i) => i + 1,
            TermNode::App(_, args) => args.iter().map(Term::var_bound).max().unwrap_or(0),
        }
    }

    pub fn depth(&self) -> usize {
        match &*self.node {
            TermNode::Var(_) => 0,
            TermNode::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// Replaces `vᵢ` by `subst[i]` for `i < subst.len()`.
    pub fn substitute(&self, subst: &[Term]) -> Term {
        match &*self.node {
            TermNode::Var(i) => subst.get(*i).cloned().unwrap_or_else(|| self.clone()),
            TermNode::App(f, args) => {
                if self.var_bound() == 0 {
                    return self.clone();
                }
                Term {
                    node: Arc::new(TermNode::App(*f, args.iter().map(|t| t.substitute(subst)).collect())),
                    names: self.names.clone(),
                }
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.node {
            TermNode::Var(i) => write!(f, "v{i}"),
            TermNode::App(s, args) => {
                let name = self.names.as_ref().map_or_else(|| format!("f{s}"), |n| n[*s].0.clone());
                if args.is_empty() {
                    return write!(f, "{name}");
                }
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a:?}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct TermCloneAlgebra {
    sig: Signature,
    var_bound: usize,
    depth_bound: usize,
}

/// The enumerated fragment holds terms over `v₀..v_{var_bound-1}` of depth
/// at most `depth_bound`.
pub fn term_clone_algebra(sig: Signature, var_bound: usize, depth_bound: usize) -> TermCloneAlgebra {
    TermCloneAlgebra { sig, var_bound, depth_bound }
}

impl TermCloneAlgebra {
    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn app(&self, symbol: &str, args: Vec<Term>) -> Term {
        Term::app(&self.sig, symbol, args)
    }
}

impl CloneAlgebra for TermCloneAlgebra {
    type Elem = Term;

    fn name(&self) -> String {
        let syms = self.sig.symbols().iter().map(|(s, a)| format!("{s}/{a}")).join(",");
        format!("terms({syms})")
    }

    fn q(&self, a: &Term, args: &[Term]) -> Term {
        a.substitute(args)
    }

    fn e(&self, n: usize) -> Term {
        Term::var(n)
    }

    /// Graded by depth; the fragment is exhaustive when every grade fits.
    fn enumerate(&self, budget: usize) -> Enumeration<Term> {
        let mut grades: Vec<Vec<Term>> = vec![(0..self.var_bound).map(Term::var).collect()];
        let mut all: Vec<Term> = grades[0].clone();
        let mut complete = true;
        for depth in 1..=self.depth_bound {
            let mut grade = Vec::new();
            for (name, arity) in self.sig.symbols().iter() {
                if *arity == 0 {
                    if depth == 1 {
                        grade.push(Term::app(&self.sig, name, Vec::new()));
                    }
                    continue;
                }
                for args in (0..*arity).map(|_| all.iter().cloned()).multi_cartesian_product() {
                    if args.iter().map(Term::depth).max() == Some(depth - 1) {
                        grade.push(Term::app(&self.sig, name, args));
                    }
                    if all.len() + grade.len() > budget {
                        complete = false;
                        break;
                    }
                }
            }
            all.extend(grade.iter().cloned());
            grades.push(grade);
            if !complete {
                break;
            }
        }
        Enumeration::from_grades(grades, budget, complete)
    }

    fn dimension_certificate(&self, a: &Term) -> Option<Dimension> {
        Some(Dimension::Finite(a.var_bound()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution() {
        let t = term_clone_algebra(Signature::new([("f", 2)]), 2, 1);
        let fx = t.app("f", vec![Term::var(0), Term::var(1)]);
        let swapped = t.q(&fx, &[Term::var(1), Term::var(0)]);
        assert_eq!(swapped, t.app("f", vec![Term::var(1), Term::var(0)]));
        assert_eq!(format!("{swapped:?}"), "f(v1,v0)");
        assert_eq!(t.q(&fx, &[Term::var(0), Term::var(1)]), fx);
        assert_eq!(t.q(&Term::var(1), &[fx.clone(), Term::var(5)]), Term::var(5));
        assert_eq!(t.q(&Term::var(3), std::slice::from_ref(&fx)), Term::var(3));
    }

    #[test]
    fn enumeration_counts() {
        let t = term_clone_algebra(Signature::new([("f", 2), ("c", 0)]), 2, 1);
        // depth 0: v0, v1; depth 1: c and f over {v0, v1}.
        let en = t.enumerate(64);
        assert_eq!(en.len(), 2 + 1 + 4);
        assert!(en.exhaustive);
        assert!(!t.enumerate(4).exhaustive);
    }
}
