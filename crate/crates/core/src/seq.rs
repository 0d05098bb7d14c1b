// SPDX-License-Identifier: Apache-2.0

//! ω-sequences with finite support over a named base sequence, finite
//! permutations of ω, and deterministic element streams.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Values stored in carriers. Equality is value equality.
pub trait Element: Clone + Eq + Hash + fmt::Debug + Send + Sync + 'static {}

impl<T: Clone + Eq + Hash + fmt::Debug + Send + Sync + 'static> Element for T {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqError {
    #[error("element at prefix position {index} is not in carrier `{carrier}`")]
    CarrierMismatch { index: usize, carrier: String },
    #[error("sequences over bases `{left}` and `{right}` are not comparable")]
    BaseMismatch { left: String, right: String },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type IndexRule<E> = Arc<dyn Fn(usize) -> E + Send + Sync>;

/// How a base sequence produces its entries.
#[derive(Clone)]
pub enum BaseRule<E> {
    /// Every entry is the same value.
    Constant(E),
    /// Entry `k` is `rule(k)`; `family` names the rule.
    Indexed { family: String, rule: IndexRule<E> },
    /// A finite prefix followed by a `Constant` or `Indexed` tail.
    Mixed { prefix: Vec<E>, tail: Box<BaseRule<E>> },
}

/// Describes the tail of a base, which decides comparability.
#[derive(Debug, Clone, PartialEq, Eq)]
enum TailClass<'a, E> {
    Constant(&'a E),
    Indexed(&'a str),
}

impl<E: Element> BaseRule<E> {
    fn at(&self, i: usize) -> E {
        match self {
            BaseRule::Constant(x) => x.clone(),
            BaseRule::Indexed { rule, .. } => rule(i),
            BaseRule::Mixed { prefix, tail } => match prefix.get(i) {
                Some(x) => x.clone(),
                None => tail.at(i),
            },
        }
    }

    fn tail_class(&self) -> TailClass<'_, E> {
        match self {
            BaseRule::Constant(x) => TailClass::Constant(x),
            BaseRule::Indexed { family, .. } => TailClass::Indexed(family),
            BaseRule::Mixed { tail, .. } => tail.tail_class(),
        }
    }
}

/// A named, total, deterministic ω-sequence.
pub struct BaseSeq<E> {
    id: String,
    rule: BaseRule<E>,
}

impl<E: Element> BaseSeq<E> {
    pub fn constant(id: impl Into<String>, value: E) -> Arc<Self> {
        Arc::new(BaseSeq { id: id.into(), rule: BaseRule::Constant(value) })
    }

    /// Base `k ↦ rule(k)`; the id doubles as the rule family name.
    pub fn indexed(id: impl Into<String>, rule: impl Fn(usize) -> E + Send + Sync + 'static) -> Arc<Self> {
        let id = id.into();
        Arc::new(BaseSeq {
            rule: BaseRule::Indexed { family: id.clone(), rule: Arc::new(rule) },
            id,
        })
    }

    /// A finite prefix in front of the entries of `tail` (nested prefixes are flattened).
    pub fn mixed(id: impl Into<String>, prefix: Vec<E>, tail: &BaseSeq<E>) -> Arc<Self> {
        let rule = match &tail.rule {
            BaseRule::Mixed { prefix: inner, tail: t } => {
                let mut p = prefix;
                let start = p.len();
                p.extend(inner.iter().skip(start).cloned());
                BaseRule::Mixed { prefix: p, tail: t.clone() }
            }
            r => BaseRule::Mixed { prefix, tail: Box::new(r.clone()) },
        };
        Arc::new(BaseSeq { id: id.into(), rule })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn rule(&self) -> &BaseRule<E> {
        &self.rule
    }

    pub fn at(&self, i: usize) -> E {
        self.rule.at(i)
    }

    /// True when sequences over `self` and `other` live in one basic trace.
    pub fn comparable(&self, other: &BaseSeq<E>) -> bool {
        self.id == other.id || self.rule.tail_class() == other.rule.tail_class()
    }

    /// Literal form used in structure files.
    pub fn literal(&self) -> String {
        match &self.rule {
            BaseRule::Constant(x) => format!("const:{x:?}"),
            BaseRule::Indexed { family, .. } => format!("indexed:{family}"),
            BaseRule::Mixed { .. } => format!("base:{}", self.id),
        }
    }
}

impl<E> fmt::Debug for BaseSeq<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BaseSeq({})", self.id)
    }
}

/// An ω-sequence stored as the entries that differ from its base.
#[derive(Clone)]
pub struct OmegaSeq<E> {
    base: Arc<BaseSeq<E>>,
    overrides: BTreeMap<usize, E>,
}

impl<E: Element> OmegaSeq<E> {
    /// The base sequence itself.
    pub fn new(base: &Arc<BaseSeq<E>>) -> Self {
        OmegaSeq { base: base.clone(), overrides: BTreeMap::new() }
    }

    /// `base[prefix]`: the base with its first entries replaced.
    pub fn from_prefix(base: &Arc<BaseSeq<E>>, prefix: impl IntoIterator<Item = E>) -> Self {
        let mut s = Self::new(base);
        for (i, x) in prefix.into_iter().enumerate() {
            s.set_mut(i, x);
        }
        s
    }

    /// Builds a sequence from arbitrary index/value pairs, normalizing.
    pub fn from_entries(base: &Arc<BaseSeq<E>>, entries: impl IntoIterator<Item = (usize, E)>) -> Self {
        let mut s = Self::new(base);
        for (i, x) in entries {
            s.set_mut(i, x);
        }
        s
    }

    pub fn base(&self) -> &Arc<BaseSeq<E>> {
        &self.base
    }

    pub fn overrides(&self) -> &BTreeMap<usize, E> {
        &self.overrides
    }

    pub fn entry(&self, i: usize) -> E {
        match self.overrides.get(&i) {
            Some(x) => x.clone(),
            None => self.base.at(i),
        }
    }

    /// First `n` entries.
    pub fn prefix(&self, n: usize) -> Vec<E> {
        (0..n).map(|i| self.entry(i)).collect()
    }

    /// Indices where the sequence differs from its base, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.overrides.keys().copied()
    }

    /// One past the largest overridden index (0 for the base itself).
    pub fn support_bound(&self) -> usize {
        self.overrides.keys().next_back().map_or(0, |&i| i + 1)
    }

    pub fn is_base(&self) -> bool {
        self.overrides.is_empty()
    }

    fn set_mut(&mut self, i: usize, x: E) {
        if self.base.at(i) == x {
            self.overrides.remove(&i);
        } else {
            self.overrides.insert(i, x);
        }
    }

    /// The sequence with entry `i` replaced by `x`.
    pub fn with(&self, i: usize, x: E) -> Self {
        let mut s = self.clone();
        s.set_mut(i, x);
        s
    }

    /// `s[a₀,…,a_{n-1}]`.
    pub fn update(&self, prefix: &[E]) -> Self {
        let mut s = self.clone();
        for (i, x) in prefix.iter().enumerate() {
            s.set_mut(i, x.clone());
        }
        s
    }

    /// `(s₀,…,s_{n-1}, uₙ, u_{n+1}, …)`; both sequences must share the base.
    pub fn splice(&self, n: usize, u: &OmegaSeq<E>) -> Self {
        debug_assert_eq!(self.base.id, u.base.id, "splice across bases");
        let mut overrides: BTreeMap<usize, E> =
            self.overrides.range(..n).map(|(&i, x)| (i, x.clone())).collect();
        overrides.extend(u.overrides.range(n..).map(|(&i, x)| (i, x.clone())));
        OmegaSeq { base: self.base.clone(), overrides }
    }

    /// `σ(s)ᵢ = s_{σ(i)}`.
    pub fn permute(&self, sigma: &FinPerm) -> Self {
        if sigma.is_identity() {
            return self.clone();
        }
        let mut out = OmegaSeq { base: self.base.clone(), overrides: BTreeMap::new() };
        for (&i, x) in &self.overrides {
            if !sigma.moves(i) {
                out.overrides.insert(i, x.clone());
            }
        }
        for (&i, &j) in &sigma.graph {
            out.set_mut(i, self.entry(j));
        }
        out
    }

    /// Applies `f` to every entry; `base` must be the image of the old base under `f`.
    pub fn map_onto<F: Element>(&self, base: &Arc<BaseSeq<F>>, f: impl Fn(&E) -> F) -> OmegaSeq<F> {
        OmegaSeq::from_entries(base, self.overrides.iter().map(|(&i, x)| (i, f(x))))
    }

    /// Trace equivalence: finitely many differences.
    pub fn equiv(&self, other: &OmegaSeq<E>) -> Result<bool, SeqError> {
        if self.base.comparable(&other.base) {
            Ok(true)
        } else {
            Err(SeqError::BaseMismatch { left: self.base.id.clone(), right: other.base.id.clone() })
        }
    }
}

impl<E: Element> PartialEq for OmegaSeq<E> {
    fn eq(&self, other: &Self) -> bool {
        self.base.id == other.base.id && self.overrides == other.overrides
    }
}

impl<E: Element> Eq for OmegaSeq<E> {}

impl<E: Element> Hash for OmegaSeq<E> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.base.id.hash(state);
        for (i, x) in &self.overrides {
            i.hash(state);
            x.hash(state);
        }
    }
}

impl<E: Element> fmt::Debug for OmegaSeq<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.support_bound() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.entry(i))?;
        }
        write!(f, " | {}]", self.base.literal())
    }
}

/// `seq_entry`.
pub fn seq_entry<E: Element>(s: &OmegaSeq<E>, i: usize) -> E {
    s.entry(i)
}

/// `seq_update` with a carrier membership check on the prefix.
pub fn seq_update<E: Element>(s: &OmegaSeq<E>, prefix: &[E], carrier: &Carrier<E>) -> Result<OmegaSeq<E>, SeqError> {
    if let Some(index) = prefix.iter().position(|x| !carrier.contains(x)) {
        return Err(SeqError::CarrierMismatch { index, carrier: carrier.name.clone() });
    }
    Ok(s.update(prefix))
}

/// A finite permutation of ω, stored on its nonfixed points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FinPerm {
    graph: BTreeMap<usize, usize>,
}

impl FinPerm {
    pub fn identity() -> Self {
        FinPerm::default()
    }

    /// `τⁿ_k`, swapping `n` and `k`.
    pub fn transposition(n: usize, k: usize) -> Self {
        let mut graph = BTreeMap::new();
        if n != k {
            graph.insert(n, k);
            graph.insert(k, n);
        }
        FinPerm { graph }
    }

    /// Permutation of `{0..images.len()-1}` sending `i` to `images[i]`.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &j in images {
            if j >= images.len() || std::mem::replace(&mut seen[j], true) {
                return None;
            }
        }
        let graph = images.iter().enumerate().filter(|(i, j)| i != *j).map(|(i, &j)| (i, j)).collect();
        Some(FinPerm { graph })
    }

    /// Builds from an explicit graph; `None` unless it is a bijection of its domain.
    pub fn from_graph(pairs: impl IntoIterator<Item = (usize, usize)>) -> Option<Self> {
        let graph: BTreeMap<usize, usize> = pairs.into_iter().filter(|(i, j)| i != j).collect();
        let mut cod: Vec<usize> = graph.values().copied().collect();
        cod.sort_unstable();
        cod.dedup();
        let dom: Vec<usize> = graph.keys().copied().collect();
        (cod == dom).then_some(FinPerm { graph })
    }

    pub fn apply(&self, i: usize) -> usize {
        self.graph.get(&i).copied().unwrap_or(i)
    }

    pub fn moves(&self, i: usize) -> bool {
        self.graph.contains_key(&i)
    }

    pub fn is_identity(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn graph(&self) -> &BTreeMap<usize, usize> {
        &self.graph
    }

    /// One past the largest moved point.
    pub fn dom_bound(&self) -> usize {
        self.graph.keys().next_back().map_or(0, |&i| i + 1)
    }

    /// `self ∘ rho`.
    pub fn compose(&self, rho: &FinPerm) -> FinPerm {
        let pts: Vec<usize> = self.graph.keys().chain(rho.graph.keys()).copied().collect();
        FinPerm {
            graph: pts
                .into_iter()
                .map(|i| (i, self.apply(rho.apply(i))))
                .filter(|(i, j)| i != j)
                .collect(),
        }
    }

    pub fn inverse(&self) -> FinPerm {
        FinPerm { graph: self.graph.iter().map(|(&i, &j)| (j, i)).collect() }
    }
}

impl fmt::Debug for FinPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.graph.is_empty() {
            return write!(f, "id");
        }
        write!(f, "perm{{{}}}", self.graph.iter().map(|(i, j)| format!("{i}->{j}")).join(","))
    }
}

/// `perm_compose`.
pub fn perm_compose(sigma: &FinPerm, rho: &FinPerm) -> FinPerm {
    sigma.compose(rho)
}

/// `perm_apply`.
pub fn perm_apply<E: Element>(sigma: &FinPerm, s: &OmegaSeq<E>) -> OmegaSeq<E> {
    s.permute(sigma)
}

/// `transposition(n, k)`.
pub fn transposition(n: usize, k: usize) -> FinPerm {
    FinPerm::transposition(n, k)
}

/// All permutations with domain inside `{0..k-1}`, in lexicographic image order.
pub fn perms_upto(k: usize) -> Result<Vec<FinPerm>, SeqError> {
    if k > 6 {
        return Err(SeqError::BudgetExceeded(format!("perms_upto({k}) exceeds 6! permutations")));
    }
    Ok((0..k)
        .permutations(k)
        .map(|images| FinPerm::from_images(&images).expect("permutation"))
        .collect())
}

/// An effective set: a name, a finite fragment used for enumeration, and
/// an optional membership test for the full carrier.
type Membership<E> = Arc<dyn Fn(&E) -> bool + Send + Sync>;

#[derive(Clone)]
pub struct Carrier<E> {
    pub name: String,
    pub fragment: Vec<E>,
    member: Option<Membership<E>>,
}

impl<E: Element> Carrier<E> {
    /// A finite carrier given by its elements.
    pub fn finite(name: impl Into<String>, elements: Vec<E>) -> Self {
        Carrier { name: name.into(), fragment: elements, member: None }
    }

    /// An infinite carrier: a fragment for enumeration plus a membership rule.
    pub fn effective(
        name: impl Into<String>,
        fragment: Vec<E>,
        member: impl Fn(&E) -> bool + Send + Sync + 'static,
    ) -> Self {
        Carrier { name: name.into(), fragment, member: Some(Arc::new(member)) }
    }

    pub fn contains(&self, x: &E) -> bool {
        match &self.member {
            Some(m) => m(x),
            None => self.fragment.contains(x),
        }
    }
}

impl<E> fmt::Debug for Carrier<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Carrier({}, {} listed)", self.name, self.fragment.len())
    }
}

/// A deterministic element stream, cut into grades.
#[derive(Debug, Clone)]
pub struct Enumeration<E> {
    pub items: Vec<E>,
    /// Start offsets of each grade inside `items`.
    pub grades: Vec<usize>,
    /// True when the stream lists the declared fragment completely.
    pub exhaustive: bool,
}

impl<E: Element> Enumeration<E> {
    /// Concatenates grades until `budget` items are reached.
    pub fn from_grades(grades: impl IntoIterator<Item = Vec<E>>, budget: usize, complete: bool) -> Self {
        let mut items = Vec::new();
        let mut starts = Vec::new();
        let mut truncated = false;
        for grade in grades {
            if items.len() >= budget {
                truncated = !grade.is_empty();
                if truncated {
                    break;
                }
                continue;
            }
            starts.push(items.len());
            let room = budget - items.len();
            if grade.len() > room {
                truncated = true;
            }
            items.extend(grade.into_iter().take(room));
            if truncated {
                break;
            }
        }
        Enumeration { items, grades: starts, exhaustive: complete && !truncated }
    }

    /// A single-grade stream.
    pub fn flat(items: Vec<E>, budget: usize, complete: bool) -> Self {
        Self::from_grades(std::iter::once(items), budget, complete)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Shuffles within each grade when the stream is a truncated view of an
    /// infinite carrier; exhaustive streams keep their order.
    pub fn shuffled(mut self, seed: u64) -> Self {
        if self.exhaustive {
            return self;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bounds = self.grades.clone();
        bounds.push(self.items.len());
        for w in bounds.windows(2) {
            self.items[w[0]..w[1]].shuffle(&mut rng);
        }
        self
    }
}

/// All sequences over `base` whose support lies below `support_bound`,
/// with overridden entries drawn from `values`, graded by support size.
pub fn enumerate_seqs<E: Element>(
    base: &Arc<BaseSeq<E>>,
    values: &[E],
    support_bound: usize,
    budget: usize,
) -> Enumeration<OmegaSeq<E>> {
    let choices: Vec<Vec<E>> = (0..support_bound)
        .map(|i| {
            let b = base.at(i);
            values.iter().filter(|v| **v != b).cloned().collect()
        })
        .collect();
    let mut grades: Vec<Vec<OmegaSeq<E>>> = Vec::new();
    let mut produced = 0usize;
    'sizes: for size in 0..=support_bound {
        let mut grade = Vec::new();
        if size == 0 {
            grade.push(OmegaSeq::new(base));
        }
        for idx in (0..support_bound).combinations(size).filter(|_| size > 0) {
            let pools: Vec<&Vec<E>> = idx.iter().map(|&i| &choices[i]).collect();
            for pick in pools.iter().map(|p| p.iter()).multi_cartesian_product() {
                grade.push(OmegaSeq::from_entries(base, idx.iter().copied().zip(pick.into_iter().cloned())));
                if produced + grade.len() > budget {
                    grades.push(grade);
                    break 'sizes;
                }
            }
        }
        produced += grade.len();
        grades.push(grade);
    }
    Enumeration::from_grades(grades, budget, true)
}
