// SPDX-License-Identifier: Apache-2.0

//! m-monoids: a pointed merge algebra whose coordinator is the unit of a
//! right-distributive monoid, together with the standard instance families.

mod arith;
mod classify;
mod dim;
mod endo;
mod fdim;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::merge::{CanonicalMerge, DegenerateMerge, MergeAlgebra, MergeError, MergeTag, PointedMerge};
use crate::seq::{BaseSeq, Carrier, Enumeration, FinPerm, OmegaSeq};

pub use arith::{nth_prime, ArithAm};
pub use classify::{classify_type, is_extensional, noncomm_witness, TypeClass, TypeEvidence};
pub use dim::{dim_predicate, dimension_sets, DimBounds, DimMode, DimSetBounds, DimensionRow, DimensionSets};
pub use fdim::{fdim_endo_cm, FdimEndoCm};
pub use endo::{endofunction_cm, Endo, EndofunctionCm, ENDO_CARRIER_LIMIT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("not a monoid: {0}")]
    NotAMonoid(String),
    #[error("monoids of the family do not share one carrier ({0} vs {1} elements)")]
    CarrierMismatch(usize, usize),
    #[error("zero is not a positive natural number")]
    ZeroInput,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error(transparent)]
    Merge(#[from] MergeError),
}

/// Flavor claimed by a constructor; the checker re-derives it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Plain,
    Cm,
    Am,
    AmStrong,
}

/// An m-monoid: `(x ⋆ₙ y)·z = (x·z) ⋆ₙ (y·z)` with unit the coordinator.
pub trait MMonoid: PointedMerge {
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    fn flavor(&self) -> Flavor;

    /// Exact answer to `D_ω(a,n,m)` (equivalently `D`) when the instance
    /// knows one.
    fn dim_oracle(&self, _a: &Self::Elem, _n: usize, _m: usize) -> Option<bool> {
        None
    }

    /// Elements of rank `≤ 1`, the carrier of the derived clone algebra.
    /// The default filters the general enumeration.
    fn enumerate_rank_le1(&self, budget: usize) -> Enumeration<Self::Elem> {
        let en = self.enumerate(budget);
        let mut bounds = en.grades.clone();
        bounds.push(en.items.len());
        let grades = bounds
            .windows(2)
            .map(|w| en.items[w[0]..w[1]].iter().filter(|x| self.rank(x, 1).is_some()).cloned().collect::<Vec<_>>());
        Enumeration::from_grades(grades, budget, en.exhaustive)
    }
}

/// A monoid on `{0..size-1}` given by its Cayley table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    name: String,
    size: u32,
    table: Arc<Vec<u32>>,
    unit: u32,
}

impl FiniteMonoid {
    pub fn new(name: impl Into<String>, size: u32, table: Vec<u32>, unit: u32) -> Result<Self, MonoidError> {
        let s = size as usize;
        if table.len() != s * s {
            return Err(MonoidError::NotAMonoid(format!("table has {} entries, expected {}", table.len(), s * s)));
        }
        if unit >= size || table.iter().any(|&v| v >= size) {
            return Err(MonoidError::NotAMonoid("value outside the carrier".into()));
        }
        let m = FiniteMonoid { name: name.into(), size, table: Arc::new(table), unit };
        for a in 0..size {
            if m.mul(a, unit) != a || m.mul(unit, a) != a {
                return Err(MonoidError::NotAMonoid(format!("{unit} is not a unit at {a}")));
            }
            for b in 0..size {
                for c in 0..size {
                    if m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c)) {
                        return Err(MonoidError::NotAMonoid(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(m)
    }

    /// `(Z_n, +, 0)`.
    pub fn cyclic(n: u32) -> Self {
        let table = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
        FiniteMonoid::new(format!("Z{n}"), n, table, 0).expect("cyclic group")
    }

    /// `({0,1}, ∧, 1)`.
    pub fn and() -> Self {
        FiniteMonoid::new("and", 2, vec![0, 0, 0, 1], 1).expect("and monoid")
    }

    /// `({0,1}, ∨, 0)`.
    pub fn or() -> Self {
        FiniteMonoid::new("or", 2, vec![0, 1, 1, 1], 0).expect("or monoid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn unit(&self) -> u32 {
        self.unit
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[(a * self.size + b) as usize]
    }
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// `m(A)`: `a·b = b` unless `b = 1`, in which case `a·b = a`.
#[derive(Clone)]
pub struct LeftZero<P> {
    inner: P,
}

pub fn left_zero<P: PointedMerge>(p: P) -> LeftZero<P> {
    LeftZero { inner: p }
}

impl<P: PointedMerge> LeftZero<P> {
    pub fn inner(&self) -> &P {
        &self.inner
    }
}

impl<P: PointedMerge> MergeAlgebra for LeftZero<P> {
    type Elem = P::Elem;

    fn name(&self) -> String {
        format!("left_zero({})", self.inner.name())
    }

    fn star(&self, n: usize, x: &P::Elem, y: &P::Elem) -> P::Elem {
        self.inner.star(n, x, y)
    }

    fn permute(&self, sigma: &FinPerm, x: &P::Elem) -> P::Elem {
        self.inner.permute(sigma, x)
    }

    fn enumerate(&self, budget: usize) -> Enumeration<P::Elem> {
        self.inner.enumerate(budget)
    }

    fn tag(&self) -> MergeTag {
        self.inner.tag()
    }
}

impl<P: PointedMerge> PointedMerge for LeftZero<P> {
    fn one(&self) -> P::Elem {
        self.inner.one()
    }

    fn rank(&self, x: &P::Elem, bound: usize) -> Option<usize> {
        self.inner.rank(x, bound)
    }

    fn coordinate_tail(&self, x: &P::Elem, bound: usize) -> Option<usize> {
        self.inner.coordinate_tail(x, bound)
    }
}

impl<P: PointedMerge> MMonoid for LeftZero<P> {
    fn mul(&self, a: &P::Elem, b: &P::Elem) -> P::Elem {
        if *b == self.inner.one() {
            a.clone()
        } else {
            b.clone()
        }
    }

    fn flavor(&self) -> Flavor {
        match self.inner.tag() {
            MergeTag::Degenerate => Flavor::Cm,
            _ => Flavor::Plain,
        }
    }
}

/// A family of monoids on a shared carrier: a finite prefix, then a constant tail.
#[derive(Clone, Debug)]
pub struct MonoidFamily {
    prefix: Vec<FiniteMonoid>,
    tail: FiniteMonoid,
}

impl MonoidFamily {
    pub fn new(prefix: Vec<FiniteMonoid>, tail: FiniteMonoid) -> Result<Self, MonoidError> {
        for m in &prefix {
            if m.size != tail.size {
                return Err(MonoidError::CarrierMismatch(m.size as usize, tail.size as usize));
            }
        }
        Ok(MonoidFamily { prefix, tail })
    }

    pub fn constant(m: FiniteMonoid) -> Self {
        MonoidFamily { prefix: Vec::new(), tail: m }
    }

    pub fn at(&self, i: usize) -> &FiniteMonoid {
        self.prefix.get(i).unwrap_or(&self.tail)
    }

    pub fn all_equal(&self) -> bool {
        self.prefix.iter().all(|m| *m == self.tail)
    }

    fn describe(&self) -> String {
        let mut parts: Vec<&str> = self.prefix.iter().map(|m| m.name()).collect();
        parts.push(self.tail.name());
        format!("{}...", parts.join(","))
    }
}

/// The product m-monoid of a family: componentwise product on the trace
/// of `(ε₀, ε₁, …)` with the canonical merge structure.
#[derive(Clone)]
pub struct ProductMMonoid {
    family: Arc<MonoidFamily>,
    merge: CanonicalMerge<u32>,
}

pub fn product_mmonoid(family: MonoidFamily, support_bound: usize) -> Result<ProductMMonoid, MonoidError> {
    let tail_base = BaseSeq::constant(format!("unit:{}", family.tail.name()), family.tail.unit);
    let base = if family.prefix.is_empty() {
        tail_base
    } else {
        BaseSeq::mixed(format!("units:{}", family.describe()), family.prefix.iter().map(|m| m.unit).collect(), &tail_base)
    };
    let size = family.tail.size;
    let carrier = Carrier::finite(format!("M{size}"), (0..size).collect());
    let merge = CanonicalMerge::new(&base, carrier, support_bound)?;
    Ok(ProductMMonoid { family: Arc::new(family), merge })
}

impl ProductMMonoid {
    pub fn family(&self) -> &MonoidFamily {
        &self.family
    }

    pub fn seq(&self, prefix: impl IntoIterator<Item = u32>) -> OmegaSeq<u32> {
        self.merge.seq(prefix)
    }
}

impl MergeAlgebra for ProductMMonoid {
    type Elem = OmegaSeq<u32>;

    fn name(&self) -> String {
        format!("product({},L={})", self.family.describe(), self.merge.support_bound())
    }

    fn star(&self, n: usize, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.merge.star(n, x, y)
    }

    fn permute(&self, sigma: &FinPerm, x: &Self::Elem) -> Self::Elem {
        self.merge.permute(sigma, x)
    }

    fn enumerate(&self, budget: usize) -> Enumeration<Self::Elem> {
        self.merge.enumerate(budget)
    }

    fn tag(&self) -> MergeTag {
        MergeTag::Canonical
    }
}

impl PointedMerge for ProductMMonoid {
    fn one(&self) -> Self::Elem {
        self.merge.one()
    }

    fn rank(&self, x: &Self::Elem, bound: usize) -> Option<usize> {
        self.merge.rank(x, bound)
    }
}

impl MMonoid for ProductMMonoid {
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let idx: std::collections::BTreeSet<usize> = x.support().chain(y.support()).collect();
        OmegaSeq::from_entries(
            x.base(),
            idx.into_iter().map(|i| (i, self.family.at(i).mul(x.entry(i), y.entry(i)))),
        )
    }

    fn flavor(&self) -> Flavor {
        if self.family.all_equal() {
            Flavor::AmStrong
        } else {
            Flavor::Plain
        }
    }
}

/// A monoid seen as a degenerate m-monoid.
#[derive(Clone)]
pub struct DegenerateMMonoid {
    monoid: FiniteMonoid,
    merge: DegenerateMerge<u32>,
}

pub fn degenerate_mmonoid(monoid: FiniteMonoid) -> DegenerateMMonoid {
    let merge = DegenerateMerge::new(format!("degenerate({})", monoid.name), (0..monoid.size).collect(), monoid.unit);
    DegenerateMMonoid { monoid, merge }
}

impl DegenerateMMonoid {
    /// The multiplicative reduct, rebuilt from the m-monoid operations.
    pub fn monoid_reduct(&self) -> FiniteMonoid {
        let elems = self.enumerate(usize::MAX).items;
        let size = elems.len() as u32;
        let table = elems.iter().flat_map(|a| elems.iter().map(move |b| (*a, *b))).map(|(a, b)| self.mul(&a, &b)).collect();
        FiniteMonoid::new(self.monoid.name.clone(), size, table, self.one()).expect("reduct of a monoid")
    }
}

impl MergeAlgebra for DegenerateMMonoid {
    type Elem = u32;

    fn name(&self) -> String {
        self.merge.name()
    }

    fn star(&self, n: usize, x: &u32, y: &u32) -> u32 {
        self.merge.star(n, x, y)
    }

    fn permute(&self, sigma: &FinPerm, x: &u32) -> u32 {
        self.merge.permute(sigma, x)
    }

    fn enumerate(&self, budget: usize) -> Enumeration<u32> {
        self.merge.enumerate(budget)
    }

    fn tag(&self) -> MergeTag {
        MergeTag::Degenerate
    }
}

impl PointedMerge for DegenerateMMonoid {
    fn one(&self) -> u32 {
        self.monoid.unit
    }

    fn coordinate_tail(&self, _x: &u32, _bound: usize) -> Option<usize> {
        Some(0)
    }
}

impl MMonoid for DegenerateMMonoid {
    fn mul(&self, x: &u32, y: &u32) -> u32 {
        self.monoid.mul(*x, *y)
    }

    fn flavor(&self) -> Flavor {
        Flavor::Cm
    }
}

/// `M ⊕ M`: pairs with a parity bit.
#[derive(Clone)]
pub struct Oplus<M> {
    inner: M,
}

pub fn oplus<M: MMonoid>(m: M) -> Oplus<M> {
    Oplus { inner: m }
}

impl<M: MMonoid> Oplus<M> {
    pub fn inner(&self) -> &M {
        &self.inner
    }
}

impl<M: MMonoid> MergeAlgebra for Oplus<M> {
    type Elem = (M::Elem, u8);

    fn name(&self) -> String {
        format!("oplus({})", self.inner.name())
    }

    fn star(&self, n: usize, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        (self.inner.star(n, &x.0, &y.0), y.1)
    }

    fn permute(&self, sigma: &FinPerm, x: &Self::Elem) -> Self::Elem {
        (self.inner.permute(sigma, &x.0), x.1)
    }

    fn enumerate(&self, budget: usize) -> Enumeration<Self::Elem> {
        let inner = self.inner.enumerate(budget.div_ceil(2));
        let mut bounds = inner.grades.clone();
        bounds.push(inner.items.len());
        let grades = bounds
            .windows(2)
            .map(|w| inner.items[w[0]..w[1]].iter().flat_map(|x| [(x.clone(), 0u8), (x.clone(), 1u8)]).collect::<Vec<_>>());
        Enumeration::from_grades(grades, budget, inner.exhaustive)
    }

    fn sample(&self, rng: &mut rand_chacha::ChaCha8Rng) -> Option<Self::Elem> {
        use rand::Rng;
        let x = self.inner.sample(rng)?;
        Some((x, rng.gen_range(0..2)))
    }
}

impl<M: MMonoid> PointedMerge for Oplus<M> {
    fn one(&self) -> Self::Elem {
        (self.inner.one(), 0)
    }

    /// `(x,i)[n] = (x[n], 0)`, so the tail of `x` bounds the tail of `(x,i)`.
    fn coordinate_tail(&self, x: &Self::Elem, bound: usize) -> Option<usize> {
        self.inner.coordinate_tail(&x.0, bound)
    }
}

impl<M: MMonoid> MMonoid for Oplus<M> {
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        (self.inner.mul(&x.0, &y.0), (x.1 + y.1) % 2)
    }

    fn flavor(&self) -> Flavor {
        self.inner.flavor()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::merge::degenerate_merge;

    #[test]
    fn finite_monoid_validation() {
        assert!(FiniteMonoid::new("bad", 2, vec![0, 1, 1, 1], 1).is_err());
        assert!(FiniteMonoid::new("short", 2, vec![0, 1], 0).is_err());
        assert_eq!(FiniteMonoid::cyclic(3).mul(2, 2), 1);
    }

    #[test]
    fn left_zero_multiplication() {
        let d = degenerate_merge(Carrier::finite("three", vec![0u8, 1, 2]));
        let lz = left_zero(d);
        assert_eq!(lz.mul(&2, &0), 2);
        assert_eq!(lz.mul(&2, &1), 1);
        assert_eq!(lz.flavor(), Flavor::Cm);
    }

    #[test]
    fn product_of_z2() {
        let p = product_mmonoid(MonoidFamily::constant(FiniteMonoid::cyclic(2)), 3).unwrap();
        let x = p.seq([1, 0, 1]);
        let y = p.seq([1, 1]);
        assert_eq!(p.mul(&x, &y), p.seq([0, 1, 1]));
        assert_eq!(p.mul(&x, &p.one()), x);
        assert_eq!(p.flavor(), Flavor::AmStrong);
    }

    #[test]
    fn mixed_family_units() {
        let fam = MonoidFamily::new(vec![FiniteMonoid::and()], FiniteMonoid::or()).unwrap();
        let p = product_mmonoid(fam, 2).unwrap();
        assert_eq!(p.one().entry(0), 1);
        assert_eq!(p.one().entry(1), 0);
        assert_eq!(p.flavor(), Flavor::Plain);
        assert!(MonoidFamily::new(vec![FiniteMonoid::cyclic(3)], FiniteMonoid::or()).is_err());
    }

    #[test]
    fn degenerate_round_trip() {
        let z3 = FiniteMonoid::cyclic(3);
        let d = degenerate_mmonoid(z3.clone());
        assert_eq!(d.monoid_reduct().table(), z3.table());
        assert_eq!(d.monoid_reduct().unit(), z3.unit());
    }

    #[test]
    fn oplus_parity() {
        let p = product_mmonoid(MonoidFamily::constant(FiniteMonoid::cyclic(2)), 2).unwrap();
        let o = oplus(p.clone());
        let x = (p.seq([1]), 1u8);
        let y = (p.seq([0, 1]), 1u8);
        assert_eq!(o.mul(&x, &y), (p.seq([1, 1]), 0));
        assert_eq!(o.one(), (p.one(), 0));
        assert_eq!(o.enumerate(8).len(), 8);
    }
}
