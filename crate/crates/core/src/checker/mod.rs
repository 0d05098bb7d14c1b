// SPDX-License-Identifier: Apache-2.0

//! Bounded equational checking: law suites evaluated over deterministic
//! assignment streams, with replayable witnesses and byte-stable reports.

mod engine;
pub(crate) mod handle;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::absclone::AbstractClone;
use crate::clonealg::CloneAlgebra;
use crate::merge::PointedMerge;
use crate::mmonoid::MMonoid;
use crate::pica::Pica;
use crate::verdict::{Verdict, Witness};

use engine::{fingerprint, run_law, Entry};

pub use engine::FAST_LIMIT;
pub use handle::{AbsCloneHandle, CloneHandle, MergeHandle, MMonoidHandle, PicaHandle, StructureHandle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("suite {suite} does not apply to a {kind} structure")]
    SignatureMismatch { suite: SuiteId, kind: Kind },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("suite {suite} has no law `{law}`")]
    UnknownLaw { suite: SuiteId, law: String },
    #[error("assignment {0:?} does not fit the law's ranges")]
    BadAssignment(Vec<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Merge,
    Mmonoid,
    Clonealg,
    Absclone,
    Pica,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Merge => "merge",
            Kind::Mmonoid => "mmonoid",
            Kind::Clonealg => "clonealg",
            Kind::Absclone => "absclone",
            Kind::Pica => "pica",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SuiteId {
    #[serde(rename = "MERGE_B")]
    MergeB,
    #[serde(rename = "MONOID")]
    Monoid,
    #[serde(rename = "MMON_L1")]
    MmonL1,
    #[serde(rename = "CM_L2")]
    CmL2,
    #[serde(rename = "AM_L3")]
    AmL3,
    #[serde(rename = "AM_L4")]
    AmL4,
    #[serde(rename = "CA_C")]
    CaC,
    #[serde(rename = "PICA")]
    Pica,
    #[serde(rename = "NEUMANN_N")]
    NeumannN,
    #[serde(rename = "ABSCLONE")]
    Absclone,
}

impl SuiteId {
    pub const ALL: [SuiteId; 10] = [
        SuiteId::MergeB,
        SuiteId::Monoid,
        SuiteId::MmonL1,
        SuiteId::CmL2,
        SuiteId::AmL3,
        SuiteId::AmL4,
        SuiteId::CaC,
        SuiteId::Pica,
        SuiteId::NeumannN,
        SuiteId::Absclone,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteId::MergeB => "MERGE_B",
            SuiteId::Monoid => "MONOID",
            SuiteId::MmonL1 => "MMON_L1",
            SuiteId::CmL2 => "CM_L2",
            SuiteId::AmL3 => "AM_L3",
            SuiteId::AmL4 => "AM_L4",
            SuiteId::CaC => "CA_C",
            SuiteId::Pica => "PICA",
            SuiteId::NeumannN => "NEUMANN_N",
            SuiteId::Absclone => "ABSCLONE",
        }
    }

    /// Whether the suite's signature is available on the kind. Merge laws
    /// apply to m-monoids through their merge reduct.
    pub fn applies_to(&self, kind: Kind) -> bool {
        match self {
            SuiteId::MergeB => matches!(kind, Kind::Merge | Kind::Mmonoid),
            SuiteId::Monoid | SuiteId::MmonL1 | SuiteId::CmL2 | SuiteId::AmL3 | SuiteId::AmL4 => kind == Kind::Mmonoid,
            SuiteId::CaC => kind == Kind::Clonealg,
            SuiteId::Pica | SuiteId::NeumannN => kind == Kind::Pica,
            SuiteId::Absclone => kind == Kind::Absclone,
        }
    }

    /// Default suites for a kind, in report order.
    pub fn defaults(kind: Kind) -> Vec<SuiteId> {
        SuiteId::ALL
            .into_iter()
            .filter(|s| s.applies_to(kind) && !matches!(s, SuiteId::AmL3 | SuiteId::AmL4 | SuiteId::NeumannN))
            .collect()
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = CheckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let up = s.trim().to_ascii_uppercase();
        SuiteId::ALL.into_iter().find(|id| id.as_str() == up).ok_or_else(|| CheckError::UnknownSuite(s.to_string()))
    }
}

/// Bounds of one checking run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TestDomain {
    /// Elements per carrier, or per sort.
    pub budget: usize,
    /// Range `0..=index_bound` of `n`, `k`, `m`.
    pub index_bound: usize,
    /// Permutations have domain inside `{0..perm_bound-1}`.
    pub perm_bound: usize,
    pub seed: u64,
    /// Assignments per law before switching to seeded sampling.
    pub cap: usize,
}

impl Default for TestDomain {
    fn default() -> Self {
        TestDomain { budget: 64, index_bound: 4, perm_bound: 4, seed: 0, cap: 2_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureInfo {
    pub name: String,
    pub kind: Kind,
    /// Hash of the kind, name and the first enumerated elements.
    pub fingerprint: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub element: usize,
    pub index: usize,
    pub perm: usize,
    pub cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DomainInfo {
    pub budgets: Budgets,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub name: String,
    pub verdict: &'static str,
    pub count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub result: Verdict,
}

impl LawReport {
    pub fn new(name: String, v: Verdict) -> Self {
        let note = match &v {
            Verdict::Unknown(s) => Some(s.clone()),
            _ => None,
        };
        LawReport { name, verdict: v.label(), count: v.count(), witness: v.witness().cloned(), note, result: v }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub structure: StructureInfo,
    pub suite: SuiteId,
    pub domain: DomainInfo,
    pub laws: Vec<LawReport>,
    /// Wall-clock time; cleared for byte-stable output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl Report {
    /// No law failed.
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| !l.result.is_fail())
    }

    /// Every law passed on its full grid.
    pub fn exhaustive(&self) -> bool {
        self.laws.iter().all(|l| l.result.is_exhaustive())
    }

    pub fn law(&self, name: &str) -> Option<&LawReport> {
        self.laws.iter().find(|l| l.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawReport> {
        self.laws.iter().filter(|l| l.result.is_fail())
    }

    pub fn without_timing(mut self) -> Self {
        self.wall_ms = None;
        self
    }

    pub fn to_json(&self, pretty: bool) -> String {
        let r = if pretty { serde_json::to_string_pretty(self) } else { serde_json::to_string(self) };
        r.expect("report serializes")
    }
}

fn thread_pool() -> rayon::ThreadPool {
    let threads = std::env::var("CLONOID_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
}

fn drive(info: StructureInfo, suite: SuiteId, dom: &TestDomain, entries: Vec<Entry<'_>>) -> Report {
    let start = Instant::now();
    let laws = thread_pool().install(|| {
        entries
            .into_iter()
            .map(|e| match e {
                Entry::Grid(law) => LawReport::new(law.name.clone(), run_law(&law, dom.cap, dom.seed)),
            })
            .collect()
    });
    Report {
        structure: info,
        suite,
        domain: DomainInfo {
            budgets: Budgets { element: dom.budget, index: dom.index_bound, perm: dom.perm_bound, cap: dom.cap },
            seed: dom.seed,
        },
        laws,
        wall_ms: Some(start.elapsed().as_millis() as u64),
    }
}

fn replay_in(suite: SuiteId, entries: Vec<Entry<'_>>, law: &str, assignment: &[usize]) -> Result<Verdict, CheckError> {
    let found = entries.into_iter().find_map(|e| match e {
        Entry::Grid(l) => (l.name == law).then_some(l),
    });
    let l = found.ok_or_else(|| CheckError::UnknownLaw { suite, law: law.to_string() })?;
    if assignment.len() != l.dims.len() || assignment.iter().zip(&l.dims).any(|(a, d)| a >= d) {
        return Err(CheckError::BadAssignment(assignment.to_vec()));
    }
    Ok(match (l.eval)(assignment) {
        Some(f) => Verdict::fail(Witness::new(f.bindings, f.lhs, f.rhs).with_assignment(assignment.to_vec())),
        None => Verdict::pass(1, false),
    })
}

fn info<E: fmt::Debug>(kind: Kind, name: String, sample: &[E]) -> StructureInfo {
    let text = format!("{kind}|{name}|{sample:?}");
    StructureInfo { name, kind, fingerprint: fingerprint(&text) }
}

fn mismatch(suite: SuiteId, kind: Kind) -> CheckError {
    CheckError::SignatureMismatch { suite, kind }
}

fn merge_entries<'a, P: PointedMerge>(p: &'a P, suite: SuiteId, dom: &TestDomain) -> Result<Vec<Entry<'a>>, CheckError> {
    match suite {
        SuiteId::MergeB => Ok(suites::merge::suite(p, dom)),
        _ => Err(mismatch(suite, Kind::Merge)),
    }
}

fn mmonoid_entries<'a, M: MMonoid>(m: &'a M, suite: SuiteId, dom: &TestDomain) -> Result<Vec<Entry<'a>>, CheckError> {
    Ok(match suite {
        SuiteId::MergeB => suites::merge::suite(m, dom),
        SuiteId::Monoid => suites::monoid::monoid(m, dom),
        SuiteId::MmonL1 => suites::monoid::l1(m, dom),
        SuiteId::CmL2 => suites::monoid::l2(m, dom),
        SuiteId::AmL3 => suites::monoid::l3(m, dom),
        SuiteId::AmL4 => suites::monoid::l4(m, dom),
        _ => return Err(mismatch(suite, Kind::Mmonoid)),
    })
}

fn clone_entries<'a, C: CloneAlgebra>(c: &'a C, suite: SuiteId, dom: &TestDomain) -> Result<Vec<Entry<'a>>, CheckError> {
    match suite {
        SuiteId::CaC => Ok(suites::clone::suite(c, dom)),
        _ => Err(mismatch(suite, Kind::Clonealg)),
    }
}

fn absclone_entries<'a, B: AbstractClone>(b: &'a B, suite: SuiteId, dom: &TestDomain) -> Result<Vec<Entry<'a>>, CheckError> {
    match suite {
        SuiteId::Absclone => Ok(suites::absclone::suite(b, dom)),
        _ => Err(mismatch(suite, Kind::Absclone)),
    }
}

fn pica_entries<'a, P: Pica>(p: &'a P, suite: SuiteId, dom: &TestDomain) -> Result<Vec<Entry<'a>>, CheckError> {
    match suite {
        SuiteId::Pica => Ok(suites::pica::suite(p, dom)),
        SuiteId::NeumannN => Ok(suites::pica::neumann(p, dom)),
        _ => Err(mismatch(suite, Kind::Pica)),
    }
}

pub fn check_merge<P: PointedMerge>(p: &P, suite: SuiteId, dom: &TestDomain) -> Result<Report, CheckError> {
    let entries = merge_entries(p, suite, dom)?;
    Ok(drive(info(Kind::Merge, p.name(), &p.enumerate(16).items), suite, dom, entries))
}

pub fn check_mmonoid<M: MMonoid>(m: &M, suite: SuiteId, dom: &TestDomain) -> Result<Report, CheckError> {
    let entries = mmonoid_entries(m, suite, dom)?;
    Ok(drive(info(Kind::Mmonoid, m.name(), &m.enumerate(16).items), suite, dom, entries))
}

pub fn check_clone<C: CloneAlgebra>(c: &C, suite: SuiteId, dom: &TestDomain) -> Result<Report, CheckError> {
    let entries = clone_entries(c, suite, dom)?;
    Ok(drive(info(Kind::Clonealg, c.name(), &c.enumerate(16).items), suite, dom, entries))
}

pub fn check_absclone<B: AbstractClone>(b: &B, suite: SuiteId, dom: &TestDomain) -> Result<Report, CheckError> {
    let entries = absclone_entries(b, suite, dom)?;
    let sample: Vec<_> = (0..=b.sort_bound().min(2)).flat_map(|s| b.sort(s, 8).items).collect();
    Ok(drive(info(Kind::Absclone, b.name(), &sample), suite, dom, entries))
}

pub fn check_pica<P: Pica>(p: &P, suite: SuiteId, dom: &TestDomain) -> Result<Report, CheckError> {
    let entries = pica_entries(p, suite, dom)?;
    Ok(drive(info(Kind::Pica, p.name(), &p.enumerate(16).items), suite, dom, entries))
}

/// Re-evaluates one law at a recorded assignment.
pub fn replay_merge<P: PointedMerge>(p: &P, suite: SuiteId, dom: &TestDomain, law: &str, a: &[usize]) -> Result<Verdict, CheckError> {
    replay_in(suite, merge_entries(p, suite, dom)?, law, a)
}

pub fn replay_mmonoid<M: MMonoid>(m: &M, suite: SuiteId, dom: &TestDomain, law: &str, a: &[usize]) -> Result<Verdict, CheckError> {
    replay_in(suite, mmonoid_entries(m, suite, dom)?, law, a)
}

pub fn replay_clone<C: CloneAlgebra>(c: &C, suite: SuiteId, dom: &TestDomain, law: &str, a: &[usize]) -> Result<Verdict, CheckError> {
    replay_in(suite, clone_entries(c, suite, dom)?, law, a)
}

pub fn replay_absclone<B: AbstractClone>(
    b: &B,
    suite: SuiteId,
    dom: &TestDomain,
    law: &str,
    a: &[usize],
) -> Result<Verdict, CheckError> {
    replay_in(suite, absclone_entries(b, suite, dom)?, law, a)
}

pub fn replay_pica<P: Pica>(p: &P, suite: SuiteId, dom: &TestDomain, law: &str, a: &[usize]) -> Result<Verdict, CheckError> {
    replay_in(suite, pica_entries(p, suite, dom)?, law, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clonealg::projection_algebra;
    use crate::merge::{degenerate_merge, CanonicalMerge};
    use crate::mmonoid::{product_mmonoid, ArithAm, FiniteMonoid, MonoidFamily};
    use crate::seq::{BaseSeq, Carrier};

    fn seq2() -> CanonicalMerge<u32> {
        CanonicalMerge::new(&BaseSeq::constant("zero", 0u32), Carrier::finite("A", vec![0, 1]), 3).unwrap()
    }

    #[test]
    fn degenerate_merge_passes_exhaustively() {
        let d = degenerate_merge(Carrier::finite("A", vec![0u32, 1, 2]));
        let r = check_merge(&d, SuiteId::MergeB, &TestDomain::default()).unwrap();
        assert!(r.exhaustive(), "{}", r.to_json(true));
    }

    #[test]
    fn canonical_merge_passes_exhaustively() {
        let dom = TestDomain { perm_bound: 3, ..TestDomain::default() };
        let r = check_merge(&seq2(), SuiteId::MergeB, &dom).unwrap();
        assert!(r.exhaustive(), "{}", r.to_json(true));
        assert!(r.law("B7").unwrap().count > 0);
    }

    #[test]
    fn product_fails_l2_and_replays() {
        let m = product_mmonoid(MonoidFamily::constant(FiniteMonoid::cyclic(2)), 3).unwrap();
        let dom = TestDomain::default();
        let r = check_mmonoid(&m, SuiteId::CmL2, &dom).unwrap();
        let l2 = r.law("L2").unwrap();
        let w = l2.witness.as_ref().expect("witness");
        assert!(w.get("sigma").is_some());
        let again = replay_mmonoid(&m, SuiteId::CmL2, &dom, "L2", &w.assignment).unwrap();
        assert_eq!(again.witness(), Some(w));
        assert!(check_mmonoid(&m, SuiteId::MmonL1, &dom).unwrap().exhaustive());
    }

    #[test]
    fn arith_am_is_sampled() {
        let dom = TestDomain { budget: 200, cap: 300, ..TestDomain::default() };
        for s in [SuiteId::AmL3, SuiteId::AmL4] {
            let r = check_mmonoid(&ArithAm::new(), s, &dom).unwrap();
            assert!(r.passed() && !r.exhaustive(), "{}", r.to_json(true));
        }
        assert!(!check_mmonoid(&ArithAm::new(), SuiteId::CmL2, &dom).unwrap().passed());
    }

    #[test]
    fn projection_algebra_clone_laws() {
        let dom = TestDomain { index_bound: 3, ..TestDomain::default() };
        let r = check_clone(&projection_algebra(5), SuiteId::CaC, &dom).unwrap();
        assert!(r.exhaustive(), "{}", r.to_json(true));
    }

    #[test]
    fn signature_mismatch() {
        let e = check_clone(&projection_algebra(3), SuiteId::CmL2, &TestDomain::default()).unwrap_err();
        assert_eq!(e, CheckError::SignatureMismatch { suite: SuiteId::CmL2, kind: Kind::Clonealg });
        assert_eq!("cm_l2".parse::<SuiteId>().unwrap(), SuiteId::CmL2);
        assert!("L9".parse::<SuiteId>().is_err());
    }

    #[test]
    fn reports_are_byte_stable() {
        let m = product_mmonoid(MonoidFamily::constant(FiniteMonoid::cyclic(2)), 2).unwrap();
        let dom = TestDomain { cap: 50, seed: 7, ..TestDomain::default() };
        let a = check_mmonoid(&m, SuiteId::MmonL1, &dom).unwrap().without_timing().to_json(false);
        let b = check_mmonoid(&m, SuiteId::MmonL1, &dom).unwrap().without_timing().to_json(false);
        assert_eq!(a, b);
        assert!(a.contains("\"suite\":\"MMON_L1\""));
    }
}
