// SPDX-License-Identifier: Apache-2.0

//! Closed sums of the instances that structure files can build, so the
//! CLI can hold any of them behind one type.

use super::{
    check_absclone, check_clone, check_merge, check_mmonoid, check_pica, replay_absclone, replay_clone, replay_merge,
    replay_mmonoid, replay_pica, CheckError, Kind, Report, SuiteId, TestDomain,
};
use crate::absclone::{AcToCa, CaToAc, ConcreteClone};
use crate::clonealg::{Fca, ProjectionAlgebra, TermCloneAlgebra};
use crate::merge::{CanonicalMerge, DegenerateMerge};
use crate::mmonoid::{ArithAm, DegenerateMMonoid, FdimEndoCm, LeftZero, Oplus, ProductMMonoid};
use crate::pica::{PicaFromCa, QuantalePica};
use crate::translate::{CaToCm, PicaToEcm};
use crate::verdict::Verdict;

#[derive(Clone)]
pub enum MergeHandle {
    Canonical(CanonicalMerge<u32>),
    Degenerate(DegenerateMerge<u32>),
}

#[derive(Clone)]
pub enum MMonoidHandle {
    Product(ProductMMonoid),
    Degenerate(DegenerateMMonoid),
    Arith(ArithAm),
    ProjCm(CaToCm<ProjectionAlgebra>),
    FcaCm(CaToCm<Fca>),
    FdimEndo(FdimEndoCm),
    LeftZero(LeftZero<CanonicalMerge<u32>>),
    OplusProduct(Oplus<ProductMMonoid>),
    OplusProjCm(Oplus<CaToCm<ProjectionAlgebra>>),
    QuantaleEcm(PicaToEcm<QuantalePica>),
}

#[derive(Clone)]
pub enum CloneHandle {
    Projection(ProjectionAlgebra),
    Fca(Fca),
    Term(TermCloneAlgebra),
    AcCa(AcToCa<ConcreteClone>),
}

#[derive(Clone)]
pub enum AbsCloneHandle {
    Concrete(ConcreteClone),
    RcProjection(CaToAc<ProjectionAlgebra>),
    RcFca(CaToAc<Fca>),
}

#[derive(Clone)]
pub enum PicaHandle {
    Quantale(QuantalePica),
    Projection(PicaFromCa<ProjectionAlgebra>),
    Fca(PicaFromCa<Fca>),
}

#[derive(Clone)]
pub enum StructureHandle {
    Merge(MergeHandle),
    Mmonoid(MMonoidHandle),
    Clonealg(CloneHandle),
    Absclone(AbsCloneHandle),
    Pica(PicaHandle),
}

/// Runs `$body` with `$x` bound to the concrete instance inside a handle.
macro_rules! each_merge {
    ($h:expr, $x:ident => $body:expr) => {
        match $h {
            $crate::checker::MergeHandle::Canonical($x) => $body,
            $crate::checker::MergeHandle::Degenerate($x) => $body,
        }
    };
}

macro_rules! each_mmonoid {
    ($h:expr, $x:ident => $body:expr) => {
        match $h {
            $crate::checker::MMonoidHandle::Product($x) => $body,
            $crate::checker::MMonoidHandle::Degenerate($x) => $body,
            $crate::checker::MMonoidHandle::Arith($x) => $body,
            $crate::checker::MMonoidHandle::ProjCm($x) => $body,
            $crate::checker::MMonoidHandle::FcaCm($x) => $body,
            $crate::checker::MMonoidHandle::FdimEndo($x) => $body,
            $crate::checker::MMonoidHandle::LeftZero($x) => $body,
            $crate::checker::MMonoidHandle::OplusProduct($x) => $body,
            $crate::checker::MMonoidHandle::OplusProjCm($x) => $body,
            $crate::checker::MMonoidHandle::QuantaleEcm($x) => $body,
        }
    };
}

macro_rules! each_clone {
    ($h:expr, $x:ident => $body:expr) => {
        match $h {
            $crate::checker::CloneHandle::Projection($x) => $body,
            $crate::checker::CloneHandle::Fca($x) => $body,
            $crate::checker::CloneHandle::Term($x) => $body,
            $crate::checker::CloneHandle::AcCa($x) => $body,
        }
    };
}

macro_rules! each_absclone {
    ($h:expr, $x:ident => $body:expr) => {
        match $h {
            $crate::checker::AbsCloneHandle::Concrete($x) => $body,
            $crate::checker::AbsCloneHandle::RcProjection($x) => $body,
            $crate::checker::AbsCloneHandle::RcFca($x) => $body,
        }
    };
}

macro_rules! each_pica {
    ($h:expr, $x:ident => $body:expr) => {
        match $h {
            $crate::checker::PicaHandle::Quantale($x) => $body,
            $crate::checker::PicaHandle::Projection($x) => $body,
            $crate::checker::PicaHandle::Fca($x) => $body,
        }
    };
}

pub(crate) use {each_absclone, each_clone, each_merge, each_mmonoid, each_pica};

impl std::fmt::Debug for StructureHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ({})", self.name(), self.kind())
    }
}

impl StructureHandle {
    pub fn kind(&self) -> Kind {
        match self {
            StructureHandle::Merge(_) => Kind::Merge,
            StructureHandle::Mmonoid(_) => Kind::Mmonoid,
            StructureHandle::Clonealg(_) => Kind::Clonealg,
            StructureHandle::Absclone(_) => Kind::Absclone,
            StructureHandle::Pica(_) => Kind::Pica,
        }
    }

    pub fn name(&self) -> String {
        use crate::absclone::AbstractClone;
        use crate::clonealg::CloneAlgebra;
        use crate::merge::MergeAlgebra;
        use crate::pica::Pica;
        match self {
            StructureHandle::Merge(h) => each_merge!(h, x => x.name()),
            StructureHandle::Mmonoid(h) => each_mmonoid!(h, x => x.name()),
            StructureHandle::Clonealg(h) => each_clone!(h, x => x.name()),
            StructureHandle::Absclone(h) => each_absclone!(h, x => x.name()),
            StructureHandle::Pica(h) => each_pica!(h, x => x.name()),
        }
    }

    pub fn check(&self, suite: SuiteId, dom: &TestDomain) -> Result<Report, CheckError> {
        match self {
            StructureHandle::Merge(h) => each_merge!(h, x => check_merge(x, suite, dom)),
            StructureHandle::Mmonoid(h) => each_mmonoid!(h, x => check_mmonoid(x, suite, dom)),
            StructureHandle::Clonealg(h) => each_clone!(h, x => check_clone(x, suite, dom)),
            StructureHandle::Absclone(h) => each_absclone!(h, x => check_absclone(x, suite, dom)),
            StructureHandle::Pica(h) => each_pica!(h, x => check_pica(x, suite, dom)),
        }
    }

    pub fn replay(&self, suite: SuiteId, dom: &TestDomain, law: &str, a: &[usize]) -> Result<Verdict, CheckError> {
        match self {
            StructureHandle::Merge(h) => each_merge!(h, x => replay_merge(x, suite, dom, law, a)),
            StructureHandle::Mmonoid(h) => each_mmonoid!(h, x => replay_mmonoid(x, suite, dom, law, a)),
            StructureHandle::Clonealg(h) => each_clone!(h, x => replay_clone(x, suite, dom, law, a)),
            StructureHandle::Absclone(h) => each_absclone!(h, x => replay_absclone(x, suite, dom, law, a)),
            StructureHandle::Pica(h) => each_pica!(h, x => replay_pica(x, suite, dom, law, a)),
        }
    }
}
