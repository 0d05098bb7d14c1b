// SPDX-License-Identifier: Apache-2.0

//! Structure files to instances.

use super::ops;
use super::structfile::{err, ParseError, Params, Pos, Record, StructureFile, Value};
use crate::absclone::{ac_to_ca, ca_to_ac, clone_generate, ConcreteClone, FinOp, DEFAULT_OP_GUARD};
use crate::checker::{AbsCloneHandle, CloneHandle, Kind, MMonoidHandle, MergeHandle, PicaHandle, StructureHandle};
use crate::clonealg::{fca, projection_algebra, term_clone_algebra, Fca, ProjectionAlgebra, Signature};
use crate::merge::{degenerate_merge, CanonicalMerge};
use crate::mmonoid::{degenerate_mmonoid, fdim_endo_cm, left_zero, oplus, product_mmonoid, ArithAm, FiniteMonoid, MonoidFamily};
use crate::pica::{pica_from_ca, quantale_pica, FiniteQuantale};
use crate::seq::{BaseSeq, Carrier};
use crate::translate::{ca_to_cm, pica_to_ecm};

/// Constructors accepted for each kind.
pub const CONSTRUCTORS: [(Kind, &[&str]); 5] = [
    (Kind::Merge, &["canonical", "degenerate"]),
    (
        Kind::Mmonoid,
        &["product", "degenerate", "arith", "ca_to_cm", "fdim_endo", "left_zero", "oplus", "pica_to_ecm"],
    ),
    (Kind::Clonealg, &["projection", "fca", "term", "ac_to_ca"]),
    (Kind::Absclone, &["clone_generate", "ca_to_ac"]),
    (Kind::Pica, &["quantale", "pica_from_ca"]),
];

fn small<T: TryFrom<u64>>(p: &Params, key: &str, n: u64) -> Result<T, ParseError> {
    T::try_from(n).or_else(|_| {
        let pos = p.get(key).map_or(p.file().constructor_pos, |s| s.pos);
        err(pos, format!("'{key}' = {n} is out of range"))
    })
}

fn usize_param(p: &Params, key: &str) -> Result<usize, ParseError> {
    let n = p.int(key)?;
    small(p, key, n)
}

fn usize_or(p: &Params, key: &str, default: usize) -> Result<usize, ParseError> {
    let n = p.int_or(key, default as u64)?;
    small(p, key, n)
}

fn domain(p: &Params) -> Result<u8, ParseError> {
    let n = p.int("domain")?;
    small(p, "domain", n)
}

fn at<E: std::fmt::Display>(pos: Pos) -> impl Fn(E) -> ParseError {
    move |e| ParseError { pos, msg: e.to_string() }
}

fn carrier(p: &Params) -> Result<Carrier<u32>, ParseError> {
    let (xs, pos) = p.set("carrier")?;
    if xs.is_empty() {
        return err(pos, "carrier must be nonempty");
    }
    let xs: Vec<u32> = xs.into_iter().map(|x| u32::try_from(x).or_else(|_| err(pos, "carrier value out of range"))).collect::<Result<_, _>>()?;
    Ok(Carrier::finite("A", xs))
}

fn canonical(p: &Params) -> Result<CanonicalMerge<u32>, ParseError> {
    let c = carrier(p)?;
    let (prefix, tail, pos) = p.open_seq("base")?;
    let conv = |x: u64| u32::try_from(x).or_else(|_| err(pos, "base value out of range"));
    let prefix: Vec<u32> = prefix.into_iter().map(conv).collect::<Result<_, _>>()?;
    let tail = conv(tail)?;
    let id = p.get("base").map(|s| s.value.to_string()).unwrap_or_default();
    let base = if prefix.is_empty() {
        BaseSeq::constant(id, tail)
    } else {
        BaseSeq::mixed(id.clone(), prefix, &BaseSeq::constant(format!("{id}:tail"), tail))
    };
    let support = usize_param(p, "support")?;
    CanonicalMerge::new(&base, c, support).map_err(at(pos))
}

fn monoid(p: &Params) -> Result<FiniteMonoid, ParseError> {
    if let Some(s) = p.file().params.get("monoid") {
        let (name, _) = p.ident("monoid")?;
        return match name {
            "and" => Ok(FiniteMonoid::and()),
            "or" => Ok(FiniteMonoid::or()),
            _ => match name.strip_prefix('Z').and_then(|n| n.parse::<u32>().ok()) {
                Some(n) if (1..=64).contains(&n) => Ok(FiniteMonoid::cyclic(n)),
                _ => err(s.pos, format!("unknown monoid '{name}'; use Z<n>, and, or, or a 'monoid' line")),
            },
        };
    }
    let recs = p.records("monoid");
    let r = single(p, &recs, "monoid")?;
    r.only(&["size", "table", "unit"])?;
    let need = |v: Option<u64>, k: &str| v.ok_or_else(|| ParseError { pos: r.pos, msg: format!("monoid line needs '{k}'") });
    let size = need(r.int("size")?, "size")?;
    let unit = need(r.int("unit")?, "unit")?;
    let table = r.list("table")?.ok_or_else(|| ParseError { pos: r.pos, msg: "monoid line needs 'table'".into() })?;
    let conv = |x: u64| u32::try_from(x).or_else(|_| err(r.pos, "monoid value out of range"));
    let table: Vec<u32> = table.into_iter().map(conv).collect::<Result<_, _>>()?;
    FiniteMonoid::new(r.name.clone().unwrap_or_else(|| "M".into()), conv(size)?, table, conv(unit)?).map_err(at(r.pos))
}

fn single<'a>(p: &Params, recs: &[&'a Record], head: &str) -> Result<&'a Record, ParseError> {
    match recs {
        [r] => Ok(r),
        [] => err(p.file().constructor_pos, format!("constructor '{}' needs a '{head}' line or parameter", p.file().constructor)),
        [_, r, ..] => err(r.pos, format!("more than one '{head}' line")),
    }
}

fn quantale(p: &Params) -> Result<FiniteQuantale, ParseError> {
    if let Some(s) = p.file().params.get("quantale") {
        let (name, _) = p.ident("quantale")?;
        return match name {
            "boolean" => Ok(FiniteQuantale::boolean()),
            _ => err(s.pos, format!("unknown quantale '{name}'; use boolean or a 'quantale' line")),
        };
    }
    let recs = p.records("quantale");
    let r = single(p, &recs, "quantale")?;
    r.only(&["size", "join", "mul", "unit", "bottom"])?;
    let byte = |k: &str| -> Result<u8, ParseError> {
        let v = r.int(k)?.ok_or_else(|| ParseError { pos: r.pos, msg: format!("quantale line needs '{k}'") })?;
        u8::try_from(v).or_else(|_| err(r.pos, format!("'{k}' out of range")))
    };
    let table = |k: &str| -> Result<Vec<u8>, ParseError> {
        let v = r.list(k)?.ok_or_else(|| ParseError { pos: r.pos, msg: format!("quantale line needs '{k}'") })?;
        v.into_iter().map(|x| u8::try_from(x).or_else(|_| err(r.pos, format!("'{k}' value out of range")))).collect()
    };
    FiniteQuantale::new(byte("size")?, table("join")?, table("mul")?, byte("unit")?, byte("bottom")?).map_err(at(r.pos))
}

/// Generators from `op` lines: `op and`, or `op f arity=2 table=[...]`.
fn generators(p: &Params, d: u8) -> Result<Vec<FinOp>, ParseError> {
    let recs = p.records("op");
    if recs.is_empty() {
        return err(p.file().constructor_pos, "at least one 'op' line is needed");
    }
    recs.iter()
        .map(|r| {
            r.only(&["arity", "table"])?;
            match (r.int("arity")?, r.list("table")?) {
                (Some(k), Some(t)) => {
                    let t: Vec<u8> = t.into_iter().map(|x| u8::try_from(x).unwrap_or(u8::MAX)).collect();
                    FinOp::new(d, k as usize, t).map_err(at(r.pos))
                }
                (None, None) => {
                    let name = r.name.as_deref().unwrap_or("");
                    ops::parse_op(d, name).map_err(|m| ParseError { pos: r.pos, msg: m })
                }
                _ => err(r.pos, "an 'op' line needs both 'arity' and 'table', or neither"),
            }
        })
        .collect()
}

fn generated(p: &Params) -> Result<ConcreteClone, ParseError> {
    let d = domain(p)?;
    let max_arity = usize_param(p, "max_arity")?;
    let gens = generators(p, d)?;
    clone_generate(d, &gens, max_arity, DEFAULT_OP_GUARD).map_err(at(p.file().constructor_pos))
}

enum Source {
    Projection(ProjectionAlgebra),
    Fca(Fca),
}

/// The clone algebra named by `source`, with its own parameters.
fn source(p: &Params) -> Result<Source, ParseError> {
    let (name, pos) = p.ident("source")?;
    match name {
        "projection" => Ok(Source::Projection(projection_algebra(p.int("value_bound")?))),
        "fca" => {
            let d = domain(p)?;
            Ok(Source::Fca(fca(d, usize_param(p, "arity_bound")?).map_err(at(pos))?))
        }
        other => err(pos, format!("unknown source '{other}'; use projection or fca")),
    }
}

pub fn build(file: &StructureFile) -> Result<StructureHandle, ParseError> {
    let p = Params::new(file);
    let cpos = file.constructor_pos;
    let unknown = || {
        let names = CONSTRUCTORS.iter().find(|(k, _)| *k == file.kind).map(|(_, c)| c.join(", ")).unwrap_or_default();
        err(cpos, format!("unknown constructor '{}' for kind {}; expected one of {names}", file.constructor, file.kind))
    };
    let h = match (file.kind, file.constructor.as_str()) {
        (Kind::Merge, "canonical") => StructureHandle::Merge(MergeHandle::Canonical(canonical(&p)?)),
        (Kind::Merge, "degenerate") => StructureHandle::Merge(MergeHandle::Degenerate(degenerate_merge(carrier(&p)?))),
        (Kind::Mmonoid, c) => match mmonoid(&p, c)? {
            Some(m) => StructureHandle::Mmonoid(m),
            None => return unknown(),
        },
        (Kind::Clonealg, "projection") => StructureHandle::Clonealg(CloneHandle::Projection(projection_algebra(p.int("value_bound")?))),
        (Kind::Clonealg, "fca") => {
            let d = domain(&p)?;
            StructureHandle::Clonealg(CloneHandle::Fca(fca(d, usize_param(&p, "arity_bound")?).map_err(at(cpos))?))
        }
        (Kind::Clonealg, "term") => {
            let syms: Vec<(String, usize)> = p
                .records("symbol")
                .iter()
                .map(|r| {
                    r.only(&["arity"])?;
                    let name = r.name.clone().ok_or_else(|| ParseError { pos: r.pos, msg: "symbol line needs a name".into() })?;
                    let arity = r.int("arity")?.ok_or_else(|| ParseError { pos: r.pos, msg: "symbol line needs 'arity'".into() })?;
                    Ok((name, arity as usize))
                })
                .collect::<Result<_, ParseError>>()?;
            let sig = Signature::new(syms);
            let t = term_clone_algebra(sig, usize_param(&p, "var_bound")?, usize_param(&p, "depth_bound")?);
            StructureHandle::Clonealg(CloneHandle::Term(t))
        }
        (Kind::Clonealg, "ac_to_ca") => {
            let b = generated(&p)?;
            let sort_bound = usize_or(&p, "sort_bound", b.max_arity())?;
            StructureHandle::Clonealg(CloneHandle::AcCa(ac_to_ca(b, sort_bound)))
        }
        (Kind::Absclone, "clone_generate") => StructureHandle::Absclone(AbsCloneHandle::Concrete(generated(&p)?)),
        (Kind::Absclone, "ca_to_ac") => {
            let k = usize_param(&p, "arity_bound")?;
            StructureHandle::Absclone(match source(&p)? {
                Source::Projection(c) => AbsCloneHandle::RcProjection(ca_to_ac(c, k)),
                Source::Fca(c) => AbsCloneHandle::RcFca(ca_to_ac(c, k)),
            })
        }
        (Kind::Pica, "quantale") => {
            StructureHandle::Pica(PicaHandle::Quantale(quantale_pica(quantale(&p)?, usize_param(&p, "support")?)))
        }
        (Kind::Pica, "pica_from_ca") => {
            let support = usize_param(&p, "support")?;
            StructureHandle::Pica(match source(&p)? {
                Source::Projection(c) => PicaHandle::Projection(pica_from_ca(c, support)),
                Source::Fca(c) => PicaHandle::Fca(pica_from_ca(c, support)),
            })
        }
        _ => return unknown(),
    };
    p.finish()?;
    Ok(h)
}

fn mmonoid(p: &Params, ctor: &str) -> Result<Option<MMonoidHandle>, ParseError> {
    let cpos = p.file().constructor_pos;
    Ok(Some(match ctor {
        "product" => {
            let m = monoid(p)?;
            let support = usize_param(p, "support")?;
            MMonoidHandle::Product(product_mmonoid(MonoidFamily::constant(m), support).map_err(at(cpos))?)
        }
        "degenerate" => MMonoidHandle::Degenerate(degenerate_mmonoid(monoid(p)?)),
        "arith" => MMonoidHandle::Arith(ArithAm::new()),
        "ca_to_cm" => {
            let support = usize_param(p, "support")?;
            match source(p)? {
                Source::Projection(c) => MMonoidHandle::ProjCm(ca_to_cm(c, support)),
                Source::Fca(c) => MMonoidHandle::FcaCm(ca_to_cm(c, support)),
            }
        }
        "fdim_endo" => {
            let d = domain(p)?;
            let m = fdim_endo_cm(d, usize_param(p, "arity_bound")?, usize_param(p, "support")?).map_err(at(cpos))?;
            MMonoidHandle::FdimEndo(m)
        }
        "left_zero" => MMonoidHandle::LeftZero(left_zero(canonical(p)?)),
        "oplus" => {
            let (inner, pos) = p.ident("inner")?;
            match inner {
                "product" => {
                    let m = monoid(p)?;
                    let support = usize_param(p, "support")?;
                    MMonoidHandle::OplusProduct(oplus(product_mmonoid(MonoidFamily::constant(m), support).map_err(at(cpos))?))
                }
                "ca_to_cm" => match source(p)? {
                    Source::Projection(c) => MMonoidHandle::OplusProjCm(oplus(ca_to_cm(c, usize_param(p, "support")?))),
                    Source::Fca(_) => return err(pos, "oplus of ca_to_cm needs source = projection"),
                },
                other => return err(pos, format!("unknown inner '{other}'; use product or ca_to_cm")),
            }
        }
        "pica_to_ecm" => MMonoidHandle::QuantaleEcm(pica_to_ecm(quantale_pica(quantale(p)?, usize_param(p, "support")?))),
        _ => return Ok(None),
    }))
}

/// Rewrites a structure file into the file of its translation.
pub fn translate(file: &StructureFile, from: &str, to: &str, bound: usize) -> Result<StructureFile, String> {
    let mut out = file.clone();
    let expect = |k: Kind| {
        if file.kind == k {
            Ok(())
        } else {
            Err(format!("--from {from} needs a {k} file, got {}", file.kind))
        }
    };
    let ca_source = |out: &mut StructureFile| -> Result<(), String> {
        match file.constructor.as_str() {
            "projection" | "fca" => {
                out.set("source", Value::Ident(file.constructor.clone()));
                Ok(())
            }
            c => Err(format!("translating constructor '{c}' is not supported; use projection or fca")),
        }
    };
    match (from, to) {
        ("ca", "cm") => {
            expect(Kind::Clonealg)?;
            ca_source(&mut out)?;
            out.kind = Kind::Mmonoid;
            out.constructor = "ca_to_cm".into();
            out.set("support", Value::Int(bound as u64));
        }
        ("ca", "ac") => {
            expect(Kind::Clonealg)?;
            ca_source(&mut out)?;
            out.kind = Kind::Absclone;
            out.constructor = "ca_to_ac".into();
            out.set("arity_bound", Value::Int(bound as u64));
        }
        ("ca", "pica") => {
            expect(Kind::Clonealg)?;
            ca_source(&mut out)?;
            out.kind = Kind::Pica;
            out.constructor = "pica_from_ca".into();
            out.set("support", Value::Int(bound as u64));
        }
        ("ac", "ca") => {
            expect(Kind::Absclone)?;
            if file.constructor != "clone_generate" {
                return Err("only clone_generate files translate from ac to ca".into());
            }
            out.kind = Kind::Clonealg;
            out.constructor = "ac_to_ca".into();
            out.set("sort_bound", Value::Int(bound as u64));
        }
        ("pica", "ecm") => {
            expect(Kind::Pica)?;
            if file.constructor != "quantale" {
                return Err("only quantale files translate from pica to ecm".into());
            }
            out.kind = Kind::Mmonoid;
            out.constructor = "pica_to_ecm".into();
        }
        _ => return Err(format!("no translation from {from} to {to}; supported: ca→cm, ca→ac, ca→pica, ac→ca, pica→ecm")),
    }
    out.name = format!("{}_{to}", file.name);
    Ok(out)
}

/// Convenience for tests and the CLI: parse then build.
pub fn load(src: &str) -> Result<(StructureFile, StructureHandle), ParseError> {
    let f = super::structfile::parse(src)?;
    let h = build(&f)?;
    Ok((f, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(body: &str, kind: &str, ctor: &str) -> String {
        format!("name = t\nkind = {kind}\nconstructor = {ctor}\n{body}")
    }

    #[test]
    fn builds_every_constructor() {
        let cases = [
            ("merge", "canonical", "carrier = {0,1}\nbase = (0,...)\nsupport = 2\n"),
            ("merge", "degenerate", "carrier = {0,1,2}\n"),
            ("mmonoid", "product", "monoid = Z2\nsupport = 3\n"),
            ("mmonoid", "product", "monoid size=2 table=[0,1,1,0] unit=0\nsupport = 2\n"),
            ("mmonoid", "degenerate", "monoid = and\n"),
            ("mmonoid", "arith", ""),
            ("mmonoid", "ca_to_cm", "source = projection\nvalue_bound = 3\nsupport = 3\n"),
            ("mmonoid", "ca_to_cm", "source = fca\ndomain = 2\narity_bound = 2\nsupport = 2\n"),
            ("mmonoid", "fdim_endo", "domain = 2\narity_bound = 1\nsupport = 2\n"),
            ("mmonoid", "left_zero", "carrier = {0,1}\nbase = (0,1,...)\nsupport = 2\n"),
            ("mmonoid", "oplus", "inner = product\nmonoid = Z2\nsupport = 2\n"),
            ("mmonoid", "oplus", "inner = ca_to_cm\nsource = projection\nvalue_bound = 2\nsupport = 2\n"),
            ("mmonoid", "pica_to_ecm", "quantale = boolean\nsupport = 2\n"),
            ("clonealg", "projection", "value_bound = 8\n"),
            ("clonealg", "fca", "domain = 2\narity_bound = 2\n"),
            ("clonealg", "term", "symbol f arity=2\nvar_bound = 2\ndepth_bound = 1\n"),
            ("clonealg", "ac_to_ca", "domain = 2\nmax_arity = 2\nop and\n"),
            ("absclone", "clone_generate", "domain = 2\nmax_arity = 3\nop and\nop or\nop c0\nop c1 arity=0 table=[1]\n"),
            ("absclone", "ca_to_ac", "source = fca\ndomain = 2\narity_bound = 2\n"),
            ("pica", "quantale", "quantale size=2 join=[0,1,1,1] mul=[0,0,0,1] unit=1 bottom=0\nsupport = 2\n"),
            ("pica", "pica_from_ca", "source = projection\nvalue_bound = 3\nsupport = 2\n"),
        ];
        for (kind, ctor, body) in cases {
            let (_, h) = load(&file(body, kind, ctor)).unwrap_or_else(|e| panic!("{kind}/{ctor}: {e}"));
            assert_eq!(h.kind().to_string(), kind);
        }
    }

    #[test]
    fn construction_errors_are_positioned() {
        let e = load(&file("value_bound = x\n", "clonealg", "projection")).unwrap_err();
        assert_eq!(e.pos, Pos { line: 4, col: 15 });
        let e = load(&file("", "clonealg", "fca")).unwrap_err();
        assert_eq!(e.pos, Pos { line: 3, col: 15 });
        let e = load(&file("monoid size=2 table=[0,1,1,1] unit=1\nsupport = 2\n", "mmonoid", "product")).unwrap_err();
        assert_eq!(e.pos.line, 4);
        let e = load(&file("domain = 2\nmax_arity = 2\nop nand\n", "absclone", "clone_generate")).unwrap_err();
        assert_eq!(e.pos, Pos { line: 6, col: 1 });
        let e = load(&file("value_bound = 3\nop and\n", "clonealg", "projection")).unwrap_err();
        assert_eq!(e.pos.line, 5);
        let e = load(&file("", "pica", "ring")).unwrap_err();
        assert!(e.msg.contains("quantale, pica_from_ca"));
    }

    #[test]
    fn translation_files_build() {
        let (f, _) = load(&file("value_bound = 3\n", "clonealg", "projection")).unwrap();
        for (from, to) in [("ca", "cm"), ("ca", "ac"), ("ca", "pica")] {
            let t = translate(&f, from, to, 2).unwrap();
            let (_, h) = load(&t.render()).unwrap();
            assert!(!h.name().is_empty());
        }
        assert!(translate(&f, "cm", "ca", 2).is_err());
        assert!(translate(&f, "ac", "ca", 2).is_err());
    }
}
