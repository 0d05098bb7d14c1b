// SPDX-License-Identifier: Apache-2.0

//! The `clonoid` command line: build instances from structure files, run
//! law suites, translate, classify, and report dimensions and ranks.
//!
//! Exit codes: 0 on success, 1 when a law or round-trip check fails, 2 on
//! usage, parse or construction errors.

pub mod build;
pub mod ops;
pub mod structfile;

use std::ffi::OsString;
use std::fmt::Debug;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::absclone::{ac_to_ca, ca_to_ac, clone_generate, DEFAULT_OP_GUARD};
use crate::checker::handle::{each_absclone, each_clone, each_merge, each_mmonoid, each_pica};
use crate::checker::{CloneHandle, LawReport, Report, StructureHandle, SuiteId, TestDomain};
use crate::clonealg::{dimension_ca, CloneAlgebra, Dimension};
use crate::merge::PointedMerge;
use crate::mmonoid::{classify_type, dimension_sets, noncomm_witness, DimSetBounds, MMonoid};
use crate::translate::{
    ca_to_cm, roundtrip_ca, roundtrip_cm, roundtrip_ecm, roundtrip_pica, triangular_ac_ca, triangular_ca_cm,
    TranslateBounds,
};
use crate::verdict::Verdict;

#[derive(Parser, Debug)]
#[command(name = "clonoid", version, about = "Check merge algebras, m-monoids, clone algebras, abstract clones and PICAs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Bounds {
    /// Elements enumerated per carrier or sort.
    #[arg(long, default_value_t = 64)]
    budget: usize,
    /// Largest n in ⋆ₙ, qₙ and eₙ.
    #[arg(long = "index-bound", default_value_t = 4)]
    index_bound: usize,
    /// Permutations move only points below this bound.
    #[arg(long = "perm-bound", default_value_t = 4)]
    perm_bound: usize,
    /// Seed for sampled laws; decimal or 0x-prefixed hex.
    #[arg(long, default_value = "0", value_parser = parse_seed)]
    seed: u64,
    /// Assignments per law before seeded sampling takes over.
    #[arg(long, default_value_t = 2_000_000)]
    cap: usize,
}

impl Bounds {
    fn domain(&self) -> TestDomain {
        TestDomain {
            budget: self.budget,
            index_bound: self.index_bound,
            perm_bound: self.perm_bound,
            seed: self.seed,
            cap: self.cap,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Human-readable output.
    #[arg(long)]
    pretty: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run law suites on a structure file.
    Check {
        file: PathBuf,
        /// Suites to run; defaults to every suite for the file's kind except AM_L3, AM_L4 and NEUMANN_N.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<SuiteId>,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        output: Output,
        /// Include wall-clock times, which makes output vary between runs.
        #[arg(long)]
        timings: bool,
    },
    /// Write the structure file of a translated structure.
    Translate {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        input: PathBuf,
        /// Support bound of the target (arity bound for ca→ac, sort bound for ac→ca).
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Round trips and triangular identities of an adjunction.
    Roundtrip {
        #[arg(long, value_enum)]
        kind: RoundtripKind,
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        /// Support bound of derived sequences.
        #[arg(long, default_value_t = 3)]
        support: usize,
        /// Largest n for qₙ and eₙ, and largest sort.
        #[arg(long = "n-bound", default_value_t = 3)]
        n_bound: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Type 1 to 4 of a pointed merge algebra, with evidence.
    Classify {
        file: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        output: Output,
    },
    /// Dimensions of clone-algebra elements, or the dimension sets of an m-monoid.
    Dim {
        file: PathBuf,
        /// An element: `#i` for the i-th enumerated one, its printed form, a
        /// number for projection algebras, or an operation name or `arity:table` for fca.
        #[arg(long)]
        element: Option<String>,
        /// Search bound for dimensions and for m in D(a,n,m).
        #[arg(long, default_value_t = 8)]
        bound: usize,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        output: Output,
    },
    /// Ranks of elements of a merge algebra or m-monoid.
    Rank {
        file: PathBuf,
        #[arg(long)]
        element: Option<String>,
        #[arg(long, default_value_t = 8)]
        bound: usize,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        output: Output,
    },
    /// Concrete clones.
    Clone {
        #[command(subcommand)]
        cmd: CloneCmd,
    },
}

#[derive(Subcommand, Debug)]
enum CloneCmd {
    /// Generate a clone and count its operations per arity.
    Gen {
        #[arg(long)]
        domain: u8,
        /// Comma-separated generators: and, or, min, max, xor, not, maj, id, c<v>, or arity:table.
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<String>,
        #[arg(long = "max-arity")]
        max_arity: usize,
        /// Also list every operation table.
        #[arg(long)]
        tables: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum RoundtripKind {
    #[value(name = "ca_cm")]
    CaCm,
    #[value(name = "ca_ac")]
    CaAc,
    #[value(name = "pica_ecm")]
    PicaEcm,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(h) => u64::from_str_radix(h, 16),
        None => s.parse(),
    }
    .map_err(|e| format!("bad seed '{s}': {e}"))
}

/// A failed command: message and exit code.
struct Failure(i32, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(2, msg.into())
}

fn load(path: &Path) -> Result<(structfile::StructureFile, StructureHandle), Failure> {
    let src = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    build::load(&src).map_err(|e| usage(format!("{}:{e}", path.display())))
}

/// What a command produced: the text to print and whether a check failed.
struct Done {
    text: String,
    failed: bool,
}

fn json_text(v: &impl Serialize, pretty: bool) -> String {
    let s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
    s.expect("serializable output") + "\n"
}

fn emit(out: &Output, done: Done, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match &out.out {
        Some(p) => std::fs::write(p, &done.text).map_err(|e| usage(format!("{}: {e}", p.display())))?,
        None => stdout.write_all(done.text.as_bytes()).map_err(|e| usage(e.to_string()))?,
    }
    Ok(if done.failed { 1 } else { 0 })
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.cmd, stdout) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Cmd, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Cmd::Check { file, suite, bounds, output, timings } => {
            let (_, h) = load(&file)?;
            let done = check(&h, &suite, &bounds.domain(), output.pretty, timings)?;
            emit(&output, done, stdout)
        }
        Cmd::Translate { from, to, input, bound, out } => {
            let (f, _) = load(&input)?;
            let t = build::translate(&f, &from, &to, bound).map_err(usage)?;
            let text = t.render();
            build::load(&text).map_err(|e| usage(format!("translated file does not build: {e}")))?;
            match out {
                Some(p) => {
                    std::fs::write(&p, &text).map_err(|e| usage(format!("{}: {e}", p.display())))?;
                    let summary = json!({"from": from, "to": to, "name": t.name, "kind": t.kind, "constructor": t.constructor, "out": p});
                    stdout.write_all(json_text(&summary, false).as_bytes()).map_err(|e| usage(e.to_string()))?;
                }
                None => stdout.write_all(text.as_bytes()).map_err(|e| usage(e.to_string()))?,
            }
            Ok(0)
        }
        Cmd::Roundtrip { kind, input, bounds, support, n_bound, output } => {
            let (_, h) = load(&input)?;
            let tb = TranslateBounds {
                budget: bounds.budget,
                support_bound: support,
                n_bound,
                index_bound: bounds.index_bound,
                perm_bound: bounds.perm_bound,
                cap: bounds.cap,
                seed: bounds.seed,
            };
            let checks = roundtrip(&h, kind, tb)?;
            let failed = checks.iter().any(|l| l.result.is_fail());
            let v = json!({"kind": kind.to_possible_value().expect("named kind").get_name(), "structure": h.name(), "checks": checks, "passed": !failed});
            emit(&output, Done { text: json_text(&v, output.pretty), failed }, stdout)
        }
        Cmd::Classify { file, bounds, output } => {
            let (_, h) = load(&file)?;
            let v = classify(&h, &bounds)?;
            emit(&output, Done { text: json_text(&v, output.pretty), failed: false }, stdout)
        }
        Cmd::Dim { file, element, bound, bounds, output } => {
            let (_, h) = load(&file)?;
            let v = dim(&h, element.as_deref(), bound, &bounds)?;
            emit(&output, Done { text: json_text(&v, output.pretty), failed: false }, stdout)
        }
        Cmd::Rank { file, element, bound, bounds, output } => {
            let (_, h) = load(&file)?;
            let rows = match &h {
                StructureHandle::Merge(m) => each_merge!(m, x => rank_rows(x, element.as_deref(), bound, bounds.budget)),
                StructureHandle::Mmonoid(m) => each_mmonoid!(m, x => rank_rows(x, element.as_deref(), bound, bounds.budget)),
                _ => return Err(usage(format!("rank needs a merge or mmonoid file, got {}", h.kind()))),
            }?;
            let v = json!({"structure": h.name(), "bound": bound, "ranks": rows});
            emit(&output, Done { text: json_text(&v, output.pretty), failed: false }, stdout)
        }
        Cmd::Clone { cmd: CloneCmd::Gen { domain, gens, max_arity, tables, output } } => {
            let ops: Vec<_> = gens.iter().map(|g| ops::parse_op(domain, g)).collect::<Result<_, _>>().map_err(usage)?;
            let c = clone_generate(domain, &ops, max_arity, DEFAULT_OP_GUARD).map_err(|e| usage(e.to_string()))?;
            let counts: Vec<Json> =
                c.counts().iter().enumerate().map(|(k, n)| json!({"arity": k, "count": n})).collect();
            let mut v = json!({"domain": domain, "gens": gens, "max_arity": max_arity, "counts": counts});
            if tables {
                let t: Vec<Json> = (0..=max_arity)
                    .map(|k| json!({"arity": k, "tables": c.ops(k).iter().map(|o| format!("{k}:{}", o.table().iter().map(u8::to_string).collect::<String>())).collect::<Vec<_>>()}))
                    .collect();
                v["tables"] = Json::Array(t);
            }
            emit(&output, Done { text: json_text(&v, output.pretty), failed: false }, stdout)
        }
    }
}

fn check(h: &StructureHandle, suites: &[SuiteId], dom: &TestDomain, pretty: bool, timings: bool) -> Result<Done, Failure> {
    let suites = if suites.is_empty() { SuiteId::defaults(h.kind()) } else { suites.to_vec() };
    let mut reports: Vec<Report> = Vec::new();
    for s in suites {
        let r = h.check(s, dom).map_err(|e| usage(e.to_string()))?;
        reports.push(if timings { r } else { r.without_timing() });
    }
    let failed = reports.iter().any(|r| !r.passed());
    let text = if pretty { table(&reports) } else { json_text(&reports, false) };
    Ok(Done { text, failed })
}

/// The `--pretty` rendering of check reports.
fn table(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        out += &format!("{} ({}) suite {} fingerprint {}\n", r.structure.name, r.structure.kind, r.suite, r.structure.fingerprint);
        let width = r.laws.iter().map(|l| l.name.len()).max().unwrap_or(0);
        for l in &r.laws {
            out += &format!("  {:width$}  {:15}  {:>12}\n", l.name, l.verdict, l.count);
            if let Some(w) = &l.witness {
                let binds: Vec<String> = w.bindings.iter().map(|b| format!("{}={}", b.var, b.value)).collect();
                out += &format!("  {:width$}    {}\n  {:width$}    lhs {}\n  {:width$}    rhs {}\n", "", binds.join(" "), "", w.lhs, "", w.rhs);
            }
            if let Some(n) = &l.note {
                out += &format!("  {:width$}    {n}\n", "");
            }
        }
        if let Some(ms) = r.wall_ms {
            out += &format!("  {ms} ms\n");
        }
    }
    out
}

fn verdict(name: &str, v: Verdict) -> LawReport {
    LawReport::new(name.to_string(), v)
}

fn roundtrip(h: &StructureHandle, kind: RoundtripKind, b: TranslateBounds) -> Result<Vec<LawReport>, Failure> {
    let pre = |e: crate::translate::TranslateError| Failure(2, format!("precondition: {e}"));
    let wrong = || usage(format!("roundtrip --kind {kind:?} does not take a {} file", h.kind()));
    Ok(match (kind, h) {
        (RoundtripKind::CaCm, StructureHandle::Clonealg(c)) => each_clone!(c, x => {
            let rt = roundtrip_ca(x, b);
            let t = triangular_ca_cm(x, &ca_to_cm(x.clone(), b.support_bound), b).map_err(pre)?;
            vec![verdict("roundtrip_ca", rt.verdict), verdict("triangular.first", t.first), verdict("triangular.second", t.second)]
        }),
        (RoundtripKind::CaCm, StructureHandle::Mmonoid(m)) => each_mmonoid!(m, x => {
            vec![verdict("roundtrip_cm", roundtrip_cm(x, b).map_err(pre)?.verdict)]
        }),
        (RoundtripKind::CaAc, StructureHandle::Clonealg(c)) => each_clone!(c, x => {
            let t = triangular_ac_ca(&ca_to_ac(x.clone(), b.n_bound), x, b);
            vec![verdict("triangular.first", t.first), verdict("triangular.second", t.second)]
        }),
        (RoundtripKind::CaAc, StructureHandle::Absclone(a)) => each_absclone!(a, x => {
            let t = triangular_ac_ca(x, &ac_to_ca(x.clone(), b.n_bound), b);
            vec![verdict("triangular.first", t.first), verdict("triangular.second", t.second)]
        }),
        (RoundtripKind::PicaEcm, StructureHandle::Pica(p)) => each_pica!(p, x => {
            vec![verdict("roundtrip_pica", roundtrip_pica(x, b).map_err(pre)?.verdict)]
        }),
        (RoundtripKind::PicaEcm, StructureHandle::Mmonoid(m)) => each_mmonoid!(m, x => {
            vec![verdict("roundtrip_ecm", roundtrip_ecm(x, b).map_err(pre)?.verdict)]
        }),
        _ => return Err(wrong()),
    })
}

fn classify_one<P: PointedMerge>(p: &P, b: &Bounds) -> Json {
    let t = classify_type(p, b.budget, b.index_bound, b.perm_bound);
    json!({"type": t.ty.map_or(json!("Unknown"), |n| json!(n)), "evidence": t.evidence})
}

fn with_noncomm<M: MMonoid>(m: &M, b: &Bounds) -> Json {
    let mut v = classify_one(m, b);
    v["noncommutative"] = match noncomm_witness(m, b.budget, b.perm_bound) {
        Some((x, y)) => json!([format!("{x:?}"), format!("{y:?}")]),
        None => Json::Null,
    };
    v
}

fn classify(h: &StructureHandle, b: &Bounds) -> Result<Json, Failure> {
    let mut v = match h {
        StructureHandle::Merge(m) => each_merge!(m, x => classify_one(x, b)),
        StructureHandle::Mmonoid(m) => each_mmonoid!(m, x => with_noncomm(x, b)),
        _ => return Err(usage(format!("classify needs a merge or mmonoid file, got {}", h.kind()))),
    };
    v["structure"] = json!(h.name());
    Ok(v)
}

/// `#i`, or the element whose printed form is `sel`.
fn select<E: Debug + Clone>(items: &[E], sel: &str) -> Result<E, Failure> {
    if let Some(i) = sel.strip_prefix('#') {
        let i: usize = i.parse().map_err(|_| usage(format!("bad element index '{sel}'")))?;
        return items.get(i).cloned().ok_or_else(|| usage(format!("element {sel} is past the {} enumerated", items.len())));
    }
    items
        .iter()
        .find(|x| format!("{x:?}") == sel)
        .cloned()
        .ok_or_else(|| usage(format!("no enumerated element prints as '{sel}'; try #index")))
}

fn rank_rows<P: PointedMerge>(p: &P, element: Option<&str>, bound: usize, budget: usize) -> Result<Vec<Json>, Failure> {
    let items = p.enumerate(budget).items;
    let chosen = match element {
        Some(s) => vec![select(&items, s)?],
        None => items,
    };
    Ok(chosen
        .iter()
        .map(|x| json!({"element": format!("{x:?}"), "rank": p.rank(x, bound).map_or(json!("Unknown"), |r| json!(r))}))
        .collect())
}

fn dimension_json(d: Dimension) -> Json {
    match d {
        Dimension::Finite(n) => json!(n),
        Dimension::Omega => json!("omega"),
        Dimension::Unknown => json!("Unknown"),
    }
}

fn ca_dims<C: CloneAlgebra>(c: &C, chosen: Option<C::Elem>, sel: Option<&str>, bound: usize, budget: usize) -> Result<Json, Failure> {
    let items = match (chosen, sel) {
        (Some(e), _) => vec![e],
        (None, Some(s)) => vec![select(&c.enumerate(budget).items, s)?],
        (None, None) => c.enumerate(budget).items,
    };
    let rows: Vec<Json> = items
        .iter()
        .map(|a| json!({"element": format!("{a:?}"), "dimension": dimension_json(dimension_ca(c, a, bound))}))
        .collect();
    Ok(json!({"structure": c.name(), "bound": bound, "dimensions": rows}))
}

fn mmonoid_dims<M: MMonoid>(m: &M, sel: Option<&str>, bound: usize, b: &Bounds) -> Result<Json, Failure> {
    let sets = dimension_sets(m, DimSetBounds { budget: b.budget, n_bound: b.index_bound, m_bound: bound, k_bound: b.index_bound });
    let rows: Vec<_> = match sel {
        Some(s) => {
            let items = m.enumerate(b.budget).items;
            let x = select(&items, s)?;
            let key = format!("{x:?}");
            sets.rows.iter().filter(|r| r.element == key).collect()
        }
        None => sets.rows.iter().collect(),
    };
    let mut checks = vec![verdict("inclusion", sets.inclusion), verdict("coordinates", sets.coordinates)];
    if let Some(eq) = sets.equality {
        checks.push(verdict("equality", eq));
    }
    Ok(json!({"structure": m.name(), "rows": rows, "checks": checks}))
}

fn dim(h: &StructureHandle, sel: Option<&str>, bound: usize, b: &Bounds) -> Result<Json, Failure> {
    match h {
        StructureHandle::Clonealg(CloneHandle::Projection(p)) => {
            let chosen = sel.and_then(|s| s.parse::<u64>().ok());
            ca_dims(p, chosen, sel, bound, b.budget)
        }
        StructureHandle::Clonealg(CloneHandle::Fca(f)) => {
            let chosen = match sel.filter(|s| !s.starts_with('#')).map(|s| ops::parse_op(f.domain(), s)) {
                Some(Ok(op)) => Some(f.element(op).map_err(|e| usage(e.to_string()))?),
                _ => None,
            };
            ca_dims(f, chosen, sel, bound, b.budget)
        }
        StructureHandle::Clonealg(c) => each_clone!(c, x => ca_dims(x, None, sel, bound, b.budget)),
        StructureHandle::Mmonoid(m) => each_mmonoid!(m, x => mmonoid_dims(x, sel, bound, b)),
        _ => Err(usage(format!("dim needs a clonealg or mmonoid file, got {}", h.kind()))),
    }
}
