// SPDX-License-Identifier: Apache-2.0

//! Declarative structure files.
//!
//! ```text
//! # comment
//! name = monotone
//! kind = absclone
//! constructor = clone_generate
//! domain = 2
//! max_arity = 3
//! op and
//! op c1 arity=0 table=[1]
//! ```
//!
//! Values are integers, identifiers, lists `[0,1]`, sets `{0,1}` and
//! sequences `(0,1,1,...)` whose last item repeats. Lines starting with a
//! record head (`op`, `symbol`, `monoid`, `quantale`) carry an optional name
//! and `key=value` attributes.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::checker::Kind;

/// 1-based line and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {msg}")]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

pub(crate) fn err<T>(pos: Pos, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(u64),
    Ident(String),
    List(Vec<u64>),
    Set(Vec<u64>),
    /// Items of `(a,b,...)`; with `open` the last item repeats forever.
    Seq { items: Vec<u64>, open: bool },
}

impl Value {
    fn describe(&self) -> &'static str {
        match self {
            Value::Int(_) => "an integer",
            Value::Ident(_) => "an identifier",
            Value::List(_) => "a list",
            Value::Set(_) => "a set",
            Value::Seq { .. } => "a sequence",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Ident(s) => write!(f, "{s}"),
            Value::List(xs) => write!(f, "[{}]", join(xs)),
            Value::Set(xs) => write!(f, "{{{}}}", join(xs)),
            Value::Seq { items, open: true } => write!(f, "({},...)", join(items)),
            Value::Seq { items, open: false } => write!(f, "({})", join(items)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spanned {
    pub value: Value,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub head: String,
    pub name: Option<String>,
    pub attrs: BTreeMap<String, Spanned>,
    pub pos: Pos,
}

pub const RECORD_HEADS: [&str; 4] = ["op", "symbol", "monoid", "quantale"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureFile {
    pub name: String,
    pub kind: Kind,
    pub constructor: String,
    pub constructor_pos: Pos,
    /// Assignments other than the header, in file order of first use.
    pub params: BTreeMap<String, Spanned>,
    pub records: Vec<Record>,
}

struct Cursor {
    chars: Vec<char>,
    i: usize,
    line: usize,
}

impl Cursor {
    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.i + 1 }
    }

    fn skip_ws(&mut self) {
        while self.i < self.chars.len() && self.chars[self.i].is_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn done(&mut self) -> bool {
        self.skip_ws();
        self.i >= self.chars.len()
    }

    fn word(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.chars.len() && (self.chars[self.i].is_alphanumeric() || "_-.:".contains(self.chars[self.i])) {
            self.i += 1;
        }
        if start == self.i {
            return err(self.pos(), "expected a name");
        }
        Ok(self.chars[start..self.i].iter().collect())
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.i += 1;
            Ok(())
        } else {
            err(self.pos(), format!("expected '{c}'"))
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let pos = self.pos();
        let w = self.word()?;
        w.parse().or_else(|_| err(pos, format!("expected an integer, found '{w}'")))
    }

    /// Comma-separated integers up to `close`; `...` is allowed last when `open_ok`.
    fn items(&mut self, close: char, open_ok: bool) -> Result<(Vec<u64>, bool), ParseError> {
        let mut items = Vec::new();
        self.skip_ws();
        if self.peek() == Some(close) {
            self.i += 1;
            return Ok((items, false));
        }
        loop {
            self.skip_ws();
            if self.chars[self.i..].starts_with(&['.', '.', '.']) {
                let pos = self.pos();
                if !open_ok || items.is_empty() {
                    return err(pos, "'...' must follow at least one item of a sequence");
                }
                self.i += 3;
                self.expect(close)?;
                return Ok((items, true));
            }
            items.push(self.int()?);
            self.skip_ws();
            match self.peek() {
                Some(',') => self.i += 1,
                Some(c) if c == close => {
                    self.i += 1;
                    return Ok((items, false));
                }
                _ => return err(self.pos(), format!("expected ',' or '{close}'")),
            }
        }
    }

    fn value(&mut self) -> Result<Spanned, ParseError> {
        self.skip_ws();
        let pos = self.pos();
        let value = match self.peek() {
            Some('[') => {
                self.i += 1;
                Value::List(self.items(']', false)?.0)
            }
            Some('{') => {
                self.i += 1;
                Value::Set(self.items('}', false)?.0)
            }
            Some('(') => {
                self.i += 1;
                let (items, open) = self.items(')', true)?;
                Value::Seq { items, open }
            }
            Some(c) if c.is_ascii_digit() => Value::Int(self.int()?),
            Some(_) => Value::Ident(self.word()?),
            None => return err(pos, "missing value"),
        };
        Ok(Spanned { value, pos })
    }
}

pub fn parse(src: &str) -> Result<StructureFile, ParseError> {
    let mut header: BTreeMap<String, Spanned> = BTreeMap::new();
    let mut params: BTreeMap<String, Spanned> = BTreeMap::new();
    let mut records = Vec::new();
    for (n, raw) in src.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("");
        let mut c = Cursor { chars: text.chars().collect(), i: 0, line: n + 1 };
        if c.done() {
            continue;
        }
        let pos = c.pos();
        let word = c.word()?;
        c.skip_ws();
        if RECORD_HEADS.contains(&word.as_str()) && c.peek() != Some('=') {
            let mut rec = Record { head: word, name: None, attrs: BTreeMap::new(), pos };
            while !c.done() {
                let apos = c.pos();
                let w = c.word()?;
                c.skip_ws();
                if c.peek() == Some('=') {
                    c.i += 1;
                    let v = c.value()?;
                    if rec.attrs.insert(w.clone(), v).is_some() {
                        return err(apos, format!("duplicate attribute '{w}'"));
                    }
                } else if rec.name.is_none() && rec.attrs.is_empty() {
                    rec.name = Some(w);
                } else {
                    return err(apos, format!("expected key=value, found '{w}'"));
                }
            }
            records.push(rec);
            continue;
        }
        c.expect('=')?;
        let v = c.value()?;
        if !c.done() {
            return err(c.pos(), "unexpected text after value");
        }
        let slot = match word.as_str() {
            "name" | "kind" | "constructor" => header.insert(word.clone(), v),
            _ => params.insert(word.clone(), v),
        };
        if slot.is_some() {
            return err(pos, format!("duplicate key '{word}'"));
        }
    }
    let end = Pos { line: src.lines().count().max(1), col: 1 };
    let ident = |key: &str| -> Result<(String, Pos), ParseError> {
        match header.get(key) {
            Some(Spanned { value: Value::Ident(s), pos }) => Ok((s.clone(), *pos)),
            Some(Spanned { value, pos }) => err(*pos, format!("'{key}' must be an identifier, found {}", value.describe())),
            None => err(end, format!("missing header key '{key}'")),
        }
    };
    let (name, _) = ident("name")?;
    let (kind, kpos) = ident("kind")?;
    let kind = match kind.as_str() {
        "merge" => Kind::Merge,
        "mmonoid" => Kind::Mmonoid,
        "clonealg" => Kind::Clonealg,
        "absclone" => Kind::Absclone,
        "pica" => Kind::Pica,
        other => return err(kpos, format!("unknown kind '{other}'; expected merge, mmonoid, clonealg, absclone or pica")),
    };
    let (constructor, constructor_pos) = ident("constructor")?;
    Ok(StructureFile { name, kind, constructor, constructor_pos, params, records })
}

impl StructureFile {
    /// The file text; parsing it again gives an equal value up to positions.
    pub fn render(&self) -> String {
        let mut out = format!("name = {}\nkind = {}\nconstructor = {}\n", self.name, self.kind, self.constructor);
        for (k, v) in &self.params {
            out.push_str(&format!("{k} = {}\n", v.value));
        }
        for r in &self.records {
            out.push_str(&r.head);
            if let Some(n) = &r.name {
                out.push_str(&format!(" {n}"));
            }
            for (k, v) in &r.attrs {
                out.push_str(&format!(" {k}={}", v.value));
            }
            out.push('\n');
        }
        out
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.params.insert(key.to_string(), Spanned { value, pos: Pos::default() });
    }
}

/// Typed access to parameters and records, remembering which were read so
/// that leftovers can be rejected.
pub struct Params<'a> {
    file: &'a StructureFile,
    used: std::cell::RefCell<std::collections::BTreeSet<String>>,
    used_records: std::cell::RefCell<std::collections::BTreeSet<String>>,
}

impl<'a> Params<'a> {
    pub fn new(file: &'a StructureFile) -> Self {
        Params { file, used: Default::default(), used_records: Default::default() }
    }

    pub fn file(&self) -> &'a StructureFile {
        self.file
    }

    fn missing(&self, key: &str) -> ParseError {
        ParseError { pos: self.file.constructor_pos, msg: format!("constructor '{}' needs '{key}'", self.file.constructor) }
    }

    pub fn get(&self, key: &str) -> Option<&'a Spanned> {
        self.used.borrow_mut().insert(key.to_string());
        self.file.params.get(key)
    }

    pub fn int(&self, key: &str) -> Result<u64, ParseError> {
        match self.get(key) {
            Some(Spanned { value: Value::Int(n), .. }) => Ok(*n),
            Some(s) => err(s.pos, format!("'{key}' must be an integer, found {}", s.value.describe())),
            None => Err(self.missing(key)),
        }
    }

    pub fn int_or(&self, key: &str, default: u64) -> Result<u64, ParseError> {
        match self.file.params.get(key) {
            None => {
                self.used.borrow_mut().insert(key.to_string());
                Ok(default)
            }
            Some(_) => self.int(key),
        }
    }

    pub fn ident(&self, key: &str) -> Result<(&'a str, Pos), ParseError> {
        match self.get(key) {
            Some(Spanned { value: Value::Ident(s), pos }) => Ok((s, *pos)),
            Some(s) => err(s.pos, format!("'{key}' must be an identifier, found {}", s.value.describe())),
            None => Err(self.missing(key)),
        }
    }

    pub fn set(&self, key: &str) -> Result<(Vec<u64>, Pos), ParseError> {
        match self.get(key) {
            Some(Spanned { value: Value::Set(xs), pos }) => Ok((xs.clone(), *pos)),
            Some(s) => err(s.pos, format!("'{key}' must be a set like {{0,1}}, found {}", s.value.describe())),
            None => Err(self.missing(key)),
        }
    }

    /// An open sequence `(p₀,…,p_{k-1},t,...)`: prefix and repeating tail.
    pub fn open_seq(&self, key: &str) -> Result<(Vec<u64>, u64, Pos), ParseError> {
        match self.get(key) {
            Some(Spanned { value: Value::Seq { items, open: true }, pos }) => {
                let (tail, prefix) = items.split_last().expect("nonempty open sequence");
                Ok((prefix.to_vec(), *tail, *pos))
            }
            Some(s) => err(s.pos, format!("'{key}' must be an infinite sequence like (0,1,...), found {}", s.value.describe())),
            None => Err(self.missing(key)),
        }
    }

    pub fn records(&self, head: &str) -> Vec<&'a Record> {
        self.used_records.borrow_mut().insert(head.to_string());
        self.file.records.iter().filter(|r| r.head == head).collect()
    }

    /// Rejects parameters and records that the constructor never read.
    pub fn finish(&self) -> Result<(), ParseError> {
        let used = self.used.borrow();
        if let Some((k, v)) = self.file.params.iter().find(|(k, _)| !used.contains(*k)) {
            return err(v.pos, format!("unknown parameter '{k}' for constructor '{}'", self.file.constructor));
        }
        let heads = self.used_records.borrow();
        if let Some(r) = self.file.records.iter().find(|r| !heads.contains(&r.head)) {
            return err(r.pos, format!("constructor '{}' takes no '{}' lines", self.file.constructor, r.head));
        }
        Ok(())
    }
}

impl Record {
    pub fn int(&self, key: &str) -> Result<Option<u64>, ParseError> {
        match self.attrs.get(key) {
            None => Ok(None),
            Some(Spanned { value: Value::Int(n), .. }) => Ok(Some(*n)),
            Some(s) => err(s.pos, format!("'{key}' must be an integer")),
        }
    }

    pub fn list(&self, key: &str) -> Result<Option<Vec<u64>>, ParseError> {
        match self.attrs.get(key) {
            None => Ok(None),
            Some(Spanned { value: Value::List(xs), .. }) => Ok(Some(xs.clone())),
            Some(s) => err(s.pos, format!("'{key}' must be a list like [0,1]")),
        }
    }

    pub fn only(&self, keys: &[&str]) -> Result<(), ParseError> {
        match self.attrs.iter().find(|(k, _)| !keys.contains(&k.as_str())) {
            Some((k, v)) => err(v.pos, format!("unknown attribute '{k}' on '{}'", self.head)),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "# a sample\nname = lz\nkind = mmonoid\nconstructor = left_zero\ncarrier = {0,1}\nbase = (0,1,...)\nsupport = 3\nop and arity=2 table=[0,0,0,1]\n";

    #[test]
    fn parses_and_renders() {
        let f = parse(SAMPLE).unwrap();
        assert_eq!(f.kind, Kind::Mmonoid);
        assert_eq!(f.params["base"].value, Value::Seq { items: vec![0, 1], open: true });
        assert_eq!(f.params["carrier"].pos, Pos { line: 5, col: 11 });
        assert_eq!(f.records[0].name.as_deref(), Some("and"));
        let again = parse(&f.render()).unwrap();
        assert_eq!(again.render(), f.render());
    }

    #[test]
    fn positioned_errors() {
        let e = parse("name = x\nkind = ring\nconstructor = y\n").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 8 });
        let e = parse("name = x\nkind = merge\nconstructor = y\nbase = (0,1\n").unwrap_err();
        assert_eq!(e.pos.line, 4);
        let e = parse("name = x\nkind = merge\n").unwrap_err();
        assert!(e.msg.contains("constructor"));
        let e = parse("name = x\nname = y\n").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 1 });
        let e = parse("name = x\nkind = merge\nconstructor = y\nbase = (...)\n").unwrap_err();
        assert_eq!(e.pos, Pos { line: 4, col: 9 });
    }

    #[test]
    fn unused_parameters_are_rejected() {
        let f = parse("name = x\nkind = merge\nconstructor = degenerate\ncarrier = {0}\nextra = 1\n").unwrap();
        let p = Params::new(&f);
        p.set("carrier").unwrap();
        let e = p.finish().unwrap_err();
        assert_eq!(e.pos, Pos { line: 5, col: 9 });
    }
}
