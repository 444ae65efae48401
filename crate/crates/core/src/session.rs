//! The line-oriented session format:
//!
//! ```text
//! ring <name>
//! char <0 | prime>
//! vars <ident list>
//! quotient <poly>, <poly>, ...
//! seq <name> = <poly>, <poly>, ...
//! matrix <name> = [[<poly>, ...], ...]
//! expect <op> <args...> = <value> # [PAPER|TRIVIAL|DERIVED ...]
//! ```
//!
//! Comments start with `#`. `expect` lines keep the text after `#` as their provenance tag.

use std::collections::HashSet;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::groebner::RingPresentation;
use crate::idealops::ElementSequence;
use crate::koszul::CoeffMatrix;
use crate::limitclosure::LimitOptions;
use crate::poly::{parse_polynomial, MonomialOrder, PolyRing, Polynomial, CANONICAL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Paper,
    Trivial,
    Derived,
}

#[derive(Clone, Debug)]
pub struct Expectation {
    pub op: String,
    pub args: Vec<String>,
    pub expected: String,
    pub provenance: Provenance,
    /// Full tag text, brackets included.
    pub tag: String,
    pub line: usize,
}

impl PartialEq for Expectation {
    fn eq(&self, other: &Self) -> bool {
        self.op == other.op
            && self.args == other.args
            && self.expected == other.expected
            && self.provenance == other.provenance
            && self.tag == other.tag
    }
}

/// Settings supplied alongside a session rather than inside the file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SessionOptions {
    pub order: MonomialOrder,
    pub limit: LimitOptions,
    pub stages: u32,
    pub seed: u64,
    pub warn_homogeneity: bool,
}

impl Default for SessionOptions {
    fn default() -> Self {
        SessionOptions {
            order: CANONICAL,
            limit: LimitOptions::default(),
            stages: 3,
            seed: 0,
            warn_homogeneity: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SessionInput {
    pub name: String,
    pub characteristic: u32,
    pub vars: Vec<String>,
    pub quotient: Vec<Polynomial>,
    pub sequences: Vec<(String, Vec<Polynomial>)>,
    pub matrices: Vec<(String, Vec<Vec<Polynomial>>)>,
    pub expectations: Vec<Expectation>,
    pub options: SessionOptions,
    ring: Arc<RingPresentation>,
}

impl PartialEq for SessionInput {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.characteristic == other.characteristic
            && self.vars == other.vars
            && self.quotient == other.quotient
            && self.sequences == other.sequences
            && self.matrices == other.matrices
            && self.expectations == other.expectations
            && self.options == other.options
    }
}

struct Header {
    name: Option<String>,
    field: Option<FieldSpec>,
    ambient: Option<Arc<PolyRing>>,
    quotient: Option<Vec<Polynomial>>,
}

impl SessionInput {
    pub fn parse(text: &str) -> Result<SessionInput> {
        let mut h = Header {
            name: None,
            field: None,
            ambient: None,
            quotient: None,
        };
        let mut sequences = Vec::new();
        let mut matrices = Vec::new();
        let mut expectations = Vec::new();
        let mut names = HashSet::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let (body, comment) = match raw.find('#') {
                Some(i) => (&raw[..i], Some(&raw[i + 1..])),
                None => (raw, None),
            };
            let body = body.trim_end();
            let start = body.len() - body.trim_start().len();
            let body = body.trim_start();
            if body.is_empty() {
                continue;
            }
            let (kw, rest) = match body.find(char::is_whitespace) {
                Some(i) => (&body[..i], &body[i..]),
                None => (body, ""),
            };
            let rest_col = start + kw.len() + 1 + (rest.len() - rest.trim_start().len());
            let rest = rest.trim();
            let syntax = |column: usize, message: String| Error::Syntax {
                line,
                column,
                message,
            };
            match kw {
                "ring" => {
                    if h.name.is_some() {
                        return Err(syntax(start + 1, "ring declared twice".into()));
                    }
                    if rest.is_empty() || rest.contains(char::is_whitespace) {
                        return Err(syntax(rest_col, "expected a single ring name".into()));
                    }
                    h.name = Some(rest.to_string());
                }
                "char" => {
                    if h.field.is_some() {
                        return Err(syntax(start + 1, "char declared twice".into()));
                    }
                    let p: u64 = rest
                        .parse()
                        .map_err(|_| syntax(rest_col, format!("expected a characteristic, found `{rest}`")))?;
                    h.field = Some(FieldSpec::from_characteristic(p)?);
                }
                "vars" => {
                    if h.ambient.is_some() {
                        return Err(syntax(start + 1, "vars declared twice".into()));
                    }
                    let field = h
                        .field
                        .ok_or_else(|| syntax(start + 1, "vars must follow char".into()))?;
                    let vars: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                    let mut seen = HashSet::new();
                    for v in &vars {
                        if !is_ident(v) {
                            return Err(syntax(rest_col, format!("`{v}` is not a variable name")));
                        }
                        if !seen.insert(v.as_str()) {
                            return Err(syntax(rest_col, format!("variable `{v}` repeated")));
                        }
                    }
                    h.ambient = Some(PolyRing::new(vars, field));
                }
                "quotient" => {
                    if h.quotient.is_some() {
                        return Err(syntax(start + 1, "quotient declared twice".into()));
                    }
                    if !sequences.is_empty() || !matrices.is_empty() {
                        return Err(syntax(start + 1, "quotient must precede seq and matrix".into()));
                    }
                    let ambient = require_ambient(&h, line, start)?;
                    h.quotient = Some(parse_list(rest, rest_col, line, &ambient)?);
                }
                "seq" | "matrix" => {
                    let ambient = require_ambient(&h, line, start)?;
                    let eq = rest
                        .find('=')
                        .ok_or_else(|| syntax(rest_col, format!("expected `{kw} <name> = ...`")))?;
                    let name = rest[..eq].trim();
                    if !is_ident(name) {
                        return Err(syntax(rest_col, format!("`{name}` is not a valid name")));
                    }
                    if !names.insert(name.to_string()) {
                        return Err(syntax(rest_col, format!("name `{name}` defined twice")));
                    }
                    let value = &rest[eq + 1..];
                    let col = rest_col + eq + 1 + (value.len() - value.trim_start().len());
                    let value = value.trim();
                    if kw == "seq" {
                        sequences.push((name.to_string(), parse_list(value, col, line, &ambient)?));
                    } else {
                        matrices.push((name.to_string(), parse_matrix(value, col, line, &ambient)?));
                    }
                }
                "expect" => {
                    expectations.push(parse_expect(rest, rest_col, comment, line)?);
                }
                _ => return Err(syntax(start + 1, format!("unknown keyword `{kw}`"))),
            }
        }

        let missing = |what: &str| Error::Syntax {
            line: text.lines().count().max(1),
            column: 1,
            message: format!("missing `{what}` declaration"),
        };
        let name = h.name.ok_or_else(|| missing("ring"))?;
        let field = h.field.ok_or_else(|| missing("char"))?;
        let ambient = h.ambient.ok_or_else(|| missing("vars"))?;
        let quotient = h.quotient.unwrap_or_default();
        let ring = RingPresentation::new(ambient.vars().to_vec(), field, quotient.clone())?;
        Ok(SessionInput {
            name,
            characteristic: field.characteristic(),
            vars: ambient.vars().to_vec(),
            quotient,
            sequences,
            matrices,
            expectations,
            options: SessionOptions::default(),
            ring,
        })
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    /// Rebuild the ring with a different work budget.
    pub fn set_budget(&mut self, budget: u64) {
        self.ring = self.ring.with_budget(budget);
    }

    pub fn sequence(&self, name: &str) -> Result<ElementSequence> {
        let (_, elems) = self
            .sequences
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| Error::UndefinedName(name.to_string()))?;
        ElementSequence::new(&self.ring, elems.clone())
    }

    pub fn matrix(&self, name: &str) -> Result<CoeffMatrix> {
        let (_, rows) = self
            .matrices
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| Error::UndefinedName(name.to_string()))?;
        CoeffMatrix::new(&self.ring, rows.clone())
    }

    /// A polynomial given inline, or the single entry of a named one-element sequence.
    pub fn element(&self, text: &str) -> Result<Polynomial> {
        if let Some((_, elems)) = self.sequences.iter().find(|(n, _)| n == text) {
            if elems.len() == 1 {
                return Ok(elems[0].clone());
            }
        }
        self.ring.parse_element(text)
    }

    /// Warnings for inputs outside the graded setting where global and local answers agree.
    pub fn homogeneity_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.ring.is_homogeneous() {
            out.push("quotient ideal is not homogeneous; results describe the global ring and may differ from the local ring at the origin".to_string());
        }
        for (name, elems) in &self.sequences {
            if !elems.iter().all(Polynomial::is_homogeneous) {
                out.push(format!(
                    "sequence `{name}` is not homogeneous; results describe the global ring and may differ from the local ring at the origin"
                ));
            }
        }
        out
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SessionInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {}", self.name)?;
        writeln!(f, "char {}", self.characteristic)?;
        writeln!(f, "vars {}", self.vars.join(" "))?;
        if !self.quotient.is_empty() {
            writeln!(f, "quotient {}", join(&self.quotient))?;
        }
        for (name, elems) in &self.sequences {
            writeln!(f, "seq {name} = {}", join(elems))?;
        }
        for (name, rows) in &self.matrices {
            let mut s = String::from("[");
            for (i, row) in rows.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                let _ = write!(s, "[{}]", join(row));
            }
            s.push(']');
            writeln!(f, "matrix {name} = {s}")?;
        }
        for e in &self.expectations {
            write!(f, "expect {}", e.op)?;
            for a in &e.args {
                write!(f, " {a}")?;
            }
            writeln!(f, " = {} # {}", e.expected, e.tag)?;
        }
        Ok(())
    }
}

fn join(polys: &[Polynomial]) -> String {
    polys.iter().map(Polynomial::render).collect::<Vec<_>>().join(", ")
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn require_ambient(h: &Header, line: usize, start: usize) -> Result<Arc<PolyRing>> {
    if h.name.is_none() {
        return Err(Error::Syntax {
            line,
            column: start + 1,
            message: "declarations must follow `ring`".into(),
        });
    }
    h.ambient.clone().ok_or(Error::Syntax {
        line,
        column: start + 1,
        message: "declarations must follow `vars`".into(),
    })
}

/// Parse one polynomial, moving error positions from the fragment onto the file line.
fn parse_at(text: &str, column: usize, line: usize, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let lead = text.len() - text.trim_start().len();
    parse_polynomial(text.trim(), ring).map_err(|e| match e {
        Error::Syntax { column: c, message, .. } => Error::Syntax {
            line,
            column: column + lead + c - 1,
            message,
        },
        Error::UnknownVariable { name, column: c, .. } => Error::UnknownVariable {
            name,
            line,
            column: column + lead + c - 1,
        },
        other => other,
    })
}

fn parse_list(text: &str, column: usize, line: usize, ring: &Arc<PolyRing>) -> Result<Vec<Polynomial>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        if piece.trim().is_empty() {
            return Err(Error::Syntax {
                line,
                column: column + offset,
                message: "empty list entry".into(),
            });
        }
        out.push(parse_at(piece, column + offset, line, ring)?);
        offset += piece.len() + 1;
    }
    Ok(out)
}

fn parse_matrix(text: &str, column: usize, line: usize, ring: &Arc<PolyRing>) -> Result<Vec<Vec<Polynomial>>> {
    let err = |at: usize, message: &str| Error::Syntax {
        line,
        column: column + at,
        message: message.into(),
    };
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| err(0, "a matrix is written [[...], ...]"))?;
    let mut rows = Vec::new();
    let pos = 1;
    let bytes = inner.as_bytes();
    let mut i = 0;
    loop {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i >= bytes.len() || bytes[i] != b'[' {
            return Err(err(pos + i, "expected `[` opening a row"));
        }
        let close = inner[i..].find(']').ok_or_else(|| err(pos + i, "unclosed row"))? + i;
        let row = parse_list(&inner[i + 1..close], column + pos + i + 1, line, ring)?;
        if row.is_empty() {
            return Err(err(pos + i, "empty row"));
        }
        rows.push(row);
        i = close + 1;
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i == bytes.len() {
            break;
        }
        if bytes[i] != b',' {
            return Err(err(pos + i, "expected `,` between rows"));
        }
        i += 1;
    }
    Ok(rows)
}

fn parse_expect(rest: &str, column: usize, comment: Option<&str>, line: usize) -> Result<Expectation> {
    let err = |column: usize, message: &str| Error::Syntax {
        line,
        column,
        message: message.into(),
    };
    let eq = rest
        .rfind('=')
        .ok_or_else(|| err(column, "expected `expect <op> <args...> = <value>`"))?;
    let mut words = rest[..eq].split_whitespace().map(str::to_string);
    let op = words.next().ok_or_else(|| err(column, "missing operation name"))?;
    let args = words.collect();
    let expected = rest[eq + 1..].trim().to_string();
    if expected.is_empty() {
        return Err(err(column + eq + 1, "missing expected value"));
    }
    let tag = comment
        .map(str::trim)
        .filter(|t| t.starts_with('[') && t.ends_with(']'))
        .ok_or_else(|| err(column, "expectations need a provenance tag `# [PAPER|TRIVIAL|DERIVED ...]`"))?;
    let provenance = match tag[1..].split(|c: char| !c.is_ascii_alphabetic()).next() {
        Some("PAPER") => Provenance::Paper,
        Some("TRIVIAL") => Provenance::Trivial,
        Some("DERIVED") => Provenance::Derived,
        _ => return Err(err(column, "provenance must be PAPER, TRIVIAL or DERIVED")),
    };
    Ok(Expectation {
        op,
        args,
        expected,
        provenance,
        tag: tag.to_string(),
        line,
    })
}
