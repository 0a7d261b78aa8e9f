//! Named ratios and the textual ratio grammar.
//!
//! Catalog files are line oriented: `name kind params`, where `kind` is
//! `rational p q` for `p/q` or `quad a b c m` for `(a + b√m)/c`. Blank lines
//! and text after `#` are ignored. Names must not contain `/` or `:`.
//!
//! A ratio spec is one of `p/q`, `quad:a,b,c,m`, a decimal literal such as
//! `0.3819660112501051` (taken as an exact rational), or a catalog name.

use std::collections::BTreeMap;

use super::AlphaRatio;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Entry {
    Rational { p: u64, q: u64 },
    Quad { a: i64, b: i64, c: i64, m: u64 },
}

impl Entry {
    pub fn to_alpha(self) -> Result<AlphaRatio> {
        match self {
            Entry::Rational { p, q } => AlphaRatio::rational(p, q),
            Entry::Quad { a, b, c, m } => AlphaRatio::quadratic(a, b, c, m),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    entries: BTreeMap<String, Entry>,
}

const BUILTIN: &str = "\
inv_sqrt5 quad 0 1 5 5
inv_sqrt3 quad 0 1 3 3
inv_one_plus_sqrt5 quad -1 1 4 5
";

impl Default for Catalog {
    /// The built-in entries `inv_sqrt5` (`1/√5`), `inv_sqrt3` (`1/√3`) and
    /// `inv_one_plus_sqrt5` (`1/(1+√5)`).
    fn default() -> Self {
        Self::parse(BUILTIN).expect("built-in catalog parses")
    }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize) -> Result<T> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse(format!("catalog line {line}: bad or missing number")))
}

impl Catalog {
    pub fn empty() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Self::empty();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut toks = body.split_whitespace();
            let name = toks.next().expect("nonempty line");
            if name.contains(['/', ':']) {
                return Err(Error::Parse(format!(
                    "catalog line {line}: invalid name '{name}'"
                )));
            }
            let entry = match toks.next() {
                Some("rational") => Entry::Rational {
                    p: field(toks.next(), line)?,
                    q: field(toks.next(), line)?,
                },
                Some("quad") => Entry::Quad {
                    a: field(toks.next(), line)?,
                    b: field(toks.next(), line)?,
                    c: field(toks.next(), line)?,
                    m: field(toks.next(), line)?,
                },
                other => {
                    return Err(Error::Parse(format!(
                        "catalog line {line}: unknown kind '{}'",
                        other.unwrap_or("")
                    )))
                }
            };
            if toks.next().is_some() {
                return Err(Error::Parse(format!(
                    "catalog line {line}: trailing fields"
                )));
            }
            entry
                .to_alpha()
                .map_err(|e| Error::Parse(format!("catalog line {line}: {e}")))?;
            out.entries.insert(name.to_string(), entry);
        }
        Ok(out)
    }

    /// Add or replace the entries of `other`.
    pub fn merge(&mut self, other: Catalog) {
        self.entries.extend(other.entries);
    }

    pub fn get(&self, name: &str) -> Option<Entry> {
        self.entries.get(name).copied()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Resolve a ratio spec against this catalog.
    pub fn resolve(&self, spec: &str) -> Result<AlphaRatio> {
        let spec = spec.trim();
        if let Some(params) = spec.strip_prefix("quad:") {
            let parts: Vec<&str> = params.split(',').map(str::trim).collect();
            if parts.len() != 4 {
                return Err(Error::Parse(format!("'{spec}': expected quad:a,b,c,m")));
            }
            let num = |s: &str| {
                s.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("'{spec}': bad integer '{s}'")))
            };
            let m = parts[3]
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("'{spec}': bad radicand")))?;
            return AlphaRatio::quadratic(num(parts[0])?, num(parts[1])?, num(parts[2])?, m);
        }
        if let Some((p, q)) = spec.split_once('/') {
            let parse = |s: &str| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("'{spec}': expected p/q")))
            };
            return AlphaRatio::rational(parse(p)?, parse(q)?);
        }
        if spec.starts_with("0.") || spec.starts_with('.') {
            return AlphaRatio::decimal(spec);
        }
        match self.get(spec) {
            Some(entry) => entry.to_alpha(),
            None => Err(Error::Parse(format!("unknown ratio '{spec}'"))),
        }
    }
}
