//! Vertex identifiers.
//!
//! A vertex is either an atomic token over `[A-Za-z0-9_.-]` or a tuple
//! `(p1,p2,...,pk)` of vertices. Tuples appear as soon as a Cartesian
//! product is formed; the atomic alphabet excludes `(`, `)`, `,` and `|`
//! so that every rendered tuple parses back unambiguously.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VertexError {
    #[error("empty vertex token")]
    Empty,
    #[error("invalid character {ch:?} in vertex token {token:?}")]
    BadChar { token: String, ch: char },
    #[error("malformed tuple vertex {0:?}")]
    MalformedTuple(String),
}

/// A validated vertex name. Ordering is plain byte-wise string ordering.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

pub(crate) fn is_atom_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-')
}

impl VertexId {
    pub fn new(token: impl Into<String>) -> Result<Self, VertexError> {
        let token = token.into();
        validate(&token)?;
        Ok(VertexId(token))
    }

    /// Builds the tuple vertex `(p1,...,pk)` from its parts.
    pub fn tuple<'a, I>(parts: I) -> Self
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        let mut s = String::from("(");
        for (i, p) in parts.into_iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&p.0);
        }
        s.push(')');
        VertexId(s)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_tuple(&self) -> bool {
        self.0.starts_with('(')
    }

    /// Top-level parts of a tuple vertex, or `None` for an atom.
    pub fn tuple_parts(&self) -> Option<Vec<VertexId>> {
        if !self.is_tuple() {
            return None;
        }
        let inner = &self.0[1..self.0.len() - 1];
        let mut parts = Vec::new();
        let mut depth = 0usize;
        let mut start = 0;
        for (i, c) in inner.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    parts.push(VertexId(inner[start..i].to_string()));
                    start = i + 1;
                }
                _ => {}
            }
        }
        parts.push(VertexId(inner[start..].to_string()));
        Some(parts)
    }

    /// Fully flattened atomic parts: `((a,b),c)` becomes `[a, b, c]`; an atom
    /// yields itself.
    pub fn atoms(&self) -> Vec<VertexId> {
        match self.tuple_parts() {
            None => vec![self.clone()],
            Some(parts) => parts.iter().flat_map(VertexId::atoms).collect(),
        }
    }

    /// Rewrites nested tuples into one flat tuple. Atoms are unchanged.
    pub fn flattened(&self) -> VertexId {
        if self.is_tuple() {
            VertexId::tuple(&self.atoms())
        } else {
            self.clone()
        }
    }
}

fn validate(token: &str) -> Result<(), VertexError> {
    if token.is_empty() {
        return Err(VertexError::Empty);
    }
    let mut p = Parser { s: token.as_bytes(), pos: 0, src: token };
    p.vertex()?;
    if p.pos != token.len() {
        return Err(VertexError::MalformedTuple(token.to_string()));
    }
    Ok(())
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn malformed(&self) -> VertexError {
        VertexError::MalformedTuple(self.src.to_string())
    }

    fn vertex(&mut self) -> Result<(), VertexError> {
        match self.s.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let mut count = 0;
                loop {
                    self.vertex()?;
                    count += 1;
                    match self.s.get(self.pos) {
                        Some(b',') => self.pos += 1,
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.malformed()),
                    }
                }
                if count < 2 {
                    return Err(self.malformed());
                }
                Ok(())
            }
            Some(_) => {
                let start = self.pos;
                while let Some(&b) = self.s.get(self.pos) {
                    if matches!(b, b'(' | b')' | b',') {
                        break;
                    }
                    if !b.is_ascii() || !is_atom_char(b as char) {
                        let ch = self.src[self.pos..].chars().next().unwrap_or('?');
                        return Err(VertexError::BadChar { token: self.src.to_string(), ch });
                    }
                    self.pos += 1;
                }
                if self.pos == start {
                    return Err(self.malformed());
                }
                Ok(())
            }
            None => Err(self.malformed()),
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for VertexId {
    type Err = VertexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        VertexId::new(s)
    }
}

impl AsRef<str> for VertexId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}
