//! Semantic types: entities, events and DRSs, plus function types built
//! from them.
//!
//! Types are written in the parenthesized pair notation used throughout the
//! lexicon files: `(et)` is a function from entities to DRSs, and
//! `((e_sj(st)) (((et)t) (st)))` is the type of the surface-scope subject
//! relation. Entity atoms may carry a syntactic tag (`e_sj`, `e_oj`,
//! `e_io`) naming which argument slot they fill.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// Atomic kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomKind {
    /// `e`
    Entity,
    /// `s`
    Event,
    /// `t`
    Drs,
}

/// Syntactic tag on an entity atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SlotTag {
    Subject,
    Object,
    IndirectObject,
}

impl SlotTag {
    pub fn as_str(self) -> &'static str {
        match self {
            SlotTag::Subject => "sj",
            SlotTag::Object => "oj",
            SlotTag::IndirectObject => "io",
        }
    }

    /// Accepts `ob` as an alternate spelling of the object tag.
    pub fn parse(s: &str) -> Option<SlotTag> {
        match s {
            "sj" => Some(SlotTag::Subject),
            "oj" | "ob" => Some(SlotTag::Object),
            "io" => Some(SlotTag::IndirectObject),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemType {
    Atom(AtomKind, Option<SlotTag>),
    Fn(Arc<SemType>, Arc<SemType>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("type syntax error at offset {offset}: {message}")]
pub struct TypeSyntaxError {
    pub offset: usize,
    pub message: String,
}

impl SemType {
    pub fn e() -> SemType {
        SemType::Atom(AtomKind::Entity, None)
    }

    pub fn s() -> SemType {
        SemType::Atom(AtomKind::Event, None)
    }

    pub fn t() -> SemType {
        SemType::Atom(AtomKind::Drs, None)
    }

    pub fn tagged(tag: SlotTag) -> SemType {
        SemType::Atom(AtomKind::Entity, Some(tag))
    }

    pub fn func(input: SemType, output: SemType) -> SemType {
        SemType::Fn(Arc::new(input), Arc::new(output))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, SemType::Atom(..))
    }

    /// The kind of an atomic type.
    pub fn atom_kind(&self) -> Option<AtomKind> {
        match self {
            SemType::Atom(k, _) => Some(*k),
            SemType::Fn(..) => None,
        }
    }

    pub fn as_fn(&self) -> Option<(&SemType, &SemType)> {
        match self {
            SemType::Fn(i, o) => Some((i, o)),
            SemType::Atom(..) => None,
        }
    }

    /// Drops every syntactic tag.
    pub fn erase_tags(&self) -> SemType {
        match self {
            SemType::Atom(k, _) => SemType::Atom(*k, None),
            SemType::Fn(i, o) => SemType::func(i.erase_tags(), o.erase_tags()),
        }
    }

    pub fn has_tags(&self) -> bool {
        match self {
            SemType::Atom(_, tag) => tag.is_some(),
            SemType::Fn(i, o) => i.has_tags() || o.has_tags(),
        }
    }
}

/// Whether a value of type `provided` may fill a slot of type `required`.
///
/// The comparison is structural and atom-local: at each atomic position the
/// atoms must be equal, except that a bare `e` requirement also accepts any
/// tagged entity. Tags never satisfy a different tag, and a bare `e` never
/// satisfies a tagged requirement.
pub fn matches(provided: &SemType, required: &SemType) -> bool {
    match (provided, required) {
        (SemType::Atom(pk, pt), SemType::Atom(rk, rt)) => {
            pk == rk && (pt == rt || (*pk == AtomKind::Entity && rt.is_none()))
        }
        (SemType::Fn(pi, po), SemType::Fn(ri, ro)) => matches(pi, ri) && matches(po, ro),
        _ => false,
    }
}

/// Applies a function type to an argument type, returning the output type
/// when the argument fits the input slot.
pub fn apply_type(func: &SemType, arg: &SemType) -> Option<SemType> {
    match func {
        SemType::Fn(input, output) if matches(arg, input) => Some((**output).clone()),
        _ => None,
    }
}

pub fn parse_type(text: &str) -> Result<SemType, TypeSyntaxError> {
    let mut p = TypeParser::new(text);
    p.skip_ws();
    let ty = p.parse()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.error("trailing input after type"));
    }
    Ok(ty)
}

pub fn format_type(ty: &SemType) -> String {
    ty.to_string()
}

impl fmt::Display for SemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemType::Atom(kind, tag) => {
                let c = match kind {
                    AtomKind::Entity => "e",
                    AtomKind::Event => "s",
                    AtomKind::Drs => "t",
                };
                f.write_str(c)?;
                if let Some(tag) = tag {
                    write!(f, "_{}", tag.as_str())?;
                }
                Ok(())
            }
            SemType::Fn(i, o) => write!(f, "({}{})", i, o),
        }
    }
}

impl FromStr for SemType {
    type Err = TypeSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_type(s)
    }
}

/// Recursive-descent parser over the pair notation. Also used by the term
/// parser, which hands it a suffix of its own input.
pub(crate) struct TypeParser<'a> {
    bytes: &'a [u8],
    pub(crate) pos: usize,
}

impl<'a> TypeParser<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        TypeParser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, message: &str) -> TypeSyntaxError {
        TypeSyntaxError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn parse(&mut self) -> Result<SemType, TypeSyntaxError> {
        match self.bytes.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let mut members = Vec::new();
                loop {
                    self.skip_ws();
                    match self.bytes.get(self.pos) {
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        None => return Err(self.error("unbalanced parentheses")),
                        _ => members.push(self.parse()?),
                    }
                }
                if members.len() != 2 {
                    return Err(TypeSyntaxError {
                        offset: self.pos,
                        message: format!("pair has {} members, expected 2", members.len()),
                    });
                }
                let output = members.pop().unwrap();
                let input = members.pop().unwrap();
                Ok(SemType::func(input, output))
            }
            Some(b')') => Err(self.error("unbalanced parentheses")),
            Some(_) => self.parse_atom(),
            None => Err(self.error("unexpected end of type")),
        }
    }

    fn parse_atom(&mut self) -> Result<SemType, TypeSyntaxError> {
        let start = self.pos;
        let kind = match self.bytes[self.pos] {
            b'e' => AtomKind::Entity,
            b's' => AtomKind::Event,
            b't' => AtomKind::Drs,
            _ => return Err(self.error("unknown atom")),
        };
        self.pos += 1;
        if kind == AtomKind::Entity && self.bytes.get(self.pos) == Some(&b'_') {
            let tag_text = self
                .bytes
                .get(self.pos + 1..self.pos + 3)
                .and_then(|b| std::str::from_utf8(b).ok());
            match tag_text.and_then(SlotTag::parse) {
                Some(tag) => {
                    self.pos += 3;
                    return Ok(SemType::tagged(tag));
                }
                None => {
                    self.pos = start;
                    return Err(self.error("unknown atom"));
                }
            }
        }
        Ok(SemType::Atom(kind, None))
    }
}
