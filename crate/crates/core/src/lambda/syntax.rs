//! Text syntax for terms.
//!
//! ```text
//! \x:e. body                  abstraction (extends to the right)
//! f a b                       application
//! AND a b   NOT a             DRS conjunction and negation
//! EXISTS x:e. body            referent introduction
//! PRESUP x:e. p a             presupposition binding x
//! DRS(x:e y:s | c1; c2)       DRS constant
//! ```
//!
//! DRS conditions are `lemma:sense(v)`, `Label(v1, v2)`, `NOT(refs | conds)`
//! and `>LABEL(refs | conds)`, the last attaching a linked box. Names bound
//! with type `e` or `s` are DRS variables; others are symbols. A free
//! variable is written with its type, as in `x3:e` or `F2:(et)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::drs::{Condition, Drs, DrsBox, Link, Sort, Variable};
use crate::semtypes::{AtomKind, SemType, TypeParser};

use super::{binder_sort, LambdaError, Name, Term};

pub fn parse_term(text: &str) -> Result<Term, LambdaError> {
    let mut p = Parser {
        text,
        pos: 0,
        next: max_literal_index(text) + 1,
        scope: Vec::new(),
    };
    let t = p.term()?;
    p.ws();
    if p.pos < text.len() {
        return Err(p.err("trailing input after term"));
    }
    Ok(t)
}

fn max_literal_index(text: &str) -> u32 {
    let mut max = 0u32;
    let mut prev_alpha = false;
    let mut digits = String::new();
    for c in text.chars().chain(std::iter::once(' ')) {
        if c.is_ascii_digit() && (prev_alpha || !digits.is_empty()) {
            digits.push(c);
            continue;
        }
        if !digits.is_empty() {
            max = max.max(digits.parse().unwrap_or(u32::MAX / 2));
            digits.clear();
        }
        prev_alpha = c.is_ascii_alphabetic();
    }
    max
}

const KEYWORDS: [&str; 5] = ["AND", "NOT", "EXISTS", "PRESUP", "DRS"];

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    next: u32,
    scope: Vec<(String, Name, SemType)>,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> LambdaError {
        LambdaError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), LambdaError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c)))
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            let ok = if self.pos == start {
                c.is_ascii_alphabetic() || c == '_'
            } else {
                c.is_ascii_alphanumeric() || c == '_' || c == '\''
            };
            if !ok {
                break;
            }
            self.pos += 1;
        }
        (self.pos > start).then(|| self.text[start..self.pos].to_string())
    }

    fn keyword_ahead(&self) -> Option<&'static str> {
        let rest = &self.text[self.pos..];
        KEYWORDS.iter().copied().find(|k| {
            rest.starts_with(k)
                && !rest[k.len()..]
                    .chars()
                    .next()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        })
    }

    fn ty(&mut self) -> Result<SemType, LambdaError> {
        self.ws();
        let mut tp = TypeParser::new(&self.text[self.pos..]);
        let ty = tp.parse().map_err(|e| LambdaError::Syntax {
            offset: self.pos + e.offset,
            message: e.message,
        })?;
        self.pos += tp.pos;
        Ok(ty)
    }

    fn fresh_name(&mut self, ty: &SemType) -> Name {
        let i = self.next;
        self.next += 1;
        match binder_sort(ty) {
            Some(sort) => Name::Ref(Variable::new(sort, i)),
            None => Name::Sym(i),
        }
    }

    /// `name:type`, pushing the binding.
    fn binder(&mut self) -> Result<(Name, SemType), LambdaError> {
        let name = self
            .ident()
            .ok_or_else(|| self.err("expected a binder name"))?;
        self.expect(':')?;
        let ty = self.ty()?;
        let n = self.fresh_name(&ty);
        self.scope.push((name, n, ty.clone()));
        Ok((n, ty))
    }

    fn ref_binder(&mut self, what: &str) -> Result<Variable, LambdaError> {
        let at = self.pos;
        match self.binder()? {
            (Name::Ref(v), _) => Ok(v),
            _ => Err(LambdaError::Syntax {
                offset: at,
                message: format!("{} binds an entity or event", what),
            }),
        }
    }

    fn term(&mut self) -> Result<Term, LambdaError> {
        let mut t = self.atom()?;
        loop {
            self.ws();
            match self.peek() {
                None | Some(')') => return Ok(t),
                _ => {
                    let a = self.atom()?;
                    t = Term::app(t, a);
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Term, LambdaError> {
        self.ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(')')?;
                Ok(t)
            }
            Some('\\') => {
                self.pos += 1;
                let depth = self.scope.len();
                let (param, ty) = self.binder()?;
                self.expect('.')?;
                let body = self.term();
                self.scope.truncate(depth);
                Ok(Term::lam(param, ty, body?))
            }
            Some(_) => match self.keyword_ahead() {
                Some(k) => {
                    self.pos += k.len();
                    self.keyword(k)
                }
                None => self.variable(),
            },
            None => Err(self.err("unexpected end of term")),
        }
    }

    fn keyword(&mut self, k: &str) -> Result<Term, LambdaError> {
        match k {
            "AND" => {
                let a = self.atom()?;
                let b = self.atom()?;
                Ok(Term::conj(a, b))
            }
            "NOT" => Ok(Term::neg(self.atom()?)),
            "EXISTS" => {
                let depth = self.scope.len();
                let var = self.ref_binder("EXISTS")?;
                self.expect('.')?;
                let body = self.term();
                self.scope.truncate(depth);
                Ok(Term::exists(var, body?))
            }
            "PRESUP" => {
                let depth = self.scope.len();
                let var = self.ref_binder("PRESUP")?;
                if var.sort != Sort::Entity {
                    return Err(self.err("PRESUP binds an entity"));
                }
                self.expect('.')?;
                let parts = self.atom().and_then(|p| Ok((p, self.atom()?)));
                self.scope.truncate(depth);
                let (p, a) = parts?;
                Ok(Term::presup(var, p, a))
            }
            _ => {
                self.expect('(')?;
                let mut d = DrsText::default();
                let main = self.drs_box(&mut d)?;
                self.expect(')')?;
                let boxes = d
                    .boxes
                    .iter()
                    .map(|(id, refs, conds)| {
                        let conditions = conds
                            .iter()
                            .map(|c| {
                                Ok(match c {
                                    PendingCond::Pred(lemma, sense, arg) => Condition::Pred {
                                        lemma: lemma.clone(),
                                        sense: sense.clone(),
                                        arg: self.resolve(&d.declared, arg)?,
                                    },
                                    PendingCond::Role(label, a, b) => Condition::Role {
                                        label: label.clone(),
                                        first: self.resolve(&d.declared, a)?,
                                        second: self.resolve(&d.declared, b)?,
                                    },
                                    PendingCond::Not(inner) => Condition::Not(*inner),
                                })
                            })
                            .collect::<Result<Vec<_>, LambdaError>>()?;
                        Ok(DrsBox {
                            id: *id,
                            referents: refs.clone(),
                            conditions,
                        })
                    })
                    .collect::<Result<Vec<_>, LambdaError>>()?;
                Ok(Term::Drs(Drs {
                    boxes,
                    main,
                    links: d.links,
                }))
            }
        }
    }

    fn variable(&mut self) -> Result<Term, LambdaError> {
        let at = self.pos;
        let name = self.ident().ok_or_else(|| self.err("expected a term"))?;
        if self.eat(':') {
            let ty = self.ty()?;
            return literal_name(&name, &ty)
                .map(|n| Term::Var(n, ty.clone()))
                .ok_or(LambdaError::Syntax {
                    offset: at,
                    message: format!("free variable `{}` does not fit type {}", name, ty),
                });
        }
        match self.scope.iter().rev().find(|(s, _, _)| *s == name) {
            Some((_, n, ty)) => Ok(Term::Var(*n, ty.clone())),
            None => Err(LambdaError::Syntax {
                offset: at,
                message: format!("unbound name `{}`", name),
            }),
        }
    }

    /// `refs | conds`, returning the box id. Referent names are visible
    /// throughout the constant.
    fn drs_box(&mut self, d: &mut DrsText) -> Result<Variable, LambdaError> {
        let id = Variable::new(Sort::Box, self.next);
        self.next += 1;
        let slot = d.boxes.len();
        d.boxes.push((id, BTreeSet::new(), Vec::new()));
        loop {
            if self.eat('|') {
                break;
            }
            let at = self.pos;
            let name = self
                .ident()
                .ok_or_else(|| self.err("expected a referent or `|`"))?;
            let sort = if self.eat(':') {
                match self.ty()?.atom_kind() {
                    Some(AtomKind::Event) => Sort::Event,
                    Some(AtomKind::Entity) => Sort::Entity,
                    _ => return Err(self.err("referents have type e or s")),
                }
            } else if name.starts_with('e') {
                Sort::Event
            } else {
                Sort::Entity
            };
            if d.declared.iter().any(|(n, _)| *n == name) {
                return Err(LambdaError::Syntax {
                    offset: at,
                    message: format!("referent `{}` declared twice", name),
                });
            }
            let v = Variable::new(sort, self.next);
            self.next += 1;
            d.declared.push((name, v));
            d.boxes[slot].1.insert(v);
        }
        loop {
            self.ws();
            if matches!(self.peek(), Some(')') | None) {
                break;
            }
            let head = self.cond_head()?;
            self.expect('(')?;
            if head == "NOT" {
                let inner = self.drs_box(d)?;
                d.boxes[slot].2.push(PendingCond::Not(inner));
            } else if let Some(label) = head.strip_prefix('>') {
                let inner = self.drs_box(d)?;
                d.links.push(Link {
                    label: label.to_string(),
                    from: id,
                    to: inner,
                });
            } else if let Some((lemma, sense)) = head.rsplit_once(':') {
                let arg = self.drs_name()?;
                d.boxes[slot]
                    .2
                    .push(PendingCond::Pred(lemma.to_string(), sense.to_string(), arg));
            } else {
                let first = self.drs_name()?;
                self.expect(',')?;
                let second = self.drs_name()?;
                d.boxes[slot].2.push(PendingCond::Role(head, first, second));
            }
            self.expect(')')?;
            if !self.eat(';') {
                break;
            }
        }
        Ok(id)
    }

    fn cond_head(&mut self) -> Result<String, LambdaError> {
        self.ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_whitespace() || matches!(c, '(' | ')' | ';' | '|' | ',') {
                break;
            }
            self.pos += c.len_utf8();
        }
        if self.pos == start {
            return Err(self.err("expected a condition"));
        }
        Ok(self.text[start..self.pos].to_string())
    }

    fn drs_name(&mut self) -> Result<(String, usize), LambdaError> {
        self.ws();
        let at = self.pos;
        let name = self
            .ident()
            .ok_or_else(|| self.err("expected a variable"))?;
        Ok((name, at))
    }

    fn resolve(
        &self,
        declared: &[(String, Variable)],
        (name, at): &(String, usize),
    ) -> Result<Variable, LambdaError> {
        if let Some((_, v)) = declared.iter().find(|(s, _)| s == name) {
            return Ok(*v);
        }
        if let Some((_, n, _)) = self.scope.iter().rev().find(|(s, _, _)| s == name) {
            return match n {
                Name::Ref(v) => Ok(*v),
                Name::Sym(_) => Err(LambdaError::Syntax {
                    offset: *at,
                    message: format!("`{}` is not an entity or event", name),
                }),
            };
        }
        let ty = if name.starts_with('e') {
            SemType::s()
        } else {
            SemType::e()
        };
        match literal_name(name, &ty) {
            Some(Name::Ref(v)) => Ok(v),
            _ => Err(LambdaError::Syntax {
                offset: *at,
                message: format!("unbound name `{}`", name),
            }),
        }
    }
}

#[derive(Default)]
struct DrsText {
    boxes: Vec<(Variable, BTreeSet<Variable>, Vec<PendingCond>)>,
    links: Vec<Link>,
    declared: Vec<(String, Variable)>,
}

enum PendingCond {
    Pred(String, String, (String, usize)),
    Role(String, (String, usize), (String, usize)),
    Not(Variable),
}

/// Name for a free variable written literally, such as `x3`, `e1`, `F2`.
fn literal_name(name: &str, ty: &SemType) -> Option<Name> {
    let (head, digits) = name.split_at(1);
    let index: u32 = digits.parse().ok()?;
    match (head, binder_sort(ty)) {
        ("x", Some(Sort::Entity)) => Some(Name::Ref(Variable::new(Sort::Entity, index))),
        ("e", Some(Sort::Event)) => Some(Name::Ref(Variable::new(Sort::Event, index))),
        ("F", None) => Some(Name::Sym(index)),
        _ => None,
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        print(self, &mut Vec::new(), &mut out);
        f.write_str(&out)
    }
}

fn print_atom(t: &Term, bound: &mut Vec<Name>, out: &mut String) {
    match t {
        Term::Var(..) | Term::Drs(_) => print(t, bound, out),
        _ => {
            out.push('(');
            print(t, bound, out);
            out.push(')');
        }
    }
}

fn print(t: &Term, bound: &mut Vec<Name>, out: &mut String) {
    match t {
        Term::Var(n, ty) => {
            out.push_str(&n.to_string());
            if !bound.contains(n) {
                out.push_str(&format!(":{}", ty));
            }
        }
        Term::Lam { param, ty, body } => {
            out.push_str(&format!("\\{}:{}. ", param, ty));
            bound.push(*param);
            print(body, bound, out);
            bound.pop();
        }
        Term::App(a, b) => {
            match **a {
                Term::App(..) => print(a, bound, out),
                _ => print_atom(a, bound, out),
            }
            out.push(' ');
            print_atom(b, bound, out);
        }
        Term::Conj(a, b) => {
            out.push_str("AND ");
            print_atom(a, bound, out);
            out.push(' ');
            print_atom(b, bound, out);
        }
        Term::Neg(a) => {
            out.push_str("NOT ");
            print_atom(a, bound, out);
        }
        Term::Exists { var, body } => {
            out.push_str(&format!("EXISTS {}:{}. ", var, sort_type(*var)));
            bound.push(Name::Ref(*var));
            print(body, bound, out);
            bound.pop();
        }
        Term::Presup {
            var,
            presupposed,
            asserting,
        } => {
            out.push_str(&format!("PRESUP {}:e. ", var));
            bound.push(Name::Ref(*var));
            print_atom(presupposed, bound, out);
            out.push(' ');
            print_atom(asserting, bound, out);
            bound.pop();
        }
        Term::Drs(d) => {
            out.push_str("DRS(");
            print_box(d, d.main, out);
            out.push(')');
        }
    }
}

fn sort_type(v: Variable) -> &'static str {
    match v.sort {
        Sort::Event => "s",
        _ => "e",
    }
}

fn print_box(d: &Drs, id: Variable, out: &mut String) {
    let Some(b) = d.get_box(id) else {
        out.push('|');
        return;
    };
    for r in &b.referents {
        out.push_str(&format!("{}:{} ", r, sort_type(*r)));
    }
    out.push('|');
    let mut parts = Vec::new();
    for c in &b.conditions {
        let mut s = String::new();
        match c {
            Condition::Pred { lemma, sense, arg } => {
                s.push_str(&format!("{}:{}({})", lemma, sense, arg))
            }
            Condition::Role {
                label,
                first,
                second,
            } => s.push_str(&format!("{}({}, {})", label, first, second)),
            Condition::Not(inner) => {
                s.push_str("NOT(");
                print_box(d, *inner, &mut s);
                s.push(')');
            }
        }
        parts.push(s);
    }
    for l in d.links.iter().filter(|l| l.from == id) {
        let mut s = format!(">{}(", l.label);
        print_box(d, l.to, &mut s);
        s.push(')');
        parts.push(s);
    }
    if !parts.is_empty() {
        out.push(' ');
        out.push_str(&parts.join("; "));
    }
}
