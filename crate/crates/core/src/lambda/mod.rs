//! Typed lambda terms over DRS constants.
//!
//! Entity and event variables share their identity with DRS variables: a
//! lambda binding `x:e` binds the DRS variable `x` wherever it occurs free in
//! a DRS constant below it. Higher-order variables (predicates, quantifiers,
//! clauses) are plain symbols.

mod reduce;
mod syntax;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::drs::{Drs, Sort, Supply, Variable};
use crate::semtypes::{apply_type, matches, AtomKind, SemType};

pub use reduce::{
    beta_reduce, beta_reduce_with_limit, contract_at, is_normal, redexes, DEFAULT_STEP_LIMIT,
};
pub use syntax::parse_term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Name {
    /// An entity or event variable, shared with DRS conditions.
    Ref(Variable),
    /// A higher-order or DRS-typed variable.
    Sym(u32),
}

impl Name {
    pub fn index(self) -> u32 {
        match self {
            Name::Ref(v) => v.index,
            Name::Sym(i) => i,
        }
    }

    fn fresh_like(self, supply: &mut Supply) -> Name {
        match self {
            Name::Ref(v) => Name::Ref(supply.fresh(v.sort)),
            Name::Sym(_) => Name::Sym(supply.fresh_index()),
        }
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Name::Ref(v) => write!(f, "{}", v),
            Name::Sym(i) => write!(f, "F{}", i),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Name, SemType),
    Lam {
        param: Name,
        ty: SemType,
        body: Box<Term>,
    },
    App(Box<Term>, Box<Term>),
    /// A DRS constant. Its free variables are the holes filled by enclosing
    /// binders.
    Drs(Drs),
    /// Conjunction; two constants collapse by merging.
    Conj(Box<Term>, Box<Term>),
    /// Negation; a constant collapses into a `NOT` sub-box.
    Neg(Box<Term>),
    /// Binds `var` as a referent of the presupposed structure, visible in
    /// the asserting one.
    Presup {
        var: Variable,
        presupposed: Box<Term>,
        asserting: Box<Term>,
    },
    /// Introduces `var` as a referent of the body's main box.
    Exists {
        var: Variable,
        body: Box<Term>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LambdaError {
    #[error("ill-typed application `{subterm}`: function of type {func} cannot take argument of type {arg}")]
    Type {
        subterm: String,
        func: SemType,
        arg: SemType,
    },
    #[error("`{subterm}` has type {found} where a DRS (t) is required")]
    NotDrs { subterm: String, found: SemType },
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("variable {name} has sort {sort:?} but is bound with type {ty}")]
    SortMismatch {
        name: String,
        sort: Sort,
        ty: SemType,
    },
    #[error("binder {name} of type {ty} cannot bind a {what}")]
    BadBinder {
        name: String,
        ty: SemType,
        what: &'static str,
    },
    #[error("substituting {value} of type {found} for {name} of type {expected}")]
    SubstitutionType {
        name: String,
        value: String,
        expected: SemType,
        found: SemType,
    },
    #[error("entity or event argument `{0}` did not reduce to a variable")]
    NonVariableArgument(String),
    #[error("reduction exceeded {0} steps")]
    StepLimit(usize),
    #[error("term syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

/// Atomic kind a variable sort corresponds to.
pub(crate) fn sort_kind(sort: Sort) -> Option<AtomKind> {
    match sort {
        Sort::Entity => Some(AtomKind::Entity),
        Sort::Event => Some(AtomKind::Event),
        Sort::Box => None,
    }
}

/// Sort for a binder of atomic entity or event type.
pub(crate) fn binder_sort(ty: &SemType) -> Option<Sort> {
    match ty.atom_kind() {
        Some(AtomKind::Entity) => Some(Sort::Entity),
        Some(AtomKind::Event) => Some(Sort::Event),
        _ => None,
    }
}

impl Term {
    pub fn var(name: Name, ty: SemType) -> Term {
        Term::Var(name, ty)
    }

    pub fn lam(param: Name, ty: SemType, body: Term) -> Term {
        Term::Lam {
            param,
            ty,
            body: Box::new(body),
        }
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn conj(l: Term, r: Term) -> Term {
        Term::Conj(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(t: Term) -> Term {
        Term::Neg(Box::new(t))
    }

    pub fn exists(var: Variable, body: Term) -> Term {
        Term::Exists {
            var,
            body: Box::new(body),
        }
    }

    pub fn presup(var: Variable, presupposed: Term, asserting: Term) -> Term {
        Term::Presup {
            var,
            presupposed: Box::new(presupposed),
            asserting: Box::new(asserting),
        }
    }

    pub fn as_drs(&self) -> Option<&Drs> {
        match self {
            Term::Drs(d) => Some(d),
            _ => None,
        }
    }

    pub fn free_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(n, _) => {
                if !bound.contains(n) {
                    out.insert(*n);
                }
            }
            Term::Lam { param, body, .. } => {
                bound.push(*param);
                body.collect_free(bound, out);
                bound.pop();
            }
            Term::App(a, b) | Term::Conj(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Term::Neg(a) => a.collect_free(bound, out),
            Term::Drs(d) => {
                for v in d.free_variables() {
                    let n = Name::Ref(v);
                    if !bound.contains(&n) {
                        out.insert(n);
                    }
                }
            }
            Term::Exists { var, body } => {
                bound.push(Name::Ref(*var));
                body.collect_free(bound, out);
                bound.pop();
            }
            Term::Presup {
                var,
                presupposed,
                asserting,
            } => {
                bound.push(Name::Ref(*var));
                presupposed.collect_free(bound, out);
                asserting.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_names().is_empty()
    }

    /// Largest variable index anywhere in the term.
    pub fn max_index(&self) -> u32 {
        match self {
            Term::Var(n, _) => n.index(),
            Term::Lam { param, body, .. } => param.index().max(body.max_index()),
            Term::App(a, b) | Term::Conj(a, b) => a.max_index().max(b.max_index()),
            Term::Neg(a) => a.max_index(),
            Term::Drs(d) => d.max_index(),
            Term::Exists { var, body } => var.index.max(body.max_index()),
            Term::Presup {
                var,
                presupposed,
                asserting,
            } => var
                .index
                .max(presupposed.max_index())
                .max(asserting.max_index()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(..) | Term::Drs(_) => 1,
            Term::Lam { body, .. } | Term::Neg(body) | Term::Exists { body, .. } => 1 + body.size(),
            Term::App(a, b) | Term::Conj(a, b) => 1 + a.size() + b.size(),
            Term::Presup {
                presupposed,
                asserting,
                ..
            } => 1 + presupposed.size() + asserting.size(),
        }
    }

    /// Applies `f` to every DRS constant, rebuilding the term.
    pub fn map_drs(&self, f: &impl Fn(&Drs) -> Drs) -> Term {
        match self {
            Term::Var(..) => self.clone(),
            Term::Lam { param, ty, body } => Term::lam(*param, ty.clone(), body.map_drs(f)),
            Term::App(a, b) => Term::app(a.map_drs(f), b.map_drs(f)),
            Term::Conj(a, b) => Term::conj(a.map_drs(f), b.map_drs(f)),
            Term::Neg(a) => Term::neg(a.map_drs(f)),
            Term::Drs(d) => Term::Drs(f(d)),
            Term::Exists { var, body } => Term::exists(*var, body.map_drs(f)),
            Term::Presup {
                var,
                presupposed,
                asserting,
            } => Term::presup(*var, presupposed.map_drs(f), asserting.map_drs(f)),
        }
    }
}

/// Computes the type of a closed term.
pub fn type_of(t: &Term) -> Result<SemType, LambdaError> {
    type_in(t, &mut Vec::new())
}

/// Computes the type of a term whose free variables are typed by `env`.
pub fn type_of_open(t: &Term, env: &[(Name, SemType)]) -> Result<SemType, LambdaError> {
    let mut env = env.to_vec();
    type_in(t, &mut env)
}

fn lookup(env: &[(Name, SemType)], n: Name) -> Option<&SemType> {
    env.iter().rev().find(|(m, _)| *m == n).map(|(_, t)| t)
}

fn check_ref_binder(name: Name, ty: &SemType) -> Result<(), LambdaError> {
    match name {
        Name::Ref(v) => {
            if sort_kind(v.sort) != ty.atom_kind() {
                return Err(LambdaError::SortMismatch {
                    name: name.to_string(),
                    sort: v.sort,
                    ty: ty.clone(),
                });
            }
        }
        Name::Sym(_) => {
            if binder_sort(ty).is_some() {
                return Err(LambdaError::BadBinder {
                    name: name.to_string(),
                    ty: ty.clone(),
                    what: "entity or event through a symbol",
                });
            }
        }
    }
    Ok(())
}

fn expect_drs(t: &Term, env: &mut Vec<(Name, SemType)>) -> Result<(), LambdaError> {
    let ty = type_in(t, env)?;
    if ty != SemType::t() {
        return Err(LambdaError::NotDrs {
            subterm: t.to_string(),
            found: ty,
        });
    }
    Ok(())
}

fn type_in(t: &Term, env: &mut Vec<(Name, SemType)>) -> Result<SemType, LambdaError> {
    match t {
        Term::Var(n, _) => lookup(env, *n)
            .cloned()
            .ok_or_else(|| LambdaError::Unbound(n.to_string())),
        Term::Lam { param, ty, body } => {
            check_ref_binder(*param, ty)?;
            env.push((*param, ty.clone()));
            let out = type_in(body, env);
            env.pop();
            Ok(SemType::func(ty.clone(), out?))
        }
        Term::App(f, a) => {
            let ft = type_in(f, env)?;
            let at = type_in(a, env)?;
            apply_type(&ft, &at).ok_or_else(|| LambdaError::Type {
                subterm: t.to_string(),
                func: ft,
                arg: at,
            })
        }
        Term::Drs(d) => {
            for v in d.free_variables() {
                match lookup(env, Name::Ref(v)) {
                    None => return Err(LambdaError::Unbound(v.to_string())),
                    Some(ty) if ty.atom_kind() != sort_kind(v.sort) => {
                        return Err(LambdaError::SortMismatch {
                            name: v.to_string(),
                            sort: v.sort,
                            ty: ty.clone(),
                        })
                    }
                    Some(_) => {}
                }
            }
            Ok(SemType::t())
        }
        Term::Conj(a, b) => {
            expect_drs(a, env)?;
            expect_drs(b, env)?;
            Ok(SemType::t())
        }
        Term::Neg(a) => {
            expect_drs(a, env)?;
            Ok(SemType::t())
        }
        Term::Exists { var, body } => {
            let ty = match var.sort {
                Sort::Entity => SemType::e(),
                Sort::Event => SemType::s(),
                Sort::Box => {
                    return Err(LambdaError::BadBinder {
                        name: var.to_string(),
                        ty: SemType::t(),
                        what: "box variable",
                    })
                }
            };
            env.push((Name::Ref(*var), ty));
            let r = expect_drs(body, env);
            env.pop();
            r.map(|_| SemType::t())
        }
        Term::Presup {
            var,
            presupposed,
            asserting,
        } => {
            if var.sort != Sort::Entity {
                return Err(LambdaError::BadBinder {
                    name: var.to_string(),
                    ty: SemType::e(),
                    what: "non-entity presupposed referent",
                });
            }
            env.push((Name::Ref(*var), SemType::e()));
            let r = expect_drs(presupposed, env).and_then(|_| expect_drs(asserting, env));
            env.pop();
            r.map(|_| SemType::t())
        }
    }
}

/// Capture-avoiding substitution of `value` for the free occurrences of
/// `name`, checked against the type of those occurrences.
pub fn substitute(t: &Term, name: Name, value: &Term) -> Result<Term, LambdaError> {
    if let Some(expected) = occurrence_type(t, name) {
        let env: Vec<(Name, SemType)> = value
            .free_names()
            .into_iter()
            .filter_map(|n| occurrence_type(value, n).map(|ty| (n, ty)))
            .collect();
        let found = type_of_open(value, &env)?;
        if !matches(&found, &expected) {
            return Err(LambdaError::SubstitutionType {
                name: name.to_string(),
                value: value.to_string(),
                expected,
                found,
            });
        }
    }
    let mut supply = Supply::above(t.max_index().max(value.max_index()).max(name.index()));
    subst(t, name, value, &mut supply)
}

/// Type annotation of the first free occurrence of `name`, if any.
fn occurrence_type(t: &Term, name: Name) -> Option<SemType> {
    match t {
        Term::Var(n, ty) if *n == name => Some(ty.clone()),
        Term::Var(..) => None,
        Term::Lam { param, body, .. } => {
            if *param == name {
                None
            } else {
                occurrence_type(body, name)
            }
        }
        Term::App(a, b) | Term::Conj(a, b) => {
            occurrence_type(a, name).or_else(|| occurrence_type(b, name))
        }
        Term::Neg(a) => occurrence_type(a, name),
        Term::Drs(d) => match name {
            Name::Ref(v) if d.free_variables().contains(&v) => match v.sort {
                Sort::Entity => Some(SemType::e()),
                Sort::Event => Some(SemType::s()),
                Sort::Box => None,
            },
            _ => None,
        },
        Term::Exists { var, body } => {
            if Name::Ref(*var) == name {
                None
            } else {
                occurrence_type(body, name)
            }
        }
        Term::Presup {
            var,
            presupposed,
            asserting,
        } => {
            if Name::Ref(*var) == name {
                None
            } else {
                occurrence_type(presupposed, name).or_else(|| occurrence_type(asserting, name))
            }
        }
    }
}

pub(crate) fn subst(
    t: &Term,
    name: Name,
    value: &Term,
    supply: &mut Supply,
) -> Result<Term, LambdaError> {
    let fv = value.free_names();
    subst_inner(t, name, value, &fv, supply)
}

fn rename_binder(
    binder: Name,
    ty: &SemType,
    bodies: &[&Term],
    supply: &mut Supply,
) -> Result<(Name, Vec<Term>), LambdaError> {
    let fresh = binder.fresh_like(supply);
    let replacement = Term::Var(fresh, ty.clone());
    let fv = replacement.free_names();
    let renamed = bodies
        .iter()
        .map(|b| subst_inner(b, binder, &replacement, &fv, supply))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((fresh, renamed))
}

fn subst_inner(
    t: &Term,
    name: Name,
    value: &Term,
    fv: &BTreeSet<Name>,
    supply: &mut Supply,
) -> Result<Term, LambdaError> {
    Ok(match t {
        Term::Var(n, _) => {
            if *n == name {
                value.clone()
            } else {
                t.clone()
            }
        }
        Term::App(a, b) => Term::app(
            subst_inner(a, name, value, fv, supply)?,
            subst_inner(b, name, value, fv, supply)?,
        ),
        Term::Conj(a, b) => Term::conj(
            subst_inner(a, name, value, fv, supply)?,
            subst_inner(b, name, value, fv, supply)?,
        ),
        Term::Neg(a) => Term::neg(subst_inner(a, name, value, fv, supply)?),
        Term::Drs(d) => match name {
            Name::Ref(v) if d.free_variables().contains(&v) => match value {
                Term::Var(Name::Ref(w), _) => Term::Drs(d.substitute_free(v, *w, supply)),
                other => return Err(LambdaError::NonVariableArgument(other.to_string())),
            },
            _ => t.clone(),
        },
        Term::Lam { param, ty, body } => {
            if *param == name || !body.free_names().contains(&name) {
                return Ok(t.clone());
            }
            let (param, body) = if fv.contains(param) {
                let (p, mut b) = rename_binder(*param, ty, &[body], supply)?;
                (p, b.pop().unwrap())
            } else {
                (*param, (**body).clone())
            };
            Term::lam(
                param,
                ty.clone(),
                subst_inner(&body, name, value, fv, supply)?,
            )
        }
        Term::Exists { var, body } => {
            let binder = Name::Ref(*var);
            if binder == name || !body.free_names().contains(&name) {
                return Ok(t.clone());
            }
            let (binder, body) = if fv.contains(&binder) {
                let ty = atomic_type(*var);
                let (p, mut b) = rename_binder(binder, &ty, &[body], supply)?;
                (p, b.pop().unwrap())
            } else {
                (binder, (**body).clone())
            };
            let Name::Ref(var) = binder else {
                unreachable!()
            };
            Term::exists(var, subst_inner(&body, name, value, fv, supply)?)
        }
        Term::Presup {
            var,
            presupposed,
            asserting,
        } => {
            let binder = Name::Ref(*var);
            if binder == name
                || !(presupposed.free_names().contains(&name)
                    || asserting.free_names().contains(&name))
            {
                return Ok(t.clone());
            }
            let (binder, p, a) = if fv.contains(&binder) {
                let ty = atomic_type(*var);
                let (b, mut bodies) =
                    rename_binder(binder, &ty, &[presupposed, asserting], supply)?;
                let a = bodies.pop().unwrap();
                let p = bodies.pop().unwrap();
                (b, p, a)
            } else {
                (binder, (**presupposed).clone(), (**asserting).clone())
            };
            let Name::Ref(var) = binder else {
                unreachable!()
            };
            Term::presup(
                var,
                subst_inner(&p, name, value, fv, supply)?,
                subst_inner(&a, name, value, fv, supply)?,
            )
        }
    })
}

fn atomic_type(v: Variable) -> SemType {
    match v.sort {
        Sort::Event => SemType::s(),
        _ => SemType::e(),
    }
}

/// A string equal for exactly the alpha-equivalent terms (up to the
/// canonicalization budget on very symmetric DRS constants).
pub fn alpha_key(t: &Term) -> String {
    let mut out = String::new();
    key_into(t, &mut Vec::new(), &mut out);
    out
}

pub fn alpha_equivalent(a: &Term, b: &Term) -> bool {
    alpha_key(a) == alpha_key(b)
}

fn label_of(env: &[Name], n: Name) -> String {
    match env.iter().rposition(|m| *m == n) {
        Some(i) => format!("v{}", i),
        None => format!("free:{}", n),
    }
}

fn key_into(t: &Term, env: &mut Vec<Name>, out: &mut String) {
    match t {
        Term::Var(n, _) => out.push_str(&label_of(env, *n)),
        Term::Lam { param, ty, body } => {
            out.push_str(&format!("L{}.(", ty));
            env.push(*param);
            key_into(body, env, out);
            env.pop();
            out.push(')');
        }
        Term::App(a, b) => {
            out.push_str("A(");
            key_into(a, env, out);
            out.push(',');
            key_into(b, env, out);
            out.push(')');
        }
        Term::Conj(a, b) => {
            out.push_str("C(");
            key_into(a, env, out);
            out.push(',');
            key_into(b, env, out);
            out.push(')');
        }
        Term::Neg(a) => {
            out.push_str("N(");
            key_into(a, env, out);
            out.push(')');
        }
        Term::Drs(d) => {
            out.push_str("D{");
            out.push_str(&d.canonical_string(|v| label_of(env, Name::Ref(v))));
            out.push('}');
        }
        Term::Exists { var, body } => {
            out.push_str(&format!("E{}.(", var.sort.prefix()));
            env.push(Name::Ref(*var));
            key_into(body, env, out);
            env.pop();
            out.push(')');
        }
        Term::Presup {
            var,
            presupposed,
            asserting,
        } => {
            out.push_str("P(");
            env.push(Name::Ref(*var));
            key_into(presupposed, env, out);
            out.push(',');
            key_into(asserting, env, out);
            env.pop();
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semtypes::parse_type;

    fn ty(s: &str) -> SemType {
        parse_type(s).unwrap()
    }

    fn term(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn types_of_basic_denotations() {
        let amod = term(r"\F:(et).\G:(et).\x:e. AND (F x) (G x)");
        assert_eq!(type_of(&amod).unwrap(), ty("((et)((et)(et)))"));
        let dog = term(r"\x:e. DRS(| dog:n.01(x))");
        assert_eq!(type_of(&dog).unwrap(), ty("(et)"));
    }

    #[test]
    fn quantifier_cannot_feed_modifier() {
        let every_cat = term(r"\F:(et). NOT (EXISTS x:e. AND (DRS(| cat:n.01(x))) (NOT (F x)))");
        assert_eq!(type_of(&every_cat).unwrap(), ty("((et)t)"));
        let amod = term(r"\F:(et).\G:(et).\x:e. AND (F x) (G x)");
        let bad = Term::app(amod, every_cat);
        match type_of(&bad) {
            Err(LambdaError::Type { func, arg, .. }) => {
                assert_eq!(func, ty("((et)((et)(et)))"));
                assert_eq!(arg, ty("((et)t)"));
            }
            other => panic!("expected a type error, got {other:?}"),
        }
    }

    #[test]
    fn unbound_variables_are_rejected() {
        let open = Term::var(Name::Sym(1), ty("(et)"));
        assert!(matches!(type_of(&open), Err(LambdaError::Unbound(_))));
    }

    #[test]
    fn substitution_replaces_free_occurrences() {
        let body = term(r"\F:(et).\G:(et).\x:e. AND (F x) (G x)");
        let Term::Lam { param, body, .. } = body else {
            panic!()
        };
        let dog = term(r"\x:e. DRS(| dog:n.01(x))");
        let out = substitute(&body, param, &dog).unwrap();
        let expected = term(r"\G:(et).\x:e. AND ((\y:e. DRS(| dog:n.01(y))) x) (G x)");
        assert!(alpha_equivalent(&out, &expected), "{out}");
    }

    #[test]
    fn substitution_without_occurrence_is_identity() {
        let t = term(r"\x:e. DRS(| dog:n.01(x))");
        let out = substitute(&t, Name::Sym(999), &term(r"\y:e. DRS(| cat:n.01(y))")).unwrap();
        assert_eq!(out, t);
    }

    #[test]
    fn substitution_respects_shadowing() {
        // (\F. \F. F): the inner binder shadows the outer one.
        let t = term(r"\F:(et). \F:(et). F");
        let Term::Lam { param, body, .. } = t else {
            panic!()
        };
        let out = substitute(&body, param, &term(r"\y:e. DRS(| cat:n.01(y))")).unwrap();
        assert_eq!(out, *body);
    }

    #[test]
    fn substitution_avoids_capture() {
        // Substituting a term mentioning free x under a binder named x.
        let x_outer = Variable::new(Sort::Entity, 50);
        let x_inner = Variable::new(Sort::Entity, 51);
        let f = Name::Sym(1);
        let t = Term::lam(
            Name::Ref(x_inner),
            SemType::e(),
            Term::app(
                Term::var(f, ty("(et)")),
                Term::var(Name::Ref(x_inner), SemType::e()),
            ),
        );
        let value = Term::lam(
            Name::Ref(Variable::new(Sort::Entity, 52)),
            SemType::e(),
            Term::Drs(crate::drs::Drs::from_box(crate::drs::DrsBox {
                id: Variable::new(Sort::Box, 53),
                referents: Default::default(),
                conditions: vec![crate::drs::Condition::Role {
                    label: "Of".into(),
                    first: Variable::new(Sort::Entity, 52),
                    second: x_inner,
                }],
            })),
        );
        // value has x_inner free; substituting into t must rename t's binder.
        let out = subst(&t, f, &value, &mut Supply::above(100)).unwrap();
        assert!(out.free_names().contains(&Name::Ref(x_inner)));
        let _ = x_outer;
        let reduced = beta_reduce(&out).unwrap();
        let Term::Lam { param, body, .. } = reduced else {
            panic!()
        };
        assert_ne!(param, Name::Ref(x_inner));
        let d = body.as_drs().unwrap();
        assert_eq!(d.free_variables().len(), 2);
    }

    #[test]
    fn substitution_type_mismatch() {
        let t = term(r"\F:(et). F");
        let Term::Lam { param, body, .. } = t else {
            panic!()
        };
        let wrong = term(r"\F:(et). NOT (EXISTS x:e. F x)");
        assert!(matches!(
            substitute(&body, param, &wrong),
            Err(LambdaError::SubstitutionType { .. })
        ));
    }

    #[test]
    fn alpha_key_ignores_names() {
        let a = term(r"\F:(et).\x:e. AND (F x) (DRS(| dog:n.01(x)))");
        let b = term(r"\G:(et).\y:e. AND (G y) (DRS(| dog:n.01(y)))");
        assert!(alpha_equivalent(&a, &b));
        let c = term(r"\G:(et).\y:e. AND (DRS(| dog:n.01(y))) (G y)");
        assert!(!alpha_equivalent(&a, &c));
    }
}
