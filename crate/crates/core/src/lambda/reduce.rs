//! Normalization.
//!
//! Besides beta contraction, DRS operators applied to DRS constants are
//! folded: conjunction merges, negation wraps in a `NOT` box, `EXISTS`
//! introduces a referent and `PRESUP` attaches a presupposed box.

use crate::drs::{merge_with, Drs, Supply};

use super::{subst, LambdaError, Term};

pub const DEFAULT_STEP_LIMIT: usize = 100_000;

/// Normal form of `t`, with the default step limit.
pub fn beta_reduce(t: &Term) -> Result<Term, LambdaError> {
    beta_reduce_with_limit(t, DEFAULT_STEP_LIMIT)
}

pub fn beta_reduce_with_limit(t: &Term, limit: usize) -> Result<Term, LambdaError> {
    let mut n = Normalizer {
        supply: Supply::above(t.max_index()),
        steps: 0,
        limit,
    };
    n.norm(t)
}

struct Normalizer {
    supply: Supply,
    steps: usize,
    limit: usize,
}

impl Normalizer {
    fn tick(&mut self) -> Result<(), LambdaError> {
        self.steps += 1;
        if self.steps > self.limit {
            Err(LambdaError::StepLimit(self.limit))
        } else {
            Ok(())
        }
    }

    fn norm(&mut self, t: &Term) -> Result<Term, LambdaError> {
        match t {
            Term::Var(..) | Term::Drs(_) => Ok(t.clone()),
            Term::Lam { param, ty, body } => Ok(Term::lam(*param, ty.clone(), self.norm(body)?)),
            Term::App(f, a) => {
                let f = self.norm(f)?;
                let a = self.norm(a)?;
                match f {
                    Term::Lam { param, body, .. } => {
                        self.tick()?;
                        let r = subst(&body, param, &a, &mut self.supply)?;
                        self.norm(&r)
                    }
                    f => Ok(Term::app(f, a)),
                }
            }
            Term::Conj(a, b) => {
                let a = self.norm(a)?;
                let b = self.norm(b)?;
                self.fold(Term::conj(a, b))
            }
            Term::Neg(a) => {
                let a = self.norm(a)?;
                self.fold(Term::neg(a))
            }
            Term::Exists { var, body } => {
                let body = self.norm(body)?;
                self.fold(Term::exists(*var, body))
            }
            Term::Presup {
                var,
                presupposed,
                asserting,
            } => {
                let p = self.norm(presupposed)?;
                let a = self.norm(asserting)?;
                self.fold(Term::presup(*var, p, a))
            }
        }
    }

    /// Folds an operator whose operands are already normal.
    fn fold(&mut self, t: Term) -> Result<Term, LambdaError> {
        match fold_operator(&t, &mut self.supply) {
            Some(d) => {
                self.tick()?;
                Ok(Term::Drs(d))
            }
            None => Ok(t),
        }
    }
}

fn fold_operator(t: &Term, supply: &mut Supply) -> Option<Drs> {
    match t {
        Term::Conj(a, b) => match (a.as_drs(), b.as_drs()) {
            (Some(a), Some(b)) => Some(merge_with(a, b, supply)),
            _ => None,
        },
        Term::Neg(a) => a.as_drs().map(|d| d.negate(supply)),
        Term::Exists { var, body } => body.as_drs().map(|d| d.introduce(*var, supply)),
        Term::Presup {
            var,
            presupposed,
            asserting,
        } => match (presupposed.as_drs(), asserting.as_drs()) {
            (Some(p), Some(a)) => Some(Drs::presuppose(a, p, *var, supply)),
            _ => None,
        },
        _ => None,
    }
}

fn is_redex(t: &Term) -> bool {
    match t {
        Term::App(f, _) => matches!(**f, Term::Lam { .. }),
        Term::Conj(a, b) => a.as_drs().is_some() && b.as_drs().is_some(),
        Term::Neg(a) => a.as_drs().is_some(),
        Term::Exists { body, .. } => body.as_drs().is_some(),
        Term::Presup {
            presupposed,
            asserting,
            ..
        } => presupposed.as_drs().is_some() && asserting.as_drs().is_some(),
        _ => false,
    }
}

fn children(t: &Term) -> Vec<&Term> {
    match t {
        Term::Var(..) | Term::Drs(_) => vec![],
        Term::Lam { body, .. } | Term::Neg(body) | Term::Exists { body, .. } => vec![body],
        Term::App(a, b) | Term::Conj(a, b) => vec![a, b],
        Term::Presup {
            presupposed,
            asserting,
            ..
        } => vec![presupposed, asserting],
    }
}

fn child_mut(t: &mut Term, i: usize) -> Option<&mut Term> {
    match (t, i) {
        (Term::Lam { body, .. } | Term::Neg(body) | Term::Exists { body, .. }, 0) => Some(body),
        (Term::App(a, _) | Term::Conj(a, _), 0) => Some(a),
        (Term::App(_, b) | Term::Conj(_, b), 1) => Some(b),
        (Term::Presup { presupposed, .. }, 0) => Some(presupposed),
        (Term::Presup { asserting, .. }, 1) => Some(asserting),
        _ => None,
    }
}

/// Paths (child indices from the root) of every reducible position.
///
/// Child numbering: the body of a binder or negation is 0; application
/// and conjunction number function/left 0 and argument/right 1; `PRESUP`
/// numbers the presupposed part 0 and the asserting part 1.
pub fn redexes(t: &Term) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    collect_redexes(t, &mut Vec::new(), &mut out);
    out
}

fn collect_redexes(t: &Term, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if is_redex(t) {
        out.push(path.clone());
    }
    for (i, c) in children(t).into_iter().enumerate() {
        path.push(i);
        collect_redexes(c, path, out);
        path.pop();
    }
}

pub fn is_normal(t: &Term) -> bool {
    redexes(t).is_empty()
}

/// Contracts the single redex at `path`.
pub fn contract_at(t: &Term, path: &[usize]) -> Result<Term, LambdaError> {
    let mut supply = Supply::above(t.max_index());
    let mut out = t.clone();
    let mut cur = &mut out;
    for &i in path {
        cur = child_mut(cur, i).ok_or_else(|| LambdaError::Syntax {
            offset: i,
            message: "path leaves the term".into(),
        })?;
    }
    let replacement = match &*cur {
        Term::App(f, a) => match &**f {
            Term::Lam { param, body, .. } => subst(body, *param, a, &mut supply)?,
            _ => return Err(not_a_redex()),
        },
        other => Term::Drs(fold_operator(other, &mut supply).ok_or_else(not_a_redex)?),
    };
    *cur = replacement;
    Ok(out)
}

fn not_a_redex() -> LambdaError {
    LambdaError::Syntax {
        offset: 0,
        message: "no redex at the given position".into(),
    }
}
