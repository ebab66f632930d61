//! Discourse Representation Structures.
//!
//! A [`Drs`] is a collection of boxes. Each box introduces referents and
//! holds conditions; boxes nest through `NOT` conditions and are linked to
//! each other by labelled relations such as `PRESUPPOSITION`. Variables are
//! sorted (box, entity, event) and numbered; [`Drs::alpha_normalize`] picks
//! a canonical numbering and condition order so that alpha-equivalent
//! structures compare equal.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{Structure, Tok};
use crate::clauses::{Clause, ClauseSet};

pub const PRESUPPOSITION: &str = "PRESUPPOSITION";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sort {
    Box,
    Entity,
    Event,
}

impl Sort {
    pub fn prefix(self) -> char {
        match self {
            Sort::Box => 'b',
            Sort::Entity => 'x',
            Sort::Event => 'e',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Variable {
    pub sort: Sort,
    pub index: u32,
}

impl Variable {
    pub fn new(sort: Sort, index: u32) -> Self {
        Variable { sort, index }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.sort.prefix(), self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    /// One-place predicate such as `dog(x)`.
    Pred {
        lemma: String,
        sense: String,
        arg: Variable,
    },
    /// Binary relation such as `Agent(e, x)`.
    Role {
        label: String,
        first: Variable,
        second: Variable,
    },
    /// Negated sub-box.
    Not(Variable),
}

impl Condition {
    fn variables(&self) -> Vec<Variable> {
        match self {
            Condition::Pred { arg, .. } => vec![*arg],
            Condition::Role { first, second, .. } => vec![*first, *second],
            Condition::Not(b) => vec![*b],
        }
    }

    fn renamed(&self, map: &impl Fn(Variable) -> Variable) -> Condition {
        match self {
            Condition::Pred { lemma, sense, arg } => Condition::Pred {
                lemma: lemma.clone(),
                sense: sense.clone(),
                arg: map(*arg),
            },
            Condition::Role {
                label,
                first,
                second,
            } => Condition::Role {
                label: label.clone(),
                first: map(*first),
                second: map(*second),
            },
            Condition::Not(b) => Condition::Not(map(*b)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DrsBox {
    pub id: Variable,
    pub referents: BTreeSet<Variable>,
    pub conditions: Vec<Condition>,
}

impl DrsBox {
    pub fn new(id: Variable) -> Self {
        DrsBox {
            id,
            referents: BTreeSet::new(),
            conditions: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Link {
    pub label: String,
    pub from: Variable,
    pub to: Variable,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Drs {
    pub boxes: Vec<DrsBox>,
    pub main: Variable,
    pub links: Vec<Link>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrsError {
    #[error("main box {0} is not among the boxes")]
    MissingMain(Variable),
    #[error("box {0} is defined more than once")]
    DuplicateBox(Variable),
    #[error("{0} is used as a box but has sort {1:?}")]
    NotABox(Variable, Sort),
    #[error("reference to undefined box {0}")]
    UndefinedBox(Variable),
    #[error("box references form a cycle through {0}")]
    Cycle(Variable),
    #[error("referent {0} is introduced by more than one box")]
    DuplicateReferent(Variable),
}

/// Source of fresh variable indices. Indices are shared across sorts, so a
/// supply seeded above every index in play never produces a clash.
#[derive(Debug, Clone)]
pub struct Supply {
    next: u32,
}

impl Supply {
    pub fn above(max_index: u32) -> Self {
        Supply {
            next: max_index + 1,
        }
    }

    pub fn fresh(&mut self, sort: Sort) -> Variable {
        let v = Variable::new(sort, self.next);
        self.next += 1;
        v
    }

    pub fn fresh_index(&mut self) -> u32 {
        let i = self.next;
        self.next += 1;
        i
    }

    pub fn reserve(&mut self, max_index: u32) {
        self.next = self.next.max(max_index + 1);
    }
}

impl Drs {
    /// A structure consisting of one empty main box.
    pub fn empty() -> Drs {
        Drs::from_box(DrsBox::new(Variable::new(Sort::Box, 1)))
    }

    pub fn from_box(b: DrsBox) -> Drs {
        Drs {
            main: b.id,
            boxes: vec![b],
            links: Vec::new(),
        }
    }

    pub fn main_box(&self) -> &DrsBox {
        self.boxes
            .iter()
            .find(|b| b.id == self.main)
            .expect("main box present")
    }

    fn main_box_mut(&mut self) -> &mut DrsBox {
        let main = self.main;
        self.boxes
            .iter_mut()
            .find(|b| b.id == main)
            .expect("main box present")
    }

    pub fn get_box(&self, id: Variable) -> Option<&DrsBox> {
        self.boxes.iter().find(|b| b.id == id)
    }

    pub fn referent_count(&self) -> usize {
        self.boxes.iter().map(|b| b.referents.len()).sum()
    }

    pub fn condition_count(&self) -> usize {
        self.boxes.iter().map(|b| b.conditions.len()).sum()
    }

    /// Every variable mentioned anywhere, box ids included.
    pub fn variables(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        out.insert(self.main);
        for b in &self.boxes {
            out.insert(b.id);
            out.extend(b.referents.iter().copied());
            for c in &b.conditions {
                out.extend(c.variables());
            }
        }
        for l in &self.links {
            out.insert(l.from);
            out.insert(l.to);
        }
        out
    }

    /// Box ids and referents: the variables this structure binds.
    pub fn bound_variables(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        for b in &self.boxes {
            out.insert(b.id);
            out.extend(b.referents.iter().copied());
        }
        out
    }

    /// Entity and event variables used in conditions but introduced by no box.
    pub fn free_variables(&self) -> BTreeSet<Variable> {
        let bound = self.bound_variables();
        self.variables()
            .into_iter()
            .filter(|v| v.sort != Sort::Box && !bound.contains(v))
            .collect()
    }

    pub fn max_index(&self) -> u32 {
        self.variables().iter().map(|v| v.index).max().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.len() == 1 && self.referent_count() == 0 && self.condition_count() == 0
    }

    pub fn rename(&self, map: &BTreeMap<Variable, Variable>) -> Drs {
        let f = |v: Variable| map.get(&v).copied().unwrap_or(v);
        Drs {
            boxes: self
                .boxes
                .iter()
                .map(|b| DrsBox {
                    id: f(b.id),
                    referents: b.referents.iter().map(|&v| f(v)).collect(),
                    conditions: b.conditions.iter().map(|c| c.renamed(&f)).collect(),
                })
                .collect(),
            main: f(self.main),
            links: self
                .links
                .iter()
                .map(|l| Link {
                    label: l.label.clone(),
                    from: f(l.from),
                    to: f(l.to),
                })
                .collect(),
        }
    }

    /// Renames every bound variable that occurs in `avoid` to a fresh one.
    pub fn freshen(&self, avoid: &BTreeSet<Variable>, supply: &mut Supply) -> Drs {
        let map: BTreeMap<Variable, Variable> = self
            .bound_variables()
            .into_iter()
            .filter(|v| avoid.contains(v))
            .map(|v| (v, supply.fresh(v.sort)))
            .collect();
        if map.is_empty() {
            self.clone()
        } else {
            self.rename(&map)
        }
    }

    /// Replaces free occurrences of `from` by `to`, renaming any bound `to`
    /// out of the way first.
    pub fn substitute_free(&self, from: Variable, to: Variable, supply: &mut Supply) -> Drs {
        if !self.free_variables().contains(&from) {
            return self.clone();
        }
        let d = self.freshen(&BTreeSet::from([to]), supply);
        d.rename(&BTreeMap::from([(from, to)]))
    }

    /// Adds `v` to the main box's referents, binding its free occurrences.
    pub fn introduce(&self, v: Variable, supply: &mut Supply) -> Drs {
        let mut d = self.freshen(&BTreeSet::from([v]), supply);
        d.main_box_mut().referents.insert(v);
        d
    }

    /// Wraps this structure in a fresh box holding a single `NOT` condition.
    pub fn negate(&self, supply: &mut Supply) -> Drs {
        let outer = supply.fresh(Sort::Box);
        let mut b = DrsBox::new(outer);
        b.conditions.push(Condition::Not(self.main));
        let mut boxes = vec![b];
        boxes.extend(self.boxes.iter().cloned());
        Drs {
            boxes,
            main: outer,
            links: self.links.clone(),
        }
    }

    /// `asserting` with `presupposed` attached through a `PRESUPPOSITION`
    /// link. `bind` becomes a referent of the presupposed main box and may
    /// be used freely in the asserting part.
    pub fn presuppose(
        asserting: &Drs,
        presupposed: &Drs,
        bind: Variable,
        supply: &mut Supply,
    ) -> Drs {
        let mut outer = asserting.free_variables();
        outer.remove(&bind);
        let p = presupposed.freshen(&outer, supply).introduce(bind, supply);
        let mut avoid = p.variables();
        avoid.remove(&bind);
        let a = asserting
            .freshen(&BTreeSet::from([bind]), supply)
            .freshen(&avoid, supply);
        let mut boxes = a.boxes.clone();
        boxes.extend(p.boxes.iter().cloned());
        let mut links = a.links.clone();
        links.extend(p.links.iter().cloned());
        links.push(Link {
            label: PRESUPPOSITION.to_string(),
            from: a.main,
            to: p.main,
        });
        Drs {
            boxes,
            main: a.main,
            links,
        }
    }

    pub fn validate(&self) -> Result<(), DrsError> {
        let mut ids = BTreeSet::new();
        let mut refs = BTreeSet::new();
        for b in &self.boxes {
            if b.id.sort != Sort::Box {
                return Err(DrsError::NotABox(b.id, b.id.sort));
            }
            if !ids.insert(b.id) {
                return Err(DrsError::DuplicateBox(b.id));
            }
            for r in &b.referents {
                if !refs.insert(*r) {
                    return Err(DrsError::DuplicateReferent(*r));
                }
            }
        }
        if !ids.contains(&self.main) {
            return Err(DrsError::MissingMain(self.main));
        }
        let mut edges: BTreeMap<Variable, Vec<Variable>> = BTreeMap::new();
        for b in &self.boxes {
            for c in &b.conditions {
                if let Condition::Not(inner) = c {
                    if !ids.contains(inner) {
                        return Err(DrsError::UndefinedBox(*inner));
                    }
                    edges.entry(b.id).or_default().push(*inner);
                }
            }
        }
        for l in &self.links {
            for end in [l.from, l.to] {
                if !ids.contains(&end) {
                    return Err(DrsError::UndefinedBox(end));
                }
            }
            edges.entry(l.from).or_default().push(l.to);
        }
        // Depth-first cycle check over the box reference graph.
        let mut state: BTreeMap<Variable, u8> = BTreeMap::new();
        fn visit(
            v: Variable,
            edges: &BTreeMap<Variable, Vec<Variable>>,
            state: &mut BTreeMap<Variable, u8>,
        ) -> Result<(), DrsError> {
            match state.get(&v) {
                Some(1) => return Err(DrsError::Cycle(v)),
                Some(2) => return Ok(()),
                _ => {}
            }
            state.insert(v, 1);
            for &w in edges.get(&v).into_iter().flatten() {
                visit(w, edges, state)?;
            }
            state.insert(v, 2);
            Ok(())
        }
        for &id in &ids {
            visit(id, &edges, &mut state)?;
        }
        Ok(())
    }

    /// Canonical renumbering and ordering.
    ///
    /// The main box becomes `b1`; other variables are numbered per sort in
    /// canonical order, skipping indices held by free variables (which keep
    /// their names). Boxes are ordered by id, conditions and links sorted.
    pub fn alpha_normalize(&self) -> Drs {
        let free = self.free_variables();
        let (structure, items) = self.structure(|v| free.contains(&v).then(|| v.to_string()));
        let labelling = structure.canonical();
        let mut order: Vec<usize> = (0..items.len()).collect();
        order.sort_by_key(|&i| labelling.rank[i]);
        let mut next: BTreeMap<Sort, u32> = BTreeMap::new();
        let taken: BTreeSet<(Sort, u32)> = free.iter().map(|v| (v.sort, v.index)).collect();
        let mut map = BTreeMap::new();
        for i in order {
            let v = items[i];
            if free.contains(&v) {
                continue;
            }
            let n = next.entry(v.sort).or_insert(0);
            loop {
                *n += 1;
                if !taken.contains(&(v.sort, *n)) {
                    break;
                }
            }
            map.insert(v, Variable::new(v.sort, *n));
        }
        let mut d = self.rename(&map);
        d.boxes.sort_by_key(|b| b.id);
        for b in &mut d.boxes {
            b.conditions.sort();
        }
        d.links.sort();
        d
    }

    pub fn alpha_equivalent(&self, other: &Drs) -> bool {
        self.alpha_normalize() == other.alpha_normalize()
    }

    /// Canonical rendering with free variables labelled by `pin`.
    pub(crate) fn canonical_string(&self, pin: impl Fn(Variable) -> String) -> String {
        let free = self.free_variables();
        self.structure(|v| free.contains(&v).then(|| pin(v)))
            .0
            .canonical()
            .rendered
    }

    fn structure(&self, pin: impl Fn(Variable) -> Option<String>) -> (Structure, Vec<Variable>) {
        let items: Vec<Variable> = self.variables().into_iter().collect();
        let index: BTreeMap<Variable, usize> =
            items.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let it = |v: &Variable| Tok::Item(index[v]);
        let sym = |s: &str| Tok::Sym(s.to_string());
        let mut facts = Vec::new();
        let mut pinned: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        let mut by_sort: BTreeMap<(u8, Sort), Vec<usize>> = BTreeMap::new();
        for (i, v) in items.iter().enumerate() {
            facts.push(vec![
                sym("SORT"),
                sym(&v.sort.prefix().to_string()),
                Tok::Item(i),
            ]);
            if let Some(label) = pin(*v) {
                facts.push(vec![sym("FREE"), Tok::Sym(label.clone()), Tok::Item(i)]);
                pinned.entry(label).or_default().push(i);
            } else {
                let group = if *v == self.main { 0 } else { 1 };
                by_sort.entry((group, v.sort)).or_default().push(i);
            }
        }
        facts.push(vec![sym("MAIN"), it(&self.main)]);
        for b in &self.boxes {
            for r in &b.referents {
                facts.push(vec![sym("REF"), it(&b.id), it(r)]);
            }
            for c in &b.conditions {
                facts.push(match c {
                    Condition::Pred { lemma, sense, arg } => {
                        vec![sym("PRED"), it(&b.id), sym(lemma), sym(sense), it(arg)]
                    }
                    Condition::Role {
                        label,
                        first,
                        second,
                    } => vec![sym("ROLE"), it(&b.id), sym(label), it(first), it(second)],
                    Condition::Not(inner) => vec![sym("NOT"), it(&b.id), it(inner)],
                });
            }
        }
        for l in &self.links {
            facts.push(vec![sym("LINK"), sym(&l.label), it(&l.from), it(&l.to)]);
        }
        let mut initial: Vec<Vec<usize>> = by_sort.into_values().collect();
        initial.extend(pinned.into_values());
        (
            Structure {
                n_items: items.len(),
                initial,
                facts,
            },
            items,
        )
    }

    /// Flattens to clause form: per box, one `REF` clause per referent then
    /// one clause per condition; then one clause per link.
    pub fn to_clauses(&self) -> ClauseSet {
        let mut clauses = Vec::new();
        for b in &self.boxes {
            let bx = b.id.to_string();
            for r in &b.referents {
                clauses.push(Clause::new(vec![bx.clone(), "REF".into(), r.to_string()]));
            }
            for c in &b.conditions {
                clauses.push(Clause::new(match c {
                    Condition::Pred { lemma, sense, arg } => vec![
                        bx.clone(),
                        lemma.clone(),
                        format!("\"{}\"", sense),
                        arg.to_string(),
                    ],
                    Condition::Role {
                        label,
                        first,
                        second,
                    } => vec![
                        bx.clone(),
                        label.clone(),
                        first.to_string(),
                        second.to_string(),
                    ],
                    Condition::Not(inner) => vec![bx.clone(), "NOT".into(), inner.to_string()],
                }));
            }
        }
        for l in &self.links {
            clauses.push(Clause::new(vec![
                l.from.to_string(),
                l.label.clone(),
                l.to.to_string(),
            ]));
        }
        ClauseSet::new(clauses)
    }
}

/// Appends `b` into `a`: `b`'s main box content joins `a`'s main box, its
/// other boxes and links are carried over. Bound variables of either side
/// that clash with the other side are renamed first; free variables are
/// shared.
pub fn merge(a: &Drs, b: &Drs) -> Drs {
    let mut supply = Supply::above(a.max_index().max(b.max_index()));
    merge_with(a, b, &mut supply)
}

pub(crate) fn merge_with(a: &Drs, b: &Drs, supply: &mut Supply) -> Drs {
    let a = a.freshen(&b.free_variables(), supply);
    let b = b.freshen(&a.variables(), supply);
    let b_main = b.main;
    let retarget = |v: Variable| if v == b_main { a.main } else { v };
    let mut out = a.clone();
    for bx in &b.boxes {
        if bx.id == b_main {
            let m = out.main_box_mut();
            m.referents.extend(bx.referents.iter().copied());
            m.conditions
                .extend(bx.conditions.iter().map(|c| c.renamed(&retarget)));
        } else {
            out.boxes.push(DrsBox {
                id: bx.id,
                referents: bx.referents.clone(),
                conditions: bx.conditions.iter().map(|c| c.renamed(&retarget)).collect(),
            });
        }
    }
    out.links.extend(b.links.iter().map(|l| Link {
        label: l.label.clone(),
        from: retarget(l.from),
        to: retarget(l.to),
    }));
    out
}

impl fmt::Display for Drs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_clauses())
    }
}
