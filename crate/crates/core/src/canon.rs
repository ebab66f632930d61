//! Canonical labelling of small relational structures.
//!
//! A structure is a set of items (variables) and a list of facts, each fact
//! a tuple of symbols and item references. Two structures that differ only
//! by a renaming of items get the same canonical string. Used for DRS
//! alpha-normalization and for term keys.
//!
//! The search is colour refinement followed by individualization of the
//! first non-singleton cell, keeping the lexicographically smallest
//! rendering. The number of leaves explored is capped; past the cap the
//! first branch is taken, which keeps the result a valid renaming but may
//! lose canonicity on highly symmetric inputs.

use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Item(usize),
    Sym(String),
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Structure {
    pub n_items: usize,
    /// Ordered initial cells; every item must appear in exactly one.
    pub initial: Vec<Vec<usize>>,
    pub facts: Vec<Vec<Tok>>,
}

const LEAF_BUDGET: usize = 512;

pub(crate) struct Labelling {
    /// Position of each item in the canonical order.
    pub rank: Vec<usize>,
    pub rendered: String,
}

impl Structure {
    pub fn canonical(&self) -> Labelling {
        let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); self.n_items];
        for (fi, fact) in self.facts.iter().enumerate() {
            for tok in fact {
                if let Tok::Item(i) = tok {
                    if occurs[*i].last() != Some(&fi) {
                        occurs[*i].push(fi);
                    }
                }
            }
        }
        let cells: Vec<Vec<usize>> = self
            .initial
            .iter()
            .filter(|c| !c.is_empty())
            .cloned()
            .collect();
        let mut search = Search {
            s: self,
            occurs,
            budget: LEAF_BUDGET,
            best: None,
        };
        search.run(cells);
        let (rendered, rank) = search.best.expect("at least one leaf is always visited");
        Labelling { rank, rendered }
    }

    fn render(&self, rank: &[usize]) -> String {
        let mut lines: Vec<String> = self
            .facts
            .iter()
            .map(|fact| {
                fact.iter()
                    .map(|t| match t {
                        Tok::Item(i) => format!("#{}", rank[*i]),
                        Tok::Sym(s) => s.clone(),
                    })
                    .collect::<Vec<_>>()
                    .join("\u{1}")
            })
            .collect();
        lines.sort();
        lines.join("\u{2}")
    }
}

struct Search<'a> {
    s: &'a Structure,
    occurs: Vec<Vec<usize>>,
    budget: usize,
    best: Option<(String, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, cells: Vec<Vec<usize>>) {
        let cells = self.refine(cells);
        match cells.iter().position(|c| c.len() > 1) {
            None => {
                let mut rank = vec![0; self.s.n_items];
                for (pos, cell) in cells.iter().enumerate() {
                    rank[cell[0]] = pos;
                }
                let rendered = self.s.render(&rank);
                let better = match &self.best {
                    None => true,
                    Some((b, _)) => rendered < *b,
                };
                if better {
                    self.best = Some((rendered, rank));
                }
                self.budget = self.budget.saturating_sub(1);
            }
            Some(k) => {
                let members = cells[k].clone();
                for (j, &v) in members.iter().enumerate() {
                    if j > 0 && self.budget == 0 {
                        break;
                    }
                    let mut next = Vec::with_capacity(cells.len() + 1);
                    next.extend_from_slice(&cells[..k]);
                    next.push(vec![v]);
                    next.push(members.iter().copied().filter(|&u| u != v).collect());
                    next.extend_from_slice(&cells[k + 1..]);
                    self.run(next);
                }
            }
        }
    }

    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        loop {
            let mut cell_of = vec![0usize; self.s.n_items];
            for (ci, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = ci;
                }
            }
            let mut changed = false;
            let mut next = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
                for &v in cell {
                    groups
                        .entry(self.signature(v, &cell_of))
                        .or_default()
                        .push(v);
                }
                if groups.len() > 1 {
                    changed = true;
                }
                next.extend(groups.into_values());
            }
            cells = next;
            if !changed {
                return cells;
            }
        }
    }

    fn signature(&self, v: usize, cell_of: &[usize]) -> String {
        let mut parts: Vec<String> = self.occurs[v]
            .iter()
            .map(|&fi| {
                self.s.facts[fi]
                    .iter()
                    .map(|t| match t {
                        Tok::Item(u) if *u == v => "*".to_string(),
                        Tok::Item(u) => format!("#{}", cell_of[*u]),
                        Tok::Sym(s) => s.clone(),
                    })
                    .collect::<Vec<_>>()
                    .join("\u{1}")
            })
            .collect();
        parts.sort();
        parts.join("\u{2}")
    }
}
