//! Enumeration of composition orders.
//!
//! A node's phrase denotation starts as one of its word denotations; each
//! outgoing relation is then applied in turn as `rel(head)(dependent)`, in
//! every order the types allow. States that agree on the set of applied
//! relations, the type and the term (up to alpha-equivalence) are merged,
//! keeping a count of how many derivations reached them.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::conllu::DepTree;
use crate::drs::Drs;
use crate::lambda::{alpha_key, beta_reduce, Term};
use crate::lexicon::{insert_silent_determiners, Lexicon, VacuousReason, WordDenotations};
use crate::semtypes::{apply_type, SemType};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_node_forms: usize,
    pub max_sentence_forms: usize,
    pub time_budget: Duration,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_node_forms: 10_000,
            max_sentence_forms: 10_000,
            time_budget: Duration::from_secs(10),
        }
    }
}

#[derive(Debug, Clone)]
pub struct NodeForm {
    pub ty: SemType,
    pub term: Term,
    /// Number of derivations (orders and entry choices, here and below)
    /// that produce this form.
    pub count: u64,
}

#[derive(Debug, Clone, Default)]
pub struct NodeResult {
    pub forms: Vec<NodeForm>,
    /// The node itself contributes nothing.
    pub vacuous: Option<VacuousReason>,
    pub truncated: bool,
    pub warnings: Vec<String>,
    pub failure: Option<Failure>,
}

impl NodeResult {
    pub fn count(&self) -> u64 {
        self.forms
            .iter()
            .fold(0u64, |a, f| a.saturating_add(f.count))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FailureKind {
    NoWordEntry,
    NoValidOrder,
    NoRootEntry,
    VacuousRoot,
    Resource,
}

impl FailureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FailureKind::NoWordEntry => "no-word-entry",
            FailureKind::NoValidOrder => "no-valid-order",
            FailureKind::NoRootEntry => "no-root-entry",
            FailureKind::VacuousRoot => "vacuous-root",
            FailureKind::Resource => "resource-limit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub kind: FailureKind,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct DerivationResult {
    /// Distinct, alpha-normalized forms sorted by clause serialization.
    pub forms: Vec<Drs>,
    pub count_before_dedup: u64,
    pub truncated: bool,
    pub warnings: Vec<String>,
    pub failure: Option<Failure>,
}

struct Deriver<'a> {
    tree: &'a DepTree,
    lex: &'a Lexicon,
    lim: Limits,
    deadline: Instant,
}

#[derive(Clone)]
struct State {
    mask: u64,
    ty: SemType,
    term: Term,
    count: u64,
}

fn describe(tree: &DepTree, id: usize) -> String {
    let t = tree.token(id);
    format!("{} ({} {})", id, t.form, t.upos)
}

impl Deriver<'_> {
    fn timed_out(&self) -> bool {
        Instant::now() >= self.deadline
    }

    fn node(&self, id: usize) -> NodeResult {
        let mut out = NodeResult::default();
        let candidates = match self.lex.word_denotations_in(self.tree, id) {
            WordDenotations::Vacuous(reason) => {
                if reason == VacuousReason::UnknownUpos {
                    out.warnings.push(format!(
                        "no templates for UPOS {} of token {}; token skipped",
                        self.tree.token(id).upos,
                        describe(self.tree, id)
                    ));
                }
                if !self.tree.dependents(id).is_empty() {
                    out.warnings.push(format!(
                        "vacuous token {} has dependents; they are dropped",
                        describe(self.tree, id)
                    ));
                }
                out.vacuous = Some(reason);
                return out;
            }
            WordDenotations::Candidates(c) => c,
        };
        if candidates.is_empty() {
            out.failure = Some(Failure {
                kind: FailureKind::NoWordEntry,
                detail: format!("no word entry for token {}", describe(self.tree, id)),
            });
            return out;
        }

        // Active dependents: (relation entries, dependent forms).
        let mut active = Vec::new();
        for (rel, dep) in self.tree.dependents(id) {
            let child = self.node(*dep);
            out.warnings.extend(child.warnings.iter().cloned());
            out.truncated |= child.truncated;
            if child.vacuous.is_some() {
                continue;
            }
            let entries = self.lex.relation_entries(rel);
            if entries.is_empty() {
                out.warnings.push(format!(
                    "no entry for relation {} from {} to {}; edge skipped",
                    rel,
                    describe(self.tree, id),
                    describe(self.tree, *dep)
                ));
                continue;
            }
            if child.forms.is_empty() {
                out.failure = child.failure.or_else(|| {
                    Some(Failure {
                        kind: FailureKind::Resource,
                        detail: format!("no forms for token {}", describe(self.tree, *dep)),
                    })
                });
                return out;
            }
            active.push((entries, child.forms));
        }
        if active.len() > 63 {
            out.failure = Some(Failure {
                kind: FailureKind::Resource,
                detail: format!("token {} has too many dependents", describe(self.tree, id)),
            });
            return out;
        }

        let mut layer = Layer::new(self.lim.max_node_forms);
        for (ty, term) in candidates {
            layer.add(State {
                mask: 0,
                ty,
                term,
                count: 1,
            });
        }
        for _ in 0..active.len() {
            let mut next = Layer::new(self.lim.max_node_forms);
            'states: for st in &layer.states {
                for (i, (entries, forms)) in active.iter().enumerate() {
                    if st.mask & (1 << i) != 0 {
                        continue;
                    }
                    for entry in entries.iter() {
                        let Some(partial) = apply_type(&entry.ty, &st.ty) else {
                            continue;
                        };
                        for f in forms {
                            let Some(ty) = apply_type(&partial, &f.ty) else {
                                continue;
                            };
                            if self.timed_out() {
                                out.truncated = true;
                                break 'states;
                            }
                            let app = Term::app(
                                Term::app(entry.term.clone(), st.term.clone()),
                                f.term.clone(),
                            );
                            match beta_reduce(&app) {
                                Ok(term) => {
                                    if !next.add(State {
                                        mask: st.mask | (1 << i),
                                        ty,
                                        term,
                                        count: st.count.saturating_mul(f.count),
                                    }) {
                                        out.truncated = true;
                                    }
                                }
                                Err(e) => out.warnings.push(format!(
                                    "reduction failed at token {} with relation line {}: {}",
                                    describe(self.tree, id),
                                    entry.line,
                                    e
                                )),
                            }
                        }
                    }
                }
            }
            layer = next;
        }
        out.forms = layer
            .states
            .into_iter()
            .map(|s| NodeForm {
                ty: s.ty,
                term: s.term,
                count: s.count,
            })
            .collect();
        if out.forms.is_empty() && out.failure.is_none() {
            out.failure = Some(if out.truncated {
                Failure {
                    kind: FailureKind::Resource,
                    detail: format!("limits reached at token {}", describe(self.tree, id)),
                }
            } else {
                Failure {
                    kind: FailureKind::NoValidOrder,
                    detail: format!(
                        "no type-valid composition order at token {}",
                        describe(self.tree, id)
                    ),
                }
            });
        }
        out
    }
}

struct Layer {
    states: Vec<State>,
    index: HashMap<(u64, SemType, String), usize>,
    cap: usize,
}

impl Layer {
    fn new(cap: usize) -> Self {
        Layer {
            states: Vec::new(),
            index: HashMap::new(),
            cap,
        }
    }

    /// Adds or merges a state; false when it was dropped for lack of room.
    fn add(&mut self, s: State) -> bool {
        let key = (s.mask, s.ty.clone(), alpha_key(&s.term));
        if let Some(&i) = self.index.get(&key) {
            self.states[i].count = self.states[i].count.saturating_add(s.count);
            return true;
        }
        if self.states.len() >= self.cap {
            return false;
        }
        self.index.insert(key, self.states.len());
        self.states.push(s);
        true
    }
}

/// All distinct denotations of the subtree at `node`.
pub fn derive_node(tree: &DepTree, node: usize, lex: &Lexicon, lim: &Limits) -> NodeResult {
    let d = Deriver {
        tree,
        lex,
        lim: *lim,
        deadline: Instant::now() + lim.time_budget,
    };
    d.node(node)
}

/// Derives every DRS for a sentence: silent determiners are inserted, the
/// root is derived and closed with each applicable `root` entry.
pub fn derive_sentence(tree: &DepTree, lex: &Lexicon, lim: &Limits) -> DerivationResult {
    let tree = insert_silent_determiners(tree);
    let root = tree.root();
    let d = Deriver {
        tree: &tree,
        lex,
        lim: *lim,
        deadline: Instant::now() + lim.time_budget,
    };
    let node = d.node(root);
    let mut out = DerivationResult {
        truncated: node.truncated,
        warnings: node.warnings.clone(),
        ..Default::default()
    };
    if let Some(reason) = node.vacuous {
        out.failure = Some(Failure {
            kind: FailureKind::VacuousRoot,
            detail: format!(
                "root token {} is vacuous ({:?})",
                describe(&tree, root),
                reason
            ),
        });
        return out;
    }
    if node.forms.is_empty() {
        out.failure = node.failure;
        return out;
    }
    let entries = lex.relation_entries("root");
    let mut seen: HashMap<String, ()> = HashMap::new();
    let mut forms: Vec<(String, Drs)> = Vec::new();
    'forms: for f in &node.forms {
        for entry in entries {
            let Some(ty) = apply_type(&entry.ty, &f.ty) else {
                continue;
            };
            if ty != SemType::t() {
                continue;
            }
            match beta_reduce(&Term::app(entry.term.clone(), f.term.clone())) {
                Ok(Term::Drs(drs)) => {
                    out.count_before_dedup = out.count_before_dedup.saturating_add(f.count);
                    let norm = drs.alpha_normalize();
                    let key = norm.to_clauses().to_string();
                    if seen.insert(key.clone(), ()).is_none() {
                        if forms.len() >= lim.max_sentence_forms {
                            out.truncated = true;
                            break 'forms;
                        }
                        forms.push((key, norm));
                    }
                }
                Ok(other) => out
                    .warnings
                    .push(format!("root closure did not reduce to a DRS: {}", other)),
                Err(e) => out.warnings.push(format!("root closure failed: {}", e)),
            }
        }
    }
    forms.sort_by(|a, b| a.0.cmp(&b.0));
    out.forms = forms.into_iter().map(|(_, d)| d).collect();
    if out.forms.is_empty() {
        let types: Vec<String> = node.forms.iter().map(|f| f.ty.to_string()).collect();
        out.failure = Some(Failure {
            kind: FailureKind::NoRootEntry,
            detail: format!(
                "no root entry accepts the sentence types {}",
                types.join(", ")
            ),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conllu::parse_conllu;

    fn tree(rows: &[(&str, &str, &str, usize, &str)]) -> DepTree {
        let text: String = rows
            .iter()
            .enumerate()
            .map(|(i, (form, lemma, upos, head, rel))| {
                format!(
                    "{}\t{}\t{}\t{}\t_\t_\t{}\t{}\t_\t_\n",
                    i + 1,
                    form,
                    lemma,
                    upos,
                    head,
                    rel
                )
            })
            .collect();
        parse_conllu(&text).unwrap().remove(0)
    }

    #[test]
    fn leaf_node_is_its_word() {
        let t = tree(&[
            ("red", "red", "ADJ", 2, "amod"),
            ("dog", "dog", "NOUN", 0, "root"),
        ]);
        let lex = Lexicon::default_lexicon();
        let r = derive_node(&t, 1, &lex, &Limits::default());
        assert_eq!(r.forms.len(), 2);
        assert!(r.forms.iter().any(|f| f.ty.to_string() == "(et)"));
    }

    #[test]
    fn sleep_imperative() {
        let t = tree(&[
            ("Sleep", "sleep", "VERB", 0, "root"),
            ("!", "!", "PUNCT", 1, "punct"),
        ]);
        let lex = Lexicon::default_lexicon();
        let r = derive_sentence(&t, &lex, &Limits::default());
        assert_eq!(r.forms.len(), 1, "{:?}", r.failure);
        let d = &r.forms[0];
        assert_eq!(d.referent_count(), 1);
        assert_eq!(d.condition_count(), 1);
    }

    #[test]
    fn unknown_relation_is_skipped_with_warning() {
        let t = tree(&[
            ("dogs", "dog", "NOUN", 2, "nsubj"),
            ("sleep", "sleep", "VERB", 0, "root"),
            ("zz", "zz", "ADV", 2, "frobnicate"),
        ]);
        let lex = Lexicon::default_lexicon();
        let r = derive_sentence(&t, &lex, &Limits::default());
        assert_eq!(r.forms.len(), 1);
        assert!(r.warnings.iter().any(|w| w.contains("frobnicate")));
    }

    #[test]
    fn ill_fitting_tree_fails_with_reason() {
        let t = tree(&[
            ("a", "a", "DET", 2, "nsubj"),
            ("sleep", "sleep", "VERB", 0, "root"),
        ]);
        let lex = Lexicon::default_lexicon();
        let r = derive_sentence(&t, &lex, &Limits::default());
        assert!(r.forms.is_empty());
        assert_eq!(r.failure.unwrap().kind, FailureKind::NoValidOrder);
    }

    #[test]
    fn tiny_limits_truncate() {
        let t = tree(&[
            ("Every", "every", "DET", 2, "det"),
            ("cat", "cat", "NOUN", 3, "nsubj"),
            ("chased", "chase", "VERB", 0, "root"),
            ("a", "a", "DET", 5, "det"),
            ("mouse", "mouse", "NOUN", 3, "obj"),
        ]);
        let lex = Lexicon::default_lexicon();
        let full = derive_sentence(&t, &lex, &Limits::default());
        assert_eq!(full.forms.len(), 2);
        assert!(!full.truncated);
        let lim = Limits {
            max_sentence_forms: 1,
            ..Limits::default()
        };
        let cut = derive_sentence(&t, &lex, &lim);
        assert_eq!(cut.forms.len(), 1);
        assert!(cut.truncated);
        assert!(full.forms.contains(&cut.forms[0]));
    }
}
