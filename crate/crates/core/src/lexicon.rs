//! Typed word templates and relation denotations.
//!
//! See `data/default.lex` for the file format.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::conllu::{base_label, DepTree, Token};
use crate::drs::{Condition, Drs};
use crate::lambda::{alpha_key, parse_term, type_of, LambdaError, Term};
use crate::semtypes::{SemType, SlotTag, TypeParser};

pub const LEMMA: &str = "LEMMA";
pub const SILENT_DEF: &str = "SILENT_DEF";
pub const SILENT_INDEF: &str = "SILENT_INDEF";

pub const DEFAULT_LEXICON: &str = include_str!("../data/default.lex");

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum TemplateKey {
    Any,
    /// A verb valency such as `transitive`.
    Valency(String),
    /// Only for these lemmas (lowercased).
    Lemmas(Vec<String>),
}

#[derive(Debug, Clone)]
pub struct WordTemplate {
    pub upos: String,
    pub key: TemplateKey,
    pub ty: SemType,
    pub template: Term,
    pub line: usize,
}

#[derive(Debug, Clone)]
pub struct RelationEntry {
    pub deprel: String,
    pub ty: SemType,
    pub term: Term,
    pub line: usize,
}

/// Role labels by verb valency and argument slot.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RolePolicy {
    pub labels: BTreeMap<(String, SlotTag), String>,
}

impl RolePolicy {
    pub fn label(&self, valency: &str, tag: SlotTag) -> Option<&str> {
        self.labels
            .get(&(valency.to_string(), tag))
            .map(String::as_str)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    pub words: BTreeMap<String, Vec<WordTemplate>>,
    pub relations: BTreeMap<String, Vec<RelationEntry>>,
    pub roles: RolePolicy,
    pub vacuous: BTreeSet<String>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: entry `{entry}` declares type {declared} but its term has type {found}")]
    TypeMismatch {
        line: usize,
        entry: String,
        declared: SemType,
        found: SemType,
    },
    #[error("line {line}: entry `{entry}` is ill-typed: {source}")]
    IllTyped {
        line: usize,
        entry: String,
        source: LambdaError,
    },
    #[error("line {line}: no role label for slot {tag} of valency `{valency}`")]
    MissingRole {
        line: usize,
        valency: String,
        tag: String,
    },
}

/// Why a token contributes no denotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VacuousReason {
    /// Its UPOS is declared vacuous.
    Declared,
    /// A relative pronoun; the relative clause leaves the slot open instead.
    RelativePronoun,
    /// No template exists for its UPOS.
    UnknownUpos,
}

#[derive(Debug, Clone)]
pub enum WordDenotations {
    Vacuous(VacuousReason),
    Candidates(Vec<(SemType, Term)>),
}

fn syntax(line: usize, message: impl Into<String>) -> LexiconError {
    LexiconError::Syntax {
        line,
        message: message.into(),
    }
}

/// Splits off the next whitespace-delimited word.
fn next_word(s: &str) -> Option<(&str, &str)> {
    let s = s.trim_start();
    if s.is_empty() {
        return None;
    }
    let end = s.find(char::is_whitespace).unwrap_or(s.len());
    Some((&s[..end], &s[end..]))
}

fn parse_type_prefix(s: &str, line: usize) -> Result<(SemType, &str), LexiconError> {
    let s = s.trim_start();
    let mut p = TypeParser::new(s);
    let ty = p
        .parse()
        .map_err(|e| syntax(line, format!("bad type: {}", e.message)))?;
    Ok((ty, &s[p.pos..]))
}

fn starts_with_type(s: &str) -> bool {
    let s = s.trim_start();
    if s.starts_with('(') {
        return true;
    }
    match next_word(s) {
        Some((w, _)) => crate::semtypes::parse_type(w).is_ok(),
        None => false,
    }
}

enum Pending {
    Word(WordTemplate, String),
    Rel(RelationEntry, String),
}

pub fn load_lexicon(text: &str) -> Result<Lexicon, LexiconError> {
    let mut lex = Lexicon::default();
    let mut pending = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let (kind, rest) = next_word(content).unwrap();
        match kind {
            "word" => {
                let (upos, rest) = next_word(rest).ok_or_else(|| syntax(line, "missing UPOS"))?;
                let (key, rest) = if starts_with_type(rest) {
                    (TemplateKey::Any, rest)
                } else {
                    let (k, rest) = next_word(rest).ok_or_else(|| syntax(line, "missing type"))?;
                    let key = match k.strip_prefix('=') {
                        Some(list) => TemplateKey::Lemmas(
                            list.split(',')
                                .filter(|w| !w.is_empty())
                                .map(|w| {
                                    if w.starts_with("SILENT_") {
                                        w.to_string()
                                    } else {
                                        w.to_lowercase()
                                    }
                                })
                                .collect(),
                        ),
                        None => TemplateKey::Valency(k.to_string()),
                    };
                    (key, rest)
                };
                let (ty, rest) = parse_type_prefix(rest, line)?;
                let term = parse_term(rest.trim()).map_err(|e| syntax(line, e.to_string()))?;
                pending.push(Pending::Word(
                    WordTemplate {
                        upos: upos.to_string(),
                        key,
                        ty,
                        template: term,
                        line,
                    },
                    content.to_string(),
                ));
            }
            "rel" => {
                let (deprel, rest) =
                    next_word(rest).ok_or_else(|| syntax(line, "missing relation label"))?;
                let (ty, rest) = parse_type_prefix(rest, line)?;
                let term = parse_term(rest.trim()).map_err(|e| syntax(line, e.to_string()))?;
                pending.push(Pending::Rel(
                    RelationEntry {
                        deprel: deprel.to_string(),
                        ty,
                        term,
                        line,
                    },
                    content.to_string(),
                ));
            }
            "role" => {
                let words: Vec<&str> = rest.split_whitespace().collect();
                if words.len() != 3 {
                    return Err(syntax(
                        line,
                        "role lines are `role <valency> <tag> <Label>`",
                    ));
                }
                let tag = SlotTag::parse(words[1])
                    .ok_or_else(|| syntax(line, format!("unknown slot tag `{}`", words[1])))?;
                lex.roles
                    .labels
                    .insert((words[0].to_string(), tag), words[2].to_string());
            }
            "vacuous" => {
                lex.vacuous
                    .extend(rest.split_whitespace().map(str::to_string));
            }
            other => return Err(syntax(line, format!("unknown entry kind `{}`", other))),
        }
    }

    let mut seen = BTreeSet::new();
    for p in pending {
        match p {
            Pending::Word(mut w, src) => {
                if let TemplateKey::Valency(v) = &w.key {
                    w.template = resolve_roles(&w.template, v, &lex.roles, w.line)?;
                }
                check_type(&w.template, &w.ty, w.line, &src)?;
                let key = (
                    "word",
                    w.upos.clone(),
                    format!("{:?}", w.key),
                    w.ty.to_string(),
                    alpha_key(&w.template),
                );
                if !seen.insert(key) {
                    lex.warnings
                        .push(format!("line {}: duplicate entry ignored: {}", w.line, src));
                    continue;
                }
                lex.words.entry(w.upos.clone()).or_default().push(w);
            }
            Pending::Rel(r, src) => {
                check_type(&r.term, &r.ty, r.line, &src)?;
                let key = (
                    "rel",
                    r.deprel.clone(),
                    String::new(),
                    r.ty.to_string(),
                    alpha_key(&r.term),
                );
                if !seen.insert(key) {
                    lex.warnings
                        .push(format!("line {}: duplicate entry ignored: {}", r.line, src));
                    continue;
                }
                lex.relations.entry(r.deprel.clone()).or_default().push(r);
            }
        }
    }
    Ok(lex)
}

fn check_type(term: &Term, declared: &SemType, line: usize, src: &str) -> Result<(), LexiconError> {
    let found = type_of(term).map_err(|source| LexiconError::IllTyped {
        line,
        entry: src.to_string(),
        source,
    })?;
    if &found != declared {
        return Err(LexiconError::TypeMismatch {
            line,
            entry: src.to_string(),
            declared: declared.clone(),
            found,
        });
    }
    Ok(())
}

fn resolve_roles(
    t: &Term,
    valency: &str,
    roles: &RolePolicy,
    line: usize,
) -> Result<Term, LexiconError> {
    let out = t.map_drs(&|d: &Drs| {
        let mut d = d.clone();
        for b in &mut d.boxes {
            for c in &mut b.conditions {
                if let Condition::Role { label, .. } = c {
                    if let Some(tag) = label.strip_prefix('@') {
                        let resolved = SlotTag::parse(tag).and_then(|t| roles.label(valency, t));
                        match resolved {
                            Some(l) => *label = l.to_string(),
                            None => *label = format!("@{}", tag),
                        }
                    }
                }
            }
        }
        d
    });
    let missing = first_placeholder(&out);
    match missing {
        Some(tag) => Err(LexiconError::MissingRole {
            line,
            valency: valency.to_string(),
            tag: tag.trim_start_matches('@').to_string(),
        }),
        None => Ok(out),
    }
}

fn first_placeholder(t: &Term) -> Option<String> {
    let found = std::cell::RefCell::new(None);
    t.map_drs(&|d: &Drs| {
        for b in &d.boxes {
            for c in &b.conditions {
                if let Condition::Role { label, .. } = c {
                    if label.starts_with('@') && found.borrow().is_none() {
                        *found.borrow_mut() = Some(label.clone());
                    }
                }
            }
        }
        d.clone()
    });
    found.into_inner()
}

/// Lemma as it appears in conditions.
pub fn normalize_lemma(tok: &Token) -> String {
    let raw = if tok.lemma.is_empty() || tok.lemma == "_" {
        tok.form.to_lowercase()
    } else {
        tok.lemma.clone()
    };
    raw.split_whitespace().collect::<Vec<_>>().join("_")
}

fn fill_lemma(t: &Term, lemma: &str) -> Term {
    t.map_drs(&|d: &Drs| {
        let mut d = d.clone();
        for b in &mut d.boxes {
            for c in &mut b.conditions {
                if let Condition::Pred { lemma: l, .. } = c {
                    if l == LEMMA {
                        *l = lemma.to_string();
                    }
                }
            }
        }
        d
    })
}

impl Lexicon {
    pub fn default_lexicon() -> Lexicon {
        load_lexicon(DEFAULT_LEXICON).expect("shipped lexicon is valid")
    }

    pub fn word_count(&self) -> usize {
        self.words.values().map(Vec::len).sum()
    }

    pub fn relation_count(&self) -> usize {
        self.relations.values().map(Vec::len).sum()
    }

    /// Candidate denotations of a token, without tree context.
    pub fn word_denotations(&self, tok: &Token) -> WordDenotations {
        if self.vacuous.contains(&tok.upos) {
            return WordDenotations::Vacuous(VacuousReason::Declared);
        }
        let Some(templates) = self.words.get(&tok.upos) else {
            return WordDenotations::Vacuous(VacuousReason::UnknownUpos);
        };
        let lemma = normalize_lemma(tok);
        let key = if lemma.starts_with("SILENT_") {
            lemma.clone()
        } else {
            lemma.to_lowercase()
        };
        let specific: Vec<&WordTemplate> = templates
            .iter()
            .filter(|w| matches!(&w.key, TemplateKey::Lemmas(ls) if ls.contains(&key)))
            .collect();
        let chosen: Vec<&WordTemplate> = if specific.is_empty() {
            templates
                .iter()
                .filter(|w| !matches!(w.key, TemplateKey::Lemmas(_)))
                .collect()
        } else {
            specific
        };
        WordDenotations::Candidates(
            chosen
                .into_iter()
                .map(|w| (w.ty.clone(), fill_lemma(&w.template, &lemma)))
                .collect(),
        )
    }

    /// Candidate denotations of token `id` in its tree. Relative pronouns
    /// (pronouns opening a clause attached by `acl`) are vacuous.
    pub fn word_denotations_in(&self, tree: &DepTree, id: usize) -> WordDenotations {
        let tok = tree.token(id);
        if tok.upos == "PRON" && tok.head != 0 {
            let head = tree.token(tok.head);
            if head.base_deprel() == "acl" && tok.id < head.id {
                return WordDenotations::Vacuous(VacuousReason::RelativePronoun);
            }
        }
        self.word_denotations(tok)
    }

    /// Entries for the full label, or for its base label when there are
    /// none.
    pub fn relation_entries(&self, deprel: &str) -> &[RelationEntry] {
        if let Some(es) = self.relations.get(deprel) {
            return es;
        }
        self.relations
            .get(base_label(deprel))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn relation_denotations(&self, deprel: &str) -> Vec<(SemType, Term)> {
        self.relation_entries(deprel)
            .iter()
            .map(|r| (r.ty.clone(), r.term.clone()))
            .collect()
    }
}

/// Gives every NOUN and PROPN without a `det` dependent a synthetic
/// determiner: definite for PROPN, indefinite for NOUN. Synthetic tokens
/// are appended after the last token.
pub fn insert_silent_determiners(tree: &DepTree) -> DepTree {
    let mut tokens = tree.tokens.clone();
    for t in &tree.tokens {
        if t.upos != "NOUN" && t.upos != "PROPN" {
            continue;
        }
        let has_det = tree
            .dependents(t.id)
            .iter()
            .any(|(rel, _)| base_label(rel) == "det");
        if has_det {
            continue;
        }
        let lemma = if t.upos == "PROPN" {
            SILENT_DEF
        } else {
            SILENT_INDEF
        };
        let id = tokens.len() + 1;
        tokens.push(Token {
            id,
            form: String::new(),
            lemma: lemma.to_string(),
            upos: "DET".to_string(),
            head: t.id,
            deprel: "det".to_string(),
        });
    }
    DepTree::new(tree.text.clone(), tokens).expect("adding leaves keeps a valid tree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conllu::parse_conllu;
    use crate::lambda::alpha_equivalent;
    use crate::semtypes::parse_type;

    fn ty(s: &str) -> SemType {
        parse_type(s).unwrap()
    }

    fn tok(id: usize, lemma: &str, upos: &str, head: usize, deprel: &str) -> Token {
        Token {
            id,
            form: lemma.to_string(),
            lemma: lemma.to_string(),
            upos: upos.to_string(),
            head,
            deprel: deprel.to_string(),
        }
    }

    #[test]
    fn amod_entry_loads() {
        let lex =
            load_lexicon(r"rel amod ((et)((et)(et))) \F:(et).\G:(et).\x:e. AND(F x)(G x)").unwrap();
        assert_eq!(lex.relation_count(), 1);
        assert_eq!(
            lex.relation_denotations("amod")[0].0,
            ty("((et)((et)(et)))")
        );
    }

    #[test]
    fn empty_file_is_empty_lexicon() {
        let lex = load_lexicon("").unwrap();
        assert_eq!(lex.word_count() + lex.relation_count(), 0);
        assert!(lex.warnings.is_empty());
    }

    #[test]
    fn declared_type_must_match() {
        let err = load_lexicon(r"word NOUN ((et)t) \x:e. DRS(| LEMMA:n.01(x))").unwrap_err();
        match err {
            LexiconError::TypeMismatch {
                line,
                declared,
                found,
                ..
            } => {
                assert_eq!(line, 1);
                assert_eq!(declared, ty("((et)t)"));
                assert_eq!(found, ty("(et)"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicates_warn_and_collapse() {
        let text = "word NOUN (et) \\x:e. DRS(| LEMMA:n.01(x))\nword NOUN (et) \\y:e. DRS(| LEMMA:n.01(y))\n";
        let lex = load_lexicon(text).unwrap();
        assert_eq!(lex.word_count(), 1);
        assert_eq!(lex.warnings.len(), 1);
    }

    #[test]
    fn unresolved_role_placeholder_is_an_error() {
        let text = r"word VERB odd (e_sj(st)) \x:e_sj.\e:s. DRS(| LEMMA:v.01(e); @sj(e, x))";
        assert!(matches!(
            load_lexicon(text),
            Err(LexiconError::MissingRole { .. })
        ));
    }

    #[test]
    fn default_lexicon_covers_required_relations() {
        let lex = Lexicon::default_lexicon();
        assert!(lex.warnings.is_empty(), "{:?}", lex.warnings);
        for rel in [
            "root", "nsubj", "obj", "iobj", "det", "amod", "advmod", "acl", "xcomp", "ccomp",
            "obl", "conj",
        ] {
            assert!(!lex.relation_entries(rel).is_empty(), "{rel}");
        }
        assert!(lex.relation_entries("nsubj").len() >= 2);
        assert!(lex.relation_entries("obj").len() >= 2);
        for upos in ["AUX", "PUNCT", "CCONJ", "ADP"] {
            assert!(lex.vacuous.contains(upos));
        }
        let det = &lex.relation_entries("det")[0];
        assert_eq!(det.ty, ty("((et) (((et)((et)t)) ((et)t)))"));
    }

    #[test]
    fn noun_and_verb_templates() {
        let lex = Lexicon::default_lexicon();
        let WordDenotations::Candidates(c) =
            lex.word_denotations(&tok(1, "dog", "NOUN", 0, "root"))
        else {
            panic!()
        };
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].0, ty("(et)"));
        assert!(alpha_equivalent(
            &c[0].1,
            &parse_term(r"\x:e. DRS(| dog:n.01(x))").unwrap()
        ));

        let WordDenotations::Candidates(c) =
            lex.word_denotations(&tok(1, "sleep", "VERB", 0, "root"))
        else {
            panic!()
        };
        let expected = parse_term(r"\x:e_sj.\e:s. DRS(| sleep:v.01(e); Agent(e, x))").unwrap();
        assert!(c
            .iter()
            .any(|(t, d)| *t == ty("(e_sj(st))") && alpha_equivalent(d, &expected)));
        assert!(c.len() >= 3);
    }

    #[test]
    fn determiners_by_lemma() {
        let lex = Lexicon::default_lexicon();
        let get = |lemma: &str| match lex.word_denotations(&tok(1, lemma, "DET", 0, "root")) {
            WordDenotations::Candidates(c) => c,
            _ => panic!(),
        };
        let every = &get("Every")[0].1;
        assert!(alpha_equivalent(
            every,
            &parse_term(r"\P:(et).\F:(et). NOT (EXISTS x:e. AND (P x) (NOT (F x)))").unwrap()
        ));
        assert_eq!(get("the").len(), 1);
        assert!(matches!(get("the")[0].1, Term::Lam { .. }));
        assert!(alpha_equivalent(&get("some")[0].1, &get("a")[0].1));
    }

    #[test]
    fn relative_pronoun_is_vacuous() {
        let text = "1\tcat\tcat\tNOUN\t_\t_\t0\troot\t_\t_\n\
2\tthat\tthat\tPRON\t_\t_\t3\tnsubj\t_\t_\n\
3\tchased\tchase\tVERB\t_\t_\t1\tacl:relcl\t_\t_\n\
4\tit\tit\tPRON\t_\t_\t3\tobj\t_\t_\n";
        let tree = &parse_conllu(text).unwrap()[0];
        let lex = Lexicon::default_lexicon();
        assert!(matches!(
            lex.word_denotations_in(tree, 2),
            WordDenotations::Vacuous(VacuousReason::RelativePronoun)
        ));
        assert!(matches!(
            lex.word_denotations_in(tree, 4),
            WordDenotations::Candidates(_)
        ));
        assert!(matches!(
            lex.word_denotations(&tok(1, "x", "SYM", 0, "root")),
            WordDenotations::Vacuous(VacuousReason::UnknownUpos)
        ));
        assert_eq!(lex.relation_entries("acl:relcl").len(), 1);
        assert!(lex.relation_entries("nonsense").is_empty());
    }

    #[test]
    fn silent_determiners() {
        let text = "1\tBelgium\tBelgium\tPROPN\t_\t_\t2\tnsubj\t_\t_\n\
2\twon\twin\tVERB\t_\t_\t0\troot\t_\t_\n\
3\tthe\tthe\tDET\t_\t_\t4\tdet\t_\t_\n\
4\tcup\tcup\tNOUN\t_\t_\t2\tobj\t_\t_\n\
5\tlawyers\tlawyer\tNOUN\t_\t_\t2\tobl\t_\t_\n";
        let tree = &parse_conllu(text).unwrap()[0];
        let out = insert_silent_determiners(tree);
        assert_eq!(out.len(), 7);
        assert_eq!(out.token(6).lemma, SILENT_DEF);
        assert_eq!(out.token(6).head, 1);
        assert_eq!(out.token(7).lemma, SILENT_INDEF);
        assert_eq!(out.token(7).head, 5);
        assert_eq!(out.dependents(4).len(), 1);
        assert_eq!(insert_silent_determiners(&out), out);
    }
}
