//! CoNLL-U reading and writing.
//!
//! Only the basic tree is used: id, form, lemma, upos, head and deprel.
//! Multiword token ranges and empty nodes are skipped.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    pub id: usize,
    pub form: String,
    pub lemma: String,
    pub upos: String,
    pub head: usize,
    /// Full label, subtype included (`nsubj:pass`).
    pub deprel: String,
}

impl Token {
    /// The label without its subtype.
    pub fn base_deprel(&self) -> &str {
        base_label(&self.deprel)
    }
}

pub fn base_label(deprel: &str) -> &str {
    deprel.split(':').next().unwrap_or(deprel)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepTree {
    /// Sentence text from a `# text =` comment, if any.
    pub text: Option<String>,
    pub tokens: Vec<Token>,
    /// Dependents of each token in id order, with their relation. Tokens
    /// without dependents have no entry.
    pub children: BTreeMap<usize, Vec<(String, usize)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConlluError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("sentence starting at line {line}: {message}")]
    Tree { line: usize, message: String },
}

impl DepTree {
    /// Builds and validates a tree from tokens in id order.
    pub fn new(text: Option<String>, tokens: Vec<Token>) -> Result<DepTree, String> {
        let n = tokens.len();
        if n == 0 {
            return Err("sentence has no tokens".into());
        }
        for (i, t) in tokens.iter().enumerate() {
            if t.id != i + 1 {
                return Err(format!(
                    "token ids must run 1..{} in order; found {} at position {}",
                    n,
                    t.id,
                    i + 1
                ));
            }
            if t.head == t.id {
                return Err(format!("token {} is its own head", t.id));
            }
            if t.head > n {
                return Err(format!(
                    "token {} has head {} outside the sentence",
                    t.id, t.head
                ));
            }
            if (t.head == 0) != (t.base_deprel() == "root") {
                return Err(format!(
                    "token {} has head {} and relation {}; exactly the head-0 token must be root",
                    t.id, t.head, t.deprel
                ));
            }
        }
        let roots: Vec<usize> = tokens
            .iter()
            .filter(|t| t.head == 0)
            .map(|t| t.id)
            .collect();
        if roots.len() != 1 {
            return Err(format!("expected exactly one root, found {}", roots.len()));
        }
        for t in &tokens {
            let mut cur = t.id;
            let mut steps = 0;
            while cur != 0 {
                cur = tokens[cur - 1].head;
                steps += 1;
                if steps > n {
                    return Err(format!(
                        "head references contain a cycle through token {}",
                        t.id
                    ));
                }
            }
        }
        let mut children: BTreeMap<usize, Vec<(String, usize)>> = BTreeMap::new();
        for t in &tokens {
            if t.head != 0 {
                children
                    .entry(t.head)
                    .or_default()
                    .push((t.deprel.clone(), t.id));
            }
        }
        Ok(DepTree {
            text,
            tokens,
            children,
        })
    }

    pub fn root(&self) -> usize {
        self.tokens
            .iter()
            .find(|t| t.head == 0)
            .map(|t| t.id)
            .expect("validated tree has a root")
    }

    pub fn token(&self, id: usize) -> &Token {
        &self.tokens[id - 1]
    }

    pub fn dependents(&self, id: usize) -> &[(String, usize)] {
        self.children.get(&id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn sentence_text(&self) -> String {
        self.text.clone().unwrap_or_else(|| {
            self.tokens
                .iter()
                .map(|t| t.form.as_str())
                .collect::<Vec<_>>()
                .join(" ")
        })
    }
}

fn field(s: &str) -> String {
    if s.is_empty() {
        "_".to_string()
    } else {
        s.to_string()
    }
}

pub fn parse_conllu(text: &str) -> Result<Vec<DepTree>, ConlluError> {
    let mut trees = Vec::new();
    let mut tokens: Vec<Token> = Vec::new();
    let mut sent_text: Option<String> = None;
    let mut start_line = 0;
    let mut in_block = false;

    let finish = |tokens: &mut Vec<Token>,
                  sent_text: &mut Option<String>,
                  start_line: usize,
                  trees: &mut Vec<DepTree>|
     -> Result<(), ConlluError> {
        let toks = std::mem::take(tokens);
        let txt = sent_text.take();
        if toks.is_empty() {
            return Ok(());
        }
        let tree = DepTree::new(txt, toks).map_err(|message| ConlluError::Tree {
            line: start_line,
            message,
        })?;
        trees.push(tree);
        Ok(())
    };

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            finish(&mut tokens, &mut sent_text, start_line, &mut trees)?;
            in_block = false;
            continue;
        }
        if !in_block {
            in_block = true;
            start_line = line_no;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(t) = comment.trim_start().strip_prefix("text =") {
                sent_text = Some(t.trim().to_string());
            }
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(ConlluError::Parse {
                line: line_no,
                message: format!("expected 10 tab-separated columns, found {}", cols.len()),
            });
        }
        let id_text = cols[0];
        if id_text.contains('-') || id_text.contains('.') {
            continue;
        }
        let id: usize = id_text.parse().map_err(|_| ConlluError::Parse {
            line: line_no,
            message: format!("non-numeric id `{}`", id_text),
        })?;
        if id == 0 {
            return Err(ConlluError::Parse {
                line: line_no,
                message: "token id must be at least 1".into(),
            });
        }
        let head: usize = cols[6].parse().map_err(|_| ConlluError::Parse {
            line: line_no,
            message: format!("non-numeric head `{}`", cols[6]),
        })?;
        tokens.push(Token {
            id,
            form: cols[1].to_string(),
            lemma: cols[2].to_string(),
            upos: cols[3].to_string(),
            head,
            deprel: cols[7].to_string(),
        });
    }
    finish(&mut tokens, &mut sent_text, start_line, &mut trees)?;
    Ok(trees)
}

/// Minimal CoNLL-U: the six used columns, the rest `_`.
pub fn to_conllu(trees: &[DepTree]) -> String {
    let mut out = String::new();
    for tree in trees {
        if let Some(t) = &tree.text {
            let _ = writeln!(out, "# text = {}", t);
        }
        for t in &tree.tokens {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t_\t_\t{}\t{}\t_\t_",
                t.id,
                field(&t.form),
                field(&t.lemma),
                field(&t.upos),
                t.head,
                field(&t.deprel)
            );
        }
        out.push('\n');
    }
    out
}
