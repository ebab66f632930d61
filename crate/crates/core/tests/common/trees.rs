use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use udtc::conllu::{DepTree, Token};
use udtc::lambda::{alpha_key, beta_reduce, Term};
use udtc::lexicon::{Lexicon, WordDenotations};
use udtc::semtypes::{apply_type, SemType};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every derivation of the subtree, one entry per order and entry choice;
/// `None` when the token contributes nothing.
pub fn all_derivations(tree: &DepTree, id: usize, lex: &Lexicon) -> Option<Vec<(SemType, Term)>> {
    let cands = match lex.word_denotations_in(tree, id) {
        WordDenotations::Vacuous(_) => return None,
        WordDenotations::Candidates(c) => c,
    };
    let mut active = Vec::new();
    for (rel, dep) in tree.dependents(id) {
        let Some(child) = all_derivations(tree, *dep, lex) else {
            continue;
        };
        let entries = lex.relation_entries(rel);
        if entries.is_empty() {
            continue;
        }
        active.push((entries, child));
    }
    let mut results = Vec::new();
    for perm in permutations(active.len()) {
        let mut states = cands.clone();
        for i in perm {
            let (entries, forms) = &active[i];
            let mut next = Vec::new();
            for (sty, sterm) in &states {
                for entry in entries.iter() {
                    let Some(partial) = apply_type(&entry.ty, sty) else {
                        continue;
                    };
                    for (fty, fterm) in forms {
                        let Some(ty) = apply_type(&partial, fty) else {
                            continue;
                        };
                        let app =
                            Term::app(Term::app(entry.term.clone(), sterm.clone()), fterm.clone());
                        if let Ok(t) = beta_reduce(&app) {
                            next.push((ty, t));
                        }
                    }
                }
            }
            states = next;
        }
        results.extend(states);
    }
    Some(results)
}

pub fn census(
    forms: impl IntoIterator<Item = (SemType, Term, u64)>,
) -> BTreeMap<(String, String), u64> {
    let mut m = BTreeMap::new();
    for (ty, term, n) in forms {
        *m.entry((ty.to_string(), alpha_key(&term))).or_insert(0) += n;
    }
    m
}

const WORDS: [(&str, &str, &str); 14] = [
    ("dog", "dog", "NOUN"),
    ("cat", "cat", "NOUN"),
    ("Kim", "Kim", "PROPN"),
    ("red", "red", "ADJ"),
    ("big", "big", "ADJ"),
    ("quickly", "quickly", "ADV"),
    ("slept", "sleep", "VERB"),
    ("chased", "chase", "VERB"),
    ("the", "the", "DET"),
    ("a", "a", "DET"),
    ("every", "every", "DET"),
    ("it", "it", "PRON"),
    ("did", "do", "AUX"),
    (".", ".", "PUNCT"),
];

fn deprel_for(rng: &mut ChaCha8Rng, upos: &str) -> &'static str {
    let opts: &[&str] = match upos {
        "NOUN" | "PROPN" | "PRON" => &["nsubj", "obj", "iobj", "obl", "nmod", "conj"],
        "ADJ" => &["amod", "conj", "xcomp"],
        "ADV" => &["advmod"],
        "VERB" => &["acl", "acl:relcl", "xcomp", "ccomp", "conj", "advcl"],
        "DET" => &["det"],
        "AUX" => &["aux"],
        _ => &["punct"],
    };
    if rng.gen_bool(0.05) {
        "dep"
    } else {
        opts.choose(rng).unwrap()
    }
}

pub fn random_tree(rng: &mut ChaCha8Rng) -> DepTree {
    let n = rng.gen_range(1..=6);
    let words: Vec<(&str, &str, &str)> = (0..n).map(|_| *WORDS.choose(rng).unwrap()).collect();
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut heads = vec![0; n + 1];
    for (k, &id) in order.iter().enumerate().skip(1) {
        let earlier = &order[..k];
        let content: Vec<usize> = earlier
            .iter()
            .copied()
            .filter(|h| matches!(words[h - 1].2, "NOUN" | "VERB" | "PROPN" | "ADJ"))
            .collect();
        heads[id] = *content
            .choose(rng)
            .unwrap_or_else(|| earlier.choose(rng).unwrap());
    }
    let tokens = (1..=n)
        .map(|id| {
            let (form, lemma, upos) = words[id - 1];
            Token {
                id,
                form: form.into(),
                lemma: lemma.into(),
                upos: upos.into(),
                head: heads[id],
                deprel: if heads[id] == 0 {
                    "root".into()
                } else {
                    deprel_for(rng, upos).into()
                },
            }
        })
        .collect();
    DepTree::new(None, tokens).unwrap()
}
