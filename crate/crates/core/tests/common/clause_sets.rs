use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use udtc::clauses::{Clause, ClauseSet};

const PREDS: [&str; 4] = ["cat", "dog", "sleep", "chase"];
const SENSES: [&str; 2] = ["\"n.01\"", "\"v.01\""];
const ROLES: [&str; 3] = ["Agent", "Theme", "Of"];

fn f(s: &str) -> String {
    s.to_string()
}

/// A clause set over at most `budget` variables.
pub fn random_set(rng: &mut ChaCha8Rng, budget: usize) -> ClauseSet {
    let nb = rng.gen_range(1..=2.min(budget));
    let rest = budget - nb;
    let nx = rng.gen_range(0..=rest);
    let ne = rng.gen_range(0..=(rest - nx));
    let bs: Vec<String> = (1..=nb).map(|i| format!("b{}", i)).collect();
    let mut ents: Vec<String> = (1..=nx).map(|i| format!("x{}", i)).collect();
    ents.extend((1..=ne).map(|i| format!("e{}", i)));
    let mut clauses = Vec::new();
    let n = rng.gen_range(1..=7);
    for _ in 0..n {
        let b = bs.choose(rng).unwrap().clone();
        let kind = rng.gen_range(0..5);
        let c = match kind {
            0 if !ents.is_empty() => vec![b, f("REF"), ents.choose(rng).unwrap().clone()],
            1 if !ents.is_empty() => vec![
                b,
                f(PREDS.choose(rng).unwrap()),
                f(SENSES.choose(rng).unwrap()),
                ents.choose(rng).unwrap().clone(),
            ],
            2 if !ents.is_empty() => vec![
                b,
                f(ROLES.choose(rng).unwrap()),
                ents.choose(rng).unwrap().clone(),
                ents.choose(rng).unwrap().clone(),
            ],
            3 => vec![b, f("NOT"), bs.choose(rng).unwrap().clone()],
            _ => vec![b, f("PRESUPPOSITION"), bs.choose(rng).unwrap().clone()],
        };
        clauses.push(Clause::new(c));
    }
    ClauseSet::new(clauses)
}

/// The same set with variables renamed and a few clauses dropped.
pub fn perturb(rng: &mut ChaCha8Rng, cs: &ClauseSet) -> ClauseSet {
    let clauses = cs
        .clauses
        .iter()
        .filter(|_| rng.gen_bool(0.8))
        .map(|c| {
            Clause::new(
                c.fields
                    .iter()
                    .map(|x| match x.chars().next() {
                        Some(p @ ('b' | 'x' | 'e'))
                            if x[1..].chars().all(|d| d.is_ascii_digit()) =>
                        {
                            format!("{}{}", p, x[1..].parse::<u32>().unwrap() + 10)
                        }
                        _ => x.clone(),
                    })
                    .collect(),
            )
        })
        .collect();
    ClauseSet::new(clauses)
}
