mod common;

use common::clause_sets::{perturb, random_set};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use udtc::clauses::ClauseSet;
use udtc::evaluate::{align_and_f1, brute_force_f1, strip, MatchConfig};

const PLUS: MatchConfig = MatchConfig {
    include_discourse: true,
    include_labels: true,
};

#[test]
fn hill_climbing_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut equal, mut total) = (0, 0);
    while total < 1000 {
        let sb = rng.gen_range(1..=4);
        let gold = random_set(&mut rng, 8 - sb);
        let sys = if rng.gen_bool(0.5) {
            random_set(&mut rng, sb)
        } else {
            perturb(&mut rng, &gold)
        };
        let Ok(exact) = brute_force_f1(&sys, &gold, PLUS) else {
            continue;
        };
        total += 1;
        let found = align_and_f1(&sys, &gold, PLUS, 10);
        assert!(found.matched <= exact.matched, "{}\n--\n{}", sys, gold);
        if found.matched == exact.matched {
            equal += 1;
        }
    }
    assert!(equal * 100 >= 99 * total, "{} of {}", equal, total);
}

#[test]
fn brute_force_is_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let a = random_set(&mut rng, 4);
        let b = random_set(&mut rng, 4);
        let ab = brute_force_f1(&a, &b, PLUS).unwrap();
        let ba = brute_force_f1(&b, &a, PLUS).unwrap();
        assert_eq!(ab.matched, ba.matched);
        assert_eq!(ab.f1, ba.f1);
    }
}

#[test]
fn dropping_labels_never_loses_matches() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let minus_l = MatchConfig {
        include_discourse: true,
        include_labels: false,
    };
    for _ in 0..200 {
        let a = random_set(&mut rng, 4);
        let b = random_set(&mut rng, 4);
        let plus = brute_force_f1(&a, &b, PLUS).unwrap();
        let minus = brute_force_f1(&a, &b, minus_l).unwrap();
        assert!(plus.matched <= minus.matched);
        for c in &a.clauses {
            let s = strip(&ClauseSet::new(vec![c.clone()]), minus_l);
            for g in &b.clauses {
                let t = strip(&ClauseSet::new(vec![g.clone()]), minus_l);
                if c == g {
                    assert_eq!(s, t);
                }
            }
        }
    }
}

#[test]
fn omitting_one_condition_of_the_dog_sentence() {
    let gold = ClauseSet::parse(
        "b1 REF e1\nb1 sleep \"v.01\" e1\nb1 Agent e1 x1\nb2 REF x1\nb2 dog \"n.01\" x1\nb2 red \"a.01\" x1\nb2 big \"a.01\" x1\nb1 PRESUPPOSITION b2\n",
    )
    .unwrap();
    let sys = ClauseSet::new(
        gold.clauses
            .iter()
            .filter(|c| c.fields[1] != "big")
            .cloned()
            .collect(),
    );
    let exact = brute_force_f1(&sys, &gold, PLUS).unwrap();
    let found = align_and_f1(&sys, &gold, PLUS, 10);
    assert_eq!(
        (exact.matched, exact.sys_clauses, exact.gold_clauses),
        (7, 7, 8)
    );
    assert_eq!(found.matched, 7);
    assert_eq!(found.precision, 1.0);
    assert_eq!(found.recall, 7.0 / 8.0);
    assert_eq!(found.f1, 14.0 / 15.0);
}
