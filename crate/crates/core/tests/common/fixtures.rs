use udtc::clauses::ClauseSet;
use udtc::conllu::{parse_conllu, DepTree};

pub const MINI_CONLLU: &str = include_str!("../../data/mini/corpus.conllu");
pub const MINI_GOLD: &str = include_str!("../../data/mini/gold.clauses");

pub const DOG_GOLD: &str = "b1 REF e1
b1 sleep \"v.01\" e1
b1 Agent e1 x1
b1 PRESUPPOSITION b2
b2 REF x1
b2 dog \"n.01\" x1
b2 red \"a.01\" x1
b2 big \"a.01\" x1
";

pub const EVERY_SURFACE_GOLD: &str = "b1 REF e1
b1 NOT b2
b2 REF x1
b2 cat \"n.01\" x1
b2 NOT b3
b3 REF x2
b3 mouse \"n.01\" x2
b3 chase \"v.01\" e1
b3 Theme e1 x2
b3 Agent e1 x1
";

pub const EVERY_INVERSE_GOLD: &str = "b1 REF e1
b1 REF x2
b1 mouse \"n.01\" x2
b1 NOT b2
b2 REF x1
b2 cat \"n.01\" x1
b2 NOT b3
b3 chase \"v.01\" e1
b3 Theme e1 x2
b3 Agent e1 x1
";

pub const SUBJECT_RELATIVE: &str = "1\tcat\tcat\tNOUN\t_\t_\t0\troot\t_\t_
2\tthat\tthat\tPRON\t_\t_\t3\tnsubj\t_\t_
3\tchased\tchase\tVERB\t_\t_\t1\tacl:relcl\t_\t_
4\ta\ta\tDET\t_\t_\t5\tdet\t_\t_
5\tmouse\tmouse\tNOUN\t_\t_\t3\tobj\t_\t_
";

pub const OBJECT_RELATIVE: &str = "1\tcat\tcat\tNOUN\t_\t_\t0\troot\t_\t_
2\ta\ta\tDET\t_\t_\t3\tdet\t_\t_
3\tmouse\tmouse\tNOUN\t_\t_\t4\tnsubj\t_\t_
4\tchased\tchase\tVERB\t_\t_\t1\tacl:relcl\t_\t_
";

pub const SUBJECT_RELATIVE_MEANING: &str =
    r"\x:e. DRS(y:e e:s | cat:n.01(x); chase:v.01(e); Theme(e, y); Agent(e, x); mouse:n.01(y))";
pub const OBJECT_RELATIVE_MEANING: &str =
    r"\x:e. DRS(y:e e:s | cat:n.01(x); chase:v.01(e); Theme(e, x); Agent(e, y); mouse:n.01(y))";

pub fn mini_trees() -> Vec<DepTree> {
    parse_conllu(MINI_CONLLU).unwrap()
}

/// The mini-corpus tree whose text starts with `prefix`.
pub fn tree(prefix: &str) -> DepTree {
    mini_trees()
        .into_iter()
        .find(|t| t.sentence_text().starts_with(prefix))
        .unwrap()
}

pub fn clauses(s: &str) -> ClauseSet {
    ClauseSet::parse(s).unwrap()
}
