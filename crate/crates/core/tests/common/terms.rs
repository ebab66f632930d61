use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use udtc::drs::{Condition, Drs, DrsBox, Sort, Variable};
use udtc::lambda::{Name, Term};
use udtc::semtypes::{parse_type, SemType};

/// Type-directed generator of closed-or-open well-typed terms without tagged
/// entity types.
pub struct Gen {
    rng: ChaCha8Rng,
    next: u32,
    pool: Vec<SemType>,
    pub free: Vec<(Name, SemType)>,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            next: 1,
            pool: ["e", "s", "t", "(et)", "(st)", "(e(st))", "((et)t)", "(tt)"]
                .iter()
                .map(|s| parse_type(s).unwrap())
                .collect(),
            free: Vec::new(),
        }
    }

    fn fresh(&mut self) -> u32 {
        self.next += 1;
        self.next
    }

    fn binder(&mut self, ty: &SemType) -> Name {
        let i = self.fresh();
        if *ty == SemType::e() {
            Name::Ref(Variable::new(Sort::Entity, i))
        } else if *ty == SemType::s() {
            Name::Ref(Variable::new(Sort::Event, i))
        } else {
            Name::Sym(i)
        }
    }

    fn bound_of(&mut self, ty: &SemType, env: &[(Name, SemType)]) -> Option<Term> {
        let hits: Vec<&(Name, SemType)> = env.iter().filter(|(_, t)| t == ty).collect();
        hits.choose(&mut self.rng)
            .map(|(n, t)| Term::var(*n, t.clone()))
    }

    fn ref_of(&mut self, sort: Sort, env: &[(Name, SemType)], extra: &[Variable]) -> Variable {
        let mut cands: Vec<Variable> = env
            .iter()
            .filter_map(|(n, _)| match n {
                Name::Ref(v) if v.sort == sort => Some(*v),
                _ => None,
            })
            .collect();
        cands.extend(extra.iter().filter(|v| v.sort == sort));
        match cands.choose(&mut self.rng) {
            Some(v) if self.rng.gen_bool(0.9) => *v,
            _ => {
                let v = Variable::new(sort, self.fresh());
                let ty = if sort == Sort::Entity {
                    SemType::e()
                } else {
                    SemType::s()
                };
                self.free.push((Name::Ref(v), ty));
                v
            }
        }
    }

    fn drs(&mut self, env: &[(Name, SemType)]) -> Term {
        let mut b = DrsBox::new(Variable::new(Sort::Box, self.fresh()));
        let mut local = Vec::new();
        if self.rng.gen_bool(0.4) {
            let v = Variable::new(Sort::Entity, self.fresh());
            b.referents.insert(v);
            local.push(v);
        }
        for _ in 0..self.rng.gen_range(0..3) {
            let c = if self.rng.gen_bool(0.6) {
                let sort = if self.rng.gen_bool(0.5) {
                    Sort::Entity
                } else {
                    Sort::Event
                };
                Condition::Pred {
                    lemma: ["dog", "cat", "run", "red"]
                        .choose(&mut self.rng)
                        .unwrap()
                        .to_string(),
                    sense: "n.01".into(),
                    arg: self.ref_of(sort, env, &local),
                }
            } else {
                Condition::Role {
                    label: ["Agent", "Theme"]
                        .choose(&mut self.rng)
                        .unwrap()
                        .to_string(),
                    first: self.ref_of(Sort::Event, env, &local),
                    second: self.ref_of(Sort::Entity, env, &local),
                }
            };
            b.conditions.push(c);
        }
        Term::Drs(Drs::from_box(b))
    }

    fn term(&mut self, ty: &SemType, env: &mut Vec<(Name, SemType)>, depth: u32) -> Term {
        if *ty == SemType::e() || *ty == SemType::s() {
            if let Some(v) = self.bound_of(ty, env) {
                return v;
            }
            let n = self.binder(ty);
            self.free.push((n, ty.clone()));
            return Term::var(n, ty.clone());
        }
        if depth > 0 && self.rng.gen_bool(0.25) {
            let arg_ty = self.pool[..4].choose(&mut self.rng).unwrap().clone();
            let fty = SemType::func(arg_ty.clone(), ty.clone());
            let f = self.term(&fty, env, depth - 1);
            let a = self.term(&arg_ty, env, depth - 1);
            return Term::app(f, a);
        }
        if self.rng.gen_bool(0.15) {
            if let Some(v) = self.bound_of(ty, env) {
                return v;
            }
        }
        if let Some((a, b)) = ty.as_fn() {
            let (a, b) = (a.clone(), b.clone());
            let p = self.binder(&a);
            env.push((p, a.clone()));
            let body = self.term(&b, env, depth.saturating_sub(1));
            env.pop();
            return Term::lam(p, a, body);
        }
        if depth == 0 {
            return self.drs(env);
        }
        match self.rng.gen_range(0..5) {
            0 => self.drs(env),
            1 => {
                let l = self.term(ty, env, depth - 1);
                let r = self.term(ty, env, depth - 1);
                Term::conj(l, r)
            }
            2 => Term::neg(self.term(ty, env, depth - 1)),
            3 => {
                let v = Variable::new(Sort::Entity, self.fresh());
                env.push((Name::Ref(v), SemType::e()));
                let body = self.term(ty, env, depth - 1);
                env.pop();
                Term::exists(v, body)
            }
            _ => {
                let v = Variable::new(Sort::Entity, self.fresh());
                env.push((Name::Ref(v), SemType::e()));
                let p = self.term(ty, env, depth - 1);
                let a = self.term(ty, env, depth - 1);
                env.pop();
                Term::presup(v, p, a)
            }
        }
    }

    pub fn any(&mut self) -> (Term, SemType) {
        self.free.clear();
        let ty = self.pool[2..].choose(&mut self.rng).unwrap().clone();
        let depth = self.rng.gen_range(1..=4);
        (self.term(&ty, &mut Vec::new(), depth), ty)
    }
}
