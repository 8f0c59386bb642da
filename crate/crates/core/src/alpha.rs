//! Bound-variable handling: fresh names, alpha-equivalence, alpha-normal
//! forms and capture-avoiding substitution.

use std::collections::{BTreeSet, HashSet};

use crate::syntax::{Atom, Formula, Term, Var};

/// Returns `base` with the smallest positive numeric suffix for which
/// `taken` is false. Trailing digits on `base` are replaced, so `x1` yields
/// `x2`, `x3`, ... rather than `x11`.
pub fn fresh_var(base: &Var, taken: impl Fn(&Var) -> bool) -> Var {
    let stem = base.0.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1..)
        .map(|n| Var(format!("{stem}{n}")))
        .find(|v| !taken(v))
        .expect("unbounded suffix range")
}

/// A set of names already in use, handing out fresh ones.
#[derive(Clone, Debug, Default)]
pub struct NameSupply {
    used: HashSet<Var>,
}

impl NameSupply {
    pub fn new(used: impl IntoIterator<Item = Var>) -> Self {
        NameSupply { used: used.into_iter().collect() }
    }

    pub fn reserve(&mut self, v: &Var) {
        self.used.insert(v.clone());
    }

    pub fn reserve_all<'a>(&mut self, vs: impl IntoIterator<Item = &'a Var>) {
        for v in vs {
            self.used.insert(v.clone());
        }
    }

    pub fn is_used(&self, v: &Var) -> bool {
        self.used.contains(v)
    }

    /// A suffixed variant of `base` that has not been handed out or reserved.
    pub fn fresh(&mut self, base: &Var) -> Var {
        let v = fresh_var(base, |c| self.used.contains(c));
        self.used.insert(v.clone());
        v
    }

    /// `base` itself when unused, otherwise a fresh variant.
    pub fn prefer(&mut self, base: &Var) -> Var {
        if self.used.insert(base.clone()) {
            base.clone()
        } else {
            self.fresh(base)
        }
    }
}

/// Pairs of binders currently in scope: `(left name, right name)`.
type BinderEnv = Vec<(Var, Var)>;

fn vars_correspond(env: &BinderEnv, a: &Var, b: &Var) -> bool {
    let left = env.iter().rposition(|(l, _)| l == a);
    let right = env.iter().rposition(|(_, r)| r == b);
    match (left, right) {
        (None, None) => a == b,
        (Some(i), Some(j)) => i == j,
        _ => false,
    }
}

pub(crate) fn terms_correspond(env: &BinderEnv, s: &Term, t: &Term) -> bool {
    match (s, t) {
        (Term::Var(a), Term::Var(b)) => vars_correspond(env, a, b),
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g
                && xs.len() == ys.len()
                && xs.iter().zip(ys).all(|(x, y)| terms_correspond(env, x, y))
        }
        _ => false,
    }
}

fn atoms_correspond(env: &BinderEnv, a: &Atom, b: &Atom) -> bool {
    a.rel == b.rel
        && a.args.len() == b.args.len()
        && a.args.iter().zip(&b.args).all(|(s, t)| terms_correspond(env, s, t))
}

/// Structural comparison of `orig` and `cand` modulo renaming of bound
/// variables. With `allow_duplication`, `cand` may additionally replace any
/// existential subformula occurrence of `orig` by a disjunction of two
/// candidates each related to it.
pub(crate) fn relate(orig: &Formula, cand: &Formula, allow_duplication: bool, env: &mut BinderEnv) -> bool {
    use Formula::*;
    match (orig, cand) {
        (Exists(..), Or(l, r)) if allow_duplication => {
            relate(orig, l, true, env) && relate(orig, r, true, env)
        }
        (Atom(a), Atom(b)) | (NegAtom(a), NegAtom(b)) => atoms_correspond(env, a, b),
        (And(a1, b1), And(a2, b2)) | (Or(a1, b1), Or(a2, b2)) => {
            relate(a1, a2, allow_duplication, env) && relate(b1, b2, allow_duplication, env)
        }
        (Forall(x, a), Forall(y, b)) | (Exists(x, a), Exists(y, b)) => {
            env.push((x.clone(), y.clone()));
            let ok = relate(a, b, allow_duplication, env);
            env.pop();
            ok
        }
        _ => false,
    }
}

/// True iff `f` and `g` differ only in the names of bound variables.
pub fn alpha_eq(f: &Formula, g: &Formula) -> bool {
    relate(f, g, false, &mut Vec::new())
}

pub fn alpha_eq_seq(a: &[Formula], b: &[Formula]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(f, g)| alpha_eq(f, g))
}

/// Alpha-normal (and Barendregt) check: binders pairwise distinct and
/// disjoint from the free variables.
pub fn is_alpha_normal(f: &Formula) -> bool {
    let free = f.free_vars();
    let mut seen = BTreeSet::new();
    let mut ok = true;
    f.for_each_binder(&mut |_, x| {
        if free.contains(x) || !seen.insert(x.clone()) {
            ok = false;
        }
    });
    ok
}

/// Renames binders so that every quantifier binds a distinct variable that
/// is neither free in `f` nor in `reserved`. Binders that already satisfy
/// this keep their names.
pub fn alpha_normalize(f: &Formula, reserved: &BTreeSet<Var>) -> Formula {
    let mut supply = NameSupply::new(reserved.iter().cloned().chain(f.free_vars()));
    alpha_normalize_with(f, &mut supply)
}

/// As [`alpha_normalize`], drawing names from (and recording them in) a
/// shared supply.
pub fn alpha_normalize_with(f: &Formula, supply: &mut NameSupply) -> Formula {
    fn go(f: &Formula, supply: &mut NameSupply, env: &mut Vec<(Var, Var)>) -> Formula {
        let rename_term = |t: &Term, env: &Vec<(Var, Var)>| rename_bound_term(t, env);
        match f {
            Formula::Atom(a) => Formula::Atom(Atom {
                rel: a.rel.clone(),
                args: a.args.iter().map(|t| rename_term(t, env)).collect(),
            }),
            Formula::NegAtom(a) => Formula::NegAtom(Atom {
                rel: a.rel.clone(),
                args: a.args.iter().map(|t| rename_term(t, env)).collect(),
            }),
            Formula::And(a, b) => Formula::and(go(a, supply, env), go(b, supply, env)),
            Formula::Or(a, b) => Formula::or(go(a, supply, env), go(b, supply, env)),
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                let y = supply.prefer(x);
                env.push((x.clone(), y.clone()));
                let body = go(b, supply, env);
                env.pop();
                if matches!(f, Formula::Forall(..)) {
                    Formula::Forall(y, Box::new(body))
                } else {
                    Formula::Exists(y, Box::new(body))
                }
            }
        }
    }
    go(f, supply, &mut Vec::new())
}

fn rename_bound_term(t: &Term, env: &[(Var, Var)]) -> Term {
    match t {
        Term::Var(v) => match env.iter().rev().find(|(old, _)| old == v) {
            Some((_, new)) => Term::Var(new.clone()),
            None => t.clone(),
        },
        Term::App(g, args) => {
            Term::App(g.clone(), args.iter().map(|a| rename_bound_term(a, env)).collect())
        }
    }
}

/// Capture-avoiding substitution of `t` for the free occurrences of `x`.
pub fn substitute(f: &Formula, x: &Var, t: &Term) -> Formula {
    match f {
        Formula::Atom(a) => Formula::Atom(a.substitute(x, t)),
        Formula::NegAtom(a) => Formula::NegAtom(a.substitute(x, t)),
        Formula::And(a, b) => Formula::and(substitute(a, x, t), substitute(b, x, t)),
        Formula::Or(a, b) => Formula::or(substitute(a, x, t), substitute(b, x, t)),
        Formula::Forall(y, body) | Formula::Exists(y, body) => {
            let rebuild = |v: Var, b: Formula| {
                if matches!(f, Formula::Forall(..)) {
                    Formula::Forall(v, Box::new(b))
                } else {
                    Formula::Exists(v, Box::new(b))
                }
            };
            if y == x || !body.free_vars().contains(x) {
                return f.clone();
            }
            if t.contains_var(y) {
                let mut avoid = t.vars();
                body.collect_all_vars(&mut avoid);
                avoid.insert(x.clone());
                let y2 = fresh_var(y, |v| avoid.contains(v));
                let renamed = substitute(body, y, &Term::Var(y2.clone()));
                rebuild(y2, substitute(&renamed, x, t))
            } else {
                rebuild(y.clone(), substitute(body, x, t))
            }
        }
    }
}
