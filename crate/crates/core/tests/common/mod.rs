#![allow(dead_code)]

pub mod corpus;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use herbrand_core::alpha::alpha_eq;
use herbrand_core::position::{PositionPath, Step};
use herbrand_core::syntax::{Atom, Formula, Quantifier, Sequent, Term, Var};
use rand::seq::SliceRandom;
use rand::Rng;

/// Truth-table evaluation, written without reference to the library's
/// propositional module.
pub fn eval_qf(f: &Formula, v: &BTreeMap<String, bool>) -> bool {
    match f {
        Formula::Atom(a) => v[&a.to_string()],
        Formula::NegAtom(a) => !v[&a.to_string()],
        Formula::And(a, b) => eval_qf(a, v) && eval_qf(b, v),
        Formula::Or(a, b) => eval_qf(a, v) || eval_qf(b, v),
        Formula::Forall(..) | Formula::Exists(..) => panic!("quantifier in {f}"),
    }
}

pub fn atom_keys(f: &Formula) -> Vec<String> {
    fn go(f: &Formula, out: &mut BTreeSet<String>) {
        match f {
            Formula::Atom(a) | Formula::NegAtom(a) => {
                out.insert(a.to_string());
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                go(a, out);
                go(b, out);
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => go(b, out),
        }
    }
    let mut out = BTreeSet::new();
    go(f, &mut out);
    out.into_iter().collect()
}

pub fn assignments(keys: &[String]) -> impl Iterator<Item = BTreeMap<String, bool>> + '_ {
    (0u64..1 << keys.len())
        .map(move |bits| keys.iter().enumerate().map(|(i, k)| (k.clone(), bits >> i & 1 == 1)).collect())
}

pub fn brute_tautology(f: &Formula) -> bool {
    let keys = atom_keys(f);
    let all = assignments(&keys).all(|v| eval_qf(f, &v));
    all
}

pub fn prop(name: &str) -> Formula {
    Formula::atom(name, vec![])
}

pub fn literal(rng: &mut impl Rng, atoms: &[Atom]) -> Formula {
    let a = atoms.choose(rng).unwrap().clone();
    if rng.gen_bool(0.5) {
        Formula::Atom(a)
    } else {
        Formula::NegAtom(a)
    }
}

/// Random quantifier-free NNF formula with at most `size` literals.
pub fn random_qf(rng: &mut impl Rng, atoms: &[Atom], size: usize) -> Formula {
    if size <= 1 {
        return literal(rng, atoms);
    }
    let left = rng.gen_range(1..size);
    let a = random_qf(rng, atoms, left);
    let b = random_qf(rng, atoms, size - left);
    if rng.gen_bool(0.5) {
        Formula::and(a, b)
    } else {
        Formula::or(a, b)
    }
}

pub fn prop_atoms(n: usize) -> Vec<Atom> {
    (0..n).map(|i| Atom::new(&format!("p{i}"), vec![])).collect()
}

/// Renames every binder of `f` to a name from `fresh`, keeping free
/// variables.
pub fn rename_bound(f: &Formula, fresh: &mut impl FnMut() -> Var) -> Formula {
    fn go(f: &Formula, fresh: &mut dyn FnMut() -> Var, env: &mut Vec<(Var, Var)>) -> Formula {
        let term = |t: &Term, env: &Vec<(Var, Var)>| rename_term(t, env);
        match f {
            Formula::Atom(a) => Formula::Atom(Atom { rel: a.rel.clone(), args: a.args.iter().map(|t| term(t, env)).collect() }),
            Formula::NegAtom(a) => {
                Formula::NegAtom(Atom { rel: a.rel.clone(), args: a.args.iter().map(|t| term(t, env)).collect() })
            }
            Formula::And(a, b) => Formula::and(go(a, fresh, env), go(b, fresh, env)),
            Formula::Or(a, b) => Formula::or(go(a, fresh, env), go(b, fresh, env)),
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                let y = fresh();
                env.push((x.clone(), y.clone()));
                let body = go(b, fresh, env);
                env.pop();
                let q = if matches!(f, Formula::Forall(..)) { Quantifier::Forall } else { Quantifier::Exists };
                Formula::quantified(q, y, body)
            }
        }
    }
    fn rename_term(t: &Term, env: &[(Var, Var)]) -> Term {
        match t {
            Term::Var(v) => Term::Var(env.iter().rev().find(|(x, _)| x == v).map(|(_, y)| y.clone()).unwrap_or(v.clone())),
            Term::App(g, args) => Term::App(g.clone(), args.iter().map(|a| rename_term(a, env)).collect()),
        }
    }
    go(f, fresh, &mut Vec::new())
}

pub fn subformula<'a>(f: &'a Formula, steps: &[Step]) -> &'a Formula {
    steps.iter().fold(f, |g, s| match (g, s) {
        (Formula::And(a, _) | Formula::Or(a, _), Step::Left) => a,
        (Formula::And(_, b) | Formula::Or(_, b), Step::Right) => b,
        (Formula::Forall(_, b) | Formula::Exists(_, b), Step::Under) => b,
        _ => panic!("bad step {s:?} at {g}"),
    })
}

pub fn replace(f: &Formula, steps: &[Step], new: Formula) -> Formula {
    let Some((s, rest)) = steps.split_first() else { return new };
    match (f, s) {
        (Formula::And(a, b), Step::Left) => Formula::and(replace(a, rest, new), (**b).clone()),
        (Formula::And(a, b), Step::Right) => Formula::and((**a).clone(), replace(b, rest, new)),
        (Formula::Or(a, b), Step::Left) => Formula::or(replace(a, rest, new), (**b).clone()),
        (Formula::Or(a, b), Step::Right) => Formula::or((**a).clone(), replace(b, rest, new)),
        (Formula::Forall(x, b), Step::Under) => Formula::Forall(x.clone(), Box::new(replace(b, rest, new))),
        (Formula::Exists(x, b), Step::Under) => Formula::Exists(x.clone(), Box::new(replace(b, rest, new))),
        _ => panic!("bad step {s:?} at {f}"),
    }
}

pub fn replace_in_sequent(s: &Sequent, member: usize, steps: &[Step], new: Formula) -> Sequent {
    let mut out = s.clone();
    out.0[member] = replace(&s.0[member], steps, new);
    out
}

/// Formula-level positions of `f` in pre-order.
pub fn positions(f: &Formula) -> Vec<Vec<Step>> {
    fn go(f: &Formula, at: &mut Vec<Step>, out: &mut Vec<Vec<Step>>) {
        out.push(at.clone());
        let mut visit = |s: Step, g: &Formula, at: &mut Vec<Step>| {
            at.push(s);
            go(g, at, out);
            at.pop();
        };
        match f {
            Formula::Atom(_) | Formula::NegAtom(_) => {}
            Formula::And(a, b) | Formula::Or(a, b) => {
                visit(Step::Left, a, at);
                visit(Step::Right, b, at);
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => visit(Step::Under, b, at),
        }
    }
    let mut out = Vec::new();
    go(f, &mut Vec::new(), &mut out);
    out
}

/// Where the occurrence at `steps` of a sequent member lands in an
/// expansion of that member: a duplicated existential on the way doubles the
/// images.
pub fn images(base: &Formula, expansion: &Formula, steps: &[Step]) -> Vec<Vec<Step>> {
    fn go(b: &Formula, e: &Formula, steps: &[Step], at: &mut Vec<Step>, out: &mut Vec<Vec<Step>>) {
        if let (Formula::Exists(..), Formula::Or(l, r)) = (b, e) {
            for (s, side) in [(Step::Left, l), (Step::Right, r)] {
                at.push(s);
                go(b, side, steps, at, out);
                at.pop();
            }
            return;
        }
        let Some((s, rest)) = steps.split_first() else {
            out.push(at.clone());
            return;
        };
        at.push(*s);
        go(subformula(b, &[*s]), subformula(e, &[*s]), rest, at, out);
        at.pop();
    }
    let mut out = Vec::new();
    go(base, expansion, steps, &mut Vec::new(), &mut out);
    out
}

pub fn path(member: usize, steps: &[Step]) -> PositionPath {
    let mut p = vec![Step::Member(member)];
    p.extend_from_slice(steps);
    PositionPath(p)
}

pub fn root_kind(f: &Formula) -> &'static str {
    match f {
        Formula::Atom(_) | Formula::NegAtom(_) => "atom",
        Formula::And(..) => "and",
        Formula::Or(..) => "or",
        Formula::Forall(..) => "forall",
        Formula::Exists(..) => "exists",
    }
}

/// Every formula obtained from `f` by undoing one duplication: an
/// occurrence `B \/ B'` with `B` existential and `B'` an alpha-variant of `B`
/// becomes `B`.
pub fn undo_one(f: &Formula) -> Vec<Formula> {
    let mut out = Vec::new();
    for at in positions(f) {
        if let Formula::Or(l, r) = subformula(f, &at) {
            if l.is_exists() && alpha_eq(l, r) {
                out.push(replace(f, &at, (**l).clone()));
            }
        }
    }
    out
}

/// Exhaustive closure of the duplication step, run backwards from
/// `candidate`. Each backward step shrinks the formula, so the closure is
/// finite.
pub fn expansion_oracle(original: &Formula, candidate: &Formula) -> bool {
    let mut seen: HashSet<Formula> = HashSet::new();
    let mut stack = vec![candidate.clone()];
    while let Some(g) = stack.pop() {
        if g.size() <= original.size() {
            if alpha_eq(&g, original) {
                return true;
            }
            continue;
        }
        for h in undo_one(&g) {
            if seen.insert(h.clone()) {
                stack.push(h);
            }
        }
    }
    false
}

/// One forward duplication step at every existential occurrence, with the
/// copy's binders renamed.
pub fn duplicate_once(f: &Formula, fresh: &mut impl FnMut() -> Var) -> Vec<Formula> {
    positions(f)
        .into_iter()
        .filter(|at| subformula(f, at).is_exists())
        .map(|at| {
            let b = subformula(f, &at).clone();
            let copy = rename_bound(&b, fresh);
            replace(f, &at, Formula::or(b, copy))
        })
        .collect()
}

/// Duplicates the subformula at every position, whatever its shape.
pub fn duplicate_anywhere(f: &Formula) -> Vec<Formula> {
    positions(f)
        .into_iter()
        .map(|at| {
            let b = subformula(f, &at).clone();
            replace(f, &at, Formula::or(b.clone(), b))
        })
        .collect()
}

/// Swaps the quantifier at every quantifier position.
pub fn flip_quantifiers(f: &Formula) -> Vec<Formula> {
    positions(f)
        .into_iter()
        .filter_map(|at| match subformula(f, &at) {
            Formula::Forall(x, b) => Some(replace(f, &at, Formula::Exists(x.clone(), b.clone()))),
            Formula::Exists(x, b) => Some(replace(f, &at, Formula::Forall(x.clone(), b.clone()))),
            _ => None,
        })
        .collect()
}

/// All formulas with exactly `n` nodes over the given leaves, binder
/// variables and connectives.
pub fn formulas_of_size(n: usize, leaves: &[Formula], vars: &[&str], memo: &mut Vec<Vec<Formula>>) -> Vec<Formula> {
    while memo.len() <= n {
        let k = memo.len();
        let mut out = Vec::new();
        if k == 1 {
            out.extend(leaves.iter().cloned());
        }
        if k >= 2 {
            for body in &memo[k - 1] {
                for v in vars {
                    out.push(Formula::forall(v, body.clone()));
                    out.push(Formula::exists(v, body.clone()));
                }
            }
            for i in 1..k - 1 {
                for a in &memo[i] {
                    for b in &memo[k - 1 - i] {
                        out.push(Formula::and(a.clone(), b.clone()));
                        out.push(Formula::or(a.clone(), b.clone()));
                    }
                }
            }
        }
        memo.push(out);
    }
    memo[n].clone()
}

pub fn var_supply(prefix: &str) -> impl FnMut() -> Var {
    let prefix = prefix.to_string();
    let mut n = 0;
    move || {
        n += 1;
        Var::new(format!("{prefix}{n}"))
    }
}

pub fn constant(name: &str) -> Term {
    Term::constant(name)
}
