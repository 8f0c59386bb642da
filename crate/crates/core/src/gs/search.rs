//! Bounded, deterministic proof search for GS.
//!
//! Iterative deepening on proof height, where height counts logical rules
//! and contractions along a branch. Exchanges and the weakenings that trim
//! an axiom leaf are free. `\/` and `forall` are invertible and applied
//! eagerly; on the remaining (stable) sequents the search branches over
//! existential instances, with or without keeping a copy, and over the ways
//! of splitting the context of a conjunction, where a member sent to both
//! sides costs one contraction.

use std::collections::{BTreeSet, HashMap};

use super::{GsProof, Rule};
use crate::alpha::{alpha_normalize, substitute, NameSupply};
use crate::signature::Signature;
use crate::syntax::{Formula, Sequent, Term, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContractionPolicy {
    Full,
    /// Contraction only on quantifier-free or existential formulas.
    Restricted,
}

impl ContractionPolicy {
    pub fn allows(self, f: &Formula) -> bool {
        match self {
            ContractionPolicy::Full => true,
            ContractionPolicy::Restricted => f.is_quantifier_free() || f.is_exists(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub depth: usize,
    pub term_depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Proved(GsProof),
    Exhausted,
}

impl SearchOutcome {
    pub fn proof(self) -> Option<GsProof> {
        match self {
            SearchOutcome::Proved(p) => Some(p),
            SearchOutcome::Exhausted => None,
        }
    }

    pub fn is_proved(&self) -> bool {
        matches!(self, SearchOutcome::Proved(_))
    }
}

/// Searches for a GS proof of `s`. If some variable of `s` is both bound
/// and free, the proof concludes an alpha-variant of `s` instead.
pub fn search_gs(s: &Sequent, bounds: SearchBounds, policy: ContractionPolicy) -> SearchOutcome {
    let root = barendregt_variant(s);
    let mut searcher = Searcher::new(&root, bounds.term_depth, policy);
    for depth in 0..=bounds.depth {
        if let Some(p) = searcher.prove(root.0.clone(), depth) {
            return SearchOutcome::Proved(p);
        }
    }
    SearchOutcome::Exhausted
}

fn barendregt_variant(s: &Sequent) -> Sequent {
    let free = s.free_vars();
    if s.bound_vars().is_disjoint(&free) {
        return s.clone();
    }
    Sequent(s.0.iter().map(|f| alpha_normalize(f, &free)).collect())
}

/// A straight-line run of unary rules from a conclusion upwards.
struct Chain {
    steps: Vec<(Sequent, Rule)>,
    cur: Vec<Formula>,
}

impl Chain {
    fn new(seq: Vec<Formula>) -> Self {
        Chain { steps: Vec::new(), cur: seq }
    }

    fn step(&mut self, rule: Rule, premise: Vec<Formula>) {
        let concl = std::mem::replace(&mut self.cur, premise);
        self.steps.push((Sequent(concl), rule));
    }

    /// New member `k` is old member `order[k]`.
    fn reorder(&mut self, order: &[usize]) {
        if order.iter().enumerate().all(|(k, &i)| k == i) {
            return;
        }
        let mut permutation = vec![0; order.len()];
        for (k, &i) in order.iter().enumerate() {
            permutation[i] = k;
        }
        let premise = order.iter().map(|&i| self.cur[i].clone()).collect();
        self.step(Rule::ExchangeR { permutation }, premise);
    }

    fn move_to_end(&mut self, i: usize) {
        let n = self.cur.len();
        let order: Vec<usize> = (0..n).filter(|&k| k != i).chain([i]).collect();
        self.reorder(&order);
    }

    fn contract_last(&mut self) {
        let mut premise = self.cur.clone();
        premise.push(premise.last().expect("nonempty").clone());
        self.step(Rule::ContractR, premise);
    }

    fn finish(self, rule: Rule, children: Vec<GsProof>) -> GsProof {
        let top = GsProof::new(Sequent(self.cur), rule, children);
        self.steps
            .into_iter()
            .rev()
            .fold(top, |p, (concl, rule)| GsProof::new(concl, rule, vec![p]))
    }

    fn finish_with(self, sub: GsProof) -> GsProof {
        self.steps
            .into_iter()
            .rev()
            .fold(sub, |p, (concl, rule)| GsProof::new(concl, rule, vec![p]))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Place {
    Left,
    Right,
    Both,
}

struct Searcher {
    policy: ContractionPolicy,
    term_depth: usize,
    constants: Vec<Term>,
    functions: Vec<(String, usize)>,
    supply: NameSupply,
    /// Canonical sequent key to the largest height known to be insufficient.
    failed: HashMap<String, usize>,
}

impl Searcher {
    fn new(root: &Sequent, term_depth: usize, policy: ContractionPolicy) -> Self {
        let sig = Signature::infer(root);
        let mut constants: Vec<Term> = sig
            .functions()
            .iter()
            .filter(|(_, n)| *n == 0)
            .map(|(f, _)| Term::constant(f))
            .collect();
        constants.sort_by_key(|t| t.to_string());
        let mut functions: Vec<(String, usize)> =
            sig.functions().iter().filter(|(_, n)| *n > 0).cloned().collect();
        functions.sort();
        Searcher {
            policy,
            term_depth,
            constants,
            functions,
            supply: NameSupply::new(root.all_vars()),
            failed: HashMap::new(),
        }
    }

    /// Closed terms and free variables of `seq`, nested up to the term
    /// depth bound; shallower terms first, then by printed form.
    fn universe(&self, seq: &[Formula]) -> Vec<Term> {
        let mut level: Vec<Term> = self.constants.clone();
        let free: BTreeSet<Var> = seq.iter().flat_map(Formula::free_vars).collect();
        level.extend(free.into_iter().map(Term::Var));
        level.sort_by_key(|t| t.to_string());
        let mut all = level;
        let mut fresh_from = 0;
        for _ in 0..self.term_depth {
            let mut next = Vec::new();
            for (f, n) in &self.functions {
                for args in tuples(&all, *n) {
                    if args.iter().any(|&i| i >= fresh_from) {
                        next.push(Term::App(f.clone(), args.iter().map(|&i| all[i].clone()).collect()));
                    }
                }
            }
            next.sort_by_key(|t| t.to_string());
            fresh_from = all.len();
            all.extend(next);
        }
        all
    }

    fn prove(&mut self, seq: Vec<Formula>, depth: usize) -> Option<GsProof> {
        if let Some((i, j)) = complementary_pair(&seq) {
            return Some(close_axiom(seq, i, j));
        }
        if depth == 0 {
            return None;
        }
        let key = canonical_key(&seq);
        if self.failed.get(&key).is_some_and(|&d| d >= depth) {
            return None;
        }
        let result = self.expand(seq, depth);
        if result.is_none() {
            let d = self.failed.entry(key).or_insert(0);
            *d = (*d).max(depth);
        }
        result
    }

    fn expand(&mut self, seq: Vec<Formula>, depth: usize) -> Option<GsProof> {
        if let Some(i) = seq.iter().position(|f| matches!(f, Formula::Or(..))) {
            let mut chain = Chain::new(seq);
            chain.move_to_end(i);
            let mut premise = chain.cur.clone();
            let Some(Formula::Or(a, b)) = premise.pop() else { unreachable!() };
            premise.push(*a);
            premise.push(*b);
            chain.step(Rule::OrR, premise.clone());
            let sub = self.prove(premise, depth - 1)?;
            return Some(chain.finish_with(sub));
        }
        if let Some(i) = seq.iter().position(|f| matches!(f, Formula::Forall(..))) {
            let Formula::Forall(x, body) = &seq[i] else { unreachable!() };
            let z = self.supply.fresh(&Var::from("z"));
            let mut premise = seq.clone();
            premise[i] = substitute(body, x, &Term::Var(z.clone()));
            let mut chain = Chain::new(seq);
            chain.step(Rule::ForallR { eigenvariable: z, index: i }, premise.clone());
            let sub = self.prove(premise, depth - 1)?;
            return Some(chain.finish_with(sub));
        }

        let terms = self.universe(&seq);
        for i in 0..seq.len() {
            let Formula::Exists(y, body) = &seq[i] else { continue };
            for t in &terms {
                let instance = substitute(body, y, t);
                let rule = |index| Rule::ExistsR { witness: t.clone(), index };

                let mut premise = seq.clone();
                premise[i] = instance.clone();
                if let Some(sub) = self.prove(premise.clone(), depth - 1) {
                    let mut chain = Chain::new(seq);
                    chain.step(rule(i), premise);
                    return Some(chain.finish_with(sub));
                }

                if depth >= 2 {
                    let mut chain = Chain::new(seq.clone());
                    chain.move_to_end(i);
                    chain.contract_last();
                    let mut premise = chain.cur.clone();
                    let last = premise.len() - 1;
                    premise[last] = instance.clone();
                    chain.step(rule(last), premise.clone());
                    if let Some(sub) = self.prove(premise, depth - 2) {
                        return Some(chain.finish_with(sub));
                    }
                }
            }
        }

        for i in 0..seq.len() {
            if matches!(seq[i], Formula::And(..)) {
                if let Some(p) = self.try_and(&seq, i, depth) {
                    return Some(p);
                }
            }
        }
        None
    }

    fn try_and(&mut self, seq: &[Formula], i: usize, depth: usize) -> Option<GsProof> {
        let Formula::And(a, b) = &seq[i] else { unreachable!() };
        let options = |f: &Formula| {
            let mut v = vec![Place::Left, Place::Right];
            if self.policy.allows(f) {
                v.push(Place::Both);
            }
            v
        };
        // Per member: where its copies go. The principal's own entry says
        // where extra copies of it go, if any.
        let mut choices: Vec<Vec<Option<Place>>> = Vec::new();
        for (k, f) in seq.iter().enumerate() {
            let opts = options(f).into_iter().map(Some);
            if k == i {
                let extra = if self.policy.allows(f) { opts.collect() } else { vec![] };
                choices.push(std::iter::once(None).chain(extra).collect());
            } else {
                choices.push(opts.collect());
            }
        }
        let cost = |combo: &[Option<Place>]| -> usize {
            1 + combo
                .iter()
                .enumerate()
                .map(|(k, c)| match (k == i, c) {
                    (_, Some(Place::Both)) if k == i => 2,
                    (true, Some(_)) => 1,
                    (false, Some(Place::Both)) => 1,
                    _ => 0,
                })
                .sum::<usize>()
        };
        let mut combos: Vec<Vec<Option<Place>>> = cartesian(&choices)
            .into_iter()
            .filter(|c| cost(c) <= depth)
            .collect();
        combos.sort_by_key(|c| cost(c));

        for combo in combos {
            let remaining = depth - cost(&combo);
            // Tags aligned with the chain: Some(place) for side members,
            // None for the principal.
            let mut chain = Chain::new(seq.to_vec());
            let mut tags: Vec<Option<Place>> = (0..seq.len())
                .map(|k| if k == i { None } else { combo[k] })
                .collect();
            while let Some(k) = tags.iter().position(|t| *t == Some(Place::Both)) {
                chain.move_to_end(k);
                let t = tags.remove(k);
                tags.push(t);
                chain.contract_last();
                let n = tags.len();
                tags[n - 1] = Some(Place::Left);
                tags.push(Some(Place::Right));
            }
            if let Some(place) = combo[i] {
                let k = tags.iter().position(Option::is_none).expect("principal");
                chain.move_to_end(k);
                let t = tags.remove(k);
                tags.push(t);
                let copies = match place {
                    Place::Both => vec![Place::Left, Place::Right],
                    p => vec![p],
                };
                for p in copies {
                    chain.contract_last();
                    let n = tags.len();
                    tags[n - 1] = Some(p);
                    tags.push(None);
                }
            }
            let lefts: Vec<usize> = (0..tags.len()).filter(|&k| tags[k] == Some(Place::Left)).collect();
            let rights: Vec<usize> = (0..tags.len()).filter(|&k| tags[k] == Some(Place::Right)).collect();
            let principal = tags.iter().position(Option::is_none).expect("principal");
            let order: Vec<usize> = lefts.iter().chain(&rights).copied().chain([principal]).collect();
            chain.reorder(&order);

            let mut left = chain.cur[..lefts.len()].to_vec();
            left.push((**a).clone());
            let mut right = chain.cur[lefts.len()..lefts.len() + rights.len()].to_vec();
            right.push((**b).clone());

            let Some(lp) = self.prove(left, remaining) else { continue };
            let Some(rp) = self.prove(right, remaining) else { continue };
            return Some(chain.finish(Rule::AndR, vec![lp, rp]));
        }
        None
    }
}

fn tuples(items: &[Term], n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..items.len()).map(move |i| {
                    let mut v = prefix.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for opts in choices {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<T>| {
                opts.iter().map(move |o| {
                    let mut v = prefix.clone();
                    v.push(o.clone());
                    v
                })
            })
            .collect();
    }
    out
}

fn complementary_pair(seq: &[Formula]) -> Option<(usize, usize)> {
    for (i, f) in seq.iter().enumerate() {
        if let Formula::Atom(a) = f {
            for (j, g) in seq.iter().enumerate() {
                if matches!(g, Formula::NegAtom(b) if a == b) {
                    return Some((i, j));
                }
            }
        }
    }
    None
}

fn close_axiom(seq: Vec<Formula>, i: usize, j: usize) -> GsProof {
    let n = seq.len();
    let mut chain = Chain::new(seq);
    let order: Vec<usize> = [i, j].into_iter().chain((0..n).filter(|&k| k != i && k != j)).collect();
    chain.reorder(&order);
    while chain.cur.len() > 2 {
        let mut premise = chain.cur.clone();
        premise.pop();
        chain.step(Rule::WeakenR, premise);
    }
    chain.finish(Rule::Ax, vec![])
}

fn free_var_occurrences(f: &Formula, out: &mut Vec<Var>) {
    fn term(t: &Term, bound: &[Var], out: &mut Vec<Var>) {
        match t {
            Term::Var(v) => {
                if !bound.contains(v) && !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| term(a, bound, out)),
        }
    }
    fn go(f: &Formula, bound: &mut Vec<Var>, out: &mut Vec<Var>) {
        match f {
            Formula::Atom(a) | Formula::NegAtom(a) => a.args.iter().for_each(|t| term(t, bound, out)),
            Formula::And(a, b) | Formula::Or(a, b) => {
                go(a, bound, out);
                go(b, bound, out);
            }
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                bound.push(x.clone());
                go(b, bound, out);
                bound.pop();
            }
        }
    }
    go(f, &mut Vec::new(), out);
}

/// Key identifying `seq` up to member order and renaming of free variables.
fn canonical_key(seq: &[Formula]) -> String {
    let blank = Var::from("_");
    let mut members: Vec<(String, &Formula)> = seq
        .iter()
        .map(|f| {
            let skeleton = f.free_vars().iter().fold(f.clone(), |g, v| g.rename_everywhere(v, &blank));
            (skeleton.to_string(), f)
        })
        .collect();
    members.sort_by(|x, y| x.0.cmp(&y.0));
    let mut order = Vec::new();
    for (_, f) in &members {
        free_var_occurrences(f, &mut order);
    }
    let names: Vec<Var> = (0..order.len()).map(|k| Var::new(format!("#{k}"))).collect();
    let mut parts: Vec<String> = members
        .iter()
        .map(|(_, f)| {
            let mut g = (*f).clone();
            for (v, n) in order.iter().zip(&names) {
                g = g.rename_everywhere(v, n);
            }
            g.to_string()
        })
        .collect();
    parts.sort();
    parts.join(" , ")
}
