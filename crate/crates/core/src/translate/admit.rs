use std::collections::BTreeSet;

use super::{certificate_vars, rebuild, TranslateError};
use crate::alpha::{alpha_normalize_with, NameSupply};
use crate::herbrand::HerbrandProof;
use crate::prenex::{default_order, Binder};
use crate::syntax::{Atom, Formula, Quantifier, Sequent, Term, Var};

fn supply_for<'a>(hs: impl IntoIterator<Item = &'a HerbrandProof>) -> NameSupply {
    let mut supply = NameSupply::default();
    for h in hs {
        supply.reserve_all(&certificate_vars(h).collect::<Vec<_>>());
    }
    supply
}

/// `⊢ Γ` to `⊢ Γ, A`: the new member's quantifiers go in front, and every
/// existential among them is witnessed by `constant`.
pub fn admit_weaken(h: &HerbrandProof, a: &Formula, constant: &Term) -> HerbrandProof {
    let mut supply = supply_for([h]);
    weaken_with(h, a, constant, &mut supply)
}

pub(crate) fn weaken_with(h: &HerbrandProof, a: &Formula, constant: &Term, supply: &mut NameSupply) -> HerbrandProof {
    let fresh = alpha_normalize_with(a, supply);
    let added = default_order(&Sequent(vec![fresh.clone()]));
    let witness = added
        .iter()
        .filter(|b| b.q == Quantifier::Exists)
        .map(|_| constant.clone())
        .chain(h.witness.0.iter().cloned())
        .collect();
    let prefix = added.into_iter().chain(h.prenex.prefix.iter().cloned()).collect();
    let mut members = h.expansion.0.clone();
    members.push(fresh);
    rebuild(Sequent(members), prefix, witness)
}

/// Renames the binders of `h` that occur in `clash`.
fn rename_binders(h: &HerbrandProof, clash: &BTreeSet<Var>, supply: &mut NameSupply) -> HerbrandProof {
    let mut members = h.expansion.0.clone();
    let mut prefix = h.prenex.prefix.clone();
    let mut witness = h.witness.0.clone();
    for b in prefix.iter_mut() {
        if clash.contains(&b.var) {
            let new = supply.fresh(&b.var);
            for m in members.iter_mut() {
                *m = m.rename_everywhere(&b.var, &new);
            }
            for t in witness.iter_mut() {
                *t = t.substitute(&b.var, &Term::Var(new.clone()));
            }
            b.var = new;
        }
    }
    rebuild(Sequent(members), prefix, witness)
}

/// `⊢ Γ, A` and `⊢ Γ', B` to `⊢ Γ, Γ', A /\ B`.
pub fn admit_and(h1: &HerbrandProof, h2: &HerbrandProof) -> HerbrandProof {
    let mut supply = supply_for([h1, h2]);
    and_with(h1, h2, &mut supply)
}

pub(crate) fn and_with(h1: &HerbrandProof, h2: &HerbrandProof, supply: &mut NameSupply) -> HerbrandProof {
    let bound = |h: &HerbrandProof| -> BTreeSet<Var> { h.prenex.prefix.iter().map(|b| b.var.clone()).collect() };
    let names1: BTreeSet<Var> = certificate_vars(h1).collect();
    let h2 = rename_binders(h2, &names1, supply);
    let names2: BTreeSet<Var> = h2.expansion.free_vars().into_iter().chain(bound(&h2)).collect();
    let h1 = rename_binders(h1, &names2, supply);

    let mut left = h1.expansion.0.clone();
    let mut right = h2.expansion.0.clone();
    let a = left.pop().expect("nonempty premise");
    let b = right.pop().expect("nonempty premise");
    let members: Vec<Formula> = left.into_iter().chain(right).chain([Formula::and(a, b)]).collect();
    let prefix = h1.prenex.prefix.iter().chain(&h2.prenex.prefix).cloned().collect();
    let witness = h1.witness.0.iter().chain(&h2.witness.0).cloned().collect();
    rebuild(Sequent(members), prefix, witness)
}

/// `⊢ Γ, A(z)` to `⊢ Γ, forall x. A` at member `index`.
pub fn admit_forall(h: &HerbrandProof, index: usize, z: &Var) -> Result<HerbrandProof, TranslateError> {
    let mut members = h.expansion.0.clone();
    let Some(m) = members.get_mut(index) else {
        return Err(TranslateError::ShapeMismatch(format!("no member {index}")));
    };
    *m = Formula::Forall(z.clone(), Box::new(m.clone()));
    let prefix = std::iter::once(Binder::new(Quantifier::Forall, z.clone()))
        .chain(h.prenex.prefix.iter().cloned())
        .collect();
    Ok(rebuild(Sequent(members), prefix, h.witness.0.clone()))
}

/// `⊢ Γ, A(t)` to `⊢ Γ, exists y. A` at member `index`, where `original`
/// is `exists y. A`.
pub fn admit_exists(
    h: &HerbrandProof,
    index: usize,
    original: &Formula,
    t: &Term,
    constant: &Term,
) -> Result<HerbrandProof, TranslateError> {
    let mut supply = supply_for([h]);
    supply.reserve_all(&original.free_vars());
    supply.reserve_all(&t.vars());
    exists_with(h, index, original, t, constant, &mut supply)
}

pub(crate) fn exists_with(
    h: &HerbrandProof,
    index: usize,
    original: &Formula,
    t: &Term,
    constant: &Term,
    supply: &mut NameSupply,
) -> Result<HerbrandProof, TranslateError> {
    let Formula::Exists(y, body) = original else {
        return Err(TranslateError::ShapeMismatch(format!("{original} is not existential")));
    };
    let Some(member) = h.expansion.0.get(index) else {
        return Err(TranslateError::ShapeMismatch(format!("no member {index}")));
    };
    let fresh = supply.prefer(y);
    let abstracted = Abstraction { y, t, fresh: &fresh }
        .formula(body, member)
        .ok_or_else(|| TranslateError::AbstractionMismatch(original.to_string()))?;
    let mut members = h.expansion.0.clone();
    members[index] = Formula::Exists(fresh.clone(), Box::new(abstracted));
    let prefix: Vec<Binder> = std::iter::once(Binder::new(Quantifier::Exists, fresh))
        .chain(h.prenex.prefix.iter().cloned())
        .collect();
    let witness: Vec<Term> = std::iter::once(t.clone()).chain(h.witness.0.iter().cloned()).collect();
    let expansion = Sequent(members);
    let witness = ground_strays(witness, &prefix, &expansion, constant);
    Ok(rebuild(expansion, prefix, witness))
}

/// Replaces witness variables that are neither bound by the prefix nor free
/// in the expansion; they name nothing any more.
fn ground_strays(witness: Vec<Term>, prefix: &[Binder], expansion: &Sequent, constant: &Term) -> Vec<Term> {
    let free = expansion.free_vars();
    witness
        .into_iter()
        .map(|t| {
            t.vars()
                .into_iter()
                .filter(|v| !free.contains(v) && !prefix.iter().any(|b| &b.var == v))
                .fold(t, |t, v| t.substitute(&v, constant))
        })
        .collect()
}

/// Walks `A` and its instance expansion in lockstep, putting `fresh` back
/// wherever `A` has `y`.
struct Abstraction<'a> {
    y: &'a Var,
    t: &'a Term,
    fresh: &'a Var,
}

impl Abstraction<'_> {
    fn term(&self, orig: &Term, cand: &Term) -> Option<Term> {
        match (orig, cand) {
            (Term::Var(v), _) if v == self.y => (cand == self.t).then(|| Term::Var(self.fresh.clone())),
            (Term::Var(_), _) => Some(cand.clone()),
            (Term::App(f, xs), Term::App(g, ys)) if f == g && xs.len() == ys.len() => {
                let args = xs.iter().zip(ys).map(|(x, y)| self.term(x, y)).collect::<Option<_>>()?;
                Some(Term::App(g.clone(), args))
            }
            _ => None,
        }
    }

    fn atom(&self, a: &Atom, b: &Atom) -> Option<Atom> {
        if a.rel != b.rel || a.args.len() != b.args.len() {
            return None;
        }
        let args = a.args.iter().zip(&b.args).map(|(x, y)| self.term(x, y)).collect::<Option<_>>()?;
        Some(Atom { rel: b.rel.clone(), args })
    }

    fn formula(&self, orig: &Formula, cand: &Formula) -> Option<Formula> {
        Some(match (orig, cand) {
            (Formula::Exists(..), Formula::Or(c1, c2)) => {
                Formula::or(self.formula(orig, c1)?, self.formula(orig, c2)?)
            }
            (Formula::Atom(a), Formula::Atom(b)) => Formula::Atom(self.atom(a, b)?),
            (Formula::NegAtom(a), Formula::NegAtom(b)) => Formula::NegAtom(self.atom(a, b)?),
            (Formula::And(a1, b1), Formula::And(a2, b2)) => {
                Formula::and(self.formula(a1, a2)?, self.formula(b1, b2)?)
            }
            (Formula::Or(a1, b1), Formula::Or(a2, b2)) => Formula::or(self.formula(a1, a2)?, self.formula(b1, b2)?),
            (Formula::Forall(x, b1), Formula::Forall(x2, b2)) | (Formula::Exists(x, b1), Formula::Exists(x2, b2)) => {
                // An inner binder for y shadows it: nothing below is abstracted.
                let body = if x == self.y { (**b2).clone() } else { self.formula(b1, b2)? };
                match cand {
                    Formula::Forall(..) => Formula::Forall(x2.clone(), Box::new(body)),
                    _ => Formula::Exists(x2.clone(), Box::new(body)),
                }
            }
            _ => return None,
        })
    }
}
