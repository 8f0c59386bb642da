use std::mem::discriminant;

use super::{rebuild, TranslateError};
use crate::alpha::substitute;
use crate::herbrand::HerbrandProof;
use crate::position::{formula_at, PositionPath, Step};
use crate::syntax::{Formula, Sequent, Term};

/// Where one subformula occurrence of a sequent ends up in an expansion of
/// that sequent. Duplicated existentials above the occurrence give it
/// several images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleImageSet {
    pub base: PositionPath,
    pub images: Vec<PositionPath>,
}

pub fn hole_images(base: &Sequent, expansion: &Sequent, path: &PositionPath) -> Result<HoleImageSet, TranslateError> {
    let mismatch = |why: &str| TranslateError::PathMismatch(format!("{path}: {why}"));
    let Some((Step::Member(i), steps)) = path.steps().split_first() else {
        return Err(mismatch("no member step"));
    };
    let (Some(b), Some(e)) = (base.0.get(*i), expansion.0.get(*i)) else {
        return Err(mismatch("member out of range"));
    };

    fn go(b: &Formula, e: &Formula, steps: &[Step], at: PositionPath, out: &mut Vec<PositionPath>) -> bool {
        let Some((&step, rest)) = steps.split_first() else {
            out.push(at);
            return true;
        };
        if let (Formula::Exists(..), Formula::Or(e1, e2)) = (b, e) {
            return go(b, e1, steps, at.child(Step::Left), out) && go(b, e2, steps, at.child(Step::Right), out);
        }
        if discriminant(b) != discriminant(e) {
            return false;
        }
        match (formula_at(b, &[step]), formula_at(e, &[step])) {
            (Some(b2), Some(e2)) => go(b2, e2, rest, at.child(step), out),
            _ => false,
        }
    }

    let mut images = Vec::new();
    if !go(b, e, steps, PositionPath::member(*i), &mut images) {
        return Err(mismatch("expansion does not follow the sequent"));
    }
    Ok(HoleImageSet { base: path.clone(), images })
}

/// `(A1 /\ B1) \/ (A2 /\ B2)` to `(A1 \/ A2) /\ (B1 \/ B2)`.
fn medial(f: &Formula) -> Option<Formula> {
    let Formula::Or(l, r) = f else { return None };
    let (Formula::And(a1, b1), Formula::And(a2, b2)) = (&**l, &**r) else { return None };
    Some(Formula::and(
        Formula::or((**a1).clone(), (**a2).clone()),
        Formula::or((**b1).clone(), (**b2).clone()),
    ))
}

/// `(B1 \/ C1) \/ (B2 \/ C2)` to `(B1 \/ B2) \/ (C1 \/ C2)`.
fn interleave(f: &Formula) -> Option<Formula> {
    let Formula::Or(l, r) = f else { return None };
    let (Formula::Or(b1, c1), Formula::Or(b2, c2)) = (&**l, &**r) else { return None };
    Some(Formula::or(
        Formula::or((**b1).clone(), (**b2).clone()),
        Formula::or((**c1).clone(), (**c2).clone()),
    ))
}

/// `⊢ Γ, A1 /\ B1, A2 /\ B2` to `⊢ Γ, (A1 \/ A2) /\ (B1 \/ B2)`.
pub fn medial_regroup(h: &HerbrandProof) -> Result<HerbrandProof, TranslateError> {
    let mut members = h.expansion.0.clone();
    let (Some(b), Some(a)) = (members.pop(), members.pop()) else {
        return Err(TranslateError::ShapeMismatch("medial needs two members".into()));
    };
    let regrouped = medial(&Formula::or(a, b))
        .ok_or_else(|| TranslateError::ShapeMismatch("last two members are not conjunctions".into()))?;
    members.push(regrouped);
    Ok(rebuild(Sequent(members), h.prenex.prefix.clone(), h.witness.0.clone()))
}

fn rewrite_images(
    expansion: &Sequent,
    images: &[PositionPath],
    f: impl Fn(&Formula) -> Option<Formula>,
) -> Result<Sequent, TranslateError> {
    let mut out = expansion.clone();
    for p in images {
        let old = out.at(p).map_err(|e| TranslateError::PathMismatch(e.to_string()))?;
        let new = f(old).ok_or_else(|| TranslateError::ShapeMismatch(format!("image {p} is {old}")))?;
        out = out.replace_at(p, new).map_err(|e| TranslateError::PathMismatch(e.to_string()))?;
    }
    Ok(out)
}

fn replace_base(base: &Sequent, path: &PositionPath, new: Formula) -> Result<Sequent, TranslateError> {
    base.replace_at(path, new).map_err(|e| TranslateError::PathMismatch(e.to_string()))
}

/// Contracts `A \/ A` at `path` of `base` to `A`, given a certificate `h`
/// of `base`. Returns the contracted sequent alongside its certificate.
pub fn deep_contract(
    base: &Sequent,
    h: &HerbrandProof,
    path: &PositionPath,
) -> Result<(Sequent, HerbrandProof), TranslateError> {
    let hole = base.at(path).map_err(|e| TranslateError::PathMismatch(e.to_string()))?;
    let Formula::Or(a1, a2) = hole else {
        return Err(TranslateError::PathMismatch(format!("{path} is not a disjunction")));
    };
    if discriminant(&**a1) != discriminant(&**a2) {
        return Err(TranslateError::PathMismatch(format!("{path} joins different shapes")));
    }
    let images = hole_images(base, &h.expansion, path)?.images;
    let prefix = &h.prenex.prefix;
    let witness = &h.witness.0;

    match (&**a1, &**a2) {
        (Formula::Atom(_) | Formula::NegAtom(_), _) => {
            let expansion = rewrite_images(&h.expansion, &images, |f| match f {
                Formula::Or(l, r) if l == r => Some((**l).clone()),
                _ => None,
            })?;
            let base = replace_base(base, path, (**a1).clone())?;
            Ok((base, rebuild(expansion, prefix.clone(), witness.clone())))
        }
        (Formula::Exists(..), _) => Ok((replace_base(base, path, (**a1).clone())?, h.clone())),
        (Formula::Or(b1, c1), Formula::Or(b2, c2)) => {
            let expansion = rewrite_images(&h.expansion, &images, interleave)?;
            let regrouped = Formula::or(
                Formula::or((**b1).clone(), (**b2).clone()),
                Formula::or((**c1).clone(), (**c2).clone()),
            );
            let base = replace_base(base, path, regrouped)?;
            let h = rebuild(expansion, prefix.clone(), witness.clone());
            let (base, h) = deep_contract(&base, &h, &path.child(Step::Left))?;
            deep_contract(&base, &h, &path.child(Step::Right))
        }
        (Formula::And(b1, c1), Formula::And(b2, c2)) => {
            let expansion = rewrite_images(&h.expansion, &images, medial)?;
            let regrouped = Formula::and(
                Formula::or((**b1).clone(), (**b2).clone()),
                Formula::or((**c1).clone(), (**c2).clone()),
            );
            let base = replace_base(base, path, regrouped)?;
            let h = rebuild(expansion, prefix.clone(), witness.clone());
            let (base, h) = deep_contract(&base, &h, &path.child(Step::Left))?;
            deep_contract(&base, &h, &path.child(Step::Right))
        }
        (Formula::Forall(x, b1), Formula::Forall(x2, b2)) => {
            let mut prefix = prefix.clone();
            let mut witness = witness.clone();
            let mut expansion = h.expansion.clone();
            for p in &images {
                let img = expansion.at(p).map_err(|e| TranslateError::PathMismatch(e.to_string()))?;
                let Formula::Or(l, r) = img else {
                    return Err(TranslateError::ShapeMismatch(format!("image {p} is {img}")));
                };
                let (Formula::Forall(xi, bi1), Formula::Forall(yi, bi2)) = (&**l, &**r) else {
                    return Err(TranslateError::ShapeMismatch(format!("image {p} is {img}")));
                };
                let position = |v| prefix.iter().position(|b| &b.var == v);
                let (Some(px), Some(py)) = (position(xi), position(yi)) else {
                    return Err(TranslateError::ShapeMismatch(format!("image {p} binders not in prefix")));
                };
                let (z, w) = if px < py { (xi.clone(), yi.clone()) } else { (yi.clone(), xi.clone()) };
                prefix.remove(px.max(py));
                let zt = Term::Var(z.clone());
                for t in witness.iter_mut() {
                    *t = t.substitute(&w, &zt);
                }
                let merged = Formula::Forall(
                    z.clone(),
                    Box::new(Formula::or(substitute(bi1, xi, &zt), substitute(bi2, yi, &zt))),
                );
                expansion = expansion
                    .replace_at(p, merged)
                    .map_err(|e| TranslateError::PathMismatch(e.to_string()))?;
            }
            let merged_base = Formula::Forall(
                x.clone(),
                Box::new(Formula::or((**b1).clone(), substitute(b2, x2, &Term::Var(x.clone())))),
            );
            let base = replace_base(base, path, merged_base)?;
            let h = rebuild(expansion, prefix, witness);
            deep_contract(&base, &h, &path.child(Step::Under))
        }
        _ => Err(TranslateError::PathMismatch(format!("{path} joins different shapes"))),
    }
}

/// `⊢ Γ, A, A` to `⊢ Γ, A`, where `premise` is the sequent `h` proves.
pub fn admit_contract(premise: &Sequent, h: &HerbrandProof) -> Result<HerbrandProof, TranslateError> {
    let n = premise.len();
    if n < 2 || h.expansion.len() != n {
        return Err(TranslateError::ShapeMismatch("contraction needs two members".into()));
    }
    let fuse = |s: &Sequent| {
        let mut members = s.0[..n - 2].to_vec();
        members.push(Formula::or(s.0[n - 2].clone(), s.0[n - 1].clone()));
        Sequent(members)
    };
    let base = fuse(premise);
    let fused = rebuild(fuse(&h.expansion), h.prenex.prefix.clone(), h.witness.0.clone());
    let (_, h) = deep_contract(&base, &fused, &PositionPath::member(n - 2))?;
    Ok(h)
}
