//! From GS proofs to Herbrand proofs, one admissibility step per rule.
//!
//! Every intermediate certificate keeps an alpha-normal expansion whose
//! binders are drawn from a single name supply, so certificates of sibling
//! subproofs never share bound names. The matrix is always the quantifier
//! erasure of the expansion's disjunction.

mod admit;
mod deep;

pub use admit::{admit_and, admit_exists, admit_forall, admit_weaken};
pub use deep::{admit_contract, deep_contract, hole_images, medial_regroup, HoleImageSet};

use thiserror::Error;

use crate::alpha::NameSupply;
use crate::gs::{GsProof, Rule};
use crate::herbrand::{HerbrandProof, WitnessingSubstitution};
use crate::prenex::{sequent_matrix, Binder, PrenexFormula};
use crate::signature::Signature;
use crate::syntax::{Formula, Sequent, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("expansion member does not abstract to {0}")]
    AbstractionMismatch(String),
    #[error("unexpected certificate shape: {0}")]
    ShapeMismatch(String),
    #[error("position does not address a contractible disjunction: {0}")]
    PathMismatch(String),
}

impl TranslateError {
    pub fn kind(&self) -> &'static str {
        match self {
            TranslateError::AbstractionMismatch(_) => "abstraction-mismatch",
            TranslateError::ShapeMismatch(_) => "shape-mismatch",
            TranslateError::PathMismatch(_) => "path-mismatch",
        }
    }
}

/// Assembles a certificate, deriving the matrix from the expansion.
pub(crate) fn rebuild(expansion: Sequent, prefix: Vec<Binder>, witness: Vec<Term>) -> HerbrandProof {
    let matrix = sequent_matrix(&expansion).expect("certificates have nonempty expansions");
    HerbrandProof {
        expansion,
        prenex: PrenexFormula { prefix, matrix },
        witness: WitnessingSubstitution(witness),
    }
}

/// Every variable name a certificate mentions.
pub(crate) fn certificate_vars(h: &HerbrandProof) -> impl Iterator<Item = Var> + '_ {
    h.expansion
        .all_vars()
        .into_iter()
        .chain(h.prenex.prefix.iter().map(|b| b.var.clone()))
        .chain(h.witness.0.iter().flat_map(Term::vars))
}

/// The certificate of an axiom (or any quantifier-free tautologous)
/// sequent: the sequent itself, with empty prefix and substitution.
pub fn axiom_certificate(s: &Sequent) -> HerbrandProof {
    rebuild(s.clone(), Vec::new(), Vec::new())
}

/// `⊢ Γ, A, B` to `⊢ Γ, A \/ B`.
pub fn merge_or(h: &HerbrandProof) -> Result<HerbrandProof, TranslateError> {
    let mut members = h.expansion.0.clone();
    let (Some(b), Some(a)) = (members.pop(), members.pop()) else {
        return Err(TranslateError::ShapeMismatch("\\/ needs two members".into()));
    };
    members.push(Formula::or(a, b));
    Ok(rebuild(Sequent(members), h.prenex.prefix.clone(), h.witness.0.clone()))
}

/// Reorders expansion members so that `new[i] = old[permutation[i]]`.
pub fn exchange(h: &HerbrandProof, permutation: &[usize]) -> Result<HerbrandProof, TranslateError> {
    let old = &h.expansion.0;
    if permutation.len() != old.len() || permutation.iter().any(|&j| j >= old.len()) {
        return Err(TranslateError::ShapeMismatch("bad permutation".into()));
    }
    let members = permutation.iter().map(|&j| old[j].clone()).collect();
    Ok(rebuild(Sequent(members), h.prenex.prefix.clone(), h.witness.0.clone()))
}

pub struct Translator {
    supply: NameSupply,
    constant: Term,
}

impl Translator {
    /// Reserves every variable name occurring in `p`.
    pub fn new(p: &GsProof, constant: Term) -> Self {
        let mut supply = NameSupply::default();
        p.walk(&mut |_, node| {
            supply.reserve_all(&node.conclusion.all_vars());
            match &node.rule {
                Rule::ExistsR { witness, .. } => supply.reserve_all(&witness.vars()),
                Rule::ForallR { eigenvariable, .. } => supply.reserve(eigenvariable),
                _ => {}
            }
        });
        Translator { supply, constant }
    }

    pub fn translate(&mut self, p: &GsProof) -> Result<HerbrandProof, TranslateError> {
        let child = |this: &mut Self, i: usize| this.translate(&p.children[i]);
        match &p.rule {
            Rule::Ax => Ok(axiom_certificate(&p.conclusion)),
            Rule::OrR => merge_or(&child(self, 0)?),
            Rule::ExchangeR { permutation } => exchange(&child(self, 0)?, permutation),
            Rule::AndR => {
                let (h1, h2) = (child(self, 0)?, child(self, 1)?);
                Ok(admit::and_with(&h1, &h2, &mut self.supply))
            }
            Rule::WeakenR => {
                let h = child(self, 0)?;
                let a = p.conclusion.0.last().expect("weakening has a principal member");
                Ok(admit::weaken_with(&h, a, &self.constant, &mut self.supply))
            }
            Rule::ExistsR { witness, index } => {
                let h = child(self, 0)?;
                admit::exists_with(&h, *index, &p.conclusion.0[*index], witness, &self.constant, &mut self.supply)
            }
            Rule::ForallR { eigenvariable, index } => admit_forall(&child(self, 0)?, *index, eigenvariable),
            Rule::ContractR => admit_contract(&p.children[0].conclusion, &child(self, 0)?),
        }
    }
}

/// Translates a checked GS proof, using the first constant of the root
/// sequent (or `c`) wherever a witness is arbitrary.
pub fn translate(p: &GsProof) -> Result<HerbrandProof, TranslateError> {
    let constant = Signature::infer(&p.conclusion)
        .distinguished_constant()
        .expect("inferred signatures have a constant");
    translate_with_constant(p, constant)
}

pub fn translate_with_constant(p: &GsProof, constant: Term) -> Result<HerbrandProof, TranslateError> {
    Translator::new(p, constant).translate(p)
}
