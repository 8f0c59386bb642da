//! The one-sided sequent calculus GS.
//!
//! Rules act on the rightmost members of the conclusion, except `ExistsR`
//! and `ForallR` which name their principal member by index. `ExchangeR` is
//! an explicit structural rule permuting the sequence:
//!
//! ```text
//!   Ax        ⊢ a, ~a
//!   OrR       ⊢ Γ, A, B           ⟹ ⊢ Γ, A \/ B
//!   AndR      ⊢ Γ, A  and  ⊢ Γ', B ⟹ ⊢ Γ, Γ', A /\ B
//!   ContractR ⊢ Γ, A, A           ⟹ ⊢ Γ, A
//!   WeakenR   ⊢ Γ                 ⟹ ⊢ Γ, A
//!   ExistsR   ⊢ Γ, A[y:=t]        ⟹ ⊢ Γ, exists y. A
//!   ForallR   ⊢ Γ, A[x:=z]        ⟹ ⊢ Γ, forall x. A     (z not free below)
//!   ExchangeR ⊢ π(Γ)              ⟹ ⊢ Γ
//! ```

mod check;
mod search;

pub use check::{check_gs, check_gs_with, GsCheckOptions, GsError, NodeId};
pub use search::{search_gs, ContractionPolicy, SearchBounds, SearchOutcome};

use crate::syntax::{Sequent, Term, Var};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Rule {
    Ax,
    OrR,
    AndR,
    ContractR,
    WeakenR,
    ExistsR { witness: Term, index: usize },
    ForallR { eigenvariable: Var, index: usize },
    /// `conclusion[i] = premise[permutation[i]]`.
    ExchangeR { permutation: Vec<usize> },
}

impl Rule {
    pub fn arity(&self) -> usize {
        match self {
            Rule::Ax => 0,
            Rule::AndR => 2,
            _ => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Rule::Ax => "ax",
            Rule::OrR => "or",
            Rule::AndR => "and",
            Rule::ContractR => "contract",
            Rule::WeakenR => "weaken",
            Rule::ExistsR { .. } => "exists",
            Rule::ForallR { .. } => "forall",
            Rule::ExchangeR { .. } => "exchange",
        }
    }
}

/// A GS derivation; every node records its conclusion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GsProof {
    pub conclusion: Sequent,
    pub rule: Rule,
    pub children: Vec<GsProof>,
}

impl GsProof {
    pub fn new(conclusion: Sequent, rule: Rule, children: Vec<GsProof>) -> Self {
        GsProof { conclusion, rule, children }
    }

    pub fn conclusion(&self) -> &Sequent {
        &self.conclusion
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(GsProof::size).sum::<usize>()
    }

    /// Longest branch, counting every rule.
    pub fn height(&self) -> usize {
        1 + self.children.iter().map(GsProof::height).max().unwrap_or(0)
    }

    /// Pre-order traversal with node addresses.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&NodeId, &'a GsProof)) {
        fn go<'a>(p: &'a GsProof, id: &mut Vec<usize>, f: &mut impl FnMut(&NodeId, &'a GsProof)) {
            f(&NodeId(id.clone()), p);
            for (i, c) in p.children.iter().enumerate() {
                id.push(i);
                go(c, id, f);
                id.pop();
            }
        }
        go(self, &mut Vec::new(), f);
    }

    pub fn count_rule(&self, name: &str) -> usize {
        let mut n = 0;
        self.walk(&mut |_, p| {
            if p.rule.name() == name {
                n += 1;
            }
        });
        n
    }
}
