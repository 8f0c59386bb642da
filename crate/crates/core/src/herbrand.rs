//! Herbrand-proof certificates and their checker.
//!
//! A certificate for a sequent `Γ` is a triple: a strong `\/`-expansion `Γ̂`
//! of `Γ` (existential subformulas may be duplicated as `B \/ B`), a
//! prenexification of `Γ̂`, and a witnessing substitution assigning a term
//! to each existential of the prefix such that the instantiated matrix is a
//! propositional tautology.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::alpha::relate;
use crate::prenex::{check_prenexification, PrenexError, PrenexFormula};
use crate::propositional::{falsifying_assignment, Assignment, PropositionalError};
use crate::syntax::{Formula, Quantifier, Sequent, Term, Var};

/// Terms for the existential variables of a prefix, in prefix order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WitnessingSubstitution(pub Vec<Term>);

impl WitnessingSubstitution {
    pub fn terms(&self) -> &[Term] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HerbrandProof {
    pub expansion: Sequent,
    pub prenex: PrenexFormula,
    pub witness: WitnessingSubstitution,
}

impl fmt::Display for HerbrandProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "expansion: {}", self.expansion)?;
        write!(f, "prefix:")?;
        for b in &self.prenex.prefix {
            write!(f, " {b}")?;
        }
        writeln!(f)?;
        writeln!(f, "matrix: {}", self.prenex.matrix)?;
        write!(f, "witness:")?;
        for (i, t) in self.witness.0.iter().enumerate() {
            write!(f, "{}{t}", if i == 0 { " " } else { ", " })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HerbrandError {
    #[error("sequent is empty")]
    EmptySequent,
    #[error("expansion has {found} members, sequent has {expected}")]
    MemberCountMismatch { expected: usize, found: usize },
    #[error("expansion member {0} is not a strong expansion of the sequent member")]
    NotAnExpansion(usize),
    #[error("not a prenexification of the expansion: {0}")]
    NotAPrenexification(PrenexError),
    #[error("prefix has {expected} existentials but {found} witness terms were given")]
    WitnessCountMismatch { expected: usize, found: usize },
    #[error("witness term t{0} uses a variable that is neither an earlier universal nor free in the sequent")]
    VariableConditionViolated(usize),
    #[error("instantiated matrix is not a tautology")]
    MatrixNotTautology(Assignment),
    #[error(transparent)]
    Propositional(#[from] PropositionalError),
}

impl HerbrandError {
    /// Short machine-readable reason.
    pub fn kind(&self) -> &'static str {
        match self {
            HerbrandError::EmptySequent => "empty-sequent",
            HerbrandError::MemberCountMismatch { .. } | HerbrandError::NotAnExpansion(_) => {
                "not-an-expansion"
            }
            HerbrandError::NotAPrenexification(_) => "not-a-prenexification",
            HerbrandError::WitnessCountMismatch { .. } => "witness-count-mismatch",
            HerbrandError::VariableConditionViolated(_) => "variable-condition-violated",
            HerbrandError::MatrixNotTautology(_) => "matrix-not-tautology",
            HerbrandError::Propositional(_) => "propositional-error",
        }
    }
}

/// True iff `candidate` arises from `original` (up to renaming of bound
/// variables) by finitely many replacements of an existential subformula
/// occurrence `B` by `B \/ B`.
///
/// Decided structurally: either the roots agree and the children are related
/// pairwise, or `original` is existential and `candidate` is a disjunction of
/// two formulas each related to `original`.
pub fn is_strong_expansion(original: &Formula, candidate: &Formula) -> bool {
    relate(original, candidate, true, &mut Vec::new())
}

/// Individual conditions of [`check_herbrand`]; all enabled by default.
/// Disabling one exists only to demonstrate that each is necessary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub expansion: bool,
    pub prenexification: bool,
    pub variable_condition: bool,
    pub tautology: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { expansion: true, prenexification: true, variable_condition: true, tautology: true }
    }
}

/// Simultaneous substitution into a quantifier-free formula.
fn instantiate(f: &Formula, map: &HashMap<&Var, &Term>) -> Formula {
    fn term(t: &Term, map: &HashMap<&Var, &Term>) -> Term {
        match t {
            Term::Var(v) => map.get(v).map(|t| (*t).clone()).unwrap_or_else(|| t.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| term(a, map)).collect()),
        }
    }
    let atom = |a: &crate::syntax::Atom| crate::syntax::Atom {
        rel: a.rel.clone(),
        args: a.args.iter().map(|t| term(t, map)).collect(),
    };
    match f {
        Formula::Atom(a) => Formula::Atom(atom(a)),
        Formula::NegAtom(a) => Formula::NegAtom(atom(a)),
        Formula::And(a, b) => Formula::and(instantiate(a, map), instantiate(b, map)),
        Formula::Or(a, b) => Formula::or(instantiate(a, map), instantiate(b, map)),
        Formula::Forall(x, b) => Formula::Forall(x.clone(), Box::new(instantiate(b, map))),
        Formula::Exists(x, b) => Formula::Exists(x.clone(), Box::new(instantiate(b, map))),
    }
}

/// The matrix of `p` with each existential replaced by its witness term.
pub fn instantiated_matrix(p: &PrenexFormula, sigma: &WitnessingSubstitution) -> Formula {
    let map: HashMap<&Var, &Term> = p.existentials().into_iter().zip(sigma.0.iter()).collect();
    instantiate(&p.matrix, &map)
}

/// Checks both conditions on a witnessing substitution: each term may use
/// only universals that precede its existential (plus variables in
/// `ambient_free`), and the instantiated matrix is a tautology.
pub fn check_witnessing(
    p: &PrenexFormula,
    sigma: &WitnessingSubstitution,
    ambient_free: &BTreeSet<Var>,
) -> Result<(), HerbrandError> {
    check_witnessing_with(p, sigma, ambient_free, &CheckOptions::default())
}

fn check_witnessing_with(
    p: &PrenexFormula,
    sigma: &WitnessingSubstitution,
    ambient_free: &BTreeSet<Var>,
    opts: &CheckOptions,
) -> Result<(), HerbrandError> {
    let existentials = p.existentials();
    if existentials.len() != sigma.len() {
        return Err(HerbrandError::WitnessCountMismatch {
            expected: existentials.len(),
            found: sigma.len(),
        });
    }
    if opts.variable_condition {
        let prefix_vars: BTreeSet<&Var> = p.prefix.iter().map(|b| &b.var).collect();
        let mut earlier_universals: BTreeSet<&Var> = BTreeSet::new();
        let mut i = 0;
        for b in &p.prefix {
            match b.q {
                Quantifier::Forall => {
                    earlier_universals.insert(&b.var);
                }
                Quantifier::Exists => {
                    let ok = sigma.0[i].vars().iter().all(|v| {
                        if prefix_vars.contains(v) {
                            earlier_universals.contains(v)
                        } else {
                            ambient_free.contains(v)
                        }
                    });
                    if !ok {
                        return Err(HerbrandError::VariableConditionViolated(i + 1));
                    }
                    i += 1;
                }
            }
        }
    }
    if opts.tautology {
        if let Some(a) = falsifying_assignment(&instantiated_matrix(p, sigma))? {
            return Err(HerbrandError::MatrixNotTautology(a));
        }
    }
    Ok(())
}

/// Checks that `h` is a Herbrand proof of `s`.
pub fn check_herbrand(s: &Sequent, h: &HerbrandProof) -> Result<(), HerbrandError> {
    check_herbrand_with(s, h, &CheckOptions::default())
}

/// [`check_herbrand`] with individually switchable conditions.
pub fn check_herbrand_with(
    s: &Sequent,
    h: &HerbrandProof,
    opts: &CheckOptions,
) -> Result<(), HerbrandError> {
    if s.is_empty() {
        return Err(HerbrandError::EmptySequent);
    }
    if opts.expansion {
        if s.len() != h.expansion.len() {
            return Err(HerbrandError::MemberCountMismatch {
                expected: s.len(),
                found: h.expansion.len(),
            });
        }
        for (i, (orig, cand)) in s.members().iter().zip(h.expansion.members()).enumerate() {
            if !is_strong_expansion(orig, cand) {
                return Err(HerbrandError::NotAnExpansion(i));
            }
        }
    }
    if opts.prenexification {
        check_prenexification(&h.expansion, &h.prenex).map_err(HerbrandError::NotAPrenexification)?;
    }
    check_witnessing_with(&h.prenex, &h.witness, &s.free_vars(), opts)
}
