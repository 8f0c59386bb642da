//! Prenex forms of alpha-normal sequents.
//!
//! For an alpha-normal input, the formulas reachable by pulling quantifiers
//! outward across `/\` and `\/` are exactly those whose prefix lists the
//! quantifier occurrences in an order extending the scope-nesting order, and
//! whose matrix is the input with its quantifiers deleted. A prenexification
//! is therefore represented by its prefix alone; the matrix is derived.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::alpha::is_alpha_normal;
use crate::syntax::{Formula, Quantifier, Sequent, Var};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Binder {
    pub q: Quantifier,
    pub var: Var,
}

impl Binder {
    pub fn new(q: Quantifier, var: impl Into<Var>) -> Self {
        Binder { q, var: var.into() }
    }

    pub fn forall(var: &str) -> Self {
        Binder::new(Quantifier::Forall, Var::from(var))
    }

    pub fn exists(var: &str) -> Self {
        Binder::new(Quantifier::Exists, Var::from(var))
    }
}

impl fmt::Display for Binder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}.", self.q, self.var)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrenexFormula {
    pub prefix: Vec<Binder>,
    pub matrix: Formula,
}

impl PrenexFormula {
    /// Existential variables in prefix order.
    pub fn existentials(&self) -> Vec<&Var> {
        self.prefix
            .iter()
            .filter(|b| b.q == Quantifier::Exists)
            .map(|b| &b.var)
            .collect()
    }

    /// The prenex formula as an ordinary formula.
    pub fn to_formula(&self) -> Formula {
        self.prefix
            .iter()
            .rev()
            .fold(self.matrix.clone(), |acc, b| Formula::quantified(b.q, b.var.clone(), acc))
    }
}

impl fmt::Display for PrenexFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.prefix {
            write!(f, "{b} ")?;
        }
        write!(f, "{}", self.matrix)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrenexError {
    #[error("sequent is empty")]
    EmptySequent,
    #[error("sequent disjunction is not alpha-normal")]
    SequentNotAlphaNormal,
    #[error("order is not a valid linearization: {0}")]
    OrderNotALinearization(String),
    #[error("matrix does not match the quantifier-free body of the sequent")]
    MatrixMismatch,
}

/// A quantifier occurrence together with the binders whose scope encloses it.
#[derive(Clone, Debug)]
pub struct BinderOccurrence {
    pub binder: Binder,
    pub enclosing: Vec<Var>,
}

/// Quantifier occurrences of the sequent in pre-order.
pub fn binder_occurrences(s: &Sequent) -> Vec<BinderOccurrence> {
    fn walk(f: &Formula, stack: &mut Vec<Var>, out: &mut Vec<BinderOccurrence>) {
        match f {
            Formula::Atom(_) | Formula::NegAtom(_) => {}
            Formula::And(a, b) | Formula::Or(a, b) => {
                walk(a, stack, out);
                walk(b, stack, out);
            }
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                let q = if matches!(f, Formula::Forall(..)) {
                    Quantifier::Forall
                } else {
                    Quantifier::Exists
                };
                out.push(BinderOccurrence { binder: Binder::new(q, x.clone()), enclosing: stack.clone() });
                stack.push(x.clone());
                walk(b, stack, out);
                stack.pop();
            }
        }
    }
    let mut out = Vec::new();
    for m in s.members() {
        walk(m, &mut Vec::new(), &mut out);
    }
    out
}

/// The pre-order linearization, which always respects nesting.
pub fn default_order(s: &Sequent) -> Vec<Binder> {
    binder_occurrences(s).into_iter().map(|o| o.binder).collect()
}

/// Quantifier-free body of the sequent disjunction.
pub fn sequent_matrix(s: &Sequent) -> Option<Formula> {
    s.disjunction().map(|f| f.erase_quantifiers())
}

fn check_alpha_normal(s: &Sequent) -> Result<Formula, PrenexError> {
    let disj = s.disjunction().ok_or(PrenexError::EmptySequent)?;
    if !is_alpha_normal(&disj) {
        return Err(PrenexError::SequentNotAlphaNormal);
    }
    Ok(disj)
}

/// Checks that `order` lists each quantifier occurrence of `s` exactly once,
/// after every quantifier whose scope encloses it.
pub fn check_linearization(s: &Sequent, order: &[Binder]) -> Result<(), PrenexError> {
    let occurrences = binder_occurrences(s);
    let bad = |msg: String| Err(PrenexError::OrderNotALinearization(msg));
    if occurrences.len() != order.len() {
        return bad(format!(
            "sequent has {} quantifiers, order lists {}",
            occurrences.len(),
            order.len()
        ));
    }
    let mut index: HashMap<&Var, (usize, Quantifier)> = HashMap::new();
    for (i, b) in order.iter().enumerate() {
        if index.insert(&b.var, (i, b.q)).is_some() {
            return bad(format!("variable {} listed twice", b.var));
        }
    }
    for occ in &occurrences {
        let Some(&(pos, q)) = index.get(&occ.binder.var) else {
            return bad(format!("quantifier on {} missing", occ.binder.var));
        };
        if q != occ.binder.q {
            return bad(format!("wrong quantifier for {}", occ.binder.var));
        }
        for outer in &occ.enclosing {
            if index[outer].0 > pos {
                return bad(format!("{} is listed before enclosing {}", occ.binder.var, outer));
            }
        }
    }
    Ok(())
}

/// The prenexification of `s` whose prefix is exactly `order`.
pub fn prenexify(s: &Sequent, order: &[Binder]) -> Result<PrenexFormula, PrenexError> {
    let disj = check_alpha_normal(s)?;
    check_linearization(s, order)?;
    Ok(PrenexFormula { prefix: order.to_vec(), matrix: disj.erase_quantifiers() })
}

/// Flattens maximal `\/`-chains so that comparison ignores associativity.
fn flatten_or(f: &Formula) -> FlatFormula {
    fn collect(f: &Formula, out: &mut Vec<FlatFormula>) {
        match f {
            Formula::Or(a, b) => {
                collect(a, out);
                collect(b, out);
            }
            _ => out.push(flatten_or(f)),
        }
    }
    match f {
        Formula::Or(..) => {
            let mut parts = Vec::new();
            collect(f, &mut parts);
            FlatFormula::Or(parts)
        }
        Formula::And(a, b) => FlatFormula::And(Box::new(flatten_or(a)), Box::new(flatten_or(b))),
        other => FlatFormula::Leaf(other.clone()),
    }
}

#[derive(PartialEq)]
enum FlatFormula {
    Leaf(Formula),
    And(Box<FlatFormula>, Box<FlatFormula>),
    Or(Vec<FlatFormula>),
}

/// Equality modulo associativity of `\/`.
pub fn eq_modulo_or_assoc(a: &Formula, b: &Formula) -> bool {
    flatten_or(a) == flatten_or(b)
}

/// Detailed form of [`is_prenexification_of`].
pub fn check_prenexification(s: &Sequent, p: &PrenexFormula) -> Result<(), PrenexError> {
    let disj = check_alpha_normal(s)?;
    check_linearization(s, &p.prefix)?;
    if !eq_modulo_or_assoc(&disj.erase_quantifiers(), &p.matrix) {
        return Err(PrenexError::MatrixMismatch);
    }
    Ok(())
}

pub fn is_prenexification_of(s: &Sequent, p: &PrenexFormula) -> bool {
    check_prenexification(s, p).is_ok()
}
