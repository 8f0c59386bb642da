//! Truth-table tautology checking for quantifier-free formulas.
//!
//! Atoms are propositional variables identified by syntax: two occurrences
//! denote the same variable iff the relation symbol and all argument terms
//! are identical.

use std::collections::HashMap;

use thiserror::Error;

use crate::syntax::{Atom, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropositionalError {
    #[error("formula contains a quantifier")]
    FormulaContainsQuantifier,
    #[error("too many distinct atoms for truth-table enumeration ({0})")]
    TooManyAtoms(usize),
}

/// Largest atom count we are willing to enumerate.
pub const MAX_ATOMS: usize = 26;

/// A truth assignment to the atoms of a formula, in first-occurrence order.
pub type Assignment = Vec<(Atom, bool)>;

enum Compiled {
    Lit(usize, bool),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    fn eval(&self, bits: u64) -> bool {
        match self {
            Compiled::Lit(i, positive) => ((bits >> i) & 1 == 1) == *positive,
            Compiled::And(a, b) => a.eval(bits) && b.eval(bits),
            Compiled::Or(a, b) => a.eval(bits) || b.eval(bits),
        }
    }
}

fn compile(
    f: &Formula,
    index: &mut HashMap<Atom, usize>,
    atoms: &mut Vec<Atom>,
) -> Result<Compiled, PropositionalError> {
    let mut lit = |a: &Atom, positive| {
        let i = *index.entry(a.clone()).or_insert_with(|| {
            atoms.push(a.clone());
            atoms.len() - 1
        });
        Compiled::Lit(i, positive)
    };
    Ok(match f {
        Formula::Atom(a) => lit(a, true),
        Formula::NegAtom(a) => lit(a, false),
        Formula::And(a, b) => {
            Compiled::And(Box::new(compile(a, index, atoms)?), Box::new(compile(b, index, atoms)?))
        }
        Formula::Or(a, b) => {
            Compiled::Or(Box::new(compile(a, index, atoms)?), Box::new(compile(b, index, atoms)?))
        }
        Formula::Forall(..) | Formula::Exists(..) => {
            return Err(PropositionalError::FormulaContainsQuantifier)
        }
    })
}

/// The first assignment (counting in binary, first atom as low bit) that
/// makes `f` false, or `None` when `f` is a tautology.
pub fn falsifying_assignment(f: &Formula) -> Result<Option<Assignment>, PropositionalError> {
    let mut index = HashMap::new();
    let mut atoms = Vec::new();
    let compiled = compile(f, &mut index, &mut atoms)?;
    if atoms.len() > MAX_ATOMS {
        return Err(PropositionalError::TooManyAtoms(atoms.len()));
    }
    for bits in 0..(1u64 << atoms.len()) {
        if !compiled.eval(bits) {
            let assignment = atoms
                .iter()
                .enumerate()
                .map(|(i, a)| (a.clone(), (bits >> i) & 1 == 1))
                .collect();
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

pub fn is_tautology(f: &Formula) -> Result<bool, PropositionalError> {
    Ok(falsifying_assignment(f)?.is_none())
}
