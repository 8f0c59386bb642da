//! Relation and function symbols with their arities.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::syntax::{Formula, Sequent, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("symbol `{0}` declared twice")]
    Duplicate(String),
    #[error("signature declares no constant symbol")]
    NoConstant,
    #[error("undeclared relation `{0}`")]
    UndeclaredRelation(String),
    #[error("undeclared function `{0}`")]
    UndeclaredFunction(String),
    #[error("`{symbol}` expects {expected} argument(s), got {found}")]
    ArityMismatch { symbol: String, expected: usize, found: usize },
}

/// A first-order signature. Declaration order is kept so that the
/// distinguished constant is stable.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    relations: Vec<(String, usize)>,
    functions: Vec<(String, usize)>,
}

impl Signature {
    /// Builds a signature, enforcing unique names per symbol class and the
    /// presence of at least one constant.
    pub fn new(
        relations: Vec<(String, usize)>,
        functions: Vec<(String, usize)>,
    ) -> Result<Self, SignatureError> {
        let sig = Signature::unchecked(relations, functions)?;
        if sig.distinguished_constant().is_none() {
            return Err(SignatureError::NoConstant);
        }
        Ok(sig)
    }

    /// As [`Signature::new`] but without the constant requirement; used while
    /// a declaration block is still being read.
    pub fn unchecked(
        relations: Vec<(String, usize)>,
        functions: Vec<(String, usize)>,
    ) -> Result<Self, SignatureError> {
        for list in [&relations, &functions] {
            let mut seen = BTreeMap::new();
            for (name, arity) in list {
                if seen.insert(name.clone(), *arity).is_some() {
                    return Err(SignatureError::Duplicate(name.clone()));
                }
            }
        }
        Ok(Signature { relations, functions })
    }

    /// The smallest signature covering the symbols of `s`, plus `c/0` if the
    /// sequent mentions no constant.
    pub fn infer(s: &Sequent) -> Self {
        let relations: Vec<_> = s.relations().into_iter().collect();
        let mut functions: Vec<_> = s.functions().into_iter().collect();
        if !functions.iter().any(|(_, a)| *a == 0) {
            functions.insert(0, ("c".to_string(), 0));
        }
        Signature { relations, functions }
    }

    pub fn relations(&self) -> &[(String, usize)] {
        &self.relations
    }

    pub fn functions(&self) -> &[(String, usize)] {
        &self.functions
    }

    pub fn relation_arity(&self, name: &str) -> Option<usize> {
        self.relations.iter().find(|(n, _)| n == name).map(|(_, a)| *a)
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.iter().find(|(n, _)| n == name).map(|(_, a)| *a)
    }

    /// The first declared constant. Weakening assigns it to fresh
    /// existentials, so every signature must have one.
    pub fn distinguished_constant(&self) -> Option<Term> {
        self.functions
            .iter()
            .find(|(_, a)| *a == 0)
            .map(|(n, _)| Term::constant(n))
    }

    pub fn check_term(&self, t: &Term) -> Result<(), SignatureError> {
        match t {
            Term::Var(_) => Ok(()),
            Term::App(f, args) => {
                let expected = self
                    .function_arity(f)
                    .ok_or_else(|| SignatureError::UndeclaredFunction(f.clone()))?;
                if expected != args.len() {
                    return Err(SignatureError::ArityMismatch {
                        symbol: f.clone(),
                        expected,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }

    pub fn check_formula(&self, f: &Formula) -> Result<(), SignatureError> {
        let mut result = Ok(());
        f.for_each_literal(&mut |_, atom| {
            if result.is_err() {
                return;
            }
            result = match self.relation_arity(&atom.rel) {
                None => Err(SignatureError::UndeclaredRelation(atom.rel.clone())),
                Some(expected) if expected != atom.args.len() => Err(SignatureError::ArityMismatch {
                    symbol: atom.rel.clone(),
                    expected,
                    found: atom.args.len(),
                }),
                Some(_) => atom.args.iter().try_for_each(|t| self.check_term(t)),
            };
        });
        result
    }

    pub fn check_sequent(&self, s: &Sequent) -> Result<(), SignatureError> {
        s.members().iter().try_for_each(|f| self.check_formula(f))
    }
}
