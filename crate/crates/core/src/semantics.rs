//! Brute-force finite-model semantics.
//!
//! This is a test oracle, not part of the checking pipeline: a formula that
//! is refuted by some small model is certainly invalid, while surviving all
//! models up to a size bound is only evidence of validity.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::syntax::{Formula, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("free variable `{0}` has no value in the environment")]
    UnboundFreeVariable(Var),
    #[error("formula has free variables: {0:?}")]
    NonemptyFreeVariableSet(BTreeSet<Var>),
    #[error("symbol `{0}` has no interpretation")]
    UninterpretedSymbol(String),
}

/// Interpretation over the domain `0..size`. Tables are indexed by the
/// argument tuple read as a base-`size` number, first argument most
/// significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    pub size: usize,
    pub functions: BTreeMap<String, Vec<usize>>,
    pub relations: BTreeMap<String, Vec<bool>>,
    pub env: BTreeMap<Var, usize>,
}

fn table_index(size: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, a| acc * size + a)
}

impl Interpretation {
    pub fn eval_term(&self, t: &Term) -> Result<usize, SemanticsError> {
        match t {
            Term::Var(v) => self
                .env
                .get(v)
                .copied()
                .ok_or_else(|| SemanticsError::UnboundFreeVariable(v.clone())),
            Term::App(f, args) => {
                let vals = args.iter().map(|a| self.eval_term(a)).collect::<Result<Vec<_>, _>>()?;
                let table = self
                    .functions
                    .get(f)
                    .ok_or_else(|| SemanticsError::UninterpretedSymbol(f.clone()))?;
                Ok(table[table_index(self.size, &vals)])
            }
        }
    }

    fn holds(&self, rel: &str, args: &[Term]) -> Result<bool, SemanticsError> {
        let vals = args.iter().map(|a| self.eval_term(a)).collect::<Result<Vec<_>, _>>()?;
        let table = self
            .relations
            .get(rel)
            .ok_or_else(|| SemanticsError::UninterpretedSymbol(rel.to_string()))?;
        Ok(table[table_index(self.size, &vals)])
    }

    fn eval_in(&mut self, f: &Formula) -> Result<bool, SemanticsError> {
        match f {
            Formula::Atom(a) => self.holds(&a.rel, &a.args),
            Formula::NegAtom(a) => Ok(!self.holds(&a.rel, &a.args)?),
            Formula::And(a, b) => Ok(self.eval_in(a)? && self.eval_in(b)?),
            Formula::Or(a, b) => Ok(self.eval_in(a)? || self.eval_in(b)?),
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                let universal = matches!(f, Formula::Forall(..));
                let saved = self.env.get(x).copied();
                let mut result = universal;
                for d in 0..self.size {
                    self.env.insert(x.clone(), d);
                    let v = self.eval_in(b);
                    let v = match v {
                        Ok(v) => v,
                        Err(e) => {
                            self.restore(x, saved);
                            return Err(e);
                        }
                    };
                    if v != universal {
                        result = v;
                        break;
                    }
                }
                self.restore(x, saved);
                Ok(result)
            }
        }
    }

    fn restore(&mut self, x: &Var, saved: Option<usize>) {
        match saved {
            Some(d) => self.env.insert(x.clone(), d),
            None => self.env.remove(x),
        };
    }
}

/// Tarski truth value of `f` in `m`.
pub fn evaluate(f: &Formula, m: &Interpretation) -> Result<bool, SemanticsError> {
    m.clone().eval_in(f)
}

/// Odometer over all interpretations of the given symbols on a domain of
/// `size` elements, in lexicographic order of the concatenated tables.
struct Models {
    size: usize,
    functions: Vec<(String, usize)>,
    relations: Vec<(String, usize)>,
    digits: Vec<usize>,
    radices: Vec<usize>,
    done: bool,
}

impl Models {
    fn new(size: usize, functions: Vec<(String, usize)>, relations: Vec<(String, usize)>) -> Self {
        let mut radices = Vec::new();
        for (_, arity) in &functions {
            radices.extend(std::iter::repeat_n(size, size.pow(*arity as u32)));
        }
        for (_, arity) in &relations {
            radices.extend(std::iter::repeat_n(2, size.pow(*arity as u32)));
        }
        Models { size, functions, relations, digits: vec![0; radices.len()], radices, done: false }
    }

    fn current(&self) -> Interpretation {
        let mut pos = 0;
        let mut functions = BTreeMap::new();
        for (name, arity) in &self.functions {
            let n = self.size.pow(*arity as u32);
            functions.insert(name.clone(), self.digits[pos..pos + n].to_vec());
            pos += n;
        }
        let mut relations = BTreeMap::new();
        for (name, arity) in &self.relations {
            let n = self.size.pow(*arity as u32);
            relations.insert(name.clone(), self.digits[pos..pos + n].iter().map(|d| *d == 1).collect());
            pos += n;
        }
        Interpretation { size: self.size, functions, relations, env: BTreeMap::new() }
    }
}

impl Iterator for Models {
    type Item = Interpretation;

    fn next(&mut self) -> Option<Interpretation> {
        if self.done {
            return None;
        }
        let out = self.current();
        // Increment with the last digit fastest, so iteration is lexicographic.
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.radices[i] {
                break;
            }
            self.digits[i] = 0;
        }
        Some(out)
    }
}

/// The lexicographically least model of size at most `n_max` falsifying the
/// sentence `f`, if any. Only symbols occurring in `f` are interpreted.
pub fn find_countermodel(f: &Formula, n_max: usize) -> Result<Option<Interpretation>, SemanticsError> {
    let free = f.free_vars();
    if !free.is_empty() {
        return Err(SemanticsError::NonemptyFreeVariableSet(free));
    }
    let functions: Vec<_> = f.functions().into_iter().collect();
    let relations: Vec<_> = f.relations().into_iter().collect();
    for size in 1..=n_max {
        for mut m in Models::new(size, functions.clone(), relations.clone()) {
            if !m.eval_in(f)? {
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}

/// True iff the sentence `f` holds in every interpretation with a domain of
/// at most `n_max` elements.
pub fn valid_up_to(f: &Formula, n_max: usize) -> Result<bool, SemanticsError> {
    Ok(find_countermodel(f, n_max)?.is_none())
}
