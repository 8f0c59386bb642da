//! Addresses of subformula occurrences inside formulas and sequents.

use std::fmt;

use thiserror::Error;

use crate::syntax::{Formula, Sequent};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Step {
    /// Selects a sequent member; only legal as the first step.
    Member(usize),
    Left,
    Right,
    /// Descends into a quantifier body.
    Under,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PositionPath(pub Vec<Step>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("position {path} does not resolve: {reason}")]
pub struct PathError {
    pub path: String,
    pub reason: &'static str,
}

impl PositionPath {
    pub fn member(i: usize) -> Self {
        PositionPath(vec![Step::Member(i)])
    }

    pub fn child(&self, step: Step) -> Self {
        let mut steps = self.0.clone();
        steps.push(step);
        PositionPath(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    fn err(&self, reason: &'static str) -> PathError {
        PathError { path: self.to_string(), reason }
    }
}

impl fmt::Display for PositionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("@")?;
        for s in &self.0 {
            match s {
                Step::Member(i) => write!(f, "{i}")?,
                Step::Left => f.write_str(".L")?,
                Step::Right => f.write_str(".R")?,
                Step::Under => f.write_str(".Q")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PositionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn descend(f: &Formula, step: Step) -> Option<&Formula> {
    match (f, step) {
        (Formula::And(a, _) | Formula::Or(a, _), Step::Left) => Some(a),
        (Formula::And(_, b) | Formula::Or(_, b), Step::Right) => Some(b),
        (Formula::Forall(_, b) | Formula::Exists(_, b), Step::Under) => Some(b),
        _ => None,
    }
}

/// Subformula of `f` at the given formula-level steps.
pub fn formula_at<'a>(f: &'a Formula, steps: &[Step]) -> Option<&'a Formula> {
    steps.iter().try_fold(f, |g, s| descend(g, *s))
}

/// Replaces the subformula at `steps` with `new`.
pub fn replace_in_formula(f: &Formula, steps: &[Step], new: Formula) -> Option<Formula> {
    let Some((first, rest)) = steps.split_first() else {
        return Some(new);
    };
    Some(match (f, first) {
        (Formula::And(a, b), Step::Left) => Formula::and(replace_in_formula(a, rest, new)?, (**b).clone()),
        (Formula::And(a, b), Step::Right) => Formula::and((**a).clone(), replace_in_formula(b, rest, new)?),
        (Formula::Or(a, b), Step::Left) => Formula::or(replace_in_formula(a, rest, new)?, (**b).clone()),
        (Formula::Or(a, b), Step::Right) => Formula::or((**a).clone(), replace_in_formula(b, rest, new)?),
        (Formula::Forall(x, b), Step::Under) => {
            Formula::Forall(x.clone(), Box::new(replace_in_formula(b, rest, new)?))
        }
        (Formula::Exists(x, b), Step::Under) => {
            Formula::Exists(x.clone(), Box::new(replace_in_formula(b, rest, new)?))
        }
        _ => return None,
    })
}

impl Sequent {
    pub fn at(&self, path: &PositionPath) -> Result<&Formula, PathError> {
        let Some((Step::Member(i), rest)) = path.0.split_first() else {
            return Err(path.err("path must start with a member step"));
        };
        let member = self.0.get(*i).ok_or_else(|| path.err("member index out of range"))?;
        formula_at(member, rest).ok_or_else(|| path.err("step not legal at this node"))
    }

    pub fn replace_at(&self, path: &PositionPath, new: Formula) -> Result<Sequent, PathError> {
        let Some((Step::Member(i), rest)) = path.0.split_first() else {
            return Err(path.err("path must start with a member step"));
        };
        let member = self.0.get(*i).ok_or_else(|| path.err("member index out of range"))?;
        let replaced =
            replace_in_formula(member, rest, new).ok_or_else(|| path.err("step not legal at this node"))?;
        let mut members = self.0.clone();
        members[*i] = replaced;
        Ok(Sequent(members))
    }

    /// Paths of every subformula occurrence, members first, pre-order.
    pub fn positions(&self) -> Vec<PositionPath> {
        fn walk(f: &Formula, path: PositionPath, out: &mut Vec<PositionPath>) {
            out.push(path.clone());
            match f {
                Formula::And(a, b) | Formula::Or(a, b) => {
                    walk(a, path.child(Step::Left), out);
                    walk(b, path.child(Step::Right), out);
                }
                Formula::Forall(_, b) | Formula::Exists(_, b) => walk(b, path.child(Step::Under), out),
                _ => {}
            }
        }
        let mut out = Vec::new();
        for (i, m) in self.0.iter().enumerate() {
            walk(m, PositionPath::member(i), &mut out);
        }
        out
    }
}
