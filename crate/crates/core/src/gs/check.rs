use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::{GsProof, Rule};
use crate::alpha::{alpha_eq, alpha_eq_seq, substitute};
use crate::syntax::{Formula, Term, Var};

/// Address of a proof node: child indices from the root.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NodeId(pub Vec<usize>);

impl NodeId {
    /// True iff `self` lies strictly above `other` in the tree.
    pub fn is_strictly_above(&self, other: &NodeId) -> bool {
        self.0.len() > other.0.len() && self.0.starts_with(&other.0)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for i in &self.0 {
            write!(f, ".{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GsError {
    #[error("{node}: rule does not match its schema: {reason}")]
    RuleMismatch { node: NodeId, reason: String },
    #[error("{node}: eigenvariable {var} is free in the conclusion")]
    EigenvariableFreeInContext { node: NodeId, var: Var },
    #[error("eigenvariable {var} is bound by more than one rule ({first} and {second})")]
    EigenvariableReused { var: Var, first: NodeId, second: NodeId },
    #[error("eigenvariable {var} of {binder} occurs at {node}, outside the subproof above it")]
    EigenvariableEscapesSubproof { var: Var, binder: NodeId, node: NodeId },
    #[error("variable {var} occurs both bound and free in the proof")]
    BarendregtViolation { var: Var },
}

impl GsError {
    pub fn kind(&self) -> &'static str {
        match self {
            GsError::RuleMismatch { .. } => "rule-mismatch",
            GsError::EigenvariableFreeInContext { .. } => "eigenvariable-free-in-context",
            GsError::EigenvariableReused { .. } => "eigenvariable-reused",
            GsError::EigenvariableEscapesSubproof { .. } => "eigenvariable-escapes-subproof",
            GsError::BarendregtViolation { .. } => "barendregt-violation",
        }
    }
}

/// Switches for the variable conditions; only for demonstrating that each
/// one is necessary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GsCheckOptions {
    pub eigenvariable_condition: bool,
    pub barendregt: bool,
}

impl Default for GsCheckOptions {
    fn default() -> Self {
        GsCheckOptions { eigenvariable_condition: true, barendregt: true }
    }
}

pub fn check_gs(p: &GsProof) -> Result<(), GsError> {
    check_gs_with(p, &GsCheckOptions::default())
}

pub fn check_gs_with(p: &GsProof, opts: &GsCheckOptions) -> Result<(), GsError> {
    let mut result = Ok(());
    p.walk(&mut |id, node| {
        if result.is_ok() {
            result = check_node(id, node, opts);
        }
    });
    result?;
    check_eigenvariables(p)?;
    if opts.barendregt {
        check_barendregt(p)?;
    }
    Ok(())
}

fn mismatch(node: &NodeId, reason: impl Into<String>) -> GsError {
    GsError::RuleMismatch { node: node.clone(), reason: reason.into() }
}

fn check_node(id: &NodeId, node: &GsProof, opts: &GsCheckOptions) -> Result<(), GsError> {
    if node.children.len() != node.rule.arity() {
        return Err(mismatch(
            id,
            format!("{} needs {} premise(s), found {}", node.rule.name(), node.rule.arity(), node.children.len()),
        ));
    }
    let concl = node.conclusion.members();
    let premise = |i: usize| node.children[i].conclusion.members();
    let n = concl.len();
    let split_last = || {
        concl
            .split_last()
            .ok_or_else(|| mismatch(id, "empty conclusion"))
    };
    match &node.rule {
        Rule::Ax => {
            let ok = match concl {
                [Formula::Atom(a), Formula::NegAtom(b)] | [Formula::NegAtom(b), Formula::Atom(a)] => a == b,
                _ => false,
            };
            if !ok {
                return Err(mismatch(id, "axiom must be exactly an atom and its negation"));
            }
        }
        Rule::OrR => {
            let (last, ctx) = split_last()?;
            let Formula::Or(a, b) = last else {
                return Err(mismatch(id, "last member is not a disjunction"));
            };
            let mut expected = ctx.to_vec();
            expected.push((**a).clone());
            expected.push((**b).clone());
            if !alpha_eq_seq(&expected, premise(0)) {
                return Err(mismatch(id, "premise is not Γ, A, B"));
            }
        }
        Rule::AndR => {
            let (last, ctx) = split_last()?;
            let Formula::And(a, b) = last else {
                return Err(mismatch(id, "last member is not a conjunction"));
            };
            let (left, right) = (premise(0), premise(1));
            if left.is_empty() || right.is_empty() || left.len() - 1 + right.len() - 1 != ctx.len() {
                return Err(mismatch(id, "premise sizes do not partition the context"));
            }
            let split = left.len() - 1;
            let (gamma, delta) = ctx.split_at(split);
            let ok = alpha_eq_seq(&left[..split], gamma)
                && alpha_eq(&left[split], a)
                && alpha_eq_seq(&right[..right.len() - 1], delta)
                && alpha_eq(&right[right.len() - 1], b);
            if !ok {
                return Err(mismatch(id, "premises are not Γ, A and Γ', B"));
            }
        }
        Rule::ContractR => {
            let (last, _) = split_last()?;
            let mut expected = concl.to_vec();
            expected.push(last.clone());
            if !alpha_eq_seq(&expected, premise(0)) {
                return Err(mismatch(id, "premise is not Γ, A, A"));
            }
        }
        Rule::WeakenR => {
            let (_, ctx) = split_last()?;
            if !alpha_eq_seq(ctx, premise(0)) {
                return Err(mismatch(id, "premise is not Γ"));
            }
        }
        Rule::ExistsR { witness, index } => {
            let Some(Formula::Exists(y, body)) = concl.get(*index) else {
                return Err(mismatch(id, format!("member {index} is not existential")));
            };
            let mut expected = concl.to_vec();
            expected[*index] = substitute(body, y, witness);
            if !alpha_eq_seq(&expected, premise(0)) {
                return Err(mismatch(id, "premise is not Γ, A(t)"));
            }
        }
        Rule::ForallR { eigenvariable, index } => {
            let Some(Formula::Forall(x, body)) = concl.get(*index) else {
                return Err(mismatch(id, format!("member {index} is not universal")));
            };
            let mut expected = concl.to_vec();
            expected[*index] = substitute(body, x, &Term::Var(eigenvariable.clone()));
            if !alpha_eq_seq(&expected, premise(0)) {
                return Err(mismatch(id, "premise is not Γ, A(z)"));
            }
            if opts.eigenvariable_condition && node.conclusion.free_vars().contains(eigenvariable) {
                return Err(GsError::EigenvariableFreeInContext {
                    node: id.clone(),
                    var: eigenvariable.clone(),
                });
            }
        }
        Rule::ExchangeR { permutation } => {
            let prem = premise(0);
            let mut seen = vec![false; n];
            let is_perm = permutation.len() == n
                && prem.len() == n
                && permutation.iter().all(|&j| j < n && !std::mem::replace(&mut seen[j], true));
            if !is_perm {
                return Err(mismatch(id, "not a permutation of the premise"));
            }
            if !concl.iter().zip(permutation).all(|(f, &j)| alpha_eq(f, &prem[j])) {
                return Err(mismatch(id, "conclusion is not the permuted premise"));
            }
        }
    }
    Ok(())
}

/// Each eigenvariable is bound once and occurs only strictly above its rule.
/// Occurrences in the binding rule's own conclusion are the eigenvariable
/// condition, checked per node.
fn check_eigenvariables(p: &GsProof) -> Result<(), GsError> {
    let mut binders: BTreeMap<Var, NodeId> = BTreeMap::new();
    let mut order = Vec::new();
    let mut err = None;
    p.walk(&mut |id, node| {
        if let Rule::ForallR { eigenvariable, .. } = &node.rule {
            if let Some(first) = binders.get(eigenvariable) {
                err.get_or_insert(GsError::EigenvariableReused {
                    var: eigenvariable.clone(),
                    first: first.clone(),
                    second: id.clone(),
                });
            } else {
                binders.insert(eigenvariable.clone(), id.clone());
                order.push((eigenvariable.clone(), id.clone()));
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    p.walk(&mut |id, node| {
        if err.is_some() {
            return;
        }
        let free = node.conclusion.free_vars();
        for (z, binder) in &order {
            if id != binder && !id.is_strictly_above(binder) && free.contains(z) {
                err = Some(GsError::EigenvariableEscapesSubproof {
                    var: z.clone(),
                    binder: binder.clone(),
                    node: id.clone(),
                });
                return;
            }
        }
    });
    err.map_or(Ok(()), Err)
}

fn check_barendregt(p: &GsProof) -> Result<(), GsError> {
    let mut bound = BTreeSet::new();
    let mut free = BTreeSet::new();
    p.walk(&mut |_, node| {
        bound.extend(node.conclusion.bound_vars());
        free.extend(node.conclusion.free_vars());
        match &node.rule {
            Rule::ExistsR { witness, .. } => witness.collect_vars(&mut free),
            Rule::ForallR { eigenvariable, .. } => {
                free.insert(eigenvariable.clone());
            }
            _ => {}
        }
    });
    match bound.intersection(&free).next() {
        Some(v) => Err(GsError::BarendregtViolation { var: v.clone() }),
        None => Ok(()),
    }
}
