//! First-order syntax in negation normal form.
//!
//! Negation is only ever applied to atoms, so it is part of the data type
//! ([`Formula::NegAtom`]) rather than a connective. The dual of an arbitrary
//! formula is computed with [`Formula::negate`].

use std::collections::BTreeSet;
use std::fmt;

/// A variable name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub String);

impl Var {
    pub fn new(name: impl Into<String>) -> Self {
        Var(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<String> for Var {
    fn from(s: String) -> Self {
        Var(s)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var(s.to_string())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    /// Function application; constants are applications with no arguments.
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(Var::new(name))
    }

    pub fn constant(name: &str) -> Self {
        Term::App(name.to_string(), Vec::new())
    }

    pub fn app(f: &str, args: Vec<Term>) -> Self {
        Term::App(f.to_string(), args)
    }

    /// Nesting depth: variables and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| a.depth() + 1).max().unwrap_or(0),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn contains_var(&self, x: &Var) -> bool {
        match self {
            Term::Var(v) => v == x,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(x)),
        }
    }

    /// Replaces every occurrence of `x` with `t`. Terms have no binders.
    pub fn substitute(&self, x: &Var, t: &Term) -> Term {
        match self {
            Term::Var(v) if v == x => t.clone(),
            Term::Var(_) => self.clone(),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.substitute(x, t)).collect())
            }
        }
    }

    pub fn collect_functions(&self, out: &mut BTreeSet<(String, usize)>) {
        if let Term::App(f, args) = self {
            out.insert((f.clone(), args.len()));
            args.iter().for_each(|a| a.collect_functions(out));
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(name, args) if args.is_empty() => f.write_str(name),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A relation symbol applied to terms. Polarity lives in [`Formula`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub rel: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(rel: &str, args: Vec<Term>) -> Self {
        Atom { rel: rel.to_string(), args }
    }

    pub fn substitute(&self, x: &Var, t: &Term) -> Atom {
        Atom {
            rel: self.rel.clone(),
            args: self.args.iter().map(|a| a.substitute(x, t)).collect(),
        }
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rel)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn dual(self) -> Self {
        match self {
            Quantifier::Forall => Quantifier::Exists,
            Quantifier::Exists => Quantifier::Forall,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::Forall => "forall",
            Quantifier::Exists => "exists",
        }
    }
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A first-order formula in negation normal form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Atom),
    NegAtom(Atom),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
}

impl Formula {
    pub fn atom(rel: &str, args: Vec<Term>) -> Self {
        Formula::Atom(Atom::new(rel, args))
    }

    pub fn neg_atom(rel: &str, args: Vec<Term>) -> Self {
        Formula::NegAtom(Atom::new(rel, args))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn forall(x: &str, body: Formula) -> Self {
        Formula::Forall(Var::new(x), Box::new(body))
    }

    pub fn exists(x: &str, body: Formula) -> Self {
        Formula::Exists(Var::new(x), Box::new(body))
    }

    pub fn quantified(q: Quantifier, x: Var, body: Formula) -> Self {
        match q {
            Quantifier::Forall => Formula::Forall(x, Box::new(body)),
            Quantifier::Exists => Formula::Exists(x, Box::new(body)),
        }
    }

    /// Right-nested disjunction of a non-empty list.
    pub fn disjunction(mut parts: Vec<Formula>) -> Option<Formula> {
        let mut acc = parts.pop()?;
        while let Some(f) = parts.pop() {
            acc = Formula::or(f, acc);
        }
        Some(acc)
    }

    /// Returns the quantifier and bound variable if this is a quantifier node.
    pub fn as_quantifier(&self) -> Option<(Quantifier, &Var, &Formula)> {
        match self {
            Formula::Forall(x, b) => Some((Quantifier::Forall, x, b)),
            Formula::Exists(x, b) => Some((Quantifier::Exists, x, b)),
            _ => None,
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Formula::Atom(_) | Formula::NegAtom(_))
    }

    pub fn is_exists(&self) -> bool {
        matches!(self, Formula::Exists(..))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::NegAtom(_) => true,
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    /// The De Morgan dual, staying in negation normal form.
    pub fn negate(&self) -> Formula {
        match self {
            Formula::Atom(a) => Formula::NegAtom(a.clone()),
            Formula::NegAtom(a) => Formula::Atom(a.clone()),
            Formula::And(a, b) => Formula::or(a.negate(), b.negate()),
            Formula::Or(a, b) => Formula::and(a.negate(), b.negate()),
            Formula::Forall(x, b) => Formula::Exists(x.clone(), Box::new(b.negate())),
            Formula::Exists(x, b) => Formula::Forall(x.clone(), Box::new(b.negate())),
        }
    }

    /// Depth as a tree, with literals at rank 0.
    pub fn rank(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::NegAtom(_) => 0,
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.rank().max(b.rank()),
            Formula::Forall(_, b) | Formula::Exists(_, b) => 1 + b.rank(),
        }
    }

    /// Number of nodes in the syntax tree (literals count as one node).
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::NegAtom(_) => 1,
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
            Formula::Forall(_, b) | Formula::Exists(_, b) => 1 + b.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Atom(a) | Formula::NegAtom(a) => {
                for t in &a.args {
                    for v in t.vars() {
                        if !bound.contains(&v) {
                            out.insert(v);
                        }
                    }
                }
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn bound_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.for_each_binder(&mut |_, x| {
            out.insert(x.clone());
        });
        out
    }

    /// `(free, bound)` variable sets.
    pub fn variables(&self) -> (BTreeSet<Var>, BTreeSet<Var>) {
        (self.free_vars(), self.bound_vars())
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_all_vars(&mut out);
        out
    }

    pub fn collect_all_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Atom(a) | Formula::NegAtom(a) => {
                a.args.iter().for_each(|t| t.collect_vars(out))
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_all_vars(out);
                b.collect_all_vars(out);
            }
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                out.insert(x.clone());
                b.collect_all_vars(out);
            }
        }
    }

    /// Visits binders in pre-order.
    pub fn for_each_binder(&self, f: &mut impl FnMut(Quantifier, &Var)) {
        match self {
            Formula::Atom(_) | Formula::NegAtom(_) => {}
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.for_each_binder(f);
                b.for_each_binder(f);
            }
            Formula::Forall(x, b) => {
                f(Quantifier::Forall, x);
                b.for_each_binder(f);
            }
            Formula::Exists(x, b) => {
                f(Quantifier::Exists, x);
                b.for_each_binder(f);
            }
        }
    }

    /// Visits literals left to right.
    pub fn for_each_literal(&self, f: &mut impl FnMut(bool, &Atom)) {
        match self {
            Formula::Atom(a) => f(true, a),
            Formula::NegAtom(a) => f(false, a),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.for_each_literal(f);
                b.for_each_literal(f);
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => b.for_each_literal(f),
        }
    }

    /// Relation symbols with arities.
    pub fn relations(&self) -> BTreeSet<(String, usize)> {
        let mut out = BTreeSet::new();
        self.for_each_literal(&mut |_, a| {
            out.insert((a.rel.clone(), a.args.len()));
        });
        out
    }

    /// Function symbols with arities.
    pub fn functions(&self) -> BTreeSet<(String, usize)> {
        let mut out = BTreeSet::new();
        self.for_each_literal(&mut |_, a| {
            a.args.iter().for_each(|t| t.collect_functions(&mut out));
        });
        out
    }

    /// Deletes every quantifier, keeping the propositional skeleton.
    pub fn erase_quantifiers(&self) -> Formula {
        match self {
            Formula::Atom(_) | Formula::NegAtom(_) => self.clone(),
            Formula::And(a, b) => Formula::and(a.erase_quantifiers(), b.erase_quantifiers()),
            Formula::Or(a, b) => Formula::or(a.erase_quantifiers(), b.erase_quantifiers()),
            Formula::Forall(_, b) | Formula::Exists(_, b) => b.erase_quantifiers(),
        }
    }

    /// Renames variable `from` to `to` everywhere, binders included.
    /// Only meaningful when `to` does not already occur.
    pub fn rename_everywhere(&self, from: &Var, to: &Var) -> Formula {
        let t = Term::Var(to.clone());
        let swap = |x: &Var| if x == from { to.clone() } else { x.clone() };
        match self {
            Formula::Atom(a) => Formula::Atom(a.substitute(from, &t)),
            Formula::NegAtom(a) => Formula::NegAtom(a.substitute(from, &t)),
            Formula::And(a, b) => {
                Formula::and(a.rename_everywhere(from, to), b.rename_everywhere(from, to))
            }
            Formula::Or(a, b) => {
                Formula::or(a.rename_everywhere(from, to), b.rename_everywhere(from, to))
            }
            Formula::Forall(x, b) => {
                Formula::Forall(swap(x), Box::new(b.rename_everywhere(from, to)))
            }
            Formula::Exists(x, b) => {
                Formula::Exists(swap(x), Box::new(b.rename_everywhere(from, to)))
            }
        }
    }

    /// Substitutes terms for variables in a quantifier-free formula.
    pub fn substitute_qf(&self, x: &Var, t: &Term) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(a.substitute(x, t)),
            Formula::NegAtom(a) => Formula::NegAtom(a.substitute(x, t)),
            Formula::And(a, b) => Formula::and(a.substitute_qf(x, t), b.substitute_qf(x, t)),
            Formula::Or(a, b) => Formula::or(a.substitute_qf(x, t), b.substitute_qf(x, t)),
            Formula::Forall(..) | Formula::Exists(..) => {
                panic!("substitute_qf called on a quantified formula")
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Prints in the concrete syntax accepted by [`crate::text::parse_formula`].
///
/// `/\` binds tighter than `\/`, both associate to the left, and a quantifier
/// body extends as far to the right as possible.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, Ctx::Top)
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Ctx {
    Top,
    OrLeft,
    OrRight,
    AndLeft,
    AndRight,
}

fn write_formula(f: &mut fmt::Formatter<'_>, phi: &Formula, ctx: Ctx) -> fmt::Result {
    let parens = match phi {
        Formula::Atom(_) | Formula::NegAtom(_) => false,
        Formula::Or(..) => !matches!(ctx, Ctx::Top | Ctx::OrLeft),
        Formula::And(..) => matches!(ctx, Ctx::AndRight),
        Formula::Forall(..) | Formula::Exists(..) => ctx != Ctx::Top,
    };
    if parens {
        f.write_str("(")?;
    }
    match phi {
        Formula::Atom(a) => write!(f, "{a}")?,
        Formula::NegAtom(a) => write!(f, "~{a}")?,
        Formula::Or(a, b) => {
            write_formula(f, a, Ctx::OrLeft)?;
            f.write_str(" \\/ ")?;
            write_formula(f, b, Ctx::OrRight)?;
        }
        Formula::And(a, b) => {
            write_formula(f, a, Ctx::AndLeft)?;
            f.write_str(" /\\ ")?;
            write_formula(f, b, Ctx::AndRight)?;
        }
        Formula::Forall(x, b) | Formula::Exists(x, b) => {
            let q = if matches!(phi, Formula::Forall(..)) { "forall" } else { "exists" };
            write!(f, "{q} {x}. ")?;
            write_formula(f, b, Ctx::Top)?;
        }
    }
    if parens {
        f.write_str(")")?;
    }
    Ok(())
}

/// A one-sided sequent: an ordered list of formulas read disjunctively.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Sequent(pub Vec<Formula>);

impl Sequent {
    pub fn new(members: Vec<Formula>) -> Self {
        Sequent(members)
    }

    pub fn members(&self) -> &[Formula] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The right-nested disjunction of the members, or `None` when empty.
    pub fn disjunction(&self) -> Option<Formula> {
        Formula::disjunction(self.0.clone())
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        self.0.iter().flat_map(|f| f.free_vars()).collect()
    }

    pub fn bound_vars(&self) -> BTreeSet<Var> {
        self.0.iter().flat_map(|f| f.bound_vars()).collect()
    }

    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.0.iter().for_each(|f| f.collect_all_vars(&mut out));
        out
    }

    pub fn functions(&self) -> BTreeSet<(String, usize)> {
        self.0.iter().flat_map(|f| f.functions()).collect()
    }

    pub fn relations(&self) -> BTreeSet<(String, usize)> {
        self.0.iter().flat_map(|f| f.relations()).collect()
    }

    /// Universal closure of the member disjunction.
    pub fn closed_disjunction(&self) -> Option<Formula> {
        let body = self.disjunction()?;
        Some(
            self.free_vars()
                .into_iter()
                .rev()
                .fold(body, |acc, v| Formula::Forall(v, Box::new(acc))),
        )
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|-")?;
        for (i, m) in self.0.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl From<Vec<Formula>> for Sequent {
    fn from(v: Vec<Formula>) -> Self {
        Sequent(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: Term) -> Formula {
        Formula::atom("P", vec![t])
    }

    #[test]
    fn negate_examples() {
        let c = Term::constant("c");
        assert_eq!(p(c.clone()).negate(), Formula::neg_atom("P", vec![c]));
        let x = Term::var("x");
        let all = Formula::forall("x", p(x.clone()));
        assert_eq!(all.negate(), Formula::exists("x", Formula::neg_atom("P", vec![x.clone()])));
        let f = Formula::exists("x", Formula::and(p(x.clone()), Formula::atom("Q", vec![x])));
        assert_eq!(f.negate().negate(), f);
    }

    #[test]
    fn rank_examples() {
        let c = Term::constant("c");
        let x = Term::var("x");
        assert_eq!(p(c.clone()).rank(), 0);
        assert_eq!(Formula::or(p(c.clone()), Formula::atom("Q", vec![c])).rank(), 1);
        let f = Formula::forall("x", Formula::or(p(x.clone()), Formula::atom("Q", vec![x])));
        assert_eq!(f.rank(), 2);
    }

    #[test]
    fn variable_examples() {
        let f = Formula::forall("x", Formula::atom("P", vec![Term::var("x"), Term::var("y")]));
        let (free, bound) = f.variables();
        assert_eq!(free, BTreeSet::from([Var::from("y")]));
        assert_eq!(bound, BTreeSet::from([Var::from("x")]));

        let (free, bound) = p(Term::constant("c")).variables();
        assert!(free.is_empty() && bound.is_empty());

        let f = Formula::or(
            Formula::exists("x", p(Term::var("x"))),
            Formula::atom("Q", vec![Term::var("x")]),
        );
        let (free, bound) = f.variables();
        assert_eq!(free, BTreeSet::from([Var::from("x")]));
        assert_eq!(bound, BTreeSet::from([Var::from("x")]));
    }

    #[test]
    fn display_parenthesizes_for_reparse() {
        let x = Term::var("x");
        let f = Formula::or(
            Formula::forall("x", p(x.clone())),
            Formula::or(p(x.clone()), Formula::and(p(x.clone()), Formula::or(p(x.clone()), p(x)))),
        );
        assert_eq!(
            f.to_string(),
            "(forall x. P(x)) \\/ (P(x) \\/ P(x) /\\ (P(x) \\/ P(x)))"
        );
    }
}
