//! Valid sequents with search bounds that suffice for the FULL policy.

use herbrand_core::text::{parse_sequent_document, SequentDocument};
use herbrand_core::SearchBounds;

const HEADER: &str = "rel P/1\nrel Q/1\nrel R/2\nrel p/0\nrel q/0\nfun c/0\nfun f/1\n";

pub struct Case {
    pub name: &'static str,
    pub body: &'static str,
    pub bounds: SearchBounds,
}

const fn case(name: &'static str, body: &'static str, depth: usize, term_depth: usize) -> Case {
    Case { name, body, bounds: SearchBounds { depth, term_depth } }
}

pub const CASES: &[Case] = &[
    case("drinker", "|- exists x. (~P(x) \\/ forall y. P(y))", 8, 1),
    case("drinker-dual", "|- exists x. (P(x) \\/ forall y. ~P(y))", 8, 1),
    case("buss", "|- (forall x. P(x)) /\\ (forall x. Q(x)), ((exists x. ~P(x)) \\/ (exists x. ~Q(x))) /\\ ((exists x. ~P(x)) \\/ (exists x. ~Q(x)))", 12, 1),
    case("axiom", "|- P(c), ~P(c)", 2, 0),
    case("excluded-middle-closed", "|- (forall x. P(x)) \\/ (exists y. ~P(y))", 4, 0),
    case("swap-quantifiers", "|- (forall x. exists y. ~R(x, y)) \\/ (forall y. exists x. R(x, y))", 8, 0),
    case("skolem-dual", "|- (exists x. forall y. ~R(x, y)) \\/ (forall x. exists y. R(x, y))", 8, 0),
    case("prenex-drinker", "|- exists x. forall y. (~P(x) \\/ P(y))", 8, 1),
    case("prenex-reflexive", "|- exists x. exists y. (~R(x, y) \\/ R(y, x))", 6, 0),
    case("prenex-copy", "|- forall x. exists y. (~P(x) \\/ P(y))", 6, 0),
    case("prenex-alternating", "|- forall x. exists y. forall z. exists w. (~R(x, z) \\/ R(y, w))", 10, 0),
    case("successor-chain", "|- exists x. (~P(f(x)) \\/ P(x))", 8, 1),
    case("conjunction-of-universals", "|- (forall x. P(x) /\\ Q(x)), (exists x. ~P(x)), (exists x. ~Q(x))", 8, 0),
    case("disjunction-complement", "|- (exists x. ~P(x) /\\ ~Q(x)) \\/ (forall x. P(x) \\/ Q(x))", 8, 0),
    case("medial-shape", "|- ((exists x. ~P(x)) /\\ (exists x. ~Q(x))) \\/ ((forall x. P(x)) \\/ (forall x. Q(x)))", 10, 0),
    case("propositional", "|- (p /\\ q) \\/ ~p \\/ ~q", 4, 0),
    case("weaken-needs-constant", "|- p \\/ ~p, exists x. P(x)", 4, 0),
    case("vacuous-exists", "|- exists x. (q \\/ ~q)", 4, 0),
    case("constant-witness", "|- exists x. ((~P(x) \\/ P(c)) /\\ (~Q(x) \\/ Q(c)))", 8, 0),
    case("nested-and-or", "|- (exists x. ~P(x)) \\/ ((forall y. P(y)) /\\ ((exists z. ~Q(z)) \\/ (forall w. Q(w))))", 10, 0),
    case("two-instances", "|- exists x. (~P(x) /\\ ~Q(x)) \\/ (exists x. P(x)) \\/ (forall x. Q(x) \\/ ~Q(x))", 10, 0),
    case("two-drinkers", "|- (exists x. (~P(x) \\/ forall y. P(y))) /\\ (exists x. (~Q(x) \\/ forall y. Q(y)))", 10, 1),
    case("successor-forward", "|- exists x. (~P(x) \\/ P(f(x)))", 8, 1),
];

impl Case {
    pub fn document(&self) -> SequentDocument {
        parse_sequent_document(&format!("{HEADER}{}", self.body))
            .unwrap_or_else(|e| panic!("{}: {e}", self.name))
    }
}
