//! Herbrand proofs for classical first-order logic in negation normal form:
//! certificates and their checker, the one-sided sequent calculus GS with a
//! bounded prover, and a constructive translation from GS proofs to
//! Herbrand proofs.

pub mod alpha;
pub mod gs;
pub mod herbrand;
pub mod position;
pub mod prenex;
pub mod propositional;
pub mod semantics;
pub mod signature;
pub mod syntax;
pub mod text;
pub mod translate;

pub use gs::{check_gs, search_gs, ContractionPolicy, GsProof, Rule, SearchBounds, SearchOutcome};
pub use herbrand::{check_herbrand, HerbrandProof, WitnessingSubstitution};
pub use prenex::{Binder, PrenexFormula};
pub use signature::Signature;
pub use syntax::{Atom, Formula, Quantifier, Sequent, Term, Var};
pub use translate::translate;
