mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use herbrand_core::alpha::{alpha_eq, alpha_normalize, is_alpha_normal, substitute};
use herbrand_core::herbrand::is_strong_expansion;
use herbrand_core::prenex::{check_linearization, default_order, is_prenexification_of, prenexify};
use herbrand_core::propositional::is_tautology;
use herbrand_core::semantics::valid_up_to;
use herbrand_core::text::{
    certificate_from_json, certificate_to_json, parse_formula, parse_sequent, proof_from_json, proof_to_json,
};
use herbrand_core::translate::translate_with_constant;
use herbrand_core::{
    check_gs, check_herbrand, search_gs, Binder, ContractionPolicy, Formula, Quantifier, SearchBounds, Sequent,
    Signature, Term, Var,
};
use proptest::prelude::*;

fn sig() -> Signature {
    Signature::new(
        vec![("P".into(), 1), ("R".into(), 2), ("q".into(), 0)],
        vec![("c".into(), 0), ("f".into(), 1)],
    )
    .unwrap()
}

fn arb_var() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("x"), Just("y"), Just("z")]
}

fn arb_term() -> impl Strategy<Value = Term> {
    prop_oneof![
        3 => arb_var().prop_map(Term::var),
        1 => Just(Term::constant("c")),
        1 => arb_var().prop_map(|v| Term::app("f", vec![Term::var(v)])),
    ]
}

fn arb_literal() -> impl Strategy<Value = Formula> {
    prop_oneof![
        arb_term().prop_map(|t| Formula::atom("P", vec![t])),
        arb_term().prop_map(|t| Formula::neg_atom("P", vec![t])),
        (arb_term(), arb_term()).prop_map(|(s, t)| Formula::atom("R", vec![s, t])),
        (arb_term(), arb_term()).prop_map(|(s, t)| Formula::neg_atom("R", vec![s, t])),
        Just(Formula::atom("q", vec![])),
        Just(Formula::neg_atom("q", vec![])),
    ]
}

fn arb_formula() -> impl Strategy<Value = Formula> {
    arb_literal().prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (arb_var(), inner.clone()).prop_map(|(v, b)| Formula::forall(v, b)),
            (arb_var(), inner).prop_map(|(v, b)| Formula::exists(v, b)),
        ]
    })
}

fn arb_qf() -> impl Strategy<Value = Formula> {
    arb_literal().prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::or(a, b)),
        ]
    })
}

/// Enclosing binders of each quantifier occurrence, computed directly.
fn nesting(s: &Sequent) -> Vec<(Binder, Vec<Var>)> {
    fn go(f: &Formula, stack: &mut Vec<Var>, out: &mut Vec<(Binder, Vec<Var>)>) {
        match f {
            Formula::Atom(_) | Formula::NegAtom(_) => {}
            Formula::And(a, b) | Formula::Or(a, b) => {
                go(a, stack, out);
                go(b, stack, out);
            }
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                let q = if matches!(f, Formula::Forall(..)) { Quantifier::Forall } else { Quantifier::Exists };
                out.push((Binder::new(q, x.clone()), stack.clone()));
                stack.push(x.clone());
                go(b, stack, out);
                stack.pop();
            }
        }
    }
    let mut out = Vec::new();
    for m in s.members() {
        go(m, &mut Vec::new(), &mut out);
    }
    out
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

fn count_binders(f: &Formula) -> usize {
    let mut n = 0;
    f.for_each_binder(&mut |_, _| n += 1);
    n
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn negation_is_an_involution(f in arb_formula()) {
        prop_assert_eq!(f.negate().negate(), f);
    }

    #[test]
    fn negation_flips_truth(f in arb_qf()) {
        let keys = atom_keys(&f);
        for v in assignments(&keys) {
            prop_assert_eq!(eval_qf(&f.negate(), &v), !eval_qf(&f, &v));
        }
    }

    #[test]
    fn alpha_normalize_renames_only_binders(f in arb_formula()) {
        let reserved: BTreeSet<Var> = [Var::new("w"), Var::new("x")].into();
        let g = alpha_normalize(&f, &reserved);
        prop_assert!(is_alpha_normal(&g));
        prop_assert!(alpha_eq(&f, &g));
        prop_assert_eq!(g.free_vars(), f.free_vars());
        prop_assert!(g.bound_vars().is_disjoint(&reserved));
        prop_assert_eq!(g.erase_quantifiers().size(), f.erase_quantifiers().size());
    }

    #[test]
    fn substitution_free_variables(f in arb_formula(), x in arb_var(), t in arb_term()) {
        let x = Var::new(x);
        let g = substitute(&f, &x, &t);
        let mut expected = f.free_vars();
        if expected.remove(&x) {
            expected.extend(t.vars());
        }
        prop_assert_eq!(g.free_vars(), expected);
        if !f.free_vars().contains(&x) {
            prop_assert!(alpha_eq(&f, &g));
        }
    }

    #[test]
    fn substitution_commutes_with_negation(f in arb_formula(), x in arb_var(), t in arb_term()) {
        let x = Var::new(x);
        prop_assert!(alpha_eq(&substitute(&f.negate(), &x, &t), &substitute(&f, &x, &t).negate()));
    }

    #[test]
    fn linearizations_are_exactly_the_nesting_respecting_orders(a in arb_formula(), b in arb_formula()) {
        let s = Sequent(vec![a, b]);
        let s = Sequent(vec![alpha_normalize(&s.disjunction().unwrap(), &BTreeSet::new())]);
        prop_assume!(count_binders(&s.0[0]) <= 4);
        let occurrences = nesting(&s);
        let binders: Vec<Binder> = occurrences.iter().map(|(b, _)| b.clone()).collect();
        prop_assert_eq!(&default_order(&s), &binders);
        for order in permutations(&binders) {
            let index = |v: &Var| order.iter().position(|b| &b.var == v).unwrap();
            let respects = occurrences
                .iter()
                .all(|(b, enclosing)| enclosing.iter().all(|e| index(e) < index(&b.var)));
            prop_assert_eq!(check_linearization(&s, &order).is_ok(), respects, "order {:?}", order);
            if respects {
                let p = prenexify(&s, &order).unwrap();
                prop_assert!(is_prenexification_of(&s, &p));
                prop_assert_eq!(p.matrix, s.0[0].erase_quantifiers());
            }
        }
    }

    #[test]
    fn tautology_ignores_disjunction_grouping(a in arb_qf(), b in arb_qf(), c in arb_qf()) {
        let left = Formula::or(Formula::or(a.clone(), b.clone()), c.clone());
        let right = Formula::or(a, Formula::or(b, c));
        let t = is_tautology(&left).unwrap();
        prop_assert_eq!(is_tautology(&right).unwrap(), t);
        prop_assert_eq!(brute_tautology(&left), t);
    }

    #[test]
    fn formulas_print_and_parse_back(f in arb_formula()) {
        prop_assert_eq!(parse_formula(&f.to_string(), &sig()).unwrap(), f);
    }

    #[test]
    fn sequents_print_and_parse_back(a in arb_formula(), b in arb_formula()) {
        let s = Sequent(vec![a, b]);
        prop_assert_eq!(parse_sequent(&s.to_string(), &sig()).unwrap(), s);
    }

    #[test]
    fn expansions_by_duplication_are_recognized(f in arb_formula(), picks in proptest::collection::vec(any::<prop::sample::Index>(), 0..3)) {
        let mut g = f.clone();
        let mut fresh = var_supply("v");
        for pick in picks {
            let options = duplicate_once(&g, &mut fresh);
            if options.is_empty() {
                break;
            }
            g = pick.get(&options).clone();
        }
        prop_assert!(is_strong_expansion(&f, &g));
        prop_assert!(expansion_oracle(&f, &g));
    }
}

fn small_sequent() -> impl Strategy<Value = Sequent> {
    prop_oneof![
        arb_formula().prop_map(|f| Sequent(vec![f])),
        arb_formula().prop_map(|f| Sequent(vec![f.negate(), f])),
        (arb_formula(), arb_formula()).prop_map(|(a, b)| Sequent(vec![a, b])),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn search_translate_and_check_agree(s in small_sequent()) {
        let bounds = SearchBounds { depth: 5, term_depth: 1 };
        let full = search_gs(&s, bounds, ContractionPolicy::Full);
        let restricted = search_gs(&s, bounds, ContractionPolicy::Restricted);
        if restricted.is_proved() {
            prop_assert!(full.is_proved(), "RESTRICTED proved what FULL could not");
        }
        for p in [full.proof(), restricted.proof()].into_iter().flatten() {
            prop_assert_eq!(check_gs(&p), Ok(()));
            let closed = p.conclusion.closed_disjunction().unwrap();
            prop_assert!(valid_up_to(&closed, 2).unwrap(), "proved but has a small countermodel");

            let (_, back) = proof_from_json(&proof_to_json(&sig(), &p)).unwrap();
            prop_assert_eq!(&back, &p);

            let h = translate_with_constant(&p, Term::constant("c")).unwrap();
            prop_assert_eq!(check_herbrand(&s, &h), Ok(()));
            let existentials = h.prenex.prefix.iter().filter(|b| b.q == Quantifier::Exists).count();
            prop_assert_eq!(h.witness.len(), existentials);

            let (_, back) = certificate_from_json(&certificate_to_json(Some(&sig()), &h), None).unwrap();
            prop_assert_eq!(back, h);
        }
    }
}

#[test]
fn nesting_helper_matches_a_known_case() {
    let s = parse_sequent("|- forall x. exists y. P(y), exists z. q", &sig()).unwrap();
    let got: BTreeMap<String, usize> =
        nesting(&s).into_iter().map(|(b, enc)| (b.var.to_string(), enc.len())).collect();
    assert_eq!(got, BTreeMap::from([("x".into(), 0), ("y".into(), 1), ("z".into(), 0)]));
}

#[test]
fn generated_sequents_are_often_provable() {
    use proptest::strategy::ValueTree;
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let bounds = SearchBounds { depth: 5, term_depth: 1 };
    let proved = (0..200)
        .filter(|_| {
            let s = small_sequent().new_tree(&mut runner).unwrap().current();
            search_gs(&s, bounds, ContractionPolicy::Full).is_proved()
        })
        .count();
    assert!(proved >= 20, "only {proved} of 200 generated sequents proved");
}
