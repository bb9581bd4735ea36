use proptest::prelude::*;

use chw_core::gen::Gen;
use chw_core::proof::{
    check_proof, cut_nd, embed_intuitionistic, embed_proof, parse_formula, parse_proof, parse_sequent, print_proof,
    proof_to_term, search_cutfree, search_cutfree_in, term_to_proof, Formula, Sequent, System,
};
use chw_core::syntax::Context;
use chw_core::typing::typecheck_stlc;

fn atom() -> impl Strategy<Value = Formula> {
    prop::sample::select(vec!["A", "B", "C"]).prop_map(Formula::atom)
}

fn linear_formula() -> impl Strategy<Value = Formula> {
    atom().prop_recursive(2, 6, 2, |f| {
        prop_oneof![
            (f.clone(), f.clone()).prop_map(|(a, b)| Formula::tensor(a, b)),
            (f.clone(), f.clone()).prop_map(|(a, b)| Formula::lolli(a, b)),
            (f.clone(), f).prop_map(|(a, b)| Formula::with(a, b)),
        ]
    })
}

fn intuitionistic_formula() -> impl Strategy<Value = Formula> {
    atom().prop_recursive(2, 6, 2, |f| {
        prop_oneof![
            (f.clone(), f.clone()).prop_map(|(a, b)| Formula::conj(a, b)),
            (f.clone(), f).prop_map(|(a, b)| Formula::imp(a, b)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn found_linear_proofs_check(hyps in prop::collection::vec(linear_formula(), 0..3), concl in linear_formula()) {
        let s = Sequent::new(hyps, concl);
        if let Some(p) = search_cutfree_in(&s, System::Linear, 5).unwrap() {
            prop_assert!(check_proof(&p, System::Linear).is_ok());
            prop_assert!(p.is_cut_free());
            prop_assert_eq!(parse_proof(&print_proof(&p)).unwrap(), p);
        }
    }

    #[test]
    fn found_gentzen_proofs_check_and_embed(
        hyps in prop::collection::vec(intuitionistic_formula(), 0..3),
        concl in intuitionistic_formula(),
    ) {
        let s = Sequent::new(hyps, concl);
        if let Some(p) = search_cutfree_in(&s, System::Gentzen, 4).unwrap() {
            prop_assert!(check_proof(&p, System::Gentzen).is_ok());
            prop_assert!(p.is_cut_free());
            let q = embed_proof(&p).unwrap();
            prop_assert!(check_proof(&q, System::Linear).is_ok());
            prop_assert_eq!(&q.sequent, &embed_intuitionistic(&s));
        }
    }

    #[test]
    fn nd_weakening_and_cut(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let ctx = g.context(1, 1);
        let (t, a) = g.typed_term(&ctx, 4);
        let left = term_to_proof(&typecheck_stlc(&ctx, &t, &a).unwrap());
        prop_assert!(check_proof(&left, System::Nd).is_ok());
        let extra = Formula::from_type(&g.ty(1)).unwrap();
        for k in 0..=ctx.len() {
            let w = chw_core::proof::weaken_nd(&left, &extra, k);
            prop_assert!(check_proof(&w, System::Nd).is_ok());
            prop_assert_eq!(w.sequent.hyps.len(), ctx.len() + 1);
        }
        let mut inner: Context = vec![("hole".into(), a)];
        inner.extend(g.context(1, 1).into_iter().map(|(x, ty)| (format!("d{x}"), ty)));
        let (u, b) = g.typed_term(&inner, 4);
        let right = term_to_proof(&typecheck_stlc(&inner, &u, &b).unwrap());
        let cut = cut_nd(&left, &right).unwrap();
        prop_assert!(check_proof(&cut, System::Nd).is_ok());
        prop_assert_eq!(cut.sequent.hyps.len(), ctx.len() + inner.len() - 1);
    }
}

#[test]
fn exercise_sequents() {
    for src in [
        "|- (A => B) => ((B => C) => (A => C))",
        "|- (A => (A => B)) => (A => B)",
        "|- (C => A) => ((C => B) => (C => (A /\\ B)))",
        "|- (A => (B => C)) => ((A => B) => (A => C))",
    ] {
        let s = parse_sequent(src).unwrap();
        let p = search_cutfree(&s, 8).unwrap().expect(src);
        check_proof(&p, System::Gentzen).unwrap();
        let q = embed_proof(&p).unwrap();
        check_proof(&q, System::Linear).unwrap();
    }
}

#[test]
fn weakening_needs_resources() {
    let s = parse_sequent("|- A -o (B -o A)").unwrap();
    assert!(search_cutfree(&s, 8).unwrap().is_none());
    let s = parse_sequent("|- A => (B => A)").unwrap();
    assert!(search_cutfree(&s, 8).unwrap().is_some());
}

#[test]
fn nd_proofs_give_back_their_terms() {
    let mut g = Gen::new(9);
    for _ in 0..50 {
        let ctx = g.context(1, 1);
        let (t, ty) = g.typed_term(&ctx, 4);
        let p = term_to_proof(&typecheck_stlc(&ctx, &t, &ty).unwrap());
        let (ctx2, t2, ty2) = proof_to_term(&p).unwrap();
        assert_eq!(ty2, ty);
        assert_eq!(ctx2.iter().map(|(_, a)| a).collect::<Vec<_>>(), ctx.iter().map(|(_, a)| a).collect::<Vec<_>>());
        typecheck_stlc(&ctx2, &t2, &ty2).unwrap();
    }
}

#[test]
fn malformed_proofs_are_rejected() {
    let bad = "(tensor-r (seq (hyps A) (tensor A A)) (id (seq (hyps A) A)) (id (seq (hyps A) A)))";
    let p = parse_proof(bad).unwrap();
    assert!(check_proof(&p, System::Linear).is_err());
    assert!(parse_proof("(id (seq (hyps A) A)").is_err());
    assert!(parse_formula("A -o").is_err());
}
