use std::collections::BTreeMap;

use proptest::prelude::*;

use chw_core::gen::Gen;
use chw_core::proof::{parse_sequent, proof_to_term, search_cutfree};
use chw_core::syntax::{parse_judgement, parse_term, substitute, Term, Type};
use chw_core::typing::{infer_principal_type, typecheck_linear, typecheck_stlc};

/// Free occurrences of each variable, counted without the library's helpers.
fn count_free(t: &Term, bound: &mut Vec<String>, out: &mut BTreeMap<String, usize>) {
    match t {
        Term::Var(x) => {
            if !bound.contains(x) {
                *out.entry(x.clone()).or_default() += 1;
            }
        }
        Term::Lam(x, body) => {
            bound.push(x.clone());
            count_free(body, bound, out);
            bound.pop();
        }
        Term::LetTensor { left, right, scrutinee, body } => {
            count_free(scrutinee, bound, out);
            bound.push(left.clone());
            bound.push(right.clone());
            count_free(body, bound, out);
            bound.truncate(bound.len() - 2);
        }
        Term::LetWith { binder, scrutinee, body, .. } => {
            count_free(scrutinee, bound, out);
            bound.push(binder.clone());
            count_free(body, bound, out);
            bound.pop();
        }
        other => {
            for c in other.children() {
                count_free(c, bound, out);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn weakening_is_admissible(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let ctx = g.context(2, 1);
        let (t, ty) = g.typed_term(&ctx, 5);
        let mut wider = ctx.clone();
        wider.push(("fresh".into(), g.ty(2)));
        prop_assert!(typecheck_stlc(&wider, &t, &ty).is_ok());
    }

    #[test]
    fn cut_is_admissible(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let ctx = g.context(2, 1);
        let (t, a) = g.typed_term(&ctx, 4);
        let mut inner = ctx.clone();
        inner.push(("hole".into(), a));
        let (u, b) = g.typed_term(&inner, 4);
        let s = substitute(&u, &t, "hole");
        prop_assert!(typecheck_stlc(&ctx, &s, &b).is_ok(), "{} in {}", t, u);
    }

    #[test]
    fn principal_types_instantiate(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (t, _) = g.typed_term(&Vec::new(), 5);
        let s = infer_principal_type(&t).unwrap();
        for _ in 0..50 {
            let ground: BTreeMap<u32, Type> = s.vars().into_iter().map(|v| (v, g.ty(2))).collect();
            let inst = s.map_vars(&|v| ground.get(&v).cloned());
            prop_assert!(typecheck_stlc(&Vec::new(), &t, &inst).is_ok(), "{} : {:?}", t, inst);
        }
    }
}

#[test]
fn linear_terms_use_each_variable_once() {
    let corpus = [
        "A |- A",
        "A -o B, A |- B",
        "A -o B, B -o C |- A -o C",
        "A (x) B |- B (x) A",
        "A (x) (B (x) C) |- (A (x) B) (x) C",
        "A, B, C |- (C (x) A) (x) B",
        "A & B |- B & A",
        "(A -o B -o C) |- B -o A -o C",
        "A -o B, C -o D, A (x) C |- B (x) D",
    ];
    for src in corpus {
        let p = search_cutfree(&parse_sequent(src).unwrap(), 8).unwrap().unwrap();
        let (ctx, t, ty) = proof_to_term(&p).unwrap();
        typecheck_linear(&ctx, &t, &ty).unwrap();
        let mut counts = BTreeMap::new();
        count_free(&t, &mut Vec::new(), &mut counts);
        if src.contains('&') {
            // additive pairs share their context; every variable still occurs
            assert!(ctx.iter().all(|(x, _)| counts.get(x).copied().unwrap_or(0) >= 1), "{src}");
            continue;
        }
        for (x, _) in &ctx {
            assert_eq!(counts.get(x), Some(&1), "{x} in {t} ({src})");
        }
    }
}

#[test]
fn linear_checker_rejects_copying_and_dropping() {
    for src in [r"x : a |- x * x : a (x) a", r"x : a, y : b |- x : a", r"f : a -o a -o b, x : a |- f x x : b"] {
        let j = parse_judgement(src).unwrap();
        assert!(typecheck_linear(&j.context, &j.term, &j.ty).is_err(), "{src}");
    }
}

#[test]
fn self_application_has_no_type() {
    for src in [r"\x. x x", r"\f. (\x. f (x x)) (\x. f (x x))", r"\x. <x, x> x"] {
        assert!(infer_principal_type(&parse_term(src).unwrap()).is_err(), "{src}");
    }
}
