use proptest::prelude::*;

use chw_core::syntax::term::{app, fst, lam, pair, snd, var};
use chw_core::syntax::{
    alpha_equal, free_vars, parse_judgement, parse_term, parse_type, substitute, swap_vars, term_to_string,
    type_to_string, Notation, Term,
};

const NAMES: [&str; 4] = ["x", "y", "z", "w"];

fn name() -> impl Strategy<Value = String> {
    prop::sample::select(&NAMES[..]).prop_map(str::to_string)
}

/// Untyped terms over four names.
fn term() -> impl Strategy<Value = Term> {
    name().prop_map(var).prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(f, a)| app(f, a)),
            (name(), inner.clone()).prop_map(|(x, b)| lam(x, b)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| pair(l, r)),
            inner.clone().prop_map(fst),
            inner.prop_map(snd),
        ]
    })
}

proptest! {
    #[test]
    fn alpha_is_reflexive(t in term()) {
        prop_assert!(alpha_equal(&t, &t));
    }

    #[test]
    fn alpha_equal_terms_share_free_variables(t in term(), x in name()) {
        // rename a binder and compare
        let fresh = "v";
        let u = lam(fresh, swap_vars(&t, &x, fresh));
        let l = lam(x, t);
        prop_assert!(alpha_equal(&l, &u));
        prop_assert_eq!(free_vars(&l), free_vars(&u));
    }

    #[test]
    fn substitution_does_not_capture(u in term(), t in term(), x in name()) {
        let s = substitute(&u, &t, &x);
        let mut allowed = free_vars(&u);
        allowed.remove(&x);
        allowed.extend(free_vars(&t));
        prop_assert!(free_vars(&s).is_subset(&allowed), "{} gives {}", u, s);
    }

    #[test]
    fn printing_roundtrips(t in term()) {
        for n in [Notation::Ascii, Notation::Unicode] {
            let shown = term_to_string(&t, n);
            let back = parse_term(&shown).unwrap();
            prop_assert_eq!(&back, &t);
            prop_assert_eq!(term_to_string(&back, n), shown);
        }
    }
}

#[test]
fn capture_is_avoided() {
    // (λy. x)[y/x] must not become λy. y
    let u = parse_term(r"\y. x").unwrap();
    let s = substitute(&u, &var("y"), "x");
    assert!(!alpha_equal(&s, &parse_term(r"\y. y").unwrap()));
    assert!(alpha_equal(&s, &parse_term(r"\v. y").unwrap()));
}

#[test]
fn golden_corpus_roundtrips() {
    let judgements = [
        r"\x. x : b -> b",
        r"f : b -> c, x : b |- f x : c",
        r"p : b * c |- <snd p, fst p> : c * b",
        r"x : a, y : b |- x * y : a (x) b",
        r"p : a (x) b |- let x * y = p in y * x : b (x) a",
        r"f : a -o b, x : a |- f x : b",
        r"|- \f. \x. f (f x) : (b -> b) -> b -> b",
    ];
    for src in judgements {
        let j = parse_judgement(src).unwrap();
        for n in [Notation::Ascii, Notation::Unicode] {
            let shown = chw_core::syntax::judgement_to_string(&j.context, &j.term, &j.ty, n);
            let again = parse_judgement(&shown).unwrap();
            assert_eq!(again, j, "{src}");
            assert_eq!(chw_core::syntax::judgement_to_string(&again.context, &again.term, &again.ty, n), shown);
        }
    }
    for src in ["b -> c -> b", "(b -> c) -> b", "b * c -> c", "a (x) b -o a & b", "!a -o a"] {
        let t = parse_type(src).unwrap();
        assert_eq!(type_to_string(&t, Notation::Ascii), src);
        let u = type_to_string(&t, Notation::Unicode);
        assert_eq!(parse_type(&u).unwrap(), t);
    }
}

#[test]
fn unicode_input_is_accepted() {
    assert_eq!(parse_term("λx. ⟨x, x⟩").unwrap(), parse_term(r"\x. <x, x>").unwrap());
    assert_eq!(parse_type("b → b × c").unwrap(), parse_type("b -> b * c").unwrap());
}
