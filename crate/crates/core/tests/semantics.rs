use proptest::prelude::*;

use chw_core::gen::Gen;
use chw_core::semantics::{
    context_obj, curry_naturality_sides, denote, eval_finset, eval_finset_capped, obj_of_type, substitution_sides,
    translate_stlc, tuple, Mor, Obj, RelMor, SemError, Sizes,
};
use chw_core::syntax::{parse_judgement, parse_term, Term, Type};
use chw_core::typing::typecheck_stlc;

fn sizes(b: usize, c: usize) -> Sizes {
    [("b".to_string(), b), ("c".to_string(), c)].into()
}

fn skip_overflow<T>(r: Result<T, SemError>) -> Option<T> {
    match r {
        Ok(x) => Some(x),
        Err(SemError::SizeOverflow { .. }) => None,
        Err(e) => panic!("{e}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn currying_is_natural(seed in any::<u64>(), b in 1usize..=3, c in 1usize..=3) {
        let mut g = Gen::new(seed);
        let gamma = g.context(1, 1);
        let delta = g.context(0, 1);
        let (t, ty) = g.typed_term(&gamma, 4);
        let head = &gamma[..gamma.len() - 1];
        let terms: Option<Vec<(Term, Type)>> =
            head.iter().map(|(_, a)| g.term(&delta, a, 3).map(|u| (u, a.clone()))).collect();
        if let Some(terms) = terms {
            let f = translate_stlc(&typecheck_stlc(&gamma, &t, &ty).unwrap()).unwrap();
            let h = tuple(&delta, &terms).unwrap();
            if let Some((lhs, rhs)) = skip_overflow(curry_naturality_sides(&f, &h, &sizes(b, c))) {
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn substitution_lemma(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let gamma = g.context(1, 1);
        let delta = g.context(1, 1);
        let (t, ty) = g.typed_term(&gamma, 4);
        let terms: Option<Vec<Term>> = gamma.iter().map(|(_, a)| g.term(&delta, a, 3)).collect();
        if let Some(terms) = terms {
            if let Some((lhs, rhs)) = skip_overflow(substitution_sides(&gamma, &t, &ty, &delta, &terms, &sizes(2, 2))) {
                prop_assert_eq!(lhs, rhs, "{}", t);
            }
        }
    }

    #[test]
    fn pairing_is_unique(seed in any::<u64>()) {
        // h = ⟨π1 ∘ h, π2 ∘ h⟩ for h into a product
        let mut g = Gen::new(seed);
        let ctx = g.context(1, 1);
        let (a, b) = (g.ty(1), g.ty(1));
        let Some(t) = g.term(&ctx, &Type::product(a.clone(), b.clone()), 4) else { return Ok(()) };
        let h = translate_stlc(&typecheck_stlc(&ctx, &t, &Type::product(a.clone(), b.clone())).unwrap()).unwrap();
        let (oa, ob) = (obj_of_type(&a).unwrap(), obj_of_type(&b).unwrap());
        let split = Mor::pair(
            Mor::compose(Mor::Proj1(oa.clone(), ob.clone()), h.clone()).unwrap(),
            Mor::compose(Mor::Proj2(oa, ob), h.clone()).unwrap(),
        ).unwrap();
        let s = sizes(2, 2);
        if let Some(x) = skip_overflow(eval_finset(&h, &s)) {
            prop_assert_eq!(x, eval_finset(&split, &s).unwrap());
        }
    }

    #[test]
    fn currying_is_unique(seed in any::<u64>()) {
        // Λ(ev ∘ (h × id)) = h for h into an exponential
        let mut g = Gen::new(seed);
        let ctx = g.context(1, 1);
        let (a, b) = (Type::base("b"), g.ty(1));
        let arrow = Type::arrow(a.clone(), b.clone());
        let Some(t) = g.term(&ctx, &arrow, 4) else { return Ok(()) };
        let h = translate_stlc(&typecheck_stlc(&ctx, &t, &arrow).unwrap()).unwrap();
        let (oa, ob) = (obj_of_type(&a).unwrap(), obj_of_type(&b).unwrap());
        let back = Mor::curry(
            Mor::compose(Mor::Ev(oa.clone(), ob), Mor::times(h.clone(), Mor::Id(oa))).unwrap(),
        ).unwrap();
        let s = sizes(2, 2);
        if let Some(x) = skip_overflow(eval_finset_capped(&h, &s, 100_000)) {
            prop_assert_eq!(x, eval_finset(&back, &s).unwrap());
        }
    }
}

#[test]
fn projections_and_evaluation_tables() {
    let s = sizes(2, 3);
    let j = parse_judgement(r"p : b * c |- fst p : b").unwrap();
    let t = denote(&j.context, &j.term, &j.ty, &s).unwrap();
    // context object 1 × (b × c): element (b, c) at 3b + c
    assert_eq!(t.table, vec![0, 0, 0, 1, 1, 1]);
    assert_eq!(context_obj(&j.context).unwrap(), Obj::prod(Obj::Unit, Obj::prod(Obj::Base("b".into()), Obj::Base("c".into()))));
}

/// Terms with distinct βη-normal forms at first-order types get distinct
/// tables at some size in {1, 2, 3}.
#[test]
fn distinct_normal_forms_are_separated() {
    let corpus = [
        (r"\x. \y. x", r"\x. \y. y", "b -> b -> b"),
        (r"\p. fst p", r"\p. snd p", "b * b -> b"),
        (r"\f. \x. f x", r"\f. \x. f (f x)", "(b -> b) -> b -> b"),
        (r"\f. \x. x", r"\f. \x. f x", "(b -> b) -> b -> b"),
        (r"\x. <x, x>", r"\x. <x, x>", "b -> b * b"),
        (r"\p. <snd p, fst p>", r"\p. p", "b * b -> b * b"),
    ];
    for (l, r, ty) in corpus {
        let ty = chw_core::syntax::parse_type(ty).unwrap();
        let (l, r) = (parse_term(l).unwrap(), parse_term(r).unwrap());
        let differ = (1..=3).any(|k| {
            let s = sizes(k, k);
            denote(&Vec::new(), &l, &ty, &s).unwrap() != denote(&Vec::new(), &r, &ty, &s).unwrap()
        });
        assert_eq!(differ, l != r, "{l} vs {r}");
    }
}

fn rel_sizes() -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (1..=3).flat_map(|a| (1..=3).flat_map(move |b| (1..=3).flat_map(move |c| (1..=3).map(move |d| (a, b, c, d)))))
}

#[test]
fn rel_coherence() {
    let id = RelMor::identity;
    for (a, b, c, d) in rel_sizes() {
        // pentagon: A ⊗ (B ⊗ (C ⊗ D)) → ((A ⊗ B) ⊗ C) ⊗ D
        let top = RelMor::assoc(a, b, c * d).then(&RelMor::assoc(a * b, c, d));
        let bottom = id(a)
            .tensor(&RelMor::assoc(b, c, d))
            .then(&RelMor::assoc(a, b * c, d))
            .then(&RelMor::assoc(a, b, c).tensor(&id(d)));
        assert_eq!(top, bottom);
        // triangle: A ⊗ (I ⊗ B) → A ⊗ B
        let lhs = RelMor::assoc(a, 1, b).then(&RelMor::right_unit(a).tensor(&id(b)));
        assert_eq!(lhs, id(a).tensor(&RelMor::left_unit(b)));
        // symmetry is an involution
        assert_eq!(RelMor::swap(a, b).then(&RelMor::swap(b, a)), id(a * b));
        // hexagon: A ⊗ (B ⊗ C) → (C ⊗ A) ⊗ B
        let lhs = RelMor::assoc(a, b, c)
            .then(&RelMor::swap(a * b, c))
            .then(&RelMor::assoc(c, a, b));
        let rhs = id(a)
            .tensor(&RelMor::swap(b, c))
            .then(&RelMor::assoc(a, c, b))
            .then(&RelMor::swap(a, c).tensor(&id(b)));
        assert_eq!(lhs, rhs);
        // swap is natural
        let r = RelMor::from_fn(a, d, |x, y| (x + 2 * y) % 3 != 0);
        let q = RelMor::from_fn(b, c, |x, y| x <= y);
        assert_eq!(r.tensor(&q).then(&RelMor::swap(d, c)), RelMor::swap(a, b).then(&q.tensor(&r)));
    }
}
