use chw_core::cat::{chain, divisors, validate_category, Adjunction, Functor};
use chw_core::monad::*;

#[test]
fn exceptions_monad_laws() {
    let r = check_set_monad(&Exceptions::new(1), 3, DEFAULT_CAP).unwrap();
    assert!(r.instances > 0);
    check_set_monad(&Exceptions::new(2), 2, DEFAULT_CAP).unwrap();
}

#[test]
fn state_monad_laws() {
    check_set_monad(&State { states: 2 }, 2, DEFAULT_CAP).unwrap();
}

#[test]
fn list_monad_laws() {
    check_set_monad(&ListMonad { bound: 2 }, 2, DEFAULT_CAP).unwrap();
}

#[test]
fn product_comonad_laws() {
    check_set_comonad(&ProductComonad { envs: 2 }, 3, DEFAULT_CAP).unwrap();
}

#[test]
fn state_kleisli_and_roundtrip() {
    let kl = kleisli_sets(&State { states: 2 }, &[0, 1, 2], DEFAULT_CAP).unwrap();
    validate_category(&kl.cat).unwrap();
    assert_eq!(kl.cat.n_arrows(), 3 + 4 + 16 + 16 + 256);
    kleisli_roundtrip_sets(&State { states: 2 }, 2, DEFAULT_CAP).unwrap();
}

#[test]
fn exceptions_roundtrip() {
    kleisli_roundtrip_sets(&Exceptions::new(1), 2, DEFAULT_CAP).unwrap();
}

#[test]
fn identity_kleisli_matches_base() {
    let kl = kleisli_sets(&IdentityMonad, &[0, 1, 2], DEFAULT_CAP).unwrap();
    validate_category(&kl.cat).unwrap();
    for a in 0..3usize {
        for b in 0..3usize {
            assert_eq!(kl.cat.hom(a, b).len(), b.pow(a as u32));
        }
    }
}

#[test]
fn adjunction_monads_pass() {
    // every Galois connection chain(4) ⇄ chain(3) gives a monad and a comonad
    let (c, d) = (chain(4), chain(3));
    let monotone = |n: usize, m: usize| -> Vec<Vec<usize>> {
        atom_maps(n, m).into_iter().filter(|f| f.windows(2).all(|w| w[0] <= w[1])).collect()
    };
    let mut seen = 0;
    for l in monotone(4, 3) {
        for r in monotone(3, 4) {
            let galois = (0..4).all(|x| (0..3).all(|y| (l[x] <= y) == (x <= r[y])));
            if !galois {
                continue;
            }
            let adj = Adjunction::between_preorders(
                &c,
                &d,
                Functor::monotone(&c, &d, l.clone()),
                Functor::monotone(&d, &c, r.clone()),
            );
            let m = monad_of_adjunction(&c, &d, &adj).unwrap();
            check_monad(&m).unwrap();
            kleisli_roundtrip(&m).unwrap();
            check_comonad(&comonad_of_adjunction(&c, &d, &adj).unwrap()).unwrap();
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn identity_comonad_products_are_meets() {
    cokleisli_products(&CatComonad::identity(&divisors(30))).unwrap();
}

#[test]
fn product_comonad_kleisli_products() {
    cokleisli_products_sets(&ProductComonad { envs: 2 }, 2, false, DEFAULT_CAP).unwrap();
    let ck = cokleisli_sets(&ProductComonad { envs: 2 }, &[0, 1, 2], DEFAULT_CAP).unwrap();
    validate_category(&ck.cat).unwrap();
}

#[test]
fn cartesian_linear_exponential() {
    for c in [divisors(12), divisors(30), chain(4)] {
        let m = cartesian(&c).unwrap();
        check_linear_exponential(&c, &m, &LinExp::identity_cartesian(&c, &m)).unwrap();
        exponential_counts(&c, &m).unwrap();
    }
}

#[test]
fn builtins_resolve() {
    assert!(matches!(builtin("state", 2), Ok(Builtin::Monad(_))));
    assert!(matches!(builtin("product", 2), Ok(Builtin::Comonad(_))));
    assert!(builtin("state", 0).is_err());
    assert!(builtin("writer", 1).is_err());
}

#[test]
fn bounded_lists_do_not_compose() {
    // flattening two lists of length 2 leaves the bound
    let Err(MonadError::Malformed(_)) = kleisli_sets(&ListMonad { bound: 2 }, &[0, 1], DEFAULT_CAP) else {
        panic!("expected the composite to leave the table");
    };
}
