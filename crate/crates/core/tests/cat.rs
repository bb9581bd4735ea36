use chw_core::cat::{
    chain, classify_arrow, divisors, find_universal, finset, monoid, opposite, validate_category, FinCategory,
    Universal, Witness,
};

fn samples() -> Vec<FinCategory> {
    let z = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
    vec![
        finset(2).cat,
        divisors(12),
        chain(3),
        monoid(&z(4), 0, |a, b| (a + b) % 4),
        monoid(&z(3), 0, |a, b| a.max(b)),
    ]
}

#[test]
fn monic_and_epic_are_dual() {
    for c in samples() {
        let op = opposite(&c);
        assert_eq!(opposite(&op), c);
        for f in 0..c.n_arrows() {
            let (k, j) = (classify_arrow(&c, f), classify_arrow(&op, f));
            assert_eq!(k.monic, j.epic);
            assert_eq!(k.epic, j.monic);
            assert_eq!(k.split_monic, j.split_epic);
            assert_eq!(k.iso, j.iso);
        }
    }
}

#[test]
fn finset_monic_iff_injective() {
    for n in 2..=3 {
        let fs = finset(n);
        for f in 0..fs.cat.n_arrows() {
            let k = classify_arrow(&fs.cat, f);
            assert_eq!(k.monic, fs.is_injective(f));
            assert_eq!(k.epic, fs.is_surjective(f));
        }
    }
}

#[test]
fn epic_needs_a_two_element_set() {
    // without {0,1} nothing separates the maps out of {0}
    let fs = finset(1);
    let f = fs.cat.arrow_index("{}->{0}:").unwrap();
    assert!(classify_arrow(&fs.cat, f).epic);
    assert!(!fs.is_surjective(f));
}

#[test]
fn pullback_over_terminal_is_product() {
    for c in [finset(2).cat, divisors(12), chain(3)] {
        let one = find_universal(&c, Universal::Terminal)[0].apex;
        let bang = |a: usize| c.hom(a, one)[0];
        for a in 0..c.n_objects() {
            for b in 0..c.n_objects() {
                let mut pb = find_universal(&c, Universal::Pullback(bang(a), bang(b)));
                let mut prod = find_universal(&c, Universal::Product(a, b));
                pb.sort_by_key(|w| (w.apex, w.arrows.clone()));
                prod.sort_by_key(|w| (w.apex, w.arrows.clone()));
                assert_eq!(pb, prod);
            }
        }
    }
}

/// Two adjacent squares
///
/// ```text
/// A --a--> B --b--> C
/// |x       |y       |z
/// D --d--> E --e--> F
/// ```
/// with the right square and the outer rectangle pullbacks: the left
/// square must be a pullback too.
#[test]
fn pullback_lemma() {
    let c = finset(2).cat;
    let mut checked = 0;
    for e in 0..c.n_arrows() {
        for z in FinCategory::into(&c, c.cod(e)).collect::<Vec<_>>() {
            let Some(right) = find_universal(&c, Universal::Pullback(e, z)).into_iter().next() else {
                continue;
            };
            let (y, b) = (right.arrows[0], right.arrows[1]);
            for d in FinCategory::into(&c, c.dom(e)).collect::<Vec<_>>() {
                let left = find_universal(&c, Universal::Pullback(d, y));
                for outer in find_universal(&c, Universal::Pullback(c.comp(e, d), z)) {
                    let (x, k) = (outer.arrows[0], outer.arrows[1]);
                    let mediators: Vec<usize> = c
                        .hom(outer.apex, right.apex)
                        .iter()
                        .copied()
                        .filter(|&a| c.comp(y, a) == c.comp(d, x) && c.comp(b, a) == k)
                        .collect();
                    assert_eq!(mediators.len(), 1);
                    let w = Witness { apex: outer.apex, arrows: vec![x, mediators[0]] };
                    assert!(left.contains(&w));
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn products_in_posets_are_meets() {
    let c = divisors(30);
    let gcd = |mut a: u64, mut b: u64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let val = |i: usize| c.objects()[i].parse::<u64>().unwrap();
    for a in 0..c.n_objects() {
        for b in 0..c.n_objects() {
            let ws = find_universal(&c, Universal::Product(a, b));
            assert_eq!(ws.len(), 1);
            assert_eq!(val(ws[0].apex), gcd(val(a), val(b)));
            let cs = find_universal(&c, Universal::Coproduct(a, b));
            assert_eq!(val(cs[0].apex), val(a) * val(b) / gcd(val(a), val(b)));
        }
    }
}

#[test]
fn json_roundtrip() {
    for c in samples() {
        let back = FinCategory::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        validate_category(&back).unwrap();
    }
}

#[test]
fn corrupt_json_is_caught() {
    let c = chain(2);
    let json = c.to_json().replacen("\"0<=1\",\n      \"0<=0\",\n      \"0<=1\"", "\"0<=1\",\n      \"0<=0\",\n      \"0<=0\"", 1);
    assert_ne!(json, c.to_json());
    if let Ok(bad) = FinCategory::from_json(&json) {
        assert!(validate_category(&bad).is_err());
    }
}
