//! Monads and comonads on finite categories, their Kleisli categories and
//! the adjunctions between them.

use std::collections::HashMap;

use crate::cat::{
    check_adjunction, find_universal, validate_category, validate_natural, Adjunction, Arrow, FinCategory, Functor,
    NatTrans, Universal, Violation,
};

/// `(T, η, μ)` on a finite category.
#[derive(Clone, Debug)]
pub struct CatMonad {
    pub base: FinCategory,
    pub functor: Functor,
    pub unit: NatTrans,
    pub mult: NatTrans,
}

/// `(Q, ε, δ)` on a finite category.
#[derive(Clone, Debug)]
pub struct CatComonad {
    pub base: FinCategory,
    pub functor: Functor,
    pub counit: NatTrans,
    pub comult: NatTrans,
}

fn ids(c: &FinCategory) -> NatTrans {
    NatTrans {
        components: (0..c.n_objects()).map(|a| c.id(a)).collect(),
    }
}

impl CatMonad {
    pub fn identity(c: &FinCategory) -> CatMonad {
        CatMonad {
            base: c.clone(),
            functor: Functor::identity(c),
            unit: ids(c),
            mult: ids(c),
        }
    }
}

impl CatComonad {
    pub fn identity(c: &FinCategory) -> CatComonad {
        CatComonad {
            base: c.clone(),
            functor: Functor::identity(c),
            counit: ids(c),
            comult: ids(c),
        }
    }
}

fn renamed(law: &'static str) -> impl Fn(Violation) -> Violation {
    move |v| {
        if v.law == "naturality" {
            Violation { law, at: v.at }
        } else {
            v
        }
    }
}

fn at_object(c: &FinCategory, law: &'static str, a: usize) -> Violation {
    Violation {
        law,
        at: vec![c.objects()[a].clone()],
    }
}

/// Naturality of `η` and `μ`, then `μ∘μT = μ∘Tμ` and `μ∘ηT = id = μ∘Tη`
/// at every object.
pub fn check_monad(m: &CatMonad) -> Result<(), Violation> {
    let (c, t) = (&m.base, &m.functor);
    validate_natural(c, c, &Functor::identity(c), t, &m.unit).map_err(renamed("unit naturality"))?;
    validate_natural(c, c, &t.then(t), t, &m.mult).map_err(renamed("multiplication naturality"))?;
    for a in 0..c.n_objects() {
        let (ta, mu) = (t.objects[a], m.mult.components[a]);
        if c.comp(mu, m.unit.components[ta]) != c.id(ta) {
            return Err(at_object(c, "left unit", a));
        }
        if c.comp(mu, t.arrows[m.unit.components[a]]) != c.id(ta) {
            return Err(at_object(c, "right unit", a));
        }
        if c.comp(mu, m.mult.components[ta]) != c.comp(mu, t.arrows[mu]) {
            return Err(at_object(c, "associativity", a));
        }
    }
    Ok(())
}

/// The dual diagrams: `εQ∘δ = id = Qε∘δ` and `δQ∘δ = Qδ∘δ`.
pub fn check_comonad(q: &CatComonad) -> Result<(), Violation> {
    let (c, t) = (&q.base, &q.functor);
    validate_natural(c, c, t, &Functor::identity(c), &q.counit).map_err(renamed("counit naturality"))?;
    validate_natural(c, c, t, &t.then(t), &q.comult).map_err(renamed("comultiplication naturality"))?;
    for a in 0..c.n_objects() {
        let (qa, dl) = (t.objects[a], q.comult.components[a]);
        if c.comp(q.counit.components[qa], dl) != c.id(qa) {
            return Err(at_object(c, "left counit", a));
        }
        if c.comp(t.arrows[q.counit.components[a]], dl) != c.id(qa) {
            return Err(at_object(c, "right counit", a));
        }
        if c.comp(q.comult.components[qa], dl) != c.comp(t.arrows[dl], dl) {
            return Err(at_object(c, "coassociativity", a));
        }
    }
    Ok(())
}

/// `(GF, η, GεF)` for a checked adjunction `F ⊣ G : D → C`.
pub fn monad_of_adjunction(c: &FinCategory, d: &FinCategory, adj: &Adjunction) -> Result<CatMonad, Violation> {
    let r = check_adjunction(c, d, adj)?;
    let (f, g) = (&adj.left, &adj.right);
    Ok(CatMonad {
        base: c.clone(),
        functor: f.then(g),
        unit: NatTrans { components: r.unit },
        mult: NatTrans {
            components: (0..c.n_objects()).map(|a| g.arrows[r.counit[f.objects[a]]]).collect(),
        },
    })
}

/// `(FG, ε, FηG)` on `D` for a checked adjunction `F ⊣ G : D → C`.
pub fn comonad_of_adjunction(c: &FinCategory, d: &FinCategory, adj: &Adjunction) -> Result<CatComonad, Violation> {
    let r = check_adjunction(c, d, adj)?;
    let (f, g) = (&adj.left, &adj.right);
    Ok(CatComonad {
        base: d.clone(),
        functor: g.then(f),
        counit: NatTrans { components: r.counit },
        comult: NatTrans {
            components: (0..d.n_objects()).map(|b| f.arrows[r.unit[g.objects[b]]]).collect(),
        },
    })
}

/// A Kleisli or co-Kleisli category. Arrow `i` is `(A, B, x)` with `x` the
/// underlying arrow of the base.
#[derive(Clone, Debug)]
pub struct Kleisli {
    pub cat: FinCategory,
    pub arrows: Vec<(usize, usize, usize)>,
    index: HashMap<(usize, usize, usize), usize>,
}

impl Kleisli {
    pub fn arrow(&self, a: usize, b: usize, x: usize) -> Option<usize> {
        self.index.get(&(a, b, x)).copied()
    }

    fn build(
        base: &FinCategory,
        arrows: Vec<(usize, usize, usize)>,
        identity: impl Fn(usize) -> usize,
        compose: impl Fn((usize, usize, usize), (usize, usize, usize)) -> usize,
    ) -> Kleisli {
        let index: HashMap<_, _> = arrows.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let objects = base.objects().to_vec();
        let table: Vec<Arrow> = arrows
            .iter()
            .map(|&(a, b, x)| Arrow {
                id: format!("{}@{}", base.arrow_id(x), objects[b]),
                dom: a,
                cod: b,
            })
            .collect();
        let ident: Vec<usize> = (0..objects.len()).map(|a| index[&(a, a, identity(a))]).collect();
        let mut composites = Vec::new();
        for (gi, &g) in arrows.iter().enumerate() {
            for (fi, &f) in arrows.iter().enumerate() {
                if f.1 == g.0 {
                    composites.push((gi, fi, index[&(f.0, g.1, compose(g, f))]));
                }
            }
        }
        let cat = FinCategory::new(objects, table, ident, composites).expect("Kleisli table is well formed");
        Kleisli { cat, arrows, index }
    }
}

/// Arrows `A → B` are base arrows `A → TB`; `g • f = μ ∘ Tg ∘ f`. `T`,
/// `η` and `μ` must be well typed; the monad laws are not assumed, so a
/// bad `μ` shows up when the result is validated.
pub fn kleisli_category(m: &CatMonad) -> Result<Kleisli, Violation> {
    let (c, t) = (&m.base, &m.functor);
    validate_natural(c, c, &Functor::identity(c), t, &m.unit).map_err(renamed("unit naturality"))?;
    validate_natural(c, c, &t.then(t), t, &m.mult).map_err(renamed("multiplication naturality"))?;
    let n = c.n_objects();
    let arrows = (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| c.hom(a, t.objects[b]).iter().map(move |&x| (a, b, x))))
        .collect();
    Ok(Kleisli::build(
        c,
        arrows,
        |a| m.unit.components[a],
        |(_, cc, y), (_, _, x)| c.comp(m.mult.components[cc], c.comp(t.arrows[y], x)),
    ))
}

/// Arrows `A → B` are base arrows `QA → B`; `g • f = g ∘ Qf ∘ δ`.
pub fn cokleisli_category(q: &CatComonad) -> Result<Kleisli, Violation> {
    let (c, t) = (&q.base, &q.functor);
    validate_natural(c, c, t, &Functor::identity(c), &q.counit).map_err(renamed("counit naturality"))?;
    validate_natural(c, c, t, &t.then(t), &q.comult).map_err(renamed("comultiplication naturality"))?;
    let n = c.n_objects();
    let arrows = (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| c.hom(t.objects[a], b).iter().map(move |&x| (a, b, x))))
        .collect();
    Ok(Kleisli::build(
        c,
        arrows,
        |a| q.counit.components[a],
        |(_, _, y), (a, _, x)| c.comp(y, c.comp(t.arrows[x], q.comult.components[a])),
    ))
}

/// The adjunction `F ⊣ G` through the Kleisli category: `F f = η ∘ f`,
/// `G k = μ ∘ Tk` and `θ` the identity on underlying arrows.
pub fn kleisli_adjunction(m: &CatMonad, kl: &Kleisli) -> Adjunction {
    let (c, t) = (&m.base, &m.functor);
    let left = Functor {
        objects: (0..c.n_objects()).collect(),
        arrows: (0..c.n_arrows())
            .map(|f| {
                let (a, b) = (c.dom(f), c.cod(f));
                kl.arrow(a, b, c.comp(m.unit.components[b], f)).expect("η ∘ f is a Kleisli arrow")
            })
            .collect(),
    };
    let right = Functor {
        objects: t.objects.clone(),
        arrows: kl
            .arrows
            .iter()
            .map(|&(_, b, x)| c.comp(m.mult.components[b], t.arrows[x]))
            .collect(),
    };
    let theta = kl.arrows.iter().enumerate().map(|(i, &(a, b, x))| ((a, b, x), i)).collect();
    Adjunction { left, right, theta }
}

/// Build the Kleisli category, check the Kleisli adjunction and compare
/// the monad it induces with `m`.
pub fn kleisli_roundtrip(m: &CatMonad) -> Result<Kleisli, Violation> {
    let kl = kleisli_category(m)?;
    validate_category(&kl.cat)?;
    let adj = kleisli_adjunction(m, &kl);
    let back = monad_of_adjunction(&m.base, &kl.cat, &adj)?;
    let c = &m.base;
    let differ = |law: &'static str, at: String| Err(Violation { law, at: vec![at] });
    if let Some(a) = (0..c.n_objects()).find(|&a| back.functor.objects[a] != m.functor.objects[a]) {
        return differ("functor on objects", c.objects()[a].clone());
    }
    if let Some(f) = (0..c.n_arrows()).find(|&f| back.functor.arrows[f] != m.functor.arrows[f]) {
        return differ("functor on arrows", c.arrow_id(f).into());
    }
    if let Some(a) = (0..c.n_objects()).find(|&a| back.unit.components[a] != m.unit.components[a]) {
        return differ("unit", c.objects()[a].clone());
    }
    if let Some(a) = (0..c.n_objects()).find(|&a| back.mult.components[a] != m.mult.components[a]) {
        return differ("multiplication", c.objects()[a].clone());
    }
    Ok(kl)
}

/// Finite products in the co-Kleisli category: for each base product
/// `(P, π1, π2)` the legs `π1 ∘ ε` and `π2 ∘ ε` must make `P` a product,
/// checked by counting mediators; the base terminal object must stay
/// terminal.
pub fn cokleisli_products(q: &CatComonad) -> Result<Kleisli, Violation> {
    let c = &q.base;
    let ck = cokleisli_category(q)?;
    validate_category(&ck.cat)?;
    let k = &ck.cat;
    let n = c.n_objects();
    let one = find_universal(c, Universal::Terminal)
        .first()
        .map(|w| w.apex)
        .ok_or_else(|| Violation { law: "base terminal", at: vec![] })?;
    if let Some(x) = (0..n).find(|&x| k.hom(x, one).len() != 1) {
        return Err(at_object(c, "terminal", x));
    }
    for a in 0..n {
        for b in 0..n {
            let names = || vec![c.objects()[a].clone(), c.objects()[b].clone()];
            let w = find_universal(c, Universal::Product(a, b));
            let w = w.first().ok_or_else(|| Violation { law: "base product", at: names() })?;
            let p = w.apex;
            let eps = q.counit.components[p];
            let p1 = ck.arrow(p, a, c.comp(w.arrows[0], eps)).expect("leg");
            let p2 = ck.arrow(p, b, c.comp(w.arrows[1], eps)).expect("leg");
            for x in 0..n {
                for &f in k.hom(x, a) {
                    for &g in k.hom(x, b) {
                        let count = k
                            .hom(x, p)
                            .iter()
                            .filter(|&&h| k.comp(p1, h) == f && k.comp(p2, h) == g)
                            .count();
                        if count != 1 {
                            let mut at = names();
                            at.extend([k.arrow_id(f).into(), k.arrow_id(g).into()]);
                            return Err(Violation { law: "product mediator", at });
                        }
                    }
                }
            }
        }
    }
    Ok(ck)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{chain, divisors, monoid};

    /// `l(x) = ⌈x/2⌉ : 4 → 3` left adjoint to `r(y) = min(2y, 3)`.
    fn halving() -> (FinCategory, FinCategory, Adjunction) {
        let (c, d) = (chain(4), chain(3));
        let l = Functor::monotone(&c, &d, vec![0, 1, 1, 2]);
        let r = Functor::monotone(&d, &c, vec![0, 2, 3]);
        let adj = Adjunction::between_preorders(&c, &d, l, r);
        (c, d, adj)
    }

    #[test]
    fn identity_monad_and_kleisli() {
        let c = divisors(12);
        let m = CatMonad::identity(&c);
        check_monad(&m).unwrap();
        let kl = kleisli_roundtrip(&m).unwrap();
        for a in 0..c.n_objects() {
            for b in 0..c.n_objects() {
                assert_eq!(kl.cat.hom(a, b).len(), c.hom(a, b).len());
            }
        }
    }

    #[test]
    fn closure_from_adjunction() {
        let (c, d, adj) = halving();
        let m = monad_of_adjunction(&c, &d, &adj).unwrap();
        assert_eq!(m.functor.objects, vec![0, 2, 2, 3]);
        check_monad(&m).unwrap();
        kleisli_roundtrip(&m).unwrap();
        let q = comonad_of_adjunction(&c, &d, &adj).unwrap();
        check_comonad(&q).unwrap();
    }

    #[test]
    fn monads_on_z2() {
        let z2 = monoid(&["1".into(), "s".into()], 0, |g, f| g ^ f);
        let with = |eta: usize, mu: usize| CatMonad {
            base: z2.clone(),
            functor: Functor::identity(&z2),
            unit: NatTrans { components: vec![eta] },
            mult: NatTrans { components: vec![mu] },
        };
        check_monad(&with(1, 1)).unwrap();
        kleisli_roundtrip(&with(1, 1)).unwrap();
        assert_eq!(check_monad(&with(1, 0)).unwrap_err().law, "left unit");
    }

    #[test]
    fn meets_are_cokleisli_products() {
        let c = divisors(12);
        let q = CatComonad::identity(&c);
        let ck = cokleisli_products(&q).unwrap();
        for a in 0..c.n_objects() {
            for b in 0..c.n_objects() {
                let base = find_universal(&c, Universal::Product(a, b))[0].apex;
                let kl = find_universal(&ck.cat, Universal::Product(a, b))[0].apex;
                assert_eq!(base, kl);
            }
        }
    }
}
