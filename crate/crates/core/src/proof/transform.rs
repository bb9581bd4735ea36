use super::formula::{Formula, Sequent};
use super::tree::{ProofRule, ProofTree};
use super::ProofError;

/// `A ⊃ B` becomes `!A ⊸ B`, `A ∧ B` becomes `A & B`; atoms are fixed.
pub fn embed_formula(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) => f.clone(),
        Formula::Impl(a, b) => Formula::lolli(Formula::bang(embed_formula(a)), embed_formula(b)),
        Formula::Conj(a, b) => Formula::with(embed_formula(a), embed_formula(b)),
        Formula::Tensor(a, b) => Formula::tensor(embed_formula(a), embed_formula(b)),
        Formula::Lolli(a, b) => Formula::lolli(embed_formula(a), embed_formula(b)),
        Formula::With(a, b) => Formula::with(embed_formula(a), embed_formula(b)),
        Formula::Bang(a) => Formula::bang(embed_formula(a)),
    }
}

fn embed_hyp(f: &Formula) -> Formula {
    Formula::bang(embed_formula(f))
}

/// `Γ ⊢ A` becomes `!Γ* ⊢ A*`.
pub fn embed_intuitionistic(s: &Sequent) -> Sequent {
    Sequent::new(s.hyps.iter().map(embed_hyp).collect(), embed_formula(&s.concl))
}

fn node(rule: ProofRule, hyps: Vec<Formula>, concl: Formula, premises: Vec<ProofTree>) -> ProofTree {
    ProofTree::new(rule, Sequent::new(hyps, concl), premises)
}

fn id(f: &Formula) -> ProofTree {
    node(ProofRule::Id, vec![f.clone()], f.clone(), vec![])
}

/// Weaken a linear proof by the banged formulas `extra`, appended.
fn bang_weaken(mut p: ProofTree, extra: &[Formula]) -> ProofTree {
    for f in extra {
        let mut hyps = p.sequent.hyps.clone();
        hyps.push(f.clone());
        let i = hyps.len() - 1;
        let concl = p.sequent.concl.clone();
        p = node(ProofRule::BangWeak(i), hyps, concl, vec![p]);
    }
    p
}

/// `!X ⊢ !Y` from a proof of `X ⊢ Y` for a one-formula context.
fn promote_one(bx: &Formula, inner: ProofTree) -> ProofTree {
    let y = inner.sequent.concl.clone();
    let derel = node(ProofRule::BangL(0), vec![bx.clone()], y.clone(), vec![inner]);
    node(ProofRule::BangR, vec![bx.clone()], Formula::bang(y), vec![derel])
}

/// Translate a Gentzen proof of `Γ ⊢ A` into a linear proof of
/// `!Γ* ⊢ A*`, rule by rule.
pub fn embed_proof(p: &ProofTree) -> Result<ProofTree, ProofError> {
    let target = embed_intuitionistic(&p.sequent);
    let hyps = target.hyps.clone();
    let concl = target.concl.clone();
    let n = hyps.len();
    let sub = |k: usize| embed_proof(&p.premises[k]);
    Ok(match p.rule {
        ProofRule::Id => {
            let a = concl.clone();
            node(ProofRule::BangL(0), hyps, concl, vec![id(&a)])
        }
        ProofRule::Exch(_) => sub(0)?.retarget(&target),
        ProofRule::Contr => node(ProofRule::BangContr(n - 1), hyps, concl, vec![sub(0)?]),
        ProofRule::Weak => node(ProofRule::BangWeak(n - 1), hyps, concl, vec![sub(0)?]),
        ProofRule::ImpR => node(ProofRule::LolliR, hyps, concl, vec![sub(0)?]),
        ProofRule::AndR => {
            let g = p.premises[0].sequent.hyps.len();
            let left = bang_weaken(sub(0)?, &hyps[g..]);
            let right = bang_weaken(sub(1)?, &hyps[..g]);
            node(ProofRule::WithR, hyps, concl, vec![left, right])
        }
        ProofRule::AndL => {
            // cut !(A&B) ⊢ !A and !(A&B) ⊢ !B against the premise, then contract
            let principal = hyps[n - 1].clone();
            let Formula::Bang(ab) = &principal else { unreachable!() };
            let Formula::With(a, b) = &**ab else { unreachable!() };
            let bb = Formula::bang((**b).clone());
            let gamma = &hyps[..n - 1];
            let proj = |k: usize, x: &Formula| {
                let rule = if k == 0 { ProofRule::WithL1(0) } else { ProofRule::WithL2(0) };
                let pick = node(rule, vec![(**ab).clone()], x.clone(), vec![id(x)]);
                promote_one(&principal, pick)
            };
            let prem = sub(0)?;
            let mut h1: Vec<Formula> = vec![principal.clone()];
            h1.extend(gamma.iter().cloned());
            h1.push(bb.clone());
            let cut1 = node(ProofRule::Cut, h1, concl.clone(), vec![proj(0, a), prem]);
            let mut h2 = vec![principal.clone(), principal.clone()];
            h2.extend(gamma.iter().cloned());
            let cut2 = node(ProofRule::Cut, h2, concl.clone(), vec![proj(1, b), cut1]);
            node(ProofRule::BangContr(n - 1), hyps, concl, vec![cut2])
        }
        ProofRule::ImpL => {
            let g = p.premises[0].sequent.hyps.len();
            let principal = hyps[g].clone();
            let Formula::Bang(inner) = &principal else { unreachable!() };
            let Formula::Lolli(ba, b) = &**inner else { unreachable!() };
            let gamma = hyps[..g].to_vec();
            let delta = hyps[g + 1..].to_vec();
            let left = sub(0)?;
            let promoted = node(ProofRule::BangR, gamma.clone(), (**ba).clone(), vec![left]);
            let mut h = vec![(**inner).clone()];
            h.extend(gamma.iter().cloned());
            let apply = node(ProofRule::LolliL(0), h, (**b).clone(), vec![promoted, id(b)]);
            let mut h = vec![principal.clone()];
            h.extend(gamma.iter().cloned());
            let derel = node(ProofRule::BangL(0), h.clone(), (**b).clone(), vec![apply]);
            let boxed = node(ProofRule::BangR, h, Formula::bang((**b).clone()), vec![derel]);
            let right = sub(1)?;
            let mut all = vec![principal];
            all.extend(gamma);
            all.extend(delta);
            node(ProofRule::Cut, all, concl.clone(), vec![boxed, right]).retarget(&target)
        }
        ProofRule::Cut => {
            let g = p.premises[0].sequent.hyps.len();
            let left = sub(0)?;
            let a = left.sequent.concl.clone();
            let promoted = node(ProofRule::BangR, hyps[..g].to_vec(), Formula::bang(a), vec![left]);
            node(ProofRule::Cut, hyps, concl, vec![promoted, sub(1)?])
        }
        r => {
            return Err(ProofError::Malformed(format!(
                "`{r}` is not a Gentzen rule for ∧, ⊃"
            )))
        }
    })
}

/// Natural deduction weakening: insert `a` at position `k` of every
/// sequent in the proof (clamped to the end), shifting identity indices.
pub fn weaken_nd(p: &ProofTree, a: &Formula, k: usize) -> ProofTree {
    let k = k.min(p.sequent.hyps.len());
    let mut hyps = p.sequent.hyps.clone();
    hyps.insert(k, a.clone());
    let rule = match p.rule {
        ProofRule::NdId(i) if i >= k => ProofRule::NdId(i + 1),
        r => r,
    };
    ProofTree::new(
        rule,
        Sequent::new(hyps, p.sequent.concl.clone()),
        p.premises.iter().map(|q| weaken_nd(q, a, k)).collect(),
    )
}

/// Natural deduction cut: from `Γ ⊢ A` and `A, Δ ⊢ B` build `Γ, Δ ⊢ B`
/// with ⊃I, weakening and ⊃E.
pub fn cut_nd(left: &ProofTree, right: &ProofTree) -> Result<ProofTree, ProofError> {
    let a = left.sequent.concl.clone();
    if right.sequent.hyps.first() != Some(&a) {
        return Err(ProofError::Malformed(
            "the right proof must start with the cut formula".into(),
        ));
    }
    let gamma = left.sequent.hyps.clone();
    let delta = right.sequent.hyps[1..].to_vec();
    let b = right.sequent.concl.clone();
    let lam = ProofTree::new(
        ProofRule::ImpIntro,
        Sequent::new(delta.clone(), Formula::imp(a, b.clone())),
        vec![right.clone()],
    );
    let mut fun = lam;
    for (i, g) in gamma.iter().enumerate() {
        fun = weaken_nd(&fun, g, i);
    }
    let mut arg = left.clone();
    for d in &delta {
        let end = arg.sequent.hyps.len();
        arg = weaken_nd(&arg, d, end);
    }
    let hyps: Vec<Formula> = gamma.into_iter().chain(delta).collect();
    Ok(ProofTree::new(ProofRule::ImpElim, Sequent::new(hyps, b), vec![fun, arg]))
}

fn rebuild(p: &ProofTree, f: &impl Fn(ProofTree) -> ProofTree) -> ProofTree {
    let premises = p.premises.iter().map(|q| rebuild(q, f)).collect();
    f(ProofTree::new(p.rule, p.sequent.clone(), premises))
}

/// Replace every ⊸L by ⊸E, Cut and Id.
pub fn lolli_l_to_e(p: &ProofTree) -> ProofTree {
    rebuild(p, &|node| {
        let ProofRule::LolliL(i) = node.rule else { return node };
        let f = node.sequent.hyps[i].clone();
        let Formula::Lolli(_, b) = &f else { return node };
        let [left, right]: [ProofTree; 2] = node.premises.try_into().expect("two premises");
        let mut h = left.sequent.hyps.clone();
        h.push(f.clone());
        let apply = ProofTree::new(
            ProofRule::LolliE,
            Sequent::new(h, (**b).clone()),
            vec![id(&f), left],
        );
        ProofTree::new(ProofRule::Cut, node.sequent, vec![apply, right])
    })
}

/// Replace every ⊸E by ⊸L, Cut and Id.
pub fn lolli_e_to_l(p: &ProofTree) -> ProofTree {
    rebuild(p, &|node| {
        if node.rule != ProofRule::LolliE {
            return node;
        }
        let [fun, arg]: [ProofTree; 2] = node.premises.try_into().expect("two premises");
        let f = fun.sequent.concl.clone();
        let Formula::Lolli(_, b) = &f else {
            return ProofTree::new(ProofRule::LolliE, node.sequent, vec![fun, arg]);
        };
        let mut h = vec![f.clone()];
        h.extend(arg.sequent.hyps.iter().cloned());
        let apply = ProofTree::new(
            ProofRule::LolliL(0),
            Sequent::new(h, (**b).clone()),
            vec![arg, id(b)],
        );
        ProofTree::new(ProofRule::Cut, node.sequent, vec![fun, apply])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::{check_proof, parse_formula, parse_sequent, search_cutfree, System};

    #[test]
    fn embedding_examples() {
        let s = parse_sequent("A |- A /\\ A").unwrap();
        assert_eq!(embed_intuitionistic(&s), parse_sequent("!A |- A & A").unwrap());
        let s = parse_sequent("|- A => A").unwrap();
        assert_eq!(embed_intuitionistic(&s), parse_sequent("|- !A -o A").unwrap());
        let a = parse_formula("A").unwrap();
        assert_eq!(embed_formula(&a), a);
    }

    #[test]
    fn embedded_proofs_check() {
        for src in [
            "A |- A /\\ A",
            "A => B, B => C |- A => C",
            "A /\\ B |- B /\\ A",
            "|- A => B => A",
            "A => B => C |- B => A => C",
            "(A /\\ B) => C |- A => B => C",
        ] {
            let s = parse_sequent(src).unwrap();
            let p = search_cutfree(&s, 8).unwrap().unwrap();
            let q = embed_proof(&p).unwrap();
            assert_eq!(q.sequent, embed_intuitionistic(&s), "{src}");
            check_proof(&q, System::Linear).unwrap_or_else(|e| panic!("{src}: {e}\n{}", q.render(Default::default())));
        }
    }

    #[test]
    fn lolli_transformers_preserve_validity() {
        let s = parse_sequent("A -o B, B -o C |- A -o C").unwrap();
        let p = search_cutfree(&s, 8).unwrap().unwrap();
        let e = lolli_l_to_e(&p);
        check_proof(&e, System::Linear).unwrap();
        assert!(!e.any_rule(&|r| matches!(r, ProofRule::LolliL(_))));
        let l = lolli_e_to_l(&e);
        check_proof(&l, System::Linear).unwrap();
        assert!(!l.any_rule(&|r| r == ProofRule::LolliE));
    }
}
