use std::collections::BTreeSet;

use super::formula::{Formula, Sequent};
use super::ms;
use super::tree::{ProofRule, ProofTree, System};
use super::ProofError;
use crate::syntax::Fragment;

type Verdict = Result<(), String>;

fn ensure(cond: bool, reason: impl FnOnce() -> String) -> Verdict {
    if cond {
        Ok(())
    } else {
        Err(reason())
    }
}

fn hyp(s: &Sequent, i: usize) -> Result<&Formula, String> {
    s.hyps
        .get(i)
        .ok_or_else(|| format!("hypothesis index {i} out of range"))
}

fn set(v: &[Formula]) -> BTreeSet<&Formula> {
    v.iter().collect()
}

fn nd(p: &ProofTree) -> Verdict {
    let s = &p.sequent;
    let prem = |k: usize| &p.premises[k].sequent;
    let same_hyps = |k: usize| {
        ensure(set(&prem(k).hyps) == set(&s.hyps), || {
            format!("premise {k} has different hypotheses")
        })
    };
    match p.rule {
        ProofRule::NdId(i) => ensure(hyp(s, i)? == &s.concl, || {
            format!("hypothesis {i} is not the conclusion")
        }),
        ProofRule::AndIntro => {
            let Formula::Conj(a, b) = &s.concl else {
                return Err("conclusion is not a conjunction".into());
            };
            same_hyps(0)?;
            same_hyps(1)?;
            ensure(&prem(0).concl == &**a && &prem(1).concl == &**b, || {
                "premises do not prove the conjuncts".into()
            })
        }
        ProofRule::AndElim1 | ProofRule::AndElim2 => {
            same_hyps(0)?;
            let Formula::Conj(a, b) = &prem(0).concl else {
                return Err("premise is not a conjunction".into());
            };
            let want = if p.rule == ProofRule::AndElim1 { a } else { b };
            ensure(&s.concl == &**want, || "conclusion is not the selected conjunct".into())
        }
        ProofRule::ImpIntro => {
            let Formula::Impl(a, b) = &s.concl else {
                return Err("conclusion is not an implication".into());
            };
            let mut want = set(&s.hyps);
            want.insert(a);
            ensure(set(&prem(0).hyps) == want, || {
                "premise hypotheses are not the conclusion's plus the antecedent".into()
            })?;
            ensure(&prem(0).concl == &**b, || "premise does not prove the consequent".into())
        }
        ProofRule::ImpElim => {
            same_hyps(0)?;
            same_hyps(1)?;
            let Formula::Impl(a, b) = &prem(0).concl else {
                return Err("first premise is not an implication".into());
            };
            ensure(&prem(1).concl == &**a, || "second premise does not prove the antecedent".into())?;
            ensure(&s.concl == &**b, || "conclusion is not the consequent".into())
        }
        r => Err(format!("rule `{r}` does not belong to natural deduction")),
    }
}

fn gentzen(p: &ProofTree) -> Verdict {
    let s = &p.sequent;
    let prem = |k: usize| &p.premises[k].sequent;
    match p.rule {
        ProofRule::Id => ensure(s.hyps.len() == 1 && s.hyps[0] == s.concl, || {
            "identity needs exactly the conclusion as hypothesis".into()
        }),
        ProofRule::Exch(i) => {
            let mut h = prem(0).hyps.clone();
            ensure(i + 1 < h.len(), || format!("exchange index {i} out of range"))?;
            h.swap(i, i + 1);
            ensure(h == s.hyps && prem(0).concl == s.concl, || {
                format!("conclusion is not the premise with positions {i},{} swapped", i + 1)
            })
        }
        ProofRule::Contr => {
            let a = s.hyps.last().ok_or("contraction needs a hypothesis")?;
            let mut h = s.hyps.clone();
            h.push(a.clone());
            ensure(h == prem(0).hyps && prem(0).concl == s.concl, || {
                "premise is not the conclusion with its last hypothesis doubled".into()
            })
        }
        ProofRule::Weak => {
            ensure(!s.hyps.is_empty(), || "weakening needs a hypothesis".into())?;
            ensure(
                s.hyps[..s.hyps.len() - 1] == prem(0).hyps[..] && prem(0).concl == s.concl,
                || "premise is not the conclusion without its last hypothesis".into(),
            )
        }
        ProofRule::AndR => {
            let Formula::Conj(a, b) = &s.concl else {
                return Err("conclusion is not a conjunction".into());
            };
            ensure(ms::sum(&prem(0).hyps, &prem(1).hyps) == s.hyps, || {
                "hypotheses are not the premises' concatenated".into()
            })?;
            ensure(&prem(0).concl == &**a && &prem(1).concl == &**b, || {
                "premises do not prove the conjuncts".into()
            })
        }
        ProofRule::AndL => {
            let Some(Formula::Conj(a, b)) = s.hyps.last() else {
                return Err("last hypothesis is not a conjunction".into());
            };
            let mut h = s.hyps[..s.hyps.len() - 1].to_vec();
            h.push((**a).clone());
            h.push((**b).clone());
            ensure(h == prem(0).hyps && prem(0).concl == s.concl, || {
                "premise does not split the last hypothesis".into()
            })
        }
        ProofRule::ImpR => {
            let Formula::Impl(a, b) = &s.concl else {
                return Err("conclusion is not an implication".into());
            };
            let mut h = s.hyps.clone();
            h.push((**a).clone());
            ensure(h == prem(0).hyps && prem(0).concl == **b, || {
                "premise is not the conclusion with the antecedent appended".into()
            })
        }
        ProofRule::ImpL => {
            let g = prem(0).hyps.len();
            let Some(Formula::Impl(a, b)) = s.hyps.get(g) else {
                return Err(format!("hypothesis {g} is not an implication"));
            };
            ensure(prem(0).concl == **a, || "first premise does not prove the antecedent".into())?;
            ensure(prem(1).hyps.first() == Some(&**b), || {
                "second premise does not start with the consequent".into()
            })?;
            ensure(
                s.hyps[..g] == prem(0).hyps[..] && s.hyps[g + 1..] == prem(1).hyps[1..],
                || "contexts do not match the premises".into(),
            )?;
            ensure(prem(1).concl == s.concl, || "conclusions differ".into())
        }
        ProofRule::Cut => {
            let a = &prem(0).concl;
            ensure(prem(1).hyps.first() == Some(a), || {
                "second premise does not start with the cut formula".into()
            })?;
            ensure(ms::sum(&prem(0).hyps, &prem(1).hyps[1..]) == s.hyps, || {
                "hypotheses are not the premises' contexts concatenated".into()
            })?;
            ensure(prem(1).concl == s.concl, || "conclusions differ".into())
        }
        r => Err(format!("rule `{r}` does not belong to the Gentzen calculus")),
    }
}

fn linear(p: &ProofTree) -> Verdict {
    let s = &p.sequent;
    let prem = |k: usize| &p.premises[k].sequent;
    let same_concl = |k: usize| ensure(prem(k).concl == s.concl, || "conclusions differ".into());
    // premise 0 must be the conclusion with hypothesis i replaced by `add`
    let replaces = |i: usize, add: &[&Formula]| -> Verdict {
        let rest = ms::without_at(&s.hyps, i);
        let want: Vec<Formula> = rest.into_iter().chain(add.iter().map(|f| (*f).clone())).collect();
        ensure(ms::eq(&want, &prem(0).hyps), || {
            format!("premise hypotheses do not match hypothesis {i} being decomposed")
        })
    };
    match p.rule {
        ProofRule::Id => ensure(s.hyps.len() == 1 && s.hyps[0] == s.concl, || {
            "identity needs exactly the conclusion as hypothesis".into()
        }),
        ProofRule::Cut => {
            let rest = ms::minus(&prem(1).hyps, &prem(0).concl)
                .ok_or("second premise does not use the cut formula")?;
            ensure(ms::eq(&ms::sum(&prem(0).hyps, &rest), &s.hyps), || {
                "hypotheses are not split between the premises".into()
            })?;
            same_concl(1)
        }
        ProofRule::TensorR => {
            let Formula::Tensor(a, b) = &s.concl else {
                return Err("conclusion is not a tensor".into());
            };
            ensure(ms::eq(&ms::sum(&prem(0).hyps, &prem(1).hyps), &s.hyps), || {
                "hypotheses are not split disjointly between the premises".into()
            })?;
            ensure(prem(0).concl == **a && prem(1).concl == **b, || {
                "premises do not prove the factors".into()
            })
        }
        ProofRule::TensorL(i) => {
            let Formula::Tensor(a, b) = hyp(s, i)? else {
                return Err(format!("hypothesis {i} is not a tensor"));
            };
            replaces(i, &[a, b])?;
            same_concl(0)
        }
        ProofRule::LolliR => {
            let Formula::Lolli(a, b) = &s.concl else {
                return Err("conclusion is not a linear implication".into());
            };
            ensure(ms::eq(&ms::sum(&s.hyps, &[(**a).clone()]), &prem(0).hyps), || {
                "premise hypotheses are not the conclusion's plus the antecedent".into()
            })?;
            ensure(prem(0).concl == **b, || "premise does not prove the consequent".into())
        }
        ProofRule::LolliL(i) => {
            let Formula::Lolli(a, b) = hyp(s, i)? else {
                return Err(format!("hypothesis {i} is not a linear implication"));
            };
            ensure(prem(0).concl == **a, || "first premise does not prove the antecedent".into())?;
            let rest = ms::minus(&prem(1).hyps, b).ok_or("second premise does not use the consequent")?;
            ensure(
                ms::eq(&ms::sum(&prem(0).hyps, &rest), &ms::without_at(&s.hyps, i)),
                || "hypotheses are not split between the premises".into(),
            )?;
            same_concl(1)
        }
        ProofRule::LolliE => {
            let Formula::Lolli(a, b) = &prem(0).concl else {
                return Err("first premise is not a linear implication".into());
            };
            ensure(prem(1).concl == **a, || "second premise does not prove the antecedent".into())?;
            ensure(s.concl == **b, || "conclusion is not the consequent".into())?;
            ensure(ms::eq(&ms::sum(&prem(0).hyps, &prem(1).hyps), &s.hyps), || {
                "hypotheses are not split between the premises".into()
            })
        }
        ProofRule::WithR => {
            let Formula::With(a, b) = &s.concl else {
                return Err("conclusion is not an additive conjunction".into());
            };
            ensure(ms::eq(&prem(0).hyps, &s.hyps) && ms::eq(&prem(1).hyps, &s.hyps), || {
                "both premises need the full context".into()
            })?;
            ensure(prem(0).concl == **a && prem(1).concl == **b, || {
                "premises do not prove the components".into()
            })
        }
        ProofRule::WithL1(i) | ProofRule::WithL2(i) => {
            let Formula::With(a, b) = hyp(s, i)? else {
                return Err(format!("hypothesis {i} is not an additive conjunction"));
            };
            let pick = if matches!(p.rule, ProofRule::WithL1(_)) { a } else { b };
            replaces(i, &[pick])?;
            same_concl(0)
        }
        ProofRule::BangL(i) => {
            let Formula::Bang(a) = hyp(s, i)? else {
                return Err(format!("hypothesis {i} is not banged"));
            };
            replaces(i, &[a])?;
            same_concl(0)
        }
        ProofRule::BangR => {
            let Formula::Bang(a) = &s.concl else {
                return Err("conclusion is not banged".into());
            };
            ensure(s.hyps.iter().all(Formula::is_bang), || {
                "promotion needs every hypothesis banged".into()
            })?;
            ensure(ms::eq(&prem(0).hyps, &s.hyps) && prem(0).concl == **a, || {
                "premise is not the conclusion with the outer bang removed".into()
            })
        }
        ProofRule::BangWeak(i) => {
            ensure(hyp(s, i)?.is_bang(), || format!("weakening on unbanged hypothesis {i}"))?;
            replaces(i, &[])?;
            same_concl(0)
        }
        ProofRule::BangContr(i) => {
            let f = hyp(s, i)?;
            ensure(f.is_bang(), || format!("contraction on unbanged hypothesis {i}"))?;
            ensure(ms::eq(&ms::sum(&s.hyps, &[f.clone()]), &prem(0).hyps), || {
                format!("premise does not duplicate hypothesis {i}")
            })?;
            same_concl(0)
        }
        r => Err(format!("rule `{r}` does not belong to linear logic")),
    }
}

fn fragment_ok(s: &Sequent, system: System) -> Verdict {
    let want = match system {
        System::Nd | System::Gentzen => Fragment::Intuitionistic,
        System::Linear => Fragment::Linear,
    };
    match s.fragment() {
        Ok(None) => Ok(()),
        Ok(Some(f)) if f == want => Ok(()),
        Ok(Some(f)) => Err(format!("{f} formulas are not part of the {system} system")),
        Err(()) => Err("formula mixes intuitionistic and linear connectives".into()),
    }
}

fn walk(p: &ProofTree, system: System, path: &mut Vec<usize>) -> Result<(), ProofError> {
    let fail = |reason: String, path: &[usize]| ProofError::RuleViolation {
        path: path.to_vec(),
        reason,
    };
    fragment_ok(&p.sequent, system).map_err(|r| fail(r, path))?;
    if p.premises.len() != p.rule.arity() {
        return Err(fail(
            format!("`{}` takes {} premises, got {}", p.rule, p.rule.arity(), p.premises.len()),
            path,
        ));
    }
    let verdict = match system {
        System::Nd => nd(p),
        System::Gentzen => gentzen(p),
        System::Linear => linear(p),
    };
    verdict.map_err(|r| fail(format!("{}: {r}", p.rule), path))?;
    for (k, q) in p.premises.iter().enumerate() {
        path.push(k);
        walk(q, system, path)?;
        path.pop();
    }
    Ok(())
}

/// Accepts iff every node is an instance of a rule of `system`.
pub fn check_proof(p: &ProofTree, system: System) -> Result<(), ProofError> {
    walk(p, system, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::parse_sequent;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    #[test]
    fn identity_axiom() {
        let p = ProofTree::leaf(ProofRule::Id, seq("A |- A"));
        check_proof(&p, System::Gentzen).unwrap();
        check_proof(&p, System::Linear).unwrap();
        let p = ProofTree::leaf(ProofRule::Id, seq("B, A |- A"));
        assert!(check_proof(&p, System::Linear).is_err());
        let p = ProofTree::leaf(ProofRule::NdId(1), seq("B, A |- A"));
        check_proof(&p, System::Nd).unwrap();
    }

    #[test]
    fn tensor_right_rejects_shared_hypothesis() {
        let p = ProofTree::new(
            ProofRule::TensorR,
            seq("A |- A (x) A"),
            vec![
                ProofTree::leaf(ProofRule::Id, seq("A |- A")),
                ProofTree::leaf(ProofRule::Id, seq("A |- A")),
            ],
        );
        let e = check_proof(&p, System::Linear).unwrap_err();
        assert!(matches!(e, ProofError::RuleViolation { ref path, .. } if path.is_empty()));
    }

    #[test]
    fn promotion_side_condition() {
        let bad = ProofTree::new(
            ProofRule::BangR,
            seq("A |- !A"),
            vec![ProofTree::leaf(ProofRule::Id, seq("A |- A"))],
        );
        assert!(check_proof(&bad, System::Linear).is_err());
        let good = ProofTree::new(
            ProofRule::BangR,
            seq("!A |- !A"),
            vec![ProofTree::new(
                ProofRule::BangL(0),
                seq("!A |- A"),
                vec![ProofTree::leaf(ProofRule::Id, seq("A |- A"))],
            )],
        );
        check_proof(&good, System::Linear).unwrap();
    }

    #[test]
    fn linear_structural_rules_need_bangs() {
        let p = ProofTree::new(
            ProofRule::BangWeak(0),
            seq("B, A |- A"),
            vec![ProofTree::leaf(ProofRule::Id, seq("A |- A"))],
        );
        assert!(check_proof(&p, System::Linear).is_err());
        let p = ProofTree::new(
            ProofRule::BangWeak(0),
            seq("!B, A |- A"),
            vec![ProofTree::leaf(ProofRule::Id, seq("A |- A"))],
        );
        check_proof(&p, System::Linear).unwrap();
    }

    #[test]
    fn wrong_system_and_arity() {
        let p = ProofTree::leaf(ProofRule::Id, seq("A (x) B |- A (x) B"));
        assert!(check_proof(&p, System::Gentzen).is_err());
        let p = ProofTree::leaf(ProofRule::ImpR, seq("|- A => A"));
        assert!(check_proof(&p, System::Gentzen).is_err());
    }

    #[test]
    fn violation_path_points_at_the_bad_node() {
        let p = ProofTree::new(
            ProofRule::LolliR,
            seq("|- A -o A"),
            vec![ProofTree::leaf(ProofRule::TensorL(0), seq("A |- A"))],
        );
        match check_proof(&p, System::Linear).unwrap_err() {
            ProofError::RuleViolation { path, .. } => assert_eq!(path, vec![0]),
            e => panic!("{e}"),
        }
    }
}
