use super::check::check_proof;
use super::formula::{Formula, Sequent};
use super::tree::{ProofRule, ProofTree, System};
use super::ProofError;
use crate::syntax::term as tm;
use crate::syntax::{substitute, Context, Name, Side, Term, Type};
use crate::typing::{Derivation, Rule};

/// The system a proof is written in, read off its rules.
fn system_of(p: &ProofTree) -> System {
    let mut nd = false;
    let mut gentzen = false;
    let mut linear = false;
    fn walk(p: &ProofTree, flags: &mut [&mut bool; 3]) {
        match p.rule.systems() {
            [System::Nd] => *flags[0] = true,
            [System::Gentzen] => *flags[1] = true,
            [System::Linear] => *flags[2] = true,
            _ => {}
        }
        for q in &p.premises {
            walk(q, flags);
        }
    }
    walk(p, &mut [&mut nd, &mut gentzen, &mut linear]);
    if nd {
        System::Nd
    } else if gentzen {
        System::Gentzen
    } else if linear || !matches!(p.sequent.fragment(), Ok(Some(crate::syntax::Fragment::Intuitionistic))) {
        System::Linear
    } else {
        System::Gentzen
    }
}

struct Namer {
    next: usize,
}

impl Namer {
    fn fresh(&mut self) -> Name {
        let n = format!("x{}", self.next);
        self.next += 1;
        n
    }
}

/// Read a term off a checked proof. Hypothesis `i` of the root becomes the
/// variable `x{i}`.
pub fn proof_to_term(p: &ProofTree) -> Result<(Context, Term, Type), ProofError> {
    let system = system_of(p);
    check_proof(p, system)?;
    if let Some(r) = find_bang_rule(p) {
        return Err(ProofError::NoTermAssignment(format!("rule `{r}` has no term counterpart")));
    }
    let n = p.sequent.hyps.len();
    let env: Vec<Name> = (0..n).map(|i| format!("x{i}")).collect();
    let mut namer = Namer { next: n };
    let term = match system {
        System::Nd => nd_term(p, &env, &mut namer),
        System::Gentzen => gentzen_term(p, &env, &mut namer),
        System::Linear => linear_term(p, &env, &mut namer)?,
    };
    let ctx = env
        .into_iter()
        .zip(&p.sequent.hyps)
        .map(|(x, f)| (x, f.to_type()))
        .collect();
    Ok((ctx, term, p.sequent.concl.to_type()))
}

fn find_bang_rule(p: &ProofTree) -> Option<ProofRule> {
    if p.rule.is_bang_rule() {
        return Some(p.rule);
    }
    p.premises.iter().find_map(find_bang_rule)
}

/// Variables for a premise whose hypotheses are a set-equal rearrangement
/// of the parent's, plus possibly `extra`.
fn nd_env(parent: &Sequent, env: &[Name], prem: &Sequent, extra: Option<(&Formula, &Name)>) -> Vec<Name> {
    let mut extra = extra;
    prem.hyps
        .iter()
        .enumerate()
        .map(|(j, f)| {
            if parent.hyps.get(j) == Some(f) {
                return env[j].clone();
            }
            if let Some((a, x)) = extra {
                if a == f {
                    extra = None;
                    return x.clone();
                }
            }
            let k = parent.hyps.iter().position(|g| g == f).expect("checked proof");
            env[k].clone()
        })
        .collect()
}

fn nd_term(p: &ProofTree, env: &[Name], namer: &mut Namer) -> Term {
    let s = &p.sequent;
    let sub = |k: usize, namer: &mut Namer| {
        let q = &p.premises[k];
        nd_term(q, &nd_env(s, env, &q.sequent, None), namer)
    };
    match p.rule {
        ProofRule::NdId(i) => tm::var(env[i].clone()),
        ProofRule::AndIntro => {
            let l = sub(0, namer);
            tm::pair(l, sub(1, namer))
        }
        ProofRule::AndElim1 => tm::fst(sub(0, namer)),
        ProofRule::AndElim2 => tm::snd(sub(0, namer)),
        ProofRule::ImpIntro => {
            let Formula::Impl(a, _) = &s.concl else { unreachable!() };
            let x = namer.fresh();
            let q = &p.premises[0];
            let qenv = nd_env(s, env, &q.sequent, Some((a, &x)));
            tm::lam(x, nd_term(q, &qenv, namer))
        }
        ProofRule::ImpElim => {
            let f = sub(0, namer);
            tm::app(f, sub(1, namer))
        }
        _ => unreachable!("checked natural deduction proof"),
    }
}

fn gentzen_term(p: &ProofTree, env: &[Name], namer: &mut Namer) -> Term {
    let n = env.len();
    let prem = |k: usize| &p.premises[k];
    match p.rule {
        ProofRule::Id => tm::var(env[0].clone()),
        ProofRule::Exch(i) => {
            let mut e = env.to_vec();
            e.swap(i, i + 1);
            gentzen_term(prem(0), &e, namer)
        }
        ProofRule::Contr => {
            let mut e = env.to_vec();
            e.push(env[n - 1].clone());
            gentzen_term(prem(0), &e, namer)
        }
        ProofRule::Weak => gentzen_term(prem(0), &env[..n - 1], namer),
        ProofRule::AndR => {
            let g = prem(0).sequent.hyps.len();
            let l = gentzen_term(prem(0), &env[..g], namer);
            tm::pair(l, gentzen_term(prem(1), &env[g..], namer))
        }
        ProofRule::AndL => {
            let z = tm::var(env[n - 1].clone());
            let (a, b) = (namer.fresh(), namer.fresh());
            let mut e = env[..n - 1].to_vec();
            e.push(a.clone());
            e.push(b.clone());
            let body = gentzen_term(prem(0), &e, namer);
            let body = substitute(&body, &tm::fst(z.clone()), &a);
            substitute(&body, &tm::snd(z), &b)
        }
        ProofRule::ImpR => {
            let x = namer.fresh();
            let mut e = env.to_vec();
            e.push(x.clone());
            tm::lam(x, gentzen_term(prem(0), &e, namer))
        }
        ProofRule::ImpL => {
            let g = prem(0).sequent.hyps.len();
            let t = gentzen_term(prem(0), &env[..g], namer);
            let f = tm::var(env[g].clone());
            let y = namer.fresh();
            let e: Vec<Name> = std::iter::once(y.clone()).chain(env[g + 1..].iter().cloned()).collect();
            let u = gentzen_term(prem(1), &e, namer);
            substitute(&u, &tm::app(f, t), &y)
        }
        ProofRule::Cut => {
            let g = prem(0).sequent.hyps.len();
            let t = gentzen_term(prem(0), &env[..g], namer);
            let y = namer.fresh();
            let e: Vec<Name> = std::iter::once(y.clone()).chain(env[g..].iter().cloned()).collect();
            let u = gentzen_term(prem(1), &e, namer);
            substitute(&u, &t, &y)
        }
        _ => unreachable!("checked Gentzen proof"),
    }
}

/// Hypotheses still available to premises, as (formula, variable) pairs.
struct Pool {
    items: Vec<(Formula, Name, bool)>,
}

impl Pool {
    fn new(hyps: &[Formula], env: &[Name]) -> Pool {
        Pool {
            items: hyps.iter().cloned().zip(env.iter().cloned()).map(|(f, x)| (f, x, false)).collect(),
        }
    }

    fn without(mut self, i: usize) -> Pool {
        self.items.remove(i);
        self
    }

    fn with(mut self, f: &Formula, x: &Name) -> Pool {
        self.items.push((f.clone(), x.clone(), false));
        self
    }

    /// Claim variables for `hyps`, first unused match each.
    fn take(&mut self, hyps: &[Formula]) -> Result<Vec<Name>, ProofError> {
        hyps.iter()
            .map(|f| {
                let slot = self
                    .items
                    .iter_mut()
                    .find(|(g, _, used)| !used && g == f)
                    .ok_or_else(|| ProofError::Malformed(format!("no hypothesis left for {f}")))?;
                slot.2 = true;
                Ok(slot.1.clone())
            })
            .collect()
    }

    /// Like [`Pool::take`] without consuming, for additive premises.
    fn peek(&self, hyps: &[Formula]) -> Result<Vec<Name>, ProofError> {
        let mut copy = Pool {
            items: self.items.clone(),
        };
        copy.take(hyps)
    }

    fn rest(self) -> Pool {
        Pool {
            items: self.items.into_iter().filter(|(_, _, used)| !used).collect(),
        }
    }
}

fn linear_term(p: &ProofTree, env: &[Name], namer: &mut Namer) -> Result<Term, ProofError> {
    let s = &p.sequent;
    let pool = Pool::new(&s.hyps, env);
    let prem = |k: usize| &p.premises[k];
    let down = |q: &ProofTree, mut pool: Pool, namer: &mut Namer| -> Result<Term, ProofError> {
        let e = pool.take(&q.sequent.hyps)?;
        linear_term(q, &e, namer)
    };
    Ok(match p.rule {
        ProofRule::Id => tm::var(env[0].clone()),
        ProofRule::TensorR | ProofRule::LolliE => {
            let mut pool = pool;
            let e0 = pool.take(&prem(0).sequent.hyps)?;
            let t = linear_term(prem(0), &e0, namer)?;
            let u = down(prem(1), pool.rest(), namer)?;
            if p.rule == ProofRule::TensorR {
                tm::tensor(t, u)
            } else {
                tm::app(t, u)
            }
        }
        ProofRule::TensorL(i) => {
            let Formula::Tensor(a, b) = &s.hyps[i] else { unreachable!() };
            let (x, y) = (namer.fresh(), namer.fresh());
            let pool = pool.without(i).with(a, &x).with(b, &y);
            tm::let_tensor(x, y, tm::var(env[i].clone()), down(prem(0), pool, namer)?)
        }
        ProofRule::LolliR => {
            let Formula::Lolli(a, _) = &s.concl else { unreachable!() };
            let x = namer.fresh();
            tm::lam(x.clone(), down(prem(0), pool.with(a, &x), namer)?)
        }
        ProofRule::LolliL(i) => {
            let Formula::Lolli(_, b) = &s.hyps[i] else { unreachable!() };
            let mut pool = pool.without(i);
            let e0 = pool.take(&prem(0).sequent.hyps)?;
            let t = linear_term(prem(0), &e0, namer)?;
            let y = namer.fresh();
            let u = down(prem(1), pool.rest().with(b, &y), namer)?;
            substitute(&u, &tm::app(tm::var(env[i].clone()), t), &y)
        }
        ProofRule::Cut => {
            let mut pool = pool;
            let e0 = pool.take(&prem(0).sequent.hyps)?;
            let t = linear_term(prem(0), &e0, namer)?;
            let y = namer.fresh();
            let u = down(prem(1), pool.rest().with(&prem(0).sequent.concl, &y), namer)?;
            substitute(&u, &t, &y)
        }
        ProofRule::WithR => {
            let e0 = pool.peek(&prem(0).sequent.hyps)?;
            let e1 = pool.peek(&prem(1).sequent.hyps)?;
            let l = linear_term(prem(0), &e0, namer)?;
            tm::pair(l, linear_term(prem(1), &e1, namer)?)
        }
        ProofRule::WithL1(i) | ProofRule::WithL2(i) => {
            let Formula::With(a, b) = &s.hyps[i] else { unreachable!() };
            let (side, kept) = match p.rule {
                ProofRule::WithL1(_) => (Side::First, a),
                _ => (Side::Second, b),
            };
            let x = namer.fresh();
            let pool = pool.without(i).with(kept, &x);
            tm::let_with(side, x, tm::var(env[i].clone()), down(prem(0), pool, namer)?)
        }
        r => return Err(ProofError::NoTermAssignment(format!("rule `{r}` has no term counterpart"))),
    })
}

/// The formula naming a type; type variables become atoms `t0`, `t1`, ...
pub(crate) fn formula_of_type(t: &Type) -> Formula {
    match t {
        Type::Base(b) => Formula::atom(b.clone()),
        Type::Var(v) => Formula::atom(format!("t{v}")),
        Type::Arrow(a, b) => Formula::imp(formula_of_type(a), formula_of_type(b)),
        Type::Product(a, b) => Formula::conj(formula_of_type(a), formula_of_type(b)),
        Type::Tensor(a, b) => Formula::tensor(formula_of_type(a), formula_of_type(b)),
        Type::Lollipop(a, b) => Formula::lolli(formula_of_type(a), formula_of_type(b)),
        Type::With(a, b) => Formula::with(formula_of_type(a), formula_of_type(b)),
        Type::Bang(a) => Formula::bang(formula_of_type(a)),
    }
}

fn sequent_of(d: &Derivation) -> Sequent {
    Sequent::new(
        d.context.iter().map(|(_, t)| formula_of_type(t)).collect(),
        formula_of_type(&d.ty),
    )
}

/// Natural deduction proof of a simply-typed derivation, or a linear
/// sequent proof of a linear one. Eliminations of ⊗ and & become a cut
/// against the matching left rule.
pub fn term_to_proof(d: &Derivation) -> ProofTree {
    let s = sequent_of(d);
    let prems = |d: &Derivation| d.premises.iter().map(term_to_proof).collect::<Vec<_>>();
    match d.rule {
        Rule::Var => {
            let Term::Var(x) = &d.term else { unreachable!() };
            let i = d.context.iter().rposition(|(y, _)| y == x).expect("bound variable");
            ProofTree::leaf(ProofRule::NdId(i), s)
        }
        Rule::Pair => ProofTree::new(ProofRule::AndIntro, s, prems(d)),
        Rule::Proj1 => ProofTree::new(ProofRule::AndElim1, s, prems(d)),
        Rule::Proj2 => ProofTree::new(ProofRule::AndElim2, s, prems(d)),
        Rule::Abs => ProofTree::new(ProofRule::ImpIntro, s, prems(d)),
        Rule::App => ProofTree::new(ProofRule::ImpElim, s, prems(d)),
        Rule::Ax => ProofTree::leaf(ProofRule::Id, s),
        Rule::TensorI => ProofTree::new(ProofRule::TensorR, s, prems(d)),
        Rule::LolliI => ProofTree::new(ProofRule::LolliR, s, prems(d)),
        Rule::LolliE => ProofTree::new(ProofRule::LolliE, s, prems(d)),
        Rule::WithI => ProofTree::new(ProofRule::WithR, s, prems(d)),
        Rule::TensorE | Rule::WithE1 | Rule::WithE2 => {
            let scrut = term_to_proof(&d.premises[0]);
            let body = term_to_proof(&d.premises[1]);
            let principal = scrut.sequent.concl.clone();
            let (rule, introduced): (ProofRule, Vec<Formula>) = match (&principal, d.rule) {
                (Formula::Tensor(a, b), Rule::TensorE) => {
                    (ProofRule::TensorL(0), vec![(**a).clone(), (**b).clone()])
                }
                (Formula::With(a, _), Rule::WithE1) => (ProofRule::WithL1(0), vec![(**a).clone()]),
                (Formula::With(_, b), Rule::WithE2) => (ProofRule::WithL2(0), vec![(**b).clone()]),
                _ => unreachable!("valid derivation"),
            };
            let mut delta = body.sequent.hyps.clone();
            for f in &introduced {
                let k = delta.iter().rposition(|g| g == f).expect("bound pattern variable");
                delta.remove(k);
            }
            let left = Sequent::new(
                std::iter::once(principal).chain(delta).collect(),
                body.sequent.concl.clone(),
            );
            let left = ProofTree::new(rule, left, vec![body]);
            ProofTree::new(ProofRule::Cut, s, vec![scrut, left])
        }
    }
}
