//! β-reduction in normal order, η-contraction and conversion checking.

use std::fmt;

use crate::syntax::print::Notation;
use crate::syntax::term::{app, lam, let_tensor, let_with, pair, tensor};
use crate::syntax::{alpha_equal, simultaneous_substitute, substitute, Context, Fragment, Side, Term, Type};
use crate::typing::{typecheck_linear, typecheck_stlc, Derivation, Rule, TypeError};

pub const DEFAULT_FUEL: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BetaRule {
    Arrow,
    Proj1,
    Proj2,
    LetTensor,
    With1,
    With2,
}

impl BetaRule {
    pub fn name(self) -> &'static str {
        match self {
            BetaRule::Arrow => "beta-arrow",
            BetaRule::Proj1 => "beta-proj1",
            BetaRule::Proj2 => "beta-proj2",
            BetaRule::LetTensor => "beta-let-tensor",
            BetaRule::With1 => "beta-with1",
            BetaRule::With2 => "beta-with2",
        }
    }
}

impl fmt::Display for BetaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One contraction: the redex found at `path` and what replaced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub path: Vec<usize>,
    pub rule: BetaRule,
    pub before: Term,
    pub after: Term,
}

impl ReductionStep {
    pub fn render(&self, notation: Notation) -> String {
        let path = if self.path.is_empty() {
            "root".to_string()
        } else {
            self.path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
        };
        let arrow = match notation {
            Notation::Ascii => "-->",
            Notation::Unicode => "⟶",
        };
        format!(
            "{path}  {}  {} {arrow} {}",
            self.rule,
            self.before.display(notation),
            self.after.display(notation)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("no normal form reached within {fuel} steps")]
    FuelExhausted { fuel: usize },
    #[error("ill-typed: {0}")]
    IllTyped(#[from] TypeError),
}

/// Contract `t` if it is itself a redex.
pub fn contract(t: &Term) -> Option<(Term, BetaRule)> {
    match t {
        Term::App(f, u) => match &**f {
            Term::Lam(x, body) => Some((substitute(body, u, x), BetaRule::Arrow)),
            _ => None,
        },
        Term::Proj(side, p) => match &**p {
            Term::Pair(a, b) => Some(match side {
                Side::First => ((**a).clone(), BetaRule::Proj1),
                Side::Second => ((**b).clone(), BetaRule::Proj2),
            }),
            _ => None,
        },
        Term::LetTensor {
            left,
            right,
            scrutinee,
            body,
        } => match &**scrutinee {
            Term::Tensor(a, b) => {
                let bindings = [(left.clone(), (**a).clone()), (right.clone(), (**b).clone())];
                let out = simultaneous_substitute(body, &bindings).ok()?;
                Some((out, BetaRule::LetTensor))
            }
            _ => None,
        },
        Term::LetWith {
            side,
            binder,
            scrutinee,
            body,
        } => match &**scrutinee {
            Term::Pair(a, b) => Some(match side {
                Side::First => (substitute(body, a, binder), BetaRule::With1),
                Side::Second => (substitute(body, b, binder), BetaRule::With2),
            }),
            _ => None,
        },
        _ => None,
    }
}

/// Contract the leftmost-outermost redex.
pub fn reduce_once(t: &Term) -> Option<(Term, ReductionStep)> {
    let mut path = Vec::new();
    let (out, step) = reduce_at(t, &mut path)?;
    Some((out, step))
}

fn reduce_at(t: &Term, path: &mut Vec<usize>) -> Option<(Term, ReductionStep)> {
    if let Some((after, rule)) = contract(t) {
        let step = ReductionStep {
            path: path.clone(),
            rule,
            before: t.clone(),
            after: after.clone(),
        };
        return Some((after, step));
    }
    let mut child = |i: usize, c: &Term| {
        path.push(i);
        let r = reduce_at(c, path);
        path.pop();
        r
    };
    match t {
        Term::Var(_) => None,
        Term::Lam(x, b) => child(0, b).map(|(b, s)| (lam(x.clone(), b), s)),
        Term::Proj(side, a) => child(0, a).map(|(a, s)| (Term::Proj(*side, Box::new(a)), s)),
        Term::App(a, b) | Term::Pair(a, b) | Term::Tensor(a, b) => {
            let rebuild = |l: Term, r: Term| match t {
                Term::App(..) => app(l, r),
                Term::Pair(..) => pair(l, r),
                _ => tensor(l, r),
            };
            if let Some((a2, s)) = child(0, a) {
                return Some((rebuild(a2, (**b).clone()), s));
            }
            child(1, b).map(|(b2, s)| (rebuild((**a).clone(), b2), s))
        }
        Term::LetTensor {
            left,
            right,
            scrutinee,
            body,
        } => {
            if let Some((s2, s)) = child(0, scrutinee) {
                return Some((let_tensor(left.clone(), right.clone(), s2, (**body).clone()), s));
            }
            child(1, body).map(|(b2, s)| {
                (let_tensor(left.clone(), right.clone(), (**scrutinee).clone(), b2), s)
            })
        }
        Term::LetWith {
            side,
            binder,
            scrutinee,
            body,
        } => {
            if let Some((s2, s)) = child(0, scrutinee) {
                return Some((let_with(*side, binder.clone(), s2, (**body).clone()), s));
            }
            child(1, body)
                .map(|(b2, s)| (let_with(*side, binder.clone(), (**scrutinee).clone(), b2), s))
        }
    }
}

pub fn is_normal(t: &Term) -> bool {
    reduce_once(t).is_none()
}

/// β-normal form together with the steps taken.
pub fn normalize_trace(t: &Term, fuel: usize) -> Result<(Term, Vec<ReductionStep>), RewriteError> {
    let mut cur = t.clone();
    let mut steps = Vec::new();
    while let Some((next, step)) = reduce_once(&cur) {
        if steps.len() == fuel {
            return Err(RewriteError::FuelExhausted { fuel });
        }
        steps.push(step);
        cur = next;
    }
    Ok((cur, steps))
}

pub fn normalize(t: &Term, fuel: usize) -> Result<Term, RewriteError> {
    let mut cur = t.clone();
    let mut used = 0;
    while let Some((next, _)) = reduce_once(&cur) {
        if used == fuel {
            return Err(RewriteError::FuelExhausted { fuel });
        }
        used += 1;
        cur = next;
    }
    Ok(cur)
}

/// η-contract to a fixed point, guided by a typing derivation of `t`.
///
/// Linear derivations are returned unchanged: η is only available at
/// function and product types.
pub fn eta_contract(t: &Term, typing: &Derivation) -> Term {
    if typing.rule.is_linear() || !alpha_equal(t, &typing.term) {
        return t.clone();
    }
    contract_node(typing)
}

fn contract_node(d: &Derivation) -> Term {
    let kids: Vec<Term> = d.premises.iter().map(contract_node).collect();
    match (&d.term, d.rule) {
        (Term::Lam(x, _), Rule::Abs) => {
            let (renamed, _) = d.premises[0].context.last().expect("abs premise binds").clone();
            let mut body = kids.into_iter().next().unwrap();
            if &renamed != x {
                body = body.swap_vars(&renamed, x);
            }
            if let Term::App(f, arg) = &body {
                if matches!(&**arg, Term::Var(y) if y == x) && !f.free_vars().contains(x) {
                    return (**f).clone();
                }
            }
            lam(x.clone(), body)
        }
        (Term::Pair(..), Rule::Pair) => {
            let mut it = kids.into_iter();
            let (l, r) = (it.next().unwrap(), it.next().unwrap());
            if let (Term::Proj(Side::First, v), Term::Proj(Side::Second, w)) = (&l, &r) {
                if alpha_equal(v, w) {
                    return (**v).clone();
                }
            }
            pair(l, r)
        }
        (Term::App(..), Rule::App) => {
            let mut it = kids.into_iter();
            app(it.next().unwrap(), it.next().unwrap())
        }
        (Term::Proj(side, _), _) => Term::Proj(*side, Box::new(kids.into_iter().next().unwrap())),
        (t, _) => t.clone(),
    }
}

fn is_intuitionistic(ctx: &Context, t: &Term, ty: &Type) -> bool {
    fn linear_syntax(t: &Term) -> bool {
        matches!(t, Term::Tensor(..) | Term::LetTensor { .. } | Term::LetWith { .. })
            || t.children().into_iter().any(linear_syntax)
    }
    let committed = |ty: &Type| ty.fragment() == Ok(Some(Fragment::Linear));
    !linear_syntax(t) && !committed(ty) && !ctx.iter().any(|(_, t)| committed(t))
}

/// Typecheck in whichever calculus the judgement belongs to.
pub fn typecheck_any(ctx: &Context, t: &Term, ty: &Type) -> Result<Derivation, TypeError> {
    if is_intuitionistic(ctx, t, ty) {
        typecheck_stlc(ctx, t, ty)
    } else {
        typecheck_linear(ctx, t, ty)
    }
}

/// βη-normal form of a typed term (β only in the linear calculus).
pub fn beta_eta_normal(ctx: &Context, t: &Term, ty: &Type, fuel: usize) -> Result<Term, RewriteError> {
    typecheck_any(ctx, t, ty)?;
    let nf = normalize(t, fuel)?;
    if !is_intuitionistic(ctx, t, ty) {
        return Ok(nf);
    }
    let d = typecheck_stlc(ctx, &nf, ty)?;
    Ok(eta_contract(&nf, &d))
}

/// `t =λ u` at `ty`, decided by comparing normal forms up to α.
pub fn decide_conversion(ctx: &Context, t: &Term, u: &Term, ty: &Type) -> Result<bool, RewriteError> {
    decide_conversion_with_fuel(ctx, t, u, ty, DEFAULT_FUEL)
}

pub fn decide_conversion_with_fuel(
    ctx: &Context,
    t: &Term,
    u: &Term,
    ty: &Type,
    fuel: usize,
) -> Result<bool, RewriteError> {
    let a = beta_eta_normal(ctx, t, ty, fuel)?;
    let b = beta_eta_normal(ctx, u, ty, fuel)?;
    Ok(alpha_equal(&a, &b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_term, parse_type};

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn single_steps() {
        let (r, s) = reduce_once(&t("(\\x. x) (\\y. y)")).unwrap();
        assert_eq!(r, t("\\y. y"));
        assert_eq!(s.rule, BetaRule::Arrow);
        assert_eq!(reduce_once(&t("fst <a, b>")).unwrap().0, t("a"));
        let (r, s) = reduce_once(&t("let x * y = a * b in y * x")).unwrap();
        assert_eq!(r, t("b * a"));
        assert_eq!(s.rule, BetaRule::LetTensor);
        assert_eq!(reduce_once(&t("let <_,y> = <a, b> in y")).unwrap().0, t("b"));
        assert!(reduce_once(&t("\\x. x")).is_none());
    }

    #[test]
    fn leftmost_outermost_order() {
        let (_, s) = reduce_once(&t("f ((\\x. x) a) ((\\y. y) b)")).unwrap();
        assert_eq!(s.path, vec![0, 1]);
        let (_, s) = reduce_once(&t("(\\x. (\\y. y) x) a")).unwrap();
        assert!(s.path.is_empty());
    }

    #[test]
    fn normal_forms_and_fuel() {
        let (nf, steps) = normalize_trace(&t("(\\f. \\x. f x) (\\y. y)"), 100).unwrap();
        assert!(alpha_equal(&nf, &t("\\x. x")));
        assert_eq!(steps.len(), 2);
        let omega = t("(\\x. x x) (\\x. x x)");
        assert_eq!(normalize(&omega, 1000), Err(RewriteError::FuelExhausted { fuel: 1000 }));
    }

    #[test]
    fn trace_format() {
        let (_, s) = reduce_once(&t("g ((\\x. x) a)")).unwrap();
        assert_eq!(s.render(Notation::Ascii), "1  beta-arrow  (\\x. x) a --> a");
    }

    #[test]
    fn eta() {
        let ctx = vec![("f".to_string(), parse_type("b -> c").unwrap())];
        let term = t("\\x. f x");
        let d = typecheck_stlc(&ctx, &term, &parse_type("b -> c").unwrap()).unwrap();
        assert_eq!(eta_contract(&term, &d), t("f"));
        let ctx = vec![("v".to_string(), parse_type("b * c").unwrap())];
        let term = t("<fst v, snd v>");
        let d = typecheck_stlc(&ctx, &term, &parse_type("b * c").unwrap()).unwrap();
        assert_eq!(eta_contract(&term, &d), t("v"));
        let ctx = vec![("g".to_string(), parse_type("b -> b -> c").unwrap())];
        let term = t("\\x. \\y. g x y");
        let d = typecheck_stlc(&ctx, &term, &parse_type("b -> b -> c").unwrap()).unwrap();
        assert_eq!(eta_contract(&term, &d), t("g"));
    }

    #[test]
    fn conversion() {
        let b = parse_type("b").unwrap();
        let ctx = vec![("y".to_string(), b.clone())];
        assert!(decide_conversion(&ctx, &t("(\\x. x) y"), &t("y"), &b).unwrap());
        let bbb = parse_type("b -> b -> b").unwrap();
        assert!(!decide_conversion(&vec![], &t("\\x y. x"), &t("\\x y. y"), &bbb).unwrap());
        let fctx = vec![("f".to_string(), parse_type("b -> b").unwrap())];
        let bb = parse_type("b -> b").unwrap();
        assert!(decide_conversion(&fctx, &t("\\x. f x"), &t("f"), &bb).unwrap());
        assert!(matches!(
            decide_conversion(&vec![], &t("\\x. x x"), &t("\\x. x"), &bb),
            Err(RewriteError::IllTyped(_))
        ));
    }
}
