use std::collections::BTreeSet;

use super::unify::{Unifier, UnifyError};
use super::{check_distinct, default_leftovers, Derivation, Rule, TypeError};
use crate::syntax::{Context, Fragment, FreshNames, Side, Term, Type};

struct Checker {
    u: Unifier,
    names: FreshNames,
}

impl Checker {
    fn mismatch(&self, path: &[usize], t: &Term, expected: &Type, found: String) -> TypeError {
        TypeError::TypeMismatch {
            path: path.to_vec(),
            subterm: t.to_string(),
            expected: self.u.resolve(expected).to_string(),
            found,
        }
    }

    fn unify_at(
        &mut self,
        path: &[usize],
        t: &Term,
        expected: &Type,
        found: &Type,
    ) -> Result<(), TypeError> {
        let shown = self.u.resolve(found).to_string();
        match self.u.unify(expected, found) {
            Ok(()) => Ok(()),
            Err(UnifyError::Clash) => Err(self.mismatch(path, t, expected, shown)),
            Err(UnifyError::Occurs) => {
                Err(self.mismatch(path, t, expected, format!("{shown} (occurs check)")))
            }
        }
    }

    fn check(
        &mut self,
        ctx: &mut Context,
        t: &Term,
        expected: &Type,
        path: &mut Vec<usize>,
    ) -> Result<Derivation, TypeError> {
        let node = |rule, ctx: &Context, premises| Derivation {
            context: ctx.clone(),
            term: t.clone(),
            ty: expected.clone(),
            rule,
            premises,
        };
        match t {
            Term::Var(x) => {
                let found = ctx
                    .iter()
                    .find(|(y, _)| y == x)
                    .map(|(_, ty)| ty.clone())
                    .ok_or_else(|| TypeError::UnboundVariable(x.clone()))?;
                self.unify_at(path, t, expected, &found)?;
                Ok(node(Rule::Var, ctx, vec![]))
            }
            Term::Lam(x, body) => {
                let a = self.u.fresh();
                let b = self.u.fresh();
                self.unify_at(path, t, expected, &Type::arrow(a.clone(), b.clone()))?;
                let (binder, body) = if ctx.iter().any(|(y, _)| y == x) {
                    let y = self.names.fresh();
                    let renamed = body.swap_vars(&y, x);
                    (y, renamed)
                } else {
                    (x.clone(), (**body).clone())
                };
                ctx.push((binder, a));
                path.push(0);
                let premise = self.check(ctx, &body, &b, path);
                path.pop();
                ctx.pop();
                Ok(node(Rule::Abs, ctx, vec![premise?]))
            }
            Term::App(f, arg) => {
                let a = self.u.fresh();
                path.push(0);
                let pf = self.check(ctx, f, &Type::arrow(a.clone(), expected.clone()), path);
                path.pop();
                let pf = pf?;
                path.push(1);
                let pa = self.check(ctx, arg, &a, path);
                path.pop();
                Ok(node(Rule::App, ctx, vec![pf, pa?]))
            }
            Term::Pair(l, r) => {
                let a = self.u.fresh();
                let b = self.u.fresh();
                self.unify_at(path, t, expected, &Type::product(a.clone(), b.clone()))?;
                path.push(0);
                let pl = self.check(ctx, l, &a, path);
                path.pop();
                let pl = pl?;
                path.push(1);
                let pr = self.check(ctx, r, &b, path);
                path.pop();
                Ok(node(Rule::Pair, ctx, vec![pl, pr?]))
            }
            Term::Proj(side, inner) => {
                let other = self.u.fresh();
                let (want, rule) = match side {
                    Side::First => (Type::product(expected.clone(), other), Rule::Proj1),
                    Side::Second => (Type::product(other, expected.clone()), Rule::Proj2),
                };
                path.push(0);
                let p = self.check(ctx, inner, &want, path);
                path.pop();
                Ok(node(rule, ctx, vec![p?]))
            }
            Term::Tensor(..) | Term::LetTensor { .. } | Term::LetWith { .. } => {
                Err(TypeError::WrongFragment(format!(
                    "`{t}` is a linear construct, not part of the simply-typed calculus"
                )))
            }
        }
    }

    fn resolve_all(&self, d: &mut Derivation) {
        d.map_types(&|t| self.u.resolve(t));
    }
}

fn require_intuitionistic(t: &Type) -> Result<(), TypeError> {
    if t.is_in_fragment(Fragment::Intuitionistic) {
        Ok(())
    } else {
        Err(TypeError::WrongFragment(format!(
            "type `{t}` is not in the intuitionistic fragment"
        )))
    }
}

fn run(ctx: &Context, t: &Term, expected: &Type) -> Result<(Checker, Derivation), TypeError> {
    check_distinct(ctx)?;
    for (_, ty) in ctx {
        require_intuitionistic(ty)?;
    }
    require_intuitionistic(expected)?;
    let u = Unifier::with_rigid(ctx.iter().map(|(_, ty)| ty).chain([expected]));
    let mut names = FreshNames::avoiding([t]);
    for (x, _) in ctx {
        names.reserve(x.clone());
    }
    let mut checker = Checker { u, names };
    let mut ctx = ctx.clone();
    let d = checker.check(&mut ctx, t, expected, &mut Vec::new())?;
    Ok((checker, d))
}

/// Check `ctx |- t : expected` against the simply-typed rules.
pub fn typecheck_stlc(ctx: &Context, t: &Term, expected: &Type) -> Result<Derivation, TypeError> {
    let (checker, mut d) = run(ctx, t, expected)?;
    checker.resolve_all(&mut d);
    let keep: BTreeSet<u32> = checker.u.rigid().clone();
    default_leftovers(&mut d, &keep);
    Ok(d)
}

/// Principal derivation of `ctx |- t : ?`. Variables of `ctx` stay
/// fixed; the others are renumbered in order of first occurrence in the
/// conclusion type, then in the rest of the tree.
pub fn infer_derivation(ctx: &Context, t: &Term) -> Result<Derivation, TypeError> {
    check_distinct(ctx)?;
    for (_, ty) in ctx {
        require_intuitionistic(ty)?;
    }
    let mut u = Unifier::with_rigid(ctx.iter().map(|(_, ty)| ty));
    let goal = u.fresh();
    let mut names = FreshNames::avoiding([t]);
    for (x, _) in ctx {
        names.reserve(x.clone());
    }
    let mut checker = Checker { u, names };
    let mut work = ctx.clone();
    let mut d = checker
        .check(&mut work, t, &goal, &mut Vec::new())
        .map_err(not_typable)?;
    checker.resolve_all(&mut d);
    let rigid = checker.u.rigid().clone();
    let mut order: Vec<u32> = Vec::new();
    d.ty.vars_in_order()
        .into_iter()
        .for_each(|v| push_new(&mut order, v, &rigid));
    d.visit_types(&mut |ty| {
        ty.vars_in_order()
            .into_iter()
            .for_each(|v| push_new(&mut order, v, &rigid))
    });
    let base = rigid.iter().next_back().map_or(0, |m| m + 1);
    d.map_types(&|ty| {
        ty.map_vars(&|v| {
            order
                .iter()
                .position(|w| *w == v)
                .map(|i| Type::Var(base + i as u32))
        })
    });
    Ok(d)
}

fn push_new(order: &mut Vec<u32>, v: u32, rigid: &BTreeSet<u32>) {
    if !rigid.contains(&v) && !order.contains(&v) {
        order.push(v);
    }
}

fn not_typable(e: TypeError) -> TypeError {
    match e {
        TypeError::TypeMismatch { .. } => TypeError::NotTypable(e.to_string()),
        other => other,
    }
}

/// Most general type of a closed term, variables renumbered from 0.
pub fn infer_principal_type(t: &Term) -> Result<Type, TypeError> {
    if let Some(x) = t.free_vars().into_iter().next() {
        return Err(TypeError::UnboundVariable(x));
    }
    let mut u = Unifier::default();
    let goal = u.fresh();
    let mut checker = Checker {
        u,
        names: FreshNames::avoiding([t]),
    };
    let d = checker
        .check(&mut Vec::new(), t, &goal, &mut Vec::new())
        .map_err(not_typable)?;
    Ok(checker.u.resolve(&d.ty).canonical_vars())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_term, parse_type};

    fn principal(src: &str) -> Result<Type, TypeError> {
        infer_principal_type(&parse_term(src).unwrap())
    }

    #[test]
    fn identity_and_combinators() {
        assert_eq!(principal("\\x. x").unwrap(), parse_type("'a -> 'a").unwrap());
        assert_eq!(principal("\\x y. x").unwrap(), parse_type("'a -> 'b -> 'a").unwrap());
        assert_eq!(
            principal("\\x y z. x z (y z)").unwrap(),
            parse_type("('a -> 'b -> 'c) -> ('a -> 'b) -> 'a -> 'c").unwrap()
        );
    }

    #[test]
    fn self_application_fails_occurs_check() {
        let e = principal("\\x. x x").unwrap_err();
        assert!(matches!(e, TypeError::NotTypable(ref m) if m.contains("occurs")), "{e}");
    }

    #[test]
    fn check_mode_reports_the_offending_subterm() {
        let b = parse_type("b -> b").unwrap();
        let e = typecheck_stlc(&vec![], &parse_term("\\x. x x").unwrap(), &b).unwrap_err();
        match e {
            TypeError::TypeMismatch { path, subterm, .. } => {
                assert_eq!(path, vec![0, 0]);
                assert_eq!(subterm, "x");
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn derivation_rendering() {
        let ty = parse_type("b -> b").unwrap();
        let d = typecheck_stlc(&vec![], &parse_term("\\x. x").unwrap(), &ty).unwrap();
        assert_eq!(d.render(crate::syntax::Notation::Ascii), "abs  |- \\x. x : b -> b\n  var  x : b |- x : b\n");
    }

    #[test]
    fn rigid_type_variables_in_the_goal() {
        let t = parse_term("\\x. x").unwrap();
        assert!(typecheck_stlc(&vec![], &t, &parse_type("'a -> 'a").unwrap()).is_ok());
        assert!(typecheck_stlc(&vec![], &t, &parse_type("'a -> 'b").unwrap()).is_err());
    }

    #[test]
    fn shadowing_binder_is_renamed_in_premises() {
        let ctx = vec![("x".to_string(), parse_type("c").unwrap())];
        let t = parse_term("\\x. x").unwrap();
        let d = typecheck_stlc(&ctx, &t, &parse_type("b -> b").unwrap()).unwrap();
        assert_eq!(d.premises[0].context[1].0, "x0");
        assert_eq!(d.premises[0].term, parse_term("x0").unwrap());
    }

    #[test]
    fn leftovers_default_to_a_base_type() {
        let t = parse_term("(\\f. y) (\\z. z)").unwrap();
        let ctx = vec![("y".to_string(), parse_type("b").unwrap())];
        let d = typecheck_stlc(&ctx, &t, &parse_type("b").unwrap()).unwrap();
        let mut vars = 0;
        d.visit_types(&mut |ty| vars += ty.vars().len());
        assert_eq!(vars, 0);
        assert_eq!(d.premises[1].ty, parse_type("b -> b").unwrap());
    }
}
