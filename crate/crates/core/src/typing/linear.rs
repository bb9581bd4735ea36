use super::unify::{Unifier, UnifyError};
use super::{check_distinct, default_leftovers, Derivation, Rule, TypeError};
use crate::syntax::{Context, Fragment, FreshNames, Name, Side, Term, Type};

struct Hyp {
    name: Name,
    ty: Type,
    used: bool,
}

struct Checker {
    u: Unifier,
    names: FreshNames,
    hyps: Vec<Hyp>,
}

impl Checker {
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
            Err(e) => Err(TypeError::TypeMismatch {
                path: path.to_vec(),
                subterm: t.to_string(),
                expected: self.u.resolve(expected).to_string(),
                found: match e {
                    UnifyError::Clash => shown,
                    UnifyError::Occurs => format!("{shown} (occurs check)"),
                },
            }),
        }
    }

    fn flags(&self) -> Vec<bool> {
        self.hyps.iter().map(|h| h.used).collect()
    }

    /// Hypotheses consumed since `before` was taken, in context order.
    fn consumed_since(&self, before: &[bool]) -> Context {
        self.hyps
            .iter()
            .enumerate()
            .filter(|(i, h)| h.used && !before.get(*i).copied().unwrap_or(false))
            .map(|(_, h)| (h.name.clone(), h.ty.clone()))
            .collect()
    }

    /// Bind `names` for the duration of `body`, renaming any that clash
    /// with a hypothesis already in scope.
    fn with_binders(
        &mut self,
        binders: &[(Name, Type)],
        body: &Term,
        expected: &Type,
        path: &mut Vec<usize>,
    ) -> Result<Derivation, TypeError> {
        let mut body = body.clone();
        let base = self.hyps.len();
        for (x, ty) in binders {
            let name = if self.hyps.iter().any(|h| &h.name == x) {
                let y = self.names.fresh();
                body = body.swap_vars(&y, x);
                y
            } else {
                x.clone()
            };
            self.hyps.push(Hyp {
                name,
                ty: ty.clone(),
                used: false,
            });
        }
        let result = self.check(&body, expected, path);
        let unused = self.hyps[base..].iter().find(|h| !h.used).map(|h| h.name.clone());
        self.hyps.truncate(base);
        let d = result?;
        if let Some(var) = unused {
            return Err(TypeError::LinearityViolation {
                var,
                problem: "is bound but never used".into(),
            });
        }
        Ok(d)
    }

    fn check(
        &mut self,
        t: &Term,
        expected: &Type,
        path: &mut Vec<usize>,
    ) -> Result<Derivation, TypeError> {
        let before = self.flags();
        let (rule, premises) = match t {
            Term::Var(x) => {
                let h = self
                    .hyps
                    .iter()
                    .rposition(|h| &h.name == x)
                    .ok_or_else(|| TypeError::UnboundVariable(x.clone()))?;
                if self.hyps[h].used {
                    return Err(TypeError::LinearityViolation {
                        var: x.clone(),
                        problem: "is used more than once".into(),
                    });
                }
                let ty = self.hyps[h].ty.clone();
                self.unify_at(path, t, expected, &ty)?;
                self.hyps[h].used = true;
                (Rule::Ax, vec![])
            }
            Term::Lam(x, body) => {
                let a = self.u.fresh();
                let b = self.u.fresh();
                self.unify_at(path, t, expected, &Type::lollipop(a.clone(), b.clone()))?;
                path.push(0);
                let p = self.with_binders(&[(x.clone(), a)], body, &b, path);
                path.pop();
                (Rule::LolliI, vec![p?])
            }
            Term::App(f, arg) => {
                let a = self.u.fresh();
                let pf = self.sub(0, f, &Type::lollipop(a.clone(), expected.clone()), path)?;
                let pa = self.sub(1, arg, &a, path)?;
                (Rule::LolliE, vec![pf, pa])
            }
            Term::Tensor(l, r) => {
                let a = self.u.fresh();
                let b = self.u.fresh();
                self.unify_at(path, t, expected, &Type::tensor(a.clone(), b.clone()))?;
                let pl = self.sub(0, l, &a, path)?;
                let pr = self.sub(1, r, &b, path)?;
                (Rule::TensorI, vec![pl, pr])
            }
            Term::LetTensor {
                left,
                right,
                scrutinee,
                body,
            } => {
                if left == right {
                    return Err(TypeError::LinearityViolation {
                        var: left.clone(),
                        problem: "is bound twice by one pattern".into(),
                    });
                }
                let a = self.u.fresh();
                let b = self.u.fresh();
                let ps = self.sub(0, scrutinee, &Type::tensor(a.clone(), b.clone()), path)?;
                path.push(1);
                let pb = self.with_binders(&[(left.clone(), a), (right.clone(), b)], body, expected, path);
                path.pop();
                (Rule::TensorE, vec![ps, pb?])
            }
            Term::Pair(l, r) => {
                let a = self.u.fresh();
                let b = self.u.fresh();
                self.unify_at(path, t, expected, &Type::with(a.clone(), b.clone()))?;
                let start = self.flags();
                let pl = self.sub(0, l, &a, path)?;
                let after_left = self.flags();
                for (h, f) in self.hyps.iter_mut().zip(&start) {
                    h.used = *f;
                }
                let pr = self.sub(1, r, &b, path)?;
                let after_right = self.flags();
                if let Some(i) = (0..after_left.len()).find(|&i| after_left[i] != after_right[i]) {
                    return Err(TypeError::LinearityViolation {
                        var: self.hyps[i].name.clone(),
                        problem: "is used in only one component of an additive pair".into(),
                    });
                }
                (Rule::WithI, vec![pl, pr])
            }
            Term::LetWith {
                side,
                binder,
                scrutinee,
                body,
            } => {
                let a = self.u.fresh();
                let b = self.u.fresh();
                let ps = self.sub(0, scrutinee, &Type::with(a.clone(), b.clone()), path)?;
                let (kept, rule) = match side {
                    Side::First => (a, Rule::WithE1),
                    Side::Second => (b, Rule::WithE2),
                };
                path.push(1);
                let pb = self.with_binders(&[(binder.clone(), kept)], body, expected, path);
                path.pop();
                (rule, vec![ps, pb?])
            }
            Term::Proj(..) => {
                return Err(TypeError::WrongFragment(format!(
                    "`{t}` uses a projection, which the linear calculus replaces by `let <x,_> = ...`"
                )))
            }
        };
        Ok(Derivation {
            context: self.consumed_since(&before),
            term: t.clone(),
            ty: expected.clone(),
            rule,
            premises,
        })
    }

    fn sub(
        &mut self,
        index: usize,
        t: &Term,
        expected: &Type,
        path: &mut Vec<usize>,
    ) -> Result<Derivation, TypeError> {
        path.push(index);
        let r = self.check(t, expected, path);
        path.pop();
        r
    }
}

fn require_linear(t: &Type) -> Result<(), TypeError> {
    if t.contains_bang() {
        return Err(TypeError::UnsupportedType(t.to_string()));
    }
    if t.is_in_fragment(Fragment::Linear) {
        Ok(())
    } else {
        Err(TypeError::WrongFragment(format!(
            "type `{t}` is not in the linear fragment"
        )))
    }
}

/// Check `ctx |- t : expected` against the linear rules; every hypothesis
/// must be consumed exactly once.
pub fn typecheck_linear(ctx: &Context, t: &Term, expected: &Type) -> Result<Derivation, TypeError> {
    check_distinct(ctx)?;
    for (_, ty) in ctx {
        require_linear(ty)?;
    }
    require_linear(expected)?;
    let u = Unifier::with_rigid(ctx.iter().map(|(_, ty)| ty).chain([expected]));
    let mut names = FreshNames::avoiding([t]);
    for (x, _) in ctx {
        names.reserve(x.clone());
    }
    let hyps = ctx
        .iter()
        .map(|(name, ty)| Hyp {
            name: name.clone(),
            ty: ty.clone(),
            used: false,
        })
        .collect();
    let mut checker = Checker { u, names, hyps };
    let mut d = checker.check(t, expected, &mut Vec::new())?;
    if let Some(h) = checker.hyps.iter().find(|h| !h.used) {
        return Err(TypeError::LinearityViolation {
            var: h.name.clone(),
            problem: "is in the context but never used".into(),
        });
    }
    d.map_types(&|ty| checker.u.resolve(ty));
    let keep = checker.u.rigid().clone();
    default_leftovers(&mut d, &keep);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_term, parse_type};

    fn ctx(entries: &[(&str, &str)]) -> Context {
        entries
            .iter()
            .map(|(x, t)| (x.to_string(), parse_type(t).unwrap()))
            .collect()
    }

    #[test]
    fn axiom() {
        let d = typecheck_linear(&ctx(&[("x", "A")]), &parse_term("x").unwrap(), &parse_type("A").unwrap())
            .unwrap();
        assert_eq!(d.rule, Rule::Ax);
    }

    #[test]
    fn duplication_is_rejected() {
        let e = typecheck_linear(
            &ctx(&[("x", "A")]),
            &parse_term("x * x").unwrap(),
            &parse_type("A (x) A").unwrap(),
        )
        .unwrap_err();
        assert!(matches!(e, TypeError::LinearityViolation { ref var, .. } if var == "x"));
    }

    #[test]
    fn tensor_swap() {
        let t = parse_term("\\x. let y * z = x in z * y").unwrap();
        let d = typecheck_linear(&vec![], &t, &parse_type("A (x) B -o B (x) A").unwrap()).unwrap();
        assert_eq!(d.rule, Rule::LolliI);
        let inner = &d.premises[0];
        assert_eq!(inner.rule, Rule::TensorE);
        assert_eq!(inner.premises[1].context.len(), 2);
        assert_eq!(inner.premises[1].premises[0].context, ctx(&[("z", "B")]));
    }

    #[test]
    fn weakening_is_rejected() {
        let e = typecheck_linear(&vec![], &parse_term("\\x. \\y. x").unwrap(), &parse_type("A -o B -o A").unwrap())
            .unwrap_err();
        assert!(matches!(e, TypeError::LinearityViolation { ref var, .. } if var == "y"));
        let e = typecheck_linear(&ctx(&[("x", "A"), ("y", "B")]), &parse_term("x").unwrap(), &parse_type("A").unwrap())
            .unwrap_err();
        assert!(matches!(e, TypeError::LinearityViolation { ref var, .. } if var == "y"));
    }

    #[test]
    fn additive_pairs_share_their_context() {
        let c = ctx(&[("x", "A"), ("f", "A -o B")]);
        let ty = parse_type("A & B").unwrap();
        assert!(typecheck_linear(&ctx(&[("x", "A")]), &parse_term("<x, x>").unwrap(), &parse_type("A & A").unwrap()).is_ok());
        let e = typecheck_linear(&c, &parse_term("<x, f x>").unwrap(), &ty).unwrap_err();
        assert!(matches!(e, TypeError::LinearityViolation { ref var, .. } if var == "f"));
        let t = parse_term("\\p. let <a,_> = p in a").unwrap();
        let d = typecheck_linear(&vec![], &t, &parse_type("A & B -o A").unwrap()).unwrap();
        assert_eq!(d.premises[0].rule, Rule::WithE1);
    }

    #[test]
    fn bang_is_unsupported() {
        let e = typecheck_linear(&ctx(&[("x", "!A")]), &parse_term("x").unwrap(), &parse_type("!A").unwrap())
            .unwrap_err();
        assert!(matches!(e, TypeError::UnsupportedType(_)));
    }
}
