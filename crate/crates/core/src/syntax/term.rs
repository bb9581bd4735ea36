use std::collections::BTreeSet;
use std::fmt;

use super::print::Notation;
use super::SyntaxError;

pub type Name = String;

/// Left or right component of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn index(self) -> u8 {
        match self {
            Side::First => 1,
            Side::Second => 2,
        }
    }
}

/// Raw terms of both calculi.
///
/// `Pair` is shared: it is the product introduction in the simply-typed
/// calculus and the additive (`&`) introduction in the linear calculus.
/// Projections only exist on the intuitionistic side; `LetWith` is the
/// linear eliminator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Name),
    App(Box<Term>, Box<Term>),
    Lam(Name, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    Proj(Side, Box<Term>),
    Tensor(Box<Term>, Box<Term>),
    LetTensor {
        left: Name,
        right: Name,
        scrutinee: Box<Term>,
        body: Box<Term>,
    },
    LetWith {
        side: Side,
        binder: Name,
        scrutinee: Box<Term>,
        body: Box<Term>,
    },
}

pub fn var(name: impl Into<Name>) -> Term {
    Term::Var(name.into())
}

pub fn app(fun: Term, arg: Term) -> Term {
    Term::App(Box::new(fun), Box::new(arg))
}

/// Left-nested application `f a1 a2 ...`.
pub fn apps(fun: Term, args: impl IntoIterator<Item = Term>) -> Term {
    args.into_iter().fold(fun, app)
}

pub fn lam(binder: impl Into<Name>, body: Term) -> Term {
    Term::Lam(binder.into(), Box::new(body))
}

pub fn pair(l: Term, r: Term) -> Term {
    Term::Pair(Box::new(l), Box::new(r))
}

pub fn fst(t: Term) -> Term {
    Term::Proj(Side::First, Box::new(t))
}

pub fn snd(t: Term) -> Term {
    Term::Proj(Side::Second, Box::new(t))
}

pub fn tensor(l: Term, r: Term) -> Term {
    Term::Tensor(Box::new(l), Box::new(r))
}

pub fn let_tensor(left: impl Into<Name>, right: impl Into<Name>, scrutinee: Term, body: Term) -> Term {
    Term::LetTensor {
        left: left.into(),
        right: right.into(),
        scrutinee: Box::new(scrutinee),
        body: Box::new(body),
    }
}

pub fn let_with(side: Side, binder: impl Into<Name>, scrutinee: Term, body: Term) -> Term {
    Term::LetWith {
        side,
        binder: binder.into(),
        scrutinee: Box::new(scrutinee),
        body: Box::new(body),
    }
}

/// Binder-index form: structural equality here is α-equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Canonical {
    Free(Name),
    Bound(usize),
    App(Box<Canonical>, Box<Canonical>),
    Lam(Box<Canonical>),
    Pair(Box<Canonical>, Box<Canonical>),
    Proj(Side, Box<Canonical>),
    Tensor(Box<Canonical>, Box<Canonical>),
    LetTensor(Box<Canonical>, Box<Canonical>),
    LetWith(Side, Box<Canonical>, Box<Canonical>),
}

impl Term {
    /// Children in left-to-right order (scrutinee before body).
    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(_) => vec![],
            Term::App(a, b) | Term::Pair(a, b) | Term::Tensor(a, b) => vec![a, b],
            Term::Lam(_, b) | Term::Proj(_, b) => vec![b],
            Term::LetTensor { scrutinee, body, .. } | Term::LetWith { scrutinee, body, .. } => {
                vec![scrutinee, body]
            }
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn subterm(&self, path: &[usize]) -> Option<&Term> {
        match path.split_first() {
            None => Some(self),
            Some((i, rest)) => self.children().get(*i).and_then(|c| c.subterm(rest)),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(&x.as_str()) {
                    out.insert(x.clone());
                }
            }
            Term::App(a, b) | Term::Pair(a, b) | Term::Tensor(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Term::Lam(x, body) => {
                bound.push(x);
                body.collect_free(bound, out);
                bound.pop();
            }
            Term::Proj(_, t) => t.collect_free(bound, out),
            Term::LetTensor {
                left,
                right,
                scrutinee,
                body,
            } => {
                scrutinee.collect_free(bound, out);
                bound.push(left);
                bound.push(right);
                body.collect_free(bound, out);
                bound.truncate(bound.len() - 2);
            }
            Term::LetWith {
                binder,
                scrutinee,
                body,
                ..
            } => {
                scrutinee.collect_free(bound, out);
                bound.push(binder);
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name occurring in the term, free or bound.
    pub fn all_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Lam(x, b) => {
                out.insert(x.clone());
                b.collect_names(out);
            }
            Term::LetTensor { left, right, .. } => {
                out.insert(left.clone());
                out.insert(right.clone());
            }
            Term::LetWith { binder, .. } => {
                out.insert(binder.clone());
            }
            _ => {}
        }
        match self {
            Term::Var(_) | Term::Lam(..) => {}
            _ => {
                for c in self.children() {
                    c.collect_names(out);
                }
            }
        }
    }

    /// Number of free occurrences of `x`.
    pub fn occurrences(&self, x: &str) -> usize {
        match self {
            Term::Var(y) => usize::from(y == x),
            Term::Lam(y, b) => {
                if y == x {
                    0
                } else {
                    b.occurrences(x)
                }
            }
            Term::LetTensor {
                left,
                right,
                scrutinee,
                body,
            } => {
                scrutinee.occurrences(x)
                    + if left == x || right == x {
                        0
                    } else {
                        body.occurrences(x)
                    }
            }
            Term::LetWith {
                binder,
                scrutinee,
                body,
                ..
            } => scrutinee.occurrences(x) + if binder == x { 0 } else { body.occurrences(x) },
            _ => self.children().iter().map(|c| c.occurrences(x)).sum(),
        }
    }

    /// Swap the names `y` and `x` everywhere, binding occurrences included.
    pub fn swap_vars(&self, y: &str, x: &str) -> Term {
        let sw = |z: &str| -> Name {
            if z == x {
                y.to_string()
            } else if z == y {
                x.to_string()
            } else {
                z.to_string()
            }
        };
        match self {
            Term::Var(z) => Term::Var(sw(z)),
            Term::App(a, b) => app(a.swap_vars(y, x), b.swap_vars(y, x)),
            Term::Lam(z, b) => Term::Lam(sw(z), Box::new(b.swap_vars(y, x))),
            Term::Pair(a, b) => pair(a.swap_vars(y, x), b.swap_vars(y, x)),
            Term::Proj(s, t) => Term::Proj(*s, Box::new(t.swap_vars(y, x))),
            Term::Tensor(a, b) => tensor(a.swap_vars(y, x), b.swap_vars(y, x)),
            Term::LetTensor {
                left,
                right,
                scrutinee,
                body,
            } => let_tensor(
                sw(left),
                sw(right),
                scrutinee.swap_vars(y, x),
                body.swap_vars(y, x),
            ),
            Term::LetWith {
                side,
                binder,
                scrutinee,
                body,
            } => let_with(
                *side,
                sw(binder),
                scrutinee.swap_vars(y, x),
                body.swap_vars(y, x),
            ),
        }
    }

    pub fn canonical(&self) -> Canonical {
        fn go(t: &Term, env: &mut Vec<Name>) -> Canonical {
            let lookup = |env: &Vec<Name>, x: &str| match env.iter().rposition(|n| n == x) {
                Some(i) => Canonical::Bound(env.len() - 1 - i),
                None => Canonical::Free(x.to_string()),
            };
            match t {
                Term::Var(x) => lookup(env, x),
                Term::App(a, b) => Canonical::App(Box::new(go(a, env)), Box::new(go(b, env))),
                Term::Pair(a, b) => Canonical::Pair(Box::new(go(a, env)), Box::new(go(b, env))),
                Term::Tensor(a, b) => {
                    Canonical::Tensor(Box::new(go(a, env)), Box::new(go(b, env)))
                }
                Term::Proj(s, a) => Canonical::Proj(*s, Box::new(go(a, env))),
                Term::Lam(x, b) => {
                    env.push(x.clone());
                    let body = go(b, env);
                    env.pop();
                    Canonical::Lam(Box::new(body))
                }
                Term::LetTensor {
                    left,
                    right,
                    scrutinee,
                    body,
                } => {
                    let s = go(scrutinee, env);
                    env.push(left.clone());
                    env.push(right.clone());
                    let b = go(body, env);
                    env.truncate(env.len() - 2);
                    Canonical::LetTensor(Box::new(s), Box::new(b))
                }
                Term::LetWith {
                    side,
                    binder,
                    scrutinee,
                    body,
                } => {
                    let s = go(scrutinee, env);
                    env.push(binder.clone());
                    let b = go(body, env);
                    env.pop();
                    Canonical::LetWith(*side, Box::new(s), Box::new(b))
                }
            }
        }
        go(self, &mut Vec::new())
    }

    pub fn alpha_eq(&self, other: &Term) -> bool {
        alpha_equal(self, other)
    }

    pub fn display(&self, notation: Notation) -> String {
        super::print::term_to_string(self, notation)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(Notation::Ascii))
    }
}

pub fn free_vars(t: &Term) -> BTreeSet<Name> {
    t.free_vars()
}

pub fn swap_vars(t: &Term, y: &str, x: &str) -> Term {
    t.swap_vars(y, x)
}

pub fn alpha_equal(t: &Term, u: &Term) -> bool {
    t.canonical() == u.canonical()
}

/// Deterministic supply of names `x0, x1, ...` avoiding a set of used names.
#[derive(Clone, Debug, Default)]
pub struct FreshNames {
    used: BTreeSet<Name>,
}

impl FreshNames {
    pub fn avoiding<'a>(terms: impl IntoIterator<Item = &'a Term>) -> FreshNames {
        let mut used = BTreeSet::new();
        for t in terms {
            used.extend(t.all_names());
        }
        FreshNames { used }
    }

    pub fn reserve(&mut self, name: impl Into<Name>) {
        self.used.insert(name.into());
    }

    pub fn fresh(&mut self) -> Name {
        let name = (0..)
            .map(|i| format!("x{i}"))
            .find(|n| !self.used.contains(n))
            .expect("unbounded supply");
        self.used.insert(name.clone());
        name
    }
}

/// `u[t/x]`, renaming binders of `u` when they would capture a free
/// variable of `t`.
pub fn substitute(u: &Term, t: &Term, x: &str) -> Term {
    let mut names = FreshNames::avoiding([u, t]);
    names.reserve(x);
    let bindings = [(x.to_string(), t.clone())];
    subst_many(u, &bindings, &mut names)
}

/// `t[t1/x1, ..., tk/xk]`, all substitutions performed at once.
pub fn simultaneous_substitute(t: &Term, bindings: &[(Name, Term)]) -> Result<Term, SyntaxError> {
    let mut seen = BTreeSet::new();
    for (x, _) in bindings {
        if !seen.insert(x.as_str()) {
            return Err(SyntaxError::DuplicateBinding(x.clone()));
        }
    }
    let mut names = FreshNames::avoiding(std::iter::once(t).chain(bindings.iter().map(|(_, u)| u)));
    for (x, _) in bindings {
        names.reserve(x.clone());
    }
    Ok(subst_many(t, bindings, &mut names))
}

fn subst_many(t: &Term, bindings: &[(Name, Term)], names: &mut FreshNames) -> Term {
    if bindings.is_empty() {
        return t.clone();
    }
    match t {
        Term::Var(y) => match bindings.iter().find(|(x, _)| x == y) {
            Some((_, u)) => u.clone(),
            None => t.clone(),
        },
        Term::App(a, b) => app(subst_many(a, bindings, names), subst_many(b, bindings, names)),
        Term::Pair(a, b) => pair(subst_many(a, bindings, names), subst_many(b, bindings, names)),
        Term::Tensor(a, b) => {
            tensor(subst_many(a, bindings, names), subst_many(b, bindings, names))
        }
        Term::Proj(s, a) => Term::Proj(*s, Box::new(subst_many(a, bindings, names))),
        Term::Lam(z, body) => {
            let (binders, body) = under_binders(&[z.clone()], body, bindings, names);
            Term::Lam(binders[0].clone(), Box::new(body))
        }
        Term::LetTensor {
            left,
            right,
            scrutinee,
            body,
        } => {
            let s = subst_many(scrutinee, bindings, names);
            let (binders, body) =
                under_binders(&[left.clone(), right.clone()], body, bindings, names);
            let_tensor(binders[0].clone(), binders[1].clone(), s, body)
        }
        Term::LetWith {
            side,
            binder,
            scrutinee,
            body,
        } => {
            let s = subst_many(scrutinee, bindings, names);
            let (binders, body) = under_binders(&[binder.clone()], body, bindings, names);
            let_with(*side, binders[0].clone(), s, body)
        }
    }
}

/// Push a substitution under binders: shadowed bindings are dropped and a
/// binder that would capture is renamed by swapping with a fresh name.
fn under_binders(
    binders: &[Name],
    body: &Term,
    bindings: &[(Name, Term)],
    names: &mut FreshNames,
) -> (Vec<Name>, Term) {
    let body_fv = body.free_vars();
    let active: Vec<(Name, Term)> = bindings
        .iter()
        .filter(|(x, _)| !binders.contains(x) && body_fv.contains(x))
        .cloned()
        .collect();
    if active.is_empty() {
        return (binders.to_vec(), body.clone());
    }
    let mut renamed = binders.to_vec();
    let mut body = body.clone();
    for b in renamed.iter_mut() {
        if active.iter().any(|(_, u)| u.free_vars().contains(b.as_str())) {
            let fresh = names.fresh();
            body = body.swap_vars(&fresh, b);
            *b = fresh;
        }
    }
    let body = subst_many(&body, &active, names);
    (renamed, body)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        var("x")
    }

    #[test]
    fn free_vars_follow_the_defining_clauses() {
        assert_eq!(x().free_vars(), BTreeSet::from(["x".to_string()]));
        assert!(lam("x", x()).free_vars().is_empty());
        assert_eq!(
            lam("x", app(x(), var("y"))).free_vars(),
            BTreeSet::from(["y".to_string()])
        );
        let t = let_tensor("a", "b", var("z"), tensor(var("b"), var("a")));
        assert_eq!(t.free_vars(), BTreeSet::from(["z".to_string()]));
    }

    #[test]
    fn swap_touches_binders() {
        assert_eq!(lam("x", x()).swap_vars("y", "x"), lam("y", var("y")));
        assert_eq!(app(x(), var("z")).swap_vars("y", "x"), app(var("y"), var("z")));
    }

    #[test]
    fn alpha_examples() {
        assert!(alpha_equal(&lam("x", x()), &lam("y", var("y"))));
        assert!(alpha_equal(
            &app(x(), lam("x", x())),
            &app(x(), lam("y", var("y")))
        ));
        assert!(alpha_equal(
            &lam("x", lam("y", app(x(), var("y")))),
            &lam("y", lam("x", app(var("y"), x())))
        ));
        assert!(!alpha_equal(
            &lam("x", lam("y", x())),
            &lam("x", lam("y", var("y")))
        ));
        assert!(!alpha_equal(&var("x"), &var("y")));
    }

    #[test]
    fn substitution_renames_capturing_binder() {
        let u = lam("z", app(var("z"), x()));
        let out = substitute(&u, &var("z"), "x");
        assert!(alpha_equal(&out, &lam("y", app(var("y"), var("z")))));
        assert_eq!(out, lam("x0", app(var("x0"), var("z"))));
        assert_eq!(substitute(&x(), &var("t"), "x"), var("t"));
    }

    #[test]
    fn substitution_stops_at_shadowing_binder() {
        let u = lam("x", x());
        assert_eq!(substitute(&u, &var("q"), "x"), u);
        let u = let_tensor("x", "y", x(), tensor(x(), var("y")));
        assert_eq!(
            substitute(&u, &var("q"), "x"),
            let_tensor("x", "y", var("q"), tensor(x(), var("y")))
        );
    }

    #[test]
    fn simultaneous_substitution_basics() {
        let t1 = var("t1");
        let t2 = lam("w", var("w"));
        let b = vec![("x1".to_string(), t1.clone()), ("x2".to_string(), t2)];
        assert_eq!(simultaneous_substitute(&var("x1"), &b).unwrap(), t1);
        let t = app(var("x1"), var("x2"));
        assert_eq!(simultaneous_substitute(&t, &[]).unwrap(), t);
        let dup = vec![("x".to_string(), var("a")), ("x".to_string(), var("b"))];
        assert_eq!(
            simultaneous_substitute(&t, &dup),
            Err(SyntaxError::DuplicateBinding("x".into()))
        );
    }

    #[test]
    fn simultaneous_is_not_sequential_for_open_terms() {
        // [y/x, x/y] swaps, whereas iterating would collapse both to x.
        let t = pair(var("x"), var("y"));
        let b = vec![("x".to_string(), var("y")), ("y".to_string(), var("x"))];
        assert_eq!(
            simultaneous_substitute(&t, &b).unwrap(),
            pair(var("y"), var("x"))
        );
    }

    #[test]
    fn occurrences_respect_binders() {
        let t = app(x(), lam("x", x()));
        assert_eq!(t.occurrences("x"), 1);
        let t = let_with(Side::First, "a", var("z"), app(var("a"), var("z")));
        assert_eq!(t.occurrences("z"), 2);
        assert_eq!(t.occurrences("a"), 0);
    }
}
