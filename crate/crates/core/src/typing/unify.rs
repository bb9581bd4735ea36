use std::collections::{BTreeSet, HashMap};

use crate::syntax::Type;

#[derive(Debug)]
pub(crate) enum UnifyError {
    Clash,
    Occurs,
}

/// First-order unification over [`Type`] with an occurs check.
///
/// Variables that occur in the caller's input are rigid: they behave like
/// constants and are never bound.
#[derive(Clone, Debug, Default)]
pub(crate) struct Unifier {
    bound: HashMap<u32, Type>,
    rigid: BTreeSet<u32>,
    next: u32,
}

impl Unifier {
    pub(crate) fn with_rigid<'a>(types: impl IntoIterator<Item = &'a Type>) -> Unifier {
        let rigid: BTreeSet<u32> = types.into_iter().flat_map(|t| t.vars()).collect();
        let next = rigid.iter().next_back().map_or(0, |m| m + 1);
        Unifier {
            bound: HashMap::new(),
            rigid,
            next,
        }
    }

    pub(crate) fn rigid(&self) -> &BTreeSet<u32> {
        &self.rigid
    }

    pub(crate) fn fresh(&mut self) -> Type {
        let v = self.next;
        self.next += 1;
        Type::Var(v)
    }

    /// Fully apply the current substitution.
    pub(crate) fn resolve(&self, t: &Type) -> Type {
        t.map_vars(&|v| self.bound.get(&v).map(|u| self.resolve(u)))
    }

    fn shallow(&self, t: &Type) -> Type {
        let mut cur = t.clone();
        while let Type::Var(v) = cur {
            match self.bound.get(&v) {
                Some(u) => cur = u.clone(),
                None => break,
            }
        }
        cur
    }

    fn occurs(&self, v: u32, t: &Type) -> bool {
        self.resolve(t).vars().contains(&v)
    }

    pub(crate) fn unify(&mut self, a: &Type, b: &Type) -> Result<(), UnifyError> {
        let a = self.shallow(a);
        let b = self.shallow(b);
        match (&a, &b) {
            (Type::Var(x), Type::Var(y)) if x == y => Ok(()),
            (Type::Var(x), _) | (_, Type::Var(x)) if self.rigid.contains(x) => {
                let t = if matches!(&a, Type::Var(v) if v == x) { &b } else { &a };
                match t {
                    Type::Var(y) if !self.rigid.contains(y) => {
                        self.bound.insert(*y, Type::Var(*x));
                        Ok(())
                    }
                    _ => Err(UnifyError::Clash),
                }
            }
            (Type::Var(x), t) | (t, Type::Var(x)) => {
                if self.occurs(*x, t) {
                    return Err(UnifyError::Occurs);
                }
                self.bound.insert(*x, t.clone());
                Ok(())
            }
            (Type::Base(x), Type::Base(y)) if x == y => Ok(()),
            (Type::Bang(x), Type::Bang(y)) => self.unify(x, y),
            (Type::Arrow(a1, b1), Type::Arrow(a2, b2))
            | (Type::Product(a1, b1), Type::Product(a2, b2))
            | (Type::Tensor(a1, b1), Type::Tensor(a2, b2))
            | (Type::Lollipop(a1, b1), Type::Lollipop(a2, b2))
            | (Type::With(a1, b1), Type::With(a2, b2)) => {
                self.unify(a1, a2)?;
                self.unify(b1, b2)
            }
            _ => Err(UnifyError::Clash),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn occurs_check_fires() {
        let mut u = Unifier::default();
        let a = u.fresh();
        let r = u.unify(&a, &Type::arrow(a.clone(), Type::base("b")));
        assert!(matches!(r, Err(UnifyError::Occurs)));
    }

    #[test]
    fn rigid_variables_are_constants() {
        let mut u = Unifier::with_rigid([&Type::Var(0)]);
        let a = u.fresh();
        assert_eq!(a, Type::Var(1));
        assert!(u.unify(&Type::Var(0), &Type::base("b")).is_err());
        u.unify(&Type::Var(0), &a).unwrap();
        assert_eq!(u.resolve(&a), Type::Var(0));
    }

    #[test]
    fn solves_through_chains() {
        let mut u = Unifier::default();
        let a = u.fresh();
        let b = u.fresh();
        u.unify(&a, &b).unwrap();
        u.unify(&b, &Type::base("o")).unwrap();
        assert_eq!(u.resolve(&Type::arrow(a, b)), Type::arrow(Type::base("o"), Type::base("o")));
    }
}
