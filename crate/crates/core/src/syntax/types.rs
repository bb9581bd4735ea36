use std::collections::BTreeSet;
use std::fmt;

use super::print::Notation;

/// Types of both calculi.
///
/// `Var` is only produced by principal-type inference; it never comes out
/// of the parser as a base type and is disjoint from every `Base` name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Base(String),
    Var(u32),
    Arrow(Box<Type>, Box<Type>),
    Product(Box<Type>, Box<Type>),
    Tensor(Box<Type>, Box<Type>),
    Lollipop(Box<Type>, Box<Type>),
    With(Box<Type>, Box<Type>),
    Bang(Box<Type>),
}

/// Which calculus a type (or judgement) belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fragment {
    Intuitionistic,
    Linear,
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fragment::Intuitionistic => f.write_str("intuitionistic"),
            Fragment::Linear => f.write_str("linear"),
        }
    }
}

impl Type {
    pub fn base(name: impl Into<String>) -> Type {
        Type::Base(name.into())
    }

    pub fn arrow(dom: Type, cod: Type) -> Type {
        Type::Arrow(Box::new(dom), Box::new(cod))
    }

    pub fn product(l: Type, r: Type) -> Type {
        Type::Product(Box::new(l), Box::new(r))
    }

    pub fn tensor(l: Type, r: Type) -> Type {
        Type::Tensor(Box::new(l), Box::new(r))
    }

    pub fn lollipop(dom: Type, cod: Type) -> Type {
        Type::Lollipop(Box::new(dom), Box::new(cod))
    }

    pub fn with(l: Type, r: Type) -> Type {
        Type::With(Box::new(l), Box::new(r))
    }

    pub fn bang(inner: Type) -> Type {
        Type::Bang(Box::new(inner))
    }

    /// The fragment this type commits to, `None` for types built only from
    /// base types and variables (those live in both calculi).
    ///
    /// Returns `Err(())` for a tree mixing intuitionistic and linear
    /// connectives.
    pub fn fragment(&self) -> Result<Option<Fragment>, ()> {
        fn join(a: Option<Fragment>, b: Option<Fragment>) -> Result<Option<Fragment>, ()> {
            match (a, b) {
                (Some(x), Some(y)) if x != y => Err(()),
                (Some(x), _) | (_, Some(x)) => Ok(Some(x)),
                _ => Ok(None),
            }
        }
        match self {
            Type::Base(_) | Type::Var(_) => Ok(None),
            Type::Arrow(a, b) | Type::Product(a, b) => {
                let inner = join(a.fragment()?, b.fragment()?)?;
                join(inner, Some(Fragment::Intuitionistic))
            }
            Type::Tensor(a, b) | Type::Lollipop(a, b) | Type::With(a, b) => {
                let inner = join(a.fragment()?, b.fragment()?)?;
                join(inner, Some(Fragment::Linear))
            }
            Type::Bang(a) => join(a.fragment()?, Some(Fragment::Linear)),
        }
    }

    pub fn is_in_fragment(&self, fragment: Fragment) -> bool {
        matches!(self.fragment(), Ok(None)) || self.fragment() == Ok(Some(fragment))
    }

    pub fn contains_bang(&self) -> bool {
        match self {
            Type::Base(_) | Type::Var(_) => false,
            Type::Bang(_) => true,
            Type::Arrow(a, b)
            | Type::Product(a, b)
            | Type::Tensor(a, b)
            | Type::Lollipop(a, b)
            | Type::With(a, b) => a.contains_bang() || b.contains_bang(),
        }
    }

    pub fn base_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_bases(&mut out);
        out
    }

    fn collect_bases(&self, out: &mut BTreeSet<String>) {
        match self {
            Type::Base(b) => {
                out.insert(b.clone());
            }
            Type::Var(_) => {}
            Type::Bang(a) => a.collect_bases(out),
            Type::Arrow(a, b)
            | Type::Product(a, b)
            | Type::Tensor(a, b)
            | Type::Lollipop(a, b)
            | Type::With(a, b) => {
                a.collect_bases(out);
                b.collect_bases(out);
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            Type::Var(v) => {
                out.insert(*v);
            }
            Type::Base(_) => {}
            Type::Bang(a) => a.collect_vars(out),
            Type::Arrow(a, b)
            | Type::Product(a, b)
            | Type::Tensor(a, b)
            | Type::Lollipop(a, b)
            | Type::With(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Variables in order of first occurrence, left to right.
    pub fn vars_in_order(&self) -> Vec<u32> {
        fn go(t: &Type, out: &mut Vec<u32>) {
            match t {
                Type::Var(v) => {
                    if !out.contains(v) {
                        out.push(*v)
                    }
                }
                Type::Base(_) => {}
                Type::Bang(a) => go(a, out),
                Type::Arrow(a, b)
                | Type::Product(a, b)
                | Type::Tensor(a, b)
                | Type::Lollipop(a, b)
                | Type::With(a, b) => {
                    go(a, out);
                    go(b, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Replace type variables using `f`; unmapped variables are kept.
    pub fn map_vars(&self, f: &impl Fn(u32) -> Option<Type>) -> Type {
        match self {
            Type::Var(v) => f(*v).unwrap_or(Type::Var(*v)),
            Type::Base(_) => self.clone(),
            Type::Bang(a) => Type::bang(a.map_vars(f)),
            Type::Arrow(a, b) => Type::arrow(a.map_vars(f), b.map_vars(f)),
            Type::Product(a, b) => Type::product(a.map_vars(f), b.map_vars(f)),
            Type::Tensor(a, b) => Type::tensor(a.map_vars(f), b.map_vars(f)),
            Type::Lollipop(a, b) => Type::lollipop(a.map_vars(f), b.map_vars(f)),
            Type::With(a, b) => Type::with(a.map_vars(f), b.map_vars(f)),
        }
    }

    /// Renumber variables 0, 1, ... in order of first occurrence.
    pub fn canonical_vars(&self) -> Type {
        let order = self.vars_in_order();
        self.map_vars(&|v| {
            order
                .iter()
                .position(|w| *w == v)
                .map(|i| Type::Var(i as u32))
        })
    }

    pub fn display(&self, notation: Notation) -> String {
        super::print::type_to_string(self, notation)
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(Notation::Ascii))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fragment_check_rejects_mixed_trees() {
        let b = Type::base("b");
        assert_eq!(b.fragment(), Ok(None));
        assert_eq!(
            Type::arrow(b.clone(), Type::product(b.clone(), b.clone())).fragment(),
            Ok(Some(Fragment::Intuitionistic))
        );
        assert_eq!(
            Type::lollipop(b.clone(), Type::bang(b.clone())).fragment(),
            Ok(Some(Fragment::Linear))
        );
        assert!(Type::arrow(b.clone(), Type::tensor(b.clone(), b)).fragment().is_err());
    }

    #[test]
    fn canonical_vars_follow_first_occurrence() {
        let t = Type::arrow(Type::Var(7), Type::arrow(Type::Var(3), Type::Var(7)));
        assert_eq!(
            t.canonical_vars(),
            Type::arrow(Type::Var(0), Type::arrow(Type::Var(1), Type::Var(0)))
        );
    }
}
