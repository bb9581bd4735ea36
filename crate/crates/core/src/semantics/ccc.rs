use std::fmt;

use super::SemError;
use crate::syntax::{Notation, Type};
use crate::typing::{Derivation, Rule};

/// Objects of the free cartesian closed category over named base objects.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Obj {
    Base(String),
    Unit,
    Prod(Box<Obj>, Box<Obj>),
    /// `Exp(A, B)` is `A ⇒ B`.
    Exp(Box<Obj>, Box<Obj>),
}

impl Obj {
    pub fn prod(a: Obj, b: Obj) -> Obj {
        Obj::Prod(Box::new(a), Box::new(b))
    }

    pub fn exp(a: Obj, b: Obj) -> Obj {
        Obj::Exp(Box::new(a), Box::new(b))
    }

    pub fn display(&self, n: Notation) -> String {
        let uni = n == Notation::Unicode;
        match self {
            Obj::Base(b) => b.clone(),
            Obj::Unit => (if uni { "𝟏" } else { "1" }).into(),
            Obj::Prod(a, b) => format!("({} {} {})", a.display(n), if uni { "×" } else { "*" }, b.display(n)),
            Obj::Exp(a, b) => format!("({} {} {})", a.display(n), if uni { "⇒" } else { "=>" }, b.display(n)),
        }
    }
}

/// Morphisms of the free CCC. Each constructor determines its domain and
/// codomain; the checked constructors refuse ill-typed combinations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Mor {
    Id(Obj),
    /// `Compose(g, f)` is `g ∘ f`.
    Compose(Box<Mor>, Box<Mor>),
    Pair(Box<Mor>, Box<Mor>),
    Proj1(Obj, Obj),
    Proj2(Obj, Obj),
    /// `Λ(f)` for `f : C × A → B`.
    Curry(Box<Mor>),
    /// `ev : (A ⇒ B) × A → B`.
    Ev(Obj, Obj),
    /// The unique arrow into the terminal object.
    Bang(Obj),
}

impl Mor {
    pub fn dom(&self) -> Obj {
        match self {
            Mor::Id(a) | Mor::Bang(a) => a.clone(),
            Mor::Compose(_, f) | Mor::Pair(f, _) => f.dom(),
            Mor::Proj1(a, b) | Mor::Proj2(a, b) => Obj::prod(a.clone(), b.clone()),
            Mor::Curry(f) => match f.dom() {
                Obj::Prod(c, _) => *c,
                _ => unreachable!("curry of a non-product domain"),
            },
            Mor::Ev(a, b) => Obj::prod(Obj::exp(a.clone(), b.clone()), a.clone()),
        }
    }

    pub fn cod(&self) -> Obj {
        match self {
            Mor::Id(a) => a.clone(),
            Mor::Compose(g, _) => g.cod(),
            Mor::Pair(f, g) => Obj::prod(f.cod(), g.cod()),
            Mor::Proj1(a, _) => a.clone(),
            Mor::Proj2(_, b) => b.clone(),
            Mor::Curry(f) => match f.dom() {
                Obj::Prod(_, a) => Obj::exp(*a, f.cod()),
                _ => unreachable!("curry of a non-product domain"),
            },
            Mor::Ev(_, b) => b.clone(),
            Mor::Bang(_) => Obj::Unit,
        }
    }

    pub fn compose(g: Mor, f: Mor) -> Result<Mor, SemError> {
        if f.cod() != g.dom() {
            return Err(SemError::IllTyped(format!(
                "cannot compose {} after {}",
                g.display(Notation::Ascii),
                f.display(Notation::Ascii)
            )));
        }
        Ok(Mor::Compose(Box::new(g), Box::new(f)))
    }

    pub fn pair(f: Mor, g: Mor) -> Result<Mor, SemError> {
        if f.dom() != g.dom() {
            return Err(SemError::IllTyped("pairing needs a common domain".into()));
        }
        Ok(Mor::Pair(Box::new(f), Box::new(g)))
    }

    pub fn curry(f: Mor) -> Result<Mor, SemError> {
        match f.dom() {
            Obj::Prod(..) => Ok(Mor::Curry(Box::new(f))),
            _ => Err(SemError::IllTyped("currying needs a product domain".into())),
        }
    }

    /// `f × g = ⟨f ∘ π₁, g ∘ π₂⟩`.
    pub fn times(f: Mor, g: Mor) -> Mor {
        let (a, b) = (f.dom(), g.dom());
        Mor::Pair(
            Box::new(Mor::Compose(Box::new(f), Box::new(Mor::Proj1(a.clone(), b.clone())))),
            Box::new(Mor::Compose(Box::new(g), Box::new(Mor::Proj2(a, b)))),
        )
    }

    pub fn display(&self, n: Notation) -> String {
        let uni = n == Notation::Unicode;
        match self {
            Mor::Id(_) => "id".into(),
            Mor::Compose(g, f) => format!("({} {} {})", g.display(n), if uni { "∘" } else { "." }, f.display(n)),
            Mor::Pair(f, g) => {
                if uni {
                    format!("⟨{}, {}⟩", f.display(n), g.display(n))
                } else {
                    format!("<{}, {}>", f.display(n), g.display(n))
                }
            }
            Mor::Proj1(..) => (if uni { "π1" } else { "pi1" }).into(),
            Mor::Proj2(..) => (if uni { "π2" } else { "pi2" }).into(),
            Mor::Curry(f) => format!("{}({})", if uni { "Λ" } else { "curry" }, f.display(n)),
            Mor::Ev(..) => "ev".into(),
            Mor::Bang(_) => (if uni { "τ" } else { "tau" }).into(),
        }
    }
}

impl fmt::Display for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(Notation::Unicode))
    }
}

pub fn obj_of_type(t: &Type) -> Result<Obj, SemError> {
    match t {
        Type::Base(b) => Ok(Obj::Base(b.clone())),
        Type::Arrow(a, b) => Ok(Obj::exp(obj_of_type(a)?, obj_of_type(b)?)),
        Type::Product(a, b) => Ok(Obj::prod(obj_of_type(a)?, obj_of_type(b)?)),
        other => Err(SemError::UnsupportedType(other.display(Notation::Ascii))),
    }
}

/// `⟦x₁:T₁, …, xₙ:Tₙ⟧ = ((𝟏 × ⟦T₁⟧) × …) × ⟦Tₙ⟧`.
pub fn context_obj(ctx: &[(String, Type)]) -> Result<Obj, SemError> {
    ctx.iter()
        .try_fold(Obj::Unit, |acc, (_, t)| Ok(Obj::prod(acc, obj_of_type(t)?)))
}

/// The projection `⟦Γ⟧ → ⟦Tᵢ⟧` for the variable `depth` places from the
/// right end of `ctx`: `π₂ ∘ π₁ⁱ`.
pub fn variable(ctx: &[(String, Type)], depth: usize) -> Result<Mor, SemError> {
    let n = ctx.len();
    let at = |k: usize| context_obj(&ctx[..k]);
    let mut m = Mor::Proj2(at(n - 1 - depth)?, obj_of_type(&ctx[n - 1 - depth].1)?);
    // π₁ chain from ⟦Γ⟧ down to the prefix ending at the variable
    let mut proj: Option<Mor> = None;
    for k in (n - depth + 1..=n).rev() {
        let step = Mor::Proj1(at(k - 1)?, obj_of_type(&ctx[k - 1].1)?);
        proj = Some(match proj {
            None => step,
            Some(p) => Mor::Compose(Box::new(step), Box::new(p)),
        });
    }
    if let Some(p) = proj {
        m = Mor::Compose(Box::new(m), Box::new(p));
    }
    Ok(m)
}

/// `⟦Γ ⊢ t : T⟧ : ⟦Γ⟧ → ⟦T⟧`, clause by clause on the derivation.
pub fn translate_stlc(d: &Derivation) -> Result<Mor, SemError> {
    let kid = |k: usize| translate_stlc(&d.premises[k]);
    match d.rule {
        Rule::Var => {
            let crate::syntax::Term::Var(x) = &d.term else {
                unreachable!("var rule on a non-variable")
            };
            let pos = d
                .context
                .iter()
                .rposition(|(y, _)| y == x)
                .ok_or_else(|| SemError::IllTyped(format!("unbound `{x}`")))?;
            variable(&d.context, d.context.len() - 1 - pos)
        }
        Rule::Proj1 | Rule::Proj2 => {
            let f = kid(0)?;
            let Obj::Prod(a, b) = f.cod() else {
                return Err(SemError::IllTyped("projection from a non-product".into()));
            };
            let p = if d.rule == Rule::Proj1 { Mor::Proj1(*a, *b) } else { Mor::Proj2(*a, *b) };
            Mor::compose(p, f)
        }
        Rule::Pair => Mor::pair(kid(0)?, kid(1)?),
        Rule::Abs => Mor::curry(kid(0)?),
        Rule::App => {
            let (f, g) = (kid(0)?, kid(1)?);
            let Obj::Exp(a, b) = f.cod() else {
                return Err(SemError::IllTyped("application of a non-function".into()));
            };
            Mor::compose(Mor::Ev(*a, *b), Mor::pair(f, g)?)
        }
        r => Err(SemError::UnsupportedRule(r.name().into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_term, parse_type};
    use crate::typing::typecheck_stlc;

    fn sem(ctx: &[(&str, &str)], t: &str, ty: &str) -> Mor {
        let ctx: Vec<(String, Type)> = ctx.iter().map(|(x, t)| (x.to_string(), parse_type(t).unwrap())).collect();
        let d = typecheck_stlc(&ctx, &parse_term(t).unwrap(), &parse_type(ty).unwrap()).unwrap();
        translate_stlc(&d).unwrap()
    }

    #[test]
    fn variable_clause() {
        let m = sem(&[("x", "b")], "x", "b");
        assert_eq!(m, Mor::Proj2(Obj::Unit, Obj::Base("b".into())));
    }

    #[test]
    fn identity_is_curried_projection() {
        let m = sem(&[], "\\x. x", "b -> b");
        assert_eq!(m.display(Notation::Unicode), "Λ(π2)");
        assert_eq!(m.dom(), Obj::Unit);
        assert_eq!(m.cod(), Obj::exp(Obj::Base("b".into()), Obj::Base("b".into())));
    }

    #[test]
    fn application_and_deep_variables() {
        let m = sem(&[("f", "b -> c"), ("y", "b"), ("z", "c")], "f y", "c");
        assert_eq!(m.display(Notation::Unicode), "(ev ∘ ⟨(π2 ∘ (π1 ∘ π1)), (π2 ∘ π1)⟩)");
        let b = Obj::Base("b".into());
        let c = Obj::Base("c".into());
        let ctx = Obj::prod(Obj::prod(Obj::prod(Obj::Unit, Obj::exp(b.clone(), c.clone())), b), c.clone());
        assert_eq!(m.dom(), ctx);
        assert_eq!(m.cod(), c);
    }

    #[test]
    fn ill_typed_composition_is_refused() {
        let b = Obj::Base("b".into());
        assert!(Mor::compose(Mor::Id(b), Mor::Bang(Obj::Unit)).is_err());
    }
}
