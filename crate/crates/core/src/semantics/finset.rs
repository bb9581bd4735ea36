use std::collections::BTreeMap;

use super::ccc::{context_obj, translate_stlc, Mor, Obj};
use super::SemError;
use crate::par;
use crate::rewrite::decide_conversion;
use crate::syntax::{simultaneous_substitute, Context, Term, Type};
use crate::typing::typecheck_stlc;

pub const DEFAULT_CAP: usize = 1_000_000;

/// Size of each base object.
pub type Sizes = BTreeMap<String, usize>;

/// Cardinality of `o` in FinSet. Pairs `(a, b)` are numbered `a·|B| + b`;
/// a function `f : A → B` is numbered `Σ f(a)·|B|^a`.
pub fn size_of(o: &Obj, sizes: &Sizes, cap: usize) -> Result<usize, SemError> {
    let n = match o {
        Obj::Base(b) => *sizes.get(b).ok_or_else(|| SemError::UnknownBase(b.clone()))?,
        Obj::Unit => 1,
        Obj::Prod(a, b) => size_of(a, sizes, cap)?
            .checked_mul(size_of(b, sizes, cap)?)
            .ok_or(SemError::SizeOverflow { cap })?,
        Obj::Exp(a, b) => {
            let (na, nb) = (size_of(a, sizes, cap)?, size_of(b, sizes, cap)?);
            u32::try_from(na)
                .ok()
                .and_then(|e| nb.checked_pow(e))
                .ok_or(SemError::SizeOverflow { cap })?
        }
    };
    if n > cap {
        return Err(SemError::SizeOverflow { cap });
    }
    Ok(n)
}

/// Render element `i` of `o`.
pub fn show_element(o: &Obj, i: usize, sizes: &Sizes) -> String {
    let sz = |x: &Obj| size_of(x, sizes, usize::MAX).expect("sized");
    match o {
        Obj::Base(b) => format!("{b}{i}"),
        Obj::Unit => "•".into(),
        Obj::Prod(a, b) => {
            let nb = sz(b);
            format!("({}, {})", show_element(a, i / nb, sizes), show_element(b, i % nb, sizes))
        }
        Obj::Exp(a, b) => {
            let (na, nb) = (sz(a), sz(b));
            let parts: Vec<String> = (0..na)
                .map(|k| {
                    let v = i / nb.pow(k as u32) % nb;
                    format!("{}↦{}", show_element(a, k, sizes), show_element(b, v, sizes))
                })
                .collect();
            format!("{{{}}}", parts.join(", "))
        }
    }
}

/// A morphism evaluated in FinSet: `table[x]` is the image of element `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunTable {
    pub dom: Obj,
    pub cod: Obj,
    pub table: Vec<usize>,
}

impl FunTable {
    /// `input ↦ output` lines, in input order.
    pub fn render(&self, sizes: &Sizes) -> String {
        self.table
            .iter()
            .enumerate()
            .map(|(x, &y)| {
                format!("{} ↦ {}\n", show_element(&self.dom, x, sizes), show_element(&self.cod, y, sizes))
            })
            .collect()
    }
}

pub fn eval_finset(m: &Mor, sizes: &Sizes) -> Result<FunTable, SemError> {
    eval_finset_capped(m, sizes, DEFAULT_CAP)
}

pub fn eval_finset_capped(m: &Mor, sizes: &Sizes, cap: usize) -> Result<FunTable, SemError> {
    Ok(FunTable {
        dom: m.dom(),
        cod: m.cod(),
        table: eval(m, sizes, cap)?,
    })
}

fn eval(m: &Mor, sizes: &Sizes, cap: usize) -> Result<Vec<usize>, SemError> {
    let sz = |o: &Obj| size_of(o, sizes, cap);
    Ok(match m {
        Mor::Id(a) => (0..sz(a)?).collect(),
        Mor::Bang(a) => vec![0; sz(a)?],
        Mor::Compose(g, f) => {
            let (tg, tf) = (eval(g, sizes, cap)?, eval(f, sizes, cap)?);
            par::map(&tf, |&y| tg[y])
        }
        Mor::Pair(f, g) => {
            let nb = sz(&g.cod())?;
            let (tf, tg) = (eval(f, sizes, cap)?, eval(g, sizes, cap)?);
            tf.iter().zip(&tg).map(|(&a, &b)| a * nb + b).collect()
        }
        Mor::Proj1(a, b) => {
            let nb = sz(b)?;
            (0..sz(a)? * nb).map(|x| x / nb).collect()
        }
        Mor::Proj2(a, b) => {
            let nb = sz(b)?;
            (0..sz(a)? * nb).map(|x| x % nb).collect()
        }
        Mor::Curry(f) => {
            let Obj::Prod(c, a) = f.dom() else { unreachable!("curried domain is a product") };
            let (nc, na, nb) = (sz(&c)?, sz(&a)?, sz(&f.cod())?);
            sz(&m.cod())?;
            let tf = eval(f, sizes, cap)?;
            par::map_range(nc, |x| (0..na).rev().fold(0, |acc, k| acc * nb + tf[x * na + k]))
        }
        Mor::Ev(a, b) => {
            let (na, nb) = (sz(a)?, sz(b)?);
            let ne = sz(&Obj::exp(a.clone(), b.clone()))?;
            par::map_range(ne * na, |x| (x / na) / nb.pow((x % na) as u32) % nb)
        }
    })
}

/// `⟦Γ ⊢ t : T⟧` evaluated at `sizes`.
pub fn denote(ctx: &Context, t: &Term, ty: &Type, sizes: &Sizes) -> Result<FunTable, SemError> {
    let d = typecheck_stlc(ctx, t, ty).map_err(|e| SemError::IllTyped(e.to_string()))?;
    eval_finset(&translate_stlc(&d)?, sizes)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Soundness {
    pub convertible: bool,
    /// First input on which the two tables differ, rendered.
    pub mismatch: Option<String>,
}

/// If `t =λ u`, their denotations must agree at `sizes`.
pub fn check_soundness(ctx: &Context, t: &Term, u: &Term, ty: &Type, sizes: &Sizes) -> Result<Soundness, SemError> {
    let convertible = decide_conversion(ctx, t, u, ty).map_err(|e| SemError::IllTyped(e.to_string()))?;
    if !convertible {
        return Ok(Soundness { convertible, mismatch: None });
    }
    let (a, b) = (denote(ctx, t, ty, sizes)?, denote(ctx, u, ty, sizes)?);
    let mismatch = first_difference(&a, &b, sizes);
    Ok(Soundness { convertible, mismatch })
}

pub fn first_difference(a: &FunTable, b: &FunTable, sizes: &Sizes) -> Option<String> {
    a.table.iter().zip(&b.table).position(|(x, y)| x != y).map(|i| {
        format!(
            "{}: {} vs {}",
            show_element(&a.dom, i, sizes),
            show_element(&a.cod, a.table[i], sizes),
            show_element(&a.cod, b.table[i], sizes)
        )
    })
}

/// `⟨τ, ⟦t₁⟧, …, ⟦tₖ⟧⟩ : ⟦Δ⟧ → ⟦Γ⟧`, pairing into the left-nested
/// context object.
pub fn tuple(delta: &Context, terms: &[(Term, Type)]) -> Result<Mor, SemError> {
    let mut m = Mor::Bang(context_obj(delta)?);
    for (t, ty) in terms {
        let d = typecheck_stlc(delta, t, ty).map_err(|e| SemError::IllTyped(e.to_string()))?;
        m = Mor::pair(m, translate_stlc(&d)?)?;
    }
    Ok(m)
}

/// Both sides of the Substitution Lemma for `Γ ⊢ t : T` and
/// `Δ ⊢ tᵢ : Tᵢ`: `⟦t[t⃗/x⃗]⟧` and `⟦t⟧ ∘ ⟨⟦t⃗⟧⟩`, evaluated.
pub fn substitution_sides(
    gamma: &Context,
    t: &Term,
    ty: &Type,
    delta: &Context,
    terms: &[Term],
    sizes: &Sizes,
) -> Result<(FunTable, FunTable), SemError> {
    let bindings: Vec<(String, Term)> = gamma.iter().map(|(x, _)| x.clone()).zip(terms.iter().cloned()).collect();
    let substituted = simultaneous_substitute(t, &bindings).map_err(|e| SemError::IllTyped(e.to_string()))?;
    let lhs = denote(delta, &substituted, ty, sizes)?;
    let typed: Vec<(Term, Type)> = terms.iter().cloned().zip(gamma.iter().map(|(_, ty)| ty.clone())).collect();
    let d = typecheck_stlc(gamma, t, ty).map_err(|e| SemError::IllTyped(e.to_string()))?;
    let rhs = eval_finset(&Mor::compose(translate_stlc(&d)?, tuple(delta, &typed)?)?, sizes)?;
    Ok((lhs, rhs))
}

/// Both sides of `Λ(f) ∘ g = Λ(f ∘ (g × id))`, evaluated.
pub fn curry_naturality_sides(f: &Mor, g: &Mor, sizes: &Sizes) -> Result<(FunTable, FunTable), SemError> {
    let Obj::Prod(_, a) = f.dom() else {
        return Err(SemError::IllTyped("f needs a product domain".into()));
    };
    let lhs = Mor::compose(Mor::curry(f.clone())?, g.clone())?;
    let rhs = Mor::curry(Mor::compose(f.clone(), Mor::times(g.clone(), Mor::Id(*a)))?)?;
    Ok((eval_finset(&lhs, sizes)?, eval_finset(&rhs, sizes)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_term, parse_type};

    fn sizes(pairs: &[(&str, usize)]) -> Sizes {
        pairs.iter().map(|(b, n)| (b.to_string(), *n)).collect()
    }

    fn b() -> Obj {
        Obj::Base("b".into())
    }

    #[test]
    fn identity_table() {
        let t = eval_finset(&Mor::Id(b()), &sizes(&[("b", 2)])).unwrap();
        assert_eq!(t.table, vec![0, 1]);
    }

    #[test]
    fn application_table() {
        let s = sizes(&[("b", 2)]);
        let t = eval_finset(&Mor::Ev(b(), b()), &s).unwrap();
        assert_eq!(t.table.len(), 8);
        // hand-enumerated: f numbered f(0) + 2 f(1)
        assert_eq!(t.table, vec![0, 0, 1, 0, 0, 1, 1, 1]);
        assert!(t.render(&s).contains("({b0↦b1, b1↦b0}, b1) ↦ b0"));
    }

    #[test]
    fn overflow_is_reported() {
        let big = Obj::exp(Obj::exp(b(), b()), b());
        let m = Mor::Id(Obj::exp(big.clone(), big));
        assert!(matches!(
            eval_finset(&m, &sizes(&[("b", 3)])),
            Err(SemError::SizeOverflow { .. })
        ));
    }

    #[test]
    fn beta_instance_is_sound() {
        let ctx = vec![("y".to_string(), parse_type("b").unwrap())];
        let t = parse_term("(\\x. x) y").unwrap();
        let u = parse_term("y").unwrap();
        let r = check_soundness(&ctx, &t, &u, &parse_type("b").unwrap(), &sizes(&[("b", 3)])).unwrap();
        assert_eq!(r, Soundness { convertible: true, mismatch: None });
    }
}
