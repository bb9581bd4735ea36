//! Typing judgements and derivations.

mod linear;
mod stlc;
mod unify;

use std::fmt;

use crate::syntax::print::{judgement_to_string, Notation};
use crate::syntax::{Context, Term, Type};

pub use linear::typecheck_linear;
pub use stlc::{infer_derivation, infer_principal_type, typecheck_stlc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Var,
    Pair,
    Proj1,
    Proj2,
    Abs,
    App,
    Ax,
    TensorI,
    TensorE,
    LolliI,
    LolliE,
    WithI,
    WithE1,
    WithE2,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Var => "var",
            Rule::Pair => "pair",
            Rule::Proj1 => "proj1",
            Rule::Proj2 => "proj2",
            Rule::Abs => "abs",
            Rule::App => "app",
            Rule::Ax => "ax",
            Rule::TensorI => "tensor-i",
            Rule::TensorE => "tensor-e",
            Rule::LolliI => "lolli-i",
            Rule::LolliE => "lolli-e",
            Rule::WithI => "with-i",
            Rule::WithE1 => "with-e1",
            Rule::WithE2 => "with-e2",
        }
    }

    pub fn is_linear(self) -> bool {
        !matches!(
            self,
            Rule::Var | Rule::Pair | Rule::Proj1 | Rule::Proj2 | Rule::Abs | Rule::App
        )
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A typing derivation; every node is an instance of one rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub context: Context,
    pub term: Term,
    pub ty: Type,
    pub rule: Rule,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn render(&self, notation: Notation) -> String {
        let mut out = String::new();
        self.render_into(notation, 0, &mut out);
        out
    }

    fn render_into(&self, notation: Notation, indent: usize, out: &mut String) {
        out.push_str(&" ".repeat(indent));
        out.push_str(self.rule.name());
        out.push_str("  ");
        out.push_str(&judgement_to_string(&self.context, &self.term, &self.ty, notation));
        out.push('\n');
        for p in &self.premises {
            p.render_into(notation, indent + 2, out);
        }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub(crate) fn map_types(&mut self, f: &impl Fn(&Type) -> Type) {
        self.ty = f(&self.ty);
        for (_, t) in self.context.iter_mut() {
            *t = f(t);
        }
        for p in self.premises.iter_mut() {
            p.map_types(f);
        }
    }

    pub(crate) fn visit_types(&self, f: &mut impl FnMut(&Type)) {
        f(&self.ty);
        for (_, t) in &self.context {
            f(t);
        }
        for p in &self.premises {
            p.visit_types(f);
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("type mismatch at `{subterm}` (path {path:?}): expected {expected}, found {found}")]
    TypeMismatch {
        path: Vec<usize>,
        subterm: String,
        expected: String,
        found: String,
    },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("linearity violation: `{var}` {problem}")]
    LinearityViolation { var: String, problem: String },
    #[error("type `{0}` is not supported by the term calculus")]
    UnsupportedType(String),
    #[error("{0}")]
    WrongFragment(String),
    #[error("context binds `{0}` more than once")]
    DuplicateName(String),
    #[error("not typable: {0}")]
    NotTypable(String),
}

pub(crate) fn check_distinct(ctx: &Context) -> Result<(), TypeError> {
    for (i, (x, _)) in ctx.iter().enumerate() {
        if ctx[..i].iter().any(|(y, _)| y == x) {
            return Err(TypeError::DuplicateName(x.clone()));
        }
    }
    Ok(())
}

/// Type variables introduced while checking (those not in `keep`) are
/// instantiated with the first base type of the conclusion, or `o` if
/// there is none.
pub(crate) fn default_leftovers(d: &mut Derivation, keep: &std::collections::BTreeSet<u32>) {
    let mut has_var = false;
    d.visit_types(&mut |t| has_var |= t.vars().iter().any(|v| !keep.contains(v)));
    if !has_var {
        return;
    }
    let first_base = d
        .context
        .iter()
        .map(|(_, t)| t)
        .chain(std::iter::once(&d.ty))
        .find_map(first_base_name)
        .unwrap_or_else(|| "o".to_string());
    let fill = Type::base(first_base);
    d.map_types(&|t| {
        t.map_vars(&|v| if keep.contains(&v) { None } else { Some(fill.clone()) })
    });
}

fn first_base_name(t: &Type) -> Option<String> {
    match t {
        Type::Base(b) => Some(b.clone()),
        Type::Var(_) => None,
        Type::Bang(a) => first_base_name(a),
        Type::Arrow(a, b)
        | Type::Product(a, b)
        | Type::Tensor(a, b)
        | Type::Lollipop(a, b)
        | Type::With(a, b) => first_base_name(a).or_else(|| first_base_name(b)),
    }
}
