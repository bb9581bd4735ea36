use super::term::{Side, Term};
use super::types::Type;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Notation {
    #[default]
    Ascii,
    Unicode,
}

const GREEK: [&str; 12] = ["α", "β", "γ", "δ", "ε", "ζ", "η", "θ", "ι", "κ", "μ", "ν"];

pub fn type_var_name(v: u32, notation: Notation) -> String {
    match notation {
        Notation::Unicode => {
            let i = v as usize;
            if i < GREEK.len() {
                GREEK[i].to_string()
            } else {
                format!("{}{}", GREEK[i % GREEK.len()], i / GREEK.len())
            }
        }
        Notation::Ascii => {
            let letter = (b'a' + (v % 26) as u8) as char;
            if v < 26 {
                format!("'{letter}")
            } else {
                format!("'{letter}{}", v / 26)
            }
        }
    }
}

// Precedence: 0 arrows (right assoc), 1 binary products (left assoc), 2 bang/atoms.
pub fn type_to_string(t: &Type, n: Notation) -> String {
    let mut out = String::new();
    write_type(t, n, 0, &mut out);
    out
}

fn type_level(t: &Type) -> u8 {
    match t {
        Type::Arrow(..) | Type::Lollipop(..) => 0,
        Type::Product(..) | Type::Tensor(..) | Type::With(..) => 1,
        _ => 2,
    }
}

fn write_type(t: &Type, n: Notation, min: u8, out: &mut String) {
    if type_level(t) < min {
        out.push('(');
        write_type(t, n, 0, out);
        out.push(')');
        return;
    }
    let uni = n == Notation::Unicode;
    match t {
        Type::Base(b) => out.push_str(b),
        Type::Var(v) => out.push_str(&type_var_name(*v, n)),
        Type::Bang(a) => {
            out.push('!');
            write_type(a, n, 2, out);
        }
        Type::Arrow(a, b) | Type::Lollipop(a, b) => {
            let op = match (t, uni) {
                (Type::Arrow(..), false) => " -> ",
                (Type::Arrow(..), true) => " → ",
                (_, false) => " -o ",
                (_, true) => " ⊸ ",
            };
            write_type(a, n, 1, out);
            out.push_str(op);
            write_type(b, n, 0, out);
        }
        Type::Product(a, b) | Type::Tensor(a, b) | Type::With(a, b) => {
            let op = match (t, uni) {
                (Type::Product(..), false) => " * ",
                (Type::Product(..), true) => " × ",
                (Type::Tensor(..), false) => " (x) ",
                (Type::Tensor(..), true) => " ⊗ ",
                _ => " & ",
            };
            write_type(a, n, 1, out);
            out.push_str(op);
            write_type(b, n, 2, out);
        }
    }
}

// Precedence: 0 binders, 1 tensor (left assoc), 2 application, 3 atoms.
pub fn term_to_string(t: &Term, n: Notation) -> String {
    let mut out = String::new();
    write_term(t, n, 0, &mut out);
    out
}

fn term_level(t: &Term) -> u8 {
    match t {
        Term::Lam(..) | Term::LetTensor { .. } | Term::LetWith { .. } => 0,
        Term::Tensor(..) => 1,
        Term::App(..) | Term::Proj(..) => 2,
        Term::Var(_) | Term::Pair(..) => 3,
    }
}

fn write_term(t: &Term, n: Notation, min: u8, out: &mut String) {
    if term_level(t) < min {
        out.push('(');
        write_term(t, n, 0, out);
        out.push(')');
        return;
    }
    let uni = n == Notation::Unicode;
    match t {
        Term::Var(x) => out.push_str(x),
        Term::Lam(x, body) => {
            out.push_str(if uni { "λ" } else { "\\" });
            out.push_str(x);
            out.push_str(". ");
            write_term(body, n, 0, out);
        }
        Term::App(f, a) => {
            write_term(f, n, 2, out);
            out.push(' ');
            write_term(a, n, 3, out);
        }
        Term::Proj(side, a) => {
            out.push_str(match (side, uni) {
                (Side::First, false) => "fst ",
                (Side::Second, false) => "snd ",
                (Side::First, true) => "π₁ ",
                (Side::Second, true) => "π₂ ",
            });
            write_term(a, n, 3, out);
        }
        Term::Pair(a, b) => {
            out.push_str(if uni { "⟨" } else { "<" });
            write_term(a, n, 0, out);
            out.push_str(", ");
            write_term(b, n, 0, out);
            out.push_str(if uni { "⟩" } else { ">" });
        }
        Term::Tensor(a, b) => {
            write_term(a, n, 1, out);
            out.push_str(if uni { " ⊗ " } else { " * " });
            write_term(b, n, 2, out);
        }
        Term::LetTensor {
            left,
            right,
            scrutinee,
            body,
        } => {
            let op = if uni { "⊗" } else { "*" };
            out.push_str(&format!("let {left} {op} {right} = "));
            write_term(scrutinee, n, 0, out);
            out.push_str(" in ");
            write_term(body, n, 0, out);
        }
        Term::LetWith {
            side,
            binder,
            scrutinee,
            body,
        } => {
            let (l, r) = if uni { ("⟨", "⟩") } else { ("<", ">") };
            let pat = match side {
                Side::First => format!("{l}{binder},_{r}"),
                Side::Second => format!("{l}_,{binder}{r}"),
            };
            out.push_str(&format!("let {pat} = "));
            write_term(scrutinee, n, 0, out);
            out.push_str(" in ");
            write_term(body, n, 0, out);
        }
    }
}

pub fn context_to_string(ctx: &[(String, Type)], n: Notation) -> String {
    ctx.iter()
        .map(|(x, t)| format!("{x} : {}", type_to_string(t, n)))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn turnstile(n: Notation) -> &'static str {
    match n {
        Notation::Ascii => "|-",
        Notation::Unicode => "⊢",
    }
}

pub fn judgement_to_string(ctx: &[(String, Type)], t: &Term, ty: &Type, n: Notation) -> String {
    let c = context_to_string(ctx, n);
    let sep = if c.is_empty() { "" } else { " " };
    format!(
        "{c}{sep}{} {} : {}",
        turnstile(n),
        term_to_string(t, n),
        type_to_string(ty, n)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::term::*;

    #[test]
    fn types_print_with_minimal_parentheses() {
        let b = Type::base("b");
        let c = Type::base("c");
        let t = Type::arrow(Type::arrow(b.clone(), c.clone()), Type::arrow(b.clone(), c.clone()));
        assert_eq!(type_to_string(&t, Notation::Ascii), "(b -> c) -> b -> c");
        assert_eq!(type_to_string(&t, Notation::Unicode), "(b → c) → b → c");
        let t = Type::tensor(b.clone(), Type::tensor(c.clone(), b.clone()));
        assert_eq!(type_to_string(&t, Notation::Ascii), "b (x) (c (x) b)");
        let t = Type::lollipop(Type::bang(Type::with(b.clone(), c)), b);
        assert_eq!(type_to_string(&t, Notation::Unicode), "!(b & c) ⊸ b");
    }

    #[test]
    fn terms_print_with_minimal_parentheses() {
        let t = app(lam("x", var("x")), lam("y", var("y")));
        assert_eq!(term_to_string(&t, Notation::Ascii), "(\\x. x) (\\y. y)");
        let t = lam("f", lam("x", apps(var("f"), [var("x"), var("x")])));
        assert_eq!(term_to_string(&t, Notation::Unicode), "λf. λx. f x x");
        let t = app(var("f"), app(var("g"), var("x")));
        assert_eq!(term_to_string(&t, Notation::Ascii), "f (g x)");
        let t = let_with(Side::Second, "y", var("p"), tensor(var("y"), var("z")));
        assert_eq!(term_to_string(&t, Notation::Ascii), "let <_,y> = p in y * z");
        assert_eq!(term_to_string(&fst(pair(var("a"), var("b"))), Notation::Ascii), "fst <a, b>");
    }

    #[test]
    fn type_variables() {
        assert_eq!(type_var_name(0, Notation::Ascii), "'a");
        assert_eq!(type_var_name(2, Notation::Unicode), "γ");
        assert_eq!(type_var_name(27, Notation::Ascii), "'b1");
    }
}
