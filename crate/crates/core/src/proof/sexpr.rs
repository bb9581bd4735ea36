use super::formula::{Formula, Sequent};
use super::tree::{ProofRule, ProofTree};
use super::ProofError;

#[derive(Clone, Debug, PartialEq)]
enum Sx {
    Atom(String),
    List(Vec<Sx>),
}

fn tokenize(src: &str) -> Vec<String> {
    let mut toks = Vec::new();
    let mut cur = String::new();
    for c in src.chars() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if !cur.is_empty() {
                toks.push(std::mem::take(&mut cur));
            }
            if !c.is_whitespace() {
                toks.push(c.to_string());
            }
        } else {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        toks.push(cur);
    }
    toks
}

fn read(toks: &[String], pos: &mut usize) -> Result<Sx, ProofError> {
    let tok = toks
        .get(*pos)
        .ok_or_else(|| ProofError::Malformed("unexpected end of input".into()))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match toks.get(*pos).map(String::as_str) {
                    Some(")") => {
                        *pos += 1;
                        return Ok(Sx::List(items));
                    }
                    Some(_) => items.push(read(toks, pos)?),
                    None => return Err(ProofError::Malformed("unclosed `(`".into())),
                }
            }
        }
        ")" => Err(ProofError::Malformed("unexpected `)`".into())),
        atom => Ok(Sx::Atom(atom.to_string())),
    }
}

fn formula_of(sx: &Sx) -> Result<Formula, ProofError> {
    let bad = || ProofError::Malformed(format!("bad formula {sx:?}"));
    match sx {
        Sx::Atom(a) if a.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') => {
            Ok(Formula::atom(a.clone()))
        }
        Sx::Atom(_) => Err(bad()),
        Sx::List(items) => match items.as_slice() {
            [Sx::Atom(op), a] if op == "bang" => Ok(Formula::bang(formula_of(a)?)),
            [Sx::Atom(op), a, b] => {
                let ctor: fn(Formula, Formula) -> Formula = match op.as_str() {
                    "and" => Formula::conj,
                    "imp" => Formula::imp,
                    "tensor" => Formula::tensor,
                    "lolli" => Formula::lolli,
                    "with" => Formula::with,
                    _ => return Err(bad()),
                };
                Ok(ctor(formula_of(a)?, formula_of(b)?))
            }
            _ => Err(bad()),
        },
    }
}

fn sequent_of(sx: &Sx) -> Result<Sequent, ProofError> {
    match sx {
        Sx::List(items) => match items.as_slice() {
            [Sx::Atom(seq), Sx::List(hyps), concl] if seq == "seq" => match hyps.split_first() {
                Some((Sx::Atom(h), rest)) if h == "hyps" => Ok(Sequent::new(
                    rest.iter().map(formula_of).collect::<Result<_, _>>()?,
                    formula_of(concl)?,
                )),
                _ => Err(ProofError::Malformed("expected `(hyps ...)`".into())),
            },
            _ => Err(ProofError::Malformed("expected `(seq (hyps ...) C)`".into())),
        },
        _ => Err(ProofError::Malformed("expected a sequent".into())),
    }
}

fn tree_of(sx: &Sx) -> Result<ProofTree, ProofError> {
    let Sx::List(items) = sx else {
        return Err(ProofError::Malformed("expected a proof node".into()));
    };
    let [Sx::Atom(tok), seq, premises @ ..] = items.as_slice() else {
        return Err(ProofError::Malformed("expected `(rule (seq ...) premises...)`".into()));
    };
    let rule = ProofRule::from_token(tok)
        .ok_or_else(|| ProofError::Malformed(format!("unknown rule `{tok}`")))?;
    Ok(ProofTree::new(
        rule,
        sequent_of(seq)?,
        premises.iter().map(tree_of).collect::<Result<_, _>>()?,
    ))
}

pub fn parse_proof(src: &str) -> Result<ProofTree, ProofError> {
    let toks = tokenize(src);
    let mut pos = 0;
    let sx = read(&toks, &mut pos)?;
    if pos != toks.len() {
        return Err(ProofError::Malformed("trailing input after proof".into()));
    }
    tree_of(&sx)
}

fn write_formula(f: &Formula, out: &mut String) {
    let (op, a, b) = match f {
        Formula::Atom(a) => {
            out.push_str(a);
            return;
        }
        Formula::Bang(a) => {
            out.push_str("(bang ");
            write_formula(a, out);
            out.push(')');
            return;
        }
        Formula::Conj(a, b) => ("and", a, b),
        Formula::Impl(a, b) => ("imp", a, b),
        Formula::Tensor(a, b) => ("tensor", a, b),
        Formula::Lolli(a, b) => ("lolli", a, b),
        Formula::With(a, b) => ("with", a, b),
    };
    out.push('(');
    out.push_str(op);
    out.push(' ');
    write_formula(a, out);
    out.push(' ');
    write_formula(b, out);
    out.push(')');
}

fn write_sequent(s: &Sequent, out: &mut String) {
    out.push_str("(seq (hyps");
    for h in &s.hyps {
        out.push(' ');
        write_formula(h, out);
    }
    out.push_str(") ");
    write_formula(&s.concl, out);
    out.push(')');
}

fn write_tree(p: &ProofTree, indent: usize, out: &mut String) {
    out.push_str(&" ".repeat(indent));
    out.push('(');
    out.push_str(&p.rule.token());
    out.push(' ');
    write_sequent(&p.sequent, out);
    for q in &p.premises {
        out.push('\n');
        write_tree(q, indent + 2, out);
    }
    out.push(')');
}

/// One node per line, premises indented by two spaces. Ends with a newline.
pub fn print_proof(p: &ProofTree) -> String {
    let mut out = String::new();
    write_tree(p, 0, &mut out);
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SRC: &str = "(imp-r (seq (hyps (imp A B)) (imp (bang A) B))\n  (id (seq (hyps A) A)))\n";

    #[test]
    fn print_parse_round_trip() {
        let p = parse_proof(SRC).unwrap();
        assert_eq!(p.premises.len(), 1);
        assert_eq!(print_proof(&p), SRC);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_proof("(id (seq (hyps) A)").is_err());
        assert!(parse_proof("(nope (seq (hyps) A))").is_err());
        assert!(parse_proof("(id (seq (hyps) (xor A B)))").is_err());
        assert!(parse_proof("(id (seq (hyps) A)) extra").is_err());
    }
}
