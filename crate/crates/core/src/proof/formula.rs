use std::fmt;

use serde::{Deserialize, Serialize};

use crate::syntax::parse::{Parser, Tok};
use crate::syntax::{Fragment, Notation, SyntaxError, Type};

/// Propositional formulas of the three proof systems.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Formula {
    Atom(String),
    Conj(Box<Formula>, Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
    Tensor(Box<Formula>, Box<Formula>),
    Lolli(Box<Formula>, Box<Formula>),
    With(Box<Formula>, Box<Formula>),
    Bang(Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }
    pub fn conj(a: Formula, b: Formula) -> Formula {
        Formula::Conj(Box::new(a), Box::new(b))
    }
    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Impl(Box::new(a), Box::new(b))
    }
    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }
    pub fn lolli(a: Formula, b: Formula) -> Formula {
        Formula::Lolli(Box::new(a), Box::new(b))
    }
    pub fn with(a: Formula, b: Formula) -> Formula {
        Formula::With(Box::new(a), Box::new(b))
    }
    pub fn bang(a: Formula) -> Formula {
        Formula::Bang(Box::new(a))
    }

    pub fn is_bang(&self) -> bool {
        matches!(self, Formula::Bang(_))
    }

    pub fn contains_bang(&self) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Bang(_) => true,
            Formula::Conj(a, b)
            | Formula::Impl(a, b)
            | Formula::Tensor(a, b)
            | Formula::Lolli(a, b)
            | Formula::With(a, b) => a.contains_bang() || b.contains_bang(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Bang(a) => 1 + a.size(),
            Formula::Conj(a, b)
            | Formula::Impl(a, b)
            | Formula::Tensor(a, b)
            | Formula::Lolli(a, b)
            | Formula::With(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// The type this formula names under propositions-as-types.
    pub fn to_type(&self) -> Type {
        match self {
            Formula::Atom(a) => Type::base(a.clone()),
            Formula::Conj(a, b) => Type::product(a.to_type(), b.to_type()),
            Formula::Impl(a, b) => Type::arrow(a.to_type(), b.to_type()),
            Formula::Tensor(a, b) => Type::tensor(a.to_type(), b.to_type()),
            Formula::Lolli(a, b) => Type::lollipop(a.to_type(), b.to_type()),
            Formula::With(a, b) => Type::with(a.to_type(), b.to_type()),
            Formula::Bang(a) => Type::bang(a.to_type()),
        }
    }

    /// Inverse of [`Formula::to_type`]; `None` on type variables.
    pub fn from_type(t: &Type) -> Option<Formula> {
        Some(match t {
            Type::Base(b) => Formula::atom(b.clone()),
            Type::Var(_) => return None,
            Type::Arrow(a, b) => Formula::imp(Formula::from_type(a)?, Formula::from_type(b)?),
            Type::Product(a, b) => Formula::conj(Formula::from_type(a)?, Formula::from_type(b)?),
            Type::Tensor(a, b) => Formula::tensor(Formula::from_type(a)?, Formula::from_type(b)?),
            Type::Lollipop(a, b) => Formula::lolli(Formula::from_type(a)?, Formula::from_type(b)?),
            Type::With(a, b) => Formula::with(Formula::from_type(a)?, Formula::from_type(b)?),
            Type::Bang(a) => Formula::bang(Formula::from_type(a)?),
        })
    }

    pub fn fragment(&self) -> Result<Option<Fragment>, ()> {
        self.to_type().fragment()
    }

    pub fn display(&self, n: Notation) -> String {
        let mut out = String::new();
        write_formula(self, n, 0, &mut out);
        out
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(Notation::Ascii))
    }
}

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Impl(..) | Formula::Lolli(..) => 0,
        Formula::Conj(..) | Formula::Tensor(..) | Formula::With(..) => 1,
        _ => 2,
    }
}

fn write_formula(f: &Formula, n: Notation, min: u8, out: &mut String) {
    if level(f) < min {
        out.push('(');
        write_formula(f, n, 0, out);
        out.push(')');
        return;
    }
    let uni = n == Notation::Unicode;
    match f {
        Formula::Atom(a) => out.push_str(a),
        Formula::Bang(a) => {
            out.push('!');
            write_formula(a, n, 2, out);
        }
        Formula::Impl(a, b) | Formula::Lolli(a, b) => {
            let op = match (f, uni) {
                (Formula::Impl(..), false) => " => ",
                (Formula::Impl(..), true) => " ⊃ ",
                (_, false) => " -o ",
                (_, true) => " ⊸ ",
            };
            write_formula(a, n, 1, out);
            out.push_str(op);
            write_formula(b, n, 0, out);
        }
        Formula::Conj(a, b) | Formula::Tensor(a, b) | Formula::With(a, b) => {
            let op = match (f, uni) {
                (Formula::Conj(..), false) => " /\\ ",
                (Formula::Conj(..), true) => " ∧ ",
                (Formula::Tensor(..), false) => " (x) ",
                (Formula::Tensor(..), true) => " ⊗ ",
                _ => " & ",
            };
            write_formula(a, n, 1, out);
            out.push_str(op);
            write_formula(b, n, 2, out);
        }
    }
}

/// `hyps ⊢ concl`. Whether `hyps` is read as a set, a list or a multiset
/// depends on the proof system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sequent {
    pub hyps: Vec<Formula>,
    pub concl: Formula,
}

impl Sequent {
    pub fn new(hyps: Vec<Formula>, concl: Formula) -> Sequent {
        Sequent { hyps, concl }
    }

    pub fn display(&self, n: Notation) -> String {
        let hyps: Vec<String> = self.hyps.iter().map(|h| h.display(n)).collect();
        let ts = crate::syntax::print::turnstile(n);
        if hyps.is_empty() {
            format!("{ts} {}", self.concl.display(n))
        } else {
            format!("{} {ts} {}", hyps.join(", "), self.concl.display(n))
        }
    }

    pub fn mentions_bang(&self) -> bool {
        self.concl.contains_bang() || self.hyps.iter().any(Formula::contains_bang)
    }

    /// Hypotheses sorted, so that multiset-equal sequents coincide.
    pub fn normalized(&self) -> Sequent {
        let mut hyps = self.hyps.clone();
        hyps.sort();
        Sequent {
            hyps,
            concl: self.concl.clone(),
        }
    }

    pub fn fragment(&self) -> Result<Option<Fragment>, ()> {
        let mut acc = self.concl.fragment()?;
        for h in &self.hyps {
            match (acc, h.fragment()?) {
                (Some(a), Some(b)) if a != b => return Err(()),
                (None, b) => acc = b,
                _ => {}
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(Notation::Ascii))
    }
}

impl Parser {
    pub(crate) fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let left = self.formula_prod()?;
        match self.peek() {
            Some(Tok::Impl) | Some(Tok::Arrow) => {
                self.bump();
                Ok(Formula::imp(left, self.formula()?))
            }
            Some(Tok::Lolli) => {
                self.bump();
                Ok(Formula::lolli(left, self.formula()?))
            }
            _ => Ok(left),
        }
    }

    fn formula_prod(&mut self) -> Result<Formula, SyntaxError> {
        let mut acc = self.formula_unary()?;
        loop {
            let ctor: fn(Formula, Formula) -> Formula = match self.peek() {
                Some(Tok::Conj) | Some(Tok::Star) | Some(Tok::Times) => Formula::conj,
                Some(Tok::OTimes) => Formula::tensor,
                Some(Tok::Amp) => Formula::with,
                _ if self.at_ascii_tensor() => {
                    self.bump();
                    self.bump();
                    Formula::tensor
                }
                _ => return Ok(acc),
            };
            self.bump();
            acc = ctor(acc, self.formula_unary()?);
        }
    }

    fn formula_unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.bump();
                Ok(Formula::bang(self.formula_unary()?))
            }
            Some(Tok::Ident(_)) => Ok(Formula::Atom(self.ident()?)),
            Some(Tok::LParen) => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            _ => Err(self.unexpected("formula")),
        }
    }

    pub(crate) fn sequent(&mut self) -> Result<Sequent, SyntaxError> {
        let mut hyps = Vec::new();
        if !self.eat(&Tok::Turnstile) {
            loop {
                hyps.push(self.formula()?);
                if self.eat(&Tok::Comma) {
                    continue;
                }
                self.expect(Tok::Turnstile)?;
                break;
            }
        }
        let concl = self.formula()?;
        Ok(Sequent { hyps, concl })
    }
}

pub fn parse_formula(src: &str) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(src)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_sequent(src: &str) -> Result<Sequent, SyntaxError> {
    let mut p = Parser::new(src)?;
    let s = p.sequent()?;
    p.finish()?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let s = parse_sequent("A => B, B ⊃ C |- A => C").unwrap();
        assert_eq!(s.hyps.len(), 2);
        assert_eq!(s.to_string(), "A => B, B => C |- A => C");
        assert_eq!(s.display(Notation::Unicode), "A ⊃ B, B ⊃ C ⊢ A ⊃ C");
        let s = parse_sequent("|- (A -o B -o C) -o B -o A -o C").unwrap();
        assert!(s.hyps.is_empty());
        let f = parse_formula("A (x) (B (x) C)").unwrap();
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        assert_eq!(parse_formula("!A -o B & C").unwrap().to_string(), "!A -o B & C");
        assert_eq!(parse_formula("A /\\ B").unwrap(), Formula::conj(Formula::atom("A"), Formula::atom("B")));
    }

    #[test]
    fn fragments() {
        assert!(parse_sequent("A (x) B |- A => B").unwrap().fragment().is_err());
        assert_eq!(
            parse_sequent("A |- A").unwrap().fragment(),
            Ok(None)
        );
    }
}
