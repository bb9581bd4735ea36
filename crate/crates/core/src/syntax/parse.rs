use super::term::{self, Name, Side, Term};
use super::types::Type;
use super::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    TyVar(u32),
    Lambda,
    Dot,
    LParen,
    RParen,
    LAngle,
    RAngle,
    Comma,
    Star,
    Times,
    OTimes,
    Arrow,
    Lolli,
    Amp,
    Bang,
    Eq,
    Colon,
    Turnstile,
    Underscore,
    Conj,
    Impl,
    Proj(Side),
    Let,
    In,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::TyVar(_) => "type variable".into(),
            other => format!("{other:?}"),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Lexed {
    pub toks: Vec<(Tok, usize)>,
    pub len: usize,
}

const GREEK: [char; 12] = ['α', 'β', 'γ', 'δ', 'ε', 'ζ', 'η', 'θ', 'ι', 'κ', 'μ', 'ν'];

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub(crate) fn lex(src: &str) -> Result<Lexed, SyntaxError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let at = |i: usize| chars.get(i).map(|p| p.1);
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let (tok, width) = match c {
            '\\' if at(i + 1) == Some('/') => (Tok::Conj, 2),
            '\\' | 'λ' => (Tok::Lambda, 1),
            '/' if at(i + 1) == Some('\\') => (Tok::Conj, 2),
            '.' => (Tok::Dot, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '<' | '⟨' => (Tok::LAngle, 1),
            '>' | '⟩' => (Tok::RAngle, 1),
            ',' => (Tok::Comma, 1),
            '*' => (Tok::Star, 1),
            '×' => (Tok::Times, 1),
            '⊗' => (Tok::OTimes, 1),
            '→' => (Tok::Arrow, 1),
            '⊸' => (Tok::Lolli, 1),
            '∧' => (Tok::Conj, 1),
            '⊃' => (Tok::Impl, 1),
            '&' => (Tok::Amp, 1),
            '!' => (Tok::Bang, 1),
            ':' => (Tok::Colon, 1),
            '⊢' => (Tok::Turnstile, 1),
            '=' if at(i + 1) == Some('>') => (Tok::Impl, 2),
            '=' => (Tok::Eq, 1),
            '-' if at(i + 1) == Some('>') => (Tok::Arrow, 2),
            '-' if at(i + 1) == Some('o') && !at(i + 2).is_some_and(is_ident_char) => {
                (Tok::Lolli, 2)
            }
            '|' if at(i + 1) == Some('-') => (Tok::Turnstile, 2),
            'π' if matches!(at(i + 1), Some('₁') | Some('1')) => (Tok::Proj(Side::First), 2),
            'π' if matches!(at(i + 1), Some('₂') | Some('2')) => (Tok::Proj(Side::Second), 2),
            '\'' if at(i + 1).is_some_and(|c| c.is_ascii_lowercase()) => {
                let letter = at(i + 1).unwrap() as u32 - 'a' as u32;
                let mut j = i + 2;
                while at(j).is_some_and(|c| c.is_ascii_digit()) {
                    j += 1;
                }
                let digits: String = chars[i + 2..j].iter().map(|p| p.1).collect();
                let round: u32 = if digits.is_empty() { 0 } else { parse_num(&digits, pos)? };
                (Tok::TyVar(round * 26 + letter), j - i)
            }
            g if GREEK.contains(&g) => {
                let idx = GREEK.iter().position(|x| *x == g).unwrap() as u32;
                let mut j = i + 1;
                while at(j).is_some_and(|c| c.is_ascii_digit()) {
                    j += 1;
                }
                let digits: String = chars[i + 1..j].iter().map(|p| p.1).collect();
                let round: u32 = if digits.is_empty() { 0 } else { parse_num(&digits, pos)? };
                (Tok::TyVar(round * GREEK.len() as u32 + idx), j - i)
            }
            c if is_ident_start(c) => {
                let mut j = i + 1;
                while at(j).is_some_and(is_ident_char) {
                    j += 1;
                }
                let word: String = chars[i..j].iter().map(|p| p.1).collect();
                let tok = match word.as_str() {
                    "_" => Tok::Underscore,
                    "let" => Tok::Let,
                    "in" => Tok::In,
                    "fst" => Tok::Proj(Side::First),
                    "snd" => Tok::Proj(Side::Second),
                    _ => Tok::Ident(word),
                };
                (tok, j - i)
            }
            other => {
                return Err(SyntaxError::Parse {
                    pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        toks.push((tok, pos));
        i += width;
    }
    Ok(Lexed {
        toks,
        len: src.len(),
    })
}

fn parse_num(digits: &str, pos: usize) -> Result<u32, SyntaxError> {
    digits.parse().map_err(|_| SyntaxError::Parse {
        pos,
        message: "type variable index too large".into(),
    })
}

pub(crate) struct Parser {
    toks: Vec<(Tok, usize)>,
    len: usize,
    i: usize,
}

impl Parser {
    pub(crate) fn new(src: &str) -> Result<Parser, SyntaxError> {
        let Lexed { toks, len } = lex(src)?;
        Ok(Parser { toks, len, i: 0 })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }

    pub(crate) fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.i + k).map(|t| &t.0)
    }

    pub(crate) fn pos(&self) -> usize {
        self.toks.get(self.i).map(|t| t.1).unwrap_or(self.len)
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError::Parse {
            pos: self.pos(),
            message: message.into(),
        }
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|t| t.0.clone());
        self.i += 1;
        t
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: Tok) -> Result<(), SyntaxError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("{tok:?}")))
        }
    }

    pub(crate) fn unexpected(&self, wanted: &str) -> SyntaxError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.describe())),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    pub(crate) fn ident(&mut self) -> Result<Name, SyntaxError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.i += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("identifier")),
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.i >= self.toks.len()
    }

    pub(crate) fn finish(&self) -> Result<(), SyntaxError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    /// `( x )` in infix position is the ASCII tensor connective.
    pub(crate) fn at_ascii_tensor(&self) -> bool {
        self.peek() == Some(&Tok::LParen)
            && self.peek_at(1) == Some(&Tok::Ident("x".into()))
            && self.peek_at(2) == Some(&Tok::RParen)
    }

    // ---- types ----

    pub(crate) fn ty(&mut self) -> Result<Type, SyntaxError> {
        let left = self.ty_prod()?;
        match self.peek() {
            Some(Tok::Arrow) => {
                self.i += 1;
                Ok(Type::arrow(left, self.ty()?))
            }
            Some(Tok::Lolli) => {
                self.i += 1;
                Ok(Type::lollipop(left, self.ty()?))
            }
            _ => Ok(left),
        }
    }

    fn ty_prod(&mut self) -> Result<Type, SyntaxError> {
        let mut acc = self.ty_unary()?;
        loop {
            let ctor: fn(Type, Type) -> Type = match self.peek() {
                Some(Tok::Star) | Some(Tok::Times) => Type::product,
                Some(Tok::OTimes) => Type::tensor,
                Some(Tok::Amp) => Type::with,
                _ if self.at_ascii_tensor() => {
                    self.i += 2;
                    Type::tensor
                }
                _ => return Ok(acc),
            };
            self.i += 1;
            acc = ctor(acc, self.ty_unary()?);
        }
    }

    fn ty_unary(&mut self) -> Result<Type, SyntaxError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.i += 1;
                Ok(Type::bang(self.ty_unary()?))
            }
            Some(Tok::Ident(_)) => Ok(Type::Base(self.ident()?)),
            Some(Tok::TyVar(v)) => {
                let v = *v;
                self.i += 1;
                Ok(Type::Var(v))
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.unexpected("type")),
        }
    }

    // ---- terms ----

    pub(crate) fn term(&mut self) -> Result<Term, SyntaxError> {
        match self.peek() {
            Some(Tok::Lambda) | Some(Tok::Let) => self.binder(),
            _ => self.tensor_expr(),
        }
    }

    fn binder(&mut self) -> Result<Term, SyntaxError> {
        if self.eat(&Tok::Lambda) {
            let mut names = vec![self.ident()?];
            while let Some(Tok::Ident(_)) = self.peek() {
                names.push(self.ident()?);
            }
            self.expect(Tok::Dot)?;
            let body = self.term()?;
            return Ok(names.into_iter().rev().fold(body, |b, x| term::lam(x, b)));
        }
        self.expect(Tok::Let)?;
        let start = self.pos();
        if self.eat(&Tok::LAngle) {
            let (side, binder) = if self.eat(&Tok::Underscore) {
                self.expect(Tok::Comma)?;
                let y = self.ident()?;
                (Side::Second, y)
            } else {
                let x = self.ident()?;
                self.expect(Tok::Comma)?;
                self.expect(Tok::Underscore)?;
                (Side::First, x)
            };
            self.expect(Tok::RAngle)?;
            self.expect(Tok::Eq)?;
            let scrutinee = self.term()?;
            self.expect(Tok::In)?;
            let body = self.term()?;
            return Ok(term::let_with(side, binder, scrutinee, body));
        }
        let left = self.ident()?;
        if !(self.eat(&Tok::Star) || self.eat(&Tok::OTimes)) {
            return Err(self.unexpected("`*` in tensor pattern"));
        }
        let right = self.ident()?;
        if left == right {
            return Err(SyntaxError::Parse {
                pos: start,
                message: format!("pattern binds `{left}` twice"),
            });
        }
        self.expect(Tok::Eq)?;
        let scrutinee = self.term()?;
        self.expect(Tok::In)?;
        let body = self.term()?;
        Ok(term::let_tensor(left, right, scrutinee, body))
    }

    fn tensor_expr(&mut self) -> Result<Term, SyntaxError> {
        let mut acc = self.app_expr()?;
        while matches!(self.peek(), Some(Tok::Star) | Some(Tok::OTimes)) {
            self.i += 1;
            let rhs = match self.peek() {
                Some(Tok::Lambda) | Some(Tok::Let) => {
                    let b = self.binder()?;
                    return Ok(term::tensor(acc, b));
                }
                _ => self.app_expr()?,
            };
            acc = term::tensor(acc, rhs);
        }
        Ok(acc)
    }

    fn app_expr(&mut self) -> Result<Term, SyntaxError> {
        let mut acc = if let Some(Tok::Proj(side)) = self.peek() {
            let side = *side;
            self.i += 1;
            Term::Proj(side, Box::new(self.atom()?))
        } else {
            self.atom()?
        };
        loop {
            match self.peek() {
                Some(Tok::Ident(_)) | Some(Tok::LParen) | Some(Tok::LAngle) => {
                    acc = term::app(acc, self.atom()?);
                }
                Some(Tok::Lambda) | Some(Tok::Let) => {
                    return Ok(term::app(acc, self.binder()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn atom(&mut self) -> Result<Term, SyntaxError> {
        match self.peek() {
            Some(Tok::Ident(_)) => Ok(Term::Var(self.ident()?)),
            Some(Tok::LParen) => {
                self.i += 1;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::LAngle) => {
                self.i += 1;
                let a = self.term()?;
                self.expect(Tok::Comma)?;
                let b = self.term()?;
                self.expect(Tok::RAngle)?;
                Ok(term::pair(a, b))
            }
            _ => Err(self.unexpected("term")),
        }
    }

    // ---- judgements ----

    pub(crate) fn context(&mut self) -> Result<Vec<(Name, Type)>, SyntaxError> {
        let mut ctx = Vec::new();
        if matches!(self.peek(), Some(Tok::Turnstile)) {
            return Ok(ctx);
        }
        loop {
            let x = self.ident()?;
            self.expect(Tok::Colon)?;
            ctx.push((x, self.ty()?));
            if !self.eat(&Tok::Comma) {
                return Ok(ctx);
            }
        }
    }
}

pub fn parse_type(src: &str) -> Result<Type, SyntaxError> {
    let mut p = Parser::new(src)?;
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_term(src: &str) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// A typing judgement `x : T, ... |- t : U`; the context part and the
/// turnstile may be omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgement {
    pub context: Vec<(Name, Type)>,
    pub term: Term,
    pub ty: Type,
}

pub fn parse_judgement(src: &str) -> Result<Judgement, SyntaxError> {
    let mut p = Parser::new(src)?;
    let has_turnstile = p.toks.iter().any(|t| t.0 == Tok::Turnstile);
    let context = if has_turnstile {
        let c = p.context()?;
        p.expect(Tok::Turnstile)?;
        c
    } else {
        Vec::new()
    };
    let term = p.term()?;
    p.expect(Tok::Colon)?;
    let ty = p.ty()?;
    p.finish()?;
    Ok(Judgement { context, term, ty })
}

/// A pair of terms `t == u` is not part of the grammar; callers split
/// inputs themselves. This parses `ctx |- t` without a type.
pub fn parse_open_term(src: &str) -> Result<(Vec<(Name, Type)>, Term), SyntaxError> {
    let mut p = Parser::new(src)?;
    let has_turnstile = p.toks.iter().any(|t| t.0 == Tok::Turnstile);
    let context = if has_turnstile {
        let c = p.context()?;
        p.expect(Tok::Turnstile)?;
        c
    } else {
        Vec::new()
    };
    let term = p.term()?;
    p.finish()?;
    Ok((context, term))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::print::{term_to_string, type_to_string, Notation};
    use crate::syntax::term::*;

    #[test]
    fn application_is_left_associative() {
        assert_eq!(
            parse_term("f x y").unwrap(),
            app(app(var("f"), var("x")), var("y"))
        );
        assert_eq!(
            parse_term("\\x. x y").unwrap(),
            lam("x", app(var("x"), var("y")))
        );
        assert_eq!(parse_term("λx y. x").unwrap(), lam("x", lam("y", var("x"))));
    }

    #[test]
    fn linear_constructs() {
        let t = parse_term("\\x. let y * z = x in z * y").unwrap();
        assert_eq!(
            t,
            lam("x", let_tensor("y", "z", var("x"), tensor(var("z"), var("y"))))
        );
        assert_eq!(
            parse_term("let ⟨_,b⟩ = p in b").unwrap(),
            let_with(Side::Second, "b", var("p"), var("b"))
        );
        assert!(parse_term("let x * x = p in x").is_err());
    }

    #[test]
    fn types_and_ascii_tensor() {
        let t = parse_type("(A (x) B) -o B (x) A").unwrap();
        assert_eq!(
            t,
            Type::lollipop(
                Type::tensor(Type::base("A"), Type::base("B")),
                Type::tensor(Type::base("B"), Type::base("A"))
            )
        );
        assert_eq!(parse_type("(x)").unwrap(), Type::base("x"));
        assert_eq!(parse_type("'a -> β").unwrap(), Type::arrow(Type::Var(0), Type::Var(1)));
        assert_eq!(
            parse_type("!A ⊸ A & B").unwrap(),
            Type::lollipop(
                Type::bang(Type::base("A")),
                Type::with(Type::base("A"), Type::base("B"))
            )
        );
    }

    #[test]
    fn judgements() {
        let j = parse_judgement("f : b -> c, x : b |- f x : c").unwrap();
        assert_eq!(j.context.len(), 2);
        assert_eq!(j.term, app(var("f"), var("x")));
        let j = parse_judgement("\\x. x : b -> b").unwrap();
        assert!(j.context.is_empty());
        let j = parse_judgement("⊢ λx. x : b → b").unwrap();
        assert_eq!(j.ty, Type::arrow(Type::base("b"), Type::base("b")));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_term("f (x") {
            Err(SyntaxError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_term("\\. x").is_err());
        assert!(parse_term("x $").is_err());
    }

    #[test]
    fn printer_round_trips_samples() {
        for src in [
            "\\f. \\x. f (f x)",
            "<fst p, snd p>",
            "let a * b = x in b * a",
            "(\\x. x x) (\\x. x x)",
            "f (\\x. x) y",
            "fst p x",
            "a * b * c",
            "a * (b * c)",
        ] {
            let t = parse_term(src).unwrap();
            for n in [Notation::Ascii, Notation::Unicode] {
                assert_eq!(parse_term(&term_to_string(&t, n)).unwrap(), t, "{src}");
            }
        }
        for src in ["(b -> c) -> b", "A (x) (B (x) C)", "!(A & B) -o C", "b * c * d"] {
            let t = parse_type(src).unwrap();
            for n in [Notation::Ascii, Notation::Unicode] {
                assert_eq!(parse_type(&type_to_string(&t, n)).unwrap(), t, "{src}");
            }
        }
    }
}
