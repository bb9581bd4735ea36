//! Seeded generators of simply-typed terms, and random β/η expansions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::syntax::term::{self as tm, Term};
use crate::syntax::{Context, Side, Type};
use crate::typing::{Derivation, Rule};

pub const BASES: [&str; 2] = ["b", "c"];

enum Elim {
    Arg(Type),
    Proj(Side),
}

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A type with at most `depth` nested constructors.
    pub fn ty(&mut self, depth: usize) -> Type {
        let base = Type::base(*BASES.choose(&mut self.rng).expect("nonempty"));
        if depth == 0 {
            return base;
        }
        match self.rng.gen_range(0..4) {
            0 | 1 => base,
            2 => Type::arrow(self.ty(depth - 1), self.ty(depth - 1)),
            _ => Type::product(self.ty(depth - 1), self.ty(depth - 1)),
        }
    }

    /// A context `p0 : T0, …` that always binds both base types.
    pub fn context(&mut self, extra: usize, type_depth: usize) -> Context {
        let mut ctx: Context = BASES
            .iter()
            .map(|b| Type::base(*b))
            .chain((0..extra).map(|_| self.ty(type_depth)))
            .enumerate()
            .map(|(i, t)| (format!("p{i}"), t))
            .collect();
        ctx.shuffle(&mut self.rng);
        for (i, (x, _)) in ctx.iter_mut().enumerate() {
            *x = format!("p{i}");
        }
        ctx
    }

    /// A term of type `ty` in `ctx` with `depth()` at most `depth`, or
    /// `None` if none was found.
    pub fn term(&mut self, ctx: &Context, ty: &Type, depth: usize) -> Option<Term> {
        if depth == 0 {
            return None;
        }
        let mut moves = vec![0, 1, 1, 2, 3];
        moves.shuffle(&mut self.rng);
        for m in moves {
            let got = match m {
                0 => self.intro(ctx, ty, depth),
                1 => self.elim(ctx, ty, depth),
                2 if depth >= 3 => self.redex(ctx, ty, depth),
                3 if depth >= 3 => self.proj_redex(ctx, ty, depth),
                _ => None,
            };
            if got.is_some() {
                return got;
            }
        }
        self.elim(ctx, ty, depth).or_else(|| self.intro(ctx, ty, depth))
    }

    fn intro(&mut self, ctx: &Context, ty: &Type, depth: usize) -> Option<Term> {
        if depth < 2 {
            return None;
        }
        match ty {
            Type::Arrow(a, b) => {
                let x = fresh(ctx);
                let mut inner = ctx.clone();
                inner.push((x.clone(), (**a).clone()));
                Some(tm::lam(x, self.term(&inner, b, depth - 1)?))
            }
            Type::Product(a, b) => Some(tm::pair(self.term(ctx, a, depth - 1)?, self.term(ctx, b, depth - 1)?)),
            _ => None,
        }
    }

    fn elim(&mut self, ctx: &Context, ty: &Type, depth: usize) -> Option<Term> {
        let mut heads: Vec<(String, Vec<Elim>)> = Vec::new();
        for (x, t) in ctx {
            for path in spines(t, ty, depth - 1) {
                heads.push((x.clone(), path));
            }
        }
        if heads.is_empty() {
            return None;
        }
        let k = self.rng.gen_range(0..heads.len());
        let (x, path) = heads.swap_remove(k);
        let mut t = tm::var(x);
        let mut room = depth;
        for e in path {
            room -= 1;
            t = match e {
                Elim::Proj(Side::First) => tm::fst(t),
                Elim::Proj(Side::Second) => tm::snd(t),
                Elim::Arg(a) => tm::app(t, self.term(ctx, &a, room)?),
            };
        }
        Some(t)
    }

    fn redex(&mut self, ctx: &Context, ty: &Type, depth: usize) -> Option<Term> {
        let a = self.ty(1);
        let x = fresh(ctx);
        let mut inner = ctx.clone();
        inner.push((x.clone(), a.clone()));
        let body = self.term(&inner, ty, depth - 2)?;
        let arg = self.term(ctx, &a, depth - 1)?;
        Some(tm::app(tm::lam(x, body), arg))
    }

    fn proj_redex(&mut self, ctx: &Context, ty: &Type, depth: usize) -> Option<Term> {
        let other = self.ty(1);
        let t = self.term(ctx, ty, depth - 2)?;
        let u = self.term(ctx, &other, depth - 2)?;
        Some(if self.rng.gen_bool(0.5) {
            tm::fst(tm::pair(t, u))
        } else {
            tm::snd(tm::pair(u, t))
        })
    }

    /// A closed-over-`ctx` typed term of depth at most `depth`, retrying
    /// types until one is inhabited.
    pub fn typed_term(&mut self, ctx: &Context, depth: usize) -> (Term, Type) {
        loop {
            let ty = self.ty(2);
            if let Some(t) = self.term(ctx, &ty, depth) {
                return (t, ty);
            }
        }
    }

    /// Rebuild the term of `d`, replacing subterms by β- or η-expansions
    /// with probability `p` at each node. The result is convertible to the
    /// original.
    pub fn expand(&mut self, d: &Derivation, p: f64) -> Term {
        let kid = |g: &mut Gen, k: usize| g.expand(&d.premises[k], p);
        let t = match d.rule {
            Rule::Var => d.term.clone(),
            Rule::App => {
                let (f, a) = (kid(self, 0), kid(self, 1));
                tm::app(f, a)
            }
            Rule::Pair => {
                let (l, r) = (kid(self, 0), kid(self, 1));
                tm::pair(l, r)
            }
            Rule::Proj1 => tm::fst(kid(self, 0)),
            Rule::Proj2 => tm::snd(kid(self, 0)),
            Rule::Abs => {
                let x = d.premises[0].context.last().expect("binder").0.clone();
                tm::lam(x, kid(self, 0))
            }
            _ => d.term.clone(),
        };
        if !self.rng.gen_bool(p) {
            return t;
        }
        let z = fresh_for(&d.context, &t);
        let (w, _) = self.typed_term(&d.context, 2);
        match (self.rng.gen_range(0..5), &d.ty) {
            (0, _) => tm::app(tm::lam(z, t), w),
            (1, _) => tm::app(tm::lam(z.clone(), tm::var(z)), t),
            (2, _) => tm::fst(tm::pair(t, w)),
            (3, Type::Arrow(..)) => tm::lam(z.clone(), tm::app(t, tm::var(z))),
            (3, Type::Product(..)) => tm::pair(tm::fst(t.clone()), tm::snd(t)),
            _ => tm::snd(tm::pair(w, t)),
        }
    }
}

fn fresh(ctx: &Context) -> String {
    format!("v{}", ctx.len())
}

/// A name free in neither `ctx` nor `t`.
fn fresh_for(ctx: &Context, t: &Term) -> String {
    let used = t.all_names();
    (0..)
        .map(|k| format!("z{k}"))
        .find(|z| !used.contains(z) && !ctx.iter().any(|(x, _)| x == z))
        .expect("infinite supply")
}

/// Elimination paths from `from` to `to` of length at most `room`.
fn spines(from: &Type, to: &Type, room: usize) -> Vec<Vec<Elim>> {
    let mut out = Vec::new();
    if from == to {
        out.push(Vec::new());
    }
    if room == 0 {
        return out;
    }
    let extend = |head: fn(&Type) -> Elim, a: &Type, next: &Type, out: &mut Vec<Vec<Elim>>| {
        for mut rest in spines(next, to, room - 1) {
            rest.insert(0, head(a));
            out.push(rest);
        }
    };
    match from {
        Type::Arrow(a, b) => extend(|a| Elim::Arg(a.clone()), a, b, &mut out),
        Type::Product(a, b) => {
            extend(|_| Elim::Proj(Side::First), a, a, &mut out);
            extend(|_| Elim::Proj(Side::Second), b, b, &mut out);
        }
        _ => {}
    }
    out
}
