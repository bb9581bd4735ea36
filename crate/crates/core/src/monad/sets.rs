//! Monads and comonads on finite sets, checked pointwise on enumerated
//! elements.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::MonadError;
use crate::cat::{Arrow, FinCategory, Violation};
use crate::par;

/// Largest space enumerated by any check.
pub const DEFAULT_CAP: usize = 5_000_000;

/// An element of some `T(X)`. `Tag(s, v)` is a value paired with an
/// index: the state in `A × ξ`, or the environment in `S × A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Val {
    Atom(usize),
    Exc(usize),
    Ok(Box<Val>),
    Tag(usize, Box<Val>),
    Fun(Vec<Val>),
    List(Vec<Val>),
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, vs: &[Val]| -> fmt::Result {
            for (i, v) in vs.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        };
        match self {
            Val::Atom(i) => write!(f, "x{i}"),
            Val::Exc(e) => write!(f, "e{e}"),
            Val::Ok(v) => write!(f, "in1({v})"),
            Val::Tag(s, v) => write!(f, "({v}, s{s})"),
            Val::Fun(vs) => {
                f.write_str("{")?;
                for (s, v) in vs.iter().enumerate() {
                    if s > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "s{s}↦{v}")?;
                }
                f.write_str("}")
            }
            Val::List(vs) => {
                f.write_str("[")?;
                join(f, vs)?;
                f.write_str("]")
            }
        }
    }
}

fn tag(s: usize, v: Val) -> Val {
    Val::Tag(s, Box::new(v))
}

/// A finite set of [`Val`]s with indexed enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    /// `{x0, …, x(n-1)}`.
    Atoms(usize),
    /// `A + E` with `|E|` exceptions.
    Exc(Box<Space>, usize),
    /// `ξ ⇒ (A × ξ)` with `|ξ|` states.
    State(usize, Box<Space>),
    /// Lists over `A` of length at most the bound.
    Lists(usize, Box<Space>),
    /// `S × A` with `|S|` environments.
    Env(usize, Box<Space>),
}

impl Space {
    /// Number of elements, or `None` past `usize`.
    pub fn size(&self) -> Option<usize> {
        match self {
            Space::Atoms(n) => Some(*n),
            Space::Exc(a, e) => a.size()?.checked_add(*e),
            Space::State(k, a) => {
                let entry = a.size()?.checked_mul(*k)?;
                entry.checked_pow(u32::try_from(*k).ok()?)
            }
            Space::Lists(bound, a) => {
                let n = a.size()?;
                (0..=*bound).try_fold(0usize, |acc, l| acc.checked_add(n.checked_pow(l as u32)?))
            }
            Space::Env(k, a) => a.size()?.checked_mul(*k),
        }
    }

    fn capped(&self, cap: usize) -> Result<usize, MonadError> {
        self.size().filter(|&n| n <= cap).ok_or(MonadError::SizeCap { cap })
    }

    /// Element `i` in enumeration order; `i < size()`.
    pub fn nth(&self, i: usize) -> Val {
        match self {
            Space::Atoms(_) => Val::Atom(i),
            Space::Exc(a, _) => {
                let n = a.size().expect("sized");
                if i < n {
                    Val::Ok(Box::new(a.nth(i)))
                } else {
                    Val::Exc(i - n)
                }
            }
            Space::State(k, a) => {
                let entry = a.size().expect("sized") * k;
                let mut rest = i;
                Val::Fun(
                    (0..*k)
                        .map(|_| {
                            let d = rest % entry;
                            rest /= entry;
                            tag(d % k, a.nth(d / k))
                        })
                        .collect(),
                )
            }
            Space::Lists(bound, a) => {
                let n = a.size().expect("sized");
                let mut i = i;
                for l in 0..=*bound {
                    let count = n.pow(l as u32);
                    if i < count {
                        let mut digits = vec![0; l];
                        for d in digits.iter_mut().rev() {
                            *d = i % n;
                            i /= n;
                        }
                        return Val::List(digits.into_iter().map(|d| a.nth(d)).collect());
                    }
                    i -= count;
                }
                unreachable!("index past the end of a list space")
            }
            Space::Env(_, a) => {
                let n = a.size().expect("sized");
                tag(i / n, a.nth(i % n))
            }
        }
    }

    /// Every element, in order.
    pub fn elements(&self, cap: usize) -> Result<Vec<Val>, MonadError> {
        Ok(par::map_range(self.capped(cap)?, |i| self.nth(i)))
    }
}

/// A map of atoms, `[f(x0), f(x1), …]`.
pub type AtomMap = Vec<usize>;

/// All maps `{x0..x(n-1)} → {x0..x(m-1)}`.
pub fn atom_maps(n: usize, m: usize) -> Vec<AtomMap> {
    let count = m.pow(n as u32);
    (0..count)
        .map(|mut i| {
            (0..n)
                .map(|_| {
                    let d = i % m;
                    i /= m;
                    d
                })
                .collect()
        })
        .collect()
}

fn apply_map(f: &[usize], v: &Val) -> Val {
    match v {
        Val::Atom(i) => Val::Atom(f[*i]),
        other => unreachable!("atom map applied to {other}"),
    }
}

pub type ValFn<'a> = dyn Fn(&Val) -> Val + Sync + 'a;

pub trait SetMonad: Sync {
    fn name(&self) -> String;
    /// The space `T(a)`.
    fn over(&self, a: Space) -> Space;
    fn fmap(&self, f: &ValFn<'_>, t: &Val) -> Val;
    fn unit(&self, a: &Val) -> Val;
    fn join(&self, tt: &Val) -> Val;
}

pub trait SetComonad: Sync {
    fn name(&self) -> String;
    fn over(&self, a: Space) -> Space;
    fn fmap(&self, f: &ValFn<'_>, w: &Val) -> Val;
    fn counit(&self, w: &Val) -> Val;
    fn cojoin(&self, w: &Val) -> Val;
}

pub struct IdentityMonad;

impl SetMonad for IdentityMonad {
    fn name(&self) -> String {
        "identity".into()
    }
    fn over(&self, a: Space) -> Space {
        a
    }
    fn fmap(&self, f: &ValFn<'_>, t: &Val) -> Val {
        f(t)
    }
    fn unit(&self, a: &Val) -> Val {
        a.clone()
    }
    fn join(&self, tt: &Val) -> Val {
        tt.clone()
    }
}

/// `A ↦ A + E`. With `corrupt`, `μ` sends `in1(in1 a)` to `e0`.
pub struct Exceptions {
    pub errors: usize,
    pub corrupt: bool,
}

impl Exceptions {
    pub fn new(errors: usize) -> Exceptions {
        Exceptions { errors, corrupt: false }
    }
}

impl SetMonad for Exceptions {
    fn name(&self) -> String {
        format!("exceptions(E={})", self.errors)
    }
    fn over(&self, a: Space) -> Space {
        Space::Exc(Box::new(a), self.errors)
    }
    fn fmap(&self, f: &ValFn<'_>, t: &Val) -> Val {
        match t {
            Val::Ok(v) => Val::Ok(Box::new(f(v))),
            e => e.clone(),
        }
    }
    fn unit(&self, a: &Val) -> Val {
        Val::Ok(Box::new(a.clone()))
    }
    fn join(&self, tt: &Val) -> Val {
        match tt {
            Val::Ok(t) if self.corrupt && matches!(**t, Val::Ok(_)) => Val::Exc(0),
            Val::Ok(t) => (**t).clone(),
            e => e.clone(),
        }
    }
}

/// `A ↦ ξ ⇒ (A × ξ)`.
pub struct State {
    pub states: usize,
}

impl SetMonad for State {
    fn name(&self) -> String {
        format!("state(xi={})", self.states)
    }
    fn over(&self, a: Space) -> Space {
        Space::State(self.states, Box::new(a))
    }
    fn fmap(&self, f: &ValFn<'_>, t: &Val) -> Val {
        let Val::Fun(entries) = t else { unreachable!("state value {t}") };
        Val::Fun(
            entries
                .iter()
                .map(|e| match e {
                    Val::Tag(s, v) => tag(*s, f(v)),
                    other => unreachable!("state entry {other}"),
                })
                .collect(),
        )
    }
    fn unit(&self, a: &Val) -> Val {
        Val::Fun((0..self.states).map(|s| tag(s, a.clone())).collect())
    }
    fn join(&self, tt: &Val) -> Val {
        let Val::Fun(outer) = tt else { unreachable!("state value {tt}") };
        Val::Fun(
            outer
                .iter()
                .map(|e| match e {
                    Val::Tag(s1, t) => match &**t {
                        Val::Fun(inner) => inner[*s1].clone(),
                        other => unreachable!("state value {other}"),
                    },
                    other => unreachable!("state entry {other}"),
                })
                .collect(),
        )
    }
}

/// Lists with flattening. Elements of `T(A)` are enumerated up to
/// `bound` items at every nesting level; `μ` itself is unbounded.
pub struct ListMonad {
    pub bound: usize,
}

impl SetMonad for ListMonad {
    fn name(&self) -> String {
        format!("list(len<={})", self.bound)
    }
    fn over(&self, a: Space) -> Space {
        Space::Lists(self.bound, Box::new(a))
    }
    fn fmap(&self, f: &ValFn<'_>, t: &Val) -> Val {
        let Val::List(vs) = t else { unreachable!("list value {t}") };
        Val::List(vs.iter().map(f).collect())
    }
    fn unit(&self, a: &Val) -> Val {
        Val::List(vec![a.clone()])
    }
    fn join(&self, tt: &Val) -> Val {
        Val::List(flatten(tt))
    }
}

/// `flatten : List(List X) → List X`.
pub fn flatten(tt: &Val) -> Vec<Val> {
    let Val::List(outer) = tt else { unreachable!("list value {tt}") };
    outer
        .iter()
        .flat_map(|t| match t {
            Val::List(inner) => inner.clone(),
            other => unreachable!("list value {other}"),
        })
        .collect()
}

/// `Q := S × _` with `ε(s, a) = a` and `δ(s, a) = (s, (s, a))`.
pub struct ProductComonad {
    pub envs: usize,
}

impl SetComonad for ProductComonad {
    fn name(&self) -> String {
        format!("product(S={})", self.envs)
    }
    fn over(&self, a: Space) -> Space {
        Space::Env(self.envs, Box::new(a))
    }
    fn fmap(&self, f: &ValFn<'_>, w: &Val) -> Val {
        match w {
            Val::Tag(s, v) => tag(*s, f(v)),
            other => unreachable!("environment value {other}"),
        }
    }
    fn counit(&self, w: &Val) -> Val {
        match w {
            Val::Tag(_, v) => (**v).clone(),
            other => unreachable!("environment value {other}"),
        }
    }
    fn cojoin(&self, w: &Val) -> Val {
        match w {
            Val::Tag(s, _) => tag(*s, w.clone()),
            other => unreachable!("environment value {other}"),
        }
    }
}

/// How much a check enumerated.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Checked {
    /// Element instances compared, over all diagrams.
    pub instances: usize,
}

fn fail(law: &'static str, at: Vec<String>) -> MonadError {
    MonadError::Law(Violation { law, at })
}

fn show_map(f: &[usize]) -> String {
    let parts: Vec<String> = f.iter().enumerate().map(|(i, y)| format!("x{i}↦x{y}")).collect();
    format!("f = {{{}}}", parts.join(", "))
}

/// Check `pred` on every element of `space`; the first failure is reported
/// with `law` and the element.
fn all_of(
    space: &Space,
    cap: usize,
    law: &'static str,
    extra: &[String],
    pred: impl Fn(&Val) -> bool + Sync + Send,
    seen: &mut Checked,
) -> Result<(), MonadError> {
    let n = space.capped(cap)?;
    seen.instances += n;
    match par::position_range(n, |i| !pred(&space.nth(i))) {
        None => Ok(()),
        Some(i) => {
            let mut at = extra.to_vec();
            at.push(space.nth(i).to_string());
            Err(fail(law, at))
        }
    }
}

/// Functor laws, naturality of `η` and `μ`, then the unit and
/// associativity diagrams, on every set of size at most `max_set`.
pub fn check_set_monad(m: &dyn SetMonad, max_set: usize, cap: usize) -> Result<Checked, MonadError> {
    let mut seen = Checked::default();
    let t = |a: Space| m.over(a);
    for n in 0..=max_set {
        let x = Space::Atoms(n);
        all_of(&t(x.clone()), cap, "functor identity", &[], |v| m.fmap(&|a| a.clone(), v) == *v, &mut seen)?;
        for k in 0..=max_set {
            for l in 0..=max_set {
                for f in atom_maps(n, k) {
                    for g in atom_maps(k, l) {
                        let gf: AtomMap = f.iter().map(|&y| g[y]).collect();
                        let at = [show_map(&f), show_map(&g)];
                        all_of(
                            &t(x.clone()),
                            cap,
                            "functor composition",
                            &at,
                            |v| m.fmap(&|a| apply_map(&gf, a), v) == m.fmap(&|a| apply_map(&g, a), &m.fmap(&|a| apply_map(&f, a), v)),
                            &mut seen,
                        )?;
                    }
                }
            }
        }
    }
    for n in 0..=max_set {
        let x = Space::Atoms(n);
        for k in 0..=max_set {
            for f in atom_maps(n, k) {
                let at = [show_map(&f)];
                let fa = |a: &Val| apply_map(&f, a);
                all_of(&x, cap, "unit naturality", &at, |a| m.fmap(&fa, &m.unit(a)) == m.unit(&fa(a)), &mut seen)?;
                let tf = |v: &Val| m.fmap(&fa, v);
                all_of(
                    &t(t(x.clone())),
                    cap,
                    "multiplication naturality",
                    &at,
                    |tt| m.join(&m.fmap(&tf, tt)) == tf(&m.join(tt)),
                    &mut seen,
                )?;
            }
        }
    }
    for n in 0..=max_set {
        let tx = t(Space::Atoms(n));
        all_of(&tx, cap, "left unit", &[], |v| m.join(&m.unit(v)) == *v, &mut seen)?;
        all_of(&tx, cap, "right unit", &[], |v| m.join(&m.fmap(&|a| m.unit(a), v)) == *v, &mut seen)?;
        all_of(
            &t(t(tx)),
            cap,
            "associativity",
            &[],
            |v| m.join(&m.join(v)) == m.join(&m.fmap(&|tt| m.join(tt), v)),
            &mut seen,
        )?;
    }
    Ok(seen)
}

/// The dual diagrams for a comonad.
pub fn check_set_comonad(q: &dyn SetComonad, max_set: usize, cap: usize) -> Result<Checked, MonadError> {
    let mut seen = Checked::default();
    for n in 0..=max_set {
        let x = Space::Atoms(n);
        let qx = q.over(x.clone());
        all_of(&qx, cap, "functor identity", &[], |v| q.fmap(&|a| a.clone(), v) == *v, &mut seen)?;
        for k in 0..=max_set {
            for f in atom_maps(n, k) {
                let at = [show_map(&f)];
                let fa = |a: &Val| apply_map(&f, a);
                let qf = |w: &Val| q.fmap(&fa, w);
                all_of(&qx, cap, "counit naturality", &at, |w| fa(&q.counit(w)) == q.counit(&qf(w)), &mut seen)?;
                all_of(
                    &qx,
                    cap,
                    "comultiplication naturality",
                    &at,
                    |w| q.fmap(&qf, &q.cojoin(w)) == q.cojoin(&qf(w)),
                    &mut seen,
                )?;
                for l in 0..=max_set {
                    for g in atom_maps(k, l) {
                        let gf: AtomMap = f.iter().map(|&y| g[y]).collect();
                        let at = [show_map(&f), show_map(&g)];
                        all_of(
                            &qx,
                            cap,
                            "functor composition",
                            &at,
                            |w| q.fmap(&|a| apply_map(&gf, a), w) == q.fmap(&|a| apply_map(&g, a), &qf(w)),
                            &mut seen,
                        )?;
                    }
                }
            }
        }
        all_of(&qx, cap, "left counit", &[], |w| q.counit(&q.cojoin(w)) == *w, &mut seen)?;
        all_of(&qx, cap, "right counit", &[], |w| q.fmap(&|v| q.counit(v), &q.cojoin(w)) == *w, &mut seen)?;
        all_of(
            &qx,
            cap,
            "coassociativity",
            &[],
            |w| q.cojoin(&q.cojoin(w)) == q.fmap(&|v| q.cojoin(v), &q.cojoin(w)),
            &mut seen,
        )?;
    }
    Ok(seen)
}

/// Name of the set `{0, …, n-1}`.
pub fn set_name(n: usize) -> String {
    let parts: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Every function `{x0..x(n-1)} → space`, as value lists.
fn functions_into(n: usize, space: &Space, cap: usize) -> Result<Vec<Vec<Val>>, MonadError> {
    let m = space.capped(cap)?;
    let count = u32::try_from(n)
        .ok()
        .and_then(|e| m.checked_pow(e))
        .filter(|&c| c <= cap)
        .ok_or(MonadError::SizeCap { cap })?;
    Ok(par::map_range(count, |mut i| {
        (0..n)
            .map(|_| {
                let d = i % m;
                i /= m;
                space.nth(d)
            })
            .collect()
    }))
}

/// An assembled category with the underlying map of each arrow.
pub struct Built {
    pub cat: FinCategory,
    pub maps: Vec<Vec<Val>>,
    index: HashMap<(usize, usize, Vec<Val>), usize>,
}

impl Built {
    /// The arrow `a → b` with underlying map `map`.
    pub fn arrow(&self, a: usize, b: usize, map: &[Val]) -> Option<usize> {
        self.index.get(&(a, b, map.to_vec())).copied()
    }
}

/// A category built from explicit arrow data; `key` identifies arrows by
/// endpoints and underlying map.
struct Assembly {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    maps: Vec<Vec<Val>>,
    index: HashMap<(usize, usize, Vec<Val>), usize>,
}

impl Assembly {
    fn new(sizes: &[usize]) -> Assembly {
        Assembly {
            objects: sizes.iter().map(|&n| set_name(n)).collect(),
            arrows: Vec::new(),
            maps: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn add(&mut self, a: usize, b: usize, map: Vec<Val>) {
        let k = self.arrows.len();
        let id = format!("{}->{}:{}", self.objects[a], self.objects[b], self.index.len());
        self.arrows.push(Arrow { id, dom: a, cod: b });
        self.index.insert((a, b, map.clone()), k);
        self.maps.push(map);
    }

    fn finish(
        self,
        identity: impl Fn(usize, usize) -> Vec<Val>,
        compose: impl Fn([usize; 3], &[Val], &[Val]) -> Vec<Val> + Sync,
        sizes: &[usize],
    ) -> Result<Built, MonadError> {
        let identity: Vec<usize> = (0..self.objects.len())
            .map(|a| self.index.get(&(a, a, identity(a, sizes[a]))).copied())
            .collect::<Option<_>>()
            .ok_or_else(|| MonadError::Malformed("identity is not an arrow".into()))?;
        let pairs: Vec<(usize, usize)> = (0..self.arrows.len())
            .flat_map(|g| {
                let arrows = &self.arrows;
                (0..arrows.len()).filter(move |&f| arrows[f].cod == arrows[g].dom).map(move |f| (g, f))
            })
            .collect();
        let composites: Vec<Option<(usize, usize, usize)>> = par::map(&pairs, |&(g, f)| {
            let (a, b, c) = (self.arrows[f].dom, self.arrows[f].cod, self.arrows[g].cod);
            let h = compose([a, b, c], &self.maps[g], &self.maps[f]);
            let key = (a, c, h);
            self.index.get(&key).map(|&gf| (g, f, gf))
        });
        let composites: Vec<(usize, usize, usize)> = composites
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| MonadError::Malformed("a composite leaves the declared arrows".into()))?;
        let cat = FinCategory::new(self.objects, self.arrows, identity, composites)
            .map_err(|e| MonadError::Malformed(e.to_string()))?;
        Ok(Built {
            cat,
            maps: self.maps,
            index: self.index,
        })
    }
}

/// The Kleisli category on the given set sizes: arrows `A → B` are maps
/// `A → TB`, identities are `η`, and `g • f = μ ∘ Tg ∘ f`.
pub fn kleisli_sets(m: &dyn SetMonad, sizes: &[usize], cap: usize) -> Result<Built, MonadError> {
    let mut asm = Assembly::new(sizes);
    for (a, &na) in sizes.iter().enumerate() {
        for (b, &nb) in sizes.iter().enumerate() {
            for map in functions_into(na, &m.over(Space::Atoms(nb)), cap)? {
                asm.add(a, b, map);
            }
        }
    }
    asm.finish(
        |_, n| (0..n).map(|i| m.unit(&Val::Atom(i))).collect(),
        |_, g, f| f.iter().map(|v| m.join(&m.fmap(&|x| atom_at(g, x), v))).collect(),
        sizes,
    )
}

/// The co-Kleisli category on the given set sizes: arrows `A → B` are maps
/// `QA → B`, identities are `ε`, and `g • f = g ∘ Qf ∘ δ`.
pub fn cokleisli_sets(q: &dyn SetComonad, sizes: &[usize], cap: usize) -> Result<Built, MonadError> {
    let mut asm = Assembly::new(sizes);
    let domains: Vec<Vec<Val>> = sizes
        .iter()
        .map(|&n| q.over(Space::Atoms(n)).elements(cap))
        .collect::<Result<_, _>>()?;
    for (a, _) in sizes.iter().enumerate() {
        for (b, &nb) in sizes.iter().enumerate() {
            for map in functions_into(domains[a].len(), &Space::Atoms(nb), cap)? {
                asm.add(a, b, map);
            }
        }
    }
    let position: Vec<HashMap<Val, usize>> = domains
        .iter()
        .map(|d| d.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect())
        .collect();
    asm.finish(
        |a, _| domains[a].iter().map(|w| q.counit(w)).collect(),
        |[a, b, _], g, f| {
            domains[a]
                .iter()
                .map(|w| {
                    let qf = q.fmap(&|x| f[position[a][x]].clone(), &q.cojoin(w));
                    g[position[b][&qf]].clone()
                })
                .collect()
        },
        sizes,
    )
}

fn atom_at(table: &[Val], x: &Val) -> Val {
    match x {
        Val::Atom(i) => table[*i].clone(),
        other => unreachable!("Kleisli arrow applied to {other}"),
    }
}

/// The Kleisli adjunction `F ⊣ G` on sets of size at most `max_set`,
/// checked against the explicit Kleisli table, and the monad it induces
/// compared with `m` component by component.
///
/// `F` is `f ↦ η ∘ f`, `G` is `k ↦ μ ∘ Tk` and `θ : C(A, TB) → C_T(A, B)`
/// is the identity on underlying maps.
pub fn kleisli_roundtrip_sets(m: &dyn SetMonad, max_set: usize, cap: usize) -> Result<Checked, MonadError> {
    let sizes: Vec<usize> = (0..=max_set).collect();
    let kl = kleisli_sets(m, &sizes, cap)?;
    crate::cat::validate_category(&kl.cat).map_err(MonadError::Law)?;
    let c = &kl.cat;
    let mut seen = Checked::default();
    let left = |a: usize, b: usize, f: &[usize]| {
        let map: Vec<Val> = f.iter().map(|&y| m.unit(&Val::Atom(y))).collect();
        kl.arrow(a, b, &map).expect("F f is a Kleisli arrow")
    };
    let right = |k: usize, v: &Val| m.join(&m.fmap(&|x| atom_at(&kl.maps[k], x), v));
    let mismatch = |law: &'static str, at: Vec<String>| Err(fail(law, at));
    for a in 0..sizes.len() {
        for b in 0..sizes.len() {
            for &x in c.hom(a, b) {
                for a2 in 0..sizes.len() {
                    for g in atom_maps(a2, a) {
                        seen.instances += 1;
                        let xg: Vec<Val> = g.iter().map(|&i| kl.maps[x][i].clone()).collect();
                        if kl.arrow(a2, b, &xg) != Some(c.comp(x, left(a2, a, &g))) {
                            return mismatch("theta naturality", vec![c.arrow_id(x).into(), show_map(&g)]);
                        }
                    }
                }
                for h in c.out_of(b) {
                    seen.instances += 1;
                    let gx: Vec<Val> = kl.maps[x].iter().map(|v| right(h, v)).collect();
                    if kl.arrow(a, c.cod(h), &gx) != Some(c.comp(h, x)) {
                        return mismatch("theta naturality", vec![c.arrow_id(x).into(), c.arrow_id(h).into()]);
                    }
                }
            }
        }
    }
    for (a, &n) in sizes.iter().enumerate() {
        let unit: Vec<Val> = (0..n).map(|i| m.unit(&Val::Atom(i))).collect();
        seen.instances += 1;
        if kl.maps[c.id(a)] != unit {
            return mismatch("unit", vec![set_name(n)]);
        }
        let ta = m.over(Space::Atoms(n));
        for k in 0..sizes.len() {
            for f in atom_maps(n, k) {
                let gf = left(a, k, &f);
                all_of(
                    &ta,
                    cap,
                    "functor on arrows",
                    &[show_map(&f)],
                    |v| right(gf, v) == m.fmap(&|x| apply_map(&f, x), v),
                    &mut seen,
                )?;
            }
        }
        // ε_{FA} has the identity of TA as underlying map
        all_of(
            &m.over(ta),
            cap,
            "multiplication",
            &[set_name(n)],
            |tt| m.join(&m.fmap(&|v| v.clone(), tt)) == m.join(tt),
            &mut seen,
        )?;
    }
    Ok(seen)
}

/// Binary products and the terminal object in the co-Kleisli category of
/// `q`, on sets of size at most `max_set`. The claimed product of `A, B`
/// is `A × B` with legs `(π1 ∘ ε)` and `(π2 ∘ ε)`; every pair of arrows
/// out of `X` must have exactly one mediator, equal to `⟨f, g⟩`. With
/// `corrupt`, the claimed pairing is shifted on its second component.
pub fn cokleisli_products_sets(
    q: &dyn SetComonad,
    max_set: usize,
    corrupt: bool,
    cap: usize,
) -> Result<Checked, MonadError> {
    let mut seen = Checked::default();
    let elements = |n: usize| q.over(Space::Atoms(n)).elements(cap);
    let index_of = |els: &[Val]| -> HashMap<Val, usize> { els.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect() };
    let atom = |v: &Val| match v {
        Val::Atom(i) => *i,
        other => unreachable!("atom expected, got {other}"),
    };
    for nx in 0..=max_set {
        let qx = elements(nx)?;
        seen.instances += 1;
        if functions_into(qx.len(), &Space::Atoms(1), cap)?.len() != 1 {
            return Err(fail("terminal", vec![set_name(nx)]));
        }
        for na in 0..=max_set {
            for nb in 0..=max_set {
                let np = na * nb;
                let qp = elements(np)?;
                let at_p = index_of(&qp);
                let leg = |w: &Val, first: bool| {
                    let i = atom(&q.counit(w));
                    if first {
                        i / nb
                    } else {
                        i % nb
                    }
                };
                let p1: Vec<usize> = qp.iter().map(|w| leg(w, true)).collect();
                let p2: Vec<usize> = qp.iter().map(|w| leg(w, false)).collect();
                // k • h = k ∘ Qh ∘ δ
                let after = |k: &[usize], h: &[Val]| -> Vec<usize> {
                    let at_x = index_of(&qx);
                    qx.iter()
                        .map(|w| k[at_p[&q.fmap(&|v| h[at_x[v]].clone(), &q.cojoin(w))]])
                        .collect()
                };
                let mut mediators: HashMap<(Vec<usize>, Vec<usize>), Vec<usize>> = HashMap::new();
                let hs = functions_into(qx.len(), &Space::Atoms(np), cap)?;
                for (i, h) in hs.iter().enumerate() {
                    seen.instances += 1;
                    mediators.entry((after(&p1, h), after(&p2, h))).or_default().push(i);
                }
                for f in atom_maps(qx.len(), na) {
                    for g in atom_maps(qx.len(), nb) {
                        seen.instances += 1;
                        let at = || vec![set_name(na), set_name(nb), format!("{f:?}"), format!("{g:?}")];
                        let found = mediators.get(&(f.clone(), g.clone())).map_or(&[][..], |v| &v[..]);
                        if found.len() != 1 {
                            return Err(fail("product mediator", at()));
                        }
                        let pairing: Vec<Val> = f
                            .iter()
                            .zip(&g)
                            .map(|(&x, &y)| Val::Atom(x * nb + if corrupt { (y + 1) % nb } else { y }))
                            .collect();
                        if hs[found[0]] != pairing {
                            return Err(fail("product pairing", at()));
                        }
                    }
                }
            }
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list(vs: Vec<Val>) -> Val {
        Val::List(vs)
    }

    #[test]
    fn flatten_concatenates() {
        let x = |i| Val::Atom(i);
        let tt = list(vec![list(vec![x(1)]), list(vec![x(2), x(3)])]);
        assert_eq!(ListMonad { bound: 2 }.join(&tt), list(vec![x(1), x(2), x(3)]));
    }

    #[test]
    fn state_unit_on_singletons() {
        let st = State { states: 1 };
        assert_eq!(st.unit(&Val::Atom(0)), Val::Fun(vec![tag(0, Val::Atom(0))]));
        assert_eq!(st.over(Space::Atoms(1)).size(), Some(1));
    }

    #[test]
    fn product_counit_is_second_projection() {
        let q = ProductComonad { envs: 2 };
        let els = q.over(Space::Atoms(3)).elements(DEFAULT_CAP).unwrap();
        let got: Vec<Val> = els.iter().map(|w| q.counit(w)).collect();
        let want: Vec<Val> = (0..6).map(|i| Val::Atom(i % 3)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn space_sizes_match_enumeration() {
        let spaces = [
            Space::Exc(Box::new(Space::Atoms(2)), 1),
            Space::State(2, Box::new(Space::Atoms(2))),
            Space::Lists(2, Box::new(Space::Atoms(2))),
            Space::Env(2, Box::new(Space::Atoms(3))),
        ];
        for s in spaces {
            let els = s.elements(DEFAULT_CAP).unwrap();
            let mut sorted = els.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), els.len(), "{s:?}");
        }
        assert_eq!(Space::State(2, Box::new(Space::Atoms(2))).size(), Some(16));
        assert_eq!(Space::Lists(2, Box::new(Space::Atoms(2))).size(), Some(7));
    }

    #[test]
    fn exceptions_pass_and_corruption_is_caught() {
        assert!(check_set_monad(&Exceptions::new(1), 3, DEFAULT_CAP).is_ok());
        let bad = Exceptions { errors: 1, corrupt: true };
        let Err(MonadError::Law(v)) = check_set_monad(&bad, 3, DEFAULT_CAP) else {
            panic!("corrupted multiplication accepted")
        };
        assert_eq!(v.law, "left unit");
        assert_eq!(v.at.last().unwrap(), "in1(x0)");
    }

    #[test]
    fn kleisli_hom_counts() {
        let kl = kleisli_sets(&Exceptions::new(1), &[0, 1, 2], DEFAULT_CAP).unwrap();
        crate::cat::validate_category(&kl.cat).unwrap();
        for a in 0..3usize {
            for b in 0..3usize {
                assert_eq!(kl.cat.hom(a, b).len(), (b + 1).pow(a as u32));
            }
        }
    }

    #[test]
    fn corrupted_kleisli_fails_validation() {
        let bad = Exceptions { errors: 1, corrupt: true };
        let kl = kleisli_sets(&bad, &[0, 1, 2], DEFAULT_CAP).unwrap();
        assert!(crate::cat::validate_category(&kl.cat).is_err());
    }

    #[test]
    fn roundtrips() {
        assert!(kleisli_roundtrip_sets(&IdentityMonad, 2, DEFAULT_CAP).is_ok());
        assert!(kleisli_roundtrip_sets(&Exceptions::new(1), 2, DEFAULT_CAP).is_ok());
    }

    #[test]
    fn product_comonad_products() {
        let q = ProductComonad { envs: 2 };
        assert!(check_set_comonad(&q, 2, DEFAULT_CAP).is_ok());
        assert!(cokleisli_products_sets(&q, 2, false, DEFAULT_CAP).is_ok());
        let Err(MonadError::Law(v)) = cokleisli_products_sets(&q, 2, true, DEFAULT_CAP) else {
            panic!("corrupted pairing accepted")
        };
        assert_eq!(v.law, "product pairing");
    }
}
