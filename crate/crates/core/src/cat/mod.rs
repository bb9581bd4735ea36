//! Finite categories as explicit tables, with exhaustive checks of the
//! axioms, arrow classification, limits, functors, adjunctions and Yoneda.

mod build;
mod classify;
mod functor;
mod universal;
mod yoneda;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::par;

pub use build::{chain, discrete, divisors, finset, monoid, opposite, poset, product, terminal, FinSetFragment};
pub use classify::{classify_arrow, ArrowClass};
pub use functor::{check_adjunction, validate_functor, validate_natural, Adjunction, AdjunctionReport, Functor, NatTrans};
pub use universal::{connecting_isos, find_universal, Universal, Witness};
pub use yoneda::{yoneda_check, yoneda_enumerate, Family, YonedaReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub id: String,
    pub dom: usize,
    pub cod: usize,
}

/// A law that failed, with the ids of the offending cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: &'static str,
    pub at: Vec<String>,
}

impl Violation {
    pub(crate) fn new(law: &'static str, at: Vec<String>) -> Violation {
        Violation { law, at }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at ({})", self.law, self.at.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CatError {
    #[error("malformed category: {0}")]
    Malformed(String),
    #[error("{0}")]
    Violation(Violation),
}

impl From<Violation> for CatError {
    fn from(v: Violation) -> CatError {
        CatError::Violation(v)
    }
}

/// A finite category. Objects and arrows are addressed by index; ids are
/// kept for display and file I/O. `compose[g * n + f]` holds `g ∘ f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identity: Vec<usize>,
    compose: Vec<Option<usize>>,
    homs: Vec<Vec<usize>>,
}

impl FinCategory {
    /// Assemble a table. Only referential sanity is checked here: ids are
    /// unique and resolvable, and composites are given only for composable
    /// pairs. The laws are left to [`validate_category`].
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identity: Vec<usize>,
        composites: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<FinCategory, CatError> {
        let no = objects.len();
        let na = arrows.len();
        unique(objects.iter(), "object")?;
        unique(arrows.iter().map(|a| &a.id), "arrow")?;
        if let Some(a) = arrows.iter().find(|a| a.dom >= no || a.cod >= no) {
            return Err(CatError::Malformed(format!("arrow `{}` has an unknown endpoint", a.id)));
        }
        if identity.len() != no || identity.iter().any(|&i| i >= na) {
            return Err(CatError::Malformed("identity map must cover every object".into()));
        }
        let mut compose = vec![None; na * na];
        for (g, f, gf) in composites {
            if g >= na || f >= na || gf >= na {
                return Err(CatError::Malformed("composite refers to an unknown arrow".into()));
            }
            if arrows[f].cod != arrows[g].dom {
                return Err(CatError::Malformed(format!(
                    "composite given for non-composable pair ({}, {})",
                    arrows[g].id, arrows[f].id
                )));
            }
            let slot = &mut compose[g * na + f];
            if slot.is_some_and(|old| old != gf) {
                return Err(CatError::Malformed(format!(
                    "two composites for ({}, {})",
                    arrows[g].id, arrows[f].id
                )));
            }
            *slot = Some(gf);
        }
        let mut homs = vec![Vec::new(); no * no];
        for (i, a) in arrows.iter().enumerate() {
            homs[a.dom * no + a.cod].push(i);
        }
        Ok(FinCategory {
            objects,
            arrows,
            identity,
            compose,
            homs,
        })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == id)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn dom(&self, f: usize) -> usize {
        self.arrows[f].dom
    }

    pub fn cod(&self, f: usize) -> usize {
        self.arrows[f].cod
    }

    pub fn id(&self, a: usize) -> usize {
        self.identity[a]
    }

    pub fn arrow_id(&self, f: usize) -> &str {
        &self.arrows[f].id
    }

    /// `g ∘ f`, if the table defines it.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g * self.arrows.len() + f]
    }

    /// `g ∘ f` in a validated category.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose(g, f)
            .unwrap_or_else(|| panic!("no composite for ({}, {})", self.arrows[g].id, self.arrows[f].id))
    }

    /// Arrows `a → b`, in table order.
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a * self.objects.len() + b]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.arrows[f].dom] == f
    }

    /// Arrows out of `a`, grouped by codomain.
    pub fn out_of(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_objects()).flat_map(move |b| self.hom(a, b).iter().copied())
    }

    /// Arrows into `b`, grouped by domain.
    pub fn into(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_objects()).flat_map(move |a| self.hom(a, b).iter().copied())
    }

    pub fn from_json(src: &str) -> Result<FinCategory, CatError> {
        let file: CategoryFile =
            serde_json::from_str(src).map_err(|e| CatError::Malformed(e.to_string()))?;
        let objects = file.objects;
        let obj = |s: &str| {
            objects
                .iter()
                .position(|o| o == s)
                .ok_or_else(|| CatError::Malformed(format!("unknown object `{s}`")))
        };
        let arrows = file
            .arrows
            .iter()
            .map(|a| {
                Ok(Arrow {
                    id: a.id.clone(),
                    dom: obj(&a.dom)?,
                    cod: obj(&a.cod)?,
                })
            })
            .collect::<Result<Vec<_>, CatError>>()?;
        let arr = |s: &str| {
            arrows
                .iter()
                .position(|a| a.id == s)
                .ok_or_else(|| CatError::Malformed(format!("unknown arrow `{s}`")))
        };
        let mut identity = vec![usize::MAX; objects.len()];
        for (o, a) in &file.id {
            identity[obj(o)?] = arr(a)?;
        }
        if let Some(i) = identity.iter().position(|&a| a == usize::MAX) {
            return Err(CatError::Malformed(format!("no identity for `{}`", objects[i])));
        }
        let composites = file
            .compose
            .iter()
            .map(|[g, f, gf]| Ok((arr(g)?, arr(f)?, arr(gf)?)))
            .collect::<Result<Vec<_>, CatError>>()?;
        FinCategory::new(objects.clone(), arrows, identity, composites)
    }

    pub fn to_json(&self) -> String {
        let na = self.n_arrows();
        let file = CategoryFile {
            objects: self.objects.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowFile {
                    id: a.id.clone(),
                    dom: self.objects[a.dom].clone(),
                    cod: self.objects[a.cod].clone(),
                })
                .collect(),
            id: self
                .identity
                .iter()
                .enumerate()
                .map(|(o, &a)| (self.objects[o].clone(), self.arrows[a].id.clone()))
                .collect(),
            compose: (0..na * na)
                .filter_map(|k| {
                    self.compose[k].map(|gf| {
                        [
                            self.arrows[k / na].id.clone(),
                            self.arrows[k % na].id.clone(),
                            self.arrows[gf].id.clone(),
                        ]
                    })
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }
}

fn unique<'a>(ids: impl Iterator<Item = &'a String>, what: &str) -> Result<(), CatError> {
    let mut seen = HashMap::new();
    for id in ids {
        if seen.insert(id, ()).is_some() {
            return Err(CatError::Malformed(format!("duplicate {what} id `{id}`")));
        }
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct ArrowFile {
    id: String,
    dom: String,
    cod: String,
}

#[derive(Serialize, Deserialize)]
struct CategoryFile {
    objects: Vec<String>,
    arrows: Vec<ArrowFile>,
    id: BTreeMap<String, String>,
    compose: Vec<[String; 3]>,
}

/// Check every category law; the first failing tuple is reported.
pub fn validate_category(c: &FinCategory) -> Result<(), Violation> {
    let ids = |xs: &[usize]| xs.iter().map(|&f| c.arrows[f].id.clone()).collect::<Vec<_>>();
    for (a, &i) in c.identity.iter().enumerate() {
        if c.dom(i) != a || c.cod(i) != a {
            return Err(Violation::new("identity typing", vec![c.objects[a].clone(), c.arrows[i].id.clone()]));
        }
    }
    let arrows: Vec<usize> = (0..c.n_arrows()).collect();
    // composites and their types
    let bad = par::find_map_first(&arrows, |&f| {
        for g in c.out_of(c.cod(f)) {
            match c.compose(g, f) {
                None => return Some(Violation::new("composite defined", ids(&[g, f]))),
                Some(gf) if c.dom(gf) != c.dom(f) || c.cod(gf) != c.cod(g) => {
                    return Some(Violation::new("composite typing", ids(&[g, f, gf])))
                }
                _ => {}
            }
        }
        None
    });
    if let Some(v) = bad {
        return Err(v);
    }
    for f in 0..c.n_arrows() {
        if c.comp(f, c.id(c.dom(f))) != f {
            return Err(Violation::new("right unit", ids(&[f])));
        }
        if c.comp(c.id(c.cod(f)), f) != f {
            return Err(Violation::new("left unit", ids(&[f])));
        }
    }
    let bad = par::find_map_first(&arrows, |&f| {
        for g in c.out_of(c.cod(f)) {
            let gf = c.comp(g, f);
            for h in c.out_of(c.cod(g)) {
                if c.comp(h, gf) != c.comp(c.comp(h, g), f) {
                    return Some(Violation::new("associativity", ids(&[h, g, f])));
                }
            }
        }
        None
    });
    match bad {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let c = divisors(12);
        let back = FinCategory::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn broken_associativity_is_named() {
        // one object, arrows 1, a, b with a∘a = b, b∘a = a, a∘b = b, b∘b = b
        let arrows = ["1", "a", "b"]
            .iter()
            .map(|s| Arrow { id: s.to_string(), dom: 0, cod: 0 })
            .collect();
        let t = [[0, 1, 2], [1, 2, 2], [2, 1, 2]];
        let comps = (0..3).flat_map(|g| (0..3).map(move |f| (g, f, t[g][f])));
        let c = FinCategory::new(vec!["*".into()], arrows, vec![0], comps).unwrap();
        let v = validate_category(&c).unwrap_err();
        assert_eq!(v.law, "associativity");
        assert_eq!(v.at, vec!["a", "a", "a"]);
    }

    #[test]
    fn missing_composite_is_reported() {
        let arrows = vec![
            Arrow { id: "1a".into(), dom: 0, cod: 0 },
            Arrow { id: "1b".into(), dom: 1, cod: 1 },
            Arrow { id: "f".into(), dom: 0, cod: 1 },
        ];
        let comps = [(0, 0, 0), (1, 1, 1), (2, 0, 2)];
        let c = FinCategory::new(vec!["a".into(), "b".into()], arrows, vec![0, 1], comps).unwrap();
        let v = validate_category(&c).unwrap_err();
        assert_eq!(v, Violation::new("composite defined", vec!["1b".into(), "f".into()]));
    }

    #[test]
    fn malformed_tables() {
        let arrows = vec![Arrow { id: "f".into(), dom: 0, cod: 1 }];
        assert!(FinCategory::new(vec!["a".into()], arrows, vec![0], []).is_err());
        let bad = r#"{"objects":["a"],"arrows":[{"id":"1","dom":"a","cod":"a"}],"id":{},"compose":[]}"#;
        assert!(matches!(FinCategory::from_json(bad), Err(CatError::Malformed(_))));
    }
}
