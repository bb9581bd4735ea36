use std::collections::BTreeMap;

use serde::Serialize;

use super::{FinCategory, Violation};
use crate::par;

/// Object and arrow maps between two finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl Functor {
    pub fn identity(c: &FinCategory) -> Functor {
        Functor {
            objects: (0..c.n_objects()).collect(),
            arrows: (0..c.n_arrows()).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Functor) -> Functor {
        Functor {
            objects: self.objects.iter().map(|&a| other.objects[a]).collect(),
            arrows: self.arrows.iter().map(|&f| other.arrows[f]).collect(),
        }
    }

    /// The functor between preorder categories induced by a monotone map.
    pub fn monotone(src: &FinCategory, tgt: &FinCategory, objects: Vec<usize>) -> Functor {
        let arrows = src
            .arrows()
            .iter()
            .map(|a| tgt.hom(objects[a.dom], objects[a.cod]).first().copied().unwrap_or(usize::MAX))
            .collect();
        Functor { objects, arrows }
    }
}

pub fn validate_functor(src: &FinCategory, tgt: &FinCategory, f: &Functor) -> Result<(), Violation> {
    if f.objects.len() != src.n_objects() || f.arrows.len() != src.n_arrows() {
        return Err(Violation::new("functor arity", vec![]));
    }
    if let Some(a) = f.objects.iter().position(|&o| o >= tgt.n_objects()) {
        return Err(Violation::new("functor typing", vec![src.objects()[a].clone()]));
    }
    for (i, a) in src.arrows().iter().enumerate() {
        let fa = f.arrows[i];
        if fa >= tgt.n_arrows() || tgt.dom(fa) != f.objects[a.dom] || tgt.cod(fa) != f.objects[a.cod] {
            return Err(Violation::new("functor typing", vec![a.id.clone()]));
        }
    }
    for a in 0..src.n_objects() {
        if f.arrows[src.id(a)] != tgt.id(f.objects[a]) {
            return Err(Violation::new("functor identity", vec![src.objects()[a].clone()]));
        }
    }
    let arrows: Vec<usize> = (0..src.n_arrows()).collect();
    let bad = par::find_map_first(&arrows, |&x| {
        src.out_of(src.cod(x)).find_map(|g| {
            (f.arrows[src.comp(g, x)] != tgt.comp(f.arrows[g], f.arrows[x])).then(|| {
                Violation::new(
                    "functor composition",
                    vec![src.arrow_id(g).to_string(), src.arrow_id(x).to_string()],
                )
            })
        })
    });
    bad.map_or(Ok(()), Err)
}

/// Components `t_A : F A → G A`, indexed by source object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    pub components: Vec<usize>,
}

pub fn validate_natural(
    src: &FinCategory,
    tgt: &FinCategory,
    f: &Functor,
    g: &Functor,
    t: &NatTrans,
) -> Result<(), Violation> {
    validate_functor(src, tgt, f)?;
    validate_functor(src, tgt, g)?;
    if t.components.len() != src.n_objects() {
        return Err(Violation::new("component arity", vec![]));
    }
    for a in 0..src.n_objects() {
        let ta = t.components[a];
        if ta >= tgt.n_arrows() || tgt.dom(ta) != f.objects[a] || tgt.cod(ta) != g.objects[a] {
            return Err(Violation::new("component typing", vec![src.objects()[a].clone()]));
        }
    }
    for (i, x) in src.arrows().iter().enumerate() {
        let lhs = tgt.comp(t.components[x.cod], f.arrows[i]);
        let rhs = tgt.comp(g.arrows[i], t.components[x.dom]);
        if lhs != rhs {
            return Err(Violation::new("naturality", vec![x.id.clone()]));
        }
    }
    Ok(())
}

/// `F : C → D`, `G : D → C` and `θ_{A,B} : C(A, GB) → D(FA, B)`, keyed
/// by `(A, B, f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjunction {
    pub left: Functor,
    pub right: Functor,
    pub theta: BTreeMap<(usize, usize, usize), usize>,
}

impl Adjunction {
    /// Adjunction between preorders: `θ` is forced since homs have at most
    /// one arrow.
    pub fn between_preorders(c: &FinCategory, d: &FinCategory, left: Functor, right: Functor) -> Adjunction {
        let mut theta = BTreeMap::new();
        for a in 0..c.n_objects() {
            for b in 0..d.n_objects() {
                let back = d.hom(left.objects[a], b).first();
                for &f in c.hom(a, right.objects[b]) {
                    if let Some(&g) = back {
                        theta.insert((a, b, f), g);
                    }
                }
            }
        }
        Adjunction { left, right, theta }
    }

    pub fn identity(c: &FinCategory) -> Adjunction {
        let theta = (0..c.n_arrows())
            .flat_map(|f| [((c.dom(f), c.cod(f), f), f)])
            .collect();
        Adjunction {
            left: Functor::identity(c),
            right: Functor::identity(c),
            theta,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    /// `η_A = θ⁻¹(id_{FA})`.
    pub unit: Vec<usize>,
    /// `ε_B = θ(id_{GB})`.
    pub counit: Vec<usize>,
}

/// Exhaustive check of `θ`: bijective on every hom-set and natural in both
/// arguments. The unit is then derived and shown to be universal.
pub fn check_adjunction(c: &FinCategory, d: &FinCategory, adj: &Adjunction) -> Result<AdjunctionReport, Violation> {
    let (f, g) = (&adj.left, &adj.right);
    validate_functor(c, d, f)?;
    validate_functor(d, c, g)?;
    let cell = |a: usize, b: usize| vec![c.objects()[a].clone(), d.objects()[b].clone()];
    let mut cells_seen = 0;
    for a in 0..c.n_objects() {
        for b in 0..d.n_objects() {
            let left = c.hom(a, g.objects[b]);
            let right = d.hom(f.objects[a], b);
            cells_seen += left.len();
            let mut image = Vec::with_capacity(left.len());
            for &x in left {
                match adj.theta.get(&(a, b, x)) {
                    Some(&y) if right.contains(&y) => image.push(y),
                    _ => {
                        let mut at = cell(a, b);
                        at.push(c.arrow_id(x).to_string());
                        return Err(Violation::new("theta typing", at));
                    }
                }
            }
            image.sort_unstable();
            image.dedup();
            if image.len() != right.len() || left.len() != right.len() {
                return Err(Violation::new("theta bijective", cell(a, b)));
            }
        }
    }
    if adj.theta.len() != cells_seen {
        return Err(Violation::new("theta typing", vec!["entries outside C(A, GB)".into()]));
    }
    let theta = |a: usize, b: usize, x: usize| adj.theta[&(a, b, x)];
    let cells: Vec<(usize, usize, usize)> = adj.theta.keys().copied().collect();
    let bad = par::find_map_first(&cells, |&(a, b, x)| {
        let tx = theta(a, b, x);
        for y in c.into(a) {
            let a2 = c.dom(y);
            for h in d.out_of(b) {
                let b2 = d.cod(h);
                let lhs = theta(a2, b2, c.comp(g.arrows[h], c.comp(x, y)));
                let rhs = d.comp(h, d.comp(tx, f.arrows[y]));
                if lhs != rhs {
                    return Some(Violation::new(
                        "theta naturality",
                        vec![c.arrow_id(x).to_string(), c.arrow_id(y).to_string(), d.arrow_id(h).to_string()],
                    ));
                }
            }
        }
        None
    });
    if let Some(v) = bad {
        return Err(v);
    }
    let unit: Vec<usize> = (0..c.n_objects())
        .map(|a| {
            let fa = f.objects[a];
            let want = d.id(fa);
            *c.hom(a, g.objects[fa])
                .iter()
                .find(|&&x| theta(a, fa, x) == want)
                .expect("theta is bijective")
        })
        .collect();
    let counit: Vec<usize> = (0..d.n_objects())
        .map(|b| theta(g.objects[b], b, c.id(g.objects[b])))
        .collect();
    // universal arrow: each x : A → GB factors as G x̂ ∘ η_A for exactly one x̂
    for a in 0..c.n_objects() {
        for b in 0..d.n_objects() {
            for &x in c.hom(a, g.objects[b]) {
                let n = d
                    .hom(f.objects[a], b)
                    .iter()
                    .filter(|&&xh| c.comp(g.arrows[xh], unit[a]) == x)
                    .count();
                if n != 1 {
                    let mut at = cell(a, b);
                    at.push(c.arrow_id(x).to_string());
                    return Err(Violation::new("universal arrow", at));
                }
            }
        }
    }
    Ok(AdjunctionReport { unit, counit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{chain, finset, monoid};

    #[test]
    fn identity_functor_and_adjunction() {
        let c = chain(3);
        assert_eq!(validate_functor(&c, &c, &Functor::identity(&c)), Ok(()));
        let r = check_adjunction(&c, &c, &Adjunction::identity(&c)).unwrap();
        assert_eq!(r.unit, (0..3).map(|a| c.id(a)).collect::<Vec<_>>());
    }

    #[test]
    fn monoid_homomorphism() {
        // Z4 → Z2, reduction mod 2
        let z = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        let z4 = monoid(&z(4), 0, |a, b| (a + b) % 4);
        let z2 = monoid(&z(2), 0, |a, b| (a + b) % 2);
        let h = Functor { objects: vec![0], arrows: vec![0, 1, 0, 1] };
        assert_eq!(validate_functor(&z4, &z2, &h), Ok(()));
        let bad = Functor { objects: vec![0], arrows: vec![0, 1, 1, 1] };
        assert_eq!(validate_functor(&z4, &z2, &bad).unwrap_err().law, "functor composition");
    }

    #[test]
    fn broken_square() {
        let c = chain(2);
        let f = Functor::identity(&c);
        let ok = NatTrans { components: vec![c.id(0), c.id(1)] };
        assert_eq!(validate_natural(&c, &c, &f, &f, &ok), Ok(()));
        // constant-at-0 functor into the identity, components 0<=0 and 0<=1
        let k = Functor::monotone(&c, &c, vec![0, 0]);
        let t = NatTrans { components: vec![c.id(0), c.arrow_index("0<=1").unwrap()] };
        assert_eq!(validate_natural(&c, &c, &k, &f, &t), Ok(()));
        let s = NatTrans { components: vec![c.id(0), c.id(1)] };
        assert_eq!(validate_natural(&c, &c, &k, &f, &s).unwrap_err().law, "component typing");
    }

    #[test]
    fn corrupted_theta_cell() {
        let fs = finset(2);
        let c = &fs.cat;
        let mut adj = Adjunction::identity(c);
        let (one, two) = (c.object_index("{0}").unwrap(), c.object_index("{0,1}").unwrap());
        let x0 = c.arrow_index("{0}->{0,1}:0").unwrap();
        let x1 = c.arrow_index("{0}->{0,1}:1").unwrap();
        adj.theta.insert((one, two, x0), x1);
        adj.theta.insert((one, two, x1), x0);
        assert_eq!(check_adjunction(c, c, &adj).unwrap_err().law, "theta naturality");
    }
}
