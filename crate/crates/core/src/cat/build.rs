use std::collections::HashMap;

use super::{Arrow, FinCategory};

/// 𝟙: one object, one arrow.
pub fn terminal() -> FinCategory {
    discrete(1)
}

/// Objects `0..n` and identities only.
pub fn discrete(n: usize) -> FinCategory {
    let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let arrows = (0..n)
        .map(|i| Arrow { id: format!("id{i}"), dom: i, cod: i })
        .collect();
    FinCategory::new(objects, arrows, (0..n).collect(), (0..n).map(|i| (i, i, i))).expect("well formed")
}

/// The preorder category of `leq` on `names`: one arrow `a<=b` whenever
/// `leq(a, b)`. A relation that is not a preorder yields a table that
/// fails validation.
pub fn poset(names: &[String], leq: impl Fn(usize, usize) -> bool) -> FinCategory {
    let n = names.len();
    let mut arrows = Vec::new();
    let mut index = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            if leq(a, b) {
                index.insert((a, b), arrows.len());
                arrows.push(Arrow { id: format!("{}<={}", names[a], names[b]), dom: a, cod: b });
            }
        }
    }
    let identity: Vec<usize> = (0..n).map(|a| index.get(&(a, a)).copied().unwrap_or(0)).collect();
    let mut comps = Vec::new();
    for (&(a, b), &f) in &index {
        for c in 0..n {
            if let (Some(&g), Some(&gf)) = (index.get(&(b, c)), index.get(&(a, c))) {
                comps.push((g, f, gf));
            }
        }
    }
    FinCategory::new(names.to_vec(), arrows, identity, comps).expect("well formed")
}

/// `0 < 1 < … < n-1`.
pub fn chain(n: usize) -> FinCategory {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    poset(&names, |a, b| a <= b)
}

/// Divisors of `n` ordered by divisibility.
pub fn divisors(n: u64) -> FinCategory {
    let ds: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let names: Vec<String> = ds.iter().map(u64::to_string).collect();
    poset(&names, |a, b| ds[b] % ds[a] == 0)
}

/// A monoid as a one-object category; `mul(g, f)` is `g ∘ f`.
pub fn monoid(elements: &[String], unit: usize, mul: impl Fn(usize, usize) -> usize) -> FinCategory {
    let n = elements.len();
    let arrows = elements
        .iter()
        .map(|e| Arrow { id: e.clone(), dom: 0, cod: 0 })
        .collect();
    let comps = (0..n).flat_map(|g| (0..n).map(move |f| (g, f))).map(|(g, f)| (g, f, mul(g, f)));
    FinCategory::new(vec!["*".into()], arrows, vec![unit], comps).expect("well formed")
}

/// Arrows of `c` reversed. Arrow and object indices are unchanged.
pub fn opposite(c: &FinCategory) -> FinCategory {
    let arrows = c
        .arrows()
        .iter()
        .map(|a| Arrow { id: a.id.clone(), dom: a.cod, cod: a.dom })
        .collect();
    let na = c.n_arrows();
    let comps = (0..na)
        .flat_map(|g| (0..na).map(move |f| (g, f)))
        .filter_map(|(g, f)| c.compose(f, g).map(|fg| (g, f, fg)));
    let identity = (0..c.n_objects()).map(|a| c.id(a)).collect();
    FinCategory::new(c.objects().to_vec(), arrows, identity, comps).expect("well formed")
}

/// `c × d`. Object `(a, b)` sits at `a * |Ob d| + b`, arrow `(f, g)` at
/// `f * |Ar d| + g`.
pub fn product(c: &FinCategory, d: &FinCategory) -> FinCategory {
    let (no, na) = (d.n_objects(), d.n_arrows());
    let objects = c
        .objects()
        .iter()
        .flat_map(|a| d.objects().iter().map(move |b| format!("({a},{b})")))
        .collect();
    let arrows = c
        .arrows()
        .iter()
        .flat_map(|f| {
            d.arrows().iter().map(move |g| Arrow {
                id: format!("({},{})", f.id, g.id),
                dom: f.dom * no + g.dom,
                cod: f.cod * no + g.cod,
            })
        })
        .collect();
    let identity = (0..c.n_objects())
        .flat_map(|a| (0..no).map(move |b| c.id(a) * na + d.id(b)))
        .collect();
    let mut comps = Vec::new();
    for f1 in 0..c.n_arrows() {
        for g1 in 0..c.n_arrows() {
            let Some(h1) = c.compose(g1, f1) else { continue };
            for f2 in 0..na {
                for g2 in 0..na {
                    if let Some(h2) = d.compose(g2, f2) {
                        comps.push((g1 * na + g2, f1 * na + f2, h1 * na + h2));
                    }
                }
            }
        }
    }
    FinCategory::new(objects, arrows, identity, comps).expect("well formed")
}

/// Subsets of `{0, …, n-1}` and every function between them.
#[derive(Clone, Debug)]
pub struct FinSetFragment {
    pub cat: FinCategory,
    /// Elements of each object, ascending.
    pub sets: Vec<Vec<usize>>,
    /// For each arrow, the image of each domain element, in domain order.
    pub maps: Vec<Vec<usize>>,
}

impl FinSetFragment {
    pub fn is_injective(&self, f: usize) -> bool {
        let m = &self.maps[f];
        (0..m.len()).all(|i| (0..i).all(|j| m[i] != m[j]))
    }

    pub fn is_surjective(&self, f: usize) -> bool {
        let cod = &self.sets[self.cat.cod(f)];
        cod.iter().all(|y| self.maps[f].contains(y))
    }
}

pub fn finset(n: usize) -> FinSetFragment {
    let sets: Vec<Vec<usize>> = (0..1usize << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    let name = |s: &[usize]| {
        let inner: Vec<String> = s.iter().map(usize::to_string).collect();
        format!("{{{}}}", inner.join(","))
    };
    let objects: Vec<String> = sets.iter().map(|s| name(s)).collect();
    let mut arrows = Vec::new();
    let mut maps = Vec::new();
    let mut index = HashMap::new();
    for (a, sa) in sets.iter().enumerate() {
        for (b, sb) in sets.iter().enumerate() {
            let k = sa.len() as u32;
            for code in 0..sb.len().pow(k) {
                let img: Vec<usize> = (0..sa.len())
                    .map(|i| sb[code / sb.len().pow(i as u32) % sb.len()])
                    .collect();
                let label: Vec<String> = img.iter().map(usize::to_string).collect();
                index.insert((a, b, img.clone()), arrows.len());
                arrows.push(Arrow {
                    id: format!("{}->{}:{}", objects[a], objects[b], label.join("")),
                    dom: a,
                    cod: b,
                });
                maps.push(img);
            }
        }
    }
    let identity = (0..sets.len())
        .map(|a| index[&(a, a, sets[a].clone())])
        .collect();
    let mut comps = Vec::new();
    for (f, af) in arrows.iter().enumerate() {
        for (g, ag) in arrows.iter().enumerate() {
            if ag.dom != af.cod {
                continue;
            }
            let mid = &sets[af.cod];
            let img: Vec<usize> = maps[f]
                .iter()
                .map(|y| maps[g][mid.iter().position(|m| m == y).expect("in codomain")])
                .collect();
            comps.push((g, f, index[&(af.dom, ag.cod, img)]));
        }
    }
    let cat = FinCategory::new(objects, arrows, identity, comps).expect("well formed");
    FinSetFragment { cat, sets, maps }
}
