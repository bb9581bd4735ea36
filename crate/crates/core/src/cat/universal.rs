use serde::Serialize;

use super::{opposite, FinCategory};
use crate::par;

/// Universal constructions by kind. Objects and arrows are indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Universal {
    Initial,
    Terminal,
    Product(usize, usize),
    Coproduct(usize, usize),
    /// Equaliser of a parallel pair `f, g : A → B`.
    Equalizer(usize, usize),
    /// Pullback of `f : A → C` and `g : B → C`.
    Pullback(usize, usize),
}

/// An apex with its legs. For coproducts and initial objects the legs
/// point into the apex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Witness {
    pub apex: usize,
    pub arrows: Vec<usize>,
}

/// Cone shape: leg targets, and equations `u ∘ leg_i = v ∘ leg_j`.
struct Shape {
    targets: Vec<usize>,
    equations: Vec<(usize, usize, usize, usize)>,
}

impl Universal {
    fn dual(self) -> bool {
        matches!(self, Universal::Initial | Universal::Coproduct(..))
    }

    fn shape(self, c: &FinCategory) -> Shape {
        match self {
            Universal::Terminal | Universal::Initial => Shape { targets: vec![], equations: vec![] },
            Universal::Product(a, b) | Universal::Coproduct(a, b) => {
                Shape { targets: vec![a, b], equations: vec![] }
            }
            Universal::Equalizer(f, g) => Shape {
                targets: vec![c.dom(f)],
                equations: vec![(0, f, 0, g)],
            },
            Universal::Pullback(f, g) => Shape {
                targets: vec![c.dom(f), c.dom(g)],
                equations: vec![(0, f, 1, g)],
            },
        }
    }
}

/// All cones with apex `x`.
fn cones(c: &FinCategory, s: &Shape, x: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &t in &s.targets {
        out = out
            .into_iter()
            .flat_map(|legs| {
                c.hom(x, t).iter().map(move |&l| {
                    let mut v = legs.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out.retain(|legs| {
        s.equations
            .iter()
            .all(|&(i, u, j, v)| c.comp(u, legs[i]) == c.comp(v, legs[j]))
    });
    out
}

/// Every cone over `x` factors through `w` in exactly one way. Since
/// precomposition maps `hom(x, apex)` into the cones over `x`, this holds
/// iff that map is injective and both sides have the same size.
fn universal_at(c: &FinCategory, w: &Witness, x: usize, n_cones: usize) -> bool {
    let hom = c.hom(x, w.apex);
    if hom.len() != n_cones {
        return false;
    }
    let mut images: Vec<Vec<usize>> = hom
        .iter()
        .map(|&m| w.arrows.iter().map(|&l| c.comp(l, m)).collect())
        .collect();
    images.sort_unstable();
    images.dedup();
    images.len() == n_cones
}

fn find_in(c: &FinCategory, s: &Shape) -> Vec<Witness> {
    let n = c.n_objects();
    let all_cones: Vec<Vec<Vec<usize>>> = par::map_range(n, |x| cones(c, s, x));
    let found: Vec<Vec<Witness>> = par::map_range(n, |p| {
        all_cones[p]
            .iter()
            .map(|legs| Witness { apex: p, arrows: legs.clone() })
            .filter(|w| (0..n).all(|x| universal_at(c, w, x, all_cones[x].len())))
            .collect()
    });
    found.into_iter().flatten().collect()
}

/// Every witness of `kind` in `c`, by exhaustive enumeration of cones and
/// mediating arrows.
pub fn find_universal(c: &FinCategory, kind: Universal) -> Vec<Witness> {
    if kind.dual() {
        let op = opposite(c);
        find_in(&op, &kind.shape(&op))
    } else {
        find_in(c, &kind.shape(c))
    }
}

/// Isomorphisms `w1.apex → w2.apex` commuting with the legs.
pub fn connecting_isos(c: &FinCategory, kind: Universal, w1: &Witness, w2: &Witness) -> Vec<usize> {
    let commutes = |m: usize| {
        w1.arrows.iter().zip(&w2.arrows).all(|(&l1, &l2)| {
            if kind.dual() {
                c.comp(m, l1) == l2
            } else {
                c.comp(l2, m) == l1
            }
        })
    };
    let is_iso = |m: usize| {
        c.hom(w2.apex, w1.apex)
            .iter()
            .any(|&k| c.comp(k, m) == c.id(w1.apex) && c.comp(m, k) == c.id(w2.apex))
    };
    c.hom(w1.apex, w2.apex)
        .iter()
        .copied()
        .filter(|&m| commutes(m) && is_iso(m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{chain, discrete, divisors, finset};

    fn apexes(c: &FinCategory, ws: &[Witness]) -> Vec<String> {
        ws.iter().map(|w| c.objects()[w.apex].clone()).collect()
    }

    #[test]
    fn chain_limits() {
        let c = chain(3);
        assert_eq!(apexes(&c, &find_universal(&c, Universal::Terminal)), ["2"]);
        assert_eq!(apexes(&c, &find_universal(&c, Universal::Initial)), ["0"]);
    }

    #[test]
    fn gcd_is_product() {
        let c = divisors(12);
        let (a, b) = (c.object_index("4").unwrap(), c.object_index("6").unwrap());
        assert_eq!(apexes(&c, &find_universal(&c, Universal::Product(a, b))), ["2"]);
        assert_eq!(apexes(&c, &find_universal(&c, Universal::Coproduct(a, b))), ["12"]);
    }

    #[test]
    fn discrete_has_no_initial() {
        assert!(find_universal(&discrete(2), Universal::Initial).is_empty());
    }

    #[test]
    fn finset_products_and_equalizers() {
        let fs = finset(2);
        let c = &fs.cat;
        let one = c.object_index("{0}").unwrap();
        let two = c.object_index("{0,1}").unwrap();
        // |{0,1}×{0}| = 2
        let ws = find_universal(c, Universal::Product(two, one));
        assert!(!ws.is_empty());
        assert!(ws.iter().all(|w| c.objects()[w.apex] == "{0,1}"));
        for w1 in &ws {
            for w2 in &ws {
                assert_eq!(connecting_isos(c, Universal::Product(two, one), w1, w2).len(), 1);
            }
        }
        let id = c.id(two);
        let swap = c.arrow_index("{0,1}->{0,1}:10").unwrap();
        let eq = find_universal(c, Universal::Equalizer(id, swap));
        assert!(eq.iter().all(|w| c.objects()[w.apex] == "{}"));
        assert_eq!(eq.len(), 1);
    }
}
