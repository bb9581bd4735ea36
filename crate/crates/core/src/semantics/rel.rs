use std::collections::BTreeMap;

use super::SemError;
use crate::proof::{Formula, ProofRule, ProofTree};

/// A relation between finite sets `0..dom` and `0..cod`, as a Boolean
/// matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelMor {
    pub dom: usize,
    pub cod: usize,
    pub graph: Vec<bool>,
}

impl RelMor {
    pub fn from_fn(dom: usize, cod: usize, rel: impl Fn(usize, usize) -> bool) -> RelMor {
        let graph = (0..dom * cod).map(|k| rel(k / cod, k % cod)).collect();
        RelMor { dom, cod, graph }
    }

    /// The graph of a function.
    pub fn function(dom: usize, cod: usize, f: impl Fn(usize) -> usize) -> RelMor {
        RelMor::from_fn(dom, cod, |x, y| f(x) == y)
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.graph[x * self.cod + y]
    }

    pub fn identity(n: usize) -> RelMor {
        RelMor::function(n, n, |x| x)
    }

    /// `self ; other`, i.e. `other ∘ self`.
    pub fn then(&self, other: &RelMor) -> RelMor {
        assert_eq!(self.cod, other.dom, "composable relations");
        RelMor::from_fn(self.dom, other.cod, |x, z| {
            (0..self.cod).any(|y| self.get(x, y) && other.get(y, z))
        })
    }

    /// `R ⊗ S` on cartesian products.
    pub fn tensor(&self, other: &RelMor) -> RelMor {
        RelMor::from_fn(self.dom * other.dom, self.cod * other.cod, |x, y| {
            self.get(x / other.dom, y / other.cod) && other.get(x % other.dom, y % other.cod)
        })
    }

    /// `a : A ⊗ (B ⊗ C) → (A ⊗ B) ⊗ C`.
    pub fn assoc(a: usize, b: usize, c: usize) -> RelMor {
        RelMor::function(a * b * c, a * b * c, |x| x)
    }

    /// `l : I ⊗ A → A`.
    pub fn left_unit(a: usize) -> RelMor {
        RelMor::identity(a)
    }

    /// `r : A ⊗ I → A`.
    pub fn right_unit(a: usize) -> RelMor {
        RelMor::identity(a)
    }

    /// `s : A ⊗ B → B ⊗ A`.
    pub fn swap(a: usize, b: usize) -> RelMor {
        RelMor::function(a * b, b * a, |x| (x % b) * a + x / b)
    }

    /// `ev : (A ⊸ B) ⊗ A → B` with `A ⊸ B := A × B`.
    pub fn ev(a: usize, b: usize) -> RelMor {
        RelMor::from_fn(a * b * a, b, |x, y| {
            let (ab, a2) = (x / a, x % a);
            ab / b == a2 && ab % b == y
        })
    }

    /// `Λ(R) : C → (A ⊸ B)` for `R : C ⊗ A → B`.
    pub fn curry(r: &RelMor, a: usize) -> RelMor {
        let (c, b) = (r.dom / a, r.cod);
        RelMor::from_fn(c, a * b, |x, y| r.get(x * a + y / b, y % b))
    }

    pub fn render(&self) -> String {
        (0..self.dom)
            .map(|x| {
                let row: String = (0..self.cod).map(|y| if self.get(x, y) { '1' } else { '0' }).collect();
                row + "\n"
            })
            .collect()
    }
}

pub type AtomSizes = BTreeMap<String, usize>;

pub fn formula_size(f: &Formula, sizes: &AtomSizes) -> Result<usize, SemError> {
    match f {
        Formula::Atom(a) => sizes.get(a).copied().ok_or_else(|| SemError::UnknownBase(a.clone())),
        Formula::Tensor(a, b) | Formula::Lolli(a, b) => Ok(formula_size(a, sizes)? * formula_size(b, sizes)?),
        other => Err(SemError::UnsupportedRule(format!("no Rel object for `{other}`"))),
    }
}

/// A sequent's denotation: hypothesis tuples (first hypothesis most
/// significant) related to conclusion elements.
struct Den {
    radix: Vec<usize>,
    rel: RelMor,
}

impl Den {
    fn holds(&self, tuple: &[usize], c: usize) -> bool {
        let x = tuple.iter().zip(&self.radix).fold(0, |acc, (&v, &r)| acc * r + v);
        self.rel.get(x, c)
    }
}

fn decode(mut x: usize, radix: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radix.len()];
    for k in (0..radix.len()).rev() {
        out[k] = x % radix[k];
        x /= radix[k];
    }
    out
}

/// For each wanted formula, a distinct position of `have` holding it,
/// taking the first unused one.
fn assign(have: &[Formula], wanted: &[&Formula]) -> Vec<usize> {
    let mut used = vec![false; have.len()];
    wanted
        .iter()
        .map(|w| {
            let k = (0..have.len()).find(|&k| !used[k] && have[k] == **w).expect("checked proof");
            used[k] = true;
            k
        })
        .collect()
}

/// Conclusion positions not taken by `taken`, in order.
fn rest(n: usize, taken: &[usize]) -> Vec<usize> {
    (0..n).filter(|k| !taken.contains(k)).collect()
}

/// Premise tuple with `values[k]` at `positions[k]`.
fn place(n: usize, positions: &[usize], values: &[usize]) -> Vec<usize> {
    let mut out = vec![0; n];
    for (&p, &v) in positions.iter().zip(values) {
        out[p] = v;
    }
    out
}

const CELL_CAP: usize = 1_000_000;

/// Rule-by-rule interpretation of a ⊗,⊸ proof in Rel, with `A ⊗ B` and
/// `A ⊸ B` both read as `A × B`. Identical hypotheses are matched to
/// premise positions first-unused.
pub fn translate_linear_proof(p: &ProofTree, sizes: &AtomSizes) -> Result<RelMor, SemError> {
    Ok(den(p, sizes)?.rel)
}

fn den(p: &ProofTree, sizes: &AtomSizes) -> Result<Den, SemError> {
    let s = &p.sequent;
    let hyps = &s.hyps;
    let n = hyps.len();
    let radix: Vec<usize> = hyps.iter().map(|h| formula_size(h, sizes)).collect::<Result<_, _>>()?;
    let concl = formula_size(&s.concl, sizes)?;
    let dom: usize = radix.iter().product();
    if dom.saturating_mul(concl) > CELL_CAP {
        return Err(SemError::SizeOverflow { cap: CELL_CAP });
    }
    let kids: Vec<Den> = p.premises.iter().map(|q| den(q, sizes)).collect::<Result<_, _>>()?;
    let ph = |k: usize| &p.premises[k].sequent.hyps;
    let size = |f: &Formula| formula_size(f, sizes);
    let pick = |t: &[usize], ks: &[usize]| ks.iter().map(|&k| t[k]).collect::<Vec<usize>>();
    let rel: Box<dyn Fn(&[usize], usize) -> bool> = match p.rule {
        ProofRule::Id => Box::new(|t, c| t[0] == c),
        ProofRule::Cut => {
            let cut = &p.premises[0].sequent.concl;
            let gamma = assign(hyps, &ph(0).iter().collect::<Vec<_>>());
            let delta = rest(n, &gamma);
            let mut want = vec![cut];
            want.extend(delta.iter().map(|&k| &hyps[k]));
            let pos = assign(ph(1), &want);
            let na = size(cut)?;
            let (k0, k1) = (&kids[0], &kids[1]);
            Box::new(move |t, c| {
                (0..na).any(|a| {
                    let mut vals = vec![a];
                    vals.extend(pick(t, &delta));
                    k0.holds(&pick(t, &gamma), a) && k1.holds(&place(pos.len(), &pos, &vals), c)
                })
            })
        }
        ProofRule::TensorR => {
            let gamma = assign(hyps, &ph(0).iter().collect::<Vec<_>>());
            let delta = rest(n, &gamma);
            let pos = assign(ph(1), &delta.iter().map(|&k| &hyps[k]).collect::<Vec<_>>());
            let nb = size(&p.premises[1].sequent.concl)?;
            let (k0, k1) = (&kids[0], &kids[1]);
            Box::new(move |t, c| {
                k0.holds(&pick(t, &gamma), c / nb) && k1.holds(&place(pos.len(), &pos, &pick(t, &delta)), c % nb)
            })
        }
        ProofRule::TensorL(i) => {
            let Formula::Tensor(a, b) = &hyps[i] else { unreachable!("checked proof") };
            let others = rest(n, &[i]);
            let mut want: Vec<&Formula> = others.iter().map(|&k| &hyps[k]).collect();
            want.push(a);
            want.push(b);
            let pos = assign(ph(0), &want);
            let nb = size(b)?;
            let k0 = &kids[0];
            Box::new(move |t, c| {
                let mut vals = pick(t, &others);
                vals.push(t[i] / nb);
                vals.push(t[i] % nb);
                k0.holds(&place(pos.len(), &pos, &vals), c)
            })
        }
        ProofRule::LolliR => {
            let Formula::Lolli(a, b) = &s.concl else { unreachable!("checked proof") };
            let mut want: Vec<&Formula> = hyps.iter().collect();
            want.push(a);
            let pos = assign(ph(0), &want);
            let nb = size(b)?;
            let k0 = &kids[0];
            Box::new(move |t, c| {
                let mut vals = t.to_vec();
                vals.push(c / nb);
                k0.holds(&place(pos.len(), &pos, &vals), c % nb)
            })
        }
        ProofRule::LolliL(i) => {
            let Formula::Lolli(_, b) = &hyps[i] else { unreachable!("checked proof") };
            let others = rest(n, &[i]);
            let others_f: Vec<Formula> = others.iter().map(|&k| hyps[k].clone()).collect();
            let gamma_local = assign(&others_f, &ph(0).iter().collect::<Vec<_>>());
            let gamma: Vec<usize> = gamma_local.iter().map(|&k| others[k]).collect();
            let delta = rest(n, &[&gamma[..], &[i]].concat());
            let mut want: Vec<&Formula> = vec![b];
            want.extend(delta.iter().map(|&k| &hyps[k]));
            let pos = assign(ph(1), &want);
            let nb = size(b)?;
            let (k0, k1) = (&kids[0], &kids[1]);
            Box::new(move |t, c| {
                let (a, bv) = (t[i] / nb, t[i] % nb);
                let mut vals = vec![bv];
                vals.extend(pick(t, &delta));
                k0.holds(&pick(t, &gamma), a) && k1.holds(&place(pos.len(), &pos, &vals), c)
            })
        }
        ProofRule::LolliE => {
            let gamma = assign(hyps, &ph(0).iter().collect::<Vec<_>>());
            let delta = rest(n, &gamma);
            let pos = assign(ph(1), &delta.iter().map(|&k| &hyps[k]).collect::<Vec<_>>());
            let a = &p.premises[1].sequent.concl;
            let na = size(a)?;
            let (k0, k1) = (&kids[0], &kids[1]);
            Box::new(move |t, c| {
                (0..na).any(|av| {
                    k0.holds(&pick(t, &gamma), av * concl + c)
                        && k1.holds(&place(pos.len(), &pos, &pick(t, &delta)), av)
                })
            })
        }
        r => return Err(SemError::UnsupportedRule(r.token())),
    };
    let rel = RelMor::from_fn(dom, concl, |x, c| rel(&decode(x, &radix), c));
    Ok(Den { radix, rel })
}
