use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;

use super::check::check_proof;
use super::formula::{Formula, Sequent};
use super::ms;
use super::tree::{ProofRule, ProofTree, System};
use super::ProofError;
use crate::par;
use crate::syntax::Fragment;

/// Bounded cut-free backward search. The system is read off the sequent:
/// ∧,⊃ formulas go to the Gentzen calculus, everything else to linear logic.
pub fn search_cutfree(s: &Sequent, depth: usize) -> Result<Option<ProofTree>, ProofError> {
    let system = match s.fragment() {
        Ok(Some(Fragment::Intuitionistic)) => System::Gentzen,
        Ok(_) => System::Linear,
        Err(()) => {
            return Err(ProofError::UnsupportedFragment(
                "sequent mixes intuitionistic and linear connectives".into(),
            ))
        }
    };
    search_cutfree_in(s, system, depth)
}

/// Search in a given system. `depth` bounds the height of the proof: the
/// number of backward rule applications along any branch. For the Gentzen
/// calculus the bound applies to the logical rules; the structural steps
/// that reshape contexts are not counted.
pub fn search_cutfree_in(
    s: &Sequent,
    system: System,
    depth: usize,
) -> Result<Option<ProofTree>, ProofError> {
    let proof = match system {
        System::Linear => {
            if s.mentions_bang() {
                return Err(ProofError::UnsupportedFragment(
                    "proof search does not handle `!`".into(),
                ));
            }
            if matches!(s.fragment(), Ok(Some(Fragment::Intuitionistic)) | Err(())) {
                return Err(ProofError::UnsupportedFragment(
                    "linear search needs a linear sequent".into(),
                ));
            }
            let search = Linear::default();
            search.prove(&s.normalized(), depth).map(|p| p.retarget(s))
        }
        System::Gentzen => {
            if matches!(s.fragment(), Ok(Some(Fragment::Linear)) | Err(())) {
                return Err(ProofError::UnsupportedFragment(
                    "Gentzen search needs an intuitionistic sequent".into(),
                ));
            }
            let search = G3::default();
            let gamma: BTreeSet<Formula> = s.hyps.iter().cloned().collect();
            search
                .prove(&gamma, &s.concl, depth)
                .map(|g| literal(&g, &s.hyps))
        }
        System::Nd => {
            return Err(ProofError::UnsupportedFragment(
                "search targets the sequent calculi".into(),
            ))
        }
    };
    if let Some(p) = &proof {
        debug_assert!(check_proof(p, system).is_ok(), "search produced a bad proof");
    }
    Ok(proof)
}

fn seq(hyps: Vec<Formula>, concl: Formula) -> Sequent {
    Sequent::new(hyps, concl).normalized()
}

/// Distinct sub-multisets of `v` (sorted), each with its complement, in
/// increasing bitmask order.
fn splits(v: &[Formula]) -> Vec<(Vec<Formula>, Vec<Formula>)> {
    let n = v.len();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let (mut l, mut r) = (Vec::new(), Vec::new());
        for (k, f) in v.iter().enumerate() {
            if mask >> k & 1 == 1 {
                l.push(f.clone());
            } else {
                r.push(f.clone());
            }
        }
        if seen.insert(l.clone()) {
            out.push((l, r));
        }
    }
    out
}

/// Indices of the first occurrence of each distinct hypothesis.
fn distinct_positions(v: &[Formula]) -> Vec<usize> {
    (0..v.len()).filter(|&i| !v[..i].contains(&v[i])).collect()
}

type Memo<K> = Mutex<HashMap<K, Option<ProofTree>>>;

#[derive(Default)]
struct Linear {
    memo: Memo<(Sequent, usize)>,
}

impl Linear {
    /// `s` has sorted hypotheses.
    fn prove(&self, s: &Sequent, depth: usize) -> Option<ProofTree> {
        if depth == 0 {
            return None;
        }
        let key = (s.clone(), depth);
        if let Some(hit) = self.memo.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let found = self.attempt(s, depth);
        self.memo.lock().unwrap().insert(key, found.clone());
        found
    }

    fn attempt(&self, s: &Sequent, depth: usize) -> Option<ProofTree> {
        let d = depth - 1;
        let node = |rule, premises| Some(ProofTree::new(rule, s.clone(), premises));
        let hyps = &s.hyps;
        if hyps.len() == 1 && hyps[0] == s.concl {
            return node(ProofRule::Id, vec![]);
        }
        if let Formula::Lolli(a, b) = &s.concl {
            let prem = seq(ms::sum(hyps, &[(**a).clone()]), (**b).clone());
            if let Some(p) = self.prove(&prem, d) {
                return node(ProofRule::LolliR, vec![p]);
            }
        }
        let positions = distinct_positions(hyps);
        for &i in &positions {
            if let Formula::Tensor(a, b) = &hyps[i] {
                let mut rest = ms::without_at(hyps, i);
                rest.push((**a).clone());
                rest.push((**b).clone());
                if let Some(p) = self.prove(&seq(rest, s.concl.clone()), d) {
                    return node(ProofRule::TensorL(i), vec![p]);
                }
            }
        }
        if let Formula::With(a, b) = &s.concl {
            if let Some(p) = self.prove(&seq(hyps.clone(), (**a).clone()), d) {
                if let Some(q) = self.prove(&seq(hyps.clone(), (**b).clone()), d) {
                    return node(ProofRule::WithR, vec![p, q]);
                }
            }
        }
        if let Formula::Tensor(a, b) = &s.concl {
            let found = par::find_map_first(&splits(hyps), |(l, r)| {
                let p = self.prove(&seq(l.clone(), (**a).clone()), d)?;
                let q = self.prove(&seq(r.clone(), (**b).clone()), d)?;
                Some(vec![p, q])
            });
            if let Some(ps) = found {
                return node(ProofRule::TensorR, ps);
            }
        }
        for &i in &positions {
            if let Formula::Lolli(a, b) = &hyps[i] {
                let rest = ms::without_at(hyps, i);
                let found = par::find_map_first(&splits(&rest), |(l, r)| {
                    let p = self.prove(&seq(l.clone(), (**a).clone()), d)?;
                    let q = self.prove(&seq(ms::sum(&[(**b).clone()], r), s.concl.clone()), d)?;
                    Some(vec![p, q])
                });
                if let Some(ps) = found {
                    return node(ProofRule::LolliL(i), ps);
                }
            }
        }
        for second in [false, true] {
            for &i in &positions {
                if let Formula::With(a, b) = &hyps[i] {
                    let pick = if second { b } else { a };
                    let mut rest = ms::without_at(hyps, i);
                    rest.push((**pick).clone());
                    if let Some(p) = self.prove(&seq(rest, s.concl.clone()), d) {
                        let rule = if second { ProofRule::WithL2(i) } else { ProofRule::WithL1(i) };
                        return node(rule, vec![p]);
                    }
                }
            }
        }
        None
    }
}

/// Proofs in a G3-style calculus over hypothesis sets: contraction and
/// weakening are built in, the principal formula of ⊃L stays available in
/// the left premise.
#[derive(Clone, Debug)]
enum G3Proof {
    Ax(Formula),
    AndR(Box<G3Proof>, Box<G3Proof>),
    ImpR(Formula, Box<G3Proof>),
    AndL(Formula, Box<G3Proof>),
    ImpL(Formula, Box<G3Proof>, Box<G3Proof>),
}

#[derive(Default)]
struct G3 {
    memo: Mutex<HashMap<(BTreeSet<Formula>, Formula, usize), Option<G3Proof>>>,
}

impl G3 {
    fn prove(&self, gamma: &BTreeSet<Formula>, c: &Formula, depth: usize) -> Option<G3Proof> {
        if depth == 0 {
            return None;
        }
        let key = (gamma.clone(), c.clone(), depth);
        if let Some(hit) = self.memo.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let found = self.attempt(gamma, c, depth);
        self.memo.lock().unwrap().insert(key, found.clone());
        found
    }

    fn attempt(&self, gamma: &BTreeSet<Formula>, c: &Formula, depth: usize) -> Option<G3Proof> {
        let d = depth - 1;
        if gamma.contains(c) {
            return Some(G3Proof::Ax(c.clone()));
        }
        match c {
            Formula::Conj(a, b) => {
                if let Some(p) = self.prove(gamma, a, d) {
                    if let Some(q) = self.prove(gamma, b, d) {
                        return Some(G3Proof::AndR(Box::new(p), Box::new(q)));
                    }
                }
            }
            Formula::Impl(a, b) => {
                let mut g = gamma.clone();
                g.insert((**a).clone());
                if let Some(p) = self.prove(&g, b, d) {
                    return Some(G3Proof::ImpR((**a).clone(), Box::new(p)));
                }
            }
            _ => {}
        }
        for h in gamma {
            if let Formula::Conj(a, b) = h {
                let mut g = gamma.clone();
                g.remove(h);
                g.insert((**a).clone());
                g.insert((**b).clone());
                if let Some(p) = self.prove(&g, c, d) {
                    return Some(G3Proof::AndL(h.clone(), Box::new(p)));
                }
            }
        }
        for h in gamma {
            if let Formula::Impl(a, b) = h {
                let Some(p) = self.prove(gamma, a, d) else { continue };
                let mut g = gamma.clone();
                g.remove(h);
                g.insert((**b).clone());
                if let Some(q) = self.prove(&g, c, d) {
                    return Some(G3Proof::ImpL(h.clone(), Box::new(p), Box::new(q)));
                }
            }
        }
        None
    }
}

fn concl_of(g: &G3Proof) -> Formula {
    match g {
        G3Proof::Ax(c) => c.clone(),
        G3Proof::AndR(p, q) => Formula::conj(concl_of(p), concl_of(q)),
        G3Proof::ImpR(a, p) => Formula::imp(a.clone(), concl_of(p)),
        G3Proof::AndL(_, p) | G3Proof::ImpL(_, _, p) => concl_of(p),
    }
}

/// A Gentzen proof of exactly `target ⊢ C` from a G3 proof whose
/// hypotheses all occur in `target`.
fn literal(g: &G3Proof, target: &[Formula]) -> ProofTree {
    let c = concl_of(g);
    match g {
        G3Proof::Ax(a) => {
            let id = ProofTree::leaf(ProofRule::Id, Sequent::new(vec![a.clone()], a.clone()));
            restructure(id, target)
        }
        G3Proof::AndR(p, q) => {
            let p = literal(p, target);
            let q = literal(q, target);
            let both = ms::sum(target, target);
            restructure(ProofTree::new(ProofRule::AndR, Sequent::new(both, c), vec![p, q]), target)
        }
        G3Proof::ImpR(a, p) => {
            let p = literal(p, &ms::sum(target, &[a.clone()]));
            ProofTree::new(ProofRule::ImpR, Sequent::new(target.to_vec(), c), vec![p])
        }
        G3Proof::AndL(h, p) => {
            let Formula::Conj(a, b) = h else { unreachable!() };
            let mut rest = ms::minus(target, h).expect("principal formula present");
            let mut prem = rest.clone();
            prem.push((**a).clone());
            prem.push((**b).clone());
            let p = literal(p, &prem);
            rest.push(h.clone());
            restructure(ProofTree::new(ProofRule::AndL, Sequent::new(rest, c), vec![p]), target)
        }
        G3Proof::ImpL(h, p, q) => {
            let Formula::Impl(_, b) = h else { unreachable!() };
            let delta = ms::minus(target, h).expect("principal formula present");
            let p = literal(p, target);
            let q = literal(q, &ms::sum(&[(**b).clone()], &delta));
            let hyps: Vec<Formula> = target.iter().chain([h]).chain(&delta).cloned().collect();
            restructure(ProofTree::new(ProofRule::ImpL, Sequent::new(hyps, c), vec![p, q]), target)
        }
    }
}

fn exch(p: ProofTree, i: usize) -> ProofTree {
    let mut s = p.sequent.clone();
    s.hyps.swap(i, i + 1);
    ProofTree::new(ProofRule::Exch(i), s, vec![p])
}

fn to_end(mut p: ProofTree, j: usize) -> ProofTree {
    for i in j..p.sequent.hyps.len() - 1 {
        p = exch(p, i);
    }
    p
}

/// Contract, weaken and exchange a proof of `M ⊢ C` into one of
/// `target ⊢ C`. Every formula of `M` must occur in `target`.
fn restructure(mut p: ProofTree, target: &[Formula]) -> ProofTree {
    let count = |v: &[Formula], f: &Formula| v.iter().filter(|g| *g == f).count();
    let kinds: BTreeSet<Formula> = p.sequent.hyps.iter().cloned().collect();
    for f in &kinds {
        let want = count(target, f);
        assert!(want > 0, "formula {f} missing from target context");
        while count(&p.sequent.hyps, f) > want {
            let j = p.sequent.hyps.iter().position(|g| g == f).unwrap();
            p = to_end(p, j);
            let n = p.sequent.hyps.len();
            let k = p.sequent.hyps[..n - 1].iter().position(|g| g == f).unwrap();
            p = to_end(p, k);
            let mut s = p.sequent.clone();
            s.hyps.pop();
            p = ProofTree::new(ProofRule::Contr, s, vec![p]);
        }
    }
    for f in target {
        if count(&p.sequent.hyps, f) < count(target, f) {
            let mut s = p.sequent.clone();
            s.hyps.push(f.clone());
            p = ProofTree::new(ProofRule::Weak, s, vec![p]);
        }
    }
    for t in 0..target.len() {
        let k = (t..target.len())
            .find(|&k| p.sequent.hyps[k] == target[t])
            .unwrap();
        for i in (t..k).rev() {
            p = exch(p, i);
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::parse_sequent;

    fn find(src: &str, depth: usize) -> Option<ProofTree> {
        search_cutfree(&parse_sequent(src).unwrap(), depth).unwrap()
    }

    #[test]
    fn linear_identity_function() {
        let p = find("|- A -o A", 8).unwrap();
        assert_eq!(p.rule, ProofRule::LolliR);
        assert_eq!(p.height(), 2);
    }

    #[test]
    fn no_duplication_or_discarding() {
        assert!(find("A |- A (x) A", 8).is_none());
        assert!(find("|- A -o B -o A", 8).is_none());
        assert!(find("(A (x) A) -o B |- A -o B", 8).is_none());
    }

    #[test]
    fn gentzen_contraction_and_weakening() {
        let s = parse_sequent("A, B |- A /\\ A").unwrap();
        let p = search_cutfree(&s, 6).unwrap().unwrap();
        check_proof(&p, System::Gentzen).unwrap();
        assert_eq!(p.sequent, s);
        assert!(p.is_cut_free());
    }

    #[test]
    fn depth_is_a_real_bound() {
        assert!(find("|- A -o A", 1).is_none());
        assert!(find("|- A -o A", 2).is_some());
    }

    #[test]
    fn bang_is_out_of_scope() {
        let s = parse_sequent("!A |- A").unwrap();
        assert!(matches!(search_cutfree(&s, 4), Err(ProofError::UnsupportedFragment(_))));
    }

    #[test]
    fn root_index_follows_the_input_order() {
        let s = parse_sequent("B, A (x) C |- C (x) A (x) B").unwrap();
        let p = search_cutfree(&s, 8).unwrap().unwrap();
        assert_eq!(p.sequent, s);
        check_proof(&p, System::Linear).unwrap();
    }
}
