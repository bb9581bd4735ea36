//! Proof trees for natural deduction, the Gentzen sequent calculus and
//! linear logic: checking, cut-free search, and the bridge to terms.

mod check;
mod curry_howard;
mod formula;
mod search;
mod sexpr;
mod transform;
mod tree;

pub use check::check_proof;
pub use curry_howard::{proof_to_term, term_to_proof};
pub use formula::{parse_formula, parse_sequent, Formula, Sequent};
pub use search::{search_cutfree, search_cutfree_in};
pub use sexpr::{parse_proof, print_proof};
pub use transform::{
    cut_nd, embed_formula, embed_intuitionistic, embed_proof, lolli_e_to_l, lolli_l_to_e,
    weaken_nd,
};
pub use tree::{ProofRule, ProofTree, System};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProofError {
    #[error("rule violation at {}: {reason}", show_path(path))]
    RuleViolation { path: Vec<usize>, reason: String },
    #[error("unsupported fragment: {0}")]
    UnsupportedFragment(String),
    #[error("no term assignment: {0}")]
    NoTermAssignment(String),
    #[error("malformed proof: {0}")]
    Malformed(String),
}

pub(crate) fn show_path(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        path.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
    }
}

/// Multiset helpers over formula lists.
pub(crate) mod ms {
    use super::Formula;

    pub fn sorted(v: &[Formula]) -> Vec<Formula> {
        let mut v = v.to_vec();
        v.sort();
        v
    }

    pub fn eq(a: &[Formula], b: &[Formula]) -> bool {
        a.len() == b.len() && sorted(a) == sorted(b)
    }

    pub fn sum(a: &[Formula], b: &[Formula]) -> Vec<Formula> {
        a.iter().chain(b).cloned().collect()
    }

    /// `v` without its element at `i`.
    pub fn without_at(v: &[Formula], i: usize) -> Vec<Formula> {
        let mut v = v.to_vec();
        v.remove(i);
        v
    }

    /// `v` minus one occurrence of `f`, if present.
    pub fn minus(v: &[Formula], f: &Formula) -> Option<Vec<Formula>> {
        let i = v.iter().position(|g| g == f)?;
        Some(without_at(v, i))
    }
}
