//! Categorical semantics: the free CCC and its evaluation in finite sets,
//! and linear proofs as relations.

mod ccc;
mod finset;
mod rel;

pub use ccc::{context_obj, obj_of_type, translate_stlc, variable, Mor, Obj};
pub use finset::{
    check_soundness, curry_naturality_sides, denote, eval_finset, eval_finset_capped, first_difference,
    show_element, size_of, substitution_sides, tuple, FunTable, Sizes, Soundness, DEFAULT_CAP,
};
pub use rel::{formula_size, translate_linear_proof, AtomSizes, RelMor};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SemError {
    #[error("a set exceeds the cap of {cap} elements")]
    SizeOverflow { cap: usize },
    #[error("no size given for base `{0}`")]
    UnknownBase(String),
    #[error("type `{0}` has no interpretation here")]
    UnsupportedType(String),
    #[error("rule `{0}` has no interpretation here")]
    UnsupportedRule(String),
    #[error("ill-typed: {0}")]
    IllTyped(String),
}
