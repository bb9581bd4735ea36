//! Abstract syntax shared by both calculi.

pub mod parse;
pub mod print;
pub mod term;
pub mod types;

pub use parse::{parse_judgement, parse_open_term, parse_term, parse_type, Judgement};
pub use print::{judgement_to_string, term_to_string, type_to_string, Notation};
pub use term::{
    alpha_equal, free_vars, simultaneous_substitute, substitute, swap_vars, Canonical, FreshNames,
    Name, Side, Term,
};
pub use types::{Fragment, Type};

/// An ordered typing context.
pub type Context = Vec<(Name, Type)>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("variable `{0}` bound twice in a simultaneous substitution")]
    DuplicateBinding(String),
}
