//! Monads and comonads: law checks on finite categories and on finite
//! sets, Kleisli categories, and linear exponential comonads.

mod fincat;
mod linexp;
mod sets;

pub use fincat::{
    check_comonad, check_monad, cokleisli_category, cokleisli_products, comonad_of_adjunction, kleisli_adjunction,
    kleisli_category, kleisli_roundtrip, monad_of_adjunction, CatComonad, CatMonad, Kleisli,
};
pub use linexp::{
    cartesian, check_linear_exponential, check_monoidal, commutative_monoid, exponential_counts, LinExp, Monoidal,
};
pub use sets::{
    atom_maps, check_set_comonad, check_set_monad, cokleisli_products_sets, cokleisli_sets, flatten, kleisli_roundtrip_sets,
    kleisli_sets, set_name, Built, Checked, Exceptions, IdentityMonad, ListMonad, ProductComonad, SetComonad, SetMonad,
    Space, State, Val, DEFAULT_CAP,
};

use crate::cat::Violation;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MonadError {
    #[error("{0}")]
    Law(Violation),
    #[error("a set exceeds the cap of {cap} elements")]
    SizeCap { cap: usize },
    #[error("{0}")]
    Malformed(String),
    #[error("{0}")]
    Usage(String),
}

impl From<Violation> for MonadError {
    fn from(v: Violation) -> Self {
        MonadError::Law(v)
    }
}

/// A named built-in instance.
pub enum Builtin {
    Monad(Box<dyn SetMonad>),
    Comonad(Box<dyn SetComonad>),
}

/// `identity`, `exceptions` (`E`), `state` (`xi`), `list` (`len`) or
/// `product` (`S`); each size must be at least 1.
pub fn builtin(name: &str, size: usize) -> Result<Builtin, MonadError> {
    if size == 0 {
        return Err(MonadError::Usage("size parameters must be at least 1".into()));
    }
    Ok(match name {
        "identity" => Builtin::Monad(Box::new(IdentityMonad)),
        "exceptions" => Builtin::Monad(Box::new(Exceptions::new(size))),
        "state" => Builtin::Monad(Box::new(State { states: size })),
        "list" => Builtin::Monad(Box::new(ListMonad { bound: size })),
        "product" => Builtin::Comonad(Box::new(ProductComonad { envs: size })),
        other => return Err(MonadError::Usage(format!("unknown instance `{other}`"))),
    })
}
