pub mod cat;
pub mod gen;
pub mod monad;
pub mod par;
pub mod proof;
pub mod rewrite;
pub mod semantics;
pub mod syntax;
pub mod typing;
