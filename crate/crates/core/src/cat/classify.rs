use serde::Serialize;

use super::FinCategory;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowClass {
    pub monic: bool,
    pub epic: bool,
    pub iso: bool,
    pub split_monic: bool,
    pub split_epic: bool,
}

/// Every flag is decided by quantifying over all arrows of `c`.
pub fn classify_arrow(c: &FinCategory, f: usize) -> ArrowClass {
    let (a, b) = (c.dom(f), c.cod(f));
    let monic = (0..c.n_objects()).all(|x| {
        let mut seen: Vec<usize> = c.hom(x, a).iter().map(|&g| c.comp(f, g)).collect();
        let n = seen.len();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == n
    });
    let epic = (0..c.n_objects()).all(|y| {
        let mut seen: Vec<usize> = c.hom(b, y).iter().map(|&g| c.comp(g, f)).collect();
        let n = seen.len();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == n
    });
    let back = c.hom(b, a);
    let left_inv = |g: usize| c.comp(g, f) == c.id(a);
    let right_inv = |g: usize| c.comp(f, g) == c.id(b);
    ArrowClass {
        monic,
        epic,
        iso: back.iter().any(|&g| left_inv(g) && right_inv(g)),
        split_monic: back.iter().any(|&g| left_inv(g)),
        split_epic: back.iter().any(|&g| right_inv(g)),
    }
}
